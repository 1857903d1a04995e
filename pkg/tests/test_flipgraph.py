from dartflip.doublechain import designation
from dartflip.flipgraph import UnionFind, build, components_by, involution_failures, stats


def test_t4_is_triangle(t4):
    fg = build(t4, 1)
    assert stats(fg) == {"n": 4, "h": 3, "k": 1, "nodes": 3, "edges": 3, "components": 1,
                         "component_sizes": [3]}
    assert components_by(fg, lambda T: T.tails) == [{(3,): 3}]


def test_convex5_is_five_cycle(convex5):
    fg = build(convex5, 0)
    assert (len(fg.nodes), fg.edge_count, fg.component_count) == (5, 5, 1)
    assert all(len(a) == 2 for a in fg.adjacency)
    # a 5-cycle has diameter 2
    assert max(len(fg.shortest_path(0, j)) - 1 for j in range(5)) == 2


def test_dc11_components(dc11):
    assert [build(dc11.ps, k).component_count for k in range(3)] == [1, 2, 1]
    fg = build(dc11.ps, 1)
    assert fg.edge_count == 52
    labels = components_by(fg, lambda T: tuple(designation(dc11, T)))
    assert sorted(tuple(c) for c in labels) == [((0, 1),), ((1, 0),)]
    a, b = fg.components.index(0), fg.components.index(1)
    assert fg.shortest_path(a, b) is None


def test_component_ids_ordered_by_first_node(dc11):
    fg = build(dc11.ps, 1)
    seen = []
    for c in fg.components:
        if c not in seen:
            seen.append(c)
    assert seen == list(range(fg.component_count))
    assert sum(fg.component_sizes) == len(fg.nodes)


def test_involution(dc11):
    assert involution_failures(build(dc11.ps, 2, keep_flips=True)) == []


def test_union_find():
    uf = UnionFind(5)
    uf.union(0, 1)
    uf.union(3, 4)
    uf.union(1, 4)
    assert uf.find(0) == uf.find(3) != uf.find(2)
