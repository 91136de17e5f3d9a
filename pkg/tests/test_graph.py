import pytest

from genuskit.graph import (
    Graph,
    MinorMapping,
    biconnected_decompose,
    contract_set,
    cut_along,
    cut_vertices_of,
    has_minor,
    petals_and_propellers,
    verify_minor_mapping,
)


def k_complete(n, offset=0):
    g = Graph()
    for i in range(n):
        g.add_vertex(offset + i)
    for i in range(n):
        for j in range(i + 1, n):
            g.add_edge(offset + i, offset + j)
    return g


def k_bipartite(m, n):
    g = Graph()
    left = list(range(m))
    right = list(range(m, m + n))
    for v in left + right:
        g.add_vertex(v)
    for u in left:
        for v in right:
            g.add_edge(u, v)
    return g


def path_graph(n):
    return Graph.from_edges([(i, i + 1) for i in range(n - 1)])


def cycle_graph(n):
    return Graph.from_edges([(i, (i + 1) % n) for i in range(n)])


# ----------------------------------------------------------------------
# basics
# ----------------------------------------------------------------------

def test_edge_ids_stable_under_vertex_deletion():
    g = k_complete(4)
    kept = [eid for eid, u, v in g.edges() if 0 not in (u, v)]
    g.remove_vertex(0)
    assert g.edge_ids() == kept
    assert g.vertices() == [1, 2, 3]


def test_parallel_edges_and_loops():
    g = Graph()
    g.add_vertex(0)
    g.add_vertex(1)
    e1 = g.add_edge(0, 1)
    e2 = g.add_edge(0, 1)
    e3 = g.add_edge(0, 0)
    assert e1 != e2
    assert g.degree(0) == 4  # loop counts twice
    assert g.is_loop(e3)
    simple, merged = g.simplified()
    assert simple.num_edges() == 1
    assert merged[e2] == e1 and merged[e3] == -1


def test_deterministic_iteration():
    g = Graph.from_edges([(5, 2), (9, 1), (2, 9)])
    assert g.vertices() == sorted(g.vertices())
    assert [e for e, _, _ in g.edges()] == sorted(g.edge_ids())


# ----------------------------------------------------------------------
# biconnected decomposition
# ----------------------------------------------------------------------

def test_triangle_single_block():
    bct = biconnected_decompose(cycle_graph(3))
    assert len(bct.blocks) == 1
    assert not bct.cut_vertices


def test_two_triangles_sharing_vertex():
    g = Graph.from_edges([(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)])
    bct = biconnected_decompose(g)
    assert len(bct.blocks) == 2
    assert set(bct.cut_vertices) == {0}


def test_path_blocks_and_cut_vertices():
    # brute-force oracle: v is a cut vertex iff removing it disconnects
    g = path_graph(4)
    brute = []
    for v in g.vertices():
        h = g.copy()
        h.remove_vertex(v)
        if len(h.components()) > 1:
            brute.append(v)
    bct = biconnected_decompose(g)
    assert len(bct.blocks) == 3
    assert sorted(bct.cut_vertices) == brute == [1, 2]


def test_block_edge_partition_random():
    import random

    rng = random.Random(7)
    for _ in range(40):
        n = rng.randrange(4, 12)
        g = Graph()
        for v in range(n):
            g.add_vertex(v)
        for u in range(1, n):
            g.add_edge(u, rng.randrange(u))
        for _ in range(rng.randrange(0, n)):
            u, v = rng.randrange(n), rng.randrange(n)
            if u != v:
                g.add_edge(u, v)
        bct = biconnected_decompose(g)
        all_eids = sorted(e for b in bct.blocks for e in b)
        assert all_eids == g.edge_ids()
        assert sum(len(b) for b in bct.blocks) == g.num_edges()
        brute = sorted(v for v in g.vertices()
                       if len(_without(g, v).components()) > len(g.components()))
        assert sorted(bct.cut_vertices) == brute


def _without(g, v):
    h = g.copy()
    h.remove_vertex(v)
    return h


def test_disconnected_flagged():
    g = Graph.from_edges([(0, 1), (2, 3)])
    bct = biconnected_decompose(g)
    assert not bct.connected
    assert len(bct.blocks) == 2


# ----------------------------------------------------------------------
# cutting
# ----------------------------------------------------------------------

def test_cut_star_center():
    g = Graph.from_edges([(0, 1), (0, 2), (0, 3)])
    out, origin = cut_along(g, {0})
    assert out.num_edges() == 3
    assert len(out.components()) == 3
    copies = [v for v, o in origin.items() if o == 0]
    assert len(copies) == 3


def test_cut_non_separator_is_identity():
    g = cycle_graph(5)
    out, origin = cut_along(g, {2})
    assert out.vertices() == g.vertices()
    assert out.edge_ids() == g.edge_ids()


def test_cut_two_triangles():
    g = Graph.from_edges([(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)])
    out, origin = cut_along(g, {0})
    comps = out.components()
    assert len(comps) == 2
    assert all(len(c) == 3 for c in comps)


def test_cut_empty_set():
    g = cycle_graph(4)
    out, _ = cut_along(g, set())
    assert out.edges() == g.edges()


def test_cut_deficiency_counting():
    # |V'| = |V| + sum over cut steps of (#components created - 1)
    g = Graph.from_edges([(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0),
                          (3, 5), (5, 6), (6, 3)])
    out, _ = cut_along(g, {0, 3})
    h = g.copy()
    h.remove_vertex(0)
    c0 = len(h.components())
    assert out.num_vertices() > g.num_vertices()
    assert out.num_edges() == g.num_edges()
    # independent component counting on the result
    assert len(out.components()) == 3


# ----------------------------------------------------------------------
# contraction
# ----------------------------------------------------------------------

def test_contract_single_vertex_identity():
    g = k_complete(4)
    out, bound = contract_set(g, {2})
    assert bound == 0
    assert out.edges() == g.edges()


def test_contract_k33_side():
    g = k_bipartite(3, 3)
    out, bound = contract_set(g, {0, 1, 2})
    assert bound == 2
    assert out.num_vertices() == 4
    assert out.num_edges() == 9  # parallel edges kept


def test_contract_edge_of_k4():
    g = k_complete(4)
    out, bound = contract_set(g, {0, 1})
    assert bound == 1
    assert out.num_vertices() == 3
    # edge {0,1} became a loop and was dropped; two parallel pairs remain
    assert out.num_edges() == 5
    simple, _ = out.simplified()
    assert simple.num_edges() == 3  # K3


def test_contract_errors():
    g = k_complete(3)
    with pytest.raises(ValueError):
        contract_set(g, {0, 99})
    with pytest.raises(ValueError):
        contract_set(g, set())


# ----------------------------------------------------------------------
# minor mappings
# ----------------------------------------------------------------------

def test_identity_minor_mapping():
    g = k_complete(4)
    m = MinorMapping(minor=g.copy(),
                     branch_sets={v: frozenset({v}) for v in g.vertices()})
    ok, why = verify_minor_mapping(g, m)
    assert ok, why


def grid_graph(rows, cols):
    g = Graph()
    def vid(i, j):
        return i * cols + j
    for i in range(rows):
        for j in range(cols):
            g.add_vertex(vid(i, j))
    for i in range(rows):
        for j in range(cols):
            if j + 1 < cols:
                g.add_edge(vid(i, j), vid(i, j + 1))
            if i + 1 < rows:
                g.add_edge(vid(i, j), vid(i + 1, j))
    return g


def test_k4_in_grid_witness():
    # hand-built witness: K4 inside the 3x3 grid via quadrant branch sets
    g = grid_graph(3, 3)
    k4 = k_complete(4, offset=100)
    branch = {
        100: frozenset({0, 1}),
        101: frozenset({2, 5}),
        102: frozenset({3, 6, 7}),
        103: frozenset({4}),
    }
    m = MinorMapping(minor=k4, branch_sets=branch)
    ok, why = verify_minor_mapping(g, m)
    # edge (100,102): 0-3 ok; (100,101): 1-2 ok; (100,103): 1-4 ok;
    # (101,102): 5-? 5 neighbors 2,4,8 -> no edge to {3,6,7} -> must fail
    assert not ok and "witness" in why

    branch[102] = frozenset({3, 6, 7, 8})
    m = MinorMapping(minor=k4, branch_sets=branch)
    ok, why = verify_minor_mapping(g, m)
    assert ok, why


def test_overlapping_branch_sets_rejected():
    g = k_complete(4)
    m = MinorMapping(minor=k_complete(2, offset=10),
                     branch_sets={10: frozenset({0, 1}), 11: frozenset({1, 2})})
    ok, why = verify_minor_mapping(g, m)
    assert not ok and "disjoint" in why


def test_minor_mapping_soundness_by_contraction():
    # contracting accepted branch sets yields a supergraph of the minor
    g = grid_graph(3, 3)
    branch = {
        100: frozenset({0, 1}),
        101: frozenset({2, 5}),
        102: frozenset({3, 6, 7, 8}),
        103: frozenset({4}),
    }
    m = MinorMapping(minor=k_complete(4, offset=100), branch_sets=branch)
    ok, _ = verify_minor_mapping(g, m)
    assert ok
    cur = g.copy()
    reps = {}
    for mv in sorted(branch):
        cur, _ = contract_set(cur, branch[mv])
        reps[mv] = min(branch[mv])
    for _eid, a, b in m.minor.edges():
        assert cur.has_edge(reps[a], reps[b])


def test_has_minor_known_cases():
    k5 = k_complete(5)
    k33 = k_bipartite(3, 3)
    petersen = Graph.from_edges(
        [(i, (i + 1) % 5) for i in range(5)]
        + [(i + 5, (i + 2) % 5 + 5) for i in range(5)]
        + [(i, i + 5) for i in range(5)])
    assert has_minor(k5, k5)
    assert has_minor(petersen, k5)
    assert has_minor(petersen, k33)
    assert has_minor(k5, k33) is False  # too few vertices for 6 branch sets
    assert not has_minor(grid_graph(3, 3), k5)
    assert not has_minor(cycle_graph(6), k33)
    assert has_minor(k_complete(6), k33)


# ----------------------------------------------------------------------
# petals
# ----------------------------------------------------------------------

def test_petals_two_triangles():
    g = Graph.from_edges([(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)])
    petals, is_cut = petals_and_propellers(g, 0)
    assert is_cut and len(petals) == 2
    assert all(p.num_edges() == 3 for p in petals)


def test_petals_star_center():
    g = Graph.from_edges([(0, 1), (0, 2), (0, 3)])
    petals, is_cut = petals_and_propellers(g, 0)
    assert is_cut and len(petals) == 3
    assert all(p.num_edges() == 1 for p in petals)


def test_petals_non_cut_vertex():
    g = cycle_graph(4)
    petals, is_cut = petals_and_propellers(g, 1)
    assert not is_cut and len(petals) == 1
    assert petals[0].num_edges() == 4


def test_petals_three_at_cut_vertex():
    g = Graph.from_edges([(0, 1), (1, 2), (2, 0),
                          (0, 3), (3, 4), (4, 0),
                          (0, 5), (5, 6), (6, 0)])
    petals, is_cut = petals_and_propellers(g, 0)
    assert is_cut and len(petals) == 3
    # a propeller is a union of petals at the same vertex
    prop_edges = set(petals[0].edge_ids()) | set(petals[1].edge_ids())
    assert len(prop_edges) == 6
