from __future__ import annotations

import random
from itertools import combinations

import pytest

from cyclecover.graphs import (
    Circuit,
    ContractionStack,
    GraphFormatError,
    Multigraph,
    NotCubicError,
    boundary_multiset,
    bridges,
    circuits_up_to,
    encode_graph6,
    parse_edge_list,
    parse_graph6,
)

from smallgraphs import from_pairs, k4, k33, petersen, prism, theta, PETERSEN_EDGES


# -- oracles -----------------------------------------------------------------


def brute_bridges(g: Multigraph) -> set[int]:
    """Remove each edge in turn and compare component counts."""
    base = len(g.connected_components())
    out = set()
    for eid in g.edge_ids():
        h = g.copy()
        h.remove_edge(eid)
        if len(h.connected_components()) > base:
            out.add(eid)
    return out


def brute_circuits(g, max_len: int) -> set[frozenset[int]]:
    """Path-extension enumeration of circuit edge sets, independent of the
    production enumerator (walks vertex paths, no start-vertex pruning)."""
    found: set[frozenset[int]] = set()

    def walk(start, v, used_edges, used_vertices):
        for eid in g.incident(v):
            if eid in used_edges:
                continue
            w = g.other_end(eid, v)
            if w == v:
                continue
            if w == start and len(used_edges) >= 1:
                key = frozenset(used_edges | {eid})
                if len(key) == len(used_edges) + 1:
                    found.add(key)
                continue
            if w in used_vertices or len(used_edges) + 2 > max_len:
                continue
            walk(start, w, used_edges | {eid}, used_vertices | {w})

    for s in g.vertex_list():
        walk(s, s, set(), {s})
    return found


# -- parsing -----------------------------------------------------------------


def test_parse_graph6_k4():
    g = parse_graph6("C~")
    assert g.num_vertices() == 4 and g.num_edges() == 6
    pairs = {tuple(sorted(g.endpoints(e))) for e in g.edge_ids()}
    assert pairs == {(i, j) for i, j in combinations(range(4), 2)}
    assert [g.degree(v) for v in g.vertex_list()] == [3, 3, 3, 3]


def test_parse_graph6_petersen_roundtrip():
    line = encode_graph6(petersen())
    g = parse_graph6(line)
    assert g.num_vertices() == 10 and g.num_edges() == 15
    assert all(g.degree(v) == 3 for v in g.vertex_list())
    # girth 5: no circuit shorter than 5
    assert all(len(c) == 5 for c in circuits_up_to(g, 5))
    assert encode_graph6(g) == line


def test_parse_graph6_errors():
    with pytest.raises(GraphFormatError):
        parse_graph6("")
    with pytest.raises(GraphFormatError):
        parse_graph6("C")  # truncated body
    with pytest.raises(NotCubicError):
        parse_graph6("D??")  # edgeless graph on 5 vertices
    g = parse_graph6("D??", require_cubic=False)
    assert g.num_edges() == 0


def test_graph6_roundtrip_random_cubic_like():
    rng = random.Random(7)
    for _ in range(25):
        n = rng.randrange(1, 13)
        g = Multigraph()
        for v in range(n):
            g.add_vertex(v)
        for i, j in combinations(range(n), 2):
            if rng.random() < 0.4:
                g.add_edge(i, j)
        line = encode_graph6(g)
        h = parse_graph6(line, require_cubic=False)
        assert encode_graph6(h) == line
        assert {tuple(sorted(h.endpoints(e))) for e in h.edge_ids()} == {
            tuple(sorted(g.endpoints(e))) for e in g.edge_ids()
        }


def test_parse_edge_list_theta():
    g = theta()
    assert g.num_vertices() == 2 and g.num_edges() == 3
    assert all(g.degree(v) == 3 for v in g.vertex_list())


def test_parse_edge_list_rejects_noncubic():
    with pytest.raises(NotCubicError):
        parse_edge_list("0 1\n1 2\n2 0\n0 1")
    with pytest.raises(GraphFormatError):
        parse_edge_list("0 x")
    with pytest.raises(GraphFormatError):
        parse_edge_list("")


def test_parse_edge_list_k4_matches_graph6():
    g = parse_edge_list("0 1\n0 2\n0 3\n1 2\n1 3\n2 3")
    h = parse_graph6("C~")
    assert {tuple(sorted(g.endpoints(e))) for e in g.edge_ids()} == {
        tuple(sorted(h.endpoints(e))) for e in h.edge_ids()
    }


# -- bridges -----------------------------------------------------------------


def test_bridges_small():
    assert bridges(k4()) == set()
    assert bridges(petersen()) == set()
    # two K4-minus-an-edge blocks joined by one edge
    block = [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3)]
    other = [(u + 4, v + 4) for u, v in block]
    g = from_pairs(block + other + [(0, 4)])
    b = bridges(g)
    assert len(b) == 1
    (eid,) = b
    assert tuple(sorted(g.endpoints(eid))) == (0, 4)


def test_bridges_match_brute_force_on_random_graphs():
    rng = random.Random(11)
    for _ in range(40):
        n = rng.randrange(2, 10)
        g = Multigraph()
        for v in range(n):
            g.add_vertex(v)
        for _ in range(rng.randrange(1, 14)):
            u = rng.randrange(n)
            v = rng.randrange(n)
            g.add_edge(u, v)
        assert bridges(g) == brute_bridges(g)


# -- circuits ----------------------------------------------------------------


def test_circuits_petersen():
    cs = circuits_up_to(petersen(), 5)
    assert len(cs) == 12
    assert all(len(c) == 5 for c in cs)


def test_circuits_k4():
    cs = circuits_up_to(k4(), 3)
    assert len(cs) == 4 and all(len(c) == 3 for c in cs)


def test_circuits_theta():
    cs = circuits_up_to(theta(), 2)
    assert len(cs) == 3 and all(len(c) == 2 for c in cs)


def test_circuits_match_brute_on_corpus():
    rng = random.Random(3)
    graphs = [k4(), k33(), prism(), petersen(), theta()]
    for _ in range(20):
        n = rng.randrange(2, 9)
        g = Multigraph()
        for v in range(n):
            g.add_vertex(v)
        for _ in range(rng.randrange(1, 12)):
            g.add_edge(rng.randrange(n), rng.randrange(n))
        graphs.append(g)
    for g in graphs:
        for bound in (2, 4, 6, 8):
            got = {c.edge_set for c in circuits_up_to(g, bound)}
            assert got == brute_circuits(g, bound)


def test_circuit_canonical_deterministic():
    g = petersen()
    a = circuits_up_to(g, 5)
    b = circuits_up_to(g, 5)
    assert [c.key() for c in a] == [c.key() for c in b]
    for c in a:
        assert c.canonical().vertices[0] == min(c.vertices)


# -- boundaries --------------------------------------------------------------


def test_boundary_vertex_and_whole_graph():
    g = theta()
    assert len(boundary_multiset(g, {0})) == 3
    assert boundary_multiset(g, set(g.vertex_list()), set(g.edge_ids())) == []
    p = petersen()
    for v in p.vertex_list():
        assert len(boundary_multiset(p, {v})) == 3


def test_boundary_of_factor_circuit():
    g = petersen()
    outer = next(c for c in circuits_up_to(g, 5) if c.vertex_set == frozenset(range(5)))
    b = boundary_multiset(g, outer.vertex_set, outer.edge_set)
    assert len(b) == 5 and len(set(b)) == 5


def test_boundary_with_loop():
    g = parse_edge_list("0 0\n0 1\n1 1", require_cubic=False)
    loop0 = next(e for e in g.edge_ids() if g.endpoints(e) == (0, 0))
    b = boundary_multiset(g, {0})
    assert b.count(loop0) == 2


# -- contraction -------------------------------------------------------------


def test_contract_uncontract_roundtrip_petersen_factor():
    g = petersen()
    stack = ContractionStack(g)
    before = stack.snapshot()
    outer = [e for e in g.edge_ids() if max(g.endpoints(e)) <= 4]
    inner = [e for e in g.edge_ids() if min(g.endpoints(e)) >= 5]
    stack.contract("outer", outer)
    stack.contract("inner", inner)
    assert stack.num_vertices() == 2
    assert stack.num_edges() == 5
    vo, vi = stack.contracted_vertex("outer"), stack.contracted_vertex("inner")
    for eid in stack.edge_ids():
        assert set(stack.endpoints(eid)) == {vo, vi}
    stack.uncontract("outer")
    stack.uncontract("inner")
    assert stack.snapshot() == before


def test_contract_chord_becomes_loop():
    # 5-circuit 0-1-2-3-4 with chord 0-2
    g = from_pairs([(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 2)])
    chord = 5
    stack = ContractionStack(g)
    stack.contract("c", [0, 1, 2, 3, 4])
    assert stack.is_loop(chord)


def test_contract_random_subgraphs_roundtrip():
    rng = random.Random(23)
    g = petersen()
    for _ in range(100):
        eids = [e for e in g.edge_ids() if rng.random() < 0.4]
        if not eids:
            continue
        stack = ContractionStack(g)
        before = stack.snapshot()
        stack.contract("x", eids)
        stack.uncontract("x")
        assert stack.snapshot() == before


def test_uncontract_out_of_order_disjoint():
    g = petersen()
    stack = ContractionStack(g)
    before = stack.snapshot()
    outer = [e for e in g.edge_ids() if max(g.endpoints(e)) <= 4]
    inner = [e for e in g.edge_ids() if min(g.endpoints(e)) >= 5]
    stack.contract("outer", outer)
    stack.contract("inner", inner)
    stack.uncontract("outer")  # not LIFO; merges are disjoint so this is fine
    stack.uncontract("inner")
    assert stack.snapshot() == before


def test_uncontract_blocked_when_nested():
    g = k4()
    stack = ContractionStack(g)
    e01 = next(e for e in g.edge_ids() if set(g.endpoints(e)) == {0, 1})
    stack.contract("a", [e01])
    va = stack.contracted_vertex("a")
    eid = next(e for e in stack.edge_ids() if va in stack.endpoints(e))
    stack.contract("b", [eid])
    with pytest.raises(ValueError):
        stack.uncontract("a")
    stack.uncontract("b")
    stack.uncontract("a")


def test_contract_errors():
    g = k4()
    stack = ContractionStack(g)
    with pytest.raises(ValueError):
        stack.contract("a", [99])
    stack.contract("a", [0])
    with pytest.raises(ValueError):
        stack.contract("a", [1])
    with pytest.raises(ValueError):
        stack.uncontract("nope")


def test_adjacency_consistency_rescan():
    for g in (k4(), petersen(), theta()):
        g.check_consistency()
