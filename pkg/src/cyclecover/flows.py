"""Chains and flows in Z2 x Z2 and the toolbox that modifies them.

A chain assigns an element of {0, R, G, B} to every edge; a flow is a chain
that is zero-sum at every vertex.  A chain is H-extensible when every vertex
outside the subgraph H is zero-sum; an H-extension fixes the values off E(H),
an H-modification additionally preserves the zero set off E(H).

Chains are plain dicts keyed by edge id, so values survive contraction and
uncontraction unchanged.  All operations return new dicts; nothing here
mutates its input chain.
"""
from __future__ import annotations

from collections import deque

from . import gf4
from .graphs import Circuit, boundary_multiset, bridges


class FlowError(AssertionError):
    """A toolbox precondition or guaranteed-success search failed."""


# -- basic chain queries ------------------------------------------------------


def zero_chain(g) -> dict[int, int]:
    return {e: gf4.ZERO for e in g.edge_ids()}


def vertex_sum(g, chain: dict[int, int], v: int) -> int:
    s = 0
    for eid in g.incident(v):  # a loop appears twice and cancels
        s ^= chain.get(eid, 0)
    return s


def zeros(g, chain) -> set[int]:
    return {e for e in g.edge_ids() if chain.get(e, 0) == 0}


def is_flow(g, chain) -> bool:
    return all(vertex_sum(g, chain, v) == 0 for v in g.vertex_list())


def is_extensible(g, chain, h_vertices) -> bool:
    return all(vertex_sum(g, chain, v) == 0 for v in g.vertex_list() if v not in h_vertices)


def is_nowhere_zero(g, chain) -> bool:
    return all(chain.get(e, 0) != 0 for e in g.edge_ids())


def boundary_values(g, chain, h_vertices, h_edges) -> list[int]:
    return [chain.get(e, 0) for e in boundary_multiset(g, h_vertices, h_edges)]


def parity_check(g, chain, h_vertices, h_edges=frozenset()) -> bool:
    """The Parity Lemma congruences on the boundary of a connected subgraph:
    the count of every nonzero element matches the nonzero total mod 2."""
    vals = boundary_values(g, chain, h_vertices, h_edges)
    nonzero = sum(1 for v in vals if v != 0)
    return all(sum(1 for v in vals if v == a) % 2 == nonzero % 2 for a in gf4.NONZERO)


# -- boundary orderings -------------------------------------------------------


def outward_edge(g, h_edges, v: int) -> int:
    """The unique non-H edge at a degree-3 vertex of H with degree 2 in H."""
    h_edges = set(h_edges)
    out = [e for e in g.incident(v) if e not in h_edges]
    if len(out) != 1:
        raise FlowError(f"vertex {v} has {len(out)} non-subgraph edges, expected 1")
    return out[0]


def circuit_boundary_ordering(g, circuit: Circuit) -> list[int]:
    """Natural boundary ordering of a circuit of degree-3 vertices."""
    return [outward_edge(g, circuit.edge_set, v) for v in circuit.vertices]


def boundary_string(g, chain, ordering) -> tuple[int, ...]:
    return tuple(chain.get(e, 0) for e in ordering)


# -- extension (tree peeling) -------------------------------------------------


def extend(g, chain, h_vertices, h_edges) -> dict[int, int]:
    """An H-extension of an H-extensible chain.

    Edges of H lying on a circuit of the shrinking subgraph keep their
    current value (zero in every caller here); tree edges are peeled from
    the leaves and take the forced value.
    """
    values = dict(chain)
    remaining = set(h_edges)
    degree: dict[int, int] = {}
    for eid in remaining:
        u, v = g.endpoints(eid)
        degree[u] = degree.get(u, 0) + 1
        degree[v] = degree.get(v, 0) + 1
    while remaining:
        leaf = None
        for v in sorted(degree):
            if degree[v] == 1:
                leaf = v
                break
        if leaf is None:
            # no leaf: every remaining edge lies on a circuit; drop the least
            eid = min(remaining)
        else:
            eid = next(e for e in sorted(remaining) if leaf in g.endpoints(e))
            forced = 0
            for other in g.incident(leaf):
                if other != eid:
                    forced ^= values.get(other, 0)
            # the leaf edge occurs once at the leaf (a loop can never be a leaf edge)
            values[eid] = forced
        remaining.remove(eid)
        u, v = g.endpoints(eid)
        for w in (u, v) if u != v else (u,):
            dec = 2 if u == v else 1
            degree[w] -= dec
            if degree[w] == 0:
                del degree[w]
    if not is_flow(g, values):
        raise FlowError("extension did not produce a flow; chain was not H-extensible")
    return values


# -- Kempe modifications ------------------------------------------------------


def _in_boundary(g, h_vertices, h_edges, eid) -> bool:
    if eid in h_edges:
        return False
    u, v = g.endpoints(eid)
    return u in h_vertices or v in h_vertices


def mod1(g, chain, h_vertices, h_edges, e1: int, e2: int, x: int, y: int) -> dict[int, int]:
    """Flip two boundary edges sharing an endvertex outside H by x+y."""
    if e1 == e2:
        raise FlowError("mod1 needs two distinct edges")
    if x == y or x == 0 or y == 0:
        raise FlowError("mod1 needs two distinct nonzero elements")
    for e in (e1, e2):
        if not _in_boundary(g, h_vertices, h_edges, e):
            raise FlowError(f"edge {e} is not on the boundary of H")
        if chain.get(e, 0) not in (x, y):
            raise FlowError(f"edge {e} has value outside {{x, y}}")
    shared = set(g.endpoints(e1)) & set(g.endpoints(e2))
    if not any(w not in h_vertices for w in shared):
        raise FlowError("mod1 edges have no common endvertex outside H")
    out = dict(chain)
    out[e1] ^= x ^ y
    out[e2] ^= x ^ y
    return out


def mod2(g, chain, h_vertices, h_edges, f: int, x: int, y: int) -> tuple[int, dict[int, int]]:
    """Flip a boundary edge f by x+y together with a partner edge f'.

    The partner is found by a deterministic BFS over the {x, y}-valued Kempe
    component outside H; the connecting path is flipped as well, so zeros off
    E(H) are untouched.  Returns (f', new chain).
    """
    if x == y or x == 0 or y == 0:
        raise FlowError("mod2 needs two distinct nonzero elements")
    if not _in_boundary(g, h_vertices, h_edges, f):
        raise FlowError(f"edge {f} is not on the boundary of H")
    if chain.get(f, 0) not in (x, y):
        raise FlowError(f"edge {f} has value outside {{x, y}}")
    delta = x ^ y
    u, v = g.endpoints(f)
    if u in h_vertices and v in h_vertices:
        out = dict(chain)
        out[f] ^= delta
        return f, out

    v2 = v if u in h_vertices else u
    # Kempe component of v2 in the subgraph induced outside V(H) by {x,y} edges
    parent_edge: dict[int, int] = {v2: -1}
    order = deque([v2])
    while order:
        w = order.popleft()
        for eid in g.incident(w):
            if chain.get(eid, 0) not in (x, y):
                continue
            z = g.other_end(eid, w)
            if z in h_vertices or z in parent_edge or z == w:
                continue
            parent_edge[z] = eid
            order.append(z)
    component = set(parent_edge)
    candidates = []
    for w in component:
        for eid in g.incident(w):
            if eid == f or chain.get(eid, 0) not in (x, y):
                continue
            z = g.other_end(eid, w)
            if z in h_vertices:
                candidates.append((eid, w))
    if not candidates:
        raise FlowError("mod2 found no partner edge; Parity Lemma violated")
    fprime, w2 = min(candidates)
    out = dict(chain)
    out[f] ^= delta
    out[fprime] ^= delta
    w = w2
    while w != v2:
        eid = parent_edge[w]
        out[eid] ^= delta
        w = g.other_end(eid, w)
    return fprime, out


# -- circuit extensions -------------------------------------------------------


def _rotations_with_triple(string: tuple[int, ...]) -> int | None:
    k = len(string)
    for i in range(k):
        if string[i] == string[(i + 1) % k] == string[(i + 2) % k]:
            return i
    return None


def extend_five_circuit(g, chain, circuit: Circuit):
    """Zero-free extension onto a 5-circuit whose boundary has three equal
    consecutive values; returns None when no rotation matches."""
    assert len(circuit) == 5
    ordering = circuit_boundary_ordering(g, circuit)
    string = boundary_string(g, chain, ordering)
    if any(v == 0 for v in string):
        raise FlowError("boundary of the 5-circuit is not nowhere-zero")
    i = _rotations_with_triple(string)
    if i is None:
        return None
    a = [string[(i + j) % 5] for j in range(5)]
    edges = [circuit.edges[(i + j) % 5] for j in range(5)]
    if {a[3], a[4]} | {a[0]} != set(gf4.NONZERO):
        raise FlowError("parity-violating boundary on the 5-circuit")
    to_canon = {a[0]: gf4.R, a[3]: gf4.G, a[4]: gf4.B}
    from_canon = {c: v for v, c in to_canon.items()}
    assignment = (gf4.B, gf4.G, gf4.B, gf4.R, gf4.G)
    out = dict(chain)
    for eid, canon in zip(edges, assignment):
        out[eid] = from_canon[canon]
    if zeros(g, out) & circuit.edge_set or not is_flow(g, out):
        raise FlowError("five-circuit extension failed to produce a zero-free flow")
    return out


def circuit_extension_freedoms(g, chain, circuit: Circuit):
    """Partial sums controlling extensions onto one circuit.

    Edge j of the circuit takes value x0 ^ sums[j] where x0 is free; the
    extension avoids zeros on the circuit iff some x0 misses all sums.
    """
    ordering = circuit_boundary_ordering(g, circuit)
    string = boundary_string(g, chain, ordering)
    sums = [0]
    for j in range(1, len(circuit)):
        sums.append(sums[-1] ^ string[j])
    total = sums[-1] ^ string[0]
    if total != 0:
        raise FlowError("chain is not extensible onto the circuit")
    return sums


def zero_free_circuit_extension(g, chain, circuit: Circuit):
    """A circuit extension with no zero on the circuit, or None."""
    sums = circuit_extension_freedoms(g, chain, circuit)
    blocked = set(sums)
    free = [x for x in gf4.ELEMENTS if x not in blocked]
    if not free:
        return None
    x0 = free[0]
    out = dict(chain)
    for j, eid in enumerate(circuit.edges):
        out[eid] = x0 ^ sums[j]
    if not is_flow(g, out):
        raise FlowError("circuit extension is not a flow")
    return out


def has_zero_free_extension(g, chain, circuit: Circuit) -> bool:
    return len(set(circuit_extension_freedoms(g, chain, circuit))) <= 3


# -- guided modification search ------------------------------------------------


def _mod1_pairs(g, chain, h_vertices, h_edges, ordering):
    """Distinct boundary-edge pairs sharing an endvertex outside H, with the
    element pairs mod1 accepts for their current values."""
    by_outside: dict[int, list[int]] = {}
    for eid in sorted(set(ordering)):
        u, v = g.endpoints(eid)
        for w in {u, v}:
            if w not in h_vertices:
                by_outside.setdefault(w, []).append(eid)
    moves = []
    for w in sorted(by_outside):
        group = by_outside[w]
        for i in range(len(group)):
            for j in range(i + 1, len(group)):
                e1, e2 = group[i], group[j]
                v1, v2 = chain.get(e1, 0), chain.get(e2, 0)
                if v1 == 0 or v2 == 0:
                    continue
                for x in gf4.NONZERO:
                    for y in gf4.NONZERO:
                        if x < y and {v1, v2} <= {x, y}:
                            moves.append(("mod1", e1, e2, x, y))
    return moves


def _mod2_moves(g, chain, ordering):
    moves = []
    for eid in sorted(set(ordering)):
        val = chain.get(eid, 0)
        if val == 0:
            continue
        for x in gf4.NONZERO:
            for y in gf4.NONZERO:
                if x < y and val in (x, y):
                    moves.append(("mod2", eid, x, y))
    return moves


def search_modification(g, chain, h_vertices, h_edges, ordering, success, max_depth=8):
    """Breadth-first search over mod1/mod2 applications until success(chain).

    Moves are enumerated deterministically and real Kempe walks resolve the
    mod2 outcomes, so the search is reproducible.  The case tables certified
    by the oracle guarantee termination well inside the depth bound.
    """
    h_vertices = frozenset(h_vertices)
    h_edges = frozenset(h_edges)

    def key(c):
        return tuple(c.get(e, 0) for e in g.edge_ids())

    start = dict(chain)
    if success(start):
        return start
    seen = {key(start)}
    frontier = deque([(start, 0)])
    while frontier:
        current, depth = frontier.popleft()
        if depth >= max_depth:
            continue
        moves = _mod1_pairs(g, current, h_vertices, h_edges, ordering)
        moves += _mod2_moves(g, current, ordering)
        for move in moves:
            if move[0] == "mod1":
                _, e1, e2, x, y = move
                nxt = mod1(g, current, h_vertices, h_edges, e1, e2, x, y)
            else:
                _, f, x, y = move
                _, nxt = mod2(g, current, h_vertices, h_edges, f, x, y)
            k = key(nxt)
            if k in seen:
                continue
            if success(nxt):
                return nxt
            seen.add(k)
            frontier.append((nxt, depth + 1))
    raise FlowError("modification search exhausted; case analysis incomplete")


def rescue_five_circuit(g, chain, circuit: Circuit, witness: int) -> dict[int, int]:
    """C-modification making a 5-circuit zero-free extendable, given a vertex
    outside C adjacent to at least two of its vertices."""
    assert len(circuit) == 5
    neighbours = {
        g.other_end(e, witness)
        for e in g.incident(witness)
        if g.other_end(e, witness) in circuit.vertex_set
    }
    if witness in circuit.vertex_set or len(neighbours) < 2:
        raise FlowError("witness vertex is not adjacent to two circuit vertices")
    ordering = circuit_boundary_ordering(g, circuit)
    if any(chain.get(e, 0) == 0 for e in ordering):
        raise FlowError("boundary of the 5-circuit is not nowhere-zero")

    def success(c):
        return has_zero_free_extension(g, c, circuit)

    fixed = search_modification(g, chain, circuit.vertex_set, circuit.edge_set, ordering, success)
    flow = extend_five_circuit(g, fixed, circuit)
    if flow is None:
        flow = zero_free_circuit_extension(g, fixed, circuit)
    if flow is None:
        raise FlowError("rescued chain lost its zero-free extension")
    return flow


# -- Fan extension and modification --------------------------------------------


def fan_extend(g, chain, circuit: Circuit) -> dict[int, int]:
    """Extension with at most |E(C)|/4 zeros on the circuit: extend freely,
    then shift the circuit by the least frequent element."""
    flow = extend(g, chain, circuit.vertex_set, circuit.edge_set)
    counts = {x: 0 for x in gf4.ELEMENTS}
    for eid in circuit.edges:
        counts[flow[eid]] += 1
    shift = min(gf4.ELEMENTS, key=lambda x: (counts[x], x))
    if shift:
        flow = dict(flow)
        for eid in circuit.edge_set:
            flow[eid] ^= shift
    count = sum(1 for e in circuit.edge_set if flow[e] == 0)
    if count > len(circuit) // 4:
        raise FlowError("fan extension exceeded the zero budget")
    return flow


def _gf4_cycle_space(g):
    """Spanning-forest decomposition: (ordered non-tree edges, peel order).

    A flow is determined by free values on the non-tree edges; tree edges are
    forced by peeling leaves.
    """
    tree: set[int] = set()
    seen: set[int] = set()
    for root in g.vertex_list():
        if root in seen:
            continue
        seen.add(root)
        stack = [root]
        while stack:
            v = stack.pop()
            for eid in g.incident(v):
                w = g.other_end(eid, v)
                if w not in seen:
                    seen.add(w)
                    tree.add(eid)
                    stack.append(w)
    nontree = [e for e in g.edge_ids() if e not in tree]
    return nontree, tree


def flows_on(g):
    """Iterate every flow on g, deterministically ordered (4^rank of them)."""
    nontree, tree = _gf4_cycle_space(g)
    rank = len(nontree)
    base = zero_chain(g)
    for code in range(4 ** rank):
        values = dict(base)
        c = code
        for eid in nontree:
            values[eid] = c & 3
            c >>= 2
        yield extend(g, values, set(g.vertex_list()), tree)


def fan_modify(g, chain, circuit: Circuit) -> dict[int, int]:
    """C-modification with strictly fewer than |E(C)|/4 zeros on the circuit
    (assumes |C| < 20; realized by shift minimisation, then an exact search
    over the flow coset preserving zeros off the circuit)."""
    k = len(circuit)
    if k >= 20:
        raise FlowError("fan_modify applies to circuits shorter than 20")
    flow = fan_extend(g, chain, circuit)
    if 4 * sum(1 for e in circuit.edge_set if flow[e] == 0) < k:
        return flow

    protected = zeros(g, flow) - circuit.edge_set
    nontree, tree = _gf4_cycle_space(g)
    all_vertices = set(g.vertex_list())
    for code in range(4 ** len(nontree)):
        kappa = zero_chain(g)
        c = code
        for eid in nontree:
            kappa[eid] = c & 3
            c >>= 2
        kappa = extend(g, kappa, all_vertices, tree)
        cand = {e: flow[e] ^ kappa[e] for e in flow}
        bad = False
        for e in g.edge_ids():
            if e in circuit.edge_set:
                continue
            if (cand[e] == 0) != (e in protected):
                bad = True
                break
        if bad:
            continue
        if 4 * sum(1 for e in circuit.edge_set if cand[e] == 0) < k:
            return cand
    raise FlowError("no modification met the strict zero bound")


# -- nowhere-zero flows ---------------------------------------------------------


def nowhere_zero_flow(g) -> dict[int, int]:
    """A nowhere-zero flow on a bridgeless graph, by deterministic backtracking.

    Loops always receive R.  Existence is guaranteed for the graphs this
    pipeline passes in (contractions of 2-factors with no 1- or 3-cuts).
    """
    bad = bridges(g)
    if bad:
        raise FlowError(f"graph has a bridge: edge {min(bad)}")
    loops = [e for e in g.edge_ids() if g.is_loop(e)]
    nontree, tree = _gf4_cycle_space(g)
    free = [e for e in nontree if e not in set(loops)]
    all_vertices = set(g.vertex_list())

    def attempt(values, idx):
        if idx == len(free):
            flow = extend(g, values, all_vertices, tree)
            if is_nowhere_zero(g, flow):
                return flow
            return None
        for val in gf4.NONZERO:
            values[free[idx]] = val
            found = attempt(values, idx + 1)
            if found is not None:
                return found
        del values[free[idx]]
        return None

    start = zero_chain(g)
    for e in loops:
        start[e] = gf4.R
    flow = attempt(start, 0)
    if flow is None:
        raise FlowError("no nowhere-zero flow found; input violates the cut conditions")
    return flow
