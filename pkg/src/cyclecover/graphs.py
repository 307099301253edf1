"""Cubic multigraph core: parsing, structural queries, contraction.

Graphs are undirected multigraphs (loops and parallel edges allowed) with
stable integer edge ids.  Edge ids are assigned at ingestion and survive
contraction: chains and flows are keyed by edge id across contraction levels,
so an edge never changes identity, only the vertices its endpoints resolve to.

Two graph classes share one query interface:

* ``Multigraph`` -- a concrete mutable graph, used for ingested graphs and
  oracle computations.
* ``ContractionStack`` -- a view over a base ``Multigraph`` plus a history of
  named contractions that can be undone one at a time (the good-flow
  procedure restores circuits in a specific order).  It also supports adding
  and deleting ad-hoc edges at the current level, which the good-flow
  bookkeeping uses for its virtual chord edges.
"""
from __future__ import annotations

from dataclasses import dataclass


class GraphFormatError(ValueError):
    """Input text is not a valid encoding of a graph."""


class NotCubicError(ValueError):
    """Graph violates the degree-3 requirement."""


class Multigraph:
    def __init__(self):
        self._vertices: set[int] = set()
        self._edges: dict[int, tuple[int, int]] = {}
        self._next_eid = 0
        self._adj: dict[int, list[int]] | None = None

    # -- construction ------------------------------------------------------

    def add_vertex(self, v: int) -> int:
        self._vertices.add(v)
        self._adj = None
        return v

    def add_edge(self, u: int, v: int, eid: int | None = None) -> int:
        if eid is None:
            eid = self._next_eid
        if eid in self._edges:
            raise ValueError(f"edge id {eid} already in use")
        self._next_eid = max(self._next_eid, eid + 1)
        self._vertices.add(u)
        self._vertices.add(v)
        self._edges[eid] = (u, v)
        self._adj = None
        return eid

    def remove_edge(self, eid: int) -> tuple[int, int]:
        ends = self._edges.pop(eid)
        self._adj = None
        return ends

    def remove_vertex(self, v: int) -> None:
        if any(v in ends for ends in self._edges.values()):
            raise ValueError(f"vertex {v} is not isolated")
        self._vertices.remove(v)
        self._adj = None

    def copy(self) -> "Multigraph":
        g = Multigraph()
        g._vertices = set(self._vertices)
        g._edges = dict(self._edges)
        g._next_eid = self._next_eid
        return g

    # -- queries -----------------------------------------------------------

    def vertex_list(self) -> list[int]:
        return sorted(self._vertices)

    def has_vertex(self, v: int) -> bool:
        return v in self._vertices

    def num_vertices(self) -> int:
        return len(self._vertices)

    def edge_ids(self) -> list[int]:
        return sorted(self._edges)

    def num_edges(self) -> int:
        return len(self._edges)

    def has_edge(self, eid: int) -> bool:
        return eid in self._edges

    def endpoints(self, eid: int) -> tuple[int, int]:
        return self._edges[eid]

    def is_loop(self, eid: int) -> bool:
        u, v = self._edges[eid]
        return u == v

    def _adjacency(self) -> dict[int, list[int]]:
        if self._adj is None:
            adj: dict[int, list[int]] = {v: [] for v in self._vertices}
            for eid in sorted(self._edges):
                u, v = self._edges[eid]
                adj[u].append(eid)
                if v != u:
                    adj[v].append(eid)
                else:
                    adj[u].append(eid)  # loop counts twice
            self._adj = adj
        return self._adj

    def incident(self, v: int) -> list[int]:
        """Edge ids at v in increasing order; a loop is listed twice."""
        return self._adjacency()[v]

    def degree(self, v: int) -> int:
        return len(self.incident(v))

    def other_end(self, eid: int, v: int) -> int:
        u, w = self._edges[eid]
        return w if u == v else u

    def check_consistency(self) -> None:
        """Full rescan of the adjacency index against the edge set."""
        adj = self._adjacency()
        for v, eids in adj.items():
            assert self.degree(v) == len(eids)
            for eid in eids:
                assert v in self._edges[eid]
        total = sum(len(e) for e in adj.values())
        assert total == 2 * len(self._edges)

    def connected_components(self) -> list[set[int]]:
        seen: set[int] = set()
        comps = []
        for s in self.vertex_list():
            if s in seen:
                continue
            comp = {s}
            stack = [s]
            while stack:
                v = stack.pop()
                for eid in self.incident(v):
                    w = self.other_end(eid, v)
                    if w not in comp:
                        comp.add(w)
                        stack.append(w)
            seen |= comp
            comps.append(comp)
        return comps

    def is_connected(self) -> bool:
        return len(self.connected_components()) <= 1

    def assert_cubic(self) -> None:
        for v in self.vertex_list():
            if self.degree(v) != 3:
                raise NotCubicError(f"vertex {v} has degree {self.degree(v)}, expected 3")


# -- parsing ----------------------------------------------------------------


def parse_graph6(text: str, require_cubic: bool = True) -> Multigraph:
    """Decode one graph6 line (simple graphs, <= 62 vertices)."""
    line = text.strip()
    if line.startswith(">>graph6<<"):
        line = line[len(">>graph6<<"):]
    if not line:
        raise GraphFormatError("empty graph6 input")
    data = [ord(c) - 63 for c in line]
    if any(x < 0 or x > 63 for x in data):
        raise GraphFormatError(f"invalid graph6 byte in {line!r}")
    n = data[0]
    if n == 63:
        raise GraphFormatError("graphs on more than 62 vertices are not supported")
    body = data[1:]
    need = (n * (n - 1) // 2 + 5) // 6
    if len(body) != need:
        raise GraphFormatError(f"graph6 body length {len(body)}, expected {need} for n={n}")
    bits = []
    for x in body:
        bits.extend((x >> shift) & 1 for shift in range(5, -1, -1))
    g = Multigraph()
    for v in range(n):
        g.add_vertex(v)
    k = 0
    for j in range(1, n):
        for i in range(j):
            if bits[k]:
                g.add_edge(i, j)
            k += 1
    if n == 0:
        raise GraphFormatError("graph is empty")
    if require_cubic:
        g.assert_cubic()
    return g


def encode_graph6(g: Multigraph) -> str:
    """Inverse of parse_graph6; vertices must be 0..n-1, graph simple."""
    n = g.num_vertices()
    assert g.vertex_list() == list(range(n))
    pairs = set()
    for eid in g.edge_ids():
        u, v = g.endpoints(eid)
        assert u != v, "graph6 cannot encode loops"
        key = (min(u, v), max(u, v))
        assert key not in pairs, "graph6 cannot encode parallel edges"
        pairs.add(key)
    bits = []
    for j in range(1, n):
        for i in range(j):
            bits.append(1 if (i, j) in pairs else 0)
    while len(bits) % 6:
        bits.append(0)
    out = [chr(63 + n)]
    for k in range(0, len(bits), 6):
        val = 0
        for b in bits[k:k + 6]:
            val = (val << 1) | b
        out.append(chr(63 + val))
    return "".join(out)


def parse_edge_list(text: str, require_cubic: bool = True) -> Multigraph:
    """Parse lines of "u v" pairs; repeats give parallel edges, "u u" a loop."""
    g = Multigraph()
    count = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise GraphFormatError(f"line {lineno}: expected two tokens, got {line!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError as exc:
            raise GraphFormatError(f"line {lineno}: non-integer token in {line!r}") from exc
        g.add_edge(u, v)
        count += 1
    if count == 0:
        raise GraphFormatError("edge list is empty")
    if require_cubic:
        g.assert_cubic()
    return g


# -- circuits ---------------------------------------------------------------


@dataclass(frozen=True)
class Circuit:
    """A connected 2-regular subgraph, stored as aligned cyclic sequences.

    ``vertices[i]`` and ``vertices[i+1]`` are the endpoints of ``edges[i]``
    (indices mod length).  A digon (two parallel edges) is a valid circuit;
    length 1 (a loop) is not.
    """

    vertices: tuple[int, ...]
    edges: tuple[int, ...]

    def __post_init__(self):
        assert len(self.vertices) == len(self.edges) >= 2

    def __len__(self) -> int:
        return len(self.edges)

    @property
    def vertex_set(self) -> frozenset[int]:
        return frozenset(self.vertices)

    @property
    def edge_set(self) -> frozenset[int]:
        return frozenset(self.edges)

    def canonical(self) -> "Circuit":
        """Rotate to the minimal vertex, direction by smaller second vertex.

        Parallel edges are disambiguated by edge id, so canonicalisation is a
        total order on circuits and two runs yield identical objects.
        """
        k = len(self.vertices)
        best = None
        for start in range(k):
            for step in (1, -1):
                vs = tuple(self.vertices[(start + i * step) % k] for i in range(k))
                if step == 1:
                    es = tuple(self.edges[(start + i) % k] for i in range(k))
                else:
                    es = tuple(self.edges[(start - 1 - i) % k] for i in range(k))
                key = (vs, es)
                if best is None or key < best:
                    best = key
        return Circuit(best[0], best[1])

    def key(self) -> tuple:
        c = self.canonical()
        return (c.vertices, c.edges)

    @staticmethod
    def from_edge_set(g, edge_ids) -> "Circuit":
        """Build a circuit from an edge set known to induce one."""
        edge_ids = set(edge_ids)
        inc: dict[int, list[int]] = {}
        for eid in edge_ids:
            u, v = g.endpoints(eid)
            assert u != v, "loop is not a circuit"
            inc.setdefault(u, []).append(eid)
            inc.setdefault(v, []).append(eid)
        assert all(len(es) == 2 for es in inc.values()), "edge set is not 2-regular"
        v0 = min(inc)
        verts = [v0]
        eids = []
        e = min(inc[v0])
        while True:
            eids.append(e)
            w = g.other_end(e, verts[-1])
            if w == v0 and len(eids) == len(edge_ids):
                break
            verts.append(w)
            e1, e2 = inc[w]
            e = e2 if e1 == e else e1
        assert len(verts) == len(edge_ids)
        return Circuit(tuple(verts), tuple(eids)).canonical()


def circuits_up_to(g, max_len: int) -> list[Circuit]:
    """Every circuit of length <= max_len, once up to rotation/reflection."""
    assert max_len >= 2
    found: dict[frozenset[int], Circuit] = {}
    for start in g.vertex_list():
        _extend_circuits(g, start, [start], [], found, max_len)
    return sorted(found.values(), key=lambda c: (len(c), c.key()))


def _extend_circuits(g, start, verts, eids, found, max_len):
    v = verts[-1]
    used = set(eids)
    onpath = set(verts)
    for eid in g.incident(v):
        if eid in used:
            continue
        w = g.other_end(eid, v)
        if w == v:
            continue  # loops are not circuits
        if w == start and len(eids) >= 1:
            key = frozenset(eids + [eid])
            if len(key) == len(eids) + 1 and key not in found:
                found[key] = Circuit(tuple(verts), tuple(eids + [eid])).canonical()
            continue
        if w in onpath or w < start or len(eids) + 2 > max_len:
            continue
        _extend_circuits(g, start, verts + [w], eids + [eid], found, max_len)


# -- bridges ----------------------------------------------------------------


def bridges(g) -> set[int]:
    """Edges whose removal increases the number of components (DFS lowpoint)."""
    disc: dict[int, int] = {}
    low: dict[int, int] = {}
    out: set[int] = set()
    counter = [0]

    def dfs(v: int, parent_edge: int) -> None:
        disc[v] = low[v] = counter[0]
        counter[0] += 1
        for eid in g.incident(v):
            w = g.other_end(eid, v)
            if w == v or eid == parent_edge:
                continue  # a parallel of the tree edge still counts as a back edge
            if w in disc:
                low[v] = min(low[v], disc[w])
            else:
                dfs(w, eid)
                low[v] = min(low[v], low[w])
                if low[w] > disc[v]:
                    out.add(eid)

    for root in g.vertex_list():
        if root not in disc:
            dfs(root, -1)
    return out


# -- boundaries -------------------------------------------------------------


def boundary_multiset(g, vertices, edges=frozenset()) -> list[int]:
    """The multiset boundary of a subgraph H = (vertices, edges).

    Each edge outside E(H) appears once per endpoint in V(H); a loop at a
    vertex of H therefore appears twice.  Returned sorted, with repeats.
    """
    vset = set(vertices)
    eset = set(edges)
    out: list[int] = []
    for eid in g.edge_ids():
        if eid in eset:
            continue
        u, v = g.endpoints(eid)
        mult = (u in vset) + (v in vset)
        out.extend([eid] * mult)
    return sorted(out)


# -- contraction ------------------------------------------------------------


@dataclass
class _Contraction:
    name: str
    removed_edges: tuple[int, ...]
    groups: tuple[tuple[int, tuple[int, ...]], ...]  # (new vertex, merged vertices)


class ContractionStack:
    """A graph plus the history needed to uncontract named subgraphs.

    The base Multigraph is never mutated; the stack overlays merge links and
    the live edge/vertex sets, and exposes the same query interface.  Each
    component of a contracted edge set becomes one fresh vertex.  Ad-hoc
    edges may be added and removed at the current level (fresh ids only).
    """

    def __init__(self, base: Multigraph):
        self.base = base
        self._endpoints: dict[int, tuple[int, int]] = dict(base._edges)
        self._live_edges: set[int] = set(base._edges)
        self._live_vertices: set[int] = set(base._vertices)
        self._merged: dict[int, int] = {}  # vertex -> its direct super-vertex
        self._records: dict[str, _Contraction] = {}
        self._order: list[str] = []
        self._next_vid = max(base._vertices, default=-1) + 1
        self._next_eid = base._next_eid
        self._adj: dict[int, list[int]] | None = None

    # -- view interface

    def vertex_list(self) -> list[int]:
        return sorted(self._live_vertices)

    def has_vertex(self, v: int) -> bool:
        return v in self._live_vertices

    def num_vertices(self) -> int:
        return len(self._live_vertices)

    def edge_ids(self) -> list[int]:
        return sorted(self._live_edges)

    def num_edges(self) -> int:
        return len(self._live_edges)

    def has_edge(self, eid: int) -> bool:
        return eid in self._live_edges

    def resolve(self, v: int) -> int:
        while v in self._merged:
            v = self._merged[v]
        return v

    def endpoints(self, eid: int) -> tuple[int, int]:
        if eid not in self._live_edges:
            raise KeyError(eid)
        u, v = self._endpoints[eid]
        return (self.resolve(u), self.resolve(v))

    def is_loop(self, eid: int) -> bool:
        u, v = self.endpoints(eid)
        return u == v

    def _adjacency(self) -> dict[int, list[int]]:
        if self._adj is None:
            adj: dict[int, list[int]] = {v: [] for v in self._live_vertices}
            for eid in sorted(self._live_edges):
                u, v = self.endpoints(eid)
                adj[u].append(eid)
                adj[v].append(eid)  # for a loop u == v: counted twice
            self._adj = adj
        return self._adj

    def incident(self, v: int) -> list[int]:
        return self._adjacency()[v]

    def degree(self, v: int) -> int:
        return len(self.incident(v))

    def other_end(self, eid: int, v: int) -> int:
        u, w = self.endpoints(eid)
        return w if u == v else u

    def connected_components(self) -> list[set[int]]:
        return Multigraph.connected_components(self)  # type: ignore[arg-type]

    def is_connected(self) -> bool:
        return len(self.connected_components()) <= 1

    # -- mutation

    def add_edge(self, u: int, v: int) -> int:
        """Add an ad-hoc edge at the current level (used for virtual chords)."""
        assert u in self._live_vertices and v in self._live_vertices
        eid = self._next_eid
        self._next_eid += 1
        self._endpoints[eid] = (u, v)
        self._live_edges.add(eid)
        self._adj = None
        return eid

    def remove_edge(self, eid: int) -> None:
        self._live_edges.remove(eid)
        self._adj = None

    def restore_edge(self, eid: int) -> None:
        """Re-insert an edge previously removed with remove_edge (same id)."""
        assert eid in self._endpoints and eid not in self._live_edges
        u, v = self.endpoints_raw(eid)
        assert self.resolve(u) in self._live_vertices and self.resolve(v) in self._live_vertices
        self._live_edges.add(eid)
        self._adj = None

    def endpoints_raw(self, eid: int) -> tuple[int, int]:
        return self._endpoints[eid]

    def contract(self, name: str, edge_ids) -> None:
        """Contract each component of the given edge set into a fresh vertex."""
        if name in self._records:
            raise ValueError(f"contraction name {name!r} already in use")
        edge_ids = sorted(set(edge_ids))
        for eid in edge_ids:
            if eid not in self._live_edges:
                raise ValueError(f"edge {eid} not present")
        # component split of the contracted subgraph, at the current level
        adj: dict[int, set[int]] = {}
        for eid in edge_ids:
            u, v = self.endpoints(eid)
            adj.setdefault(u, set()).add(v)
            adj.setdefault(v, set()).add(u)
        seen: set[int] = set()
        groups = []
        for s in sorted(adj):
            if s in seen:
                continue
            comp = {s}
            stack = [s]
            while stack:
                x = stack.pop()
                for y in adj[x]:
                    if y not in comp:
                        comp.add(y)
                        stack.append(y)
            seen |= comp
            nv = self._next_vid
            self._next_vid += 1
            for x in sorted(comp):
                self._merged[x] = nv
                self._live_vertices.discard(x)
            self._live_vertices.add(nv)
            groups.append((nv, tuple(sorted(comp))))
        for eid in edge_ids:
            self._live_edges.remove(eid)
        self._records[name] = _Contraction(name, tuple(edge_ids), tuple(groups))
        self._order.append(name)
        self._adj = None

    def uncontract(self, name: str) -> None:
        rec = self._records.get(name)
        if rec is None:
            raise ValueError(f"unknown contraction {name!r}")
        for nv, _members in rec.groups:
            if nv not in self._live_vertices:
                raise ValueError(
                    f"cannot uncontract {name!r}: vertex {nv} was merged by a later contraction"
                )
        del self._records[name]
        for nv, members in rec.groups:
            self._live_vertices.remove(nv)
            for x in members:
                assert self._merged.pop(x) == nv
                self._live_vertices.add(x)
        for eid in rec.removed_edges:
            self._live_edges.add(eid)
        self._order.remove(name)
        self._adj = None

    def contracted_vertex(self, name: str) -> int:
        """The merged vertex for a single-component contraction."""
        rec = self._records[name]
        assert len(rec.groups) == 1
        return rec.groups[0][0]

    def is_contracted(self, name: str) -> bool:
        return name in self._records

    def snapshot(self) -> tuple:
        """Comparable summary of the current graph (for round-trip tests)."""
        return (
            tuple(self.vertex_list()),
            tuple((eid,) + tuple(sorted(self.endpoints(eid))) for eid in self.edge_ids()),
        )
