"""Labeled multigraph with stable vertex/edge identifiers.

Edges carry their own stable ids so that parallel edges and self-loops are
representable and edge identity survives vertex deletion, cutting, splitting
and contraction.  All iteration orders are deterministic (ascending id).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, Iterator, List, Optional, Sequence, Set, Tuple


class Graph:
    """Undirected multigraph with stable integer vertex and edge ids."""

    __slots__ = ("_edges", "_adj", "labels", "_next_eid")

    def __init__(self) -> None:
        self._edges: Dict[int, Tuple[int, int]] = {}
        self._adj: Dict[int, List[int]] = {}
        self.labels: Dict[int, str] = {}
        self._next_eid = 0

    # ------------------------------------------------------------------
    # construction
    # ------------------------------------------------------------------

    @classmethod
    def from_edges(cls, pairs: Iterable[Tuple[int, int]],
                   vertices: Iterable[int] = ()) -> "Graph":
        g = cls()
        for v in vertices:
            g.add_vertex(v)
        for u, v in pairs:
            g.add_vertex(u)
            g.add_vertex(v)
            g.add_edge(u, v)
        return g

    def copy(self) -> "Graph":
        g = Graph()
        g._edges = dict(self._edges)
        g._adj = {v: list(eids) for v, eids in self._adj.items()}
        g.labels = dict(self.labels)
        g._next_eid = self._next_eid
        return g

    def add_vertex(self, v: int, label: Optional[str] = None) -> int:
        if v not in self._adj:
            self._adj[v] = []
        if label is not None:
            self.labels[v] = label
        return v

    def new_vertex(self, label: Optional[str] = None) -> int:
        v = max(self._adj, default=-1) + 1
        return self.add_vertex(v, label)

    def add_edge(self, u: int, v: int, eid: Optional[int] = None) -> int:
        if u not in self._adj or v not in self._adj:
            raise ValueError(f"edge ({u},{v}) references a missing vertex")
        if eid is None:
            eid = self._next_eid
        elif eid in self._edges:
            raise ValueError(f"edge id {eid} already in use")
        self._edges[eid] = (u, v)
        self._adj[u].append(eid)
        if v != u:
            self._adj[v].append(eid)
        self._next_eid = max(self._next_eid, eid + 1)
        return eid

    def remove_edge(self, eid: int) -> None:
        u, v = self._edges.pop(eid)
        self._adj[u].remove(eid)
        if v != u:
            self._adj[v].remove(eid)

    def remove_vertex(self, v: int) -> None:
        for eid in list(self._adj[v]):
            self.remove_edge(eid)
        del self._adj[v]
        self.labels.pop(v, None)

    # ------------------------------------------------------------------
    # queries (all deterministic, ascending id)
    # ------------------------------------------------------------------

    def vertices(self) -> List[int]:
        return sorted(self._adj)

    def edges(self) -> List[Tuple[int, int, int]]:
        """List of (eid, u, v), ascending eid."""
        return [(eid, *self._edges[eid]) for eid in sorted(self._edges)]

    def edge_ids(self) -> List[int]:
        return sorted(self._edges)

    def endpoints(self, eid: int) -> Tuple[int, int]:
        return self._edges[eid]

    def other_end(self, eid: int, v: int) -> int:
        u, w = self._edges[eid]
        if v == u:
            return w
        if v == w:
            return u
        raise ValueError(f"vertex {v} is not an endpoint of edge {eid}")

    def has_vertex(self, v: int) -> bool:
        return v in self._adj

    def has_edge(self, u: int, v: int) -> bool:
        return any(self.other_end(eid, u) == v for eid in self._adj.get(u, ()))

    def edge_between(self, u: int, v: int) -> Optional[int]:
        """Smallest edge id between u and v, or None."""
        eids = [eid for eid in self._adj.get(u, ()) if self.other_end(eid, u) == v]
        return min(eids) if eids else None

    def incident(self, v: int) -> List[int]:
        """Edge ids incident to v (loops listed once), ascending."""
        return sorted(set(self._adj[v]))

    def degree(self, v: int) -> int:
        """Degree with self-loops counted twice."""
        return len(self._adj[v]) + sum(1 for eid in self._adj[v]
                                       if self._edges[eid] == (v, v))

    def neighbors(self, v: int) -> List[int]:
        return sorted({self.other_end(eid, v) for eid in self._adj[v]
                       if self.other_end(eid, v) != v})

    def num_vertices(self) -> int:
        return len(self._adj)

    def num_edges(self) -> int:
        return len(self._edges)

    def is_loop(self, eid: int) -> bool:
        u, v = self._edges[eid]
        return u == v

    # ------------------------------------------------------------------
    # derived graphs
    # ------------------------------------------------------------------

    def induced(self, vs: Iterable[int]) -> "Graph":
        keep = set(vs)
        g = Graph()
        for v in sorted(keep):
            g.add_vertex(v, self.labels.get(v))
        for eid in sorted(self._edges):
            u, v = self._edges[eid]
            if u in keep and v in keep:
                g.add_edge(u, v, eid)
        g._next_eid = self._next_eid
        return g

    def edge_subgraph(self, eids: Iterable[int],
                      extra_vertices: Iterable[int] = ()) -> "Graph":
        g = Graph()
        eids = sorted(set(eids))
        for eid in eids:
            u, v = self._edges[eid]
            g.add_vertex(u, self.labels.get(u))
            g.add_vertex(v, self.labels.get(v))
        for v in extra_vertices:
            g.add_vertex(v, self.labels.get(v))
        for eid in eids:
            u, v = self._edges[eid]
            g.add_edge(u, v, eid)
        g._next_eid = self._next_eid
        return g

    def simplified(self) -> Tuple["Graph", Dict[int, int]]:
        """Drop self-loops, collapse parallel edges to the smallest id.

        Returns (simple graph, map from dropped edge id to the surviving
        representative; loops map to -1).
        """
        g = Graph()
        for v in self.vertices():
            g.add_vertex(v, self.labels.get(v))
        rep: Dict[FrozenSet[int], int] = {}
        merged: Dict[int, int] = {}
        for eid in sorted(self._edges):
            u, v = self._edges[eid]
            if u == v:
                merged[eid] = -1
                continue
            key = frozenset((u, v))
            if key in rep:
                merged[eid] = rep[key]
            else:
                rep[key] = eid
                g.add_edge(u, v, eid)
        g._next_eid = self._next_eid
        return g, merged

    def relabeled(self, mapping: Dict[int, int]) -> "Graph":
        """Relabel vertices; vertices not in mapping keep their id."""
        g = Graph()
        for v in self.vertices():
            g.add_vertex(mapping.get(v, v), self.labels.get(v))
        for eid in sorted(self._edges):
            u, v = self._edges[eid]
            g.add_edge(mapping.get(u, u), mapping.get(v, v), eid)
        g._next_eid = self._next_eid
        return g

    # ------------------------------------------------------------------
    # connectivity
    # ------------------------------------------------------------------

    def components(self) -> List[List[int]]:
        """Connected components as sorted vertex lists, sorted by min vertex."""
        seen: Set[int] = set()
        out: List[List[int]] = []
        for root in self.vertices():
            if root in seen:
                continue
            comp = [root]
            seen.add(root)
            stack = [root]
            while stack:
                x = stack.pop()
                for eid in self._adj[x]:
                    y = self.other_end(eid, x)
                    if y not in seen:
                        seen.add(y)
                        comp.append(y)
                        stack.append(y)
            out.append(sorted(comp))
        return out

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"Graph(V={self.num_vertices()}, E={self.num_edges()})"


# ----------------------------------------------------------------------
# block-cut decomposition
# ----------------------------------------------------------------------

@dataclass
class BlockCutTree:
    """Blocks (as edge-id sets), cut vertices, and their bipartite tree.

    ``tree`` maps block index -> sorted cut vertices on that block.  For a
    disconnected input the structure is a forest and ``connected`` is False.
    """

    blocks: List[FrozenSet[int]]
    cut_vertices: FrozenSet[int]
    tree: Dict[int, List[int]]
    block_vertices: List[FrozenSet[int]]
    connected: bool = True

    def blocks_at(self, v: int) -> List[int]:
        return [i for i, bv in enumerate(self.block_vertices) if v in bv]


def biconnected_decompose(g: Graph) -> BlockCutTree:
    """Hopcroft-Tarjan block decomposition, iterative, multigraph-aware.

    Self-loops each form their own single-edge block.  Disconnected inputs
    yield a forest with ``connected=False``.
    """
    disc: Dict[int, int] = {}
    low: Dict[int, int] = {}
    blocks: List[FrozenSet[int]] = []
    cut: Set[int] = set()
    estack: List[int] = []
    timer = 0

    for eid in g.edge_ids():
        if g.is_loop(eid):
            blocks.append(frozenset({eid}))

    for root in g.vertices():
        if root in disc:
            continue
        disc[root] = low[root] = timer
        timer += 1
        root_children = 0
        # frames: (v, parent edge id, iterator over incident edge ids)
        stack = [(root, -1, iter(sorted(g._adj[root])))]
        while stack:
            v, peid, it = stack[-1]
            pushed = False
            for eid in it:
                if eid == peid or g.is_loop(eid):
                    continue
                w = g.other_end(eid, v)
                if w not in disc:
                    estack.append(eid)
                    disc[w] = low[w] = timer
                    timer += 1
                    if v == root:
                        root_children += 1
                    stack.append((w, eid, iter(sorted(g._adj[w]))))
                    pushed = True
                    break
                elif disc[w] < disc[v]:
                    estack.append(eid)
                    if disc[w] < low[v]:
                        low[v] = disc[w]
            if pushed:
                continue
            stack.pop()
            if stack:
                u = stack[-1][0]
                if low[v] < low[u]:
                    low[u] = low[v]
                if low[v] >= disc[u]:
                    block: Set[int] = set()
                    while True:
                        e = estack.pop()
                        block.add(e)
                        if e == peid:
                            break
                    blocks.append(frozenset(block))
                    if u != root or root_children > 1:
                        cut.add(u)

    block_sets = list(blocks)
    block_vs: List[FrozenSet[int]] = []
    for b in block_sets:
        vs: Set[int] = set()
        for eid in b:
            vs.update(g.endpoints(eid))
        block_vs.append(frozenset(vs))
    # isolated vertices get no block; that is fine for edge accounting
    order = sorted(range(len(block_sets)), key=lambda i: min(block_sets[i]))
    block_sets = [block_sets[i] for i in order]
    block_vs = [block_vs[i] for i in order]
    tree = {i: sorted(bv & cut) for i, bv in enumerate(block_vs)}
    return BlockCutTree(blocks=block_sets, cut_vertices=frozenset(cut),
                        tree=tree, block_vertices=block_vs,
                        connected=g.is_connected())


def cut_vertices_of(g: Graph) -> List[int]:
    return sorted(biconnected_decompose(g).cut_vertices)


# ----------------------------------------------------------------------
# cutting and contraction
# ----------------------------------------------------------------------

def cut_along(g: Graph, s: Iterable[int]) -> Tuple[Graph, Dict[int, int]]:
    """Cut g along each vertex of s in ascending order.

    Cutting along v replaces g by the disjoint union of g[C + v] over the
    components C of g - v.  Returns the cut graph and a provenance map from
    vertex copies to original ids (identity for untouched vertices).
    """
    cur = g.copy()
    origin = {v: v for v in g.vertices()}
    for v in sorted(set(s)):
        copies = [w for w, o in origin.items() if o == origin.get(v, v)]
        for c in sorted(copies):
            cur, origin = _cut_one(cur, c, origin)
    return cur, origin


def _cut_one(g: Graph, v: int, origin: Dict[int, int]) -> Tuple[Graph, Dict[int, int]]:
    if v not in g._adj:
        return g, origin
    own = next(c for c in g.components() if v in c)
    rest = g.induced(set(own) - {v})
    loops = [eid for eid in g.incident(v) if g.is_loop(eid)]
    comps = rest.components()
    if len(comps) <= 1:
        return g, origin
    out = g.copy()
    out.remove_vertex(v)
    origin = dict(origin)
    base = max(out.vertices(), default=v) + 1
    orig = origin.pop(v)
    for i, comp in enumerate(comps):
        copy = v if i == 0 else base + i - 1
        out.add_vertex(copy, g.labels.get(v))
        origin[copy] = orig
        compset = set(comp)
        for eid in g.incident(v):
            if g.is_loop(eid):
                continue
            w = g.other_end(eid, v)
            if w in compset:
                out.add_edge(copy, w, eid)
    for eid in loops:
        out.add_edge(v, v, eid)
    return out, origin


def contract_set(g: Graph, u: Iterable[int],
                 simplify: bool = False) -> Tuple[Graph, int]:
    """Identify the vertex set u into a single vertex (the smallest id of u).

    Parallel edges are kept unless ``simplify``; edges inside u become
    self-loops and are dropped.  Returns (graph, genus-delta bound |u| - 1).
    """
    uset = set(u)
    if not uset:
        raise ValueError("contract_set: empty set")
    missing = uset - set(g._adj)
    if missing:
        raise ValueError(f"contract_set: vertices not in graph: {sorted(missing)}")
    target = min(uset)
    out = Graph()
    for v in g.vertices():
        if v not in uset or v == target:
            out.add_vertex(v, g.labels.get(v))
    for eid in g.edge_ids():
        a, b = g.endpoints(eid)
        a2 = target if a in uset else a
        b2 = target if b in uset else b
        if a2 == b2:
            continue
        out.add_edge(a2, b2, eid)
    out._next_eid = g._next_eid
    if simplify:
        out, _ = out.simplified()
    return out, len(uset) - 1


# ----------------------------------------------------------------------
# minor mappings
# ----------------------------------------------------------------------

@dataclass
class MinorMapping:
    """Branch-set map witnessing ``minor`` inside a host graph."""

    minor: Graph
    branch_sets: Dict[int, FrozenSet[int]]

    def to_json(self) -> dict:
        return {
            "schema_version": 1,
            "minor_vertices": self.minor.vertices(),
            "minor_edges": [[u, v] for _, u, v in self.minor.edges()],
            "branch_sets": {str(k): sorted(v) for k, v in sorted(self.branch_sets.items())},
        }

    @classmethod
    def from_json(cls, obj: dict) -> "MinorMapping":
        minor = Graph.from_edges([tuple(e) for e in obj["minor_edges"]],
                                 vertices=obj["minor_vertices"])
        bs = {int(k): frozenset(v) for k, v in obj["branch_sets"].items()}
        return cls(minor=minor, branch_sets=bs)


def verify_minor_mapping(g: Graph, m: MinorMapping) -> Tuple[bool, str]:
    """Check disjointness, branch-set connectivity and edge witnesses."""
    if set(m.branch_sets) != set(m.minor.vertices()):
        return False, "branch sets do not match minor vertex set"
    claimed: Set[int] = set()
    for u in sorted(m.branch_sets):
        bs = m.branch_sets[u]
        if not bs:
            return False, f"empty branch set for minor vertex {u}"
        if not bs <= set(g._adj):
            return False, f"branch set of {u} uses vertices outside the host"
        if claimed & bs:
            return False, f"disjointness violated at minor vertex {u}"
        claimed |= bs
        if not g.induced(bs).is_connected():
            return False, f"branch set of {u} is not connected"
    for eid, a, b in m.minor.edges():
        if a == b:
            continue
        sa, sb = m.branch_sets[a], m.branch_sets[b]
        if not any(g.other_end(e2, x) in sb
                   for x in sa for e2 in g._adj[x]):
            return False, f"minor edge ({a},{b}) has no witness edge"
    return True, "ok"


def has_minor(g: Graph, target: Graph) -> bool:
    """Exact minor containment (desk scale): subgraph check + contraction
    branching.  A minor is a subgraph of some contraction, so it suffices to
    test subgraph containment at every node of the contraction tree.

    Intended for small targets (K5, K3,3) in hosts of ~10 vertices.
    """
    g, _ = g.simplified()
    target, _ = target.simplified()
    tn, te = target.num_vertices(), target.num_edges()
    seen: Set[FrozenSet[FrozenSet[int]]] = set()

    def rec(h: Graph) -> bool:
        if h.num_vertices() < tn or h.num_edges() < te:
            return False
        key = frozenset(frozenset(h.endpoints(e)) for e in h.edge_ids())
        if key in seen:
            return False
        seen.add(key)
        if _spanning_subgraph_iso(h, target):
            return True
        if h.num_vertices() == tn:
            return False
        tried: Set[Tuple[int, int]] = set()
        for eid in h.edge_ids():
            u, v = h.endpoints(eid)
            if (u, v) in tried:
                continue
            tried.add((u, v))
            hc, _ = contract_set(h, (u, v), simplify=True)
            if rec(hc):
                return True
        return False

    return rec(g)


def _spanning_subgraph_iso(h: Graph, target: Graph) -> bool:
    """True iff target is a subgraph of h on any |V(target)| vertices of h."""
    import itertools

    tvs = target.vertices()
    tn = len(tvs)
    tadj = {v: set(target.neighbors(v)) for v in tvs}
    hvs = h.vertices()
    if len(hvs) < tn:
        return False
    hdeg = {v: h.degree(v) for v in hvs}
    # order target vertices by descending degree for early pruning
    tvs = sorted(tvs, key=lambda v: -target.degree(v))

    def extend(i: int, assign: Dict[int, int], used: Set[int]) -> bool:
        if i == tn:
            return True
        t = tvs[i]
        for cand in hvs:
            if cand in used or hdeg[cand] < target.degree(t):
                continue
            ok = True
            for t2, h2 in assign.items():
                if t2 in tadj[t] and not h.has_edge(cand, h2):
                    ok = False
                    break
            if ok:
                assign[t] = cand
                used.add(cand)
                if extend(i + 1, assign, used):
                    return True
                del assign[t]
                used.discard(cand)
        return False

    return extend(0, {}, set())


# ----------------------------------------------------------------------
# petals and propellers
# ----------------------------------------------------------------------

def petals_and_propellers(h: Graph, v: int) -> Tuple[List[Graph], bool]:
    """One petal h[C + v] per component C of h - v.

    Returns (petals sorted by smallest vertex, is_cut_vertex).  When v is not
    a cut vertex the single petal is the whole component of v, flagged False.
    """
    rest = h.copy()
    rest.remove_vertex(v)
    comps = [c for c in rest.components()]
    petals = [h.induced(set(c) | {v}) for c in comps]
    petals = [p for p in petals if p.num_edges() > 0 or p.num_vertices() > 1]
    is_cut = len(petals) > 1
    if not petals:
        petals = [h.induced({v})]
    return petals, is_cut
