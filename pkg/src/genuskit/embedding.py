"""Combinatorial surface embeddings: rotation systems with edge signatures.

An edge-end is the pair ``(eid, end)`` with ``end`` in {0, 1}; end 0 sits at
the first stored endpoint of the edge, end 1 at the second.  A rotation
system assigns every vertex the cyclic sequence of its edge-ends plus a sign
in {+1, -1} per edge.  Faces are traced as orbits of the standard next-step
permutation on (edge-end, sense) states; orbits come in mirror pairs, one
face per pair, so the face walks consume each edge side exactly once and
sum to 2|E| steps.

All surgery operations are pure: they return new embeddings.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

from .graph import Graph

EdgeEnd = Tuple[int, int]          # (edge id, end index)
State = Tuple[int, int, int]       # (edge id, arrived end, sense)


class EmbeddingError(ValueError):
    pass


@dataclass
class RotationSystem:
    """Per-vertex cyclic edge-end order plus per-edge signature."""

    rotation: Dict[int, Tuple[EdgeEnd, ...]]
    signature: Dict[int, int]

    def copy(self) -> "RotationSystem":
        return RotationSystem(rotation=dict(self.rotation),
                              signature=dict(self.signature))


@dataclass(frozen=True)
class Face:
    """A closed face walk.

    ``steps`` lists (eid, arrived end, sense) triples in traversal order;
    ``key`` is the lexicographically least rotation over the walk and its
    mirror, so face identity is stable across re-traces.  Isolated vertices
    carry a trivial face with an empty walk.
    """

    key: Tuple
    steps: Tuple[State, ...]
    vertices: Tuple[int, ...]
    corners: Tuple[Tuple[int, int], ...]

    def __len__(self) -> int:
        return len(self.steps)


def _end_vertex(g: Graph, end: EdgeEnd) -> int:
    return g.endpoints(end[0])[end[1]]


def _mirror(st: State, signature: Dict[int, int]) -> State:
    e, i, s = st
    return (e, 1 - i, -s * signature[e])


def trace_faces(g: Graph, rot: RotationSystem) -> List[Face]:
    """Face walks of the embedding; deterministic starting-side ordering."""
    _check_rotation(g, rot)
    pos: Dict[EdgeEnd, Tuple[int, int]] = {}
    for v in sorted(rot.rotation):
        for p, ex in enumerate(rot.rotation[v]):
            pos[ex] = (v, p)

    def next_state(st: State) -> Tuple[State, Tuple[int, int]]:
        e, i, s = st
        v, p = pos[(e, i)]
        d = len(rot.rotation[v])
        p2 = (p + s) % d
        corner = p if s == 1 else (p2 % d)
        e2, i2 = rot.rotation[v][p2]
        return (e2, 1 - i2, s * rot.signature[e2]), (v, corner)

    states: List[State] = []
    for e in g.edge_ids():
        for i in (0, 1):
            for s in (1, -1):
                states.append((e, i, s))

    visited: Set[State] = set()
    faces: List[Face] = []
    for start in states:
        if start in visited:
            continue
        orbit: List[State] = []
        corners: List[Tuple[int, int]] = []
        cur = start
        while cur not in visited:
            visited.add(cur)
            orbit.append(cur)
            nxt, corner = next_state(cur)
            corners.append(corner)
            cur = nxt
        for st in orbit:
            visited.add(_mirror(st, rot.signature))
        verts = tuple(_end_vertex(g, (e, i)) for (e, i, _s) in orbit)
        mirror_seq = [_mirror(st, rot.signature) for st in reversed(orbit)]
        key = ("walk",) + min(_min_rotation(tuple(orbit)),
                              _min_rotation(tuple(mirror_seq)))
        faces.append(Face(key=key, steps=tuple(orbit), vertices=verts,
                          corners=tuple(corners)))

    for v in g.vertices():
        if not rot.rotation.get(v):
            faces.append(Face(key=("isolated", v), steps=(),
                              vertices=(v,), corners=((v, 0),)))
    faces.sort(key=lambda f: f.key)
    return faces


def _min_rotation(seq: Tuple) -> Tuple:
    if not seq:
        return seq
    return min(tuple(seq[i:] + seq[:i]) for i in range(len(seq)))


def _check_rotation(g: Graph, rot: RotationSystem) -> None:
    if set(rot.rotation) != set(g.vertices()):
        raise EmbeddingError("rotation vertex set does not match the graph")
    want: Set[EdgeEnd] = set()
    for e in g.edge_ids():
        want.add((e, 0))
        want.add((e, 1))
    got: List[EdgeEnd] = []
    for v, ends in rot.rotation.items():
        for ex in ends:
            got.append(ex)
            if ex not in want:
                raise EmbeddingError(f"unknown edge-end {ex} at vertex {v}")
            if _end_vertex(g, ex) != v:
                raise EmbeddingError(f"edge-end {ex} listed at wrong vertex {v}")
    if len(got) != len(set(got)):
        raise EmbeddingError("duplicated edge-end in rotations")
    if set(got) != want:
        missing = sorted(want - set(got))
        raise EmbeddingError(f"missing edge-end(s): {missing[:4]}")
    for e in g.edge_ids():
        if rot.signature.get(e) not in (1, -1):
            raise EmbeddingError(f"edge {e} has no +-1/-1 signature")


@dataclass
class SurfaceEmbedding:
    """A graph together with a rotation system and derived face data."""

    graph: Graph
    rotations: RotationSystem
    _faces: Optional[List[Face]] = field(default=None, repr=False)

    def copy(self) -> "SurfaceEmbedding":
        return SurfaceEmbedding(self.graph.copy(), self.rotations.copy())

    def faces(self) -> List[Face]:
        if self._faces is None:
            self._faces = trace_faces(self.graph, self.rotations)
        return self._faces

    def invalidate(self) -> None:
        self._faces = None

    # -- genus -----------------------------------------------------------

    def genus_by_component(self) -> List[Tuple[Tuple[int, ...], int]]:
        comps = self.graph.components()
        comp_of: Dict[int, int] = {}
        for i, c in enumerate(comps):
            for v in c:
                comp_of[v] = i
        counts = [[len(c), 0, 0] for c in comps]  # V, E, F
        for _eid, u, _v in self.graph.edges():
            counts[comp_of[u]][1] += 1
        for f in self.faces():
            counts[comp_of[f.vertices[0]]][2] += 1
        out = []
        for c, (nv, ne, nf) in zip(comps, counts):
            out.append((tuple(c), 2 - (nv - ne + nf)))
        return out

    def euler_genus(self) -> int:
        """Euler genus 2 - V + E - F; requires a connected graph."""
        if not self.graph.is_connected():
            raise EmbeddingError("euler_genus requires a connected graph; "
                                 "use genus_by_component")
        return 2 - self.graph.num_vertices() + self.graph.num_edges() - len(self.faces())

    def total_genus(self) -> int:
        """Sum of per-component Euler genera (genus of the disjoint union)."""
        return sum(eg for _c, eg in self.genus_by_component())

    def orientable(self) -> bool:
        """True iff the signature normalizes to all-+ (per component)."""
        sig = self.rotations.signature
        sigma: Dict[int, int] = {}
        for comp in self.graph.components():
            root = comp[0]
            sigma[root] = 1
            stack = [root]
            while stack:
                x = stack.pop()
                for eid in self.graph.incident(x):
                    if self.graph.is_loop(eid):
                        if sig[eid] == -1:
                            return False
                        continue
                    y = self.graph.other_end(eid, x)
                    want = sigma[x] * sig[eid]
                    if y not in sigma:
                        sigma[y] = want
                        stack.append(y)
                    elif sigma[y] != want:
                        return False
        return True

    # -- lookup helpers ---------------------------------------------------

    def face_of_corner(self) -> Dict[Tuple[int, int], int]:
        """Map (vertex, corner index) -> face index; every corner has one."""
        out: Dict[Tuple[int, int], int] = {}
        for i, f in enumerate(self.faces()):
            for c in f.corners:
                out[c] = i
        return out

    def faces_at_vertex(self, v: int) -> List[int]:
        return sorted({i for i, f in enumerate(self.faces()) if v in f.vertices})

    def face_by_key(self, key: Tuple) -> Optional[int]:
        for i, f in enumerate(self.faces()):
            if f.key == key:
                return i
        return None

    # -- serialization ----------------------------------------------------

    def to_json(self) -> dict:
        return {
            "schema_version": 1,
            "vertices": [
                {"id": v, "rotation": [[e, i] for (e, i) in self.rotations.rotation[v]]}
                for v in self.graph.vertices()
            ],
            "signatures": {str(e): self.rotations.signature[e]
                           for e in self.graph.edge_ids()},
        }

    @classmethod
    def from_json(cls, g: Graph, obj: dict) -> "SurfaceEmbedding":
        rotation = {rec["id"]: tuple((int(e), int(i)) for e, i in rec["rotation"])
                    for rec in obj["vertices"]}
        signature = {int(k): int(v) for k, v in obj["signatures"].items()}
        return cls(g, RotationSystem(rotation=rotation, signature=signature))


def euler_genus_of(e: SurfaceEmbedding) -> int:
    return e.euler_genus()


# ----------------------------------------------------------------------
# validation
# ----------------------------------------------------------------------

@dataclass
class VerifyReport:
    ok: bool
    message: str
    genus: Optional[int] = None
    orientable: Optional[bool] = None
    face_count: Optional[int] = None


def verify_embedding(g: Graph, rot: RotationSystem) -> VerifyReport:
    """Check rotation invariants and face closure; never raises."""
    try:
        emb = SurfaceEmbedding(g, rot)
        faces = emb.faces()
    except EmbeddingError as exc:
        return VerifyReport(ok=False, message=str(exc))
    walk_total = sum(len(f) for f in faces)
    if walk_total != 2 * g.num_edges():
        return VerifyReport(ok=False,
                            message=f"face walks cover {walk_total} sides, "
                                    f"expected {2 * g.num_edges()}")
    breakdown = emb.genus_by_component()
    for comp, eg in breakdown:
        if eg < 0:
            return VerifyReport(ok=False,
                                message=f"negative genus {eg} on component {comp[:4]}")
    total = sum(eg for _c, eg in breakdown)
    orient = emb.orientable()
    if orient and any(eg % 2 for _c, eg in breakdown):
        return VerifyReport(ok=False,
                            message="orientable embedding with odd Euler genus")
    return VerifyReport(ok=True, message="ok", genus=total,
                        orientable=orient, face_count=len(faces))


# ----------------------------------------------------------------------
# signature normalization
# ----------------------------------------------------------------------

def normalize_signatures(emb: SurfaceEmbedding) -> SurfaceEmbedding:
    """Flip vertices so every spanning-tree edge carries +1."""
    g = emb.graph
    sig = dict(emb.rotations.signature)
    sigma: Dict[int, int] = {}
    for comp in g.components():
        root = comp[0]
        sigma[root] = 1
        stack = [root]
        seen = {root}
        while stack:
            x = stack.pop()
            for eid in g.incident(x):
                if g.is_loop(eid):
                    continue
                y = g.other_end(eid, x)
                if y not in seen:
                    seen.add(y)
                    sigma[y] = sigma[x] * sig[eid]
                    stack.append(y)
    out = emb.copy()
    flipped = {v for v, s in sigma.items() if s == -1}
    rot = dict(out.rotations.rotation)
    for v in flipped:
        rot[v] = tuple(reversed(rot[v]))
    for e in g.edge_ids():
        u, w = g.endpoints(e)
        if u == w:
            continue
        s = sig[e]
        if (u in flipped) != (w in flipped):
            s = -s
        sig[e] = s
    out.rotations = RotationSystem(rotation=rot, signature=sig)
    out.invalidate()
    return out


# ----------------------------------------------------------------------
# surgery primitives (all pure)
# ----------------------------------------------------------------------

def _insert_end(rotation: Dict[int, Tuple[EdgeEnd, ...]], v: int,
                corner: int, end: EdgeEnd) -> None:
    ends = list(rotation.get(v, ()))
    if not ends:
        rotation[v] = (end,)
        return
    corner %= len(ends)
    rotation[v] = tuple(ends[:corner + 1] + [end] + ends[corner + 1:])


def insert_isolated_vertex(emb: SurfaceEmbedding, v: int) -> SurfaceEmbedding:
    out = emb.copy()
    out.graph.add_vertex(v)
    out.rotations.rotation[v] = ()
    out.invalidate()
    return out


def insert_edge_at(emb: SurfaceEmbedding, u: int, v: int,
                   corner_u: int, corner_v: int,
                   eid: Optional[int] = None, sign: int = 1) -> Tuple[SurfaceEmbedding, int]:
    """Insert an edge with explicit corners; returns (embedding, edge id)."""
    out = emb.copy()
    eid = out.graph.add_edge(u, v, eid)
    rot = dict(out.rotations.rotation)
    _insert_end(rot, u, corner_u, (eid, 0))
    if u == v:
        _insert_end(rot, v, corner_v + 1, (eid, 1))
    else:
        _insert_end(rot, v, corner_v, (eid, 1))
    out.rotations = RotationSystem(rotation=rot,
                                   signature={**out.rotations.signature, eid: sign})
    out.invalidate()
    return out, eid


def corners_by_face(emb: SurfaceEmbedding, v: int) -> Dict[int, List[int]]:
    """face index -> sorted corner positions of v on that face."""
    out: Dict[int, List[int]] = {}
    for (w, p), fi in emb.face_of_corner().items():
        if w == v:
            out.setdefault(fi, []).append(p)
    for fi in out:
        out[fi].sort()
    return out


def add_edge_min(emb: SurfaceEmbedding, u: int, v: int,
                 eid: Optional[int] = None) -> Tuple[SurfaceEmbedding, int, int]:
    """Insert edge u-v at genus-minimal corners.

    Cost is 0 when u and v share a face (or lie in different components),
    else 2.  Returns (embedding, eid, genus delta).
    """
    before = emb.total_genus()
    cu = corners_by_face(emb, u)
    cv = corners_by_face(emb, v)
    common = sorted(set(cu) & set(cv))
    if u == v:
        # self-loop inside one face
        fi = min(cu)
        out, e2 = insert_edge_at(emb, u, v, cu[fi][0], cu[fi][0], eid)
        return out, e2, out.total_genus() - before
    if common:
        fi = common[0]
        out, e2 = insert_edge_at(emb, u, v, cu[fi][0], cv[fi][0], eid)
        delta = out.total_genus() - before
        return out, e2, delta
    out, e2 = insert_edge_at(emb, u, v, cu[min(cu)][0] if cu else 0,
                             cv[min(cv)][0] if cv else 0, eid)
    return out, e2, out.total_genus() - before


def delete_edge(emb: SurfaceEmbedding, eid: int) -> SurfaceEmbedding:
    out = emb.copy()
    rot = dict(out.rotations.rotation)
    for v in set(out.graph.endpoints(eid)):
        rot[v] = tuple(ex for ex in rot[v] if ex[0] != eid)
    sig = dict(out.rotations.signature)
    sig.pop(eid, None)
    out.graph.remove_edge(eid)
    out.rotations = RotationSystem(rotation=rot, signature=sig)
    out.invalidate()
    return out


def delete_vertex(emb: SurfaceEmbedding, v: int) -> SurfaceEmbedding:
    out = emb
    for eid in list(emb.graph.incident(v)):
        out = delete_edge(out, eid)
    g = out.graph.copy()
    g.remove_vertex(v)
    rot = dict(out.rotations.rotation)
    rot.pop(v, None)
    return SurfaceEmbedding(g, RotationSystem(rotation=rot,
                                              signature=dict(out.rotations.signature)))


def _flip_vertex(rot: Dict[int, Tuple[EdgeEnd, ...]], sig: Dict[int, int],
                 g: Graph, v: int) -> None:
    rot[v] = tuple(reversed(rot[v]))
    for eid in g.incident(v):
        if not g.is_loop(eid):
            sig[eid] = -sig[eid]


def merge_vertices(emb: SurfaceEmbedding, keep: int, gone: int,
                   rename_to: Optional[int] = None) -> Tuple[SurfaceEmbedding, int]:
    """Identify ``gone`` into ``keep`` at genus-minimal corners.

    Merging across components is free; within a component the cost is 0 when
    the two vertices share a face (possibly after flipping ``gone``), else 2.
    Returns (embedding, genus delta).
    """
    before = emb.total_genus()
    comp_of: Dict[int, int] = {}
    for i, c in enumerate(emb.graph.components()):
        for v in c:
            comp_of[v] = i
    candidates: List[Tuple[int, int, bool]] = []
    if comp_of.get(keep) != comp_of.get(gone):
        candidates.append((0, 0, False))
    else:
        ck = corners_by_face(emb, keep)
        cg = corners_by_face(emb, gone)
        for fi in sorted(set(ck) & set(cg)):
            candidates.append((ck[fi][0], cg[fi][0], False))
            candidates.append((ck[fi][0], cg[fi][0], True))
        candidates.append((0, 0, False))
        candidates.append((0, 0, True))

    best: Optional[Tuple[int, SurfaceEmbedding]] = None
    for corner_k, corner_g, flip in candidates:
        out = _merge_at(emb, keep, gone, corner_k, corner_g, flip)
        delta = out.total_genus() - before
        if best is None or delta < best[0]:
            best = (delta, out)
        if best[0] <= 0:
            break
    assert best is not None
    delta, out = best
    if rename_to is not None and rename_to != keep:
        out = rename_vertex(out, keep, rename_to)
    return out, delta


def _merge_at(emb: SurfaceEmbedding, keep: int, gone: int,
              corner_k: int, corner_g: int, flip: bool) -> SurfaceEmbedding:
    out = emb.copy()
    rot = dict(out.rotations.rotation)
    sig = dict(out.rotations.signature)
    if flip:
        _flip_vertex(rot, sig, out.graph, gone)
    rk = list(rot[keep])
    rg = list(rot[gone])
    if rg:
        cg = corner_g % len(rg)
        spliced = rg[cg + 1:] + rg[:cg + 1]
    else:
        spliced = []
    if rk:
        ck = corner_k % len(rk)
        merged = tuple(rk[:ck + 1] + spliced + rk[ck + 1:])
    else:
        merged = tuple(spliced)
    rot[keep] = merged
    del rot[gone]
    g = Graph()
    for v in out.graph.vertices():
        if v != gone:
            g.add_vertex(v, out.graph.labels.get(v))
    for eid in out.graph.edge_ids():
        a, b = out.graph.endpoints(eid)
        a2 = keep if a == gone else a
        b2 = keep if b == gone else b
        g.add_edge(a2, b2, eid)
    g._next_eid = out.graph._next_eid
    return SurfaceEmbedding(g, RotationSystem(rotation=rot, signature=sig))


def rename_vertex(emb: SurfaceEmbedding, old: int, new: int) -> SurfaceEmbedding:
    if old == new:
        return emb
    if emb.graph.has_vertex(new):
        raise EmbeddingError(f"cannot rename {old} -> {new}: id in use")
    g = emb.graph.relabeled({old: new})
    rot = {(new if v == old else v): ends
           for v, ends in emb.rotations.rotation.items()}
    return SurfaceEmbedding(g, RotationSystem(rotation=rot,
                                              signature=dict(emb.rotations.signature)))


def disjoint_union(embs: Sequence[SurfaceEmbedding]) -> SurfaceEmbedding:
    """Union of embeddings with disjoint vertex ids.

    Vertex collisions are errors; colliding edge ids are remapped to fresh
    ids (rotations follow).
    """
    g = Graph()
    rot: Dict[int, Tuple[EdgeEnd, ...]] = {}
    sig: Dict[int, int] = {}
    for emb in embs:
        remap: Dict[int, int] = {}
        for v in emb.graph.vertices():
            if g.has_vertex(v):
                raise EmbeddingError(f"disjoint_union: duplicate vertex {v}")
            g.add_vertex(v, emb.graph.labels.get(v))
        for eid, u, v in emb.graph.edges():
            new = g.add_edge(u, v, None if eid in g._edges else eid)
            if new != eid:
                remap[eid] = new
        for v in emb.graph.vertices():
            ends = emb.rotations.rotation[v]
            rot[v] = tuple((remap.get(e, e), i) for (e, i) in ends)
        for e, s in emb.rotations.signature.items():
            sig[remap.get(e, e)] = s
    return SurfaceEmbedding(g, RotationSystem(rotation=rot, signature=sig))


# ----------------------------------------------------------------------
# handles and cylinders
# ----------------------------------------------------------------------

@dataclass
class SurgeryResult:
    embedding: SurfaceEmbedding
    declared_delta: int
    derived_delta: int


def add_handle_for_edges(emb: SurfaceEmbedding, edges: Sequence[Tuple[int, int]],
                         faces: Tuple[int, int],
                         eids: Optional[Sequence[Optional[int]]] = None) -> SurgeryResult:
    """Route edges through one new handle between two faces.

    Every routed edge must have one endpoint on each chosen face walk.  The
    surface gains one handle, so the declared genus increment is exactly 2
    regardless of the number of routed edges; the derived (face-traced)
    increment is at most 2 and is reported alongside.
    """
    if not edges:
        return SurgeryResult(emb, 0, 0)
    f1, f2 = faces
    face_list = emb.faces()
    if not (0 <= f1 < len(face_list) and 0 <= f2 < len(face_list)):
        raise EmbeddingError("attachment face id invalid")
    before = emb.total_genus()
    v1 = set(face_list[f1].vertices)
    v2 = set(face_list[f2].vertices)
    oriented: List[Tuple[int, int]] = []
    for a, b in edges:
        if a in v1 and b in v2:
            oriented.append((a, b))
        elif b in v1 and a in v2:
            oriented.append((b, a))
        else:
            raise EmbeddingError(f"edge endpoint not on chosen faces: ({a},{b})")
    if eids is None:
        eids = [None] * len(oriented)
    out = emb
    first_a, first_b = oriented[0]
    ca = corners_by_face(out, first_a)[f1][0]
    cb = corners_by_face(out, first_b)[f2][0]
    out, _ = insert_edge_at(out, first_a, first_b, ca, cb, eids[0])
    for (a, b), eid in zip(oriented[1:], list(eids)[1:]):
        out, _, _ = add_edge_min(out, a, b, eid)
    derived = out.total_genus() - before
    return SurgeryResult(out, 2, derived)


def add_cylinder(e1: SurfaceEmbedding, e2: Optional[SurfaceEmbedding],
                 attach: Tuple[int, int],
                 edges: Sequence[Tuple[int, int]],
                 eids: Optional[Sequence[Optional[int]]] = None) -> SurgeryResult:
    """Join two embeddings (or two faces of one) by a cylinder carrying edges.

    With ``e2`` given, the cylinder connects a puncture in a face of ``e1``
    to one in a face of ``e2``; declared cost is 1 (two punctures, one tube).
    With ``e2`` None both faces are in ``e1`` and the cylinder is a handle
    (declared cost 2).  Crossing edges run through the tube.
    """
    if e2 is not None:
        base = disjoint_union([e1, e2])
        offset = len(e1.faces())
        f1, f2 = attach[0], attach[1] + offset
        declared = 1
    else:
        base = e1
        f1, f2 = attach
        declared = 2
    face_list = base.faces()
    if not (0 <= f1 < len(face_list) and 0 <= f2 < len(face_list)):
        raise EmbeddingError("attachment face id invalid")
    before = base.total_genus()
    out = base
    if edges:
        res = add_handle_for_edges(base, edges, (f1, f2), eids)
        out = res.embedding
    derived = out.total_genus() - before
    return SurgeryResult(out, declared, derived)


def insert_star_in_face(emb: SurfaceEmbedding, center: int,
                        targets: Sequence[int], face: int,
                        eids: Optional[Sequence[Optional[int]]] = None
                        ) -> Tuple[SurfaceEmbedding, List[int]]:
    """Insert a new vertex inside a face with edges to vertices on its walk.

    Planar insertion: the face splits into wedges and the total genus is
    unchanged (asserted by re-trace).
    """
    face_list = emb.faces()
    fwalk = face_list[face]
    on_face = set(fwalk.vertices)
    for t in targets:
        if t not in on_face:
            raise EmbeddingError(f"star target {t} not on chosen face")
    before = emb.total_genus()
    out = insert_isolated_vertex(emb, center) if not emb.graph.has_vertex(center) \
        else emb.copy()
    if eids is None:
        eids = [None] * len(targets)
    new_ids: List[int] = []
    for t, eid in zip(targets, eids):
        out, e2, _ = add_edge_min(out, center, t, eid)
        new_ids.append(e2)
    after = out.total_genus()
    if after != before:
        raise EmbeddingError(f"star insertion changed genus by {after - before}")
    return out, new_ids
