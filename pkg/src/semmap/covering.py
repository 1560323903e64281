"""Cyclic covers built by cutting a map open along a cycle.

Cutting along a two-sided non-separating cycle C = (v_1, ..., v_r) splits
every v_i into u_i (kept label) and w_i (fresh label).  Gluing m copies of
the cut piece, B of copy k onto A of copy k+1, gives an m-fold cyclic
cover whose Euler characteristic is m times that of the original map.
"""
from __future__ import annotations

import itertools
from collections import defaultdict, deque
from dataclasses import dataclass, field
from typing import Sequence

from .flags import FlagComplex
from .maps import MapError, PolyhedralMap, face_edges, semi_equivelar_type
from .symmetry import GroupId, VertexPermutation


class CutError(ValueError):
    """The cycle cannot be used as a cutting locus."""


@dataclass(frozen=True)
class CycleSpec:
    vertices: tuple[int, ...]

    def __post_init__(self):
        if len(self.vertices) < 3:
            raise CutError("a cutting cycle needs at least 3 vertices")
        if len(set(self.vertices)) != len(self.vertices):
            raise CutError(f"cycle {self.vertices} repeats a vertex")

    def __len__(self) -> int:
        return len(self.vertices)

    def __iter__(self):
        return iter(self.vertices)

    def canonical(self) -> tuple[int, ...]:
        v = self.vertices
        i = v.index(min(v))
        fw = v[i:] + v[:i]
        bw = (fw[0],) + tuple(reversed(fw[1:]))
        return min(fw, bw)

    def __str__(self) -> str:
        return "(" + ",".join(map(str, self.vertices)) + ")"


def parse_cycle(text: str) -> CycleSpec:
    try:
        return CycleSpec(tuple(int(x) for x in text.replace(" ", "").strip("()").split(",") if x))
    except ValueError as exc:
        raise CutError(f"cannot parse cycle {text!r}: {exc}") from None


def _as_cycle(c) -> CycleSpec:
    return c if isinstance(c, CycleSpec) else CycleSpec(tuple(c))


class BorderedMap:
    """A map with two boundary cycles A and B, aligned index by index."""

    def __init__(self, faces, boundary_a: Sequence[int], boundary_b: Sequence[int]):
        self.faces = tuple(tuple(f) for f in faces)
        self.boundary_a = tuple(boundary_a)
        self.boundary_b = tuple(boundary_b)
        self.labels = tuple(sorted({v for f in self.faces for v in f}))
        self.index = {v: i for i, v in enumerate(self.labels)}
        self._validate()
        self._flags = None

    def _boundary_edges(self):
        out = set()
        for cyc in (self.boundary_a, self.boundary_b):
            r = len(cyc)
            for i in range(r):
                a, b = cyc[i], cyc[(i + 1) % r]
                out.add((min(a, b), max(a, b)))
        return out

    def _validate(self) -> None:
        if len(self.boundary_a) != len(self.boundary_b):
            raise CutError("boundary cycles have different lengths")
        count = defaultdict(int)
        for f in self.faces:
            for e in face_edges(f):
                count[e] += 1
        boundary = self._boundary_edges()
        for e, c in count.items():
            want = 1 if e in boundary else 2
            if c != want:
                raise CutError(f"edge {list(e)} lies in {c} faces, expected {want}")
        missing = boundary - set(count)
        if missing:
            raise CutError(f"boundary edges {sorted(missing)} are not on any face")
        adj = defaultdict(set)
        for a, b in count:
            adj[a].add(b)
            adj[b].add(a)
        start = self.labels[0]
        seen = {start}
        todo = [start]
        while todo:
            u = todo.pop()
            for w in adj[u]:
                if w not in seen:
                    seen.add(w)
                    todo.append(w)
        if len(seen) != len(self.labels):
            raise CutError("cutting separates the map")

    @property
    def f0(self) -> int:
        return len(self.labels)

    @property
    def f1(self) -> int:
        return len({e for f in self.faces for e in face_edges(f)})

    @property
    def f2(self) -> int:
        return len(self.faces)

    @property
    def boundary_edge_count(self) -> int:
        return len(self._boundary_edges())

    def euler_characteristic(self) -> int:
        return self.f0 - self.f1 + self.f2

    def degree(self, v: int) -> int:
        return len({w for f in self.faces if v in f for w in _face_neighbors(f, v)})

    def flags(self) -> FlagComplex:
        if self._flags is None:
            self._flags = FlagComplex([[self.index[v] for v in f] for f in self.faces], len(self.labels))
        return self._flags

    def automorphisms(self) -> list[dict[int, int]]:
        L = self.labels
        return [{L[i]: L[j] for i, j in enumerate(vm)} for vm in self.flags().automorphisms()]


def _face_neighbors(f, v):
    i = f.index(v)
    return f[i - 1], f[(i + 1) % len(f)]


def _fan_split(m: PolyhedralMap, v: int, prev: int, nxt: int):
    """Split the faces at ``v`` into the two arcs cut out by edges v-prev and v-nxt.

    Returns (arc1, arc2) as sets of face indices; arc1 is the arc met first
    when walking the rotation from edge v-prev.
    """
    rot = m._rotation[m.index[v]]
    faces = m.faces
    d = len(rot)
    # shared neighbour between consecutive faces in the rotation
    between = []
    for j in range(d):
        f, g = faces[rot[j]], faces[rot[(j + 1) % d]]
        common = (set(_face_neighbors(f, v)) & set(_face_neighbors(g, v)))
        between.append(common.pop())
    try:
        p = between.index(prev)
        q = between.index(nxt)
    except ValueError:
        raise CutError(f"{v}-{prev} or {v}-{nxt} is not an edge") from None
    arc1 = set()
    j = (p + 1) % d
    while True:
        arc1.add(rot[j])
        if j == q:
            break
        j = (j + 1) % d
    arc2 = set(rot) - arc1
    if not arc1 or not arc2:
        raise CutError(f"cycle does not split the faces at {v}")
    return arc1, arc2


def _sides(m: PolyhedralMap, cycle: CycleSpec) -> dict[int, str]:
    """Side "A" or "B" for every face meeting the cycle."""
    vs = cycle.vertices
    r = len(vs)
    for v in vs:
        if v not in m.index:
            raise CutError(f"{v} is not a vertex of the map")
    edges = set(m.edges)
    for i in range(r):
        a, b = vs[i], vs[(i + 1) % r]
        if (min(a, b), max(a, b)) not in edges:
            raise CutError(f"[{a},{b}] is not an edge of the map")
    arcs = [_fan_split(m, vs[i], vs[i - 1], vs[(i + 1) % r]) for i in range(r)]
    # side A at v_1 is arc1; carry it across each cycle edge
    side_a = [None] * r
    side_a[0] = arcs[0][0]
    for i in range(r):
        j = (i + 1) % r
        a, b = vs[i], vs[j]
        shared = [fi for fi in side_a[i] if a in m.faces[fi] and b in m.faces[fi]
                  and _adjacent(m.faces[fi], a, b)]
        if len(shared) != 1:
            raise CutError(f"cannot carry the side across edge [{a},{b}]")
        fi = shared[0]
        arc1, arc2 = arcs[j]
        nxt = arc1 if fi in arc1 else arc2
        if j == 0:
            if nxt != side_a[0]:
                raise CutError("cycle is one-sided: sides swap after one turn")
        else:
            side_a[j] = nxt
    side_of: dict[int, str] = {}
    for i in range(r):
        arc1, arc2 = arcs[i]
        for fi in arc1 | arc2:
            s = "A" if fi in side_a[i] else "B"
            if side_of.setdefault(fi, s) != s:
                raise CutError(f"face {list(m.faces[fi])} lies on both sides of the cycle")
    return side_of


def cut_along(m: PolyhedralMap, cycle) -> BorderedMap:
    cycle = _as_cycle(cycle)
    vs = cycle.vertices
    side_of = _sides(m, cycle)
    top = max(m.labels) + 1
    w_label = {v: top + i for i, v in enumerate(vs)}
    pos = {v: i for i, v in enumerate(vs)}
    new_faces = []
    for fi, f in enumerate(m.faces):
        if side_of.get(fi) == "B":
            new_faces.append(tuple(w_label[v] if v in pos else v for v in f))
        else:
            new_faces.append(f)
    return BorderedMap(new_faces, vs, tuple(w_label[v] for v in vs))


def _adjacent(f, a, b) -> bool:
    i = f.index(a)
    return b in (f[i - 1], f[(i + 1) % len(f)])


def _simple_cycles(m: PolyhedralMap, max_len: int):
    """Simple cycles of length 3..max_len, each once up to rotation/reflection."""
    adj = {v: m.neighbors(v) for v in m.vertices}
    seen = set()
    for start in m.vertices:
        # cycles whose least vertex is start
        stack = [(start, [start])]
        while stack:
            v, path = stack.pop()
            for w in adj[v]:
                if w == start and len(path) >= 3:
                    c = CycleSpec(tuple(path))
                    key = c.canonical()
                    if key not in seen:
                        seen.add(key)
                        yield CycleSpec(key)
                elif w > start and w not in path and len(path) < max_len:
                    stack.append((w, path + [w]))


def admissible_cycles(m: PolyhedralMap, max_len: int) -> list[CycleSpec]:
    if max_len < 3:
        raise ValueError("max_len must be >= 3")
    out = []
    for c in _simple_cycles(m, max_len):
        try:
            cut_along(m, c)
        except CutError:
            continue
        out.append(c)
    out.sort(key=lambda c: (len(c), c.vertices))
    return out


@dataclass
class CoverReport:
    cover: PolyhedralMap
    m: int
    cycle: CycleSpec
    deck_rotation: VertexPermutation
    predicted_group: GroupId | None = None
    verified_group: GroupId | None = None
    extra: dict = field(default_factory=dict)


def glue_copies(piece: BorderedMap, m: int, index: dict[int, int], n: int) -> list[tuple[int, ...]]:
    """Faces of m copies of ``piece`` with B of copy k glued onto A of copy k+1.

    Copy k of an original vertex with normalised index i gets label i + k*n.
    """
    b_to_a = dict(zip(piece.boundary_b, piece.boundary_a))
    faces = []
    for k in range(m):
        for f in piece.faces:
            g = []
            for v in f:
                if v in b_to_a:
                    g.append(index[b_to_a[v]] + ((k + 1) % m) * n)
                else:
                    g.append(index[v] + k * n)
            faces.append(tuple(g))
    return faces


def build_cover(m: PolyhedralMap, cycle, copies: int, *, predict: bool = True) -> CoverReport:
    if copies < 1:
        raise ValueError("fold count must be >= 1")
    cycle = _as_cycle(cycle)
    piece = cut_along(m, cycle)
    n = m.f0
    faces = glue_copies(piece, copies, m.index, n)
    try:
        cover = PolyhedralMap(faces, name=f"{m.name or 'map'}^{copies} along {cycle}")
    except MapError as exc:
        raise CutError(f"glued complex is not a polyhedral map: {exc}") from None
    shift = [0] * (n * copies)
    for k in range(copies):
        for i in range(n):
            shift[cover.index[i + k * n]] = cover.index[i + ((k + 1) % copies) * n]
    deck = VertexPermutation(tuple(shift), cover.labels)
    report = CoverReport(cover, copies, cycle, deck)
    if predict and copies >= 2:
        report.predicted_group = predict_cover_group(m, cycle, copies)
    return report


def crossing_cochain(m: PolyhedralMap, cycle) -> dict[tuple[int, int], int]:
    """Signed count of crossings of the cycle, on pairs of adjacent faces.

    ``w[(f, g)]`` is +1 when stepping from face f on side A to face g on
    side B across a cycle edge, -1 for the reverse step, 0 otherwise.
    """
    cycle = _as_cycle(cycle)
    side = _sides(m, cycle)
    vs = cycle.vertices
    on_cycle = {(min(a, b), max(a, b)) for a, b in zip(vs, vs[1:] + vs[:1])}
    w = {}
    for e, (f, g) in _dual_edges(m):
        val = 0
        if e in on_cycle:
            val = 1 if side[f] == "A" else -1
        w[(f, g)] = val
        w[(g, f)] = -val
    return w


def _dual_edges(m: PolyhedralMap):
    """(edge in labels, (face, face)) for every edge of the map."""
    for (i, j), fs in sorted(m._edge_faces.items()):
        a, b = m.labels[i], m.labels[j]
        yield (min(a, b), max(a, b)), tuple(fs)


def _is_coboundary(m: PolyhedralMap, eta: dict[tuple[int, int], int]) -> bool:
    pot: dict[int, int] = {}
    adj = defaultdict(list)
    for (f, g) in eta:
        adj[f].append(g)
    for root in range(m.f2):
        if root in pot:
            continue
        pot[root] = 0
        todo = deque([root])
        while todo:
            f = todo.popleft()
            for g in adj[f]:
                want = pot[f] + eta[(f, g)]
                if g not in pot:
                    pot[g] = want
                    todo.append(g)
                elif pot[g] != want:
                    return False
    return True


def side_swap_symmetry(m: PolyhedralMap, cycle) -> VertexPermutation | None:
    """A non-trivial involution of the map that reverses the sides of the cycle.

    The involution need not fix the cycle.  It qualifies when pulling back
    the crossing cochain of the cycle gives minus that cochain up to a
    coboundary, which is exactly when it lifts to every cyclic cover along
    the cycle as a symmetry inverting the deck rotation.
    """
    from .symmetry import automorphism_group

    cycle = _as_cycle(cycle)
    w = crossing_cochain(m, cycle)
    face_id = {frozenset(f): i for i, f in enumerate(m.faces)}
    for g in automorphism_group(m):
        if g.is_identity() or g.order() != 2:
            continue
        gm = g.as_dict()
        img = [face_id[frozenset(gm[v] for v in f)] for f in m.faces]
        eta = {(f, h): w[(img[f], img[h])] + val for (f, h), val in w.items()}
        if _is_coboundary(m, eta):
            return g
    return None


def predict_cover_group(m: PolyhedralMap, cycle, copies: int) -> GroupId:
    if copies < 2:
        raise ValueError("prediction needs at least two copies")
    if side_swap_symmetry(m, cycle) is not None:
        return GroupId("dihedral", 2 * copies, copies)
    return GroupId("cyclic", copies, copies)
