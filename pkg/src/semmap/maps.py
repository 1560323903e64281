"""Polyhedral maps given by their face lists.

A :class:`PolyhedralMap` is immutable.  Vertex labels are arbitrary
non-negative integers; internally they are normalised to ``0..n-1`` in
increasing label order, and every public method speaks user labels.
"""
from __future__ import annotations

import json
from collections import defaultdict, deque
from typing import Iterable, Sequence

from .typearith import VertexType, canonical_type


class MapError(ValueError):
    """A face list violates one of the polyhedral map invariants."""


def _edge(a: int, b: int) -> tuple[int, int]:
    return (a, b) if a < b else (b, a)


def face_edges(face: Sequence[int]):
    k = len(face)
    for i in range(k):
        yield _edge(face[i], face[(i + 1) % k])


def canonical_face(face: Sequence[int]) -> tuple[int, ...]:
    """Least rotation/reflection of a face, used to compare faces as cycles."""
    face = tuple(face)
    k = len(face)
    i = face.index(min(face))
    fwd = face[i:] + face[:i]
    rev = (fwd[0],) + tuple(reversed(fwd[1:]))
    return min(fwd, rev)


def _check_faces(faces: Sequence[Sequence[int]]) -> list[tuple[int, ...]]:
    if not faces:
        raise MapError("empty face list")
    out = []
    for f in faces:
        f = tuple(int(v) for v in f)
        if len(f) < 3:
            raise MapError(f"degenerate face {list(f)}: fewer than 3 vertices")
        if len(set(f)) != len(f):
            raise MapError(f"degenerate face {list(f)}: repeated vertex")
        if any(v < 0 for v in f):
            raise MapError(f"face {list(f)} has a negative vertex label")
        out.append(f)
    return out


def _fan_order(v: int, incident: list[int], faces, edge_faces) -> list[int] | None:
    """Faces around ``v`` in rotation order, or None if they are not one cycle.

    The walk starts at the lowest-indexed incident face and leaves it through
    the edge to its lower-labelled neighbour of ``v``.
    """
    start = min(incident)
    f = faces[start]
    i = f.index(v)
    w = min(f[i - 1], f[(i + 1) % len(f)])
    order = [start]
    cur = start
    while True:
        nxt = [g for g in edge_faces[_edge(v, w)] if g != cur]
        if len(nxt) != 1:
            return None
        cur = nxt[0]
        if cur == start:
            break
        order.append(cur)
        g = faces[cur]
        j = g.index(v)
        a, b = g[j - 1], g[(j + 1) % len(g)]
        w = b if a == w else a
        if len(order) > len(incident):
            return None
    return order if len(order) == len(incident) else None


class PolyhedralMap:
    """A polyhedral map on a closed surface."""

    def __init__(self, faces: Iterable[Sequence[int]], name: str | None = None, *, validate: bool = True):
        faces = _check_faces(list(faces))
        self.name = name
        self.faces: tuple[tuple[int, ...], ...] = tuple(faces)
        self.labels: tuple[int, ...] = tuple(sorted({v for f in faces for v in f}))
        self.index = {v: i for i, v in enumerate(self.labels)}
        # normalised faces
        self._nfaces = tuple(tuple(self.index[v] for v in f) for f in faces)
        edge_faces: dict[tuple[int, int], list[int]] = defaultdict(list)
        vertex_faces: list[list[int]] = [[] for _ in self.labels]
        for fi, f in enumerate(self._nfaces):
            for e in face_edges(f):
                edge_faces[e].append(fi)
            for v in f:
                vertex_faces[v].append(fi)
        self._edge_faces = dict(edge_faces)
        self._vertex_faces = vertex_faces
        if validate:
            self._validate()
        self._rotation = [
            _fan_order(v, vertex_faces[v], self._nfaces, self._edge_faces) for v in range(len(self.labels))
        ]

    # -- validation -------------------------------------------------------

    def _fmt_face(self, fi: int) -> str:
        return "[" + ",".join(map(str, self.faces[fi])) + "]"

    def _validate(self) -> None:
        L = self.labels
        for e, fs in self._edge_faces.items():
            if len(fs) != 2:
                raise MapError(
                    f"edge [{L[e[0]]},{L[e[1]]}] in {len(fs)} face{'s' if len(fs) != 1 else ''}: "
                    + ", ".join(self._fmt_face(f) for f in fs)
                )
        # pairwise face intersections
        sets = [frozenset(f) for f in self._nfaces]
        for v, fs in enumerate(self._vertex_faces):
            for i, a in enumerate(fs):
                for b in fs[i + 1:]:
                    common = sets[a] & sets[b]
                    if len(common) > 2:
                        raise MapError(
                            f"faces {self._fmt_face(a)} and {self._fmt_face(b)} share "
                            f"{len(common)} vertices"
                        )
                    if len(common) == 2:
                        x, y = sorted(common)
                        if b not in self._edge_faces.get((x, y), ()) or a not in self._edge_faces[(x, y)]:
                            raise MapError(
                                f"faces {self._fmt_face(a)} and {self._fmt_face(b)} meet in "
                                f"non-edge {{{L[x]},{L[y]}}}"
                            )
        for v, fs in enumerate(self._vertex_faces):
            if _fan_order(v, fs, self._nfaces, self._edge_faces) is None:
                raise MapError(f"link of vertex {L[v]} is not a single cycle")
        # connectivity of the edge graph
        adj = self._adjacency()
        seen = {0}
        todo = [0]
        while todo:
            u = todo.pop()
            for w in adj[u]:
                if w not in seen:
                    seen.add(w)
                    todo.append(w)
        if len(seen) != len(L):
            missing = sorted(L[v] for v in range(len(L)) if v not in seen)
            raise MapError(f"edge graph is disconnected; unreachable from {L[0]}: {missing[:10]}")

    def _adjacency(self) -> list[set[int]]:
        adj: list[set[int]] = [set() for _ in self.labels]
        for a, b in self._edge_faces:
            adj[a].add(b)
            adj[b].add(a)
        return adj

    # -- counts -------------------------------------------------------------

    @property
    def f0(self) -> int:
        return len(self.labels)

    @property
    def f1(self) -> int:
        return len(self._edge_faces)

    @property
    def f2(self) -> int:
        return len(self.faces)

    @property
    def vertices(self) -> tuple[int, ...]:
        return self.labels

    @property
    def edges(self) -> list[tuple[int, int]]:
        L = self.labels
        return sorted(_edge(L[a], L[b]) for a, b in self._edge_faces)

    def degree(self, v: int) -> int:
        return len(self._vertex_faces[self.index[v]])

    def neighbors(self, v: int) -> list[int]:
        i = self.index[v]
        return sorted(self.labels[w] for w in self._adjacency()[i])

    def faces_at(self, v: int) -> list[tuple[int, ...]]:
        """Faces at ``v`` in rotation order."""
        return [self.faces[fi] for fi in self._rotation[self.index[v]]]

    def face_vector(self) -> dict[int, int]:
        out: dict[int, int] = defaultdict(int)
        for f in self.faces:
            out[len(f)] += 1
        return dict(sorted(out.items()))

    def __len__(self) -> int:
        return self.f0

    def __repr__(self) -> str:
        nm = f" {self.name!r}" if self.name else ""
        return f"<PolyhedralMap{nm}: f=({self.f0},{self.f1},{self.f2})>"

    def __eq__(self, other) -> bool:
        if not isinstance(other, PolyhedralMap):
            return NotImplemented
        return sorted(map(canonical_face, self.faces)) == sorted(map(canonical_face, other.faces))

    def __hash__(self) -> int:
        return hash(tuple(sorted(map(canonical_face, self.faces))))

    # -- derived objects ------------------------------------------------------

    def relabel(self, mapping) -> PolyhedralMap:
        """Apply a vertex relabelling (dict or callable) to every face."""
        get = mapping.__getitem__ if hasattr(mapping, "__getitem__") else mapping
        return PolyhedralMap([[get(v) for v in f] for f in self.faces], name=self.name)

    def mirror(self) -> PolyhedralMap:
        return PolyhedralMap([tuple(reversed(f)) for f in self.faces], name=self.name)

    def text(self) -> str:
        return ",".join("[" + ",".join(map(str, f)) + "]" for f in self.faces)


def from_faces(faces: Iterable[Sequence[int]], name: str | None = None) -> PolyhedralMap:
    return PolyhedralMap(faces, name=name)


def euler_characteristic(m: PolyhedralMap) -> int:
    return m.f0 - m.f1 + m.f2


def face_cycle_sizes(m: PolyhedralMap, v: int) -> tuple[int, ...]:
    """Face sizes around ``v`` in rotation order (not canonicalised)."""
    return tuple(len(f) for f in m.faces_at(v))


def face_cycle_type(m: PolyhedralMap, v: int) -> VertexType:
    return canonical_type(face_cycle_sizes(m, v))


def semi_equivelar_type(m: PolyhedralMap) -> VertexType | None:
    types = {face_cycle_type(m, v) for v in m.vertices}
    return types.pop() if len(types) == 1 else None


def link_cycle(m: PolyhedralMap, v: int) -> tuple[int, ...]:
    """Vertices of the link of ``v`` in rotation order.

    Each face around ``v`` contributes its vertices other than ``v``, read
    from the shared edge with the previous face, excluding the vertex it
    shares with the next face.
    """
    fan = m.faces_at(v)
    if len(fan) == 1:
        raise MapError("a vertex needs at least two faces")
    out: list[int] = []
    prev = set(fan[-1])
    for f in fan:
        k = len(f)
        i = f.index(v)
        a, b = f[(i - 1) % k], f[(i + 1) % k]
        # enter through the neighbour shared with the previous face
        if a in prev:
            path = [f[(i - 1 - j) % k] for j in range(k - 1)]
        else:
            path = [f[(i + 1 + j) % k] for j in range(k - 1)]
        out.extend(path[:-1])
        prev = set(f)
    return tuple(out)


def orientation(m: PolyhedralMap) -> list[tuple[int, ...]] | None:
    """Faces (as label tuples) turned to a coherent orientation, or None if
    the map is non-orientable.  The first face keeps its given order."""
    faces = m._nfaces
    sign = [0] * len(faces)
    sign[0] = 1
    todo = deque([0])

    def directed(fi: int, s: int):
        f = faces[fi] if s > 0 else tuple(reversed(faces[fi]))
        k = len(f)
        return {(f[i], f[(i + 1) % k]) for i in range(k)}

    while todo:
        fi = todo.popleft()
        darts = directed(fi, sign[fi])
        for e in face_edges(faces[fi]):
            (other,) = [g for g in m._edge_faces[e] if g != fi]
            # coherent iff the neighbour runs the shared edge backwards
            a, b = e if e in darts else (e[1], e[0])
            want = -1 if (a, b) in directed(other, 1) else 1
            if sign[other] == 0:
                sign[other] = want
                todo.append(other)
            elif sign[other] != want:
                return None
    lab = m.labels
    return [tuple(lab[v] for v in (f if s > 0 else reversed(f))) for f, s in zip(faces, sign)]


def is_orientable(m: PolyhedralMap) -> bool:
    """Coherent orientation by propagation over the dual graph."""
    return orientation(m) is not None


def handshake_ok(m: PolyhedralMap) -> bool:
    twice = 2 * m.f1
    return twice == sum(len(f) for f in m.faces) == sum(m.degree(v) for v in m.vertices)


# -- JSON codec ---------------------------------------------------------------


def to_dict(m: PolyhedralMap) -> dict:
    d: dict = {}
    if m.name:
        d["name"] = m.name
    d["faces"] = [list(f) for f in m.faces]
    return d


def dumps(m: PolyhedralMap, indent: int | None = None) -> str:
    if indent is None:
        return json.dumps(to_dict(m))
    # one face per line keeps catalog files diffable
    lines = ["{"]
    if m.name:
        lines.append(f'  "name": {json.dumps(m.name)},')
    lines.append('  "faces": [')
    body = [f"    {json.dumps(list(f))}" for f in m.faces]
    lines.append(",\n".join(body))
    lines.append("  ]")
    lines.append("}")
    return "\n".join(lines) + "\n"


def from_dict(doc) -> PolyhedralMap:
    if not isinstance(doc, dict) or "faces" not in doc:
        raise MapError("map document must be an object with a 'faces' array")
    faces = doc["faces"]
    if not isinstance(faces, list) or not all(isinstance(f, list) for f in faces):
        raise MapError("'faces' must be an array of arrays")
    for f in faces:
        for v in f:
            if not isinstance(v, int) or isinstance(v, bool) or v < 0:
                raise MapError(f"vertex labels must be unsigned integers, got {v!r}")
    name = doc.get("name")
    if name is not None and not isinstance(name, str):
        raise MapError("'name' must be a string")
    return PolyhedralMap(faces, name=name)


def loads(text: str) -> PolyhedralMap:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MapError(f"malformed JSON: {exc}") from None
    return from_dict(doc)


def load(path) -> PolyhedralMap:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read())


def dump(m: PolyhedralMap, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(m, indent=2))
