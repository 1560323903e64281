"""Automorphism groups, isomorphism tests and canonical certificates.

An automorphism of a connected polyhedral map is fixed by where it sends
one flag, so the whole group is found by trying every flag with the same
local signature as the base flag and propagating.  Reflections come for
free because flags carry both senses of every face.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from math import gcd
from typing import Sequence

from .flags import FlagComplex
from .maps import PolyhedralMap, orientation


def _flags(m: PolyhedralMap) -> FlagComplex:
    fc = getattr(m, "_flag_complex", None)
    if fc is None:
        fc = FlagComplex(m._nfaces, m.f0)
        m._flag_complex = fc
    return fc


@dataclass(frozen=True)
class VertexPermutation:
    """A bijection on normalised vertex indices, rendered with user labels."""

    images: tuple[int, ...]
    labels: tuple[int, ...]

    def __call__(self, v: int) -> int:
        i = self.labels.index(v)
        return self.labels[self.images[i]]

    def as_dict(self) -> dict[int, int]:
        L = self.labels
        return {L[i]: L[j] for i, j in enumerate(self.images)}

    def compose(self, other: VertexPermutation) -> VertexPermutation:
        """``self`` after ``other``."""
        return VertexPermutation(tuple(self.images[j] for j in other.images), self.labels)

    __mul__ = compose

    def inverse(self) -> VertexPermutation:
        inv = [0] * len(self.images)
        for i, j in enumerate(self.images):
            inv[j] = i
        return VertexPermutation(tuple(inv), self.labels)

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def order(self) -> int:
        o = 1
        for c in self.cycles():
            o = o * len(c) // gcd(o, len(c))
        return o

    def cycles(self, include_fixed: bool = False) -> list[tuple[int, ...]]:
        seen = [False] * len(self.images)
        out = []
        for i in range(len(self.images)):
            if seen[i]:
                continue
            c = []
            j = i
            while not seen[j]:
                seen[j] = True
                c.append(self.labels[j])
                j = self.images[j]
            if len(c) > 1 or include_fixed:
                out.append(tuple(c))
        return out

    def cycle_type(self) -> tuple[int, ...]:
        return tuple(sorted((len(c) for c in self.cycles(include_fixed=True)), reverse=True))

    def __str__(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + ",".join(map(str, c)) + ")" for c in cyc)

    def is_automorphism_of(self, m: PolyhedralMap) -> bool:
        faces = {frozenset(f): f for f in m._nfaces}
        for f in m._nfaces:
            g = [self.images[v] for v in f]
            h = faces.get(frozenset(g))
            if h is None:
                return False
            # cyclic order must be kept as well
            k = len(g)
            pos = {v: i for i, v in enumerate(h)}
            steps = {(pos[g[(i + 1) % k]] - pos[g[i]]) % k for i in range(k)}
            if steps not in ({1}, {k - 1}):
                return False
        return True


def parse_permutation(text: str, labels: Sequence[int]) -> VertexPermutation:
    """Read disjoint-cycle notation such as ``(0,6)(4,10)``."""
    labels = tuple(labels)
    idx = {v: i for i, v in enumerate(labels)}
    images = list(range(len(labels)))
    body = text.replace(" ", "")
    for chunk in body.split(")"):
        chunk = chunk.strip("(")
        if not chunk:
            continue
        cyc = [idx[int(x)] for x in chunk.split(",")]
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            images[a] = b
    if sorted(images) != list(range(len(labels))):
        raise ValueError(f"{text!r} is not a permutation")
    return VertexPermutation(tuple(images), labels)


@dataclass(frozen=True)
class GroupId:
    tag: str  # trivial | cyclic | dihedral | other
    order: int
    m: int | None = None

    def __str__(self) -> str:
        if self.tag == "trivial":
            return "1"
        if self.tag == "cyclic":
            return f"Z{self.m}"
        if self.tag == "dihedral":
            return f"D{self.m}"
        return f"other({self.order})"

    @classmethod
    def parse(cls, text: str) -> GroupId:
        if text == "1":
            return cls("trivial", 1, 1)
        if text[0] == "Z":
            m = int(text[1:])
            return cls("cyclic", m, m)
        if text[0] == "D":
            m = int(text[1:])
            return cls("dihedral", 2 * m, m)
        return cls("other", int(text[text.index("(") + 1:-1]))


class AutGroup:
    """An explicit list of vertex permutations closed under composition."""

    def __init__(self, elements: Sequence[VertexPermutation], labels: Sequence[int]):
        self.labels = tuple(labels)
        self.elements = sorted(elements, key=lambda g: g.images)
        self._set = {g.images for g in self.elements}

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, g: VertexPermutation) -> bool:
        return g.images in self._set

    def identity(self) -> VertexPermutation:
        return VertexPermutation(tuple(range(len(self.labels))), self.labels)

    def is_closed(self) -> bool:
        if self.identity() not in self:
            return False
        for a in self.elements:
            if a.inverse() not in self:
                return False
            for b in self.elements:
                if a.compose(b) not in self:
                    return False
        return True

    def generators(self) -> list[VertexPermutation]:
        """A small generating set, chosen greedily in element order."""
        gens: list[VertexPermutation] = []
        span = {self.identity().images}
        by_order = sorted(self.elements, key=lambda g: (-g.order(), g.images))
        for g in by_order:
            if g.images in span:
                continue
            gens.append(g)
            span = _closure(gens, self.identity())
            if len(span) == self.order:
                break
        return gens


def _closure(gens: Sequence[VertexPermutation], identity: VertexPermutation) -> set[tuple[int, ...]]:
    span = {identity.images}
    frontier = [identity]
    while frontier:
        new = []
        for a in frontier:
            for g in gens:
                b = g.compose(a)
                if b.images not in span:
                    span.add(b.images)
                    new.append(b)
        frontier = new
    return span


def automorphism_group(m: PolyhedralMap) -> AutGroup:
    fc = _flags(m)
    elems = [VertexPermutation(vm, m.labels) for vm in fc.automorphisms()]
    return AutGroup(elems, m.labels)


def identify_group(group: AutGroup) -> GroupId:
    n = group.order
    if n == 1:
        return GroupId("trivial", 1, 1)
    orders = {g.images: g.order() for g in group}
    if any(o == n for o in orders.values()):
        return GroupId("cyclic", n, n)
    if n % 2 == 0:
        half = n // 2
        rotations = [g for g in group if orders[g.images] == half]
        involutions = [g for g in group if orders[g.images] == 2]
        for r in rotations:
            sub = _closure([r], group.identity())
            rinv = r.inverse()
            for s in involutions:
                if s.images in sub:
                    continue
                if s.compose(r).compose(s) == rinv:
                    return GroupId("dihedral", n, half)
    return GroupId("other", n)


def are_isomorphic(a: PolyhedralMap, b: PolyhedralMap) -> dict[int, int] | None:
    """A vertex bijection a -> b carrying faces to faces, or None."""
    if (a.f0, a.f1, a.f2) != (b.f0, b.f1, b.f2):
        return None
    if sorted(len(f) for f in a.faces) != sorted(len(f) for f in b.faces):
        return None
    vm = _flags(a).isomorphism(_flags(b))
    if vm is None:
        return None
    return {a.labels[i]: b.labels[j] for i, j in enumerate(vm)}


def canonical_code(m: PolyhedralMap) -> tuple:
    code = getattr(m, "_canonical_code", None)
    if code is None:
        code = _flags(m).canonical_code()
        m._canonical_code = code
    return code


def canonical_certificate(m: PolyhedralMap) -> bytes:
    return json.dumps(canonical_code(m), separators=(",", ":")).encode()


def canonical_form(m: PolyhedralMap) -> PolyhedralMap:
    """The map relabelled 0..n-1 as in its certificate."""
    return PolyhedralMap(canonical_code(m), name=m.name)


def vertex_orbits(m: PolyhedralMap, group: AutGroup | None = None) -> list[tuple[int, ...]]:
    group = group if group is not None else automorphism_group(m)
    n = m.f0
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in group:
        for i, j in enumerate(g.images):
            a, b = find(i), find(j)
            if a != b:
                parent[max(a, b)] = min(a, b)
    orbits: dict[int, list[int]] = {}
    for i in range(n):
        orbits.setdefault(find(i), []).append(m.labels[i])
    return sorted(tuple(o) for o in orbits.values())


def is_vertex_transitive(m: PolyhedralMap, group: AutGroup | None = None) -> bool:
    return len(vertex_orbits(m, group)) == 1


def preserves_orientation(m: PolyhedralMap, g: VertexPermutation) -> bool | None:
    """Whether automorphism ``g`` keeps a coherent orientation (None when the
    map is non-orientable)."""
    faces = orientation(m)
    if faces is None:
        return None
    by_set = {frozenset(f): f for f in faces}
    f = faces[0]
    image = by_set[frozenset(g(v) for v in f)]
    i = image.index(g(f[0]))
    return image[(i + 1) % len(image)] == g(f[1])


def is_chiral(m: PolyhedralMap, group: AutGroup | None = None) -> bool:
    """Orientable and not isomorphic to its mirror image by any
    orientation-preserving map, i.e. every automorphism keeps orientation."""
    if orientation(m) is None:
        return False
    group = group or automorphism_group(m)
    return all(preserves_orientation(m, g) for g in group)


def oriented_class_count(m: PolyhedralMap) -> int:
    """Classes of oriented maps the unoriented map splits into: 2 for chiral
    maps (the two orientations are not equivalent), else 1."""
    return 2 if is_chiral(m) else 1
