"""Vertex types and the arithmetic of semi-equivelar types.

A vertex type is the cyclic sequence of face sizes met while walking
around a vertex.  Two sequences describe the same type when they differ
by a rotation or a reflection; :func:`canonical_type` picks the
lexicographically least representative.

Everything that decides admissibility is done over :class:`fractions.Fraction`
so that integrality tests are exact.
"""
from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Sequence


class TypeError_(ValueError):
    """Raised for malformed vertex types or type strings."""


@dataclass(frozen=True, order=True)
class VertexType:
    """A canonical cyclic sequence of face sizes around a vertex."""

    sizes: tuple[int, ...]

    def __post_init__(self):
        if len(self.sizes) < 3:
            raise TypeError_(f"a vertex type needs degree >= 3, got {self.sizes}")
        if any(s < 3 for s in self.sizes):
            raise TypeError_(f"face sizes must be >= 3, got {self.sizes}")

    @property
    def degree(self) -> int:
        return len(self.sizes)

    @property
    def runs(self) -> tuple[tuple[int, int], ...]:
        """Cyclic run-length form as ``((p1, n1), ..., (pk, nk))``."""
        return run_length(self.sizes)

    @property
    def multiplicities(self) -> dict[int, int]:
        """The pairs (q_i, m_i): how often each size occurs around a vertex."""
        return dict(sorted(Counter(self.sizes).items()))

    @property
    def link_length(self) -> int:
        """Number of vertices on the link cycle: sum of (s - 2)."""
        return sum(s - 2 for s in self.sizes)

    def __str__(self) -> str:
        return format_runs(self.runs)

    def __repr__(self) -> str:
        return f"VertexType({self})"


def _dihedral_images(seq: Sequence[int]) -> Iterator[tuple[int, ...]]:
    d = len(seq)
    rev = tuple(reversed(seq))
    for i in range(d):
        yield tuple(seq[i:]) + tuple(seq[:i])
        yield rev[i:] + rev[:i]


def canonical_sequence(seq: Sequence[int]) -> tuple[int, ...]:
    """Lexicographically least rotation/reflection of ``seq``."""
    return min(_dihedral_images(tuple(seq)))


def canonical_type(sizes: Iterable[int]) -> VertexType:
    sizes = tuple(int(s) for s in sizes)
    if len(sizes) < 3:
        raise TypeError_(f"a vertex type needs degree >= 3, got {sizes}")
    if any(s < 3 for s in sizes):
        raise TypeError_(f"face sizes must be >= 3, got {sizes}")
    return VertexType(canonical_sequence(sizes))


def run_length(seq: Sequence[int]) -> tuple[tuple[int, int], ...]:
    """Cyclic run-length encoding.

    The sequence is rotated so that no run wraps around the end; the
    starting run is the one beginning earliest in ``seq``.
    """
    seq = tuple(seq)
    d = len(seq)
    if len(set(seq)) == 1:
        return ((seq[0], d),)
    start = 0
    while seq[start] == seq[start - 1]:
        start += 1
    rotated = seq[start:] + seq[:start]
    runs: list[list[int]] = []
    for s in rotated:
        if runs and runs[-1][0] == s:
            runs[-1][1] += 1
        else:
            runs.append([s, 1])
    return tuple((p, n) for p, n in runs)


def format_runs(runs: Sequence[tuple[int, int]]) -> str:
    return "[" + ",".join(f"{p}^{n}" for p, n in runs) + "]"


_TOKEN = re.compile(r"^(\d+)(?:\^(\d+))?$")


def parse_type(text: str) -> VertexType:
    """Parse ``[3^4,10]``-style strings (``^1`` may be omitted)."""
    body = text.strip().lower()
    if body.startswith("[") and body.endswith("]"):
        body = body[1:-1]
    body = re.sub(r"\s+", "", body)
    if not body:
        raise TypeError_(f"empty type string {text!r}")
    sizes: list[int] = []
    for tok in body.split(","):
        m = _TOKEN.match(tok)
        if not m:
            raise TypeError_(f"cannot parse {tok!r} in type {text!r}")
        p, n = int(m.group(1)), int(m.group(2) or 1)
        if n < 1:
            raise TypeError_(f"exponent must be positive in {text!r}")
        sizes.extend([p] * n)
    return canonical_type(sizes)


def as_type(t: VertexType | str | Sequence[int]) -> VertexType:
    if isinstance(t, VertexType):
        return t
    if isinstance(t, str):
        return parse_type(t)
    return canonical_type(t)


# ---------------------------------------------------------------------------
# Euler arithmetic


def euler_denominator(t: VertexType) -> Fraction:
    """chi / n for a semi-equivelar map of type ``t``: 1 - d/2 + sum 1/s."""
    return 1 - Fraction(t.degree, 2) + sum(Fraction(1, s) for s in t.sizes)


def vertex_count(t: VertexType | str, chi: int) -> int | None:
    """The vertex count forced by the Euler relation, or None.

    None means the relation has no positive integral solution (spherical,
    flat or non-integral cases).
    """
    t = as_type(t)
    den = euler_denominator(t)
    if den == 0:
        return None
    n = Fraction(chi) / den
    if n <= 0 or n.denominator != 1:
        return None
    return int(n)


def face_vector(t: VertexType | str, n: int) -> dict[int, int] | None:
    """Number of faces of each size, x_s = n * (occurrences of s) / s."""
    t = as_type(t)
    out = {}
    for s, m in t.multiplicities.items():
        x = Fraction(n * m, s)
        if x.denominator != 1:
            return None
        out[s] = int(x)
    return out


def chi_of(t: VertexType, n: int) -> Fraction:
    """f0 - f1 + f2 recomputed from the type and the vertex count."""
    f1 = Fraction(t.degree * n, 2)
    f2 = n * sum(Fraction(1, s) for s in t.sizes)
    return n - f1 + f2


# ---------------------------------------------------------------------------
# Local filters


def prop31_check(t: VertexType | str) -> str | None:
    """Return 'i', 'ii' or 'iii' for the first cyclic-run condition that rules
    the type out, or None when none applies."""
    runs = as_type(t).runs
    k = len(runs)
    sizes = [p for p, _ in runs]
    for i, (p, n) in enumerate(runs):
        unique = sizes.count(p) == 1
        if n == 2 and p % 2 == 1 and unique:
            return "i"
    for i, (p, n) in enumerate(runs):
        unique = sizes.count(p) == 1
        if n == 1 and p % 2 == 1 and unique and k > 1:
            if sizes[(i - 1) % k] != sizes[(i + 1) % k]:
                return "ii"
    if k == 4:
        for r in range(4):
            (p, a), (q, _), (p2, b), (s, _) = runs[r:] + runs[:r]
            if p == p2 and a == 1 and b == 1 and len({p, q, s}) == 3 and p % 2 == 1:
                return "iii"
    return None


def patch_bound_size(t: VertexType) -> int | None:
    """Vertex lower bound 4q - 6 for types of the form (3,q,3,q), else None."""
    s = t.sizes
    if len(s) == 4 and s[0] == 3 and s[2] == 3 and s[1] == s[3] and s[1] > 3:
        return 4 * s[1] - 6
    return None


def local_obstructions(t: VertexType | str, n: int, *, patch: bool = True) -> str | None:
    """Counting obstructions read off the closed star of a vertex.

    ``link_bound``: the closed star has more than ``n`` vertices.
    ``completeness_bound``: the closed star has exactly ``n`` vertices, so
    the edge graph would have to be complete, but the degree is not n - 1.
    ``patch_bound``: (3,q,3,q) needs at least 4q - 6 vertices.
    """
    t = as_type(t)
    star = 1 + t.link_length
    if star > n:
        return "link_bound"
    if star == n and t.degree != n - 1:
        return "completeness_bound"
    if patch:
        bound = patch_bound_size(t)
        if bound is not None and bound > n:
            return "patch_bound"
    return None


# Types that the census drops although no counting filter above applies.
STATIC_EXCLUSIONS = frozenset({canonical_type((3, 3, 4, 3, 3, 4))})


# ---------------------------------------------------------------------------
# Enumeration


@dataclass(frozen=True)
class EnumerationParams:
    chi: int
    min_vertices: int = 12
    min_face_count: int = 3
    apply_paper_exclusions: bool = True
    apply_patch_bound: bool = False

    def __post_init__(self):
        if self.chi >= 0:
            raise ValueError("enumeration is only defined for chi < 0")
        if self.min_vertices < 1 or self.min_face_count < 1:
            raise ValueError("floors must be >= 1")

    @property
    def max_degree(self) -> int:
        # (d - 6) * min_vertices <= -6 chi
        return 6 + (-6 * self.chi) // self.min_vertices


@dataclass(frozen=True, order=True)
class TypeCensusEntry:
    n: int | None
    type: VertexType
    face_vector: dict[int, int] | None = field(default=None, compare=False)
    rejection: str | None = field(default=None, compare=False)

    @property
    def accepted(self) -> bool:
        return self.rejection is None

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "type": str(self.type),
            "sizes": list(self.type.sizes),
            "face_vector": {str(k): v for k, v in (self.face_vector or {}).items()},
            "rejection": self.rejection,
        }


def _multisets(d: int, params: EnumerationParams, track: list[int] | None = None):
    """Non-decreasing size sequences of length ``d`` that can still give a
    positive vertex count above the floor with every x_s above its floor.

    For a prefix with deficit D_pre = d/2 - 1 - sum(1/s) and t free slots
    (each >= the next value s), the final deficit D lies in
    [D_pre - t/s, D_pre).  n = |chi| / D must be >= min_vertices, and the
    largest size S must satisfy n * d / S >= min_face_count; both give
    finite bounds on s, and both only get worse as s grows.
    """
    abschi = Fraction(-params.chi)
    vfloor = abschi / params.min_vertices
    fc = params.min_face_count

    def rec(prefix: list[int], dpre: Fraction):
        k = len(prefix)
        if k == d:
            if dpre > 0:
                yield tuple(prefix)
            return
        t = d - k
        s = prefix[-1] if prefix else 3
        limit = (t + d * abschi / fc) / dpre
        if track is not None:
            track.append(int(limit))
        while s <= limit:
            if dpre - Fraction(t, s) > vfloor:
                break
            nxt = dpre - Fraction(1, s)
            if nxt > 0:
                prefix.append(s)
                yield from rec(prefix, nxt)
                prefix.pop()
            s += 1

    start = Fraction(d, 2) - 1
    if start > 0:
        yield from rec([], start)


def size_upper_bound(d: int, params: EnumerationParams) -> int:
    """Largest face size the enumeration at degree ``d`` will ever consider."""
    if d < 3:
        raise ValueError("degree must be >= 3")
    track: list[int] = []
    for _ in _multisets(d, params, track):
        pass
    return max(track, default=2)


def _arrangements(multiset: tuple[int, ...]) -> set[tuple[int, ...]]:
    """All canonical cyclic arrangements of a multiset of sizes."""
    counts = Counter(multiset)
    d = len(multiset)
    first = min(counts)
    out: set[tuple[int, ...]] = set()
    seq = [first]
    counts[first] -= 1

    def rec():
        if len(seq) == d:
            out.add(canonical_sequence(seq))
            return
        for s in sorted(counts):
            if counts[s]:
                counts[s] -= 1
                seq.append(s)
                rec()
                seq.pop()
                counts[s] += 1

    rec()
    return out


def classify_candidate(t: VertexType, params: EnumerationParams) -> TypeCensusEntry:
    """Run every census filter on one type and report the first that fires."""
    n = vertex_count(t, params.chi)
    if n is None:
        return TypeCensusEntry(None, t, None, "spherical/non-integral")
    fv = face_vector(t, n)
    if fv is None:
        return TypeCensusEntry(n, t, None, "spherical/non-integral")
    if n < params.min_vertices:
        return TypeCensusEntry(n, t, fv, "vertex_floor")
    if min(fv.values()) < params.min_face_count:
        return TypeCensusEntry(n, t, fv, "face_count_floor")
    p = prop31_check(t)
    if p is not None:
        return TypeCensusEntry(n, t, fv, f"prop31({p})")
    obs = local_obstructions(t, n, patch=params.apply_patch_bound)
    if obs is not None:
        return TypeCensusEntry(n, t, fv, obs)
    if params.apply_paper_exclusions and t in STATIC_EXCLUSIONS:
        return TypeCensusEntry(n, t, fv, "paper_exclusion")
    return TypeCensusEntry(n, t, fv, None)


def enumerate_types(params: EnumerationParams, *, include_rejected: bool = False) -> list[TypeCensusEntry]:
    """All (n, type) pairs admitted for ``params.chi``, sorted by (n, sizes)."""
    entries = []
    for d in range(3, params.max_degree + 1):
        for ms in _multisets(d, params):
            for seq in _arrangements(ms):
                e = classify_candidate(VertexType(seq), params)
                if e.accepted or include_rejected:
                    entries.append(e)
    entries.sort(key=lambda e: (e.n if e.n is not None else -1, e.type.sizes))
    return entries
