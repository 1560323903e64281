"""Blocks, block cycles and the distance-between-blocks certificate.

A block ``[a,b,c|d]`` is a pair of triangles [a,b,c] and [b,c,d] sharing
the edge bc, whose outer edges ab and cd both lie on g-gons.  On a g-gon
with g even, two edges are antipodal when they sit g/2 steps apart.  A
block cycle alternates blocks and g-gons, consecutive blocks meeting the
g-gon between them along antipodal edges.

The distance between two blocks is the least number of intermediate
blocks on a path that alternates blocks and triangles, where a triangle
sits between two blocks when it shares an edge with a triangle of each
and belongs to neither.
"""
from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass

from .maps import PolyhedralMap


@dataclass(frozen=True, order=True)
class Block:
    a: int
    b: int
    c: int
    d: int

    def reversed(self) -> Block:
        return Block(self.d, self.c, self.b, self.a)

    def triangles(self) -> tuple[frozenset, frozenset]:
        return frozenset((self.a, self.b, self.c)), frozenset((self.b, self.c, self.d))

    def ports(self) -> tuple[tuple[int, int], tuple[int, int]]:
        return _e(self.a, self.b), _e(self.c, self.d)

    def __str__(self) -> str:
        return f"[{self.a},{self.b},{self.c}|{self.d}]"


def _e(a: int, b: int) -> tuple[int, int]:
    return (a, b) if a < b else (b, a)


class _Faces:
    def __init__(self, m: PolyhedralMap):
        self.m = m
        self.faces = [tuple(f) for f in m.faces]
        self.edge_faces: dict[tuple[int, int], list[int]] = {}
        for i, f in enumerate(self.faces):
            k = len(f)
            for j in range(k):
                self.edge_faces.setdefault(_e(f[j], f[(j + 1) % k]), []).append(i)

    def other(self, e, fi):
        return [g for g in self.edge_faces.get(e, ()) if g != fi]


def blocks(m: PolyhedralMap, g: int) -> list[Block]:
    """All blocks for anchor size g, one per reversal pair.

    For g = 3 there are none: the outer edges would have to lie on
    triangles outside the strip, and the definition is only meant for
    larger anchors.
    """
    if g <= 3:
        return []
    fx = _Faces(m)
    faces = fx.faces
    tri = {i for i, f in enumerate(faces) if len(f) == 3}
    out = set()
    for e, fs in fx.edge_faces.items():
        if len(fs) != 2 or not all(i in tri for i in fs):
            continue
        t1, t2 = faces[fs[0]], faces[fs[1]]
        (apex1,) = set(t1) - set(e)
        (apex2,) = set(t2) - set(e)
        for b, c in (e, e[::-1]):
            for a, d, ta, td in ((apex1, apex2, fs[0], fs[1]), (apex2, apex1, fs[1], fs[0])):
                if not _on_gon(fx, _e(a, b), ta, g) or not _on_gon(fx, _e(c, d), td, g):
                    continue
                blk = Block(a, b, c, d)
                out.add(min(blk, blk.reversed()))
    return sorted(out)


def _on_gon(fx: _Faces, e, fi, g) -> bool:
    return any(len(fx.faces[h]) == g for h in fx.other(e, fi))


def _gon_at(fx: _Faces, e, g) -> int | None:
    for h in fx.edge_faces.get(e, ()):
        if len(fx.faces[h]) == g:
            return h
    return None


def _antipodal(face: tuple[int, ...], e) -> tuple[int, int] | None:
    k = len(face)
    if k % 2:
        return None
    for i in range(k):
        if _e(face[i], face[(i + 1) % k]) == e:
            j = (i + k // 2) % k
            return _e(face[j], face[(j + 1) % k])
    return None


def block_cycles(m: PolyhedralMap, g: int) -> list[list[tuple[Block, int]]]:
    """Cycles B_1 F_1 B_2 F_2 ... of blocks and g-gons, each returned once.

    Every entry is (block, index of the g-gon it leaves through).
    """
    if g % 2:
        return []
    fx = _Faces(m)
    bl = blocks(m, g)
    # port -> blocks using that edge as an outer edge
    by_port: dict[tuple[int, int], list[int]] = {}
    for i, b in enumerate(bl):
        for p in b.ports():
            by_port.setdefault(p, []).append(i)

    def step(i, exit_port):
        """Blocks reached by leaving block i through ``exit_port``."""
        f = _gon_at(fx, exit_port, g)
        if f is None:
            return []
        ap = _antipodal(fx.faces[f], exit_port)
        out = []
        for j in by_port.get(ap, ()):
            if j != i:
                out.append((j, ap, f))
        return out

    cycles: dict[tuple[int, ...], list] = {}
    for start in range(len(bl)):
        for first_exit in bl[start].ports():
            # depth-first walk, entering each block on one outer edge and
            # leaving on the other
            stack = [(start, first_exit, [(start, first_exit)])]
            while stack:
                i, exit_port, path = stack.pop()
                for j, entry, f in step(i, exit_port):
                    pj = bl[j].ports()
                    nxt_exit = pj[1] if pj[0] == entry else pj[0]
                    if j == start:
                        if nxt_exit == first_exit:
                            cycles.setdefault(_cycle_key([k for k, _ in path]), path)
                        continue
                    if any(j == k for k, _ in path):
                        continue
                    stack.append((j, nxt_exit, path + [(j, nxt_exit)]))
    out = []
    for key in sorted(cycles):
        out.append([(bl[i], _gon_at(fx, p, g)) for i, p in cycles[key]])
    return out


def _cycle_key(ids: list[int]) -> tuple[int, ...]:
    k = len(ids)
    best = None
    for seq in (ids, ids[::-1]):
        for r in range(k):
            cand = tuple(seq[r:] + seq[:r])
            if best is None or cand < best:
                best = cand
    return best


def block_distances(m: PolyhedralMap, g: int) -> tuple[list[Block], list[list[int]]]:
    """All-pairs distance between blocks (intermediate block counts; -1 if
    unreachable)."""
    bl = blocks(m, g)
    fx = _Faces(m)
    tri_ids = {frozenset(f): i for i, f in enumerate(fx.faces) if len(f) == 3}
    own = [{tri_ids[t] for t in b.triangles()} for b in bl]
    # triangles adjacent to each block
    touch: dict[int, set[int]] = {}
    for i, b in enumerate(bl):
        for t in own[i]:
            f = fx.faces[t]
            for j in range(3):
                for h in fx.other(_e(f[j], f[(j + 1) % 3]), t):
                    if len(fx.faces[h]) == 3 and h not in own[i]:
                        touch.setdefault(h, set()).add(i)
    adj = [set() for _ in bl]
    for t, bs in touch.items():
        for i in bs:
            adj[i] |= bs - {i}
    dist = []
    for s in range(len(bl)):
        d = [-1] * len(bl)
        d[s] = 0
        q = deque([s])
        while q:
            u = q.popleft()
            for w in adj[u]:
                if d[w] < 0:
                    d[w] = d[u] + 1
                    q.append(w)
        dist.append([x - 1 if x > 0 else x for x in d])
    return bl, dist


def block_certificate(m: PolyhedralMap, g: int) -> tuple:
    """Multiset over block cycles of the multiset of consecutive distances."""
    bl, dist = block_distances(m, g)
    index = {b: i for i, b in enumerate(bl)}
    per_cycle = []
    for cyc in block_cycles(m, g):
        ids = [index[b] for b, _ in cyc]
        k = len(ids)
        vals = sorted(dist[ids[i]][ids[(i + 1) % k]] for i in range(k))
        per_cycle.append(tuple(vals))
    return tuple(sorted(per_cycle))


def certificate_counter(cert: tuple) -> Counter:
    return Counter(cert)
