"""Exhaustive generation of semi-equivelar maps of a fixed type.

The search grows a partial map one face at a time.  At every step it
picks an open slot (an edge at an incomplete vertex that lies in only one
face) and tries every face that can sit on the other side of it.  Vertices
of a new face are existing incomplete vertices or the next unused label;
unused labels are interchangeable, so only one of them is ever tried.

Each vertex keeps its faces as chains in its link.  A chain must read as
a window of the cyclic type, all chains at a vertex must fit into the type
at once, and a closed chain must be the whole type.  Two faces may meet
only in a vertex or an edge.  Completed maps are deduplicated by their
canonical certificate.

In anchored mode, used when the largest face size occurs exactly once
around each vertex, all faces of that size are placed first as disjoint
anchors.  Anchors that nothing touches yet are interchangeable, and an
anchor touched only at its first vertex can still be reflected; the
search uses both facts to skip equivalent choices.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator

from .maps import PolyhedralMap, semi_equivelar_type, euler_characteristic
from .symmetry import canonical_code, oriented_class_count
from .typearith import VertexType, as_type, face_vector, vertex_count


class BudgetExhausted(RuntimeError):
    """The node budget ran out; ``partial`` holds the maps found so far."""

    def __init__(self, nodes: int, partial: list[PolyhedralMap]):
        super().__init__(f"node budget exhausted after {nodes} extension steps "
                         f"({len(partial)} maps found so far); result is incomplete")
        self.nodes = nodes
        self.partial = partial


class ClassifyError(ValueError):
    pass


@dataclass
class ClassifyOptions:
    mode: str = "auto"  # auto | generic | anchored
    budget: int = 10**8
    shuffle_seed: int | None = None


@dataclass
class ClassifyResult:
    type: VertexType
    chi: int
    n: int
    mode: str
    maps: list[PolyhedralMap]
    nodes: int
    leaves: int = 0
    certificates: list[tuple] = field(default_factory=list)

    def oriented_count(self) -> int:
        """Count up to orientation-preserving isomorphism: chiral maps
        contribute their two mirror images separately."""
        return sum(oriented_class_count(m) for m in self.maps)


def _edge(a: int, b: int) -> tuple[int, int]:
    return (a, b) if a < b else (b, a)


@lru_cache(maxsize=None)
def _chains_fit(cyc: tuple[int, ...], chains: tuple[tuple[int, ...], ...]) -> bool:
    """Can the chains be laid on the cyclic sequence ``cyc`` disjointly,
    each forwards or backwards, with at least one free slot between two?"""
    d = len(cyc)
    if len(chains) == 1:
        if len(chains[0]) > d - 1:
            return False
    elif sum(map(len, chains)) + len(chains) > d:
        return False
    used = [False] * d

    def place(i: int) -> bool:
        if i == len(chains):
            return True
        c = chains[i]
        k = len(c)
        for orient in (c, c[::-1]):
            for start in range(d):
                ok = True
                for j in range(-1 if len(chains) > 1 else 0, k + (1 if len(chains) > 1 else 0)):
                    p = (start + j) % d
                    if 0 <= j < k:
                        if used[p] or cyc[p] != orient[j]:
                            ok = False
                            break
                    elif used[p]:
                        ok = False
                        break
                if not ok:
                    continue
                for j in range(k):
                    used[(start + j) % d] = True
                if place(i + 1):
                    return True
                for j in range(k):
                    used[(start + j) % d] = False
        return False

    return place(0)


class _Search:
    def __init__(self, t: VertexType, n: int, fv: dict[int, int], opts: ClassifyOptions, anchored: bool):
        self.t = t
        self.cyc = t.sizes
        self.d = t.degree
        self.sizes = sorted(set(t.sizes))
        self.n = n
        self.fv = fv
        self.opts = opts
        self.rng = random.Random(opts.shuffle_seed) if opts.shuffle_seed is not None else None
        self.faces: list[tuple[int, ...] | None] = []
        self.at: list[list[tuple[int, int, int, int]]] = [[] for _ in range(n)]  # (p, q, size, fid)
        self.edges: dict[tuple[int, int], list[int]] = {}
        self.complete = [False] * n
        self.nv = 0
        self.count = {s: 0 for s in fv}
        self.nodes = 0
        self.leaves = 0
        self.found: dict[tuple, PolyhedralMap] = {}
        self.anchored = anchored
        self.anchor_of: list[tuple[int, int] | None] = [None] * n
        self.anchor_size = 0
        self.touch = [0] * n  # non-anchor faces at each vertex
        self.n_anchors = 0
        fits = {}
        cyc = canonical_rotations(self.cyc)
        self._cycles = cyc

        def fit(chains):
            key = tuple(sorted(chains))
            r = fits.get(key)
            if r is None:
                r = _chains_fit(self.cyc, key)
                fits[key] = r
            return r

        self.fit = fit

    # partial map bookkeeping

    def add_face(self, f: tuple[int, ...]) -> None:
        fid = len(self.faces)
        self.faces.append(f)
        s = len(f)
        self.count[s] += 1
        for i, v in enumerate(f):
            p, q = f[i - 1], f[(i + 1) % s]
            self.at[v].append((p, q, s, fid))
            if not self.is_anchor_face(f):
                self.touch[v] += 1
        for i in range(s):
            self.edges.setdefault(_edge(f[i], f[(i + 1) % s]), []).append(fid)
        for v in f:
            self.complete[v] = len(self.at[v]) == self.d and self._closed(v)

    def pop_face(self) -> None:
        f = self.faces.pop()
        s = len(f)
        self.count[s] -= 1
        for v in f:
            self.at[v].pop()
            if not self.is_anchor_face(f):
                self.touch[v] -= 1
            self.complete[v] = False
        for i in range(s):
            e = _edge(f[i], f[(i + 1) % s])
            lst = self.edges[e]
            lst.pop()
            if not lst:
                del self.edges[e]

    def is_anchor_face(self, f) -> bool:
        return self.anchored and len(f) == self.anchor_size and self.anchor_of[f[0]] is not None \
            and all(self.anchor_of[v] is not None and self.anchor_of[v][0] == self.anchor_of[f[0]][0] for v in f)

    def _closed(self, v: int) -> bool:
        deg: dict[int, int] = {}
        for p, q, _, _ in self.at[v]:
            deg[p] = deg.get(p, 0) + 1
            deg[q] = deg.get(q, 0) + 1
        return all(x == 2 for x in deg.values())

    # local feasibility

    def vertex_ok(self, v: int, extra: tuple[int, int, int] | None) -> bool:
        """Chains at v (plus an optional extra face (p, q, size)) fit the type."""
        items = [(p, q, s) for p, q, s, _ in self.at[v]]
        if extra is not None:
            items.append(extra)
        if len(items) > self.d:
            return False
        adj: dict[int, list[int]] = {}
        for i, (p, q, _) in enumerate(items):
            if p == q:
                return False
            adj.setdefault(p, []).append(i)
            adj.setdefault(q, []).append(i)
        for lst in adj.values():
            if len(lst) > 2:
                return False
        seen = [False] * len(items)
        chains = []
        for node, lst in adj.items():
            if len(lst) != 1 or seen[lst[0]]:
                continue
            seq = []
            cur_face = lst[0]
            cur_node = node
            while True:
                seen[cur_face] = True
                p, q, s = items[cur_face]
                seq.append(s)
                nxt_node = q if p == cur_node else p
                nxt = [i for i in adj[nxt_node] if i != cur_face]
                if not nxt:
                    break
                cur_face, cur_node = nxt[0], nxt_node
            seq = tuple(seq)
            chains.append(min(seq, seq[::-1]))
        if not all(seen):
            # a closed cycle is present
            if chains or len(items) != self.d:
                return False
            return self._cycle_is_type(items, adj)
        return self.fit(chains)

    def _cycle_is_type(self, items, adj) -> bool:
        start = 0
        p, q, s = items[start]
        seq = [s]
        cur_face, cur_node = start, q
        while True:
            nxt = [i for i in adj[cur_node] if i != cur_face][0]
            if nxt == start:
                break
            pp, qq, ss = items[nxt]
            seq.append(ss)
            cur_node = qq if pp == cur_node else pp
            cur_face = nxt
        return tuple(seq) in self._cycles

    def vertex_ok_open(self, v: int, p: int, s: int, forced: int | None) -> bool:
        """A face of size s along v-p may be added at v, its other edge at v
        going to ``forced``, to a new neighbour, or to an open chain end."""
        if forced is not None:
            return self.vertex_ok(v, (p, forced, s))
        if self.vertex_ok(v, (p, -2, s)):
            return True
        return any(self.vertex_ok(v, (p, e, s)) for e in self.open_slots(v) if e != p)

    def forced_other_end(self, v: int, via: int) -> int | None:
        """If the next face at v across edge v-via must close v's cycle,
        the neighbour it closes onto."""
        at = self.at[v]
        if len(at) != self.d - 1:
            return None
        deg: dict[int, int] = {}
        for p, q, _, _ in at:
            deg[p] = deg.get(p, 0) + 1
            deg[q] = deg.get(q, 0) + 1
        ends = [x for x, c in deg.items() if c == 1]
        if len(ends) == 2 and via in ends:
            return ends[0] if ends[1] == via else ends[1]
        return None

    # slot selection

    def open_slots(self, v: int) -> list[int]:
        deg: dict[int, int] = {}
        for p, q, _, _ in self.at[v]:
            deg[p] = deg.get(p, 0) + 1
            deg[q] = deg.get(q, 0) + 1
        return sorted(x for x, c in deg.items() if c == 1)

    def pick_slot(self) -> tuple[int, int] | None:
        best = None
        for v in range(self.nv):
            if self.complete[v]:
                continue
            k = len(self.at[v])
            if k == 0:
                continue
            key = (-k, v)
            if best is None or key < best[0]:
                best = (key, v)
        if best is None:
            return None
        v = best[1]
        slots = self.open_slots(v)
        # prefer a slot whose far end is also nearly complete
        a = max(slots, key=lambda x: (len(self.at[x]), -x))
        return v, a

    def sizes_for_slot(self, v: int, a: int) -> list[int]:
        out = []
        fv = self.forced_other_end(v, a)
        fa = self.forced_other_end(a, v)
        for s in self.sizes:
            if self.count[s] >= self.fv[s]:
                continue
            if not self.vertex_ok_open(v, a, s, fv):
                continue
            if not self.vertex_ok_open(a, v, s, fa):
                continue
            out.append(s)
        return out

    # face enumeration

    def candidates(self, face: list[int]) -> list[int]:
        """Vertices that may come next in the partial face."""
        inface = set(face)
        out = []
        for x in range(self.nv):
            if not self.complete[x] and x not in inface:
                out.append(x)
        if self.nv < self.n:
            out.append(self.nv)
        return out

    def poly_ok(self, face: list[int], s: int, x: int) -> bool:
        """Adding x at the end of the partial face keeps every intersection
        with an existing face empty, a vertex, or a shared edge."""
        pos = len(face)
        if x >= self.nv:
            return True
        fpos = {v: i for i, v in enumerate(face)}
        for p, q, gs, fid in self.at[x]:
            g = self.faces[fid]
            common = [v for v in g if v in fpos]
            if not common:
                continue
            if len(common) >= 2:
                return False
            y = common[0]
            # x and y share face g: they must be adjacent on g and on the new face
            if y not in (p, q):
                return False
            i = fpos[y]
            if not (i == pos - 1 or (i == 0 and pos == s - 1)):
                return False
            if len(self.edges.get(_edge(x, y), ())) >= 2:
                return False
        return True

    def anchor_ok(self, face: list[int], x: int) -> bool:
        if not self.anchored:
            return True
        a, pos = self.anchor_of[x]
        g = self.anchor_size
        base = a * g
        touched = [p for p in range(g) if self.touch[base + p] or (base + p) in face]
        if not touched:
            # interchangeable untouched anchors: lowest one, first vertex
            if pos != 0:
                return False
            for b in range(a):
                bb = b * g
                if not any(self.touch[bb + p] or (bb + p) in face for p in range(g)):
                    return False
            return True
        if touched == [0]:
            return pos <= g // 2
        return True

    def face_options(self, v: int, a: int, s: int) -> Iterator[tuple[int, ...]]:
        """All faces [v, a, y1, ..., y_{s-2}] passing the local checks."""
        face = [v, a]
        last = s - 1
        force_first = self.forced_other_end(a, v)
        force_last = self.forced_other_end(v, a)

        def rec(forced):
            i = len(face)
            if i == s:
                yield tuple(face)
                return
            prev = face[-1]
            if forced is not None:
                if i == last and force_last is not None and force_last != forced:
                    return
                cands = [forced]
            elif i == last and force_last is not None:
                cands = [force_last]
            else:
                cands = self.candidates(face)
                if self.rng is not None:
                    self.rng.shuffle(cands)
            for x in cands:
                if x in face or (x < self.nv and self.complete[x]):
                    continue
                if not self.poly_ok(face, s, x):
                    continue
                if x < self.nv and not self.anchor_ok(face, x):
                    continue
                e = _edge(prev, x)
                if len(self.edges.get(e, ())) >= 2:
                    continue
                # the previous vertex now has both of its edges on this face
                if not self.vertex_ok(prev, (face[-2], x, s)):
                    continue
                if i == last:
                    if len(self.edges.get(_edge(x, v), ())) >= 2:
                        continue
                    if x < self.nv and not self.vertex_ok(x, (prev, v, s)):
                        continue
                    if not self.vertex_ok(v, (x, a, s)):
                        continue
                nxt = None
                if i < last and x < self.nv:
                    # x's other edge is unknown unless this face closes x
                    nxt = self.forced_other_end(x, prev)
                    if not self.vertex_ok_open(x, prev, s, nxt):
                        continue
                    if nxt is not None and nxt in face:
                        continue
                fresh = x == self.nv
                face.append(x)
                if fresh:
                    self.nv += 1
                # callers may abandon the generator early; restore state anyway
                try:
                    yield from rec(nxt)
                finally:
                    if fresh:
                        self.nv -= 1
                    face.pop()

        yield from rec(force_first)

    # driver

    def slot_options(self, v: int, a: int, limit: int) -> list[tuple[int, ...]]:
        out: list[tuple[int, ...]] = []
        for s in self.sizes_for_slot(v, a):
            for f in self.face_options(v, a, s):
                out.append(f)
                if len(out) >= limit:
                    return out
        return out

    def choose(self) -> tuple[tuple[int, int], list[tuple[int, ...]]] | None:
        """The open slot with the fewest options (scanning is cut short once
        a slot with at most one option turns up)."""
        verts = [v for v in range(self.nv) if not self.complete[v] and self.at[v]]
        if not verts:
            return None
        verts.sort(key=lambda v: (-len(self.at[v]), v))
        best = None
        seen = set()
        for v in verts:
            for a in self.open_slots(v):
                e = _edge(v, a)
                if e in seen:
                    continue
                seen.add(e)
                limit = self.opts.budget if best is None else len(best[1])
                opts = self.slot_options(v, a, limit)
                if best is None or len(opts) < len(best[1]):
                    best = ((v, a), opts)
                    if len(opts) <= 1:
                        return best
        return best

    def run(self) -> None:
        self.nodes += 1
        if self.nodes > self.opts.budget:
            raise BudgetExhausted(self.nodes, self.sorted_maps())
        pick = self.choose()
        if pick is None:
            self.leaf()
            return
        for f in pick[1]:
            nv_before = self.nv
            self.nv = max(self.nv, max(f) + 1)
            self.add_face(f)
            self.run()
            self.pop_face()
            self.nv = nv_before

    def leaf(self) -> None:
        if self.nv != self.n or not all(self.complete[:self.n]):
            return
        if any(self.count[s] != self.fv[s] for s in self.fv):
            return
        self.leaves += 1
        m = PolyhedralMap([f for f in self.faces])
        code = canonical_code(m)
        if code not in self.found:
            self.found[code] = PolyhedralMap(code)

    def sorted_maps(self) -> list[PolyhedralMap]:
        return [self.found[c] for c in sorted(self.found)]


def canonical_rotations(seq: tuple[int, ...]) -> set[tuple[int, ...]]:
    d = len(seq)
    out = set()
    for s in (seq, seq[::-1]):
        for i in range(d):
            out.add(tuple(s[i:] + s[:i]))
    return out


def anchored_applicable(t: VertexType) -> bool:
    g = max(t.sizes)
    return t.sizes.count(g) == 1 and len(set(t.sizes)) > 1


def classify_type(t, chi: int, opts: ClassifyOptions | None = None) -> ClassifyResult:
    """All polyhedral semi-equivelar maps of type ``t`` with Euler characteristic ``chi``."""
    opts = opts or ClassifyOptions()
    t = as_type(t)
    n = vertex_count(t, chi)
    if n is None:
        raise ClassifyError(f"no vertex count for {t} at chi={chi}")
    fv = face_vector(t, n)
    if fv is None:
        raise ClassifyError(f"face numbers of {t} with {n} vertices are not integral")
    mode = opts.mode
    if mode == "auto":
        mode = "anchored" if anchored_applicable(t) else "generic"
    if mode == "anchored" and not anchored_applicable(t):
        raise ClassifyError(f"anchored mode needs a largest face size occurring once in {t}")
    if mode not in ("generic", "anchored"):
        raise ClassifyError(f"unknown mode {mode!r}")
    search = _Search(t, n, fv, opts, anchored=(mode == "anchored"))
    if mode == "anchored":
        g = max(t.sizes)
        search.anchor_size = g
        search.n_anchors = fv[g]
        for k in range(fv[g]):
            for p in range(g):
                search.anchor_of[k * g + p] = (k, p)
        search.nv = n
        for k in range(fv[g]):
            search.add_face(tuple(range(k * g, (k + 1) * g)))
    else:
        # seed with a face of the rarest size
        s0 = min(fv, key=lambda s: (fv[s], s))
        search.nv = s0
        search.add_face(tuple(range(s0)))
    search.run()
    maps = search.sorted_maps()
    for m in maps:
        if semi_equivelar_type(m) != t or euler_characteristic(m) != chi or m.f0 != n:
            raise AssertionError(f"search produced an invalid map {m.faces}")
    return ClassifyResult(t, chi, n, mode, maps, search.nodes, search.leaves, sorted(search.found))
