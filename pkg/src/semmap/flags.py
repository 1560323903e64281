"""Flags of a 2-complex given by faces on normalised vertices 0..n-1.

A flag is a (vertex, edge, face) triple; it is stored as an index into
parallel arrays.  The three involutions change exactly one component:

    s0  other end of the edge
    s1  other edge of the face at the vertex
    s2  other face on the edge (-1 on a boundary edge)

In a connected polyhedral complex an incidence-preserving bijection is
determined by the image of a single flag, which is what both the
automorphism search and the canonical form below rely on.
"""
from __future__ import annotations

from collections import defaultdict
from typing import Sequence

import numpy as np


class FlagComplex:
    def __init__(self, faces: Sequence[Sequence[int]], nverts: int):
        self.faces = [tuple(f) for f in faces]
        self.nverts = nverts
        key: dict[tuple[int, int, int], int] = {}
        vert, nbr, face = [], [], []
        for fi, f in enumerate(self.faces):
            k = len(f)
            for i in range(k):
                for w in (f[(i + 1) % k], f[i - 1]):
                    key[(f[i], w, fi)] = len(vert)
                    vert.append(f[i])
                    nbr.append(w)
                    face.append(fi)
        edge_faces: dict[tuple[int, int], list[int]] = defaultdict(list)
        for fi, f in enumerate(self.faces):
            k = len(f)
            for i in range(k):
                a, b = f[i], f[(i + 1) % k]
                edge_faces[(min(a, b), max(a, b))].append(fi)
        self.edge_faces = edge_faces
        nf = len(vert)
        s0 = [0] * nf
        s1 = [0] * nf
        s2 = [-1] * nf
        for x in range(nf):
            v, w, fi = vert[x], nbr[x], face[x]
            s0[x] = key[(w, v, fi)]
            f = self.faces[fi]
            i = f.index(v)
            k = len(f)
            a, b = f[(i + 1) % k], f[i - 1]
            s1[x] = key[(v, b if w == a else a, fi)]
            others = [g for g in edge_faces[(min(v, w), max(v, w))] if g != fi]
            if others:
                s2[x] = key[(v, w, others[0])]
        self.vert, self.nbr, self.face = vert, nbr, face
        self.s0, self.s1, self.s2 = s0, s1, s2
        self.key = key
        deg = [0] * nverts
        for (a, b) in edge_faces:
            deg[a] += 1
            deg[b] += 1
        self.deg = deg

    def __len__(self) -> int:
        return len(self.vert)

    def flag_signature(self, x: int) -> tuple:
        """Isomorphism-invariant local data of a flag."""
        y = self.s2[x]
        return (
            len(self.faces[self.face[x]]),
            self.deg[self.vert[x]],
            self.deg[self.nbr[x]],
            len(self.faces[self.face[y]]) if y >= 0 else 0,
        )

    def propagate(self, other: FlagComplex, x0: int, y0: int) -> list[int] | None:
        """Extend x0 -> y0 to an isomorphism self -> other.

        Returns the vertex map (list indexed by self's vertices) or None if
        the forced extension is inconsistent.
        """
        fmap = [-1] * len(self.vert)
        vmap = [-1] * self.nverts
        used = [False] * other.nverts
        fmap[x0] = y0
        vmap[self.vert[x0]] = other.vert[y0]
        used[other.vert[y0]] = True
        stack = [x0]
        A = (self.s0, self.s1, self.s2)
        B = (other.s0, other.s1, other.s2)
        sv, ov = self.vert, other.vert
        while stack:
            x = stack.pop()
            y = fmap[x]
            for sa, sb in zip(A, B):
                xn = sa[x]
                yn = sb[y]
                if xn < 0 or yn < 0:
                    if xn != yn:
                        return None
                    continue
                cur = fmap[xn]
                if cur >= 0:
                    if cur != yn:
                        return None
                    continue
                fmap[xn] = yn
                a, b = sv[xn], ov[yn]
                if vmap[a] < 0:
                    if used[b]:
                        return None
                    vmap[a] = b
                    used[b] = True
                elif vmap[a] != b:
                    return None
                stack.append(xn)
        if any(v < 0 for v in vmap):
            return None
        return vmap

    def base_flag(self) -> int:
        """Lexicographically least (vertex, neighbour, face) triple."""
        return min(range(len(self.vert)), key=lambda x: (self.vert[x], self.nbr[x], self.face[x]))

    def automorphisms(self) -> list[tuple[int, ...]]:
        """All incidence-preserving vertex bijections, sorted."""
        x0 = self.base_flag()
        sig = self.flag_signature(x0)
        out = set()
        for y in range(len(self.vert)):
            if self.flag_signature(y) != sig:
                continue
            vm = self.propagate(self, x0, y)
            if vm is not None:
                out.add(tuple(vm))
        return sorted(out)

    def isomorphism(self, other: FlagComplex) -> list[int] | None:
        if len(self.vert) != len(other.vert) or self.nverts != other.nverts:
            return None
        x0 = self.base_flag()
        sig = self.flag_signature(x0)
        for y in range(len(other.vert)):
            if other.flag_signature(y) != sig:
                continue
            vm = self.propagate(other, x0, y)
            if vm is not None:
                return vm
        return None

    def _code_from(self, x0: int) -> tuple:
        """Face list relabelled by first visit in a breadth-first flag walk."""
        label = [-1] * self.nverts
        seen = bytearray(len(self.vert))
        seen[x0] = 1
        queue = [x0]
        nxt = 0
        ops = (self.s0, self.s1, self.s2)
        vert = self.vert
        i = 0
        while i < len(queue):
            x = queue[i]
            i += 1
            v = vert[x]
            if label[v] < 0:
                label[v] = nxt
                nxt += 1
            for s in ops:
                y = s[x]
                if y >= 0 and not seen[y]:
                    seen[y] = 1
                    queue.append(y)
        code = []
        for f in self.faces:
            g = [label[v] for v in f]
            k = len(g)
            j = g.index(min(g))
            fw = tuple(g[j:] + g[:j])
            bw = (fw[0],) + tuple(reversed(fw[1:]))
            code.append(min(fw, bw))
        code.sort()
        return tuple(code)

    def best_start(self) -> int:
        """A start flag whose traversal string is lexicographically least.

        The traversal string lists, for each flag in breadth-first order,
        the discovery numbers of its three neighbours.  It determines the
        complex together with the start flag, so all minimising starts
        are images of one another under automorphisms.  Every candidate
        start is walked at once, one queue position per step, and starts
        that fall behind the current minimum are dropped.  Once the
        survivors stop changing and are all automorphic to the first, the
        rest of the walk cannot separate them and is skipped.
        """
        nf = len(self.vert)
        sigs = [self.flag_signature(x) for x in range(nf)]
        best_sig = min(sigs)
        starts = np.array([x for x in range(nf) if sigs[x] == best_sig], dtype=np.int64)
        closed = min(self.s2) >= 0
        ops = np.array([self.s0, self.s1, self.s2], dtype=np.int64)
        k = len(starts)
        num = np.full((k, nf), -1, dtype=np.int64)
        queue = np.zeros((k, nf), dtype=np.int64)
        rows = np.arange(k)
        num[rows, starts] = 0
        queue[:, 0] = starts
        tail = np.ones(k, dtype=np.int64)
        weight = np.array([(nf + 1) ** 2, nf + 1, 1], dtype=np.int64)[:, None]
        stable = 0
        checked = False
        for t in range(nf):
            if k == 1:
                break
            # the three neighbours of a flag are distinct flags, so their
            # discovery numbers can be handed out together, in operator order
            y = ops[:, queue[:, t]]
            if not closed:
                ok = y >= 0
                y = np.where(ok, y, 0)
            seen = num[rows, y]
            new = seen < 0
            if not closed:
                new &= ok
            if new.any():
                assigned = tail + np.cumsum(new, axis=0) - new
                r = np.broadcast_to(rows, y.shape)[new]
                num[r, y[new]] = assigned[new]
                queue[r, assigned[new]] = y[new]
                tail = tail + new.sum(axis=0)
                seen = np.where(new, assigned, seen)
            if not closed:
                seen = np.where(ok, seen, -1)
            key = ((seen + 1) * weight).sum(axis=0)
            keep = key == key.min()
            if not keep.all():
                starts, num, queue, tail = starts[keep], num[keep], queue[keep], tail[keep]
                k = len(starts)
                rows = np.arange(k)
                stable = 0
                checked = False
                continue
            stable += 1
            if stable >= 16 and not checked:
                checked = True
                x0 = int(starts[0])
                if all(self.propagate(self, x0, int(y)) is not None for y in starts[1:]):
                    break
        return int(starts[0])

    def canonical_code(self) -> tuple:
        return self._code_from(self.best_start())
