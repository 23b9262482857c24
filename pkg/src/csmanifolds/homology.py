"""Integral simplicial homology through Smith normal form."""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

import numpy as np

from .complex import Complex, is_closed_pseudomanifold, is_connected


def boundary_matrix(c, k):
    """Matrix of the boundary map from k-faces to (k-1)-faces.

    Rows and columns follow the lexicographic order of ``c.faces``.  The
    coefficient of the face obtained by dropping position ``i`` is
    ``(-1)**i``.
    """
    if k < 1 or k > c.dim:
        raise ValueError(f"k must be in 1..{c.dim}")
    rows = c.faces(k - 1)
    cols = c.faces(k)
    index = {f: i for i, f in enumerate(rows)}
    mat = np.zeros((len(rows), len(cols)), dtype=np.int64)
    for j, f in enumerate(cols):
        for i in range(len(f)):
            mat[index[f[:i] + f[i + 1:]], j] = -1 if i % 2 else 1
    return mat


_LIMIT = 1 << 40


def _snf_python(a):
    """Invariant factors with Python integers (no overflow)."""
    a = [list(map(int, row)) for row in a]
    nr = len(a)
    nc = len(a[0]) if nr else 0
    diag = []
    t = 0
    while t < min(nr, nc):
        best = None
        for i in range(t, nr):
            row = a[i]
            for j in range(t, nc):
                x = row[j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        a[t], a[i] = a[i], a[t]
        for row in a:
            row[t], row[j] = row[j], row[t]
        while True:
            p = a[t][t]
            done = True
            for i in range(t + 1, nr):
                if a[i][t]:
                    q = a[i][t] // p
                    if q:
                        ri, rt = a[i], a[t]
                        for j in range(t, nc):
                            ri[j] -= q * rt[j]
                    if a[i][t]:
                        done = False
            rt = a[t]
            for j in range(t + 1, nc):
                if rt[j]:
                    q = rt[j] // p
                    if q:
                        for row in a:
                            row[j] -= q * row[t]
                    if rt[j]:
                        done = False
            if done:
                break
            # move the smallest remaining entry of row/column t to the pivot
            cands = [(abs(a[i][t]), i, t) for i in range(t, nr) if a[i][t]]
            cands += [(abs(a[t][j]), t, j) for j in range(t, nc) if a[t][j]]
            _, i, j = min(cands)
            a[t], a[i] = a[i], a[t]
            for row in a:
                row[t], row[j] = row[j], row[t]
        diag.append(abs(a[t][t]))
        t += 1
    return _divisibility(diag)


def _divisibility(diag):
    # diagonal -> invariant factors d1 | d2 | ...
    d = [x for x in diag if x]
    changed = True
    while changed:
        changed = False
        for i in range(len(d)):
            for j in range(i + 1, len(d)):
                g = gcd(d[i], d[j])
                if g != d[i]:
                    l = d[i] * d[j] // g
                    d[i], d[j] = g, l
                    changed = True
    return tuple(sorted(d))


def _snf_int64(a):
    a = np.array(a, dtype=np.int64, copy=True)
    nr, nc = a.shape
    diag = []
    t = 0
    while t < min(nr, nc):
        sub = np.abs(a[t:, t:])
        nz = sub[sub > 0]
        if nz.size == 0:
            break
        if np.max(sub) > _LIMIT:
            return None
        flat = np.argmin(np.where(sub > 0, sub, np.iinfo(np.int64).max))
        i, j = divmod(int(flat), sub.shape[1])
        i += t
        j += t
        a[[t, i]] = a[[i, t]]
        a[:, [t, j]] = a[:, [j, t]]
        while True:
            p = a[t, t]
            col = a[t + 1:, t]
            q = col // p
            if q.any():
                a[t + 1:, t:] -= np.outer(q, a[t, t:])
            row = a[t, t + 1:]
            q = row // p
            if q.any():
                a[t:, t + 1:] -= np.outer(a[t:, t], q)
            if not a[t + 1:, t].any() and not a[t, t + 1:].any():
                break
            if np.abs(a).max() > _LIMIT:
                return None
            rest_c = np.abs(a[t:, t])
            rest_r = np.abs(a[t, t:])
            ic = np.where(rest_c > 0, rest_c, np.iinfo(np.int64).max)
            ir = np.where(rest_r > 0, rest_r, np.iinfo(np.int64).max)
            if ic.min() <= ir.min():
                i = t + int(np.argmin(ic))
                a[[t, i]] = a[[i, t]]
            else:
                j = t + int(np.argmin(ir))
                a[:, [t, j]] = a[:, [j, t]]
        diag.append(int(abs(a[t, t])))
        t += 1
    return _divisibility(diag)


def smith_normal_form(mat):
    """Invariant factors ``d1 | d2 | ... | dr`` of an integer matrix.

    Elimination pivots on the smallest nonzero absolute value.  The int64
    fast path falls back to exact Python integers when entries grow.
    """
    if isinstance(mat, np.ndarray) and mat.dtype == object:
        return _snf_python(mat.tolist())
    arr = np.asarray(mat)
    if arr.size == 0:
        return ()
    if arr.dtype.kind in "iu" and np.abs(arr).max() < _LIMIT:
        out = _snf_int64(arr)
        if out is not None:
            return out
    return _snf_python(arr.tolist())


@dataclass(frozen=True)
class HomologyGroups:
    """Unreduced integral homology: ``ranks[k]`` and ``torsion[k]``."""

    ranks: tuple
    torsion: tuple

    def __str__(self):
        parts = []
        for r, tor in zip(self.ranks, self.torsion):
            bits = [str(r)] if r or not tor else []
            bits += [f"Z{t}" for t in tor]
            parts.append("+".join(bits))
        return ",".join(parts)

    def tuple_text(self):
        """Text like ``(1, 3+Z2, 0)``."""
        return "(" + str(self).replace(",", ", ") + ")"

    @classmethod
    def parse(cls, text):
        ranks, torsion = [], []
        for part in text.strip().strip("()").split(","):
            r, tor = 0, []
            for bit in part.strip().split("+"):
                bit = bit.strip()
                if bit.startswith("Z"):
                    tor.append(int(bit[1:]))
                else:
                    r = int(bit)
            ranks.append(r)
            torsion.append(tuple(tor))
        return cls(tuple(ranks), tuple(torsion))

    @property
    def reduced_ranks(self):
        """Ranks of reduced homology (H0 lowered by one if nonempty)."""
        if not self.ranks:
            return ()
        return (max(self.ranks[0] - 1, 0),) + self.ranks[1:]

    def euler_characteristic(self):
        return sum((-1) ** k * r for k, r in enumerate(self.ranks))


def _rank_and_factors(c, k):
    if k < 1 or k > c.dim:
        return 0, ()
    d = smith_normal_form(boundary_matrix(c, k))
    return len(d), tuple(x for x in d if x > 1)


def homology(c):
    """Integral homology of ``c`` in every dimension 0..dim."""
    info = [_rank_and_factors(c, k) for k in range(c.dim + 2)]
    ranks = []
    torsion = []
    for k in range(c.dim + 1):
        nk = len(c.faces(k))
        ranks.append(nk - info[k][0] - info[k + 1][0])
        torsion.append(info[k + 1][1])
    return HomologyGroups(tuple(ranks), tuple(torsion))


def is_orientable(c, hom=None):
    """Top homology is Z; requires a connected closed pseudomanifold."""
    if not isinstance(c, Complex) or c.dim < 1:
        raise ValueError("orientability needs a complex of dimension >= 1")
    if not is_closed_pseudomanifold(c) or not is_connected(c):
        raise ValueError("orientability needs a connected closed pseudomanifold")
    h = hom if hom is not None else homology(c)
    return h.ranks[c.dim] == 1 and not h.torsion[c.dim]


__all__ = [
    "boundary_matrix",
    "smith_normal_form",
    "HomologyGroups",
    "homology",
    "is_orientable",
]
