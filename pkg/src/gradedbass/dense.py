"""Independent oracle for Artinian monomial quotients R = k[x]/J.

Uses nothing but the finite monomial basis of R and dense linear algebra:
no Gröbner bases, no syzygy engine, no strand machinery.  Betti numbers
come from building a minimal resolution degree by degree as subspaces of
explicit free modules; Bass numbers of R come from Matlis duality,
mu^n(R) = beta_n(R^v) with R^v = Hom_k(R, k).
"""

from __future__ import annotations

from itertools import product

import numpy as np

from . import linalg
from .field import Field


class MonomialAlgebra:
    """k[x_1..x_n]/J for a monomial ideal J containing a power of every variable."""

    def __init__(self, nvars: int, gens, field: Field | None = None):
        self.n = nvars
        self.field = field or Field()
        self.gens = [tuple(g) for g in gens]
        for i in range(nvars):
            if not any(sum(g) == g[i] and g[i] > 0 for g in self.gens):
                raise ValueError("not Artinian: no pure power of variable %d" % i)
        bound = [min(g[i] for g in self.gens if sum(g) == g[i] and g[i] > 0) for i in range(nvars)]
        mons = [e for e in product(*[range(b) for b in bound]) if self.standard(e)]
        self.top = max(sum(e) for e in mons)
        self.by_degree = {d: sorted(e for e in mons if sum(e) == d) for d in range(self.top + 1)}
        self.index = {d: {e: i for i, e in enumerate(ms)} for d, ms in self.by_degree.items()}
        # mult[d][i][k] = index in degree d+1 of x_i * (k-th monomial of degree d), or -1
        self.mult = {}
        for d, ms in self.by_degree.items():
            tgt = self.index.get(d + 1, {})
            rows = []
            for i in range(nvars):
                rows.append(np.array([tgt.get(e[:i] + (e[i] + 1,) + e[i + 1:], -1) for e in ms], dtype=np.int64))
            self.mult[d] = rows

    def standard(self, e) -> bool:
        return not any(all(a >= b for a, b in zip(e, g)) for g in self.gens)

    def mons(self, d: int):
        return self.by_degree.get(d, [])


class _Graded:
    """Multiplication by a variable is a partial injection on monomial bases,
    described by matched (source, target) index arrays."""

    def _pairs(self, i: int, d: int):
        raise NotImplementedError

    def act(self, i: int, d: int) -> np.ndarray:
        src, tgt = self._pairs(i, d)
        out = linalg.zeros(self.dim(d + 1), self.dim(d), self.R.field)
        out[tgt, src] = 1
        return out

    def apply(self, i: int, d: int, X: np.ndarray) -> np.ndarray:
        """x_i * X for a block of column vectors X in degree d."""
        src, tgt = self._pairs(i, d)
        out = linalg.zeros(self.dim(d + 1), X.shape[1], self.R.field)
        out[tgt] = X[src]
        return out


class FreeDense(_Graded):
    """Graded free R-module with basis pairs (generator, monomial)."""

    def __init__(self, R: MonomialAlgebra, twists):
        self.R = R
        self.twists = list(twists)
        self._act: dict = {}

    def basis(self, d: int):
        return [(j, e) for j, t in enumerate(self.twists) for e in self.R.mons(d - t)]

    def dim(self, d: int) -> int:
        return sum(len(self.R.mons(d - t)) for t in self.twists)

    def _offsets(self, d: int) -> list[int]:
        out, acc = [], 0
        for t in self.twists:
            out.append(acc)
            acc += len(self.R.mons(d - t))
        return out

    def _pairs(self, i: int, d: int):
        key = (i, d)
        if key not in self._act:
            so, to = self._offsets(d), self._offsets(d + 1)
            srcs, tgts = [np.zeros(0, dtype=np.int64)], [np.zeros(0, dtype=np.int64)]
            for j, t in enumerate(self.twists):
                if d - t not in self.R.mult:
                    continue
                img = self.R.mult[d - t][i]
                src = np.flatnonzero(img >= 0)
                srcs.append(so[j] + src)
                tgts.append(to[j] + img[src])
            self._act[key] = (np.concatenate(srcs), np.concatenate(tgts))
        return self._act[key]

    def source_of(self, d: int):
        """For each basis element of F_d of positive degree: (variable i, index of e/x_i in F_{d-1})."""
        prev = {b: k for k, b in enumerate(self.basis(d - 1))}
        out = []
        for j, e in self.basis(d):
            i = next((i for i, a in enumerate(e) if a), None)
            if i is None:
                out.append((None, j))
            else:
                out.append((i, prev[(j, e[:i] + (e[i] - 1,) + e[i + 1:])]))
        return out

    def degrees(self):
        lo = min(self.twists)
        return range(lo, max(self.twists) + self.R.top + 1)


class DualDense(_Graded):
    """R^v = Hom_k(R, k): basis dual monomials e* in degree -|e|,
    x_i e* = (e / x_i)* when x_i divides e, else 0."""

    def __init__(self, R: MonomialAlgebra):
        self.R = R
        self._act: dict = {}

    def basis(self, d: int):
        return self.R.mons(-d)

    def dim(self, d: int) -> int:
        return len(self.R.mons(-d))

    def _pairs(self, i: int, d: int):
        key = (i, d)
        if key not in self._act:
            idx = self.R.index.get(-d - 1, {})
            pairs = [(c, idx[e[:i] + (e[i] - 1,) + e[i + 1:]]) for c, e in enumerate(self.basis(d)) if e[i] > 0]
            self._act[key] = (np.array([a for a, _ in pairs], dtype=np.int64),
                              np.array([b for _, b in pairs], dtype=np.int64))
        return self._act[key]

    def degrees(self):
        return range(-self.R.top, 1)


class ResidueDense(_Graded):
    """k concentrated in degree 0."""

    def __init__(self, R: MonomialAlgebra):
        self.R = R

    def basis(self, d):
        return [()] if d == 0 else []

    def dim(self, d):
        return 1 if d == 0 else 0

    def _pairs(self, i, d):
        return np.zeros(0, dtype=np.int64), np.zeros(0, dtype=np.int64)

    def degrees(self):
        return range(0, 1)


def _span(mats, rows: int, field) -> np.ndarray:
    cols = [m for m in mats if m.shape[1]]
    if not cols:
        return linalg.zeros(rows, 0, field)
    a = np.concatenate(cols, axis=1)
    return a[:, linalg.independent_columns(a, field)]


def _dense_betti(V, length: int) -> list[int]:
    """Betti numbers beta_0..beta_length of the module V (dense data)."""
    R = V.R
    field = R.field
    nv = R.n
    # K_d: basis matrix of the current submodule inside the current ambient
    ambient = V
    K = {d: linalg.identity(V.dim(d), field) for d in V.degrees()}
    out = []
    for _ in range(length + 1):
        degs = sorted(d for d in K if K[d].shape[1])
        if not degs:
            out.append(0)
            continue
        gens = []  # (degree, vector in ambient_d)
        for d in degs:
            mK = _span([ambient.apply(i, d - 1, K[d - 1])
                        for i in range(nv) if d - 1 in K and K[d - 1].shape[1]], ambient.dim(d), field)
            both = np.concatenate([mK, K[d]], axis=1)
            piv = linalg.independent_columns(both, field)
            for c in piv:
                if c >= mK.shape[1]:
                    gens.append((d, both[:, c]))
        out.append(len(gens))
        F = FreeDense(R, [d for d, _ in gens])
        newK = {}
        images = {}
        for d in F.degrees():
            # matrix of F_d -> ambient_d, column (j, e) = e * g_j, built from degree d-1
            src = F.source_of(d)
            mat = linalg.zeros(ambient.dim(d), len(src), field)
            by_var: dict = {}
            for c, (i, k) in enumerate(src):
                if i is None:
                    if mat.shape[0]:
                        mat[:, c] = gens[k][1]
                else:
                    by_var.setdefault(i, []).append((c, k))
            for i, pairs in by_var.items():
                cols = [c for c, _ in pairs]
                prev = images[d - 1][:, [k for _, k in pairs]]
                mat[:, cols] = ambient.apply(i, d - 1, prev)
            images[d] = mat
            newK[d] = linalg.nullspace(mat, field) if mat.shape[0] else linalg.identity(len(src), field)
        ambient, K = F, newK
    return out


def dense_betti_residue(R: MonomialAlgebra, length: int) -> list[int]:
    return _dense_betti(ResidueDense(R), length)


def dense_bass_ring(R: MonomialAlgebra, length: int) -> list[int]:
    """mu^n(R) as beta_n of the Matlis dual of R."""
    return _dense_betti(DualDense(R), length)


__all__ = ["MonomialAlgebra", "dense_betti_residue", "dense_bass_ring"]
