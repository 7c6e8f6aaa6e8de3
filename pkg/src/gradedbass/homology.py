"""Ext_R(k, M), Tor^R(k, M) and induced maps, computed strand by strand.

For a free complex F with generator twists and a graded module M,

    Hom_R(F_i, M)_j  = (+)_{a in twists(F_i)} M_{a+j}
    (F_i (x) M)_j    = (+)_{a in twists(F_i)} M_{j-a}

and the differentials are block matrices of multiplication maps on M.
Everything is exact linear algebra over k.
"""

from __future__ import annotations

from contextlib import contextmanager
from dataclasses import dataclass, field as dc_field

import numpy as np

from . import linalg
from .errors import NotFree, WindowUnstable
from .modules import GradedModule, ModuleMap, free_module, residue_field, top_quotient
from .resolution import FreeComplex, minimal_free_resolution
from .rings import GradedRing

DEFAULT_SLACK = 4
DEFAULT_ZERO_RUN = 4
_WINDOW = {"slack": DEFAULT_SLACK, "zero_run": DEFAULT_ZERO_RUN}


@contextmanager
def window_settings(slack: int | None = None, zero_run: int | None = None):
    """Temporarily change the default adaptive-window slack and zero run."""
    old = dict(_WINDOW)
    if slack is not None:
        _WINDOW["slack"] = slack
    if zero_run is not None:
        _WINDOW["zero_run"] = zero_run
    try:
        yield
    finally:
        _WINDOW.update(old)


def resolve_window(slack, zero_run) -> tuple[int, int]:
    return (_WINDOW["slack"] if slack is None else slack,
            _WINDOW["zero_run"] if zero_run is None else zero_run)


# ----------------------------------------------------------------------
# ring-level cached objects

def residue(R: GradedRing) -> GradedModule:
    if "k" not in R._cache:
        R._cache["k"] = residue_field(R)
    return R._cache["k"]


def ring_module(R: GradedRing) -> GradedModule:
    if "Rmod" not in R._cache:
        R._cache["Rmod"] = free_module(R, (0,), "R")
    return R._cache["Rmod"]


def residue_resolution(R: GradedRing, length: int) -> FreeComplex:
    return minimal_free_resolution(residue(R), length)


# ----------------------------------------------------------------------
# reports

@dataclass
class GradedVectorSpace:
    """Internal degree -> dimension, with the window certificate."""

    dims: dict
    window: dict = dc_field(default_factory=dict)

    @property
    def total(self) -> int:
        return sum(self.dims.values())

    def nonzero(self) -> dict:
        return {j: d for j, d in sorted(self.dims.items()) if d}


@dataclass
class LinearMapReport:
    source: GradedVectorSpace
    target: GradedVectorSpace
    matrices: dict
    field: object = None

    def _rank(self, j):
        m = self.matrices[j]
        return linalg.rank(m, self.field) if m.size else 0

    @property
    def is_zero(self) -> bool:
        return all(not np.any(m) for m in self.matrices.values())

    @property
    def is_injective(self) -> bool:
        return all(self._rank(j) == self.source.dims.get(j, 0) for j in self.matrices)

    @property
    def is_surjective(self) -> bool:
        return all(self._rank(j) == self.target.dims.get(j, 0) for j in self.matrices)

    @property
    def rank(self) -> int:
        return sum(self._rank(j) for j in self.matrices)


# ----------------------------------------------------------------------
# strand matrices

def _entries(cols):
    """Group a list of column vectors into {(row, col): polynomial}."""
    out: dict = {}
    for b, col in enumerate(cols):
        for k, c in col.items():
            out.setdefault((k[0], b), {})[(0,) + k[1:]] = c
    return out


def _entry_cache(cols):
    key = id(cols)
    hit = _ENTRY_CACHE.get(key)
    if hit is not None and hit[0] is cols:
        return hit[1]
    ent = _entries(cols)
    _ENTRY_CACHE[key] = (cols, ent)
    return ent


_ENTRY_CACHE: dict = {}


def hom_strand(cols, src_tw, tgt_tw, M: GradedModule, j: int) -> np.ndarray:
    """Matrix of Hom(phi, M)_j : Hom(F, M)_j -> Hom(G, M)_j for phi : G -> F.

    ``cols`` are the columns of phi (one per generator of G, vectors in F).
    """
    fld = M.field
    in_dims = [M.dim(a + j) for a in tgt_tw]
    out_dims = [M.dim(b + j) for b in src_tw]
    in_off = np.concatenate([[0], np.cumsum(in_dims)]).astype(int)
    out_off = np.concatenate([[0], np.cumsum(out_dims)]).astype(int)
    mat = linalg.zeros(int(out_off[-1]), int(in_off[-1]), fld)
    if mat.size == 0:
        return mat
    for (a, b), poly in _entry_cache(cols).items():
        if not in_dims[a] or not out_dims[b]:
            continue
        blk = M.mult_matrix(poly, tgt_tw[a] + j)
        sl = mat[out_off[b]:out_off[b + 1], in_off[a]:in_off[a + 1]]
        sl[...] = (sl + blk) % fld.p if fld.p else sl + blk
    return mat


def tensor_strand(cols, src_tw, tgt_tw, M: GradedModule, j: int) -> np.ndarray:
    """Matrix of (phi (x) M)_j : (G (x) M)_j -> (F (x) M)_j for phi : G -> F."""
    fld = M.field
    in_dims = [M.dim(j - b) for b in src_tw]
    out_dims = [M.dim(j - a) for a in tgt_tw]
    in_off = np.concatenate([[0], np.cumsum(in_dims)]).astype(int)
    out_off = np.concatenate([[0], np.cumsum(out_dims)]).astype(int)
    mat = linalg.zeros(int(out_off[-1]), int(in_off[-1]), fld)
    if mat.size == 0:
        return mat
    for (a, b), poly in _entry_cache(cols).items():
        if not in_dims[b] or not out_dims[a]:
            continue
        blk = M.mult_matrix(poly, j - src_tw[b])
        sl = mat[out_off[a]:out_off[a + 1], in_off[b]:in_off[b + 1]]
        sl[...] = (sl + blk) % fld.p if fld.p else sl + blk
    return mat


def block_diagonal(blocks, field) -> np.ndarray:
    rows = sum(b.shape[0] for b in blocks)
    cols = sum(b.shape[1] for b in blocks)
    out = linalg.zeros(rows, cols, field)
    r = c = 0
    for b in blocks:
        out[r:r + b.shape[0], c:c + b.shape[1]] = b
        r += b.shape[0]
        c += b.shape[1]
    return out


class Subquotient:
    """H = ker(d_out) / im(d_in) at one spot, with chosen representatives."""

    def __init__(self, d_in: np.ndarray, d_out: np.ndarray, dim: int, field):
        self.field = field
        self.dim_space = dim
        z = linalg.nullspace(d_out, field) if d_out.shape[0] else linalg.identity(dim, field)
        if d_in.shape[1] and dim:
            bcols = [c for c in linalg.independent_columns(d_in, field)]
            b = d_in[:, bcols]
        else:
            b = linalg.zeros(dim, 0, field)
        self.boundaries = b
        both = np.concatenate([b, z], axis=1) if dim else linalg.zeros(0, 0, field)
        piv = linalg.independent_columns(both, field) if both.size else []
        nb = b.shape[1]
        self.reps = both[:, [c for c in piv if c >= nb]] if dim else linalg.zeros(0, 0, field)
        self.dim = self.reps.shape[1] if dim else 0
        self._basis = np.concatenate([b, self.reps], axis=1) if dim else None

    def coordinates(self, cycles: np.ndarray) -> np.ndarray:
        """Coordinates in the H basis of the classes of the given cycles (columns)."""
        if self.dim == 0 or cycles.shape[1] == 0:
            return linalg.zeros(self.dim, cycles.shape[1], self.field)
        x = linalg.solve(self._basis, cycles, self.field)
        if x is None:
            raise ArithmeticError("vector is not a cycle")
        return x[self.boundaries.shape[1]:]


# ----------------------------------------------------------------------
# cohomology of Hom(F, M) with a certified window

class HomCohomology:
    """H^n Hom_R(F, M) for a free complex F (indexing may be any integers)."""

    def __init__(self, F: FreeComplex, M: GradedModule, slack=None, zero_run=None,
                 degree_cap=None):
        self.F = F
        self.M = M
        self.slack, self.zero_run = resolve_window(slack, zero_run)
        self.cap = degree_cap if degree_cap is not None else M.ring.degree_cap
        self._mat: dict = {}
        self._rank: dict = {}
        self._sq: dict = {}

    def d(self, n: int, j: int) -> np.ndarray:
        """d^n : Hom(F_n, M)_j -> Hom(F_{n+1}, M)_j."""
        key = (n, j)
        if key not in self._mat:
            F = self.F
            self._mat[key] = hom_strand(F.diff(n + 1), F.tw(n + 1), F.tw(n), self.M, j)
        return self._mat[key]

    def rank_d(self, n: int, j: int) -> int:
        key = (n, j)
        if key not in self._rank:
            self._rank[key] = linalg.rank(self.d(n, j), self.M.field)
        return self._rank[key]

    def cochain_dim(self, n: int, j: int) -> int:
        return sum(self.M.dim(a + j) for a in self.F.tw(n))

    def strand_dim(self, n: int, j: int) -> int:
        c = self.cochain_dim(n, j)
        if c == 0:
            return 0
        return c - self.rank_d(n, j) - self.rank_d(n - 1, j)

    def subquotient(self, n: int, j: int) -> Subquotient:
        key = (n, j)
        if key not in self._sq:
            self._sq[key] = Subquotient(self.d(n - 1, j), self.d(n, j), self.cochain_dim(n, j), self.M.field)
        return self._sq[key]

    def window(self, n: int):
        """Strand range to scan: (lo, anchor, mode)."""
        F, M = self.F, self.M
        if M.is_zero or not F.tw(n):
            return None
        nxt = F.tw(n + 1) or F.tw(n)
        lo = M.indeg - max(max(nxt), max(F.tw(n)))
        if M.is_finite_length:
            return lo, M.top_degree - min(F.tw(n)), "finite-length"
        span = [a for i in range(min(F.degrees), n + 2) for a in F.tw(i)]
        anchor = M.max_presentation_degree + max(span) + self.slack
        return lo, anchor, "adaptive"

    def dims(self, n: int) -> GradedVectorSpace:
        w = self.window(n)
        if w is None:
            return GradedVectorSpace({}, {"mode": "empty", "certified": True})
        lo, hi, mode = w
        dims = {}
        if mode == "finite-length":
            for j in range(lo, hi + 1):
                dims[j] = self.strand_dim(n, j)
            return GradedVectorSpace(dims, {"mode": mode, "lo": lo, "hi": hi, "certified": True})
        run = 0
        j = lo
        while True:
            if j > self.cap:
                raise WindowUnstable(
                    f"H^{n} strands still undetermined at internal degree {j} (cap {self.cap})")
            dims[j] = self.strand_dim(n, j)
            if j > hi:
                run = run + 1 if dims[j] == 0 else 0
                if run >= self.zero_run + 1:
                    break
            j += 1
        return GradedVectorSpace(
            dims,
            {"mode": mode, "lo": lo, "hi": j, "anchor": hi, "slack": self.slack,
             "zero_run": self.zero_run, "certified": True},
        )


def _hom_cohomology(F: FreeComplex, M: GradedModule, tag: str, slack: int, zero_run: int) -> HomCohomology:
    slack, zero_run = resolve_window(slack, zero_run)
    cache = M._cache.setdefault("homcoh", {})
    key = (tag, id(F), slack, zero_run)
    hit = cache.get(key)
    if hit is None or hit.F is not F:
        hit = HomCohomology(F, M, slack, zero_run)
        cache[key] = hit
    return hit


def _k_resolution(R: GradedRing, n: int) -> FreeComplex:
    """The shared, incrementally grown resolution of k, resolved through F_n.

    The same object is returned every time so strand caches keyed on it
    survive later extensions (differentials are only ever appended).
    """
    k = residue(R)
    minimal_free_resolution(k, n)
    return k._cache["resolver"].complex


def ext_engine(M: GradedModule, n: int, slack=None, zero_run=None) -> HomCohomology:
    F = _k_resolution(M.ring, n + 1)
    return _hom_cohomology(F, M, "ext", slack, zero_run)


def ext_k(M: GradedModule, n: int, slack=None, zero_run=None) -> GradedVectorSpace:
    """Ext^n_R(k, M) by internal degree; ``.total`` is the Bass number mu^n(M)."""
    if n < 0:
        return GradedVectorSpace({}, {"mode": "negative", "certified": True})
    return ext_engine(M, n, slack, zero_run).dims(n)


def bass_numbers(M: GradedModule, D: int, slack=None, zero_run=None) -> list[int]:
    return [ext_k(M, n, slack, zero_run).total for n in range(D + 1)]


def _map_report(E1: HomCohomology, E2: HomCohomology, n: int, cochain_map, field) -> LinearMapReport:
    s = E1.dims(n)
    t = E2.dims(n)
    js = sorted(set(s.dims) | set(t.dims))
    mats = {}
    for j in js:
        ds, dt = s.dims.get(j, 0), t.dims.get(j, 0)
        if ds == 0 or dt == 0:
            mats[j] = linalg.zeros(dt, ds, field)
            continue
        S1 = E1.subquotient(n, j)
        S2 = E2.subquotient(n, j)
        image = linalg.matmul(cochain_map(j), S1.reps, field)
        mats[j] = S2.coordinates(image)
    return LinearMapReport(s, t, mats, field)


def induced_ext_map(beta: ModuleMap, n: int, slack=None, zero_run=None) -> LinearMapReport:
    """Ext^n_R(k, beta) : Ext^n(k, M) -> Ext^n(k, N), strand by strand."""
    field = beta.ring.field
    E1 = ext_engine(beta.source, n, slack, zero_run)
    E2 = ext_engine(beta.target, n, slack, zero_run)
    F = E1.F
    tw = F.tw(n)

    def cochain(j):
        return block_diagonal([beta.matrix(a + j) for a in tw], field)

    return _map_report(E1, E2, n, cochain, field)


def epsilon_map(M: GradedModule, n: int, **kw) -> LinearMapReport:
    """epsilon^n_M = Ext^n(k, pi^M) for the canonical map M -> M/mM."""
    return induced_ext_map(top_quotient(M)[1], n, **kw)


# ----------------------------------------------------------------------
# Tor

class TensorHomology:
    def __init__(self, F: FreeComplex, M: GradedModule):
        self.F = F
        self.M = M
        self._mat: dict = {}
        self._rank: dict = {}

    def d(self, n: int, j: int) -> np.ndarray:
        """d_n : (F_n (x) M)_j -> (F_{n-1} (x) M)_j."""
        key = (n, j)
        if key not in self._mat:
            F = self.F
            self._mat[key] = tensor_strand(F.diff(n), F.tw(n), F.tw(n - 1), self.M, j)
        return self._mat[key]

    def chain_dim(self, n: int, j: int) -> int:
        return sum(self.M.dim(j - a) for a in self.F.tw(n))

    def rank_d(self, n, j):
        key = (n, j)
        if key not in self._rank:
            self._rank[key] = linalg.rank(self.d(n, j), self.M.field)
        return self._rank[key]

    def strand_dim(self, n, j):
        c = self.chain_dim(n, j)
        if c == 0:
            return 0
        return c - self.rank_d(n, j) - self.rank_d(n + 1, j)

    def subquotient(self, n, j) -> Subquotient:
        # homology at F_n: ker d_n / im d_{n+1}
        return Subquotient(self.d(n + 1, j), self.d(n, j), self.chain_dim(n, j), self.M.field)

    def window(self, n: int):
        F, M = self.F, self.M
        if M.is_zero or not F.tw(n):
            return None
        lo = min(F.tw(n)) + M.indeg
        if M.is_finite_length:
            return lo, max(F.tw(n)) + M.top_degree, "finite-length"
        G = minimal_free_resolution(M, n)
        if not G.tw(n):
            return None
        return lo, max(G.tw(n)), "betti-degrees"

    def dims(self, n: int) -> GradedVectorSpace:
        w = self.window(n)
        if w is None:
            return GradedVectorSpace({}, {"mode": "empty", "certified": True})
        lo, hi, mode = w
        return GradedVectorSpace({j: self.strand_dim(n, j) for j in range(lo, hi + 1)},
                                 {"mode": mode, "lo": lo, "hi": hi, "certified": True})


def tor_engine(M: GradedModule, n: int) -> TensorHomology:
    F = _k_resolution(M.ring, n + 1)
    cache = M._cache.setdefault("torcoh", {})
    hit = cache.get(id(F))
    if hit is None or hit.F is not F:
        hit = TensorHomology(F, M)
        cache[id(F)] = hit
    return hit


def tor_k(M: GradedModule, n: int) -> GradedVectorSpace:
    """Tor_n^R(k, M) by internal degree."""
    if n < 0:
        return GradedVectorSpace({}, {"mode": "negative", "certified": True})
    return tor_engine(M, n).dims(n)


def induced_tor_map(alpha: ModuleMap, n: int) -> LinearMapReport:
    """Tor_n^R(k, alpha) : Tor_n(k, V) -> Tor_n(k, M)."""
    field = alpha.ring.field
    T1 = tor_engine(alpha.source, n)
    T2 = tor_engine(alpha.target, n)
    tw = T1.F.tw(n)
    s = T1.dims(n)
    t = T2.dims(n)
    mats = {}
    for j in sorted(set(s.dims) | set(t.dims)):
        ds, dt = s.dims.get(j, 0), t.dims.get(j, 0)
        if ds == 0 or dt == 0:
            mats[j] = linalg.zeros(dt, ds, field)
            continue
        S1 = T1.subquotient(n, j)
        S2 = T2.subquotient(n, j)
        chain = block_diagonal([alpha.matrix(j - a) for a in tw], field)
        mats[j] = S2.coordinates(linalg.matmul(chain, S1.reps, field))
    return LinearMapReport(s, t, mats, field)


# ----------------------------------------------------------------------
# free summands of cokernels

@dataclass
class FreeSummandResult:
    has_free_summand: bool
    witness: np.ndarray | None = None
    degree: int | None = None

    def __bool__(self):
        return self.has_free_summand


def free_summand_test(chi: ModuleMap) -> FreeSummandResult:
    """Does Coker(chi) have a nonzero free summand (Y = chi.target free)?

    Decided by solving upsilon o chi = 0 for upsilon in Y* degree by degree
    and looking for a solution with a unit coordinate.
    """
    Y = chi.target
    R = Y.ring
    if any(Y.reduce(r) for r in Y.relations):
        raise NotFree("target of the map is not a free module")
    Rm = ring_module(R)
    for delta in sorted({-a for a in Y.twists}):
        mat = hom_strand(chi.columns, chi.source.twists, Y.twists, Rm, delta)
        null = linalg.nullspace(mat, R.field) if mat.shape[0] else linalg.identity(mat.shape[1], R.field)
        if null.shape[1] == 0:
            continue
        off = 0
        unit_rows = []
        for a in Y.twists:
            d = Rm.dim(a + delta)
            if a + delta == 0:
                unit_rows.append(off)
            off += d
        for c in range(null.shape[1]):
            if any(null[r, c] for r in unit_rows):
                return FreeSummandResult(True, null[:, c], delta)
    return FreeSummandResult(False)
