"""Stable (Tate) cohomology over hypersurfaces, and the finite-pd vanishing branch.

Over R = P/(f) the minimal resolution F of a module L becomes 2-periodic
once the syzygies are maximal Cohen-Macaulay.  Two consecutive differentials
A = d_{s+1}, B = d_{s+2} lift to P with AB = f C for an invertible C; then
(A, B C^{-1}) is a matrix factorization and the 2-periodic complex T it
induces is a complete resolution of L.  A comparison map nu : T -> F that is
the identity in degrees s, s+1 gives

    eta^n = H^n Hom(nu, M) : Ext^n(L, M) -> H^n Hom(T, M) = Ext-hat^n(L, M).

Over a Gorenstein ring Tate cohomology agrees with Vogel's stable cohomology;
that identification is imported, not recomputed.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

import numpy as np

from . import linalg
from .errors import NotHypersurface, NotStabilized, Unsupported
from .homology import (
    GradedVectorSpace,
    HomCohomology,
    LinearMapReport,
    _map_report,
    block_diagonal,
    hom_strand,
    resolve_window,
)
from .modules import GradedModule, ModuleMap, direct_sum, free_module
from .poly import Vec, axpy, key_degree, key_divides, key_quo, lead, move_to, with_comp
from .resolution import FreeComplex, minimal_free_resolution, pd_certificate
from .rings import GradedRing


# ----------------------------------------------------------------------
# polynomial matrices (square, dense: rows[i][j] is a polynomial)

def _dense(cols: list[Vec], nrows: int) -> list[list[Vec]]:
    out = [[{} for _ in cols] for _ in range(nrows)]
    for j, col in enumerate(cols):
        for k, c in col.items():
            out[k[0]][j][with_comp(k, 0)] = c
    return out


def _columns(rows: list[list[Vec]]) -> list[Vec]:
    ncols = len(rows[0]) if rows else 0
    cols = [{} for _ in range(ncols)]
    for i, row in enumerate(rows):
        for j, e in enumerate(row):
            for k, c in e.items():
                cols[j][with_comp(k, i)] = c
    return cols


def _pm_mul(X, Y, field):
    n, m, l = len(X), len(Y), len(Y[0]) if Y else 0
    out = [[{} for _ in range(l)] for _ in range(n)]
    for i in range(n):
        for t in range(m):
            x = X[i][t]
            if not x:
                continue
            for j in range(l):
                y = Y[t][j]
                if not y:
                    continue
                for k, c in x.items():
                    axpy(out[i][j], c, y, k, field.p)
    return out


def _pm_add(X, Y, field, c=1):
    out = [[dict(e) for e in row] for row in X]
    for i, row in enumerate(Y):
        for j, e in enumerate(row):
            axpy(out[i][j], field(c), e, None, field.p)
    return out


def _divide_exact(h: Vec, f: Vec, field):
    """Quotient h / f in P, or None if f does not divide h."""
    h = dict(h)
    lf = lead(f)
    inv = field.inv(f[lf])
    q: Vec = {}
    while h:
        t = lead(h)
        if not key_divides(lf, t):
            return None
        m = key_quo(t, lf)
        c = h[t] * inv
        if field.p:
            c %= field.p
        q[m] = c
        axpy(h, field.neg(c), f, m, field.p)
    return q


def _pm_inverse(C, field):
    """Inverse of a graded square polynomial matrix, or None.

    C = C0 + N with C0 constant and N of positive degree; graded
    homogeneity makes C0^{-1} N nilpotent, so the Neumann series terminates.
    """
    r = len(C)
    nv = None
    for row in C:
        for e in row:
            for k in e:
                nv = len(k) - 2
                break
    if nv is None:
        return None
    zero_key = (0, 0) + (0,) * nv
    c0 = linalg.zeros(r, r, field)
    N = [[{} for _ in range(r)] for _ in range(r)]
    for i in range(r):
        for j in range(r):
            for k, c in C[i][j].items():
                if k[1] == 0:
                    c0[i, j] = c
                else:
                    N[i][j][k] = c
    if linalg.rank(c0, field) < r:
        return None
    c0inv = linalg.solve(c0, linalg.identity(r, field), field)
    K = [[({zero_key: field(c0inv[i, j])} if c0inv[i, j] else {}) for j in range(r)] for i in range(r)]
    step = _pm_mul(K, N, field)
    step = [[{k: field.neg(c) for k, c in e.items()} for e in row] for row in step]  # -C0^{-1} N
    total = K
    term = K
    for _ in range(r + 1):
        term = _pm_mul(step, term, field)
        if not any(e for row in term for e in row):
            break
        total = _pm_add(total, term, field)
    else:
        return None
    return total


def _compose(outer: list[Vec], inner: list[Vec], field) -> list[Vec]:
    """Columns of outer o inner (inner columns index into outer's source)."""
    out = []
    for col in inner:
        v: Vec = {}
        for k, c in col.items():
            axpy(v, c, outer[k[0]], (0,) + k[1:], field.p)
        out.append(v)
    return out


def _reduce_cols(cols: list[Vec], R: GradedRing) -> list[Vec]:
    out = []
    for col in cols:
        v: Vec = {}
        for i in sorted({k[0] for k in col}):
            poly = {with_comp(k, 0): c for k, c in col.items() if k[0] == i}
            for k, c in R.reduce(poly).items():
                v[with_comp(k, i)] = c
        out.append(v)
    return out


# ----------------------------------------------------------------------

@dataclass
class MatrixFactorization:
    """Square matrices A, B over P with AB = BA = f Id (empty if pd L < oo)."""

    ring: GradedRing
    f: Vec
    A: list = dc_field(default_factory=list)
    B: list = dc_field(default_factory=list)
    s: int | None = None
    twists_even: tuple = ()
    twists_odd: tuple = ()

    @property
    def size(self) -> int:
        return len(self.A)

    @property
    def is_empty(self) -> bool:
        return self.size == 0

    def rows(self, which: str = "A") -> list[list[str]]:
        M = _dense(self.A if which == "A" else self.B, self.size)
        return [[self.ring.format(e) if e else "0" for e in row] for row in M]

    def verify(self) -> bool:
        """AB = BA = f Id, exactly over the polynomial ring."""
        if self.is_empty:
            return True
        field = self.ring.field
        r = self.size
        fI = [[(dict(self.f) if i == j else {}) for j in range(r)] for i in range(r)]
        A = _dense(self.A, r)
        B = _dense(self.B, r)
        return _pm_mul(A, B, field) == fI and _pm_mul(B, A, field) == fI


def hypersurface_equation(R: GradedRing) -> Vec:
    gens = R.minimal_ideal_generators() if R.ideal_gens else []
    if len(gens) != 1:
        raise NotHypersurface(f"{R} is not a hypersurface ring ({len(gens)} minimal ideal generators)")
    return gens[0]


def matrix_factorization(L: GradedModule, extra_steps: int = 2) -> MatrixFactorization:
    """Matrix factorization read off the tail of the minimal resolution of L."""
    R = L.ring
    f = hypersurface_equation(R)
    field = R.field
    if pd_certificate(L).finite:
        return MatrixFactorization(R, f)
    n = R.nvars
    for s in range(n, n + extra_steps + 1):
        F = minimal_free_resolution(L, s + 2)
        r = F.rank(s)
        if not (r == F.rank(s + 1) == F.rank(s + 2)):
            continue
        A = _dense(F.diff(s + 1), r)
        B = _dense(F.diff(s + 2), r)
        AB = _pm_mul(A, B, field)
        C = []
        ok = True
        for row in AB:
            crow = []
            for e in row:
                q = _divide_exact(e, f, field) if e else {}
                if q is None:
                    ok = False
                    break
                crow.append(q)
            if not ok:
                break
            C.append(crow)
        if not ok:
            continue
        Cinv = _pm_inverse(C, field)
        if Cinv is None:
            continue
        Bp = _pm_mul(B, Cinv, field)
        mf = MatrixFactorization(R, f, _columns(A), _columns(Bp), s, F.tw(s), F.tw(s + 1))
        if mf.verify():
            return mf
    raise NotStabilized(f"no verified matrix factorization found for {L.name or 'module'} by step {n + extra_steps + 2}")


class CompleteResolution:
    """2-periodic complete resolution T of L with comparison map nu : T -> F."""

    def __init__(self, L: GradedModule, mf: MatrixFactorization, lo: int, hi: int):
        self.module = L
        self.mf = mf
        R = L.ring
        self.ring = R
        self.lo, self.hi = lo, hi
        s = mf.s
        self.s = s
        e = key_degree(next(iter(mf.f)))
        self.shift = e
        twists, diffs = {}, {}
        A = _reduce_cols(mf.A, R)
        Bp = _reduce_cols(mf.B, R)
        for i in range(lo - 1, hi + 3):
            q = i - s
            if q % 2 == 0:
                twists[i] = tuple(a + (q // 2) * e for a in mf.twists_even)
                diffs[i] = Bp
            else:
                twists[i] = tuple(a + ((q - 1) // 2) * e for a in mf.twists_odd)
                diffs[i] = A
        diffs.pop(lo - 1)
        self.complex = FreeComplex(R, twists, diffs, True, f"T({L.name or 'L'})")
        top = max(hi + 2, s + 2)
        self.F = minimal_free_resolution(L, top)
        self.nu = self._comparison(max(lo, 0), top)

    def _free(self, twists) -> GradedModule:
        cache = self.ring._cache.setdefault("freemods", {})
        key = tuple(twists)
        if key not in cache:
            cache[key] = free_module(self.ring, key)
        return cache[key]

    def _comparison(self, lo: int, hi: int) -> dict:
        T, F, s = self.complex, self.F, self.s
        field = self.ring.field
        nu = {}
        for i in (s, s + 1):
            nu[i] = [move_to(self.ring.one(), c) for c in range(F.rank(i))]
        # upward: d^F_i nu_i = nu_{i-1} d^T_i
        for i in range(s + 2, hi + 1):
            Fi, Fm = self._free(F.tw(i)), self._free(F.tw(i - 1))
            d = ModuleMap(Fi, Fm, F.diff(i), check=False)
            target = _compose(nu[i - 1], T.diff(i), field)
            cols = []
            for b, y in enumerate(target):
                t = T.tw(i)[b]
                x = linalg.solve(d.matrix(t), Fm.coords(y, t)[:, None], field)
                if x is None:
                    raise NotStabilized(f"comparison map does not lift in degree {i}")
                cols.append(Fi.element(x[:, 0], t))
            nu[i] = cols
        # downward: nu_{i-1} d^T_i = d^F_i nu_i
        for i in range(s, lo, -1):
            if F.rank(i - 1) == 0:
                nu[i - 1] = [{} for _ in T.tw(i - 1)]
                continue
            Fm = self._free(F.tw(i - 1))
            mat = hom_strand(T.diff(i), T.tw(i), T.tw(i - 1), Fm, 0)
            rhs_cols = _compose(F.diff(i), nu[i], field)
            rhs = np.concatenate([Fm.coords(y, T.tw(i)[c]) for c, y in enumerate(rhs_cols)]) \
                if rhs_cols else linalg.zeros(0, 1, field)[:, 0]
            x = linalg.solve(mat, rhs[:, None], field)
            if x is None:
                raise NotStabilized(f"comparison map does not extend to degree {i - 1}")
            cols, off = [], 0
            for a in T.tw(i - 1):
                dim = Fm.dim(a)
                cols.append(Fm.element(x[off:off + dim, 0], a))
                off += dim
            nu[i - 1] = cols
        return {i: v for i, v in nu.items() if lo <= i <= hi}

    def check_exact(self, lo: int, hi: int, bound: int) -> bool:
        """Zero homology in homological degrees lo..hi, internal degrees up to bound."""
        from .homology import tensor_strand, ring_module
        Rm = ring_module(self.ring)
        T = self.complex
        field = self.ring.field
        for i in range(lo, hi + 1):
            for j in range(min(T.tw(i)), bound + 1):
                din = tensor_strand(T.diff(i + 1), T.tw(i + 1), T.tw(i), Rm, j)
                dout = tensor_strand(T.diff(i), T.tw(i), T.tw(i - 1), Rm, j)
                dim = sum(Rm.dim(j - a) for a in T.tw(i))
                if dim - linalg.rank(dout, field) - linalg.rank(din, field):
                    return False
        return True


def complete_resolution(L: GradedModule, lo: int, hi: int) -> CompleteResolution:
    cache = L._cache.setdefault("complete", {})
    for (a, b), cr in cache.items():
        if a <= lo and hi <= b:
            return cr
    mf = L._cache.get("mf") or matrix_factorization(L)
    L._cache["mf"] = mf
    if mf.is_empty:
        raise Unsupported("module has finite projective dimension; its complete resolution is zero")
    cr = CompleteResolution(L, mf, lo, hi)
    cache[(lo, hi)] = cr
    return cr


# ----------------------------------------------------------------------

@dataclass
class StableExtReport:
    dims: dict
    strands: dict
    branch: str
    stabilization: int | None = None
    windows: dict = dc_field(default_factory=dict)
    note: str = ""

    @property
    def periodic(self) -> bool:
        ns = sorted(self.dims)
        return all(self.dims[n] == self.dims[n + 2] for n in ns if n + 2 in self.dims)


def _branch(L: GradedModule, M: GradedModule) -> str:
    if pd_certificate(L).finite or pd_certificate(M).finite:
        return "vanishing"
    try:
        hypersurface_equation(L.ring)
    except NotHypersurface:
        raise Unsupported("stable cohomology is only computed over hypersurfaces or with a finite-pd argument")
    return "tate"


def _tate_engine(L, M, lo, hi, slack, zero_run) -> tuple[CompleteResolution, HomCohomology]:
    cr = complete_resolution(L, lo, hi)
    slack, zero_run = resolve_window(slack, zero_run)
    key = ("tate", id(cr), slack, zero_run)
    cache = M._cache.setdefault("homcoh", {})
    if key not in cache or cache[key].F is not cr.complex:
        cache[key] = HomCohomology(cr.complex, M, slack, zero_run)
    return cr, cache[key]


def stable_ext(L: GradedModule, M: GradedModule, n_range=(-4, 6), slack=None,
               zero_run=None) -> StableExtReport:
    """dim Ext-hat^n_R(L, M) for n in the inclusive range (negative n allowed)."""
    lo, hi = n_range
    branch = _branch(L, M)
    if branch == "vanishing":
        return StableExtReport({n: 0 for n in range(lo, hi + 1)}, {n: {} for n in range(lo, hi + 1)},
                               "vanishing", note="an argument has finite projective dimension")
    cr, E = _tate_engine(L, M, lo, hi, slack, zero_run)
    dims, strands, windows = {}, {}, {}
    for n in range(lo, hi + 1):
        gv = E.dims(n)
        dims[n] = gv.total
        strands[n] = gv.nonzero()
        windows[n] = gv.window
    return StableExtReport(dims, strands, "tate", cr.s, windows,
                           "Tate cohomology from a complete resolution (equals stable cohomology over Gorenstein rings)")


def eta_map(L: GradedModule, M: GradedModule, n: int, slack=None, zero_run=None) -> LinearMapReport:
    """eta^n_{L,M} : Ext^n(L, M) -> Ext-hat^n(L, M)."""
    R = L.ring
    field = R.field
    F = minimal_free_resolution(L, max(n + 2, R.nvars + 3))
    E_F = _resolution_engine(F, M, slack, zero_run)
    if pd_certificate(L).finite:
        src = E_F.dims(n)
        return LinearMapReport(src, GradedVectorSpace({}, {"mode": "empty", "certified": True}),
                               {j: linalg.zeros(0, d, field) for j, d in src.dims.items()}, field)
    hypersurface_equation(R)
    cr, E_T = _tate_engine(L, M, min(n, 0) - 1, max(n, cr_hi(R)), slack, zero_run)
    tw_T, tw_F = cr.complex.tw(n), F.tw(n)
    nu = cr.nu.get(n, [{} for _ in tw_T])

    def cochain(j):
        return hom_strand(nu, tw_T, tw_F, M, j)

    return _map_report(E_F, E_T, n, cochain, field)


def cr_hi(R: GradedRing) -> int:
    return R.nvars + 4


def _resolution_engine(F: FreeComplex, M: GradedModule, slack, zero_run) -> HomCohomology:
    slack, zero_run = resolve_window(slack, zero_run)
    key = ("res", id(F), slack, zero_run)
    cache = M._cache.setdefault("homcoh", {})
    if key not in cache or cache[key].F is not F:
        cache[key] = HomCohomology(F, M, slack, zero_run)
    return cache[key]


@dataclass
class AdditivityReport:
    holds: bool
    n: int
    sum_dim: int
    part_dims: list
    ext_vertical_bijective: bool
    stable_vertical_bijective: bool
    square_commutes: bool
    blocks_diagonal: bool

    def __bool__(self):
        return self.holds


def _vertical(engine_sum, engines, incls, n, field):
    """Per-strand matrix of (+)_j H^n(iota_j) : (+)_j H_j -> H_sum."""
    tgt = engine_sum.dims(n)
    srcs = [e.dims(n) for e in engines]
    js = sorted(set(tgt.dims).union(*[s.dims for s in srcs]))
    out = {}
    for j in js:
        blocks = []
        for e, iota, s in zip(engines, incls, srcs):
            ds, dt = s.dims.get(j, 0), tgt.dims.get(j, 0)
            if ds == 0 or dt == 0:
                blocks.append(linalg.zeros(dt, ds, field))
                continue
            tw = e.F.tw(n)
            chain = block_diagonal([iota.matrix(a + j) for a in tw], field)
            S1 = e.subquotient(n, j)
            S2 = engine_sum.subquotient(n, j)
            blocks.append(S2.coordinates(linalg.matmul(chain, S1.reps, field)))
        out[j] = np.concatenate(blocks, axis=1) if blocks else linalg.zeros(tgt.dims.get(j, 0), 0, field)
    return out


def additivity_check(L: GradedModule, family: list[GradedModule], n: int,
                     slack=None, zero_run=None) -> AdditivityReport:
    """Ext-hat^n(L, (+) M_j) versus (+) Ext-hat^n(L, M_j), compatibly with eta."""
    R = L.ring
    field = R.field
    S = direct_sum(*family, name="sum")
    if pd_certificate(L).finite:
        return AdditivityReport(True, n, 0, [0] * len(family), True, True, True, True)
    hypersurface_equation(R)
    lo, hi = min(n, 0) - 1, max(n, cr_hi(R))
    F = minimal_free_resolution(L, max(n + 2, R.nvars + 3))
    ext_sum = _resolution_engine(F, S, slack, zero_run)
    ext_parts = [_resolution_engine(F, M, slack, zero_run) for M in family]
    cr, st_sum = _tate_engine(L, S, lo, hi, slack, zero_run)
    st_parts = [_tate_engine(L, M, lo, hi, slack, zero_run)[1] for M in family]

    V_ext = _vertical(ext_sum, ext_parts, S.inclusions, n, field)
    V_st = _vertical(st_sum, st_parts, S.inclusions, n, field)

    def bij(V):
        return all(m.shape[0] == m.shape[1] and linalg.rank(m, field) == m.shape[0] for m in V.values())

    eta_sum = eta_map(L, S, n, slack, zero_run)
    etas = [eta_map(L, M, n, slack, zero_run) for M in family]
    commutes = True
    for j in sorted(set(V_ext) | set(V_st)):
        ve = V_ext.get(j)
        vs = V_st.get(j)
        es = eta_sum.matrices.get(j)
        if ve is None or vs is None or es is None:
            continue
        diag = block_diagonal([e.matrices.get(j, linalg.zeros(
            e.target.dims.get(j, 0), e.source.dims.get(j, 0), field)) for e in etas], field)
        if es.shape[1] != ve.shape[0] or vs.shape[1] != diag.shape[0]:
            commutes = False
            break
        left = linalg.matmul(es, ve, field)
        right = linalg.matmul(vs, diag, field)
        if not np.array_equal(np.asarray(left), np.asarray(right)):
            commutes = False
            break
    sum_dim = st_sum.dims(n).total
    parts = [e.dims(n).total for e in st_parts]
    # in the decomposed bases the eta matrix of the sum is block diagonal
    blocks_diag = commutes and bij(V_ext) and bij(V_st)
    ok = sum_dim == sum(parts) and bij(V_ext) and bij(V_st) and commutes
    return AdditivityReport(ok, n, sum_dim, parts, bij(V_ext), bij(V_st), commutes, blocks_diag)


__all__ = [
    "MatrixFactorization", "CompleteResolution", "StableExtReport", "AdditivityReport",
    "matrix_factorization", "complete_resolution", "stable_ext", "eta_map", "additivity_check",
    "hypersurface_equation",
]
