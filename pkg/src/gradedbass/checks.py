"""Executable checks of the zero-map, free-summand, Bass-number and fiber
product results.  Each check computes its two sides through separate code
paths (a direct Ext/Tor computation against a formula evaluation) and
returns a :class:`CheckReport`.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from math import comb

from .errors import HypothesisViolated, Undetermined
from .fiber import FiberRing, fiber_module
from .homology import (
    bass_numbers,
    epsilon_map,
    ext_k,
    free_summand_test,
    induced_ext_map,
    induced_tor_map,
    residue,
    residue_resolution,
    ring_module,
)
from .modules import (
    GradedModule,
    ModuleMap,
    free_module,
    intersect_max_ideal,
    max_ideal_times,
    top_quotient,
)
from .resolution import betti_numbers, pd_certificate
from .rings import GradedRing, krull_dimension
from .series import TruncatedSeries, bass_series, poincare_series


@dataclass
class CheckReport:
    name: str
    inputs: dict
    rows: list = dc_field(default_factory=list)
    verdict: str = "pass"
    witnesses: dict = dc_field(default_factory=dict)
    windows: list = dc_field(default_factory=list)
    notes: list = dc_field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def fail(self, why: str, **witness):
        self.verdict = "fail"
        self.notes.append(why)
        self.witnesses.update(witness)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "inputs": self.inputs,
            "rows": self.rows,
            "verdict": self.verdict,
            "witnesses": self.witnesses,
            "notes": self.notes,
        }


def _undetermined(report: CheckReport, exc: Exception) -> CheckReport:
    report.verdict = "undetermined"
    report.notes.append(f"{type(exc).__name__}: {exc}")
    return report


def is_singular(R: GradedRing) -> bool:
    return krull_dimension(R) < R.nvars


def _same_map(f: ModuleMap, g: ModuleMap) -> bool:
    return all(not f.target.reduce(_diff(a, b, f.ring.field)) for a, b in zip(f.columns, g.columns))


def _diff(a, b, field):
    out = dict(a)
    for k, c in b.items():
        w = field(out.get(k, 0) - c)
        if w:
            out[k] = w
        else:
            out.pop(k, None)
    return out


# ----------------------------------------------------------------------
# zero maps on Ext and Tor

def check_zero_map_theorem(beta: ModuleMap, witness=None, D: int = 6) -> CheckReport:
    """Ext^n(k, beta) = 0 for 0 <= n <= D when beta : M -> V with mV = 0
    factors through a module of finite projective dimension over singular R.

    ``witness`` is ``(gamma, delta)`` with beta = delta o gamma, or None to
    use the trivial factorization through M itself.
    """
    R = beta.ring
    rep = CheckReport("zero-map-ext", {"ring": str(R), "source": beta.source.name, "target": beta.target.name, "D": D})
    if not is_singular(R):
        raise HypothesisViolated(f"{R} is regular")
    if not beta.target.killed_by_max_ideal():
        raise HypothesisViolated("target of beta is not annihilated by m")
    if witness is None:
        from .modules import identity_map
        witness = (identity_map(beta.source), beta)
    gamma, delta = witness
    if gamma.target is not delta.source or not _same_map(delta.compose(gamma), beta):
        raise HypothesisViolated("witness does not factor beta")
    cert = pd_certificate(gamma.target)
    if not cert.finite:
        raise HypothesisViolated("witness module has infinite projective dimension")
    rep.witnesses["pd"] = cert.pd
    try:
        for n in range(D + 1):
            m = induced_ext_map(beta, n)
            rep.rows.append({"n": n, "source_dim": m.source.total, "target_dim": m.target.total,
                             "rank": m.rank, "zero": m.is_zero})
            rep.windows.append(m.source.window)
            if not m.is_zero and rep.verdict == "pass":
                rep.fail(f"Ext^{n}(k, beta) is nonzero", n=n)
    except Undetermined as exc:
        return _undetermined(rep, exc)
    return rep


def gorenstein_evidence(R: GradedRing, D: int) -> bool:
    """I^R_R = t^d on the certified window 0..max(D, d+2)."""
    d = krull_dimension(R)
    top = max(D, d + 2)
    mu = bass_numbers(ring_module(R), top)
    return all(m == (1 if n == d else 0) for n, m in enumerate(mu))


def check_tor_corollary(alpha: ModuleMap, witness=None, D: int = 6) -> CheckReport:
    """Tor_n(k, alpha) = 0 for alpha : V -> M with mV = 0 factoring through a
    module of finite injective dimension (finite pd over a Gorenstein ring)."""
    R = alpha.ring
    rep = CheckReport("zero-map-tor", {"ring": str(R), "source": alpha.source.name, "target": alpha.target.name, "D": D})
    if not is_singular(R):
        raise HypothesisViolated(f"{R} is regular")
    if not alpha.source.killed_by_max_ideal():
        raise HypothesisViolated("source of alpha is not annihilated by m")
    if witness is None:
        raise HypothesisViolated("no finite injective dimension witness supplied")
    gamma, delta = witness
    if gamma.target is not delta.source or not _same_map(delta.compose(gamma), alpha):
        raise HypothesisViolated("witness does not factor alpha")
    W = gamma.target
    cert = pd_certificate(W)
    if not cert.finite:
        raise HypothesisViolated("witness module has infinite projective dimension")
    if not gorenstein_evidence(R, D):
        raise HypothesisViolated(f"{R} shows no Gorenstein evidence on the certified window")
    rep.witnesses.update({"pd": cert.pd, "gorenstein": "window-certified"})
    for n in range(D + 1):
        m = induced_tor_map(alpha, n)
        rep.rows.append({"n": n, "source_dim": m.source.total, "target_dim": m.target.total,
                         "rank": m.rank, "zero": m.is_zero})
        if not m.is_zero and rep.verdict == "pass":
            rep.fail(f"Tor_{n}(k, alpha) is nonzero", n=n)
    return rep


# ----------------------------------------------------------------------
# regularity criteria

def default_samples(R: GradedRing) -> list[GradedModule]:
    return [ring_module(R), residue(R)]


def regularity_report(R: GradedRing, D: int = 6, samples=None) -> CheckReport:
    """Evaluate the five regularity criteria and check that they agree.

    (i) dim R = n; (ii) eps^n_R != 0 for some n <= D; (iii) eps^n_M != 0 for a
    sample M of finite pd; (iv) eps^d_M != 0 for every nonzero sample M;
    (v) Coker(d_n) has a free summand for some n <= D+1, where d_n is a
    differential of the minimal resolution of k.
    """
    samples = list(samples) if samples is not None else default_samples(R)
    d = krull_dimension(R)
    rep = CheckReport("regularity", {"ring": str(R), "D": D, "samples": [M.name for M in samples]})
    try:
        crit = {}
        crit["i"] = d == R.nvars
        wit = {}
        ii = [n for n in range(D + 1) if not epsilon_map(ring_module(R), n).is_zero]
        crit["ii"] = bool(ii)
        if ii:
            wit["ii"] = ii[0]
        iii = None
        for M in samples:
            if not pd_certificate(M).finite:
                continue
            for n in range(D + 1):
                if not epsilon_map(M, n).is_zero:
                    iii = (M.name, n)
                    break
            if iii:
                break
        crit["iii"] = iii is not None
        if iii:
            wit["iii"] = list(iii)
        nonzero = [M for M in samples if not M.is_zero]
        iv_vals = {M.name: not epsilon_map(M, d).is_zero for M in nonzero}
        crit["iv"] = all(iv_vals.values()) if iv_vals else True
        if crit["iv"]:
            wit["iv"] = d
        F = residue_resolution(R, D + 2)
        v = None
        for n in range(1, D + 2):
            chi = ModuleMap(free_module(R, F.tw(n)), free_module(R, F.tw(n - 1)), F.diff(n), check=False)
            if free_summand_test(chi):
                v = n
                break
        crit["v"] = v is not None
        if v is not None:
            wit["v"] = v
    except Undetermined as exc:
        return _undetermined(rep, exc)
    rep.rows.append(crit)
    rep.rows.append({"iv_by_sample": iv_vals})
    rep.witnesses.update(wit)
    if len(set(crit.values())) != 1:
        rep.fail("regularity criteria disagree", criteria=crit)
    return rep


# ----------------------------------------------------------------------
# Bass numbers

def _top_rank(beta: ModuleMap) -> int:
    """rank_k of the image of M in N/mN, which is rank_k(M / M cap mN)."""
    Q, pi = top_quotient(beta.target)
    phi = pi.compose(beta)
    from . import linalg
    return sum(linalg.rank(phi.matrix(a), beta.ring.field) for a in sorted(set(Q.twists)))


def check_bass_decomposition(beta: ModuleMap, D: int = 6) -> CheckReport:
    """mu^n(M cap mN) = mu^n(M) + r mu^{n-1}(k) with r = rank_k(M / M cap mN)."""
    R = beta.ring
    rep = CheckReport("bass-decomposition", {"ring": str(R), "M": beta.source.name, "N": beta.target.name, "D": D})
    if not is_singular(R):
        raise HypothesisViolated(f"{R} is regular")
    if not pd_certificate(beta.target).finite:
        raise HypothesisViolated("N has infinite projective dimension")
    try:
        K = intersect_max_ideal(beta)
        r = _top_rank(beta)
        rep.witnesses["r"] = r
        mk = bass_numbers(residue(R), D)
        for n in range(D + 1):
            left = ext_k(K, n).total
            right = ext_k(beta.source, n).total + r * (mk[n - 1] if n >= 1 else 0)
            rep.rows.append({"n": n, "left": left, "right": right})
            if left != right and rep.verdict == "pass":
                rep.fail("Bass numbers differ", n=n)
    except Undetermined as exc:
        return _undetermined(rep, exc)
    return rep


def check_closed_formula(inclusion: ModuleMap, D: int = 6) -> CheckReport:
    """For mN <= M <= N with pd N finite:
    mu^n(M) = sum_i mu^{n+i}(R) beta_i(N) + s beta_{n-1}(k), s = rank_k(N/M),
    plus the series forms I_M = I_R P_N(1/t) + s t P_k and I_N = I_R P_N(1/t).
    """
    M, N = inclusion.source, inclusion.target
    R = inclusion.ring
    rep = CheckReport("closed-formula", {"ring": str(R), "M": M.name, "N": N.name, "D": D})
    if not is_singular(R):
        raise HypothesisViolated(f"{R} is regular")
    cert = pd_certificate(N)
    if not cert.finite:
        raise HypothesisViolated("N has infinite projective dimension")
    quot = GradedModule(R, N.twists, list(N.relations) + [c for c in inclusion.columns if c], "N/M")
    mN = max_ideal_times(N)
    if any(quot.reduce(c) for c in mN.inclusion.columns):
        raise HypothesisViolated("mN is not contained in M")
    p = cert.pd
    try:
        s = quot.length()
        rep.witnesses.update({"s": s, "pd": p})
        muR = bass_numbers(ring_module(R), D + p)
        betaN = betti_numbers(N, p)
        betak = betti_numbers(residue(R), D)
        muM = [ext_k(M, n).total for n in range(D + 1)]
        for n in range(D + 1):
            right = sum(muR[n + i] * betaN[i] for i in range(p + 1)) + s * (betak[n - 1] if n >= 1 else 0)
            rep.rows.append({"n": n, "left": muM[n], "right": right})
            if muM[n] != right and rep.verdict == "pass":
                rep.fail("numerical formula fails", n=n)
        # series forms, through a separate route
        IR = bass_series(ring_module(R), D + p)
        PN = poincare_series(N)
        Pk = poincare_series(residue(R), D)
        t = TruncatedSeries.monomial(1)
        IM = TruncatedSeries(muM, D)
        rhs = IR * PN.substitute_inverse() + s * t * Pk
        ok_series = IM.agrees_with(rhs, D)
        IN = bass_series(N, D)
        foxby = IR * PN.substitute_inverse()
        ok_foxby = IN.agrees_with(foxby, D)
        rep.rows.append({"series_left": IM.pairs(), "series_right": rhs.truncate(D).pairs(), "agree": ok_series})
        rep.rows.append({"foxby_left": IN.pairs(), "foxby_right": foxby.truncate(D).pairs(), "agree": ok_foxby})
        if not ok_series and rep.verdict == "pass":
            rep.fail("series identity fails")
        if not ok_foxby and rep.verdict == "pass":
            rep.fail("Foxby identity fails")
    except Undetermined as exc:
        return _undetermined(rep, exc)
    return rep


def regular_remark_table(r: int, d: int, D: int) -> list[int]:
    """r C(d, n-1) for n != d+1 and 0 at n = d+1."""
    return [0 if n == d + 1 else r * (comb(d, n - 1) if n >= 1 else 0) for n in range(D + 1)]


def check_regular_remark(M: GradedModule, D: int = 6) -> CheckReport:
    """mu^n(mM) for a free module M of rank r over a regular ring."""
    R = M.ring
    rep = CheckReport("regular-remark", {"ring": str(R), "M": M.name, "D": D})
    if is_singular(R):
        raise HypothesisViolated(f"{R} is singular")
    if any(M.reduce(c) for c in M.relations):
        raise HypothesisViolated("M is not free")
    d = krull_dimension(R)
    r = M.rank
    try:
        mM = max_ideal_times(M)
        direct = [ext_k(mM, n).total for n in range(D + 1)]
    except Undetermined as exc:
        return _undetermined(rep, exc)
    table = regular_remark_table(r, d, D)
    rep.witnesses.update({"r": r, "d": d})
    for n in range(D + 1):
        rep.rows.append({"n": n, "left": direct[n], "right": table[n]})
        if direct[n] != table[n] and rep.verdict == "pass":
            rep.fail("table mismatch", n=n)
    return rep


# ----------------------------------------------------------------------
# fiber products

def check_lescot_transfer(FR: FiberRing, N: GradedModule, D: int = 6, side: str = "left") -> CheckReport:
    """I^R_N / P^R_k = I^S_N / P^S_k for N over one factor S of R = S x_k T."""
    S = FR.left if side == "left" else FR.right
    R = FR.ring
    rep = CheckReport("lescot-transfer", {"ring": str(R), "factor": str(S), "N": N.name, "D": D})
    if N.ring is not S:
        raise HypothesisViolated("N must be a module over the chosen factor")
    NR = FR.restrict_left(N) if side == "left" else FR.restrict_right(N)
    try:
        IRN = bass_series(NR, D)
        PRk = poincare_series(residue(R), D)
        ISN = bass_series(N, D)
        PSk = poincare_series(residue(S), D)
    except Undetermined as exc:
        return _undetermined(rep, exc)
    left = IRN.divide(PRk)
    right = ISN.divide(PSk)
    predicted = right * PRk
    rep.rows.append({"left": left.pairs(), "right": right.pairs(), "agree": left.agrees_with(right, D)})
    rep.rows.append({"direct_bass": IRN.pairs(), "predicted_bass": predicted.truncate(D).pairs()})
    rep.witnesses["bass_over_R"] = IRN.coefficients(0, D)
    if not left.agrees_with(right, D):
        first = next(e for e in range(D + 1) if left[e] != right[e])
        rep.fail("quotients differ", n=first)
    return rep


def check_fiber_bass(FR: FiberRing, N: GradedModule, P: GradedModule, matching=None, D: int = 6) -> CheckReport:
    """I^R_{mM}/P^R_k = I^S_S P^S_N(1/t)/P^S_k + I^T_T P^T_P(1/t)/P^T_k + 2vt
    for M = N x_V P, together with mM = m_S N (+) m_T P."""
    S, T, R = FR.left, FR.right, FR.ring
    rep = CheckReport("fiber-bass", {"ring": str(R), "N": N.name, "P": P.name, "D": D})
    if not (is_singular(S) and is_singular(T)):
        raise HypothesisViolated("both factors must be singular")
    cN, cP = pd_certificate(N), pd_certificate(P)
    if not (cN.finite and cP.finite):
        raise HypothesisViolated("N and P need finite projective dimension")
    fm = fiber_module(FR, N, P, matching)
    v = fm.v
    rep.witnesses["v"] = v
    try:
        mM = max_ideal_times(fm.module)
        IRm = bass_series(mM, D)
        PRk = poincare_series(residue(R), D)
        left = IRm.divide(PRk)
        t = TruncatedSeries.monomial(1)

        def side(A, X, pd):
            IA = bass_series(ring_module(A), D + pd)
            return (IA * poincare_series(X).substitute_inverse()).divide(poincare_series(residue(A), D))

        right = side(S, N, cN.pd) + side(T, P, cP.pd) + 2 * v * t
        ok = left.agrees_with(right, D)
        rep.rows.append({"bass_mM": IRm.coefficients(0, D), "left": left.truncate(D).pairs(),
                         "right": right.truncate(D).pairs(), "agree": ok})
        if not ok:
            first = next(e for e in range(D + 1) if left[e] != right[e])
            rep.fail("series identity fails", n=first)
        # decomposition m M = m_S N (+) m_T P, over R
        mN = FR.restrict_left(max_ideal_times(N))
        mP = FR.restrict_right(max_ideal_times(P))
        hil_ok = all(mM.dim(j) == mN.dim(j) + mP.dim(j) for j in range(0, D + 3))
        bass_sum = [a + b for a, b in zip(bass_numbers(mN, D), bass_numbers(mP, D))]
        bass_ok = bass_sum == IRm.coefficients(0, D)
        rep.rows.append({"decomposition_hilbert": hil_ok, "decomposition_bass": bass_ok,
                         "bass_sum": bass_sum})
        if not (hil_ok and bass_ok) and rep.verdict == "pass":
            rep.fail("m M does not decompose as m_S N (+) m_T P")
    except Undetermined as exc:
        return _undetermined(rep, exc)
    return rep


__all__ = [
    "CheckReport", "check_zero_map_theorem", "check_tor_corollary", "regularity_report",
    "check_bass_decomposition", "check_closed_formula", "check_regular_remark",
    "check_lescot_transfer", "check_fiber_bass", "regular_remark_table", "gorenstein_evidence",
    "is_singular",
]
