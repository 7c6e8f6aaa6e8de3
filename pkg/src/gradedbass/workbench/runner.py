"""Execute a parsed workbench script and collect a machine-readable report."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field as dc_field

from .. import __version__
from ..checks import (
    check_bass_decomposition,
    check_closed_formula,
    check_fiber_bass,
    check_lescot_transfer,
    check_regular_remark,
    check_tor_corollary,
    check_zero_map_theorem,
    regularity_report,
)
from ..dense import MonomialAlgebra, dense_bass_ring, dense_betti_residue
from ..errors import HypothesisViolated, InputError, NotStabilized, Undetermined, Unsupported
from ..field import Field
from ..fiber import fiber_ring
from ..homology import (
    ext_k,
    induced_ext_map,
    induced_tor_map,
    residue,
    ring_module,
    window_settings,
)
from ..poly import exps_of, format_poly
from ..resolution import betti_numbers, graded_betti_numbers, koszul_complex, minimal_free_resolution
from ..series import TruncatedSeries, bass_series, poincare_series
from ..stable import additivity_check, eta_map, matrix_factorization, stable_ext
from .dsl import Options, ParseError, Statement, WorkbenchScript, parse_script, render_statement

EXIT_PASS, EXIT_FAIL, EXIT_INPUT, EXIT_UNDETERMINED = 0, 1, 2, 3


@dataclass
class RunOptions:
    bound: int = 6
    degree_cap: int = 24
    field: Field | None = None
    window_slack: int = 4
    seed: int = 0
    timings: bool = False


@dataclass
class CommandResult:
    name: str
    inputs: dict
    result: dict
    verdict: str
    window: list | None = None
    millis: float | None = None

    def to_dict(self) -> dict:
        return {"name": self.name, "inputs": self.inputs, "result": self.result,
                "verdict": self.verdict, "window": self.window, "millis": self.millis}


@dataclass
class Report:
    commands: list = dc_field(default_factory=list)
    error: dict | None = None

    @property
    def exit_code(self) -> int:
        if self.error is not None:
            return EXIT_INPUT
        verdicts = {c.verdict for c in self.commands}
        if "error" in verdicts:
            return EXIT_INPUT
        if "fail" in verdicts:
            return EXIT_FAIL
        if "undetermined" in verdicts:
            return EXIT_UNDETERMINED
        return EXIT_PASS

    def to_dict(self) -> dict:
        out = {"version": __version__, "commands": [c.to_dict() for c in self.commands]}
        if self.error is not None:
            out["error"] = self.error
        out["exit_code"] = self.exit_code
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)

    def to_text(self) -> str:
        lines = []
        if self.error is not None:
            lines.append(f"[error] {self.error['kind']}: {self.error['message']}")
        for c in self.commands:
            lines.append(f"[{c.verdict}] {c.inputs['statement']}: {_summary(c)}")
        lines.append(f"exit code {self.exit_code}")
        return "\n".join(lines)


def _summary(c: CommandResult) -> str:
    r = c.result
    if "holds" in r:
        return f"holds={r['holds']} sum={r['sum_dim']} parts={','.join(map(str, r['part_dims']))}"
    if "size" in r:
        return f"size={r['size']} f={r['f']} verified={r['verified']}"
    if "variables" in r:
        return f"[{','.join(r['variables'])}]/({', '.join(r['ideal'])})"
    for key in ("values", "dims", "betti", "ranks", "coefficients", "message"):
        if key in r:
            v = r[key]
            if isinstance(v, list) and v and isinstance(v[0], list):
                return " ".join(f"{a}:{b}" for a, b in v)
            if isinstance(v, list):
                return ",".join(str(x) for x in v)
            return str(v)
    if "rows" in r:
        return f"{len(r['rows'])} rows"
    return ""


# ----------------------------------------------------------------------

def run_text(text: str, opts: RunOptions | None = None) -> Report:
    """Parse and run; a parse failure becomes a report with exit code 2."""
    opts = opts or RunOptions()
    try:
        script = parse_script(text, Options(opts.field, opts.degree_cap, opts.seed))
    except ParseError as exc:
        return Report([], {"kind": type(exc).__name__, "message": str(exc), "line": exc.line, "column": exc.col})
    except Undetermined as exc:
        rep = Report()
        rep.commands.append(CommandResult("parse", {"statement": "<script>"},
                                          {"message": f"{type(exc).__name__}: {exc}"}, "undetermined"))
        return rep
    return run(script, opts)


def run(script: WorkbenchScript, opts: RunOptions | None = None) -> Report:
    opts = opts or RunOptions()
    rep = Report()
    with window_settings(slack=opts.window_slack):
        for st in script.commands:
            t0 = time.perf_counter()
            res = _run_command(st, script, opts)
            if opts.timings:
                res.millis = round((time.perf_counter() - t0) * 1000.0, 3)
            rep.commands.append(res)
    return rep


def _run_command(st: Statement, env: WorkbenchScript, opts: RunOptions) -> CommandResult:
    name = st.head if st.head != "verify" else f"verify {st.args[0]}"
    inputs = {"statement": render_statement(st), "line": st.line}
    try:
        result, verdict, window = _DISPATCH[st.head](st, env, opts)
    except HypothesisViolated as exc:
        ok = st.expect == "violated"
        return CommandResult(name, inputs, {"message": f"HypothesisViolated: {exc}"}, "pass" if ok else "error")
    except (Undetermined, NotStabilized, Unsupported) as exc:
        return CommandResult(name, inputs, {"message": f"{type(exc).__name__}: {exc}"}, "undetermined")
    except InputError as exc:
        return CommandResult(name, inputs, {"message": f"{type(exc).__name__}: {exc}"}, "error")
    if st.expect == "violated":
        verdict = "fail"
        result = dict(result, message="expected a hypothesis violation")
    return CommandResult(name, inputs, result, verdict, window)


# ----------------------------------------------------------------------
# helpers

def _ints(args, start: int) -> list[int]:
    return [int(a) for a in args[start:] if a.lstrip("-").isdigit()]


def _bound(st: Statement, opts: RunOptions, start: int) -> int:
    nums = _ints(st.args, start)
    return nums[0] if nums else opts.bound


def _expect_list(st: Statement, values: list) -> str:
    if st.expect is None:
        return "ok"
    try:
        want = [int(x) for x in st.expect.replace(" ", "").split(",")]
    except ValueError:
        raise InputError(f"expected a comma-separated integer list, got '{st.expect}'")
    return "pass" if want == list(values) else "fail"


def _expect_flag(st: Statement, flags: dict) -> str:
    if st.expect is None:
        return "ok"
    if st.expect not in flags:
        raise InputError(f"unknown expectation '{st.expect}'; choose from {', '.join(sorted(flags))}")
    return "pass" if flags[st.expect] else "fail"


def _strands(gv) -> list:
    return [[j, d] for j, d in sorted(gv.nonzero().items())]


def _map_rows(reports) -> list:
    return [{"n": n, "source_dim": m.source.total, "target_dim": m.target.total, "rank": m.rank,
             "zero": m.is_zero, "injective": m.is_injective, "surjective": m.is_surjective}
            for n, m in reports]


def _map_flags(rows) -> dict:
    return {
        "zero": all(r["zero"] for r in rows),
        "nonzero": any(not r["zero"] for r in rows),
        "injective": all(r["injective"] for r in rows),
        "surjective": all(r["surjective"] for r in rows),
        "bijective": all(r["injective"] and r["surjective"] for r in rows),
    }


def _check_verdict(st: Statement, rep) -> str:
    if st.expect in (None, "pass"):
        return rep.verdict
    if st.expect == "fail":
        return "pass" if rep.verdict == "fail" else ("undetermined" if rep.verdict == "undetermined" else "fail")
    raise InputError(f"unknown expectation '{st.expect}' for a check")


# ----------------------------------------------------------------------
# commands

def _cmd_resolve(st, env, opts):
    M = env.modules[st.args[0]]
    D = _bound(st, opts, 1)
    F = minimal_free_resolution(M, D)
    betti = [F.rank(i) for i in range(D + 1)]
    graded = [[i, d, c] for (i, d), c in sorted(graded_betti_numbers(M, D).items())]
    result = {"betti": betti, "graded": graded, "d_squared_zero": F.check_d_squared(),
              "minimal": F.is_minimal_check()}
    verdict = _expect_list(st, betti)
    if not (result["d_squared_zero"] and result["minimal"]):
        verdict = "fail"
    return result, verdict, None


def _cmd_betti(st, env, opts):
    M = env.modules[st.args[0]]
    D = _bound(st, opts, 1)
    values = betti_numbers(M, D)
    return {"values": values}, _expect_list(st, values), None


def _cmd_bass(st, env, opts):
    M = env.modules[st.args[0]]
    D = _bound(st, opts, 1)
    spaces = [ext_k(M, n) for n in range(D + 1)]
    values = [g.total for g in spaces]
    result = {"values": values, "strands": [_strands(g) for g in spaces]}
    return result, _expect_list(st, values), [g.window for g in spaces]


def _cmd_ext_map(st, env, opts):
    beta = env.maps[st.args[0]]
    D = _bound(st, opts, 1)
    reps = [(n, induced_ext_map(beta, n)) for n in range(D + 1)]
    rows = _map_rows(reps)
    return {"rows": rows}, _expect_flag(st, _map_flags(rows)), [m.source.window for _, m in reps]


def _cmd_tor_map(st, env, opts):
    alpha = env.maps[st.args[0]]
    D = _bound(st, opts, 1)
    reps = [(n, induced_tor_map(alpha, n)) for n in range(D + 1)]
    rows = _map_rows(reps)
    return {"rows": rows}, _expect_flag(st, _map_flags(rows)), [m.source.window for _, m in reps]


def _cmd_koszul(st, env, opts):
    R = env.rings[st.args[0]]
    K = koszul_complex(R)
    n = R.nvars
    ranks = [K.rank(i) for i in range(n + 1)]
    resolves = betti_numbers(residue(R), n + 1) == ranks + [0]
    result = {"ranks": ranks, "d_squared_zero": K.check_d_squared(), "resolves_k": resolves}
    verdict = _expect_flag(st, {"resolves": resolves, "fails": not resolves})
    if not result["d_squared_zero"]:
        verdict = "fail"
    return result, verdict, None


def _cmd_stable(st, env, opts):
    L, M = env.modules[st.args[0]], env.modules[st.args[1]]
    nums = _ints(st.args, 2)
    lo, hi = (nums[0], nums[1]) if len(nums) >= 2 else (-4, opts.bound)
    rep = stable_ext(L, M, (lo, hi))
    dims = [[n, rep.dims[n]] for n in range(lo, hi + 1)]
    result = {"dims": dims, "branch": rep.branch, "periodic": rep.periodic,
              "stabilization": rep.stabilization, "note": rep.note}
    if st.expect is not None and st.expect in ("periodic", "zero"):
        verdict = _expect_flag(st, {"periodic": rep.periodic, "zero": all(d == 0 for _, d in dims)})
    else:
        verdict = _expect_list(st, [d for _, d in dims])
    window = [[n, rep.windows[n]] for n in sorted(rep.windows)] or None
    return result, verdict, window


def _cmd_eta(st, env, opts):
    L, M = env.modules[st.args[0]], env.modules[st.args[1]]
    nums = _ints(st.args, 2)
    lo, hi = (nums[0], nums[1]) if len(nums) >= 2 else (0, opts.bound)
    reps = [(n, eta_map(L, M, n)) for n in range(lo, hi + 1)]
    rows = _map_rows(reps)
    return {"rows": rows}, _expect_flag(st, _map_flags(rows)), [m.source.window for _, m in reps]


def _cmd_additivity(st, env, opts):
    L = env.modules[st.args[0]]
    n = int(st.args[1])
    family = [env.modules[a] for a in st.args[2:]]
    rep = additivity_check(L, family, n)
    result = {"holds": rep.holds, "n": rep.n, "sum_dim": rep.sum_dim, "part_dims": list(rep.part_dims),
              "ext_vertical_bijective": rep.ext_vertical_bijective,
              "stable_vertical_bijective": rep.stable_vertical_bijective,
              "square_commutes": rep.square_commutes, "blocks_diagonal": rep.blocks_diagonal}
    if st.expect is None:
        verdict = "pass" if rep.holds else "fail"
    else:
        verdict = _expect_flag(st, {"holds": rep.holds, "fails": not rep.holds})
    return result, verdict, None


def _cmd_matfac(st, env, opts):
    L = env.modules[st.args[0]]
    mf = matrix_factorization(L)
    result = {"size": mf.size, "s": mf.s, "A": mf.rows("A"), "B": mf.rows("B"),
              "f": format_poly(mf.f, L.ring.variables, L.ring.field), "verified": mf.verify(),
              "empty": mf.is_empty}
    verdict = "pass" if result["verified"] else "fail"
    if st.expect is not None:
        verdict = _expect_flag(st, {"empty": mf.is_empty, "nonempty": not mf.is_empty}) if verdict == "pass" else verdict
    return result, verdict, None


def _cmd_fiber(st, env, opts):
    S, T = env.rings[st.args[0]], env.rings[st.args[1]]
    FR = fiber_ring(S, T)
    R = FR.ring
    result = {"variables": list(R.variables),
              "ideal": [format_poly(g, R.variables, R.field) for g in R.ideal_gens],
              "hilbert_checked_to": FR.hilbert_checked_to}
    return result, "pass", None


def _parse_coeffs(text: str) -> TruncatedSeries:
    try:
        return TruncatedSeries.polynomial([int(c) for c in text.split(",")])
    except ValueError:
        raise InputError(f"series coefficients must be integers, got '{text}'")


def _cmd_series(st, env, opts):
    kind = st.args[0]
    if kind == "divide":
        if len(st.args) < 3:
            raise InputError("series divide needs two coefficient lists")
        D = _bound(st, opts, 3)
        s = _parse_coeffs(st.args[1]).divide(_parse_coeffs(st.args[2]), D)
    else:
        M = env.modules[st.args[1]]
        D = _bound(st, opts, 2)
        s = bass_series(M, D) if kind == "bass" else poincare_series(M, D)
    top = D if s.hi is None else min(D, s.hi)
    coeffs = s.coefficients(0, top)
    result = {"series": s.pairs(), "certified_to": s.hi, "coefficients": coeffs}
    return result, _expect_list(st, coeffs), None


def _names_after(args, start):
    return [a for a in args[start:] if not a.lstrip("-").isdigit() and a != "via"]


def _via(st, env):
    if "via" not in st.args:
        return None
    i = st.args.index("via")
    try:
        return env.maps[st.args[i + 1]], env.maps[st.args[i + 2]]
    except (IndexError, KeyError):
        raise InputError("'via' needs two map names (gamma then delta)")


def _monomial_algebra(R) -> MonomialAlgebra:
    gens = []
    for g in R.ideal_gens:
        if len(g) != 1:
            raise HypothesisViolated("the oracle needs a monomial ideal")
        gens.append(exps_of(next(iter(g))))
    try:
        return MonomialAlgebra(R.nvars, gens, R.field)
    except ValueError as exc:
        raise HypothesisViolated(str(exc))


def _cmd_verify(st, env, opts):
    check = st.args[0]
    D = _bound(st, opts, 1)
    names = _names_after(st.args, 1)
    if "via" in st.args:
        names = names[:st.args.index("via") - 1]
    if check == "zero-map":
        rep = check_zero_map_theorem(env.maps[names[0]], _via(st, env), D)
    elif check == "tor-zero":
        rep = check_tor_corollary(env.maps[names[0]], _via(st, env), D)
    elif check == "regularity":
        R = env.rings[names[0]]
        samples = [env.modules[n] for n in names[1:]] or None
        rep = regularity_report(R, D, samples)
    elif check == "bass-decomposition":
        rep = check_bass_decomposition(env.maps[names[0]], D)
    elif check == "closed-formula":
        rep = check_closed_formula(env.maps[names[0]], D)
    elif check == "regular-remark":
        rep = check_regular_remark(env.modules[names[0]], D)
    elif check == "lescot":
        FR = env.fibers.get(names[0])
        if FR is None:
            raise InputError(f"'{names[0]}' is not a fiber product")
        side = "right" if "right" in names else "left"
        rep = check_lescot_transfer(FR, env.modules[names[1]], D, side)
    elif check == "fiber-bass":
        FR = env.fibers.get(names[0])
        if FR is None:
            raise InputError(f"'{names[0]}' is not a fiber product")
        rep = check_fiber_bass(FR, env.modules[names[1]], env.modules[names[2]], None, D)
    elif check == "oracle":
        return _oracle(st, env.rings[names[0]], D)
    else:  # unreachable after parsing
        raise InputError(f"unknown check '{check}'")
    d = rep.to_dict()
    return d, _check_verdict(st, rep), rep.windows or None


def _oracle(st, R, D):
    A = _monomial_algebra(R)
    pipe_betti = betti_numbers(residue(R), D)
    pipe_bass = [ext_k(ring_module(R), n).total for n in range(D + 1)]
    dense_betti = dense_betti_residue(A, D)
    dense_bass = dense_bass_ring(A, D)
    agree = pipe_betti == dense_betti and pipe_bass == dense_bass
    result = {"ideal": [list(g) for g in A.gens], "betti_pipeline": pipe_betti, "betti_dense": dense_betti,
              "bass_pipeline": pipe_bass, "bass_dense": dense_bass, "agree": agree}
    verdict = "pass" if agree else "fail"
    if st.expect == "fail":
        verdict = "fail" if agree else "pass"
    return result, verdict, None


_DISPATCH = {
    "resolve": _cmd_resolve, "betti": _cmd_betti, "bass": _cmd_bass, "ext-map": _cmd_ext_map,
    "tor-map": _cmd_tor_map, "koszul": _cmd_koszul, "stable": _cmd_stable, "eta": _cmd_eta,
    "additivity": _cmd_additivity, "matfac": _cmd_matfac, "fiber": _cmd_fiber, "series": _cmd_series,
    "verify": _cmd_verify,
}


__all__ = ["RunOptions", "CommandResult", "Report", "run", "run_text",
           "EXIT_PASS", "EXIT_FAIL", "EXIT_INPUT", "EXIT_UNDETERMINED"]
