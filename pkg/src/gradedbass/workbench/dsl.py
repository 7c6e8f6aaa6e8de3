"""Line-oriented workbench language.

    ring R = F32003[x,y]/(x^2)
    module M over R = cokernel [[y]]
    map pi : M -> Q = natural
    bass M 6 expect 0,1,0,0

Parsing produces :class:`Statement` values (rendered back canonically by
:func:`render`) and elaborates definitions into rings, modules and maps, so
that a parse error, an unknown name or a non-homogeneous literal is reported
with its line and column before anything runs.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass, field as dc_field

from ..errors import InputError
from ..field import Field
from ..fiber import FiberRing, fiber_module, fiber_ring
from ..modules import (
    ModuleMap,
    cokernel,
    direct_sum,
    free_module,
    identity_map,
    max_ideal_times,
    quotient_module,
    residue_field,
    top_quotient,
)
from ..poly import PolyParseError, key_degree, mono, parse_poly
from ..rings import GradedRing


class ParseError(InputError):
    def __init__(self, msg: str, line: int, col: int):
        super().__init__(f"line {line}, column {col}: {msg}")
        self.line = line
        self.col = col
        self.reason = msg


class UnknownName(ParseError):
    pass


class DimensionMismatch(ParseError):
    pass


COMMANDS = (
    "resolve", "betti", "bass", "ext-map", "tor-map", "koszul", "stable", "eta",
    "additivity", "matfac", "fiber", "series", "verify",
)
CHECKS = (
    "zero-map", "tor-zero", "regularity", "bass-decomposition", "closed-formula",
    "regular-remark", "lescot", "fiber-bass", "oracle",
)


@dataclass
class Statement:
    line: int
    kind: str  # ring | module | map | command
    name: str | None
    head: str  # constructor or command keyword
    args: list = dc_field(default_factory=list)
    ring: str | None = None
    source: str | None = None
    target: str | None = None
    expect: str | None = None
    text: str = ""


@dataclass
class Options:
    field: Field | None = None
    degree_cap: int = 24
    seed: int = 0


@dataclass
class WorkbenchScript:
    statements: list
    rings: dict
    modules: dict
    maps: dict
    fibers: dict
    random_specs: dict = dc_field(default_factory=dict)

    @property
    def commands(self) -> list:
        return [s for s in self.statements if s.kind == "command"]


# ----------------------------------------------------------------------
# low-level scanning

def _split_top(text: str, sep: str = ",") -> list[tuple[str, int]]:
    """Split on ``sep`` outside brackets; returns (piece, offset) pairs."""
    out, depth, start = [], 0, 0
    for i, ch in enumerate(text):
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        elif ch == sep and depth == 0:
            out.append((text[start:i], start))
            start = i + 1
    out.append((text[start:], start))
    return out


def _matching(text: str, i: int) -> int:
    """Index of the bracket closing the one at ``i`` (or -1)."""
    opening = text[i]
    closing = {"(": ")", "[": "]"}[opening]
    depth = 0
    for j in range(i, len(text)):
        if text[j] == opening:
            depth += 1
        elif text[j] == closing:
            depth -= 1
            if depth == 0:
                return j
    return -1


_NAME = r"[A-Za-z_][A-Za-z_0-9']*"
_RING_HEAD = re.compile(rf"^ring\s+({_NAME})\s*=\s*(.*)$")
_MODULE_HEAD = re.compile(rf"^module\s+({_NAME})\s+over\s+({_NAME})\s*=\s*(.*)$")
_MAP_HEAD = re.compile(rf"^map\s+({_NAME})\s*:\s*({_NAME})\s*->\s*({_NAME})\s*=\s*(.*)$")
_COMPOSE = re.compile(rf"^map\s+({_NAME})\s*=\s*compose\s+({_NAME})\s+({_NAME})\s*$")
_FIELD_RING = re.compile(r"^(k|Q|F\d+)\s*\[([^\]]*)\]\s*(?:/\s*\((.*)\))?\s*$")


# ----------------------------------------------------------------------

def parse_script(text: str, options: Options | None = None) -> WorkbenchScript:
    """Parse and elaborate a script; the first problem raises ParseError."""
    opts = options or Options()
    env = WorkbenchScript([], {}, {}, {}, {})
    rng = random.Random(opts.seed)
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        indent = len(line) - len(line.lstrip())
        body = line.strip()
        st = _parse_line(body, lineno, indent)
        _elaborate(st, env, opts, rng, body, indent)
        env.statements.append(st)
    return env


def _err(msg, line, col, cls=ParseError):
    raise cls(msg, line, col)


def _parse_line(body: str, ln: int, ind: int) -> Statement:
    word = body.split()[0]
    if word == "ring":
        m = _RING_HEAD.match(body)
        if not m:
            _err("expected 'ring NAME = ...'", ln, ind + 1)
        rhs = m.group(2).strip()
        parts = rhs.split()
        if parts and parts[0] == "fiber":
            if len(parts) != 3:
                _err("expected 'fiber S T'", ln, ind + body.index(rhs) + 1)
            return Statement(ln, "ring", m.group(1), "fiber", parts[1:], text=body)
        if parts and parts[0] == "random":
            if len(parts) != 2 or parts[1] not in ("2", "3"):
                _err("expected 'random 2' or 'random 3'", ln, ind + body.index(rhs) + 1)
            return Statement(ln, "ring", m.group(1), "random", [int(parts[1])], text=body)
        return Statement(ln, "ring", m.group(1), "presentation", [rhs], text=body)
    if word == "module":
        m = _MODULE_HEAD.match(body)
        if not m:
            _err("expected 'module NAME over RING = ...'", ln, ind + 1)
        rhs = m.group(3).strip()
        head = rhs.split()[0] if rhs.split() else ""
        rest = rhs[len(head):].strip()
        return Statement(ln, "module", m.group(1), head, [rest], ring=m.group(2), text=body)
    if word == "map":
        m = _COMPOSE.match(body)
        if m:
            return Statement(ln, "map", m.group(1), "compose", [m.group(2), m.group(3)], text=body)
        m = _MAP_HEAD.match(body)
        if not m:
            _err("expected 'map NAME : SOURCE -> TARGET = ...'", ln, ind + 1)
        rhs = m.group(4).strip()
        if rhs.startswith("["):
            return Statement(ln, "map", m.group(1), "matrix", [rhs], source=m.group(2), target=m.group(3), text=body)
        return Statement(ln, "map", m.group(1), rhs, [], source=m.group(2), target=m.group(3), text=body)
    if word in COMMANDS:
        toks = body.split()
        expect = None
        if "expect" in toks:
            i = toks.index("expect")
            expect = " ".join(toks[i + 1:])
            if not expect:
                _err("'expect' needs a value", ln, ind + len(body) + 1)
            toks = toks[:i]
        return Statement(ln, "command", None, word, toks[1:], expect=expect, text=body)
    _err(f"unknown statement '{word}'", ln, ind + 1)


def _col(body: str, ind: int, needle: str, start: int = 0) -> int:
    i = body.find(needle, start)
    return ind + (i if i >= 0 else 0) + 1


def _lookup(table: dict, name: str, what: str, st: Statement, body: str, ind: int):
    if name not in table:
        _err(f"unknown {what} '{name}'", st.line, _col(body, ind, name), UnknownName)
    return table[name]


def _unique(env: WorkbenchScript, st: Statement, body: str, ind: int):
    if st.name in env.rings or st.name in env.modules or st.name in env.maps:
        _err(f"name '{st.name}' is already defined", st.line, _col(body, ind, st.name))


def _random_artinian(n: int, rng: random.Random) -> list[tuple]:
    """Pure powers x_i^a (a in 2..4) plus one or two mixed monomials of degree 3..4."""
    gens = []
    for i in range(n):
        e = [0] * n
        e[i] = rng.randint(2, 4)
        gens.append(tuple(e))
    for _ in range(rng.randint(1, 2)):
        for _attempt in range(20):
            d = rng.randint(3, 4)
            e = [0] * n
            for _ in range(d):
                e[rng.randrange(n)] += 1
            if sum(1 for a in e if a) < 2:
                continue
            if any(all(a >= b for a, b in zip(e, g)) for g in gens):
                continue
            gens.append(tuple(e))
            break
    return gens


def _poly_list(text: str, R_vars, field, st, body, ind, base):
    out = []
    for piece, off in _split_top(text):
        if not piece.strip():
            _err("empty polynomial", st.line, ind + base + off + 1)
        try:
            out.append(parse_poly(piece, R_vars, field))
        except PolyParseError as exc:
            _err(f"{exc}", st.line, ind + base + off + getattr(exc, "col", 0) + 1)
    return out


def _matrix(text: str, R: GradedRing, st, body, ind, base):
    """'[[a, b], [c, d]]' -> rows of polynomials."""
    text = text.strip()
    if not (text.startswith("[") and text.endswith("]")):
        _err("matrix must look like [[...], ...]", st.line, ind + base + 1)
    inner = text[1:-1]
    rows = []
    for piece, off in _split_top(inner):
        p = piece.strip()
        if not p:
            continue
        lead = piece.index(p[0])
        if not (p.startswith("[") and p.endswith("]")):
            _err("matrix row must be bracketed", st.line, ind + base + 1 + off + lead + 1)
        rows.append(_poly_list(p[1:-1], R.variables, R.field, st, body, ind, base + 1 + off + lead + 1))
    if rows and any(len(r) != len(rows[0]) for r in rows):
        _err("matrix rows have different lengths", st.line, ind + base + 1, DimensionMismatch)
    return rows


def _int_tuple(text: str, st, body, ind):
    t = text.strip()
    if not (t.startswith("(") and t.endswith(")")):
        _err("expected a tuple like (0, 1)", st.line, _col(body, ind, t))
    try:
        return [int(x) for x in t[1:-1].split(",") if x.strip()]
    except ValueError:
        _err("tuple entries must be integers", st.line, _col(body, ind, t))


def _elaborate(st: Statement, env: WorkbenchScript, opts: Options, rng, body: str, ind: int):
    try:
        _elaborate_inner(st, env, opts, rng, body, ind)
    except ParseError:
        raise
    except InputError as exc:
        _err(f"{type(exc).__name__}: {exc}", st.line, ind + 1)


def _elaborate_inner(st, env, opts, rng, body, ind):
    if st.kind == "ring":
        _unique(env, st, body, ind)
        if st.head == "fiber":
            S = _lookup(env.rings, st.args[0], "ring", st, body, ind)
            T = _lookup(env.rings, st.args[1], "ring", st, body, ind)
            FR = fiber_ring(S, T, name=st.name)
            env.rings[st.name] = FR.ring
            env.fibers[st.name] = FR
            return
        if st.head == "random":
            n = st.args[0]
            field = opts.field or Field()
            gens = _random_artinian(n, rng)
            names = ["x", "y", "z"][:n]
            R = GradedRing(field, names, [{mono(g): field.one} for g in gens], st.name, opts.degree_cap)
            env.rings[st.name] = R
            env.random_specs[st.name] = gens
            return
        rhs = st.args[0]
        m = _FIELD_RING.match(rhs)
        if not m:
            _err("expected FIELD[vars] or FIELD[vars]/(gens)", st.line, _col(body, ind, rhs))
        fname, vars_text, ideal = m.group(1), m.group(2), m.group(3)
        if fname == "k":
            field = opts.field or Field()
        elif fname == "Q":
            field = Field.rationals()
        else:
            try:
                field = Field(int(fname[1:]))
            except InputError as exc:
                _err(f"BadPrime: {exc}", st.line, _col(body, ind, fname))
        variables = [v.strip() for v in vars_text.split(",") if v.strip()]
        for v in variables:
            if not re.fullmatch(_NAME, v):
                _err(f"bad variable name '{v}'", st.line, _col(body, ind, v))
        gens = []
        if ideal is not None:
            base = body.index("/(") + 2 if "/(" in body else body.index("(") + 1
            gens = _poly_list(ideal, variables, field, st, body, ind, base)
        try:
            env.rings[st.name] = GradedRing(field, variables, gens, st.name, opts.degree_cap)
        except (InputError, ValueError) as exc:
            _err(f"{type(exc).__name__}: {exc}", st.line, _col(body, ind, ideal or rhs))
        return

    if st.kind == "module":
        _unique(env, st, body, ind)
        R = _lookup(env.rings, st.ring, "ring", st, body, ind)
        rest = st.args[0]
        base = body.index(st.head, body.index("=")) + len(st.head) if st.head else 0
        base += len(body[base:]) - len(body[base:].lstrip())
        head = st.head
        if head == "free":
            twists = _int_tuple(rest, st, body, ind) if rest else [0]
            M = free_module(R, twists, st.name)
        elif head == "residue":
            M = residue_field(R, int(rest) if rest else 0)
            M.name = st.name
        elif head == "cokernel":
            tw = None
            if " twists " in f" {rest} ":
                i = rest.index("twists")
                tw = _int_tuple(rest[i + len("twists"):], st, body, ind)
                rest = rest[:i].strip()
            rows = _matrix(rest, R, st, body, ind, base)
            if tw is not None and len(tw) != len(rows):
                _err("twist list length does not match the number of rows", st.line,
                     _col(body, ind, "twists"), DimensionMismatch)
            if tw is None:
                tw = _default_twists(rows)
            M = cokernel(R, rows, tw, st.name)
        elif head == "quotient":
            twist = 0
            if " twist " in f" {rest} ":
                i = rest.index("twist")
                twist = int(rest[i + len("twist"):].strip())
                rest = rest[:i].strip()
            if not (rest.startswith("(") and rest.endswith(")")):
                _err("expected quotient (p1, p2, ...)", st.line, ind + base + 1)
            polys = _poly_list(rest[1:-1], R.variables, R.field, st, body, ind, base + 1)
            M = quotient_module(R, polys, twist, st.name)
        elif head in ("maxideal", "top"):
            N = _lookup(env.modules, rest, "module", st, body, ind)
            _same_ring(N, R, st, body, ind, rest)
            if head == "maxideal":
                M = max_ideal_times(N, st.name)
                env.maps[f"{st.name}.inclusion"] = M.inclusion
            else:
                M, pi = top_quotient(N)
                M.name = st.name
                env.maps[f"{st.name}.projection"] = pi
        elif head == "sum":
            parts = [_lookup(env.modules, n, "module", st, body, ind) for n in rest.split()]
            for P, n in zip(parts, rest.split()):
                _same_ring(P, R, st, body, ind, n)
            if not parts:
                _err("sum needs at least one module", st.line, ind + base + 1)
            M = direct_sum(*parts, name=st.name)
        elif head == "fiber":
            FR = env.fibers.get(st.ring)
            if FR is None:
                _err(f"ring '{st.ring}' is not a fiber product", st.line, _col(body, ind, st.ring))
            names = rest.split()
            if len(names) != 2:
                _err("expected 'fiber N P'", st.line, ind + base + 1)
            N = _lookup(env.modules, names[0], "module", st, body, ind)
            P = _lookup(env.modules, names[1], "module", st, body, ind)
            fm = fiber_module(FR, N, P, name=st.name)
            M = fm.module
            M.fiber_data = fm
        elif head == "restrict":
            FR = env.fibers.get(st.ring)
            if FR is None:
                _err(f"ring '{st.ring}' is not a fiber product", st.line, _col(body, ind, st.ring))
            N = _lookup(env.modules, rest, "module", st, body, ind)
            if N.ring is FR.left:
                M = FR.restrict_left(N, st.name)
            elif N.ring is FR.right:
                M = FR.restrict_right(N, st.name)
            else:
                _err("module is not over a factor of this fiber product", st.line, _col(body, ind, rest))
        else:
            _err(f"unknown module constructor '{head}'", st.line, _col(body, ind, head or "="))
        env.modules[st.name] = M
        return

    if st.kind == "map":
        _unique(env, st, body, ind)
        if st.head == "compose":
            f = _lookup(env.maps, st.args[0], "map", st, body, ind)
            g = _lookup(env.maps, st.args[1], "map", st, body, ind)
            if g.target is not f.source:
                _err("maps are not composable", st.line, _col(body, ind, st.args[0]), DimensionMismatch)
            env.maps[st.name] = f.compose(g)
            return
        S = _lookup(env.modules, st.source, "module", st, body, ind)
        T = _lookup(env.modules, st.target, "module", st, body, ind)
        if S.ring is not T.ring:
            _err("source and target live over different rings", st.line, _col(body, ind, st.target))
        R = S.ring
        if st.head == "matrix":
            base = body.index("=", body.index("->")) + 1
            base += len(body[base:]) - len(body[base:].lstrip())
            rows = _matrix(st.args[0], R, st, body, ind, base)
            if len(rows) != T.rank or any(len(r) != S.rank for r in rows):
                _err(f"map matrix must be {T.rank} x {S.rank}", st.line, ind + base + 1, DimensionMismatch)
            cols = []
            for j in range(S.rank):
                v = {}
                for i in range(T.rank):
                    for k, c in rows[i][j].items():
                        v[(i,) + k[1:]] = c
                cols.append(v)
            env.maps[st.name] = ModuleMap(S, T, cols, name=st.name)
        elif st.head == "natural":
            if S.rank != T.rank:
                _err("natural map needs equally many generators", st.line, _col(body, ind, "natural"),
                     DimensionMismatch)
            env.maps[st.name] = ModuleMap(S, T, [T.gen(i) for i in range(T.rank)], name=st.name)
        elif st.head == "identity":
            if S is not T:
                _err("identity needs equal source and target", st.line, _col(body, ind, "identity"))
            env.maps[st.name] = identity_map(S)
        elif st.head == "inclusion":
            inc = env.maps.get(f"{st.source}.inclusion")
            if inc is None or inc.target is not T:
                _err(f"'{st.source}' was not built as a submodule of '{st.target}'", st.line,
                     _col(body, ind, st.source))
            env.maps[st.name] = inc
        else:
            _err(f"unknown map constructor '{st.head}'", st.line, _col(body, ind, st.head))
        return

    # commands: resolve names early so mistakes are reported at parse time
    _check_command(st, env, body, ind)


def _same_ring(N, R, st, body, ind, name):
    if N.ring is not R:
        _err(f"module '{name}' lives over a different ring", st.line, _col(body, ind, name))


def _default_twists(rows) -> list[int]:
    """Twists making every column homogeneous of the smallest possible degree.

    With one row all twists are 0; otherwise rows are shifted so that each
    column is homogeneous, starting from row 0 in degree 0.
    """
    g = len(rows)
    tw = [None] * g
    if g:
        tw[0] = 0
    changed = True
    while changed:
        changed = False
        for j in range(len(rows[0]) if rows else 0):
            entries = [(i, key_degree(next(iter(rows[i][j])))) for i in range(g) if rows[i][j]]
            known = [(i, d) for i, d in entries if tw[i] is not None]
            if not known:
                continue
            total = tw[known[0][0]] + known[0][1]
            for i, d in entries:
                if tw[i] is None:
                    tw[i] = total - d
                    changed = True
        if not changed and None in tw:
            tw[tw.index(None)] = 0
            changed = True
    return [t or 0 for t in tw]


_ARITY = {
    "resolve": ("module",), "betti": ("module",), "bass": ("module",),
    "ext-map": ("map",), "tor-map": ("map",), "koszul": ("ring",),
    "stable": ("module", "module"), "eta": ("module", "module"), "matfac": ("module",),
    "fiber": ("ring", "ring"),
}


def _check_command(st: Statement, env: WorkbenchScript, body: str, ind: int):
    args = st.args
    tables = {"module": env.modules, "map": env.maps, "ring": env.rings}
    if st.head in _ARITY:
        kinds = _ARITY[st.head]
        if len(args) < len(kinds):
            _err(f"'{st.head}' needs {len(kinds)} argument(s)", st.line, ind + len(body) + 1)
        for a, kind in zip(args, kinds):
            _lookup(tables[kind], a, kind, st, body, ind)
        for a in args[len(kinds):]:
            if not re.fullmatch(r"-?\d+", a):
                _err(f"expected an integer, got '{a}'", st.line, _col(body, ind, a))
        return
    if st.head == "additivity":
        if len(args) < 3 or not re.fullmatch(r"-?\d+", args[1]):
            _err("expected 'additivity L n M1 M2 ...'", st.line, ind + 1)
        for a in [args[0]] + args[2:]:
            _lookup(env.modules, a, "module", st, body, ind)
        return
    if st.head == "series":
        if not args or args[0] not in ("bass", "poincare", "divide"):
            _err("expected 'series bass|poincare MOD [D]' or 'series divide P Q [D]'", st.line, ind + 1)
        if args[0] in ("bass", "poincare"):
            if len(args) < 2:
                _err("missing module", st.line, ind + len(body) + 1)
            _lookup(env.modules, args[1], "module", st, body, ind)
        return
    if st.head == "verify":
        if not args or args[0] not in CHECKS:
            _err(f"unknown check; expected one of {', '.join(CHECKS)}", st.line,
                 _col(body, ind, args[0] if args else "verify"))
        for a in args[1:]:
            if a == "via" or re.fullmatch(r"-?\d+", a) or a in ("left", "right"):
                continue
            if a not in env.modules and a not in env.maps and a not in env.rings:
                _err(f"unknown name '{a}'", st.line, _col(body, ind, a), UnknownName)
        return


# ----------------------------------------------------------------------

def render(script: WorkbenchScript) -> str:
    return "\n".join(render_statement(s) for s in script.statements) + "\n"


def render_statement(st: Statement) -> str:
    if st.kind == "ring":
        if st.head == "fiber":
            return f"ring {st.name} = fiber {st.args[0]} {st.args[1]}"
        if st.head == "random":
            return f"ring {st.name} = random {st.args[0]}"
        return f"ring {st.name} = {_canon(st.args[0])}"
    if st.kind == "module":
        rest = f" {_canon(st.args[0])}" if st.args and st.args[0] else ""
        return f"module {st.name} over {st.ring} = {st.head}{rest}"
    if st.kind == "map":
        if st.head == "compose":
            return f"map {st.name} = compose {st.args[0]} {st.args[1]}"
        rhs = _canon(st.args[0]) if st.head == "matrix" else st.head
        return f"map {st.name} : {st.source} -> {st.target} = {rhs}"
    out = " ".join([st.head] + [str(a) for a in st.args])
    if st.expect is not None:
        out += f" expect {st.expect}"
    return out


def _canon(text: str) -> str:
    t = re.sub(r"\s+", " ", text.strip())
    t = re.sub(r"\s*,\s*", ", ", t)
    t = re.sub(r"\[\s+", "[", t)
    t = re.sub(r"\s+\]", "]", t)
    t = re.sub(r"\(\s+", "(", t)
    return re.sub(r"\s+\)", ")", t)


__all__ = [
    "ParseError", "UnknownName", "DimensionMismatch", "Statement", "Options", "WorkbenchScript",
    "parse_script", "render", "render_statement", "COMMANDS", "CHECKS",
]
