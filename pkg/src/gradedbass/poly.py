"""Sparse polynomials and free-module vectors over a Field.

A term is stored under a flat integer tuple key

    (component, -degree, e_n, ..., e_1)

where ``e_i`` are the exponents.  With this encoding Python's tuple order is
the module order position-over-term on top of graded reverse lexicographic:
the *smallest* key is the leading term (component 0 dominates, then higher
degree, then grevlex).  Ring elements are vectors living in component 0.
A polynomial/vector is a plain ``dict`` mapping keys to nonzero coefficients.
"""

from __future__ import annotations

import re
from operator import add

from .errors import InputError

Key = tuple
Vec = dict


def mono(exps, comp: int = 0) -> Key:
    return (comp, -sum(exps)) + tuple(reversed(exps))


def exps_of(key: Key) -> tuple:
    return tuple(reversed(key[2:]))


def key_degree(key: Key) -> int:
    """Monomial degree (the twist of the component is not included)."""
    return -key[1]


def key_mul(a: Key, b: Key) -> Key:
    return tuple(map(add, a, b))


def key_divides(a: Key, b: Key) -> bool:
    if a[0] != b[0] or a[1] < b[1]:
        return False
    for i in range(2, len(a)):
        if a[i] > b[i]:
            return False
    return True


def key_quo(b: Key, a: Key) -> Key:
    """Monomial (component 0) ``b / a``; assumes ``a`` divides ``b``."""
    return (0,) + tuple(b[i] - a[i] for i in range(1, len(a)))


def key_lcm(a: Key, b: Key) -> Key:
    e = tuple(max(a[i], b[i]) for i in range(2, len(a)))
    return (a[0], -sum(e)) + e


def with_comp(key: Key, comp: int) -> Key:
    return (comp,) + key[1:]


def lead(f: Vec) -> Key:
    return min(f)


def vec_degree(f: Vec, twists) -> int | None:
    """Degree of a homogeneous vector w.r.t. component twists."""
    if not f:
        return None
    k = next(iter(f))
    return twists[k[0]] - k[1]


def is_homogeneous(f: Vec, twists=(0,)) -> bool:
    degs = {twists[k[0]] - k[1] for k in f}
    return len(degs) <= 1


def axpy(target: Vec, c, f: Vec, shift: Key | None, p) -> None:
    """In place ``target += c * shift * f`` (``shift`` is a monomial key)."""
    if p:
        for k, v in f.items():
            if shift is not None:
                k = tuple(map(add, k, shift))
            w = (target.get(k, 0) + c * v) % p
            if w:
                target[k] = w
            else:
                target.pop(k, None)
    else:
        for k, v in f.items():
            if shift is not None:
                k = tuple(map(add, k, shift))
            w = target.get(k, 0) + c * v
            if w:
                target[k] = w
            else:
                target.pop(k, None)


def vadd(f: Vec, g: Vec, field, c=1) -> Vec:
    out = dict(f)
    axpy(out, field(c), g, None, field.p)
    return out


def vscale(f: Vec, c, field) -> Vec:
    c = field(c)
    if not c:
        return {}
    if field.p:
        return {k: v * c % field.p for k, v in f.items()}
    return {k: v * c for k, v in f.items()}


def pmul(f: Vec, g: Vec, field) -> Vec:
    """Product of a polynomial ``f`` (component 0) with a vector or polynomial ``g``."""
    out: Vec = {}
    for k, v in f.items():
        axpy(out, v, g, k, field.p)
    return out


def move_to(f: Vec, comp: int) -> Vec:
    """Place a polynomial (component 0) into component ``comp``."""
    return {with_comp(k, comp): v for k, v in f.items()}


def component(f: Vec, comp: int) -> Vec:
    """The ``comp``-th coordinate of a vector, as a polynomial."""
    return {with_comp(k, 0): v for k, v in f.items() if k[0] == comp}


def from_columns(entries, field) -> Vec:
    """Assemble a vector from a list of polynomial coordinates."""
    out: Vec = {}
    for i, e in enumerate(entries):
        for k, v in e.items():
            out[with_comp(k, i)] = v
    return out


def to_columns(f: Vec, rank: int) -> list[Vec]:
    cols: list[Vec] = [{} for _ in range(rank)]
    for k, v in f.items():
        cols[k[0]][with_comp(k, 0)] = v
    return cols


def const(c, nvars: int, field) -> Vec:
    c = field(c)
    return {(0, 0) + (0,) * nvars: c} if c else {}


def var(i: int, nvars: int, field) -> Vec:
    e = [0] * nvars
    e[i] = 1
    return {mono(e): field.one}


def is_constant(f: Vec) -> bool:
    return all(k[1] == 0 for k in f)


# --------------------------------------------------------------------------
# parsing and printing

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*^/()]))")


class PolyParseError(InputError):
    def __init__(self, msg: str, col: int):
        super().__init__(msg)
        self.col = col


def _tokenize(text: str):
    pos = 0
    out = []
    text = text.rstrip()
    while pos < len(text):
        while pos < len(text) and text[pos].isspace():
            pos += 1
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise PolyParseError(f"unexpected character {text[pos]!r}", pos)
        start = m.start(m.lastindex)
        out.append((m.lastindex, m.group(m.lastindex), start))
        pos = m.end()
    out.append((0, None, len(text)))
    return out


def parse_poly(text: str, variables: list[str], field) -> Vec:
    """Parse an expression such as ``x^2 - 3*x*y + (y+1)^2`` into a polynomial."""
    n = len(variables)
    index = {v: i for i, v in enumerate(variables)}
    toks = _tokenize(text)
    pos = 0

    def peek():
        return toks[pos]

    def take(expected=None):
        nonlocal pos
        t = toks[pos]
        if expected is not None and t[1] != expected:
            raise PolyParseError(f"expected {expected!r}", t[2])
        pos += 1
        return t

    def expr():
        sign = 1
        if peek()[0] == 3 and peek()[1] in ("+", "-"):
            sign = -1 if take()[1] == "-" else 1
        acc = vscale(term(), sign, field)
        while peek()[0] == 3 and peek()[1] in ("+", "-"):
            op = take()[1]
            acc = vadd(acc, term(), field, 1 if op == "+" else -1)
        return acc

    def term():
        acc = factor()
        while peek()[0] == 3 and peek()[1] in ("*", "/"):
            op, _, col = take()
            rhs = factor()
            if op == "/":
                if not is_constant(rhs) or not rhs:
                    raise PolyParseError("division only by nonzero constants", col)
                acc = vscale(acc, field.inv(next(iter(rhs.values()))), field)
            else:
                acc = pmul(acc, rhs, field)
        return acc

    def factor():
        base = atom()
        if peek()[0] == 3 and peek()[1] in ("^", "**"):
            take()
            kind, val, col = take()
            if kind != 1:
                raise PolyParseError("exponent must be a non-negative integer", col)
            out = const(1, n, field)
            for _ in range(int(val)):
                out = pmul(out, base, field)
            return out
        return base

    def atom():
        kind, val, col = take()
        if kind == 1:
            return const(int(val), n, field)
        if kind == 2:
            if val not in index:
                raise PolyParseError(f"unknown variable {val!r}", col)
            return var(index[val], n, field)
        if val == "(":
            inner = expr()
            take(")")
            return inner
        if val == "-":
            return vscale(atom(), -1, field)
        raise PolyParseError(f"unexpected token {val!r}" if val else "unexpected end of input", col)

    result = expr()
    if peek()[0] != 0:
        raise PolyParseError(f"unexpected token {peek()[1]!r}", peek()[2])
    return result


def format_poly(f: Vec, variables: list[str], field) -> str:
    if not f:
        return "0"
    parts = []
    for k in sorted(f):
        c = field.to_int(f[k])
        e = exps_of(k)
        mon = "*".join(
            v if a == 1 else f"{v}^{a}" for v, a in zip(variables, e) if a
        )
        neg = c < 0
        c = abs(c)
        if mon:
            body = mon if c == 1 else f"{c}*{mon}"
        else:
            body = str(c)
        parts.append(("-" if neg else "+", body))
    s = ("-" if parts[0][0] == "-" else "") + parts[0][1]
    for sign, body in parts[1:]:
        s += sign + body
    return s
