"""Truncated Laurent series with exact integer coefficients.

A series knows which coefficients it is sure about: ``hi`` is the largest
exponent that is certified (``None`` means the series is an exact Laurent
polynomial).  Every operation propagates this bound instead of guessing at
coefficients it has not seen.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import NonUnitConstantTerm, WindowExhausted


class TruncatedSeries:
    __slots__ = ("coeffs", "hi")

    def __init__(self, coeffs=None, hi: int | None = None):
        if isinstance(coeffs, (list, tuple)):
            coeffs = dict(enumerate(coeffs))
        out = {}
        for e, c in (coeffs or {}).items():
            if hi is not None and e > hi:
                continue
            if c:
                out[int(e)] = _exact(c)
        self.coeffs = out
        self.hi = hi

    # -- construction ---------------------------------------------------
    @classmethod
    def polynomial(cls, coeffs) -> "TruncatedSeries":
        return cls(coeffs, None)

    @classmethod
    def truncated(cls, coeffs, hi: int) -> "TruncatedSeries":
        return cls(coeffs, hi)

    @classmethod
    def monomial(cls, e: int, c=1) -> "TruncatedSeries":
        return cls({e: c}, None)

    # -- inspection -----------------------------------------------------
    @property
    def is_exact(self) -> bool:
        return self.hi is None

    @property
    def valuation(self) -> int | None:
        return min(self.coeffs) if self.coeffs else None

    @property
    def degree(self) -> int | None:
        return max(self.coeffs) if self.coeffs else None

    def __getitem__(self, e: int):
        if self.hi is not None and e > self.hi:
            raise WindowExhausted(f"coefficient of t^{e} lies beyond the certified window (t^{self.hi})")
        return self.coeffs.get(e, 0)

    def coefficients(self, lo: int, hi: int) -> list:
        return [self[e] for e in range(lo, hi + 1)]

    def pairs(self, lo: int | None = None) -> list[list[int]]:
        """[[exponent, coefficient], ...] for nonzero coefficients."""
        return [[e, _plain(c)] for e, c in sorted(self.coeffs.items()) if lo is None or e >= lo]

    def agrees_with(self, other: "TruncatedSeries", upto: int, lo: int = 0) -> bool:
        return all(self[e] == other[e] for e in range(lo, upto + 1))

    def truncate(self, hi: int) -> "TruncatedSeries":
        if self.hi is not None and hi > self.hi:
            raise WindowExhausted(f"cannot certify up to t^{hi}; window ends at t^{self.hi}")
        return TruncatedSeries(self.coeffs, hi)

    def __repr__(self):
        body = " + ".join(f"{_plain(c)}*t^{e}" for e, c in sorted(self.coeffs.items())) or "0"
        return f"TruncatedSeries({body}{'' if self.hi is None else f' + O(t^{self.hi + 1})'})"

    def __eq__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self.hi == other.hi and self.coeffs == other.coeffs

    # -- arithmetic -----------------------------------------------------
    def __add__(self, other):
        other = _coerce(other)
        hi = _min_hi(self.hi, other.hi)
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, 0) + c
        return TruncatedSeries(out, hi)

    __radd__ = __add__

    def __neg__(self):
        return TruncatedSeries({e: -c for e, c in self.coeffs.items()}, self.hi)

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        other = _coerce(other)
        va, vb = self.valuation, other.valuation
        if va is None and self.hi is None or vb is None and other.hi is None:
            return TruncatedSeries({}, None)
        # coefficient of t^e is certified while every contributing pair is seen
        cands = []
        if self.hi is not None:
            cands.append(self.hi + (vb if vb is not None else other.hi + 1))
        if other.hi is not None:
            cands.append(other.hi + (va if va is not None else self.hi + 1))
        hi = min(cands) if cands else None
        out: dict = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                e = e1 + e2
                if hi is None or e <= hi:
                    out[e] = out.get(e, 0) + c1 * c2
        return TruncatedSeries(out, hi)

    __rmul__ = __mul__

    def shift(self, k: int) -> "TruncatedSeries":
        """Multiply by t^k."""
        return TruncatedSeries({e + k: c for e, c in self.coeffs.items()},
                               None if self.hi is None else self.hi + k)

    def divide(self, other, bound: int | None = None) -> "TruncatedSeries":
        """self / other for ``other`` with constant term +-1 and no negative powers."""
        other = _coerce(other)
        if other.valuation is None or other.valuation < 0 or other[0] not in (1, -1):
            raise NonUnitConstantTerm("divisor must have constant term +1 or -1 and no negative powers")
        va = self.valuation
        cands = [h for h in (self.hi, bound) if h is not None]
        if other.hi is not None:
            cands.append(other.hi + (va if va is not None else 0))
        if not cands:
            raise WindowExhausted("division of exact series needs a truncation bound")
        hi = min(cands)
        if va is None:
            return TruncatedSeries({}, hi)
        u = other[0]
        q: dict = {}
        for e in range(va, hi + 1):
            acc = self.coeffs.get(e, 0)
            for k, b in other.coeffs.items():
                if k > 0 and e - k >= va:
                    acc -= b * q.get(e - k, 0)
            q[e] = acc * u  # u = +-1 is its own inverse
        return TruncatedSeries(q, hi)

    def __truediv__(self, other):
        return self.divide(other)

    def substitute_inverse(self) -> "TruncatedSeries":
        """p(t) -> p(t^{-1}) for an exact Laurent polynomial p."""
        if self.hi is not None:
            raise WindowExhausted("substituting t -> 1/t needs a series of finite support")
        return TruncatedSeries({-e: c for e, c in self.coeffs.items()}, None)


def _exact(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c)
    if isinstance(c, (int, Fraction)):
        return c
    return int(c)


def _plain(c):
    return int(c) if isinstance(c, int) or (isinstance(c, Fraction) and c.denominator == 1) else str(c)


def _coerce(x) -> TruncatedSeries:
    if isinstance(x, TruncatedSeries):
        return x
    return TruncatedSeries({0: x}, None)


def _min_hi(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def series_add(a, b):
    return _coerce(a) + _coerce(b)


def series_multiply(a, b):
    return _coerce(a) * _coerce(b)


def series_divide(a, b, bound=None):
    return _coerce(a).divide(b, bound)


def substitute_inverse(p):
    return _coerce(p).substitute_inverse()


def bass_series(M, D: int, **kw) -> TruncatedSeries:
    """I^R_M(t) = sum mu^n(M) t^n, certified through t^D."""
    from .homology import bass_numbers
    return TruncatedSeries(bass_numbers(M, D, **kw), D)


def poincare_series(M, D: int | None = None) -> TruncatedSeries:
    """P^R_M(t) = sum beta_n(M) t^n; exact when the resolution is seen to stop."""
    from .resolution import betti_numbers, pd_certificate
    if D is None:
        cert = pd_certificate(M)
        if not cert.finite:
            raise WindowExhausted("infinite projective dimension needs a truncation bound")
        return TruncatedSeries(betti_numbers(M, max(cert.pd or 0, 0)), None)
    b = betti_numbers(M, D + 1)
    if 0 in b:
        # a zero module in a minimal resolution ends it
        return TruncatedSeries(b[:b.index(0)], None)
    return TruncatedSeries(b[:D + 1], D)


__all__ = [
    "TruncatedSeries", "series_add", "series_multiply", "series_divide", "substitute_inverse",
    "bass_series", "poincare_series",
]
