"""Exact coefficient fields: prime fields F_p and the rationals."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import BadPrime

DEFAULT_PRIME = 32003


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    f = 3
    while f * f <= p:
        if p % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class Field:
    """A prime field ``F_p`` (``p`` set) or ``Q`` (``p is None``).

    Elements of F_p are Python ints in ``[0, p)``; elements of Q are
    :class:`fractions.Fraction`.  Linear algebra over F_p keeps products below
    2**63, so ``p`` is limited to 31 bits.
    """

    p: int | None = DEFAULT_PRIME

    def __post_init__(self):
        if self.p is not None:
            if not _is_prime(self.p):
                raise BadPrime(f"{self.p} is not prime")
            if self.p >= 2**31:
                raise BadPrime(f"{self.p} exceeds the supported 31-bit range")

    @classmethod
    def rationals(cls) -> "Field":
        return cls(None)

    @property
    def name(self) -> str:
        return "Q" if self.p is None else f"F{self.p}"

    @property
    def is_prime(self) -> bool:
        return self.p is not None

    def __call__(self, x) -> int | Fraction:
        if self.p is None:
            return Fraction(x)
        if isinstance(x, Fraction):
            return x.numerator * pow(x.denominator, -1, self.p) % self.p
        return int(x) % self.p

    @property
    def zero(self):
        return 0 if self.p else Fraction(0)

    @property
    def one(self):
        return 1 if self.p else Fraction(1)

    def inv(self, a):
        if self.p is None:
            return 1 / Fraction(a)
        return pow(int(a), -1, self.p)

    def neg(self, a):
        return (-a) % self.p if self.p else -a

    def to_int(self, a) -> int | Fraction:
        """Symmetric representative, used for printing."""
        if self.p is None:
            return a if a.denominator != 1 else int(a)
        return a - self.p if a > self.p // 2 else a

    def __str__(self) -> str:
        return self.name
