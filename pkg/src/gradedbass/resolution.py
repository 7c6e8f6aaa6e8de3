"""Free complexes: minimal free resolutions, Koszul complexes, duals."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from math import comb

from .errors import InputError
from .groebner import syzygies
from .modules import GradedModule, minimal_presentation
from .poly import Vec, axpy, is_constant, move_to, with_comp
from .rings import GradedRing


@dataclass
class FreeComplex:
    """Complex of graded free R-modules F_i (homological indexing).

    ``twists[i]`` lists the generator degrees of F_i; ``diffs[i]`` holds the
    columns of d_i : F_i -> F_{i-1}, each a vector in F_{i-1}.
    Degrees not present are zero modules.
    """

    ring: GradedRing
    twists: dict = field(default_factory=dict)
    diffs: dict = field(default_factory=dict)
    minimal: bool = False
    name: str | None = None

    def ranks(self, lo: int, hi: int) -> list[int]:
        return [self.rank(i) for i in range(lo, hi + 1)]

    def rank(self, i: int) -> int:
        return len(self.twists.get(i, ()))

    def tw(self, i: int) -> tuple:
        return tuple(self.twists.get(i, ()))

    def diff(self, i: int) -> list[Vec]:
        if i in self.diffs:
            return self.diffs[i]
        return [{} for _ in range(self.rank(i))]

    @property
    def degrees(self) -> list[int]:
        return sorted(i for i in self.twists if self.twists[i])

    def entry(self, i: int, row: int, col: int) -> Vec:
        return {with_comp(k, 0): c for k, c in self.diff(i)[col].items() if k[0] == row}

    def check_d_squared(self) -> bool:
        """d_{i-1} d_i == 0 over R for every i."""
        R = self.ring
        for i in sorted(self.diffs):
            if i - 1 not in self.diffs:
                continue
            prev = self.diffs[i - 1]
            for col in self.diffs[i]:
                out: Vec = {}
                for k, c in col.items():
                    axpy(out, c, prev[k[0]], (0,) + k[1:], R.field.p)
                red = _reduce_mod_ideal(out, R)
                if red:
                    return False
        return True

    def is_minimal_check(self) -> bool:
        """Every differential entry lies in m (no nonzero constants)."""
        for cols in self.diffs.values():
            for col in cols:
                if any(k[1] == 0 for k in col):
                    return False
        return True


def _reduce_mod_ideal(v: Vec, R: GradedRing) -> Vec:
    out: Vec = {}
    comps = {k[0] for k in v}
    for i in comps:
        poly = {with_comp(k, 0): c for k, c in v.items() if k[0] == i}
        for k, c in R.reduce(poly).items():
            out[with_comp(k, i)] = c
    return out


class _Resolver:
    """Incremental minimal resolution of one module (cached on the module)."""

    def __init__(self, M: GradedModule):
        self.module = M
        R = M.ring
        P, _, _ = minimal_presentation(M)
        self.presented = P
        self.complex = FreeComplex(R, {0: P.twists}, {}, True, f"res({M.name or 'M'})")
        if P.relations:
            self.complex.twists[1] = tuple(P.relation_degrees)
            self.complex.diffs[1] = [dict(c) for c in P.relations]
        self.length = 1

    def extend(self, length: int):
        C = self.complex
        R = C.ring
        while self.length < length:
            i = self.length
            cols = C.diffs.get(i, [])
            if not cols:
                self.length = length
                break
            gens, degs = syzygies(cols, C.tw(i - 1), C.tw(i), R.field, R.nvars, R.ideal_gb, R.degree_cap)
            if gens:
                C.twists[i + 1] = tuple(degs)
                C.diffs[i + 1] = gens
            self.length = i + 1
        return C


def minimal_free_resolution(M: GradedModule, length: int) -> FreeComplex:
    """Minimal free resolution F_0 <- F_1 <- ... <- F_length of M."""
    if length < 0:
        raise InputError("resolution length must be non-negative")
    res = M._cache.get("resolver")
    if res is None:
        res = _Resolver(M)
        M._cache["resolver"] = res
    views = M._cache.setdefault("resolutions", {})
    if length in views:
        return views[length]
    C = res.extend(length)
    out = views[length] = FreeComplex(C.ring, {i: t for i, t in C.twists.items() if i <= length},
                      {i: d for i, d in C.diffs.items() if i <= length}, True, C.name)
    return out


def betti_numbers(M: GradedModule, length: int) -> list[int]:
    return minimal_free_resolution(M, length).ranks(0, length)


def graded_betti_numbers(M: GradedModule, length: int) -> dict:
    F = minimal_free_resolution(M, length)
    out = {}
    for i in range(length + 1):
        for a in F.tw(i):
            out[(i, a)] = out.get((i, a), 0) + 1
    return out


@dataclass(frozen=True)
class PdCertificate:
    finite: bool
    pd: int | None
    steps: int

    def __str__(self):
        return f"finite({self.pd})" if self.finite else "infinite"


def pd_certificate(M: GradedModule) -> PdCertificate:
    """Projective dimension, deciding finiteness from n+1 resolution steps.

    A finite projective dimension is at most depth R <= n (Auslander-Buchsbaum),
    so a nonzero F_{n+1} certifies infinite projective dimension.
    """
    n = M.ring.nvars
    F = minimal_free_resolution(M, n + 1)
    if M.is_zero:
        return PdCertificate(True, None, n + 1)
    for i in range(n + 2):
        if F.rank(i) == 0:
            return PdCertificate(True, i - 1, n + 1)
    return PdCertificate(False, None, n + 1)


def koszul_complex(R: GradedRing) -> FreeComplex:
    """Koszul complex on the variables, basis of K_i = i-subsets in lex order.

    d(e_S) = sum_j (-1)^(j+1) x_{s_j} e_{S - s_j}  (j counted from 1).
    """
    n = R.nvars
    field = R.field
    subsets = {i: list(combinations(range(n), i)) for i in range(n + 1)}
    index = {i: {s: j for j, s in enumerate(subsets[i])} for i in range(n + 1)}
    twists = {i: tuple([i] * comb(n, i)) for i in range(n + 1)}
    diffs = {}
    for i in range(1, n + 1):
        cols = []
        for S in subsets[i]:
            v: Vec = {}
            for j, s in enumerate(S):
                rest = S[:j] + S[j + 1:]
                sign = 1 if j % 2 == 0 else -1
                axpy(v, field(sign), move_to(R.var(s), index[i - 1][rest]), None, field.p)
            cols.append(v)
        diffs[i] = cols
    return FreeComplex(R, twists, diffs, True, "koszul")


def dual_complex(F: FreeComplex) -> FreeComplex:
    """G = Hom_R(F, R): G_{-i} = F_i^*, with d^G transposes signed by (-1)^i.

    The transpose of d_i : F_i -> F_{i-1} becomes G_{-(i-1)} -> G_{-i},
    multiplied by (-1)^i.
    """
    R = F.ring
    field = R.field
    twists = {-i: tuple(-a for a in t) for i, t in F.twists.items()}
    diffs = {}
    for i, cols in F.diffs.items():
        src = F.rank(i - 1)
        sign = field(1 if i % 2 == 0 else -1)
        new = [dict() for _ in range(src)]
        for b, col in enumerate(cols):
            for k, c in col.items():
                a = k[0]
                new[a][with_comp(k, b)] = c * sign % field.p if field.p else c * sign
        diffs[-(i - 1)] = new
    return FreeComplex(R, twists, diffs, F.minimal, f"dual({F.name})")


def complex_is_minimal(F: FreeComplex) -> bool:
    return F.is_minimal_check()


__all__ = [
    "FreeComplex", "minimal_free_resolution", "betti_numbers", "graded_betti_numbers",
    "PdCertificate", "pd_certificate", "koszul_complex", "dual_complex", "complex_is_minimal",
    "is_constant",
]
