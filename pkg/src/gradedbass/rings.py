"""Standard-graded quotient rings R = k[x_1..x_n]/I with I homogeneous in m^2."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations, combinations_with_replacement
from math import comb

from .errors import LinearRelation, NonHomogeneous
from .field import Field
from .groebner import DEFAULT_DEGREE_CAP, ModuleGB, groebner_basis
from .poly import Vec, exps_of, is_homogeneous, key_degree, mono, parse_poly, format_poly


@dataclass
class HilbertData:
    """Hilbert series ``numerator(t) / (1-t)^denominator_exponent``.

    ``coefficients[j]`` is ``dim_k`` of the degree ``j`` piece for ``0 <= j <= bound``
    (for modules with negative twists, index 0 corresponds to ``offset``).
    """

    numerator: list[int]
    denominator_exponent: int
    bound: int
    coefficients: list[int]
    offset: int = 0

    def __getitem__(self, j: int) -> int:
        return self.coefficients[j - self.offset]


def _monomials(nvars: int, d: int):
    """Exponent tuples of degree ``d`` (grevlex-descending order)."""
    if d < 0:
        return []
    out = []
    for combo in combinations_with_replacement(range(nvars), d):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    out.sort(key=lambda e: mono(e))
    return out


def _divides(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _minimalize(gens):
    gens = sorted(set(gens), key=lambda e: (sum(e), e))
    out = []
    for g in gens:
        if not any(_divides(h, g) for h in out):
            out.append(g)
    return out


def hilbert_numerator(gens, nvars: int) -> list[int]:
    """Numerator of the Hilbert series of ``k[x]/(gens)`` for a monomial ideal.

    Standard recursion ``N(J + (m)) = N(J) - t^deg(m) N(J : m)``.
    """
    cache: dict = {}

    def rec(gs: tuple) -> list[int]:
        if gs in cache:
            return cache[gs]
        if not gs:
            res = [1]
        elif all(sum(1 for a in g if a) == 1 for g in gs):
            # pure powers: product of (1 - t^a)
            res = [1]
            for g in gs:
                a = sum(g)
                new = [0] * (len(res) + a)
                for i, c in enumerate(res):
                    new[i] += c
                    new[i + a] -= c
                res = new
        else:
            m = gs[-1]
            rest = gs[:-1]
            colon = _minimalize(tuple(max(x - y, 0) for x, y in zip(g, m)) for g in rest)
            a = rec(tuple(rest))
            b = rec(tuple(colon))
            d = sum(m)
            res = [0] * max(len(a), len(b) + d)
            for i, c in enumerate(a):
                res[i] += c
            for i, c in enumerate(b):
                res[i + d] -= c
        while len(res) > 1 and res[-1] == 0:
            res.pop()
        cache[gs] = res
        return res

    return rec(tuple(_minimalize(gens)))


def expand_hilbert(numerator: list[int], nvars: int, bound: int) -> list[int]:
    out = []
    for j in range(bound + 1):
        s = 0
        for i, h in enumerate(numerator):
            if i > j:
                break
            s += h * (comb(j - i + nvars - 1, nvars - 1) if nvars else (1 if j == i else 0))
        out.append(s)
    return out


def pole_order(numerator: list[int], nvars: int) -> int:
    """Order of the pole at t = 1 of numerator/(1-t)^nvars (-1 for zero)."""
    h = list(numerator)
    if not any(h):
        return -1
    k = 0
    while sum(h) == 0:
        # divide by (1 - t)
        q = []
        acc = 0
        for c in h[:-1]:
            acc += c
            q.append(acc)
        h = q
        k += 1
    return nvars - k


class GradedRing:
    """R = k[variables]/(ideal_gens), graded-local at m = (variables)."""

    def __init__(self, field: Field, variables, ideal_gens=(), name: str | None = None,
                 degree_cap: int = DEFAULT_DEGREE_CAP):
        self.field = field
        self.variables = list(variables)
        self.nvars = len(self.variables)
        self.name = name
        self.degree_cap = degree_cap
        if len(set(self.variables)) != self.nvars:
            raise ValueError("variable names must be distinct")
        gens = []
        for g in ideal_gens:
            if not g:
                continue
            if not is_homogeneous(g):
                raise NonHomogeneous(f"ideal generator {format_poly(g, self.variables, field)} is not homogeneous")
            d = key_degree(next(iter(g)))
            if d < 2:
                raise LinearRelation(
                    f"ideal generator {format_poly(g, self.variables, field)} has degree {d}; I must lie in m^2")
            gens.append(g)
        self.ideal_gens = gens
        self._cache: dict = {}

    def __repr__(self):
        return f"GradedRing({self})"

    def __str__(self):
        body = f"{self.field.name}[{','.join(self.variables)}]"
        if self.ideal_gens:
            body += "/(" + ", ".join(self.format(g) for g in self.ideal_gens) + ")"
        return body

    # polynomial helpers -------------------------------------------------
    def parse(self, text: str) -> Vec:
        return parse_poly(text, self.variables, self.field)

    def format(self, f: Vec) -> str:
        return format_poly(f, self.variables, self.field)

    def var(self, i: int) -> Vec:
        e = [0] * self.nvars
        e[i] = 1
        return {mono(e): self.field.one}

    def one(self) -> Vec:
        return {mono([0] * self.nvars): self.field.one}

    # cached invariants --------------------------------------------------
    @cached_property
    def gb(self) -> ModuleGB:
        return groebner_basis(self.ideal_gens, (0,), self.field, self.nvars, self.degree_cap)

    @property
    def ideal_gb(self) -> list[Vec]:
        return self.gb.elements

    @cached_property
    def initial_ideal(self) -> list[tuple]:
        return _minimalize(exps_of(k) for k in self.gb.leads)

    @cached_property
    def hilbert_numerator(self) -> list[int]:
        return hilbert_numerator(self.initial_ideal, self.nvars)

    def reduce(self, f: Vec) -> Vec:
        return self.gb.reduce(f)

    def basis(self, d: int) -> list[tuple]:
        """Standard monomials (exponent tuples) of degree d."""
        key = ("basis", d)
        if key not in self._cache:
            lead = self.initial_ideal
            self._cache[key] = [e for e in _monomials(self.nvars, d)
                                if not any(_divides(m, e) for m in lead)]
        return self._cache[key]

    @property
    def is_artinian(self) -> bool:
        return krull_dimension(self) == 0

    @property
    def embedding_dimension(self) -> int:
        return self.nvars

    @property
    def is_regular(self) -> bool:
        return krull_dimension(self) == self.nvars

    @property
    def is_hypersurface(self) -> bool:
        return len(self.minimal_ideal_generators()) == 1

    def minimal_ideal_generators(self) -> list[Vec]:
        from .groebner import minimal_generators
        if "mingens" not in self._cache:
            kept = minimal_generators(self.ideal_gens, (0,), self.field, self.nvars,
                                      degree_cap=self.degree_cap)
            self._cache["mingens"] = [self.ideal_gens[i] for i in kept]
        return self._cache["mingens"]

    def with_field(self, field: Field) -> "GradedRing":
        """Same presentation over another field (coefficients must be integral)."""
        gens = [{k: field(self.field.to_int(v)) for k, v in g.items()} for g in self.ideal_gens]
        return GradedRing(field, self.variables, gens, self.name, self.degree_cap)


def validate_ring(field: Field, variables, ideal: list[str] | list[Vec] = (), name=None,
                  degree_cap: int = DEFAULT_DEGREE_CAP) -> GradedRing:
    """Build a ring from a presentation, rejecting inadmissible ideals."""
    gens = [parse_poly(g, list(variables), field) if isinstance(g, str) else g for g in ideal]
    return GradedRing(field, variables, gens, name, degree_cap)


def hilbert_series(module_or_ring, bound: int) -> HilbertData:
    """Hilbert function of a ring or module up to degree ``bound``."""
    if isinstance(module_or_ring, GradedRing):
        R = module_or_ring
        num = R.hilbert_numerator
        return HilbertData(num, R.nvars, bound, expand_hilbert(num, R.nvars, bound))
    return module_or_ring.hilbert(bound)


def krull_dimension(R: GradedRing) -> int:
    """Order of the pole of the Hilbert series at t = 1."""
    if "dim" not in R._cache:
        R._cache["dim"] = pole_order(R.hilbert_numerator, R.nvars)
    return R._cache["dim"]


def independent_set_dimension(R: GradedRing) -> int:
    """Krull dimension as the size of a largest set of variables independent
    modulo the initial ideal (no leading monomial supported inside the set)."""
    lead = R.initial_ideal
    for size in range(R.nvars, -1, -1):
        for subset in combinations(range(R.nvars), size):
            s = set(subset)
            if not any(all(i in s for i, a in enumerate(m) if a) for m in lead):
                return size
    return 0
