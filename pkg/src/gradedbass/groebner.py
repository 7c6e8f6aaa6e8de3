"""Gröbner bases of graded submodules of free modules over k[x_1..x_n].

Everything here assumes homogeneous input.  Buchberger's algorithm runs
degree by degree, which gives two things for free: a degree cap that makes
truncation sound, and the set of input generators that are *not* redundant
(a minimal generating set), exactly as in a minimal-resolution engine.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field as dc_field

from .errors import AmbientMismatch, DegreeOverflow, NonHomogeneous
from .poly import Key, Vec, is_homogeneous, key_divides, key_lcm, key_mul, key_quo, lead

DEFAULT_DEGREE_CAP = 24


def _monic(f: Vec, field) -> Vec:
    c = f[lead(f)]
    if c == field.one:
        return dict(f)
    inv = field.inv(c)
    if field.p:
        return {k: v * inv % field.p for k, v in f.items()}
    return {k: v * inv for k, v in f.items()}


@dataclass
class ModuleGB:
    """A Gröbner basis in a free module with component twists ``twists``.

    Elements are monic.  ``complete`` is False when the basis was built only
    up to a degree bound.
    """

    field: object
    nvars: int
    twists: tuple
    elements: list = dc_field(default_factory=list)
    complete: bool = True

    def __post_init__(self):
        self.leads: list[Key] = []
        self._by_comp: dict[int, list[int]] = {}
        elems, self.elements = self.elements, []
        for e in elems:
            self._append(_monic(e, self.field))

    def _append(self, f: Vec) -> int:
        i = len(self.elements)
        self.elements.append(f)
        lt = lead(f)
        self.leads.append(lt)
        self._by_comp.setdefault(lt[0], []).append(i)
        return i

    def degree(self, i: int) -> int:
        lt = self.leads[i]
        return self.twists[lt[0]] - lt[1]

    def reducer(self, t: Key):
        for i in self._by_comp.get(t[0], ()):
            if key_divides(self.leads[i], t):
                return i
        return None

    def reduce(self, f: Vec, full: bool = True) -> Vec:
        """Remainder of ``f`` (full normal form, or only top-reduced)."""
        p = self.field.p
        work = dict(f)
        heap = list(work)
        heapq.heapify(heap)
        out: Vec = {}
        elems, leads = self.elements, self.leads
        while heap:
            t = heapq.heappop(heap)
            c = work.pop(t, None)
            if c is None:
                continue
            j = self.reducer(t)
            if j is None:
                out[t] = c
                if not full:
                    out.update(work)
                    return out
                continue
            g = elems[j]
            lt = leads[j]
            q = key_quo(t, lt)
            for k, v in g.items():
                if k == lt:
                    continue
                kk = key_mul(k, q)
                old = work.get(kk)
                w = (old or 0) - c * v
                if p:
                    w %= p
                if w:
                    if old is None:
                        heapq.heappush(heap, kk)
                    work[kk] = w
                elif old is not None:
                    del work[kk]
        return out

    def normal_form(self, v: Vec) -> Vec:
        self._check_ambient(v)
        return self.reduce(v, full=True)

    def contains(self, v: Vec) -> bool:
        return not self.normal_form(v)

    def _check_ambient(self, v: Vec):
        for k in v:
            if len(k) != self.nvars + 2 or not 0 <= k[0] < len(self.twists):
                raise AmbientMismatch("vector does not live in the ambient free module of this basis")
            break
        for k in v:
            if k[0] >= len(self.twists):
                raise AmbientMismatch("component index out of range")


def _spoly(f: Vec, lf: Key, g: Vec, lg: Key, field) -> Vec:
    lcm = key_lcm(lf, lg)
    qf = key_quo(lcm, lf)
    qg = key_quo(lcm, lg)
    p = field.p
    out: Vec = {}
    for k, v in f.items():
        if k != lf:
            out[key_mul(k, qf)] = v
    for k, v in g.items():
        if k == lg:
            continue
        kk = key_mul(k, qg)
        w = out.get(kk, 0) - v
        if p:
            w %= p
        if w:
            out[kk] = w
        else:
            out.pop(kk, None)
    return out


def buchberger(
    inputs: list[Vec],
    twists,
    field,
    nvars: int,
    prebasis: list[Vec] = (),
    degree_cap: int = DEFAULT_DEGREE_CAP,
):
    """Homogeneous Buchberger algorithm.

    ``prebasis`` must already be a Gröbner basis of the module it generates;
    pairs inside it are never formed.  Returns ``(gb, kept)`` where ``kept``
    lists the indices of ``inputs`` that were needed; those inputs form a
    minimal homogeneous generating set of (prebasis + inputs) modulo prebasis.
    """
    twists = tuple(twists)
    gb = ModuleGB(field, nvars, twists, list(prebasis))
    npre = len(gb.elements)
    order = []
    for idx, f in enumerate(inputs):
        if not f:
            continue
        if not is_homogeneous(f, twists):
            raise NonHomogeneous("Gröbner input is not homogeneous")
        k = next(iter(f))
        order.append((twists[k[0]] - k[1], idx))
    order.sort()

    pair_heap: list = []
    active: dict[tuple, Key] = {}

    def add(h: Vec) -> int:
        t = gb._append(_monic(h, field))
        lh = gb.leads[t]
        # Gebauer-Moeller: chain criterion on old pairs
        for (i, j), lij in list(active.items()):
            if key_divides(lh, lij):
                if key_lcm(gb.leads[i], lh) != lij and key_lcm(gb.leads[j], lh) != lij:
                    del active[(i, j)]
        new = []
        for i in gb._by_comp.get(lh[0], ()):
            if i == t:
                continue
            new.append((key_lcm(gb.leads[i], lh), i))
        new.sort(key=lambda e: (-e[0][1], e[0], e[1]))
        kept_lcms: list[Key] = []
        for lcm, i in new:
            if any(key_divides(m, lcm) for m in kept_lcms):
                continue
            kept_lcms.append(lcm)
            active[(i, t)] = lcm
            heapq.heappush(pair_heap, (twists[lcm[0]] - lcm[1], lcm, i, t))
        return t

    kept = []
    pos = 0
    while pair_heap or pos < len(order):
        d_pair = pair_heap[0][0] if pair_heap else None
        d_in = order[pos][0] if pos < len(order) else None
        d = min(x for x in (d_pair, d_in) if x is not None)
        if d > degree_cap:
            raise DegreeOverflow(f"Gröbner computation needs degree {d} > cap {degree_cap}")
        while pair_heap and pair_heap[0][0] == d:
            _, lcm, i, j = heapq.heappop(pair_heap)
            if active.pop((i, j), None) is None:
                continue
            s = _spoly(gb.elements[i], gb.leads[i], gb.elements[j], gb.leads[j], field)
            r = gb.reduce(s, full=True)
            if r:
                add(r)
        while pos < len(order) and order[pos][0] == d:
            idx = order[pos][1]
            pos += 1
            r = gb.reduce(inputs[idx], full=True)
            if r:
                add(r)
                kept.append(idx)
    gb.npre = npre
    return gb, kept


def groebner_basis(gens: list[Vec], twists, field, nvars: int, degree_cap: int = DEFAULT_DEGREE_CAP) -> ModuleGB:
    """Gröbner basis of the submodule of ``P^len(twists)`` generated by ``gens``."""
    return buchberger(gens, twists, field, nvars, degree_cap=degree_cap)[0]


def normal_form(v: Vec, gb: ModuleGB) -> Vec:
    return gb.normal_form(v)


def minimal_generators(gens: list[Vec], twists, field, nvars: int, prebasis=(), degree_cap=DEFAULT_DEGREE_CAP):
    """Indices of a minimal generating subset of ``gens`` modulo ``prebasis``."""
    return buchberger(gens, twists, field, nvars, prebasis, degree_cap)[1]


def free_prebasis(ideal_gb: list[Vec], rank: int, offset: int = 0) -> list[Vec]:
    """The basis ``I * e_i`` for components ``offset .. offset+rank-1``."""
    out = []
    for i in range(offset, offset + rank):
        for f in ideal_gb:
            out.append({(i,) + k[1:]: v for k, v in f.items()})
    return out


def syzygies(columns: list[Vec], row_twists, col_degrees, field, nvars: int, ideal_gb: list[Vec],
             degree_cap: int = DEFAULT_DEGREE_CAP):
    """Minimal generators of the kernel of ``R^r -> R^g`` over ``R = P/I``.

    ``columns[j]`` is the image of the j-th basis vector (degree
    ``col_degrees[j]``) in ``R^g`` with twists ``row_twists``.  The kernel is
    computed over P with the columns ``I * e_i`` adjoined (elimination with a
    tracking block), then minimalized modulo ``I * R^r``.  Returns
    ``(generators, degrees)`` with generators reduced modulo I.
    """
    g = len(row_twists)
    r = len(columns)
    if r == 0:
        return [], []
    twists = tuple(row_twists) + tuple(col_degrees)
    inputs = []
    for j, col in enumerate(columns):
        v = dict(col)
        unit = (g + j, 0) + (0,) * nvars
        v[unit] = field.one
        inputs.append(v)
    pre = free_prebasis(ideal_gb, g) + free_prebasis(ideal_gb, r, offset=g)
    gb, _ = buchberger(inputs, twists, field, nvars, pre, degree_cap)
    kernel = []
    for f, lt in zip(gb.elements, gb.leads):
        if lt[0] >= g:
            kernel.append({(k[0] - g,) + k[1:]: v for k, v in f.items()})
    ktw = tuple(col_degrees)
    pre_r = free_prebasis(ideal_gb, r)
    kept_gb, kept = buchberger(kernel, ktw, field, nvars, pre_r, degree_cap)
    reducer = ModuleGB(field, nvars, ktw, pre_r)
    gens, degs = [], []
    for i in sorted(kept, key=lambda i: (_deg(kernel[i], ktw), i)):
        v = reducer.reduce(kernel[i])
        gens.append(v)
        degs.append(_deg(v, ktw))
    return gens, degs


def _deg(v: Vec, twists) -> int:
    k = next(iter(v))
    return twists[k[0]] - k[1]
