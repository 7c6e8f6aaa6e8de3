"""Finitely presented graded modules over a GradedRing, and maps between them.

A module is ``coker(R^r -> R^g)``: generator twists plus relation columns.
Its degree-d piece has the standard terms of the presentation Gröbner basis
(relations together with ``I * e_i``) as a k-basis; every linear-algebra
routine in the package works on those bases.
"""

from __future__ import annotations

from functools import cached_property

import numpy as np

from . import linalg
from .errors import InputError, MismatchedV, NonHomogeneous, NotWellDefined
from .groebner import ModuleGB, buchberger, free_prebasis, syzygies
from .poly import Vec, axpy, is_homogeneous, key_degree, mono, move_to, with_comp
from .rings import GradedRing, _monomials, expand_hilbert, hilbert_numerator, pole_order


def _check_vec(v: Vec, twists, what: str):
    for k in v:
        if not 0 <= k[0] < len(twists):
            raise InputError(f"{what}: component {k[0]} out of range")
    if not is_homogeneous(v, twists):
        raise NonHomogeneous(f"{what} is not homogeneous for twists {list(twists)}")


def vdeg(v: Vec, twists) -> int | None:
    if not v:
        return None
    k = next(iter(v))
    return twists[k[0]] - k[1]


class GradedModule:
    """Graded R-module presented by generator twists and relation columns."""

    def __init__(self, ring: GradedRing, twists, relations=(), name: str | None = None):
        self.ring = ring
        self.twists = tuple(int(a) for a in twists)
        self.name = name
        rels = []
        for j, col in enumerate(relations):
            if not col:
                continue
            _check_vec(col, self.twists, f"relation column {j}")
            rels.append(dict(col))
        self.relations = rels
        self._cache: dict = {}

    # ------------------------------------------------------------------
    @property
    def field(self):
        return self.ring.field

    @property
    def rank(self) -> int:
        return len(self.twists)

    @property
    def relation_degrees(self) -> list[int]:
        return [vdeg(c, self.twists) for c in self.relations]

    def __repr__(self):
        return f"GradedModule({self.name or '?'}, twists={list(self.twists)}, {len(self.relations)} relations)"

    @cached_property
    def gb(self) -> ModuleGB:
        R = self.ring
        pre = free_prebasis(R.ideal_gb, self.rank)
        gb, _ = buchberger(self.relations, self.twists, R.field, R.nvars, pre, R.degree_cap)
        return gb

    def reduce(self, v: Vec) -> Vec:
        return self.gb.reduce(v)

    def gen(self, i: int) -> Vec:
        return {mono([0] * self.ring.nvars, i): self.field.one}

    @cached_property
    def is_zero(self) -> bool:
        return all(not self.reduce(self.gen(i)) for i in range(self.rank))

    @cached_property
    def indeg(self) -> int | None:
        degs = [a for i, a in enumerate(self.twists) if self.reduce(self.gen(i))]
        return min(degs) if degs else None

    @cached_property
    def max_presentation_degree(self) -> int:
        """Largest degree among generators and Gröbner basis elements."""
        degs = list(self.twists) + [self.gb.degree(i) for i in range(len(self.gb.elements))]
        return max(degs) if degs else 0

    # Hilbert data -------------------------------------------------------
    @cached_property
    def _numerator(self):
        """(offset, coefficients) of the Hilbert numerator over (1-t)^n."""
        n = self.ring.nvars
        by_comp: dict[int, list] = {i: [] for i in range(self.rank)}
        for lt in self.gb.leads:
            by_comp[lt[0]].append(tuple(reversed(lt[2:])))
        if not self.twists:
            return 0, [0]
        off = min(self.twists)
        total: list[int] = []
        for i, a in enumerate(self.twists):
            num = hilbert_numerator(by_comp[i], n) if by_comp[i] else [1]
            sh = a - off
            if len(total) < sh + len(num):
                total += [0] * (sh + len(num) - len(total))
            for e, c in enumerate(num):
                total[sh + e] += c
        while len(total) > 1 and total[-1] == 0:
            total.pop()
        return off, total

    @cached_property
    def dimension(self) -> int:
        """Krull dimension of the module (-1 for the zero module)."""
        return pole_order(self._numerator[1], self.ring.nvars)

    @property
    def is_finite_length(self) -> bool:
        return self.dimension <= 0

    @cached_property
    def top_degree(self) -> int | None:
        """Largest d with M_d != 0 (finite-length modules only)."""
        if self.is_zero:
            return None
        if not self.is_finite_length:
            raise ValueError("module is not of finite length")
        off, num = self._numerator
        n = self.ring.nvars
        coeffs = expand_hilbert(num, n, len(num) + 1)
        top = max(j for j, c in enumerate(coeffs) if c)
        return top + off

    def hilbert(self, bound: int):
        from .rings import HilbertData
        off, num = self._numerator
        n = self.ring.nvars
        if bound < off:
            return HilbertData(num, n, bound, [], off)
        return HilbertData(num, n, bound, expand_hilbert(num, n, bound - off), off)

    def length(self) -> int:
        """dim_k M for finite-length modules."""
        if self.is_zero:
            return 0
        top = self.top_degree
        return sum(len(self.basis(d)) for d in range(self.indeg, top + 1))

    # degree-wise linear algebra ----------------------------------------
    def basis(self, d: int) -> list:
        """Standard terms (keys) spanning M_d, in increasing key order."""
        cache = self._cache.setdefault("basis", {})
        if d not in cache:
            by_comp: dict[int, list] = {}
            for lt in self.gb.leads:
                by_comp.setdefault(lt[0], []).append(lt)
            out = []
            for i, a in enumerate(self.twists):
                leads = by_comp.get(i, ())
                for e in _monomials(self.ring.nvars, d - a):
                    k = mono(e, i)
                    if not any(_kdiv(l, k) for l in leads):
                        out.append(k)
            out.sort()
            cache[d] = (out, {k: j for j, k in enumerate(out)})
        return cache[d][0]

    def dim(self, d: int) -> int:
        return len(self.basis(d))

    def _index(self, d: int) -> dict:
        self.basis(d)
        return self._cache["basis"][d][1]

    def coords(self, v: Vec, d: int) -> np.ndarray:
        """Coordinate vector of a homogeneous degree-d element in the basis of M_d."""
        nf = self.reduce(v)
        idx = self._index(d)
        out = linalg.zeros(len(idx), 1, self.field)[:, 0]
        for k, c in nf.items():
            out[idx[k]] = c
        return out

    def element(self, coords, d: int) -> Vec:
        out = {}
        for k, c in zip(self.basis(d), coords):
            if c:
                out[k] = self.field(c) if self.field.p else c
        return out

    def mult_matrix(self, f: Vec, d: int) -> np.ndarray:
        """Matrix of multiplication by the homogeneous ring element f on M_d."""
        key = (tuple(sorted(f.items())), d)
        cache = self._cache.setdefault("mult", {})
        if key in cache:
            return cache[key]
        src = self.basis(d)
        e = key_degree(next(iter(f))) if f else 0
        tgt_dim = self.dim(d + e)
        out = linalg.zeros(tgt_dim, len(src), self.field)
        if f and tgt_dim:
            tcache = self._cache.setdefault("termnf", {})
            idx = self._index(d + e)
            p = self.field.p
            for j, b in enumerate(src):
                for fk, fc in f.items():
                    t = tuple(x + y for x, y in zip(b, fk))
                    nf = tcache.get(t)
                    if nf is None:
                        nf = [(idx[k], c) for k, c in self.reduce({t: self.field.one}).items()]
                        tcache[t] = nf
                    for i, c in nf:
                        out[i, j] = (out[i, j] + fc * c) % p if p else out[i, j] + fc * c
        cache[key] = out
        return out

    # properties used by the verification layer --------------------------
    def killed_by_max_ideal(self) -> bool:
        """True iff m M = 0."""
        R = self.ring
        for i in range(self.rank):
            for x in range(R.nvars):
                v = {with_comp(k, i): c for k, c in R.var(x).items()}
                if self.reduce(v):
                    return False
        return True

    def with_name(self, name: str) -> "GradedModule":
        self.name = name
        return self


def _kdiv(a, b) -> bool:
    if a[0] != b[0] or a[1] < b[1]:
        return False
    for i in range(2, len(a)):
        if a[i] > b[i]:
            return False
    return True


class ModuleMap:
    """Homogeneous degree-0 map given by the images of the source generators."""

    def __init__(self, source: GradedModule, target: GradedModule, columns, check: bool = True, name=None):
        if source.ring is not target.ring:
            raise InputError("map between modules over different rings")
        if len(columns) != source.rank:
            raise InputError(f"map needs {source.rank} columns, got {len(columns)}")
        self.source = source
        self.target = target
        self.columns = [dict(c) for c in columns]
        self.name = name
        self._cache: dict = {}
        if check:
            for i, c in enumerate(self.columns):
                if not c:
                    continue
                _check_vec(c, target.twists, f"image of generator {i}")
                if vdeg(c, target.twists) != source.twists[i]:
                    raise NonHomogeneous(
                        f"image of generator {i} has degree {vdeg(c, target.twists)}, expected {source.twists[i]}")
            for rel in source.relations:
                if target.reduce(self.apply_free(rel)):
                    raise NotWellDefined("map does not carry source relations into target relations")

    @property
    def ring(self):
        return self.source.ring

    def apply_free(self, v: Vec) -> Vec:
        """Image of a vector in the source free cover (not reduced)."""
        field = self.ring.field
        out: Vec = {}
        for k, c in v.items():
            col = self.columns[k[0]]
            axpy(out, c, col, (0,) + k[1:], field.p)
        return out

    def __call__(self, v: Vec) -> Vec:
        return self.target.reduce(self.apply_free(v))

    def compose(self, other: "ModuleMap") -> "ModuleMap":
        """``self ∘ other``."""
        if other.target is not self.source:
            raise InputError("maps are not composable")
        return ModuleMap(other.source, self.target, [self.apply_free(c) for c in other.columns], check=False)

    def matrix(self, d: int) -> np.ndarray:
        """k-matrix of the restriction M_d -> N_d."""
        if d in self._cache:
            return self._cache[d]
        src = self.source.basis(d)
        out = linalg.zeros(self.target.dim(d), len(src), self.ring.field)
        for j, b in enumerate(src):
            out[:, j] = self.target.coords(self.apply_free({b: self.ring.field.one}), d)
        self._cache[d] = out
        return out

    def is_zero(self) -> bool:
        return all(not self.target.reduce(c) for c in self.columns)


# ----------------------------------------------------------------------
# constructors

def free_module(R: GradedRing, twists=(0,), name=None) -> GradedModule:
    return GradedModule(R, twists, [], name)


def cokernel(R: GradedRing, rows, twists=None, name=None) -> GradedModule:
    """Module presented by a matrix given as rows of polynomials (or strings)."""
    rows = [[R.parse(e) if isinstance(e, str) else e for e in row] for row in rows]
    g = len(rows)
    ncols = len(rows[0]) if rows else 0
    if any(len(r) != ncols for r in rows):
        raise InputError("ragged relation matrix")
    if twists is None:
        twists = [0] * g
    if len(twists) != g:
        raise InputError("twist list length does not match the number of rows")
    cols = []
    for j in range(ncols):
        v: Vec = {}
        for i in range(g):
            for k, c in rows[i][j].items():
                v[with_comp(k, i)] = c
        cols.append(v)
    return GradedModule(R, twists, cols, name)


def residue_field(R: GradedRing, twist: int = 0) -> GradedModule:
    """k = R/m, generated in degree ``twist``."""
    cols = [move_to(R.var(i), 0) for i in range(R.nvars)]
    return GradedModule(R, (twist,), cols, "k")


def quotient_module(R: GradedRing, polys, twist: int = 0, name=None) -> GradedModule:
    """R/(polys) as a cyclic module."""
    polys = [R.parse(p) if isinstance(p, str) else p for p in polys]
    return GradedModule(R, (twist,), [move_to(p, 0) for p in polys], name)


def direct_sum(*mods: GradedModule, name=None):
    """Direct sum with its inclusion maps."""
    R = mods[0].ring
    twists, rels, offsets = [], [], []
    for M in mods:
        if M.ring is not R:
            raise InputError("direct sum of modules over different rings")
        off = len(twists)
        offsets.append(off)
        twists += M.twists
        rels += [{with_comp(k, k[0] + off): c for k, c in r.items()} for r in M.relations]
    S = GradedModule(R, twists, rels, name)
    incl = []
    for M, off in zip(mods, offsets):
        incl.append(ModuleMap(M, S, [S.gen(off + i) for i in range(M.rank)], check=False))
    proj = []
    for M, off in zip(mods, offsets):
        cols = [M.gen(i - off) if off <= i < off + M.rank else {} for i in range(S.rank)]
        proj.append(ModuleMap(S, M, cols, check=False))
    S.inclusions = incl
    S.projections = proj
    return S


def identity_map(M: GradedModule) -> ModuleMap:
    return ModuleMap(M, M, [M.gen(i) for i in range(M.rank)], check=False)


def zero_map(M: GradedModule, N: GradedModule) -> ModuleMap:
    return ModuleMap(M, N, [{} for _ in range(M.rank)], check=False)


def top_quotient(M: GradedModule):
    """``M/mM`` together with the canonical map ``pi^M``."""
    R = M.ring
    rels = list(M.relations)
    for i in range(M.rank):
        for x in range(R.nvars):
            rels.append(move_to(R.var(x), i))
    Q = GradedModule(R, M.twists, rels, f"{M.name or 'M'}/m{M.name or 'M'}")
    return Q, ModuleMap(M, Q, [Q.gen(i) for i in range(M.rank)], check=False)


def canonical_projection(M: GradedModule) -> ModuleMap:
    return top_quotient(M)[1]


# ----------------------------------------------------------------------
# pruning, kernels, images

def _minimal_columns(cols, twists, R: GradedRing):
    """Minimal generating subset of the span of ``cols`` modulo ``I * R^g``."""
    pre = free_prebasis(R.ideal_gb, len(twists))
    _, kept = buchberger(cols, twists, R.field, R.nvars, pre, R.degree_cap)
    red = ModuleGB(R.field, R.nvars, tuple(twists), pre)
    kept.sort(key=lambda i: (vdeg(cols[i], twists), i))
    return [red.reduce(cols[i]) for i in kept]


def prune(M: GradedModule):
    """Remove generators killed by unit entries of the relation matrix.

    Returns ``(P, to_pruned, from_pruned)``: an isomorphic module with no
    constant nonzero relation entries, and inverse isomorphisms.
    """
    R = M.ring
    field = R.field
    zero_mono = (0,) + (0,) * R.nvars
    rels = [dict(r) for r in M.relations]
    subst: dict[int, Vec] = {}

    def substitute(v: Vec, i: int, expr: Vec) -> Vec:
        coef = {with_comp(k, 0): c for k, c in v.items() if k[0] == i}
        if not coef:
            return v
        out = {k: c for k, c in v.items() if k[0] != i}
        for k, c in coef.items():
            axpy(out, c, expr, k, field.p)
        return out

    while True:
        hit = None
        for ci, col in enumerate(rels):
            for k, c in col.items():
                if k[1] == 0:
                    hit = (ci, k[0], c)
                    break
            if hit:
                break
        if hit is None:
            break
        ci, i, u = hit
        col = rels.pop(ci)
        inv = field.inv(u)
        expr = {k: field.neg(c * inv % field.p if field.p else c * inv) for k, c in col.items() if k[0] != i}
        rels = [substitute(r, i, expr) for r in rels]
        rels = [r for r in rels if r]
        for j in list(subst):
            subst[j] = substitute(subst[j], i, expr)
        subst[i] = expr
    alive = [i for i in range(M.rank) if i not in subst]
    renum = {old: new for new, old in enumerate(alive)}

    def translate(v: Vec) -> Vec:
        out: Vec = {}
        for k, c in v.items():
            if k[0] in subst:
                axpy(out, c, subst[k[0]], (0,) + k[1:], field.p)
            else:
                axpy(out, c, {k: field.one}, None, field.p)
        return {with_comp(k, renum[k[0]]): c for k, c in out.items()}

    P = GradedModule(R, [M.twists[i] for i in alive], [translate(r) for r in rels], M.name)
    to_p = ModuleMap(M, P, [translate(M.gen(i)) for i in range(M.rank)], check=False)
    from_p = ModuleMap(P, M, [M.gen(i) for i in alive], check=False)
    return P, to_p, from_p


def minimal_presentation(M: GradedModule):
    """Pruned module with a minimal set of relations, plus the isomorphisms."""
    P, to_p, from_p = prune(M)
    rels = _minimal_columns(P.relations, P.twists, P.ring)
    Q = GradedModule(P.ring, P.twists, rels, M.name)
    to_q = ModuleMap(M, Q, to_p.columns, check=False)
    from_q = ModuleMap(Q, M, from_p.columns, check=False)
    return Q, to_q, from_q


def _preimage_generators(f: ModuleMap):
    """Generators (in the source free cover) of {u : f(u) = 0 in the target}."""
    R = f.ring
    N = f.target
    cols = list(f.columns) + list(N.relations)
    degs = list(f.source.twists) + N.relation_degrees
    gens, _ = syzygies(cols, N.twists, degs, R.field, R.nvars, R.ideal_gb, R.degree_cap)
    g = f.source.rank
    out = []
    for v in gens:
        w = {k: c for k, c in v.items() if k[0] < g}
        if w:
            out.append(w)
    return out


def kernel_of_map(f: ModuleMap, name=None) -> GradedModule:
    """Presentation of ker f; the result carries ``.inclusion`` into f.source."""
    R = f.ring
    M = f.source
    U = _preimage_generators(f)
    # minimal generators of U modulo the relations of M
    _, kept = buchberger(U, M.twists, R.field, R.nvars, M.gb.elements, R.degree_cap)
    kept.sort(key=lambda i: (vdeg(U[i], M.twists), i))
    U = [M.reduce(U[i]) for i in kept]
    udeg = [vdeg(u, M.twists) for u in U]
    if not U:
        K = GradedModule(R, [], [], name)
        K.inclusion = ModuleMap(K, M, [], check=False)
        return K
    cols = U + list(M.relations)
    degs = udeg + M.relation_degrees
    gens, _ = syzygies(cols, M.twists, degs, R.field, R.nvars, R.ideal_gb, R.degree_cap)
    m = len(U)
    rels = []
    for v in gens:
        w = {k: c for k, c in v.items() if k[0] < m}
        if w:
            rels.append(w)
    rels = _minimal_columns(rels, udeg, R) if rels else []
    K = GradedModule(R, udeg, rels, name)
    K.inclusion = ModuleMap(K, M, U, check=False)
    return K


def image(f: ModuleMap, name=None) -> GradedModule:
    """im f presented on the images of the source generators (then pruned).

    The result carries ``.inclusion`` into f.target.
    """
    R = f.ring
    rels = _preimage_generators(f)
    rels = _minimal_columns(rels, f.source.twists, R) if rels else []
    I0 = GradedModule(R, f.source.twists, rels, name)
    P, _, from_p = prune(I0)
    cols = [f.apply_free(c) for c in from_p.columns]
    P.inclusion = ModuleMap(P, f.target, cols, check=False)
    return P


def submodule(N: GradedModule, vectors, name=None) -> GradedModule:
    """Submodule of N generated by homogeneous vectors of its free cover."""
    R = N.ring
    twists = [vdeg(v, N.twists) for v in vectors]
    if any(t is None for t in twists):
        raise InputError("zero vector among submodule generators")
    F = free_module(R, twists)
    return image(ModuleMap(F, N, vectors), name)


def syzygies_over_R(M: GradedModule):
    """Minimal syzygies among the relation columns of M, i.e. generators of
    the kernel of R^r -> R^g given by the presentation matrix, with degrees."""
    R = M.ring
    return syzygies(list(M.relations), M.twists, M.relation_degrees, R.field, R.nvars, R.ideal_gb,
                    R.degree_cap)


def max_ideal_times(N: GradedModule, name=None) -> GradedModule:
    """m N with its inclusion into N."""
    R = N.ring
    vecs = []
    for i in range(N.rank):
        for x in range(R.nvars):
            v = move_to(R.var(x), i)
            if N.reduce(v):
                vecs.append(v)
    if not vecs:
        Z = GradedModule(R, [], [], name)
        Z.inclusion = ModuleMap(Z, N, [], check=False)
        return Z
    return submodule(N, vecs, name)


def intersect_max_ideal(beta: ModuleMap, name=None) -> GradedModule:
    """``M ∩ mN = beta^{-1}(mN)`` with its inclusion into M."""
    _, piN = top_quotient(beta.target)
    return kernel_of_map(piN.compose(beta), name)


def shift_poly_vars(v: Vec, var_map: list[int], nvars: int) -> Vec:
    """Re-embed a vector whose variables are re-indexed by ``var_map``."""
    out = {}
    for k, c in v.items():
        e = [0] * nvars
        old = tuple(reversed(k[2:]))
        for i, a in enumerate(old):
            e[var_map[i]] += a
        out[mono(e, k[0])] = c
    return out


def restrict_scalars(N: GradedModule, R: GradedRing, var_map: list[int], name=None) -> GradedModule:
    """N over S viewed over R via R -> S sending the mapped variables to S's
    variables and every other variable of R to zero."""
    if N.ring.field != R.field:
        raise InputError("field mismatch")
    rels = [shift_poly_vars(r, var_map, R.nvars) for r in N.relations]
    others = [i for i in range(R.nvars) if i not in var_map]
    for i in range(N.rank):
        for x in others:
            rels.append(move_to(R.var(x), i))
    return GradedModule(R, N.twists, rels, name or N.name)


def restrict_map(f: ModuleMap, src: GradedModule, tgt: GradedModule, var_map) -> ModuleMap:
    R = src.ring
    return ModuleMap(src, tgt, [shift_poly_vars(c, var_map, R.nvars) for c in f.columns])


__all__ = [
    "GradedModule", "ModuleMap", "free_module", "cokernel", "residue_field", "quotient_module",
    "direct_sum", "identity_map", "zero_map", "top_quotient", "canonical_projection", "prune",
    "minimal_presentation", "kernel_of_map", "syzygies_over_R", "image", "submodule", "max_ideal_times",
    "intersect_max_ideal", "restrict_scalars", "restrict_map", "MismatchedV",
]
