"""Fiber products S x_k T of rings and N x_V P of modules."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import FieldMismatch, InputError, MismatchedV
from .modules import (
    GradedModule,
    ModuleMap,
    direct_sum,
    kernel_of_map,
    minimal_presentation,
    residue_field,
    restrict_scalars,
    shift_poly_vars,
)
from .poly import mono
from .rings import GradedRing, expand_hilbert


@dataclass
class FiberRing:
    """R = S x_k T presented as k[x, y]/(I_S + I_T + (x_i y_j))."""

    ring: GradedRing
    left: GradedRing
    right: GradedRing
    left_vars: list
    right_vars: list
    hilbert_checked_to: int

    def restrict_left(self, N: GradedModule, name=None) -> GradedModule:
        return restrict_scalars(N, self.ring, self.left_vars, name)

    def restrict_right(self, P: GradedModule, name=None) -> GradedModule:
        return restrict_scalars(P, self.ring, self.right_vars, name)


def _names(S: GradedRing, T: GradedRing):
    a, b = list(S.variables), list(T.variables)
    if not set(a) & set(b):
        return a, b
    return [f"x{i + 1}" for i in range(len(a))], [f"y{j + 1}" for j in range(len(b))]


def fiber_ring(S: GradedRing, T: GradedRing, check_bound: int = 8, name=None) -> FiberRing:
    """Fiber product over the common residue field; x-block before y-block."""
    if S.field != T.field:
        raise FieldMismatch(f"residue fields differ: {S.field.name} vs {T.field.name}")
    xs, ys = _names(S, T)
    n = len(xs) + len(ys)
    lmap = list(range(len(xs)))
    rmap = list(range(len(xs), n))
    gens = [shift_poly_vars(g, lmap, n) for g in S.ideal_gens]
    gens += [shift_poly_vars(g, rmap, n) for g in T.ideal_gens]
    for i in lmap:
        for j in rmap:
            e = [0] * n
            e[i] = e[j] = 1
            gens.append({mono(e): S.field.one})
    R = GradedRing(S.field, xs + ys, gens, name, max(S.degree_cap, T.degree_cap))
    hR = expand_hilbert(R.hilbert_numerator, R.nvars, check_bound)
    hS = expand_hilbert(S.hilbert_numerator, S.nvars, check_bound)
    hT = expand_hilbert(T.hilbert_numerator, T.nvars, check_bound)
    expect = [a + b for a, b in zip(hS, hT)]
    expect[0] -= 1
    if hR != expect:
        raise InputError("fiber product presentation failed the Hilbert series check H_R = H_S + H_T - 1")
    return FiberRing(R, S, T, lmap, rmap, check_bound)


@dataclass
class FiberModule:
    module: GradedModule
    left: GradedModule
    right: GradedModule
    v: int
    matching: list
    hilbert_checked_to: int


def _minimal(N: GradedModule) -> GradedModule:
    return minimal_presentation(N)[0]


def fiber_module(FR: FiberRing, N: GradedModule, P: GradedModule, matching=None,
                 check_bound: int = 8, name=None) -> FiberModule:
    """N x_V P = ker(N (+) P -> V) with V = k^v glued along minimal generators.

    ``matching[i]`` is the generator of P matched to generator i of N
    (identity by default); matched generators must sit in the same degree.
    """
    if N.ring is not FR.left or P.ring is not FR.right:
        raise InputError("modules must live over the constituent rings of the fiber product")
    Nm, Pm = _minimal(N), _minimal(P)
    v = Nm.rank
    if Pm.rank != v:
        raise MismatchedV(f"rank_k N/mN = {v} but rank_k P/mP = {Pm.rank}")
    matching = list(range(v)) if matching is None else list(matching)
    if sorted(matching) != list(range(v)):
        raise MismatchedV("matching is not a bijection between minimal generators")
    if any(Nm.twists[i] != Pm.twists[matching[i]] for i in range(v)):
        raise MismatchedV("matched generators live in different degrees")
    R = FR.ring
    NR = FR.restrict_left(Nm, "N")
    PR = FR.restrict_right(Pm, "P")
    V = direct_sum(*[residue_field(R, a) for a in Nm.twists]) if v else GradedModule(R, [], [])
    D = direct_sum(NR, PR)
    field = R.field
    cols = []
    for i in range(v):
        cols.append(V.gen(i))
    inv = {matching[i]: i for i in range(v)}
    for j in range(v):
        cols.append({k: field.neg(c) for k, c in V.gen(inv[j]).items()})
    phi = ModuleMap(D, V, cols)
    M = kernel_of_map(phi, name or "M")
    # exactness of 0 -> M -> N (+) P -> V -> 0, degree by degree
    lo = min(Nm.twists + Pm.twists) if v else 0
    for d in range(lo, check_bound + 1):
        if M.dim(d) != NR.dim(d) + PR.dim(d) - V.dim(d):
            raise InputError(f"fiber module failed the Hilbert series check in degree {d}")
    return FiberModule(M, Nm, Pm, v, matching, check_bound)


__all__ = ["FiberRing", "FiberModule", "fiber_ring", "fiber_module"]
