import pytest
from hypothesis import given, settings, strategies as st

from gradedbass import (
    FieldMismatch,
    Field,
    MismatchedV,
    NonUnitConstantTerm,
    TruncatedSeries,
    WindowExhausted,
    bass_series,
    direct_sum,
    fiber_module,
    fiber_ring,
    free_module,
    max_ideal_times,
    poincare_series,
    residue_field,
    validate_ring,
)

from conftest import ring

T = TruncatedSeries


def test_geometric_series():
    s = T.polynomial([1]).divide(T.polynomial([1, -1]), 4)
    assert s.coefficients(0, 4) == [1, 1, 1, 1, 1]
    assert s.hi == 4


def test_division_long_division_oracle():
    s = T.polynomial([1, -1]).divide(T.polynomial([1, -2]), 3)
    assert s.coefficients(0, 3) == [1, 1, 2, 4]


def test_substitute_inverse():
    s = T.polynomial([1, 1]).substitute_inverse()
    assert s.pairs() == [[-1, 1], [0, 1]]
    with pytest.raises(WindowExhausted):
        T.truncated([1, 1], 3).substitute_inverse()


def test_non_unit_constant_term():
    with pytest.raises(NonUnitConstantTerm):
        T.polynomial([1]).divide(T.polynomial([2, 1]), 3)


def test_truncation_tracking():
    a = T.truncated([1, 2, 3], 2)
    b = T.polynomial([0, 1])
    assert (a * b).hi == 3
    assert (a + b).hi == 2
    with pytest.raises(WindowExhausted):
        _ = a[3]


coeff_lists = st.lists(st.integers(-4, 4), min_size=1, max_size=5)


def _series(cs, hi):
    return T.truncated(cs, hi) if hi is not None else T.polynomial(cs)


@settings(max_examples=80, deadline=None)
@given(coeff_lists, coeff_lists, coeff_lists, st.sampled_from([None, 3, 5]), st.sampled_from([None, 4]))
def test_ring_axioms_on_certified_window(a, b, c, ha, hb):
    A, B, C = _series(a, ha), _series(b, hb), T.polynomial(c)
    left, right = (A * B) * C, A * (B * C)
    top = min(h for h in (left.hi, right.hi, 8) if h is not None)
    assert left.agrees_with(right, top)
    ab, ba = A * B, B * A
    top = min(h for h in (ab.hi, 8) if h is not None)
    assert ab.agrees_with(ba, top)
    s = (A + B) * C
    t = A * C + B * C
    top = min(h for h in (s.hi, t.hi, 8) if h is not None)
    assert s.agrees_with(t, top)


@settings(max_examples=60, deadline=None)
@given(coeff_lists, coeff_lists, st.sampled_from([1, -1]))
def test_division_inverts_multiplication(a, b, u):
    B = T.polynomial([u] + b)
    A = T.polynomial(a)
    q = (A * B).divide(B, 6)
    assert q.agrees_with(A, 6)


def test_bass_and_poincare_series():
    R = ring("x", "x^2")
    assert bass_series(free_module(R), 4).coefficients(0, 4) == [1, 0, 0, 0, 0]
    R = ring("xy", "x^2", "x*y", "y^2")
    assert poincare_series(residue_field(R), 3).coefficients(0, 3) == [1, 2, 4, 8]
    R = ring("xy")
    p = poincare_series(residue_field(R), 6)
    assert p.is_exact and p.pairs() == [[0, 1], [1, 2], [2, 1]]


# ---------------------------------------------------------------- fiber rings

def test_fiber_ring_presentations():
    S, T_ = ring("x", "x^2"), ring("y", "y^2")
    FR = fiber_ring(S, T_)
    assert FR.ring.variables == ["x", "y"]
    assert sorted(FR.ring.format(g) for g in FR.ring.ideal_gens) == ["x*y", "x^2", "y^2"]
    FR3 = fiber_ring(S, ring("y", "y^3"))
    assert sorted(FR3.ring.format(g) for g in FR3.ring.ideal_gens) == ["x*y", "x^2", "y^3"]


def test_fiber_ring_renames_clashing_variables_and_is_symmetric():
    A, B = ring("x", "x^2"), ring("x", "x^3")
    FR = fiber_ring(A, B)
    assert FR.ring.variables == ["x1", "y1"]
    GR = fiber_ring(B, A)
    for d in range(6):
        assert FR.ring.basis(d).__len__() == GR.ring.basis(d).__len__()


def test_fiber_ring_field_mismatch():
    with pytest.raises(FieldMismatch):
        fiber_ring(ring("x", "x^2"), validate_ring(Field(101), ["y"], ["y^2"]))


def test_fiber_module_of_free_modules_is_the_ring():
    S, T_ = ring("x", "x^2"), ring("y", "y^2")
    FR = fiber_ring(S, T_)
    fm = fiber_module(FR, free_module(S), free_module(T_))
    assert fm.v == 1
    assert [fm.module.dim(d) for d in range(4)] == [FR.ring.basis(d).__len__() for d in range(4)]
    mM = max_ideal_times(fm.module)
    mN = FR.restrict_left(max_ideal_times(free_module(S)))
    mP = FR.restrict_right(max_ideal_times(free_module(T_)))
    assert [mM.dim(d) for d in range(4)] == [mN.dim(d) + mP.dim(d) for d in range(4)] == [0, 2, 0, 0]


def test_fiber_module_mismatched_v():
    S, T_ = ring("x", "x^2"), ring("y", "y^2")
    FR = fiber_ring(S, T_)
    N = direct_sum(max_ideal_times(free_module(S)), free_module(S))
    with pytest.raises(MismatchedV):
        fiber_module(FR, N, free_module(T_))


def test_fiber_module_hilbert_identity():
    S, T_ = ring("x", "x^3"), ring("y", "y^2")
    FR = fiber_ring(S, T_)
    N, P = free_module(S, (0, 1)), free_module(T_, (0, 1))
    fm = fiber_module(FR, N, P)
    for d in range(5):
        v = 1 if d in (0, 1) else 0  # V = k (+) k(-1)
        assert fm.module.dim(d) == N.dim(d) + P.dim(d) - v
