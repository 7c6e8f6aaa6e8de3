import pytest
from hypothesis import given, settings, strategies as st

from gradedbass import (
    HypothesisViolated,
    ModuleMap,
    check_bass_decomposition,
    check_closed_formula,
    check_fiber_bass,
    check_lescot_transfer,
    check_regular_remark,
    check_tor_corollary,
    check_zero_map_theorem,
    fiber_ring,
    free_module,
    identity_map,
    induced_ext_map,
    max_ideal_times,
    quotient_module,
    regularity_report,
    residue_field,
    top_quotient,
)
from gradedbass.checks import is_singular, regular_remark_table
from gradedbass.dense import MonomialAlgebra, dense_bass_ring, dense_betti_residue
from gradedbass.homology import bass_numbers, ring_module
from gradedbass.resolution import betti_numbers

from conftest import ring


def pi(M):
    return top_quotient(M)[1]


def test_zero_map_theorem_examples():
    R = ring("x", "x^2")
    assert check_zero_map_theorem(pi(free_module(R)), D=6).passed
    R = ring("xy", "x^2")
    rep = check_zero_map_theorem(pi(quotient_module(R, ["y"])), D=6)
    assert rep.passed and rep.witnesses["pd"] == 1
    with pytest.raises(HypothesisViolated):
        check_zero_map_theorem(pi(free_module(ring("xy"))))
    assert not induced_ext_map(pi(free_module(ring("xy"))), 2).is_zero


def test_zero_map_rejects_infinite_pd_witness():
    R = ring("x", "x^2")
    with pytest.raises(HypothesisViolated):
        check_zero_map_theorem(pi(residue_field(R)))


def test_tor_corollary_examples():
    R = ring("x", "x^2")
    k1 = residue_field(R, 1)
    F = free_module(R)
    alpha = ModuleMap(k1, F, [R.parse("x")])
    assert check_tor_corollary(alpha, (alpha, identity_map(F))).passed
    k = residue_field(R)
    with pytest.raises(HypothesisViolated):
        check_tor_corollary(identity_map(k), None)
    R = ring("xy", "x^2")
    W = quotient_module(R, ["y"])
    a = ModuleMap(residue_field(R, 1), W, [R.parse("x")])
    assert check_tor_corollary(a, (a, identity_map(W))).passed


@pytest.mark.parametrize("vars_, gens, regular, wit", [
    ("xy", [], True, {"ii": 2, "iv": 2, "v": 3}),
    ("x", [], True, {"ii": 1, "iv": 1, "v": 2}),
    ("x", ["x^2"], False, {}),
    ("xy", ["x^2", "x*y", "y^2"], False, {}),
])
def test_regularity_report(vars_, gens, regular, wit):
    rep = regularity_report(ring(vars_, *gens), D=6)
    assert rep.passed
    assert set(rep.rows[0].values()) == {regular}
    for key, n in wit.items():
        assert rep.witnesses[key] == n


def test_bass_decomposition_examples():
    R = ring("xy", "x^2")
    rep = check_bass_decomposition(identity_map(free_module(R)), 6)
    assert rep.passed and [r["left"] for r in rep.rows] == [0, 2, 2, 2, 2, 2, 2]
    R = ring("x", "x^2")
    rep = check_bass_decomposition(identity_map(free_module(R)), 6)
    assert rep.passed and [r["left"] for r in rep.rows] == [1] * 7
    with pytest.raises(HypothesisViolated):
        check_bass_decomposition(identity_map(free_module(ring("xy"))))


def test_closed_formula_examples():
    R = ring("xy", "x^2")
    N = quotient_module(R, ["y"])
    mN = max_ideal_times(N)
    rep = check_closed_formula(mN.inclusion, 6)
    assert rep.passed and rep.witnesses["s"] == 1
    assert [r["left"] for r in rep.rows if "left" in r and "n" in r] == [1, 2, 2, 2, 2, 2, 2]
    R = ring("x", "x^2")
    F = free_module(R)
    rep = check_closed_formula(max_ideal_times(F).inclusion, 6)
    assert rep.passed and [r["left"] for r in rep.rows if "n" in r] == [1] * 7
    rep = check_closed_formula(identity_map(quotient_module(ring("xy", "x^2"), ["y"])), 4)
    assert rep.passed and rep.witnesses["s"] == 0


@pytest.mark.parametrize("vars_, rank, D, expect", [
    ("xy", 1, 4, [0, 1, 2, 0, 0]),
    ("x", 2, 3, [0, 2, 0, 0]),
    ("xyz", 1, 5, [0, 1, 3, 3, 0, 0]),
])
def test_regular_remark(vars_, rank, D, expect):
    R = ring(vars_)
    rep = check_regular_remark(free_module(R, (0,) * rank), D)
    assert rep.passed
    assert [r["left"] for r in rep.rows] == expect
    assert regular_remark_table(rank, len(vars_), D) == expect


def test_lescot_transfer():
    S = ring("x", "x^2")
    FR = fiber_ring(S, ring("y", "y^2"))
    rep = check_lescot_transfer(FR, free_module(S), 3)
    assert rep.passed and rep.witnesses["bass_over_R"] == [1, 1, 2, 4]
    rep = check_lescot_transfer(FR, residue_field(S), 4)
    assert rep.passed and rep.rows[0]["left"] == [[0, 1]]
    FR3 = fiber_ring(S, ring("y", "y^3"))
    rep = check_lescot_transfer(FR3, free_module(S), 6)
    assert rep.passed and rep.witnesses["bass_over_R"] == [1, 1, 2, 4, 8, 16, 32]


def test_fiber_bass():
    S, T = ring("x", "x^2"), ring("y", "y^2")
    FR = fiber_ring(S, T)
    rep = check_fiber_bass(FR, free_module(S), free_module(T), D=3)
    assert rep.passed and rep.rows[0]["bass_mM"] == [2, 4, 8, 16]


def test_boundary_between_theorems():
    # exactly one of: singular (zero-map theorem applies) or regular (remark applies)
    for vars_, gens in [("x", []), ("xy", []), ("x", ["x^2"]), ("xy", ["x^2"]), ("xy", ["x^2", "x*y", "y^2"])]:
        R = ring(vars_, *gens)
        F = free_module(R)
        try:
            check_zero_map_theorem(pi(F), D=2)
            zero_ok = True
        except HypothesisViolated:
            zero_ok = False
        try:
            check_regular_remark(F, 2)
            remark_ok = True
        except HypothesisViolated:
            remark_ok = False
        assert zero_ok != remark_ok
        assert zero_ok == is_singular(R)


def test_checks_are_deterministic():
    R = ring("xy", "x^2")
    a = check_bass_decomposition(identity_map(free_module(R)), 4).to_dict()
    R = ring("xy", "x^2")
    b = check_bass_decomposition(identity_map(free_module(R)), 4).to_dict()
    assert a == b


# ------------------------------------------------------------------- dense oracle

@st.composite
def artinian_monomial(draw):
    n = draw(st.integers(2, 3))
    gens = []
    for i in range(n):
        e = [0] * n
        e[i] = draw(st.integers(2, 3))
        gens.append(tuple(e))
    for _ in range(draw(st.integers(0, 2))):
        e = tuple(draw(st.integers(0, 2)) for _ in range(n))
        if 2 <= sum(e) <= 4:
            gens.append(e)
    return n, gens


def _ring_from(n, gens):
    names = "xyz"[:n]
    polys = ["*".join(f"{v}^{a}" for v, a in zip(names, e) if a) for e in gens]
    return ring(names, *polys)


@settings(max_examples=8, deadline=None)
@given(artinian_monomial())
def test_dense_oracle_matches_pipeline(case):
    n, gens = case
    R = _ring_from(n, gens)
    A = MonomialAlgebra(n, gens, R.field)
    assert dense_betti_residue(A, 4) == betti_numbers(residue_field(R), 4)
    assert dense_bass_ring(A, 4) == bass_numbers(ring_module(R), 4)


def test_dense_oracle_known_values():
    A = MonomialAlgebra(2, [(2, 0), (1, 1), (0, 2)])
    assert dense_betti_residue(A, 4) == [1, 2, 4, 8, 16]
    assert dense_bass_ring(A, 3) == [2, 3, 6, 12]
    G = MonomialAlgebra(1, [(2,)])
    assert dense_bass_ring(G, 3) == [1, 0, 0, 0]  # Gorenstein: socle dimension 1
