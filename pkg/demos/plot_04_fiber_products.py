"""
Fiber products and Bass series
==============================

The fiber product R = S x_k T glues two local rings along their residue
field.  Bass series over R can be read off from the factors after dividing
by the Poincare series of k.
"""

from gradedbass import (
    Field,
    TruncatedSeries,
    bass_numbers,
    check_fiber_bass,
    check_lescot_transfer,
    fiber_ring,
    free_module,
    max_ideal_times,
    validate_ring,
)

S = validate_ring(Field(), ["x"], ["x^2"])
T = validate_ring(Field(), ["y"], ["y^3"])
FR = fiber_ring(S, T)
print("R =", FR.ring)

rep = check_lescot_transfer(FR, free_module(S), D=6)
print("Bass numbers of S over R:", rep.witnesses["bass_over_R"])

# They match the expansion of (1 - t)/(1 - 2t).
one_minus_t = TruncatedSeries.polynomial([1, -1])
print("(1-t)/(1-2t):", one_minus_t.divide(TruncatedSeries.polynomial([1, -2]), 6).coefficients(0, 6))

# For T = k[y]/(y^2) the maximal ideal of R has Bass numbers 2^(n+1).
T2 = validate_ring(Field(), ["y"], ["y^2"])
FR2 = fiber_ring(S, T2)
print("mu(m_R):", bass_numbers(max_ideal_times(free_module(FR2.ring)), 6))
print("series identity:", check_fiber_bass(FR2, free_module(S), free_module(T2), D=6).verdict)
