"""
Resolutions, Betti numbers and Bass numbers
===========================================

A graded quotient R = k[x, y]/(x^2) is a one dimensional hypersurface.
We resolve the residue field, read off Betti numbers, and compute Bass
numbers of a few modules from the graded Ext groups.
"""

from gradedbass import (
    Field,
    bass_numbers,
    betti_numbers,
    ext_k,
    free_module,
    max_ideal_times,
    minimal_free_resolution,
    quotient_module,
    residue_field,
    validate_ring,
)

R = validate_ring(Field(), ["x", "y"], ["x^2"])
k = residue_field(R)

# The minimal resolution of k is eventually 2-periodic of rank 2.
F = minimal_free_resolution(k, 5)
print("ranks:", [F.rank(i) for i in range(6)])
print("d^2 = 0:", F.check_d_squared(), " minimal:", F.is_minimal_check())

# Betti and Bass numbers of k agree, as they must for the residue field.
print("beta(k):", betti_numbers(k, 6))
print("mu(k):  ", bass_numbers(k, 6))

# R itself is Gorenstein of dimension 1, so its Bass numbers are t^1.
print("mu(R):  ", bass_numbers(free_module(R), 6))

# The maximal ideal picks up the Betti numbers of k shifted by one.
print("mu(m):  ", bass_numbers(max_ideal_times(free_module(R)), 6))

# Ext groups are graded; each one carries the window on which it was certified.
E = ext_k(quotient_module(R, ["y"]), 1)
print("Ext^1(k, R/(y)) by degree:", {j: d for j, d in E.dims.items() if d}, E.window)
