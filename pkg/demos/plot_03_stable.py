"""
Stable cohomology over a hypersurface
=====================================

Over R = k[x]/(x^2) every module has a 2-periodic complete resolution built
from a matrix factorization.  Stable Ext is then defined in every integer
degree, and the comparison map from ordinary Ext is eventually bijective.
"""

from gradedbass import (
    Field,
    additivity_check,
    eta_map,
    free_module,
    matrix_factorization,
    residue_field,
    stable_ext,
    validate_ring,
)

R = validate_ring(Field(), ["x"], ["x^2"])
k, F = residue_field(R), free_module(R)

mf = matrix_factorization(k)
print("A =", mf.rows("A"), " B =", mf.rows("B"), " AB = BA = f:", mf.verify())

rep = stable_ext(k, k, (-4, 6))
print("stable Ext^n(k, k):", rep.dims, "periodic:", rep.periodic)

# Stable Ext vanishes as soon as one argument has finite projective dimension.
print("stable Ext^n(k, R):", stable_ext(k, F, (-4, 6)).dims)

for n in range(4):
    e = eta_map(k, k, n)
    print(f"eta^{n}: injective={e.is_injective} surjective={e.is_surjective}")

add = additivity_check(k, [k, k], 2)
print("additivity over k + k:", add.sum_dim, "=", add.part_dims, "diagonal:", add.blocks_diagonal)
