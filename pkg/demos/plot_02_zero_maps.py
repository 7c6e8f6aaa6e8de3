"""
Zero maps on Ext and the regularity criteria
============================================

Over a singular ring, the projection of a module of finite projective
dimension onto its top N -> N/mN induces the zero map on Ext(k, -).  Over a
regular ring the same projection is nonzero in degree dim R.  Here we look at
both sides and at the five equivalent descriptions of regularity.
"""

from gradedbass import (
    Field,
    check_zero_map_theorem,
    free_module,
    induced_ext_map,
    quotient_module,
    regularity_report,
    top_quotient,
    validate_ring,
)

singular = validate_ring(Field(), ["x", "y"], ["x^2"])
regular = validate_ring(Field(), ["x", "y"], [])

N = quotient_module(singular, ["y"])
_, pi = top_quotient(N)
print("singular ring, N = R/(y):")
for n in range(4):
    print(f"  Ext^{n}(k, pi) zero: {induced_ext_map(pi, n).is_zero}")
print("  check:", check_zero_map_theorem(pi, D=6).verdict)

_, pi_reg = top_quotient(free_module(regular))
print("regular ring, degree 2 map zero:", induced_ext_map(pi_reg, 2).is_zero)

# The regularity criteria either all hold or all fail.
for R in (regular, singular):
    rep = regularity_report(R, D=5)
    print(R, rep.rows[0], rep.witnesses)
