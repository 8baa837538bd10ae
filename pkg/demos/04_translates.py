"""
Translates and almost split sequences
=====================================

The translate tau sends a non-projective object to the sub term of the
almost split sequence ending at it; tau_inv goes the other way.  Both are
computed from minimal (co)presentations, and every sequence can be
re-verified against a battery of test objects: exactness, non-splitness,
indecomposable ends, and the lifting/factoring property.
"""

from arknit import (
    almost_split_sequence,
    dim_vector,
    injective_at,
    is_pseudo_projective,
    iso_test,
    parse_quiver,
    projective_at,
    simple_at,
    tau,
    tau_inv,
    verify_almost_split,
)

a3 = parse_quiver({"preset": "linear", "n": 3})
V = (1, 2, 3)

print("tau(S_2)     =", dim_vector(tau(simple_at(a3, 2)), V))
print("tau_inv(S_2) =", dim_vector(tau_inv(simple_at(a3, 2)), V))
print("round trip S_2:",
      iso_test(tau_inv(tau(simple_at(a3, 2))), simple_at(a3, 2)) is not None)

# tau is undefined on projectives, tau_inv on injectives.
try:
    tau(projective_at(a3, 1))
except ValueError as e:
    print("tau(P_1):", e)

# The almost split sequence ending at S_2, verified against a battery.
ses = almost_split_sequence(simple_at(a3, 2))
print("sequence dims:", dim_vector(ses.sub, V), "->",
      dim_vector(ses.middle, V), "->", dim_vector(ses.quot, V))
battery = [simple_at(a3, v) for v in V] + \
          [projective_at(a3, v) for v in V] + \
          [injective_at(a3, v) for v in V]
report = verify_almost_split(ses, battery)
print("battery of", report.battery_size, "objects passed:", report.passed)

# On infinite shapes tau can leave the finite-dimensional world entirely:
# a pseudo-projective object is fp with an infinite dimensional translate.
ladder = parse_quiver({"preset": "ladder"})
print("simple at b_1 on the ladder pseudo-projective:",
      is_pseudo_projective(simple_at(ladder, ("b", 1))))
