"""
Hom spaces, extensions and Baer sums
====================================

Hom is computed by one of three routes: through a projective presentation
of the domain, through an injective co-presentation of the codomain, or by
solving naturality equations on a certified window.  All routes agree; the
window route carries a stability certificate instead of a presentation.
"""

from arknit import (
    baer_sum,
    ext_class_to_ses,
    ext_space,
    hom_space,
    injective_at,
    is_split,
    parse_quiver,
    projective_at,
    simple_at,
    verify_exact,
)

a3 = parse_quiver({"preset": "linear", "n": 3})
kron = parse_quiver({"preset": "kronecker"})

# Hom(P_a, N) is N at a; Hom(N, I_a) is the dual statement.
h = hom_space(projective_at(a3, 2), injective_at(a3, 2))
print("Hom(P_2, I_2): dim", h.dimension, "via", h.route)
for route in ("presentation", "copresentation", "window"):
    print(f"  {route:14s} ->",
          hom_space(simple_at(a3, 2), injective_at(a3, 2),
                    route=route).dimension)

# Ext classes parameterize short exact sequences 0 -> sub -> E -> quot -> 0.
# On the Kronecker quiver Ext(S_1, S_2) is two dimensional.
ecb = ext_space(simple_at(kron, 1), simple_at(kron, 2))
print("Ext(S_1, S_2) on Kronecker: dim", ecb.dimension)

ses = ext_class_to_ses(ecb, [1, 0])
print("middle dims:", [ses.middle.dim(v) for v in (1, 2)],
      "split?", is_split(ses))
print("exact on {1,2}:", verify_exact(ses, (1, 2))["exact"])

# The Baer sum adds classes; a class plus its negative is split.
neg = ext_class_to_ses(ecb, [-1, 0])
print("class + (-class) split?", is_split(baer_sum(ses, neg)))
