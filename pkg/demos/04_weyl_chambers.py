"""
Counting chambers cut by a random subspace
==========================================

The absorption probability equals the fraction of Weyl chambers of a
reflection arrangement met by a generic subspace. Here the arrangement's
characteristic polynomial is computed twice and the chamber count is found
by brute force over the whole group.
"""

from fractions import Fraction

from hullwalk import absorption_prob
from hullwalk.chambers import (
    ArrangementSpec,
    chamber_intersect_count,
    char_poly_product,
    char_poly_whitney,
    predicted_intersect_count,
    random_kernel_subspace,
    reflection_hyperplanes,
    zaslavsky_regions,
)

spec = ArrangementSpec((2,), (3,))   # B2 x A2: a 2-step walk and a 3-step bridge
chi = char_poly_product(spec)
print(spec, "group order", spec.order)
print("chi from factors :", chi)
print("chi from subsets :", char_poly_whitney(reflection_hyperplanes(spec), spec.n))
print("regions          :", zaslavsky_regions(chi, spec.n))

d = 1
pred = predicted_intersect_count(chi, spec.n, d + spec.r)
counts = [chamber_intersect_count(spec, random_kernel_subspace(spec, d, seed)) for seed in range(10)]
print(f"predicted {pred} chambers, enumerated {counts}")
print("N/|G| =", Fraction(pred, spec.order), " absorption =", absorption_prob(d, (2,), (3,)))
