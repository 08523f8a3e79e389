"""
Expected face counts of a random walk hull
==========================================

Exact rational values for E f_k, checked two ways, plus the planar
harmonic law and its logarithmic growth.
"""

from fractions import Fraction

import numpy as np

from hullwalk import (
    asymptotic_expected_faces,
    expected_faces_bridge,
    expected_faces_walk,
    expected_faces_walk_bigsum,
)

# A planar walk with 3 steps: 4 points, on average 11/3 vertices and 11/3 edges.
for k in range(2):
    print(f"n=3, d=2, k={k}:", expected_faces_walk(3, 2, k))

# The Stirling form and the direct sum over index tuples must agree exactly.
for n, d, k in [(5, 2, 0), (6, 3, 1), (8, 4, 2)]:
    a, b = expected_faces_walk(n, d, k), expected_faces_walk_bigsum(n, d, k)
    print(f"(n,d,k)={(n, d, k)}  stirling={a}  tuple-sum={b}  equal={a == b}")

# A walk with n steps behaves like a bridge with n+1 steps.
print("walk(6,3,1) == bridge(7,3,1):", expected_faces_walk(6, 3, 1) == expected_faces_bridge(7, 3, 1))

# In the plane, E f_0 = 2 * (1 + 1/2 + ... + 1/n).
for n in (10, 100, 1000):
    h = sum(Fraction(1, j) for j in range(1, n + 1))
    exact = expected_faces_walk(n, 2, 0)
    ratio = float(exact) / asymptotic_expected_faces(n, 2, 0)
    print(f"n={n:5d}  E f_0={float(exact):.4f}  2H_n matches: {exact == 2 * h}  ratio to 2 log n: {ratio:.4f}")

print("log growth check:", np.isclose(float(expected_faces_walk(1000, 2, 0)) - 2 * np.log(1000), 2 * np.euler_gamma, atol=1e-2))
