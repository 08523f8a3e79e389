"""
Which points of a walk become vertices
======================================

In one dimension a point is a vertex exactly when it is the maximum or the
minimum, so the vertex probabilities are twice the discrete arcsine law.
A short simulation confirms the table.
"""

from hullwalk import arcsine, estimate_face_prob, vertex_prob_walk
from hullwalk.montecarlo import compare
from hullwalk.sampling import WalkSpec

n = 5
print("position  arcsine   vertex prob")
for i in range(n + 1):
    print(f"{i:8d}  {str(arcsine(n, i)):8s}  {vertex_prob_walk(n, 1, i)}")
print("arcsine table sums to", sum(arcsine(n, i) for i in range(n + 1)))

# Monte Carlo with Gaussian steps; the answer is the same for any symmetric law.
for i in (0, 2):
    est = estimate_face_prob(WalkSpec(n, 1), (i,), 20_000, seed=i)
    rep = compare(vertex_prob_walk(n, 1, i), est)
    print(f"S_{i}: simulated {est.p_hat:.4f} +- {est.stderr:.4f}, z={rep.z:+.2f}")

# In the plane the first point is usually, but not always, a vertex.
print("P[S_0 vertex], n=5, d=2:", vertex_prob_walk(5, 2, 0))
