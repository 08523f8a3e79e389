"""
When does a hull swallow the origin
===================================

Several independent walks and bridges started at the origin; the probability
that the hull of all their later points contains the origin.
"""

from hullwalk import absorption_prob, estimate_absorption, non_absorption_prob
from hullwalk.sampling import JointSpec

cases = [
    (1, (2,), ()),      # one 2-step walk on the line: 1/4
    (1, (), (3,)),      # one 3-step bridge on the line: 1/3
    (2, (3, 3), ()),    # two walks in the plane
    (2, (2,), (4,)),    # a walk and a bridge together
]
for d, walks, bridges in cases:
    p = absorption_prob(d, walks, bridges)
    est = estimate_absorption(JointSpec(d, walks, bridges), 20_000, seed=1)
    print(f"d={d} walks={walks} bridges={bridges}: exact {p} ({float(p):.4f}), "
          f"simulated {est.p_hat:.4f}, complement {non_absorption_prob(d, walks, bridges)}")
