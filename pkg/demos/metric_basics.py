"""Evaluating h_{D,c} on the three canonical domains.

Run: python3 demos/metric_basics.py
"""
import numpy as np

from hmobius import HalfSpace, MetricParams, PuncturedUnitBall, UnitBall, h_eval

p = MetricParams(c=2.0)

# origin to (1/2, 0) in the disk: log(1 + sqrt 2)
print("ball   ", h_eval(UnitBall(2), p, [0, 0], [0.5, 0]), np.log1p(np.sqrt(2)))

# two points at height 1, three apart, in the upper half-plane: log 7
print("half   ", h_eval(HalfSpace(2), p, [0, 1], [3, 1]), np.log(7))

# puncturing the disk at 0 shrinks boundary distances near the centre,
# so the same pair is farther apart
D = PuncturedUnitBall(2, [0.0, 0.0])
x, y = [0.3, 0.0], [0.0, 0.5]
print("ball vs punctured", h_eval(UnitBall(2), p, x, y), h_eval(D, p, x, y))

# h grows like log(1/depth) as a point approaches the boundary
for depth in (1e-2, 1e-6, 1e-12):
    print(f"depth {depth:g}: h = {h_eval(UnitBall(2), p, [0, 0], [1 - depth, 0]):.6f}")

# c below 2 is allowed, but the triangle inequality is no longer guaranteed
print("c=1.5 is a metric?", MetricParams(1.5).metric_axioms_guaranteed)
