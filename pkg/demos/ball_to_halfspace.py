"""Distortion of the inversion carrying the ball onto the upper half-space.

The ratio lies in [1, 2]. It tends to 2 for pairs shrinking onto the
origin, and to 1 (only logarithmically) as the pair x = -y = t e_1 runs out
to the sphere.

Run: python3 demos/ball_to_halfspace.py
"""
import numpy as np

from hmobius import HalfSpace, MetricParams, Seed, UnitBall, ball_to_halfspace
from hmobius.lipverify import estimate_sup, report_to_json, sharpness_scan_b2h

p = MetricParams(2.0)
rep = estimate_sup(ball_to_halfspace(2), UnitBall(2), HalfSpace(2), p, budget=30_000, seed=Seed(3),
                   theoretical_upper=2.0, theoretical_lower=1.0)
print(report_to_json(rep))

ts = [1e-1, 1e-3, 1e-6, 0.5, 0.9, 0.999, 1 - 1e-6, 1 - 1e-8]
for t, r in sharpness_scan_b2h(p, ts):
    print(f"t = {t:<12.10g} ratio = {r:.12f}")

# closed forms along the path: log(1 + 4ct/(1-t^2)) / log(1 + 2ct/(1-t))
t = 0.5
print("closed form at t=1/2:", np.log(19 / 3) / np.log(5))
