"""How much can a ball automorphism stretch h_{B,c}?

The ratio h(f(x), f(y)) / h(x, y) for f = A o sigma_a stays within
[1/(1+|a|), 1+|a|], and both ends are approached by pairs shrinking onto 0
(upper) or onto a (lower). This demo estimates both ends by sampling and
then follows the explicit path x = t a/|a| = -y.

Run: python3 demos/ball_automorphism_distortion.py
"""
import numpy as np

from hmobius import MetricParams, Seed, UnitBall, ball_automorphism, random_orthogonal
from hmobius.lipverify import estimate_sup, geometric_grid, sharpness_scan_b2b

p = MetricParams(2.0)
B = UnitBall(3)
a = np.array([0.3, -0.4, 0.2])
na = np.linalg.norm(a)
f = ball_automorphism(a, random_orthogonal(3, Seed(7)))

rep = estimate_sup(f, B, B, p, budget=50_000, seed=Seed(7), theoretical_upper=1 + na,
                   theoretical_lower=1 / (1 + na))
print(f"|a| = {na:.6f}")
print(f"sup ratio ~ {rep.sup_estimate:.10f}   (1+|a| = {1 + na:.10f})")
print(f"inf ratio ~ {rep.inf_estimate:.10f}   (1/(1+|a|) = {1 / (1 + na):.10f})")
print("sup attained near", np.round(rep.argmax[0], 6), "and", np.round(rep.argmax[1], 6))
print("verdict:", rep.verdict)

print("\nt        ratio along x = t a/|a| = -y")
for t, r in sharpness_scan_b2b(a, p, geometric_grid(1, 8)):
    print(f"{t:<8g} {r:.12f}")
