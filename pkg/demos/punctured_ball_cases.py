"""sigma_a between punctured balls: the four-case picture.

With the puncture at 0 in the source and at a in the target, sigma_a still
stretches h by at most 1+|a|. Pairs split into four cases by which
boundary piece (puncture or sphere) is nearer to each image point, and into
three subcases by |x|, |y| against 1/2; each case has its own constant.

Run: python3 demos/punctured_ball_cases.py
"""
import numpy as np

from hmobius import MetricParams
from hmobius.lipverify import case_bound, punctured_bound_check, punctured_case_classify

a = np.array([0.5, 0.0])
na = 0.5
for case in (1, 2, 3, 4):
    print(f"case {case}: bound {case_bound(case, na):.6f}")

print(punctured_case_classify(a, [0.9, 0.0], [0.8, 0.0]))
print(punctured_case_classify(a, [0.01, 0.0], [0.0, 0.02]))

rep = punctured_bound_check(a, MetricParams(2.0), 40_000, seed=1)
print(f"\nsup ratio {rep.report.sup_estimate:.10f} (bound 1+|a| = {1 + na})")
print("case violations:", rep.case_violations, " subcase violations:", rep.subcase_violations)
print(f"{'cell':<22}{'pairs':>8}{'max ratio':>14}{'case bound':>12}")
for (c, s), k in rep.tally.items():
    print(f"{c} {s:<20}{k:>8}{rep.cell_max[(c, s)]:>14.8f}{case_bound(c, na):>12.6f}")
