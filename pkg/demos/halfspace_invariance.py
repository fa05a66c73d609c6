"""Half-space Möbius self-maps preserve h_{H,c} exactly.

Each map is a translation sending a boundary point to 0, the unit
inversion, then a random similarity fixing the half-space. Ratios are 1 up
to rounding.

Run: python3 demos/halfspace_invariance.py
"""
from hmobius import MetricParams, Seed
from hmobius.lipverify import h2h_invariance_check, random_halfspace_map

p = MetricParams(2.0)
for i in range(5):
    f = random_halfspace_map(3, Seed(11, i))
    dev = h2h_invariance_check(f, p, 20_000, Seed(12, i))
    print(f"map {i}: {len(f)} primitives, max |ratio - 1| = {dev:.2e}")
