"""Building Möbius maps as chains of inversions and similarities.

Run: python3 demos/mobius_maps.py
"""
import numpy as np

from hmobius import (INF, apply, ball_automorphism, ball_to_halfspace, compose, halfspace_mobius, inverse,
                     parse_map, random_orthogonal, sigma_a, Seed)

a = np.array([0.5, 0.0])
f = sigma_a(a)
print(f.chain[0])                        # inversion in the sphere centred at a* = (2, 0), r^2 = 3
print("sigma_a(a)  =", apply(f, a))     # the origin
print("sigma_a(0)  =", apply(f, [0, 0]))  # back to a: sigma_a is an involution
print("sigma_a(a*) =", apply(f, [2, 0]))  # the centre goes to infinity
print("sigma_a(inf)=", apply(f, INF))

# every self-map of the ball sending a to 0 is A o sigma_a for an orthogonal A
g = ball_automorphism(a, random_orthogonal(2, Seed(1)))
x = np.array([0.2, -0.7])
print("g^-1(g(x)) - x =", apply(inverse(g), apply(g, x)) - x)

# the inversion in S(-e_n, sqrt 2) carries the ball to the upper half-space
b2h = ball_to_halfspace(2)
print("0 ->", apply(b2h, [0, 0]), "  (1/2, 0) ->", apply(b2h, [0.5, 0]))

# half-space self-maps: send a boundary point to infinity, then a similarity
h = halfspace_mobius([1.0, 0.0])
print("(1, 1) ->", apply(h, [1.0, 1.0]))

# the same maps from text, as the command line reads them
m = parse_map("b2h; trans:1,0; scale:2", n=2)
print(len(m), "primitives; 0 ->", apply(m, [0, 0]))
print(compose(b2h, inverse(b2h)).chain)
