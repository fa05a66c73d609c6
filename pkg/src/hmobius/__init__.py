"""Hyperbolic-type metric h_{D,c}, Möbius maps on R^n, and numerical checks of their distortion."""
from .domains import Domain, HalfSpace, OutsideDomainError, PuncturedUnitBall, UnitBall, format_domain, parse_domain
from .hmetric import BoundaryProximityError, MetricParams, h_eval, h_from_parts, one_minus_norm_of_ball_inversion
from .mobius import (MobiusMap, Orthogonal, PoleProximityError, Scaling, SphereInversion, Translation, apply,
                     apply_batch, ball_automorphism, ball_to_halfspace, compose, halfspace_mobius, identity,
                     inverse, inversion_distance_identity_check, parse_map, push_pair, random_halfspace_similarity,
                     sigma_a, unit_inversion)
from .vecgeom import (INF, NonFinitePointError, OrthogonalMatrix, Seed, as_point, dist, is_inf, norm,
                      random_orthogonal, random_point_in_ball, star)

__version__ = "0.1.0"
