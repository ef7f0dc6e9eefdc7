"""
Angle coordinates as Abel sums
==============================

Integrate the N differentials from a base point to each point of the
configuration, continuing y and lambda along the way.
"""

import numpy as np

import hyperhitchin as hh
from hyperhitchin.family import SpectralCurve
from hyperhitchin.geometry import obstacles_for, spectral_branch_points

rng = np.random.default_rng(3)
spec = hh.LieAlgebraSpec("A", 1)
curve = hh.HyperellipticCurve.random(2, rng)
lay = hh.enumerate_basis(spec, 2)
H = hh.random_hamiltonians(lay, rng)
config = hh.sample_config(curve, spec, H, rng)
sc = SpectralCurve(curve, lay, H)

###############################################################################
# Obstacles
# ---------
# Paths keep away from the roots of P (where y changes sheet) and from the
# projections of the spectral branch points (where two lambdas meet).

print("base branch points:", len(curve.branch_points()))
print("spectral branch points:", len(spectral_branch_points(sc)))
print("obstacles:", len(obstacles_for(sc)))

###############################################################################
# Angles
# ------

av = hh.angle_coordinates(config)
print("phi =", np.round(av.values, 8))
print("quadrature error estimate:", av.error_estimate)
for r in av.routes:
    print("route with", len(r) - 2, "detour(s)")

###############################################################################
# Tightening the quadrature tolerance barely moves the result.

tight = hh.angle_coordinates(config, path_policy=hh.PathPolicy(quad_tol=1e-12))
print("change at quad_tol 1e-12:", np.max(np.abs(tight.values - av.values)))

###############################################################################
# The sl(2) densities differ by a factor 2 from dx x^k / (lambda y).

print("rescaled:", np.round(hh.to_intro_angles(av.values, spec), 8))
