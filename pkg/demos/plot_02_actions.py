"""
Actions from points on the spectral curve
=========================================

N points on a spectral curve determine its coefficients through a linear
system. Sample points from a known H and recover it.
"""

import numpy as np

import hyperhitchin as hh

rng = np.random.default_rng(7)
spec = hh.LieAlgebraSpec("C", 2)
curve = hh.HyperellipticCurve.random(2, rng)
lay = hh.enumerate_basis(spec, 2)
H = hh.random_hamiltonians(lay, rng)

###############################################################################
# Sampling a configuration
# ------------------------
# x is drawn from an annulus scaled to the branch points, y on a random
# sheet and lambda a random root of R.

config = hh.sample_config(curve, spec, H, rng)
for p in config.points[:3]:
    print(f"x = {p.x:.4f}  y = {p.y:.4f}  lambda = {p.lam:.4f}")

###############################################################################
# Solving back
# ------------

got = hh.solve_actions(config).values
print("relative error:", np.linalg.norm(got - H) / np.linalg.norm(H))

###############################################################################
# The configuration is an unordered set: shuffling the points does not
# change H.

perm = rng.permutation(config.N)
print("after shuffling:", np.max(np.abs(hh.solve_actions(config.permuted(perm)).values - got)))

###############################################################################
# Two points over the same x (same sheet) make the system singular; the
# solver refuses instead of returning noise.

dup = config.replace(1, config.points[0])
try:
    hh.solve_actions(dup)
except hh.SingularConfiguration as exc:
    print("rejected:", exc)
