"""
Poisson brackets by finite differences
======================================

The Hamiltonians commute, and the bracket of actions with angles is a
multiple of the identity.
"""

import numpy as np

import hyperhitchin as hh
from hyperhitchin.dynamics import darboux_matrix

rng = np.random.default_rng(5)
spec = hh.LieAlgebraSpec("A", 2)
curve = hh.HyperellipticCurve.random(2, rng)
H = hh.random_hamiltonians(hh.enumerate_basis(spec, 2), rng)

###############################################################################
# Commutativity
# -------------
# All 28 pairs for sl(3) on a genus-two curve.

reports = hh.verify_commutativity(curve, spec, H, rng)
print("pairs:", len(reports), "all pass:", all(r.passed for r in reports))
print("largest |{H_a, H_b}|:", max(abs(r.value) for r in reports))

###############################################################################
# Actions against angles
# ----------------------
# For sl(2) on genus two the 3 x 3 matrix {H_a, phi_b} comes out as minus
# the identity with the bracket {lambda, x} = y and angles integrated from
# the base point to the configuration.

a1 = hh.LieAlgebraSpec("A", 1)
curve = hh.HyperellipticCurve.random(2, 0)
H = hh.random_hamiltonians(hh.enumerate_basis(a1, 2), 0)
config = hh.sample_config(curve, a1, H, 0)
B, B2 = darboux_matrix(config)
np.set_printoptions(precision=8, suppress=True)
print(B.real)
print("Richardson estimate:", np.max(np.abs(B - B2)) / 3)
