"""
Spectral curves over a genus-two base
=====================================

Build the coefficient layout for a few Lie algebras, evaluate the spectral
polynomial and look at the eigenvalues lambda over a point of the base.
"""

import numpy as np

import hyperhitchin as hh

###############################################################################
# The base curve
# --------------
# ``y^2 = x^5 + 1`` has five branch points on the unit circle.

curve = hh.HyperellipticCurve(2, (1, 0, 0, 0, 0))
print("branch points:", np.round(curve.branch_points(), 6))

###############################################################################
# Layouts
# -------
# One block of monomials per basis invariant. The block of a degree-d
# invariant has (2d - 1)(g - 1) entries, so the total is dim(g) (g - 1).

for series, rank in [("A", 1), ("A", 2), ("B", 2), ("C", 2)]:
    spec = hh.LieAlgebraSpec(series, rank)
    lay = hh.enumerate_basis(spec, 2)
    print(f"{spec}: degrees {spec.degrees}, N = {lay.N}:", ", ".join(map(str, lay.monomials)))

###############################################################################
# The sl(2) curve
# ---------------
# With H = (H0, H1, H2) the spectral curve is lambda^2 + H0 + H1 x + H2 x^2.
# For H = (0, 0, -1) the two eigenvalues are exactly +-x.

a1 = hh.LieAlgebraSpec("A", 1)
lay = hh.enumerate_basis(a1, 2)
pt = curve.point(0.4 + 0.3j)
print("lambda over x = 0.4+0.3i:", hh.lambda_roots(lay, [0, 0, -1], pt))

###############################################################################
# A random sl(3) curve has three sheets; the odd monomial y enters the cubic
# invariant's coefficient, so the two points over x see different lambdas.

spec = hh.LieAlgebraSpec("A", 2)
lay = hh.enumerate_basis(spec, 2)
H = hh.random_hamiltonians(lay, 1)
for sheet in (1, -1):
    p = curve.point(0.4 + 0.3j, sheet)
    print(f"y = {p.y:.4f}: lambda =", np.round(hh.lambda_roots(lay, H, p), 6))
