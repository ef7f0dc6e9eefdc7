"""Roots of complex univariate polynomials.

Simultaneous Aberth-Ehrlich iteration is the primary method. The companion
matrix eigenvalues (``numpy.roots``) serve as fallback and as starting values
when Aberth stalls. Every returned root set is verified against a backward
residual test; nothing is returned unverified.
"""

from __future__ import annotations

import numpy as np

from .errors import RootSolveFailure

RESIDUAL_TOL = 1e-12


def residual_scale(coeffs, z):
    """``sum |c_k| |z|^k``, the natural magnitude for ``|p(z)|``."""
    return np.polyval(np.abs(coeffs), np.abs(z))


def residuals_ok(coeffs, roots, tol=RESIDUAL_TOL):
    roots = np.asarray(roots, dtype=complex)
    res = np.abs(np.polyval(coeffs, roots))
    return bool(np.all(res <= tol * residual_scale(coeffs, roots)))


def _trim(coeffs):
    c = np.atleast_1d(np.asarray(coeffs, dtype=complex))
    nz = np.flatnonzero(c)
    if nz.size == 0:
        raise RootSolveFailure("zero polynomial has no well-defined roots")
    c = c[nz[0]:]
    return c / c[0]


def _initial_guesses(c):
    deg = len(c) - 1
    # Fujiwara bound on root moduli
    k = np.arange(1, deg + 1)
    mags = np.abs(c[1:]) ** (1.0 / k)
    mags[-1] = (np.abs(c[-1]) / 2) ** (1.0 / deg)
    radius = 2 * mags.max() if mags.max() > 0 else 1.0
    angles = 2 * np.pi * np.arange(deg) / deg + 0.4
    return 0.5 * radius * np.exp(1j * angles)


def aberth(coeffs, init=None, tol=RESIDUAL_TOL, maxiter=100):
    """Aberth-Ehrlich iteration; returns ``(roots, converged)``."""
    c = _trim(coeffs)
    deg = len(c) - 1
    if deg == 0:
        return np.empty(0, dtype=complex), True
    dc = np.polyder(c)
    z = _initial_guesses(c) if init is None else np.array(init, dtype=complex)
    if z.shape != (deg,):
        raise ValueError(f"expected {deg} starting values, got {z.shape}")
    eye = np.eye(deg, dtype=bool)
    for _ in range(maxiter):
        p = np.polyval(c, z)
        scale = residual_scale(c, z)
        done = np.abs(p) <= tol * scale
        if np.all(done):
            return z, True
        dp = np.polyval(dc, z)
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = p / dp
            diff = z[:, None] - z[None, :]
            diff[eye] = 1.0
            s = np.sum(np.where(eye, 0.0, 1.0 / diff), axis=1)
            w = ratio / (1.0 - ratio * s)
        w[done] = 0.0
        if not np.all(np.isfinite(w)):
            return z, False
        z = z - w
    return z, residuals_ok(c, z, tol)


def _newton_polish(c, z, iters=3):
    dc = np.polyder(c)
    for _ in range(iters):
        dp = np.polyval(dc, z)
        step = np.where(dp != 0, np.polyval(c, z) / np.where(dp != 0, dp, 1), 0)
        z = z - step
    return z


def polyroots(coeffs, init=None, tol=RESIDUAL_TOL):
    """All roots of the polynomial with coefficients ``coeffs`` (highest first).

    Raises :class:`RootSolveFailure` if no method produces roots passing the
    residual test ``|p(z)| <= tol * sum |c_k| |z|^k``.
    """
    c = _trim(coeffs)
    # exact zero roots (e.g. lambda | R for series B) are split off exactly
    nz = np.flatnonzero(c)
    m = len(c) - 1 - nz[-1]
    if m:
        if init is not None:
            init = np.asarray(init, dtype=complex)
            init = init[np.argsort(np.abs(init))[m:]]
        rest = polyroots(c[: len(c) - m], init=init, tol=tol)
        return np.concatenate([rest, np.zeros(m, dtype=complex)])
    if len(c) == 1:
        return np.empty(0, dtype=complex)
    if len(c) == 2:
        return np.array([-c[1]], dtype=complex)
    z, ok = aberth(c, init=init, tol=tol)
    if ok:
        return z
    z = np.roots(c).astype(complex)
    if residuals_ok(c, z, tol):
        return z
    polished = _newton_polish(c, z)
    if np.all(np.isfinite(polished)) and residuals_ok(c, polished, tol):
        return polished
    z, ok = aberth(c, init=z, tol=tol)
    if ok:
        return z
    raise RootSolveFailure(
        f"no root set of the degree-{len(c) - 1} polynomial met residual tolerance {tol:g}"
    )
