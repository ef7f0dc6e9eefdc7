"""Actions from a phase configuration, and configurations from actions.

N points (x_i, y_i, lambda_i) on a common spectral curve determine its
coefficients H through the linear system R(x_i, y_i, lambda_i; H) = 0. Row i
of the system holds ``m_j(x_i, y_i) * lambda_i^(n - d(j))``; the right-hand
side is ``-lambda_i^n``.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .curve import HyperellipticCurve
from .errors import InputError, NonConvergence, SingularConfiguration
from .family import (
    CoefficientLayout,
    HamiltonianVector,
    SpectralCurve,
    SpectralPoint,
    _values,
    enumerate_basis,
)
from .lie_data import LieAlgebraSpec

COND_CAP = 1e12
CRAMER_MAX_N = 8
CRAMER_RTOL = 1e-8
ON_CURVE_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class PhaseConfiguration:
    """An unordered set of N points on the base curve, each with an eigenvalue."""

    points: tuple
    curve: HyperellipticCurve
    spec: LieAlgebraSpec

    def __post_init__(self):
        pts = tuple(
            p if isinstance(p, SpectralPoint) else SpectralPoint(*map(complex, p))
            for p in self.points
        )
        object.__setattr__(self, "points", pts)
        if len(pts) != self.layout.N:
            raise InputError(
                f"{self.spec} on genus {self.curve.genus} needs {self.layout.N} points, got {len(pts)}"
            )
        for i, p in enumerate(pts):
            if not self.curve.on_curve(p.sheet_point, tol=ON_CURVE_TOL):
                raise InputError(f"point {i} is not on the base curve: y^2 != P(x)")

    @cached_property
    def layout(self) -> CoefficientLayout:
        return enumerate_basis(self.spec, self.curve.genus)

    @property
    def N(self) -> int:
        return len(self.points)

    @property
    def xs(self) -> np.ndarray:
        return np.array([p.x for p in self.points])

    @property
    def ys(self) -> np.ndarray:
        return np.array([p.y for p in self.points])

    @property
    def lams(self) -> np.ndarray:
        return np.array([p.lam for p in self.points])

    def replace(self, i: int, pt: SpectralPoint) -> "PhaseConfiguration":
        pts = list(self.points)
        pts[i] = pt
        return PhaseConfiguration(tuple(pts), self.curve, self.spec)

    def permuted(self, perm) -> "PhaseConfiguration":
        return PhaseConfiguration(tuple(self.points[k] for k in perm), self.curve, self.spec)

    def to_json(self) -> dict:
        return {"points": [p.to_json() for p in self.points]}

    @classmethod
    def from_json(cls, obj: dict, curve: HyperellipticCurve, spec: LieAlgebraSpec):
        return cls(tuple(SpectralPoint.from_json(p) for p in obj["points"]), curve, spec)


def assemble_system(config: PhaseConfiguration) -> tuple[np.ndarray, np.ndarray]:
    layout = config.layout
    lams = config.lams
    M = layout.basis_values(config.xs, config.ys) * lams[:, None] ** layout.lambda_powers
    rhs = -(lams**layout.n)
    return M, rhs


def cramer_solve(M, rhs) -> np.ndarray:
    """Solve by Cramer's rule: component k is det(M with column k replaced) / det(M)."""
    M = np.asarray(M, dtype=complex)
    det = np.linalg.det(M)
    if det == 0:
        raise SingularConfiguration("determinant vanishes")
    out = np.empty(M.shape[1], dtype=complex)
    for k in range(M.shape[1]):
        Mk = M.copy()
        Mk[:, k] = rhs
        out[k] = np.linalg.det(Mk) / det
    return out


def _equilibrate(M):
    colmax = np.abs(M).max(axis=0)
    if np.any(colmax == 0):
        raise SingularConfiguration("a basis column vanishes at every point")
    return M / colmax, 1.0 / colmax


def solve_actions(config: PhaseConfiguration, cond_cap=COND_CAP, cross_check=True) -> HamiltonianVector:
    """Hamiltonians of the unique spectral curve through the configuration.

    Pivoted LU on the column-equilibrated system; the configuration is
    rejected with :class:`SingularConfiguration` if the equilibrated condition
    number exceeds ``cond_cap``. For N <= 8, and unless ``cross_check`` is
    false, the Cramer determinants are evaluated as well and a warning is
    issued if they disagree with LU beyond 1e-8 relative.
    """
    M, rhs = assemble_system(config)
    Ms, colscale = _equilibrate(M)
    cond = np.linalg.cond(Ms)
    if not np.isfinite(cond) or cond > cond_cap:
        raise SingularConfiguration(f"collocation matrix condition {cond:.3g} exceeds cap {cond_cap:.3g}")
    h = np.linalg.solve(Ms, rhs) * colscale
    resid = np.abs(M @ h - rhs)
    scale = np.abs(M) @ np.abs(h) + np.abs(rhs)
    if np.any(resid > 1e-10 * np.maximum(scale, np.finfo(float).tiny)):
        raise NonConvergence(f"linear solve residual {resid.max():.3g} too large")
    if cross_check and config.N <= CRAMER_MAX_N:
        hc = cramer_solve(Ms, rhs) * colscale
        err = np.max(np.abs(hc - h)) / max(np.max(np.abs(h)), 1e-300)
        if err > CRAMER_RTOL and np.max(np.abs(h)) > 0:
            warnings.warn(f"Cramer and LU solutions differ by {err:.3g} (relative)", RuntimeWarning)
    return HamiltonianVector(config.layout, h)


def sample_config(
    curve: HyperellipticCurve,
    spec: LieAlgebraSpec,
    H,
    rng_seed=None,
    *,
    keepout=None,
    max_tries=50,
    cond_cap=COND_CAP,
) -> PhaseConfiguration:
    """Draw N points on the spectral curve of H.

    The x_i are area-uniform in the annulus ``0.5 rho <= |x| <= 2 rho``
    (rho = largest branch-point modulus), kept at least ``keepout`` away from
    branch points and from each other. The sheet of y is a fair coin and
    lambda is a uniformly chosen root of R; for series B the identically-zero
    root is never chosen.
    """
    layout = enumerate_basis(spec, curve.genus)
    h = _values(H, layout)
    sc = SpectralCurve(curve, layout, h)
    rng = np.random.default_rng(rng_seed)
    rho = curve.radius if curve.radius > 0 else 1.0
    if keepout is None:
        keepout = 0.02 * (1 + rho)
    keepout = max(keepout, curve.separation_tol)
    bps = curve.branch_points()
    for _ in range(max_tries):
        pts = []
        while len(pts) < layout.N:
            r = rho * np.sqrt(rng.uniform(0.25, 4.0))
            x = complex(r * np.exp(1j * rng.uniform(0, 2 * np.pi)))
            sheet = 1 if rng.random() < 0.5 else -1
            pick = rng.random()
            if np.min(np.abs(bps - x)) < keepout:
                continue
            if pts and min(abs(p.x - x) for p in pts) < keepout:
                continue
            y = curve.point(x, sheet).y
            roots = sc.roots(x, y)
            if spec.series == "B":
                roots = np.delete(roots, np.argmin(np.abs(roots)))
            lam = sc.newton_lambda(x, y, roots[int(pick * len(roots))])
            pts.append(SpectralPoint(x, y, lam))
        config = PhaseConfiguration(tuple(pts), curve, spec)
        try:
            solve_actions(config, cond_cap=cond_cap, cross_check=False)
        except SingularConfiguration:
            continue
        return config
    raise SingularConfiguration(f"no well-conditioned configuration in {max_tries} draws")


def random_hamiltonians(layout: CoefficientLayout, rng=None, spread=1.0) -> np.ndarray:
    rng = np.random.default_rng(rng)
    return spread * (rng.standard_normal(layout.N) + 1j * rng.standard_normal(layout.N)) / np.sqrt(2)
