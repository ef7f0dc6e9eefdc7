"""Finite-difference Poisson brackets on the separated phase space.

Independent coordinates are (x_i, lambda_i); y_i rides along the base curve
on its sheet. The bracket is

    {f, g} = sum_i y_i (df/dlambda_i dg/dx_i - df/dx_i dg/dlambda_i)

so that {lambda_i, x_j} = delta_ij y_i. Partials are second-order central
differences; every observable here is holomorphic in each coordinate, so a
real step gives the complex derivative.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .actions import PhaseConfiguration, sample_config, solve_actions
from .curve import HyperellipticCurve, y_continuation_step
from .errors import HitchinError, PathInstability, SheetAmbiguity, StencilFailure
from .family import _values, enumerate_basis
from .geometry import PathPolicy, angle_coordinates, same_routes
from .lie_data import LieAlgebraSpec

DEFAULT_STEP = 1e-5
TOL_COMMUTE = 1e-6
TOL_DARBOUX = 1e-3


@dataclass(frozen=True)
class Observable:
    """A labelled function of the phase configuration (scalar or vector valued)."""

    label: str
    fn: Callable

    def __call__(self, config):
        return self.fn(config)


def perturb_x(config: PhaseConfiguration, i: int, delta) -> PhaseConfiguration:
    """Shift x_i by ``delta``; y_i is re-rooted exactly on its sheet, lambda_i kept."""
    p = config.points[i]
    try:
        sp = y_continuation_step(config.curve, p.sheet_point, p.x + delta)
    except SheetAmbiguity as exc:
        raise StencilFailure(f"perturbing x_{i} lost the y-sheet") from exc
    return config.replace(i, type(p)(sp.x, sp.y, p.lam))


def perturb_lambda(config: PhaseConfiguration, i: int, delta) -> PhaseConfiguration:
    p = config.points[i]
    return config.replace(i, type(p)(p.x, p.y, p.lam + delta))


def coordinate_steps(config: PhaseConfiguration, step=DEFAULT_STEP):
    """Per-coordinate step sizes ``step * max(1, |coordinate|)``."""
    hx = step * np.maximum(1.0, np.abs(config.xs))
    hl = step * np.maximum(1.0, np.abs(config.lams))
    return hx, hl


def gradient(f, config: PhaseConfiguration, step=DEFAULT_STEP):
    """Central-difference partials of ``f`` in every x_i and lambda_i.

    Returns ``(df_dx, df_dlambda)`` with the coordinate index first.
    """
    hx, hl = coordinate_steps(config, step)
    dx, dl = [], []
    try:
        for i in range(config.N):
            fp = np.asarray(f(perturb_x(config, i, hx[i])))
            fm = np.asarray(f(perturb_x(config, i, -hx[i])))
            dx.append((fp - fm) / (2 * hx[i]))
            fp = np.asarray(f(perturb_lambda(config, i, hl[i])))
            fm = np.asarray(f(perturb_lambda(config, i, -hl[i])))
            dl.append((fp - fm) / (2 * hl[i]))
    except (StencilFailure, PathInstability):
        raise
    except HitchinError as exc:
        raise StencilFailure(f"observable failed on a stencil point: {exc}") from exc
    return np.array(dx), np.array(dl)


def bracket_from_gradients(grad_f, grad_g, ys) -> np.ndarray:
    """Bracket matrix {f_a, g_b} from gradients (coordinate index first)."""
    fx, fl = grad_f
    gx, gl = grad_g
    fx, fl = fx.reshape(len(ys), -1), fl.reshape(len(ys), -1)
    gx, gl = gx.reshape(len(ys), -1), gl.reshape(len(ys), -1)
    w = np.asarray(ys)[:, None]
    return (w * fl).T @ gx - (w * fx).T @ gl


def poisson_bracket(f, g, config: PhaseConfiguration, step=DEFAULT_STEP) -> complex:
    """{f, g} for scalar observables."""
    B = bracket_from_gradients(gradient(f, config, step), gradient(g, config, step), config.ys)
    return complex(B[0, 0])


@dataclass(frozen=True)
class BracketReport:
    pair: tuple
    labels: tuple
    value: complex
    target: complex
    step: float
    tol: float
    estimate: float
    passed: bool

    def to_json(self) -> dict:
        return {
            "pair": list(self.pair),
            "labels": list(self.labels),
            "value": [self.value.real, self.value.imag],
            "target": [self.target.real, self.target.imag],
            "tol": self.tol,
            "step": self.step,
            "estimate": self.estimate,
            "pass": self.passed,
        }


def action_observable(layout=None) -> Observable:
    """All N actions as one vector observable (one linear solve per evaluation)."""
    return Observable("H", lambda c: solve_actions(c, cross_check=False).values)


def action_observables(layout) -> list:
    """The N actions as separate scalar observables labelled by their monomials."""
    obs = []
    for a, m in enumerate(layout.monomials):
        obs.append(Observable(f"H[{m.invariant_index},{m}]", lambda c, a=a: solve_actions(c, cross_check=False).values[a]))
    return obs


def _gradients(observables, config, step):
    """Stacked gradients of a list of scalar observables or one vector observable."""
    if isinstance(observables, Observable):
        return gradient(observables, config, step)
    grads = [gradient(o, config, step) for o in observables]
    return np.stack([g[0] for g in grads], axis=-1), np.stack([g[1] for g in grads], axis=-1)


def commutator_matrix(observables, config, step=DEFAULT_STEP):
    g = _gradients(observables, config, step)
    return bracket_from_gradients(g, g, config.ys)


def verify_commutativity(
    curve: HyperellipticCurve,
    spec: LieAlgebraSpec,
    H,
    seed=None,
    *,
    observables=None,
    step=DEFAULT_STEP,
    tol=TOL_COMMUTE,
    config=None,
) -> list:
    """Reports {H_a, H_b} for all a < b on a configuration sampled from H.

    Passing requires ``|{H_a, H_b}| < tol * max(1, |H|^2)``. ``observables``
    replaces the default action observables (used for negative controls).
    """
    layout = enumerate_basis(spec, curve.genus)
    h = _values(H, layout)
    if config is None:
        config = sample_config(curve, spec, h, seed)
    if observables is None:
        obs = action_observable(layout)
        labels = [f"H[{m.invariant_index},{m}]" for m in layout.monomials]
    else:
        obs = list(observables)
        labels = [o.label for o in obs]
    B = commutator_matrix(obs, config, step)
    B2 = commutator_matrix(obs, config, 2 * step)
    bound = tol * max(1.0, float(np.linalg.norm(h)) ** 2)
    reports = []
    for a in range(B.shape[0]):
        for b in range(a + 1, B.shape[1]):
            v = complex(B[a, b])
            est = abs(B[a, b] - B2[a, b]) / 3
            reports.append(BracketReport((a, b), (labels[a], labels[b]), v, 0j, step, bound, float(est), abs(v) < bound))
    return reports


def angle_observable(policy: PathPolicy, H_fixed=None) -> Observable:
    """Angle coordinates as a vector observable that refuses to change route homotopy.

    The first evaluation fixes the reference routes; later evaluations raise
    :class:`PathInstability` if a detour appears, vanishes or switches side.
    """
    ref = {}

    def fn(config):
        av = angle_coordinates(config, path_policy=policy, H=H_fixed)
        _, margin = policy.resolve(config.curve)
        if "detours" not in ref:
            ref["detours"] = av.detours
        elif not same_routes(ref["detours"], av.detours, 0.1 * margin):
            raise PathInstability("finite-difference step changed the route homotopy; shrink the step")
        return av.values

    return Observable("phi", fn)


def darboux_matrix(config: PhaseConfiguration, policy: PathPolicy | None = None, step=DEFAULT_STEP):
    """The N x N matrix {H_a, phi_b} by finite differences; returns ``(B, B_at_2step)``."""
    policy = policy or PathPolicy(quad_tol=1e-11)
    phi = angle_observable(policy)
    phi(config)
    gH = gradient(action_observable(), config, step)
    gphi = gradient(phi, config, step)
    B = bracket_from_gradients(gH, gphi, config.ys)
    gH2 = gradient(action_observable(), config, 2 * step)
    gphi2 = gradient(phi, config, 2 * step)
    B2 = bracket_from_gradients(gH2, gphi2, config.ys)
    return B, B2


def verify_darboux(
    curve: HyperellipticCurve,
    spec: LieAlgebraSpec,
    H,
    seed=None,
    *,
    step=DEFAULT_STEP,
    tol=TOL_DARBOUX,
    policy: PathPolicy | None = None,
    config=None,
) -> list:
    """N x N reports of {H_a, phi_b} against the Kronecker delta.

    Angles are recomputed at every stencil point with the same routing
    policy; a change of route homotopy raises :class:`PathInstability`.
    """
    layout = enumerate_basis(spec, curve.genus)
    h = _values(H, layout)
    if config is None:
        config = sample_config(curve, spec, h, seed)
    B, B2 = darboux_matrix(config, policy, step)
    labels = [str(m) for m in layout.monomials]
    rows = []
    for a in range(layout.N):
        row = []
        for b in range(layout.N):
            target = 1.0 + 0j if a == b else 0j
            v = complex(B[a, b])
            est = float(abs(B[a, b] - B2[a, b]) / 3)
            row.append(
                BracketReport((a, b), (f"H[{labels[a]}]", f"phi[{labels[b]}]"), v, target, step, tol, est, abs(v - target) < tol)
            )
        rows.append(row)
    return rows
