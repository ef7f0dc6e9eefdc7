import numpy as np
import pytest

import hyperhitchin as hh
from hyperhitchin import Observable, PathPolicy, poisson_bracket, verify_commutativity, verify_darboux
from hyperhitchin.dynamics import (
    action_observable,
    action_observables,
    angle_observable,
    bracket_from_gradients,
    commutator_matrix,
    darboux_matrix,
    gradient,
    perturb_x,
)
from hyperhitchin.errors import PathInstability, StencilFailure
from hyperhitchin.family import SpectralCurve
from hyperhitchin.geometry import differential_values, same_routes

from .conftest import random_problem

COMMUTE_CASES = [("A", 1, 2), ("A", 1, 3), ("A", 2, 2), ("C", 2, 2), ("B", 2, 2)]


def coord(kind, i, power=1):
    if kind == "x":
        return Observable(f"x{i}", lambda c: c.points[i].x ** power)
    return Observable(f"lambda{i}", lambda c: c.points[i].lam ** power)


@pytest.fixture(scope="module")
def a1_config():
    spec, curve, lay, H = random_problem("A", 1, 2, 0)
    return hh.sample_config(curve, spec, H, 0)


def test_canonical_pair(a1_config):
    y1 = a1_config.points[0].y
    v = poisson_bracket(coord("l", 0), coord("x", 0), a1_config)
    assert abs(v - y1) < 1e-9 * abs(y1)


def test_coordinates_commute(a1_config):
    assert abs(poisson_bracket(coord("x", 0), coord("x", 1), a1_config)) < 1e-12
    assert abs(poisson_bracket(coord("l", 0), coord("l", 2), a1_config)) < 1e-12
    assert abs(poisson_bracket(coord("l", 0), coord("x", 1), a1_config)) < 1e-12


def test_leibniz(a1_config):
    p = a1_config.points[0]
    v = poisson_bracket(coord("l", 0, 2), coord("x", 0), a1_config)
    assert abs(v - 2 * p.lam * p.y) < 1e-7 * abs(2 * p.lam * p.y)


def test_antisymmetry(a1_config):
    f = Observable("f", lambda c: c.points[0].x ** 2 * c.points[1].lam + c.points[2].lam ** 3)
    g = action_observables(a1_config.layout)[1]
    assert poisson_bracket(f, g, a1_config) == pytest.approx(-poisson_bracket(g, f, a1_config), rel=1e-13, abs=1e-15)
    gx, gl = gradient(action_observable(), a1_config)
    B = bracket_from_gradients((gx, gl), (gx, gl), a1_config.ys)
    roundoff = 1e-14 * np.abs(a1_config.ys) @ (np.abs(gl) + np.abs(gx)) ** 2
    assert np.all(np.abs(B + B.T) <= roundoff)


def test_symplectic_form_is_inverse(a1_config):
    # bracket matrix on each pair (lambda_i, x_i) against omega = sum dlambda ^ dx / y
    for i, p in enumerate(a1_config.points):
        fs = [coord("l", i), coord("x", i)]
        P = np.array([[poisson_bracket(f, g, a1_config) for g in fs] for f in fs])
        omega = np.array([[0, 1 / p.y], [-1 / p.y, 0]])
        assert np.allclose(P @ omega.T, np.eye(2), atol=1e-9)


def test_perturb_x_stays_on_curve(a1_config):
    delta = 1e-4 + 1e-4j
    p0 = a1_config.points[1]
    p = perturb_x(a1_config, 1, delta).points[1]
    assert a1_config.curve.on_curve(p.sheet_point, tol=1e-14)
    slope = a1_config.curve.dP(p0.x) / (2 * p0.y)
    assert abs(p.y - p0.y - slope * delta) < 1e-3 * abs(slope * delta)
    assert p.lam == p0.lam


@pytest.mark.parametrize("case", COMMUTE_CASES)
def test_commutativity(case):
    for seed in range(3):
        spec, curve, lay, H = random_problem(*case, seed)
        reports = verify_commutativity(curve, spec, H, seed)
        assert len(reports) == lay.N * (lay.N - 1) // 2
        assert all(r.passed for r in reports), max(abs(r.value) for r in reports)


def test_commutativity_zero_hamiltonians(quintic, a1):
    reports = verify_commutativity(quintic, a1, np.zeros(3), 1)
    assert all(r.passed for r in reports)
    assert max(abs(r.value) for r in reports) < 1e-12


def test_corrupted_observable_fails():
    spec, curve, lay, H = random_problem("A", 1, 2, 2)
    obs = action_observables(lay)
    a = 1
    obs[a] = Observable("H1+x1", lambda c, f=obs[a]: f(c) + c.points[0].x)
    reports = verify_commutativity(curve, spec, H, 2, observables=obs)
    for r in reports:
        assert r.passed == (a not in r.pair)
    assert not all(r.passed for r in reports)


def test_richardson_consistency(a1_config):
    # smooth observables, step large enough for truncation to dominate
    f = action_observables(a1_config.layout)[2]
    g = Observable("x1^2 lambda2^3", lambda c: c.points[0].x ** 2 * c.points[1].lam ** 3)
    h = 1e-3
    b1 = poisson_bracket(f, g, a1_config, h)
    b2 = poisson_bracket(f, g, a1_config, 2 * h)
    b_half = poisson_bracket(f, g, a1_config, h / 2)
    est = abs(b1 - b2) / 3
    assert est > 0
    assert abs(b_half - b1) < 4 * est


def test_stencil_failure(a1_config):
    dup = a1_config.replace(1, a1_config.points[0])
    with pytest.raises(StencilFailure):
        gradient(action_observable(), dup)


def test_report_json(a1_config):
    spec, curve, lay, H = random_problem("A", 1, 2, 0)
    r = verify_commutativity(curve, spec, H, 0)[0]
    obj = r.to_json()
    assert set(obj) >= {"pair", "value", "target", "tol", "pass"}
    assert obj["pass"] is True


def endpoint_oracle(config, step=1e-5):
    """{H_a, phi_b} with phi differentiated through its endpoints only.

    H fixed, phi_b moves with x_k by the density at gamma_k; the dependence of
    phi on H drops out because the H commute.
    """
    _, dl = gradient(action_observable(), config, step)
    sc = SpectralCurve(config.curve, config.layout, hh.solve_actions(config).values)
    dens = np.array([differential_values(sc, p.x, p.y, p.lam) for p in config.points])
    return np.einsum("k,ka,kb->ab", config.ys, dl, dens)


@pytest.mark.slow
@pytest.mark.parametrize("seed", [0, 1, 2])
def test_darboux_sign(seed):
    """With {lambda, x} = +y and phi = int_base^gamma, the matrix is -I."""
    spec, curve, lay, H = random_problem("A", 1, 2, seed)
    cfg = hh.sample_config(curve, spec, H, seed)
    B, B2 = darboux_matrix(cfg)
    assert np.max(np.abs(B + np.eye(3))) < 1e-3
    oracle = endpoint_oracle(cfg)
    assert np.max(np.abs(oracle + np.eye(3))) < 1e-8
    assert np.max(np.abs(B - oracle)) < 1e-5


def test_darboux_reports_target_delta():
    spec, curve, lay, H = random_problem("A", 1, 2, 0)
    grid = verify_darboux(curve, spec, H, 0, tol=1e-3)
    assert len(grid) == 3 and all(len(row) == 3 for row in grid)
    for a, row in enumerate(grid):
        for b, r in enumerate(row):
            assert r.target == (1 if a == b else 0)
            assert r.passed == (abs(r.value - r.target) < 1e-3)
    # off-diagonal entries vanish
    assert all(abs(grid[a][b].value) < 1e-3 for a in range(3) for b in range(3) if a != b)


def test_angle_observable_detects_route_change():
    spec, curve, lay, H = random_problem("C", 2, 2, 0)
    policy = PathPolicy()
    configs = [hh.sample_config(curve, spec, H, s) for s in range(6)]
    detours = [hh.angle_coordinates(c, path_policy=policy).detours for c in configs]
    other = next((c for c, d in zip(configs[1:], detours[1:]) if not same_routes(detours[0], d, 1e-3)), None)
    assert other is not None
    phi = angle_observable(policy)
    phi(configs[0])
    with pytest.raises(PathInstability):
        phi(other)


def test_bracket_from_gradients_shapes():
    ys = np.array([1.0, 2.0])
    gf = (np.array([[1.0], [0.0]]), np.array([[0.0], [0.0]]))
    gg = (np.array([[0.0], [0.0]]), np.array([[1.0], [0.0]]))
    # {x1, lambda1} = -y1
    assert bracket_from_gradients(gf, gg, ys)[0, 0] == -1.0
