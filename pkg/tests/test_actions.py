import json
import warnings

import numpy as np
import pytest
from hypothesis import given, strategies as st

import hyperhitchin as hh
from hyperhitchin import PhaseConfiguration, SpectralPoint, assemble_system, cramer_solve, sample_config, solve_actions
from hyperhitchin.actions import random_hamiltonians
from hyperhitchin.errors import InputError, SingularConfiguration

from .conftest import random_problem

ROUND_TRIP_CASES = [("A", 1, 2), ("A", 1, 3), ("A", 2, 2), ("C", 2, 2), ("B", 2, 2)]


def config_on(curve, spec, xs, lams):
    return PhaseConfiguration(
        tuple(SpectralPoint(x, curve.point(x).y, l) for x, l in zip(xs, lams)), curve, spec
    )


def test_rows_a1_g2(quintic, a1):
    cfg = config_on(quintic, a1, [0.5, 1j, -0.7], [0.3, 2, 1 + 1j])
    M, rhs = assemble_system(cfg)
    assert np.allclose(M, np.vander(cfg.xs, 3, increasing=True))
    assert np.allclose(rhs, -cfg.lams**2)


def test_vandermonde(quintic, a1):
    cfg = config_on(quintic, a1, [0, 1, 2], [1, 1, 1])
    M, _ = assemble_system(cfg)
    assert np.array_equal(M, np.array([[1, 0, 0], [1, 1, 1], [1, 2, 4]], dtype=complex))


def test_rows_a1_g3(a1):
    curve = hh.HyperellipticCurve.random(3, 2)
    xs = [0.1, 0.5j, -0.4, 0.7 + 0.2j, 1.1, -0.3 - 0.8j]
    cfg = config_on(curve, a1, xs, np.arange(6) + 0.5)
    M, rhs = assemble_system(cfg)
    expected = np.column_stack([cfg.xs**k for k in range(5)] + [cfg.ys])
    assert np.allclose(M, expected)
    assert np.allclose(rhs, -cfg.lams**2)


def test_rows_carry_lambda_powers():
    spec, curve, lay, H = random_problem("A", 2, 2, 1)
    cfg = sample_config(curve, spec, H, 1)
    M, rhs = assemble_system(cfg)
    # d=2 block multiplies lambda^1, d=3 block lambda^0
    assert np.allclose(M[:, :3], lay.basis_values(cfg.xs, cfg.ys)[:, :3] * cfg.lams[:, None])
    assert np.allclose(M[:, 3:], lay.basis_values(cfg.xs, cfg.ys)[:, 3:])
    assert np.allclose(rhs, -cfg.lams**3)


def test_constant_lambda(quintic, a1):
    H = solve_actions(config_on(quintic, a1, [0, 1, 2], [1, 1, 1]))
    assert np.allclose(H.values, [-1, 0, 0], atol=1e-14)


def test_lambda_equals_x(quintic, a1):
    H = solve_actions(config_on(quintic, a1, [0, 1, 2], [0, 1, 2]))
    assert np.allclose(H.values, [0, 0, -1], atol=1e-14)


@pytest.mark.parametrize("case", ROUND_TRIP_CASES)
def test_round_trip(case):
    for seed in range(20):
        spec, curve, lay, H = random_problem(*case, seed)
        cfg = sample_config(curve, spec, H, seed)
        got = solve_actions(cfg).values
        assert np.linalg.norm(got - H) < 1e-10 * np.linalg.norm(H)


@given(st.sampled_from(ROUND_TRIP_CASES), st.integers(0, 2**32 - 1), st.floats(0.1, 10))
def test_round_trip_property(case, seed, spread):
    spec, curve, lay, _ = random_problem(*case, seed)
    H = random_hamiltonians(lay, seed, spread)
    cfg = sample_config(curve, spec, H, seed)
    assert np.linalg.norm(solve_actions(cfg).values - H) < 1e-10 * np.linalg.norm(H)


@given(st.sampled_from(ROUND_TRIP_CASES), st.integers(0, 10_000), st.randoms(use_true_random=False))
def test_permutation_invariance(case, seed, rnd):
    spec, curve, lay, H = random_problem(*case, seed)
    cfg = sample_config(curve, spec, H, seed)
    perm = list(range(cfg.N))
    rnd.shuffle(perm)
    a = solve_actions(cfg).values
    b = solve_actions(cfg.permuted(perm)).values
    assert np.max(np.abs(a - b)) <= 1e-12 * max(1.0, np.max(np.abs(a)))


@pytest.mark.parametrize("case", ROUND_TRIP_CASES)
def test_cramer_agrees_with_lu(case):
    for seed in range(10):
        spec, curve, lay, H = random_problem(*case, seed)
        cfg = sample_config(curve, spec, H, seed)
        M, rhs = assemble_system(cfg)
        lu = solve_actions(cfg, cross_check=False).values
        cr = cramer_solve(M, rhs)
        assert np.max(np.abs(cr - lu)) < 1e-8 * np.max(np.abs(lu))


def test_cross_check_is_quiet_on_good_input():
    spec, curve, lay, H = random_problem("A", 2, 2, 4)
    cfg = sample_config(curve, spec, H, 4)
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        solve_actions(cfg)


def test_duplicate_x_is_singular():
    spec, curve, lay, H = random_problem("A", 1, 2, 0)
    cfg = sample_config(curve, spec, H, 0)
    dup = cfg.replace(1, cfg.points[0])
    with pytest.raises(SingularConfiguration):
        solve_actions(dup)


def test_nearly_coincident_x_is_singular(quintic, a1):
    cfg = config_on(quintic, a1, [0.5, 0.5 + 1e-13, 1.5], [1, 2, 3])
    with pytest.raises(SingularConfiguration):
        solve_actions(cfg)


def test_same_x_opposite_sheets_a1_g3(a1):
    # rows differ only in the sign of the y column: accepted when well conditioned
    curve = hh.HyperellipticCurve.random(3, 7)
    spec, _, lay, H = random_problem("A", 1, 3, 7)
    cfg = sample_config(curve, a1, H, 7)
    p = cfg.points[0]
    q = curve.point(p.x, -1) if abs(curve.point(p.x).y - p.y) < 1e-12 else curve.point(p.x)
    lam = hh.lambda_roots(cfg.layout, H, q)[0]
    cfg2 = cfg.replace(1, SpectralPoint(q.x, q.y, lam))
    got = solve_actions(cfg2).values
    assert np.linalg.norm(got - H) < 1e-8 * np.linalg.norm(H)


def test_sample_zero_hamiltonians(quintic, a1):
    cfg = sample_config(quintic, a1, np.zeros(3), 5)
    assert np.all(cfg.lams == 0)


def test_sample_constant_hamiltonian(quintic, a1):
    cfg = sample_config(quintic, a1, [-1, 0, 0], 5)
    assert np.allclose(np.abs(cfg.lams), 1, atol=1e-14)
    assert np.allclose(cfg.lams.imag, 0, atol=1e-14)


def test_sample_is_deterministic():
    spec, curve, lay, H = random_problem("C", 2, 2, 9)
    a = json.dumps(sample_config(curve, spec, H, 9).to_json())
    b = json.dumps(sample_config(curve, spec, H, 9).to_json())
    assert a == b


def test_sample_annulus_and_keepout():
    spec, curve, lay, H = random_problem("A", 2, 2, 3)
    rho = curve.radius
    cfg = sample_config(curve, spec, H, 3)
    r = np.abs(cfg.xs)
    assert np.all((r >= 0.5 * rho - 1e-12) & (r <= 2 * rho + 1e-12))
    d = np.abs(cfg.xs[:, None] - curve.branch_points()[None, :])
    assert d.min() >= 0.02 * (1 + rho)


def test_sample_b_series_avoids_zero_root():
    spec, curve, lay, H = random_problem("B", 2, 2, 1)
    cfg = sample_config(curve, spec, H, 1)
    assert np.all(np.abs(cfg.lams) > 1e-8)


def test_wrong_point_count(quintic, a1):
    with pytest.raises(InputError):
        config_on(quintic, a1, [0, 1], [1, 1])


def test_point_off_curve(quintic, a1):
    with pytest.raises(InputError):
        PhaseConfiguration(((0, 1, 1), (1, 2, 1), (2, 5, 1)), quintic, a1)


def test_config_json(quintic, a1):
    cfg = config_on(quintic, a1, [0, 1, 2j], [1, -1, 0.5j])
    obj = json.loads(json.dumps(cfg.to_json()))
    assert set(obj["points"][0]) == {"x", "y", "lambda"}
    back = PhaseConfiguration.from_json(obj, quintic, a1)
    assert back.points == cfg.points
