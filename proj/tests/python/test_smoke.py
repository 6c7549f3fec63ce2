"""Smoke tests for the python bindings: known values of the main operations."""

import math

import numpy as np
import pytest

import dlgrowth


def test_steady_state_values():
    ss = dlgrowth.steady_state(beta=0.1, gamma=0.4, theta=0.5, n=0.01)
    assert ss.g_a == pytest.approx(0.0125, rel=1e-12)
    assert ss.g_k == pytest.approx(0.0225, rel=1e-12)
    assert ss.g_k - ss.g_a == pytest.approx(0.01, rel=1e-12)


def test_steady_state_rejects_bad_domain():
    with pytest.raises(ValueError):
        dlgrowth.steady_state(beta=0.5, gamma=0.4, theta=0.5, n=0.01)


def test_projection_chain():
    assert dlgrowth.capital_cost_share(0.176, 0.298) == pytest.approx(0.371, abs=5e-4)
    assert dlgrowth.share_to_beta(0.5, 0.4) == pytest.approx(0.4, rel=1e-12)
    assert dlgrowth.project_growth(0.371) == pytest.approx(0.0241, abs=2e-4)
    assert dlgrowth.project_growth(0.343) == pytest.approx(0.0209, abs=2e-4)


def test_proposition1():
    effect = dlgrowth.proposition1_effect(
        beta=0.1, gamma=0.4, theta=0.5, n=0.01, beta_prime=0.2, gamma_prime=0.4
    )
    assert effect["g_a_after"] == pytest.approx(0.02, rel=1e-12)
    assert effect["g_a_after"] > effect["g_a_before"]
    assert effect["g_k_after"] > effect["g_k_before"]


def test_performance_transform():
    assert dlgrowth.perf_to_tech(0.9) == pytest.approx(9.0)
    assert dlgrowth.tech_to_perf(9.0) == pytest.approx(0.9)
    assert dlgrowth.gtilde(0.9, 0.8) == pytest.approx(
        math.log(1.125) + math.log(2.0), rel=1e-12
    )
    assert dlgrowth.baseline_for("task", "0", [0.6, 0.9, 0.7]) == 0.7


def test_compute_estimators():
    assert dlgrowth.estimate_method1(2e9, 90, examples=1.28e6) == 6.912e17
    assert dlgrowth.estimate_method2(172800, 5, 1e13, utilization=0.3) == 2.592e18
    # Utilization defaults to 0.3.
    assert dlgrowth.estimate_method2(172800, 5, 1e13) == 2.592e18
    rec = dlgrowth.reconcile([1e18, 4e18])
    assert rec["value"] == pytest.approx(2e18, rel=1e-12)
    assert rec["spread"] == pytest.approx(4.0)


def test_ces_marginal_product_matches_finite_difference():
    def perf(d, c, sigma=0.5):
        r = (sigma - 1.0) / sigma
        return (d**r + c**r) ** (1.0 / r)

    h = 1e-6
    fd = (perf(1.3, 0.9 + h) - perf(1.3, 0.9 - h)) / (2 * h)
    assert dlgrowth.ces_marginal_product(1.3, 0.9, 1.0, 1.0, 0.5) == pytest.approx(
        fd, rel=1e-6
    )


def test_simulate_converges_to_steady_state():
    out = dlgrowth.simulate(beta=0.14, gamma=0.35, theta=0.5, n=0.01, horizon=5000,
                            step=0.25, stride=1000, from_bgp=False, K0=1, L0=1, A0=1)
    assert out["ok"]
    assert out["g_a"][-1] == pytest.approx(0.49 / 0.36 * 0.01, rel=1e-5)


def test_scaling_experiment_exponent():
    out = dlgrowth.scaling_experiment(theta=0.0, beta=0.2, scales=[1, 2, 4, 8])
    assert out["exponent"] == pytest.approx(-0.2, rel=0.05)


def test_ols_robust_roundtrip():
    rng = np.random.default_rng(0)
    X = np.column_stack([np.ones(200), rng.normal(size=200), rng.normal(size=200)])
    y = X @ np.array([1.0, 0.5, -0.25]) + 0.01 * rng.normal(size=200)
    fit = dlgrowth.ols_robust(y, X)
    assert fit["coef"] == pytest.approx([1.0, 0.5, -0.25], abs=0.01)
    assert fit["n"] == 200 and fit["k"] == 3


def test_kde_integrates_to_one():
    rng = np.random.default_rng(1)
    out = dlgrowth.kde(rng.normal(size=4000).tolist())
    trapezoid = getattr(np, "trapezoid", None) or np.trapz
    mass = trapezoid(out["density"], out["grid"])
    assert mass == pytest.approx(1.0, abs=1e-3)
