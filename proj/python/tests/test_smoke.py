import math
from pathlib import Path

import pytest

import gmfg

CONFIGS = Path(__file__).resolve().parents[2] / "configs"


def constant_problem(grid=64):
    params = gmfg.GameParams(b=1.0, r=1.0, rho=1.0, sigma=0.3, nu=0.5)
    graphon = gmfg.Graphon.from_step_matrix([[0.5]], grid).canonicalize_signs()
    return params, graphon, gmfg.MeanField.constant(graphon, 1.0)


def test_riccati_gain():
    params = gmfg.GameParams(b=1.0, r=1.0, rho=1.0, sigma=0.0, nu=1.0)
    assert gmfg.solve_riccati(params) == pytest.approx((math.sqrt(5) - 1) / 2, abs=1e-15)


def test_invalid_params_raise():
    with pytest.raises(gmfg.Error) as info:
        gmfg.GameParams(b=1.0, r=-1.0, rho=1.0, sigma=0.0, nu=1.0)
    assert info.value.args[0] == "invalid-params"


def test_constant_graphon_solution():
    params, graphon, mean = constant_problem()
    sol = gmfg.solve(params, graphon, mean)
    xi = gmfg.xi(0.5, params)
    assert sol.z(3, 2.0) == pytest.approx(0.5 * math.exp(2.0 * xi), rel=1e-13)
    full = gmfg.cost_full(sol)["J"]
    simplified = gmfg.cost_simplified(sol)["J"]
    offsets = gmfg.cost_from_offsets(sol)["J"]
    assert max(abs(a - b) for a, b in zip(full, simplified)) < 1e-10
    assert max(abs(a - b) for a, b in zip(full, offsets)) < 1e-10
    assert gmfg.q_by_quadrature(sol, 0, 0.0) == pytest.approx(sol.q(0, 0.0), abs=1e-8)


def test_verify_and_reports():
    params, graphon, mean = constant_problem()
    sol = gmfg.solve(params, graphon, mean)
    assert gmfg.verify(sol)["passed"]
    assert not gmfg.verify(sol, lambda_bar_fault=1.1)["passed"]
    report = gmfg.check_assumptions(graphon, mean, params)
    assert report["a1"]["holds"] and not report["a5"]["holds"]


def test_a1_violation():
    params, _, _ = constant_problem()
    full = gmfg.Graphon.from_step_matrix([[1.0]], 16)
    with pytest.raises(gmfg.Error) as info:
        gmfg.solve(params, full, gmfg.MeanField.constant(full, 1.0))
    assert info.value.args[0] == "a1-violation"


def test_bump_config_critical_nodes():
    params, graphon, mean = gmfg.load_config(CONFIGS / "bump.json")
    report = gmfg.critical_nodes(gmfg.solve(params, graphon, mean))
    assert report["verdict"] == "sets-equal"
    assert report["degree_maxima"] == report["cost_minima"]
    assert len(report["degree_maxima"]) == 1


def test_small_simulation_is_reproducible():
    params, graphon, mean = constant_problem()
    sol = gmfg.solve(params, graphon, mean)
    a = gmfg.simulate(sol, nodes=2, cluster_size=50, seed=4, dt=1e-2, t_final=2.0, threads=2)
    b = gmfg.simulate(sol, nodes=2, cluster_size=50, seed=4, dt=1e-2, t_final=2.0, threads=1)
    assert a == b
    assert a["max_mean_field_error"] < 0.2
