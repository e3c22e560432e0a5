"""Closed-form solver, verifier and Monte Carlo simulator for LQG graphon mean field games."""

import json as _json

from ._gmfg import (
    EquilibriumSolution,
    Error,
    GameParams,
    Graphon,
    MeanField,
    consistency_residual,
    cost_constant_mean,
    cost_from_offsets,
    cost_full,
    cost_simplified,
    find_strict_local_extrema,
    lambda_bar,
    q_by_quadrature,
    solve_riccati,
    theta,
    xi,
)
from . import _gmfg

__all__ = [
    "EquilibriumSolution",
    "Error",
    "GameParams",
    "Graphon",
    "MeanField",
    "check_assumptions",
    "consistency_residual",
    "cost_constant_mean",
    "cost_from_offsets",
    "cost_full",
    "cost_simplified",
    "critical_nodes",
    "find_strict_local_extrema",
    "lambda_bar",
    "load_config",
    "q_by_quadrature",
    "simulate",
    "solve",
    "solve_riccati",
    "theta",
    "verify",
    "xi",
]


def solve(params, graphon, mean_field):
    return EquilibriumSolution.solve(params, graphon, mean_field)


def check_assumptions(graphon, mean_field, params):
    return _json.loads(_gmfg._check_assumptions_json(graphon, mean_field, params))


def verify(solution, lambda_bar_fault=1.0):
    return _json.loads(_gmfg._verify_json(solution, lambda_bar_fault))


def critical_nodes(solution, a5_ablation=True):
    return _json.loads(_gmfg._critical_nodes_json(solution, a5_ablation))


def simulate(solution, nodes=4, cluster_size=2000, initial_std=None, seed=1, dt=1e-3, t_final=14.0, threads=1):
    """Monte Carlo run of the finite network; returns the comparison metrics."""
    if initial_std is None:
        initial_std = solution.params.nu
    text = _gmfg._simulate_json(solution, nodes, cluster_size, initial_std, seed, dt, t_final, threads)
    return _json.loads(text)


def load_config(path):
    """Returns (params, graphon, mean_field) built from a JSON run configuration."""
    return _gmfg._load_config(str(path))
