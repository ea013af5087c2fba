"""Grover walk with a sink: sparse arc-space dynamics."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import DecoratedGraph


def initial_state(g: DecoratedGraph) -> np.ndarray:
    state = np.zeros(g.arc_count, dtype=complex)
    state[g.self_loop_s] = 1.0
    return state


def _check(g: DecoratedGraph, xi: np.ndarray) -> np.ndarray:
    xi = np.asarray(xi)
    if xi.shape != (g.arc_count,):
        raise ValueError(f"state has shape {xi.shape}, graph has {g.arc_count} arcs")
    return xi


def vertex_sums(g: DecoratedGraph, xi: np.ndarray) -> np.ndarray:
    """S(v) = sum of amplitudes on arcs terminating at v."""
    n = g.vertex_count
    if np.iscomplexobj(xi):
        return np.bincount(g.terminal, xi.real, n) + 1j * np.bincount(g.terminal, xi.imag, n)
    return np.bincount(g.terminal, xi, n)


def grover_step(g: DecoratedGraph, xi: np.ndarray) -> np.ndarray:
    xi = _check(g, xi)
    coin = 2.0 * vertex_sums(g, xi) / g.degree
    return coin[g.origin] - xi[g.inverse]


def project_sink(g: DecoratedGraph, xi: np.ndarray) -> np.ndarray:
    out = np.array(_check(g, xi), copy=True)
    out[[g.sink_arc, g.sink_arc_rev]] = 0
    return out


def truncated_step(g: DecoratedGraph, xi: np.ndarray) -> np.ndarray:
    return project_sink(g, grover_step(g, xi))


def iterate(g: DecoratedGraph, xi: np.ndarray, n: int) -> np.ndarray:
    """Apply ``P U`` ``n`` times."""
    if n < 0:
        raise ValueError("n must be non-negative")
    xi = np.array(_check(g, xi), dtype=complex, copy=True)
    for _ in range(n):
        xi = truncated_step(g, xi)
    return xi


def grover_matrix(g: DecoratedGraph) -> np.ndarray:
    """Dense |A| x |A| matrix of U, built entry by entry from the arc rule."""
    size = g.arc_count
    u = np.zeros((size, size))
    for a in range(size):
        v = g.origin[a]
        for b in g.incoming(v):
            u[a, b] += 2.0 / g.degree[v]
        u[a, g.inverse[a]] -= 1.0
    return u


def sink_projector(g: DecoratedGraph) -> np.ndarray:
    p = np.eye(g.arc_count)
    p[g.sink_arc, g.sink_arc] = p[g.sink_arc_rev, g.sink_arc_rev] = 0.0
    return p


def finding_probability(g: DecoratedGraph, xi: np.ndarray, v: int) -> float:
    if v == g.sink_vertex:
        raise ValueError("finding probability is not defined at the sink")
    xi = _check(g, xi)
    return float(np.sum(np.abs(xi[g.terminal == v]) ** 2))


def vertex_distribution(g: DecoratedGraph, xi: np.ndarray) -> np.ndarray:
    """Finding probability at every non-sink vertex, indexed like ``g.base``."""
    xi = _check(g, xi)
    mass = np.bincount(g.terminal, np.abs(xi) ** 2, g.vertex_count)
    return mass[: g.base.vertex_count]


@dataclass(frozen=True)
class PowerResult:
    limit: np.ndarray
    steps: int
    converged: bool
    residual: float


def converge_power(
    g: DecoratedGraph,
    tol: float = 1e-10,
    max_steps: int | None = None,
) -> PowerResult:
    """Iterate ``chi_n = (-1)^n (PU)^n zeta`` until ``||chi_n - chi_{n-2}|| < tol``."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    if max_steps is None:
        max_steps = 50 * g.arc_count
    # two-step history; the sign flip is applied to each step
    prev2 = initial_state(g)
    prev1 = -truncated_step(g, prev2)
    residual = np.inf
    for n in range(2, max_steps + 1):
        cur = -truncated_step(g, prev1)
        residual = float(np.linalg.norm(cur - prev2))
        if residual < tol:
            return PowerResult(cur, n, True, residual)
        prev2, prev1 = prev1, cur
    return PowerResult(prev1, max_steps, False, residual)
