"""Closed-form navigation vector on ladder mazes.

A ladder is a chain of ``k + 1`` rectangles with rungs of length ``m`` and rails of
length ``l`` per rectangle (see :func:`sinkwalk.graph.ladder_layout`). The walk's
-1 eigenspace is spanned by the route vector and one alternating vector per
rectangle; Gram-Schmidt on that family has coefficients given by Chebyshev
polynomials of the second kind evaluated at ``1 / (2 kappa)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .graph import DecoratedGraph, LadderLayout, SinkPlacement, decorate, ladder_layout, walk_arcs
from .spectral import cycle_eigenvector, path_eigenvector

MAX_K = 64


@dataclass(frozen=True)
class LadderParams:
    m: int
    l: int
    k: int

    def __post_init__(self) -> None:
        if self.m < 1 or self.l < 1 or self.k < 0:
            raise ValueError("ladder needs m >= 1, l >= 1, k >= 0")
        if self.k > MAX_K:
            raise ValueError(f"k = {self.k} exceeds {MAX_K}; Chebyshev values overflow precision")

    @property
    def kappa(self) -> float:
        return kappa(self.m, self.l)

    @property
    def x(self) -> float:
        return 1.0 / (2.0 * self.kappa)


def kappa(m: int, l: int) -> float:
    """Overlap of two neighbouring normalised rectangle vectors."""
    return m / (2.0 * (l + m))


def chebyshev_table(x: float, n_max: int) -> np.ndarray:
    """``U_0(x) .. U_{n_max}(x)`` by the three-term recurrence."""
    u = np.empty(n_max + 1)
    u[0] = 1.0
    if n_max >= 1:
        u[1] = 2.0 * x
    for n in range(1, n_max):
        u[n + 1] = 2.0 * x * u[n] - u[n - 1]
    return u


def chebyshev_u(params: LadderParams, n: int) -> float:
    if n == -1:
        return 0.0
    if n < -1:
        raise ValueError("n must be >= -1")
    return float(chebyshev_table(params.x, n)[n])


def _u(params: LadderParams) -> np.ndarray:
    return chebyshev_table(params.x, params.k + 1)


def tail_sums(params: LadderParams) -> np.ndarray:
    """``T_i = sum_{n=i}^{k} 1 / (u_n u_{n+1})`` for ``i = 0 .. k``."""
    u = _u(params)
    terms = 1.0 / (u[:-1] * u[1:])
    return np.cumsum(terms[::-1])[::-1]


def psi_coefficients(params: LadderParams, n: int) -> np.ndarray:
    """Coefficients of the n-th orthonormalised rectangle vector in the rectangle basis."""
    u = chebyshev_table(params.x, n + 1)
    s = np.arange(n + 1)
    return (-1.0) ** (n - s) * u[: n + 1] / math.sqrt(params.kappa * u[n] * u[n + 1])


def residual_norm_sq(params: LadderParams) -> float:
    """Squared norm of the route vector after removing its rectangle component."""
    return 1.0 - params.m / (params.m + 3) * float(tail_sums(params)[0])


@dataclass(frozen=True)
class ClosedFormNavigation:
    """Navigation amplitudes per arc family, for arcs where the rectangle vector is positive.

    ``left[i]`` is the value on the left rung of rectangle ``i`` (shared with
    rectangle ``i - 1`` when ``i >= 1``); ``top[i]`` on its rails, which also
    covers the bottom rail and, for ``i = k``, the right rung. ``route`` is the
    value on the start/goal connectors and loops where the route vector is
    positive.
    """

    params: LadderParams
    left: np.ndarray
    top: np.ndarray
    route: float
    norm: float

    def left_magnitudes(self) -> np.ndarray:
        return np.abs(self.left)

    def top_magnitudes(self) -> np.ndarray:
        return np.abs(self.top)


def navigation_closed_form(params: LadderParams) -> ClosedFormNavigation:
    m, k = params.m, params.k
    u = _u(params)
    tail = tail_sums(params)
    scale = 1.0 / math.sqrt(2 * (m + 3))
    norm = math.sqrt(residual_norm_sq(params))
    left = np.empty(k + 1)
    left[0] = scale * (1.0 - tail[0])
    for i in range(1, k + 1):
        left[i] = (-1) ** i * scale * (1.0 / u[i] + (u[i - 1] - u[i]) * tail[i])
    i = np.arange(k + 1)
    top = (-1.0) ** (i + 1) * scale * u[: k + 1] * tail
    return ClosedFormNavigation(params, left / norm, top / norm, scale / norm, norm)


@dataclass(frozen=True)
class LadderSystem:
    """Decorated ladder with its normalised route and rectangle vectors."""

    params: LadderParams
    graph: DecoratedGraph = field(repr=False)
    layout: LadderLayout = field(repr=False)
    route_vector: np.ndarray = field(repr=False)
    cycle_vectors: np.ndarray = field(repr=False)

    def cycle_arcs(self, i: int) -> list[int]:
        return walk_arcs(self.graph.base, self.layout.cycles[i], closed=True)

    def left_arcs(self, i: int) -> list[int]:
        m = self.params.m
        return self.cycle_arcs(i)[-m:]

    def rail_arcs(self, i: int) -> list[int]:
        m, l = self.params.m, self.params.l
        arcs = self.cycle_arcs(i)
        rails = arcs[:l] + arcs[l + m : 2 * l + m]
        if i == self.params.k:
            rails += arcs[l : l + m]
        return rails


def ladder_system(params: LadderParams, placement=SinkPlacement.AT_START) -> LadderSystem:
    m, l, k = params.m, params.l, params.k
    base, layout = ladder_layout(m, l, k)
    g = decorate(base, layout.route[0], layout.route[-1], placement)
    xi = path_eigenvector(g, walk_arcs(base, layout.route)).real / math.sqrt(2 * (m + 3))
    gammas = np.empty((g.arc_count, k + 1))
    prev = xi
    for i, cyc in enumerate(layout.cycles):
        gamma = cycle_eigenvector(g, walk_arcs(base, cyc, closed=True)).real / (2 * math.sqrt(l + m))
        if gamma @ prev < 0:
            gamma = -gamma
        gammas[:, i] = prev = gamma
    return LadderSystem(params, g, layout, xi, gammas)


def psi_vectors(system: LadderSystem) -> np.ndarray:
    """Orthonormalised rectangle vectors assembled from the Chebyshev coefficients."""
    k = system.params.k
    out = np.zeros_like(system.cycle_vectors)
    for n in range(k + 1):
        out[:, n] = system.cycle_vectors[:, : n + 1] @ psi_coefficients(system.params, n)
    return out


def assemble_navigation(system: LadderSystem) -> np.ndarray:
    """Navigation vector as route vector minus its Chebyshev-weighted rectangle component."""
    p = system.params
    u = _u(p)
    tail = tail_sums(p)
    s = np.arange(p.k + 1)
    weights = (-1.0) ** s * u[: p.k + 1] * tail
    raw = system.route_vector - math.sqrt(2 * (p.l + p.m)) / math.sqrt(p.m + 3) * (
        system.cycle_vectors @ weights
    )
    return raw / math.sqrt(residual_norm_sq(p))


def closed_form_vector(system: LadderSystem, closed: ClosedFormNavigation | None = None) -> np.ndarray:
    """Per-arc navigation vector filled in from the arc-family table and the vector signs."""
    p = system.params
    if closed is None:
        closed = navigation_closed_form(p)
    g = system.graph
    phi = np.zeros(g.arc_count)
    xi = system.route_vector
    route_only = np.flatnonzero(xi)
    phi[route_only] = np.sign(xi[route_only]) * closed.route
    for i in range(p.k + 1):
        gamma = system.cycle_vectors[:, i]
        for a in system.left_arcs(i):
            for b in (a, a ^ 1):
                phi[b] = np.sign(gamma[b]) * closed.left[i]
        for a in system.rail_arcs(i):
            for b in (a, a ^ 1):
                phi[b] = np.sign(gamma[b]) * closed.top[i]
    return phi


def _strictly_decreasing(values: np.ndarray) -> bool:
    return bool(np.all(values[:-1] > values[1:]))


def check_monotone(params: LadderParams) -> tuple[bool, bool]:
    """Strict decrease of |phi| along left rungs and along rails, rectangle by rectangle."""
    closed = navigation_closed_form(params)
    return (
        _strictly_decreasing(closed.left_magnitudes()),
        _strictly_decreasing(closed.top_magnitudes()),
    )


def growth_inequalities(params: LadderParams) -> bool:
    """Check, for i = 0..k:

    * ``u_{i+1} > u_i + 1``
    * ``u_{i+2} - u_{i+1} > u_{i+1} - u_i``
    * ``T_i < 1 / (u_i (u_{i+1} - u_i))``
    """
    k = params.k
    u = chebyshev_table(params.x, k + 2)
    tail = tail_sums(params)
    i = np.arange(k + 1)
    step = u[i + 1] > u[i] + 1
    convex = u[i + 2] - u[i + 1] > u[i + 1] - u[i]
    bound = tail < 1.0 / (u[i] * (u[i + 1] - u[i]))
    return bool(step.all() and convex.all() and bound.all())
