"""Exact long-time analysis through the -1 eigenspace of the Grover walk."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg
from scipy.cluster.hierarchy import DisjointSet

from .graph import DecoratedGraph
from .walk import grover_matrix, initial_state, vertex_distribution

RANK_RTOL = 1e-9
UNIT_CIRCLE_TOL = 1e-8
# eigenvalues closer than this are treated as one eigenspace
CLUSTER_TOL = 1e-6


class SpectralError(ValueError):
    pass


@dataclass(frozen=True)
class NavigationVector:
    vector: np.ndarray = field(repr=False)
    start_amplitude: float


@dataclass(frozen=True)
class SpectralReport:
    minus_one_dim: int
    unimodular_obstructions: list[tuple[complex, float]]

    @property
    def converges(self) -> bool:
        return not self.unimodular_obstructions


@dataclass(frozen=True)
class ExtractedPath:
    arcs: list[int]
    vertices: list[int]
    support: list[int]


def minus_one_eigenspace(g: DecoratedGraph) -> np.ndarray:
    """Orthonormal basis of V(-1) as the columns of a real |A| x dim array."""
    u = grover_matrix(g)
    return scipy.linalg.null_space(u + np.eye(g.arc_count), rcond=RANK_RTOL)


def navigation_vector(g: DecoratedGraph, basis: np.ndarray | None = None) -> NavigationVector:
    """Unit vector of V(-1) along the projection of the start state.

    Every other member of the adapted orthonormal basis vanishes on the start
    loop, so the projection of the start state equals ``phi(s) * phi``.
    """
    if basis is None:
        basis = minus_one_eigenspace(g)
    proj = basis @ (basis.T @ initial_state(g).real)
    norm = np.linalg.norm(proj)
    if norm < 1e-12:
        raise SpectralError("start loop is orthogonal to the -1 eigenspace")
    phi = proj / norm
    if phi[g.self_loop_s] < 0:
        phi = -phi
    return NavigationVector(phi.astype(complex), float(phi[g.self_loop_s]))


def limit_distribution(g: DecoratedGraph, nav: NavigationVector | None = None) -> np.ndarray:
    """lim mu_n(v) = |phi(s)|^2 * sum_{t(a)=v} |phi(a)|^2 for each non-sink vertex."""
    if nav is None:
        nav = navigation_vector(g)
    return nav.start_amplitude**2 * vertex_distribution(g, nav.vector)


def extract_path(g: DecoratedGraph, phi: np.ndarray, threshold: float = 0.5) -> ExtractedPath:
    """Keep base arcs with ``|phi(a)| > threshold * max|phi|`` and route s -> g through them.

    ``arcs`` is the BFS route inside the kept set. If the goal is cut off,
    both ``arcs`` and ``vertices`` are empty; see ``connecting_threshold``.
    """
    mags = np.abs(np.asarray(phi))
    top = mags.max()
    if top == 0:
        raise SpectralError("navigation vector is zero")
    base = g.base
    keep = [a for a in range(base.arc_count) if mags[a] > threshold * top]
    if not keep:
        raise SpectralError("no arc above threshold")
    kept = set(keep)
    parent = {g.start: -1}
    queue = deque([g.start])
    while queue and g.goal not in parent:
        v = queue.popleft()
        for a in sorted(base.out_arcs(v)):
            w = base.terminal(a)
            if a in kept and w not in parent:
                parent[w] = a
                queue.append(w)
    if g.goal not in parent:
        return ExtractedPath([], [], keep)
    arcs: list[int] = []
    w = g.goal
    while w != g.start:
        arcs.append(parent[w])
        w = base.origin(parent[w])
    arcs.reverse()
    return ExtractedPath(arcs, [g.start] + [base.terminal(a) for a in arcs], keep)


def connecting_threshold(g: DecoratedGraph, phi: np.ndarray) -> float:
    """Bottleneck ratio: the s-g route exists in ``extract_path`` iff threshold is below this."""
    mags = np.abs(np.asarray(phi))[: g.base.arc_count]
    top = mags.max()
    if top == 0:
        raise SpectralError("navigation vector is zero")
    components = DisjointSet(range(g.base.vertex_count))
    for a in np.argsort(-mags, kind="stable"):
        components.merge(g.base.origin(int(a)), g.base.terminal(int(a)))
        if components.connected(g.start, g.goal):
            return float(mags[a] / top)
    raise SpectralError("start and goal are disconnected")


def unimodular_obstruction(g: DecoratedGraph) -> SpectralReport:
    """Unit-circle eigenvalues other than -1 that trap part of the start state.

    For each such eigenvalue, the eigenvectors vanishing on both sink arcs are
    invariant under ``PU``; a nonzero overlap with the start state keeps the
    sign-corrected iteration oscillating forever.
    """
    u = grover_matrix(g)
    # U is real orthogonal, hence normal: the complex Schur form is diagonal
    t, z = scipy.linalg.schur(u.astype(complex), output="complex")
    evals = np.diag(t)
    sink_rows = [g.sink_arc, g.sink_arc_rev]
    zeta = initial_state(g)
    dim = minus_one_eigenspace(g).shape[1]
    used = np.zeros(len(evals), dtype=bool)
    found = []
    for i in np.argsort(np.angle(evals)):
        lam = evals[i]
        if used[i] or abs(abs(lam) - 1) > UNIT_CIRCLE_TOL:
            continue
        members = (np.abs(evals - lam) < CLUSTER_TOL) & ~used
        used |= members
        if abs(lam + 1) < CLUSTER_TOL:
            continue
        space = z[:, members]
        # columns are unit vectors, so an absolute cut is meaningful here
        _, sv, vh = np.linalg.svd(space[sink_rows])
        rank = int(np.sum(sv > RANK_RTOL))
        restrict = vh[rank:].conj().T
        if restrict.shape[1] == 0:
            continue
        trapped = space @ restrict
        overlap = float(np.linalg.norm(trapped.conj().T @ zeta))
        if overlap > 1e-9:
            lam_c = complex(np.mean(evals[members]))
            found.append((lam_c, overlap))
    return SpectralReport(dim, found)


def path_eigenvector(g: DecoratedGraph, arcs: list[int]) -> np.ndarray:
    """Alternating +-1 vector on the two self-loops and a vertex-simple s-g path."""
    base = g.base
    if not arcs:
        raise SpectralError("path must have at least one arc")
    verts = [base.origin(arcs[0])] + [base.terminal(a) for a in arcs]
    if verts[0] != g.start or verts[-1] != g.goal:
        raise SpectralError("path must run from start to goal")
    if any(base.terminal(a) != base.origin(b) for a, b in zip(arcs, arcs[1:])):
        raise SpectralError("arcs are not consecutive")
    if len(set(verts)) != len(verts):
        raise SpectralError("path repeats a vertex")
    xi = np.zeros(g.arc_count, dtype=complex)
    xi[g.self_loop_s] = 1.0
    for i, a in enumerate(arcs, start=1):
        xi[a] = xi[a ^ 1] = (-1) ** i
    xi[g.self_loop_g] = (-1) ** (len(arcs) + 1)
    return xi


def cycle_eigenvector(g: DecoratedGraph, arcs: list[int]) -> np.ndarray:
    """Alternating +-1 vector around an even cycle, on both orientations of each arc."""
    base = g.base
    if len(arcs) % 2:
        raise SpectralError(f"cycle of odd length {len(arcs)} has no -1 eigenvector")
    closed = arcs + arcs[:1]
    if any(base.terminal(a) != base.origin(b) for a, b in zip(closed, closed[1:])):
        raise SpectralError("arcs do not form a closed walk")
    if len({base.terminal(a) for a in arcs}) != len(arcs):
        raise SpectralError("cycle repeats a vertex")
    xi = np.zeros(g.arc_count, dtype=complex)
    for i, a in enumerate(arcs, start=1):
        xi[a] = xi[a ^ 1] = (-1) ** i
    return xi


def adapted_onb(basis: np.ndarray, s_index: int) -> np.ndarray:
    """Literal Gram-Schmidt construction of an ONB whose last vector alone touches ``s``.

    The column with the largest entry at ``s`` is pivoted to the end, the others
    have their ``s`` entry cancelled against it, then the columns are
    orthonormalised in order.
    """
    basis = np.array(basis, dtype=complex)
    pivot = int(np.argmax(np.abs(basis[s_index])))
    order = [i for i in range(basis.shape[1]) if i != pivot] + [pivot]
    xi = basis[:, order]
    last = xi[:, -1]
    eta = [xi[:, i] - (xi[s_index, i] / last[s_index]) * last for i in range(xi.shape[1] - 1)]
    eta.append(last)
    onb: list[np.ndarray] = []
    for v in eta:
        for q in onb:
            v = v - np.vdot(q, v) * q
        onb.append(v / np.linalg.norm(v))
    return np.column_stack(onb)
