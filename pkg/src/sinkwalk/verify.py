"""Invariant suite over generated corpora, used by ``sinkwalk verify``."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import graph as gr
from . import ladder as ld
from . import spectral as sp
from . import walk as wk

LADDER_GRID = list(itertools.product(range(1, 5), range(1, 5), range(6)))

# graphs whose slowest decaying mode lets the walk settle within a few thousand steps
DYNAMIC_CAP = 200_000


@dataclass(frozen=True)
class CorpusItem:
    name: str
    graph: gr.DecoratedGraph


def random_tree_cases(count: int, seed: int, sizes=(5, 60)) -> list[CorpusItem]:
    rng = random.Random(seed)
    items = []
    for i in range(count):
        n = rng.randint(*sizes)
        tree = gr.make_random_tree(n, rng.randrange(2**31))
        s, g = rng.sample(range(n), 2)
        items.append(CorpusItem(f"tree{i}(n={n},s={s},g={g})", gr.decorate(tree, s, g)))
    return items


def ladder_case(m: int, l: int, k: int, placement="start") -> CorpusItem:
    base, s, g = gr.make_ladder(m, l, k)
    return CorpusItem(f"ladder({m},{l},{k})", gr.decorate(base, s, g, placement))


def even_cycle_cases() -> list[CorpusItem]:
    return [
        CorpusItem(f"cycle{n}", gr.decorate(gr.cycle_graph(n), 0, n // 2)) for n in (4, 6, 8, 10)
    ]


GRID_MAZES = {
    "corridor": "S.G",
    "elbow": "S#\n.G",
    "room": "S..\n...\n..G",
    "maze": "S.#..\n.##.#\n.....\n#.#.G\n.....",
}


def grid_cases() -> list[CorpusItem]:
    items = []
    for name, text in GRID_MAZES.items():
        base, s, g = gr.parse_grid_maze(text)
        items.append(CorpusItem(f"grid:{name}", gr.decorate(base, s, g)))
    return items


def default_corpus(seed: int = 0) -> list[CorpusItem]:
    """Sink-at-start graphs: paths, trees, even cycles, ladders, grid mazes."""
    items = [CorpusItem(f"path{n}", gr.decorate(gr.path_graph(n), 0, n - 1)) for n in range(2, 7)]
    items += random_tree_cases(10, seed, sizes=(5, 30))
    items += even_cycle_cases()
    items += [ladder_case(*p) for p in [(1, 1, 0), (2, 1, 0), (2, 1, 1), (1, 1, 2), (3, 2, 2)]]
    items += grid_cases()
    return items


def hung_cycle_graph(cycle_length: int = 9, placement="goal") -> gr.DecoratedGraph:
    """Route s - v - g with a cycle of the given length hanging off the middle vertex."""
    n = 3 + cycle_length - 1
    ring = [1] + list(range(3, n))
    edges = [(0, 1), (1, 2)] + [(ring[i], ring[(i + 1) % cycle_length]) for i in range(cycle_length)]
    return gr.decorate(gr.SymmetricDigraph.from_edges(n, edges), 0, 2, placement)


def small_dynamic_corpus() -> list[CorpusItem]:
    """Graphs where the sign-corrected iteration reaches 1e-10 within ``DYNAMIC_CAP`` steps."""
    items = [CorpusItem(f"path{n}", gr.decorate(gr.path_graph(n), 0, n - 1)) for n in (2, 3, 4, 5)]
    items += even_cycle_cases()[:3]
    items += [ladder_case(1, 1, 0), ladder_case(2, 1, 0), ladder_case(1, 1, 1)]
    items += grid_cases()[:3]
    return items


# -- checks ------------------------------------------------------------------


def check_tree_localization(seed: int) -> tuple[bool, str]:
    worst = 0.0
    for item in random_tree_cases(30, seed):
        g = item.graph
        mu = sp.limit_distribution(g)
        on_path = set(gr.path_vertices(g.base, g.start, gr.bfs_shortest_path(g.base, g.start, g.goal)))
        off = [v for v in range(g.base.vertex_count) if v not in on_path]
        vals = mu[sorted(on_path)]
        if vals.min() <= 1e-12:
            return False, item.name
        worst = max(worst, vals.max() - vals.min(), float(np.max(mu[off], initial=0.0)))
    return worst < 1e-10, f"max deviation {worst:.2e}"


def check_dimension_law(seed: int) -> tuple[bool, str]:
    items = random_tree_cases(10, seed) + even_cycle_cases() + [ladder_case(*p) for p in LADDER_GRID[::7]]
    for item in items:
        dim = sp.minus_one_eigenspace(item.graph).shape[1]
        if dim != gr.betti_number(item.graph.base) + 1:
            return False, f"{item.name}: dim {dim}"
    return True, f"{len(items)} graphs"


def check_ladder_closed_form(seed: int) -> tuple[bool, str]:
    worst = 0.0
    for m, l, k in LADDER_GRID:
        system = ld.ladder_system(ld.LadderParams(m, l, k))
        closed = np.abs(ld.closed_form_vector(system))
        spectral = np.abs(sp.navigation_vector(system.graph).vector)
        worst = max(worst, float(np.max(np.abs(closed - spectral))))
    residual = abs(ld.residual_norm_sq(ld.LadderParams(2, 1, 1)) - 0.85)
    return worst < 1e-9 and residual < 1e-12, f"max |phi| deviation {worst:.2e}"


def check_monotone(seed: int) -> tuple[bool, str]:
    rng = random.Random(seed)
    params = LADDER_GRID + [(rng.randint(1, 20), rng.randint(1, 20), rng.randint(0, 40)) for _ in range(50)]
    for m, l, k in params:
        p = ld.LadderParams(m, l, k)
        if ld.check_monotone(p) != (True, True) or not ld.growth_inequalities(p):
            return False, f"({m},{l},{k})"
    return True, f"{len(params)} ladders"


def check_eigenvectors(seed: int) -> tuple[bool, str]:
    rng = random.Random(seed)
    worst = 0.0
    for i in range(25):
        n = rng.randint(3, 40)
        item = random_tree_cases(1, rng.randrange(2**31), sizes=(n, n))[0]
        g = item.graph
        xi = sp.path_eigenvector(g, gr.bfs_shortest_path(g.base, g.start, g.goal))
        worst = max(worst, float(np.linalg.norm(wk.grover_step(g, xi) + xi)))
    for i in range(25):
        m, l, k = rng.randint(1, 5), rng.randint(1, 5), rng.randint(0, 4)
        system = ld.ladder_system(ld.LadderParams(m, l, k))
        j = rng.randint(0, k)
        gamma = sp.cycle_eigenvector(system.graph, system.cycle_arcs(j))
        worst = max(worst, float(np.linalg.norm(wk.grover_step(system.graph, gamma) + gamma)))
    return worst < 1e-12, f"max ||U xi + xi|| {worst:.2e}"


def check_obstructions(seed: int) -> tuple[bool, str]:
    for item in default_corpus(seed):
        if sp.unimodular_obstruction(item.graph).unimodular_obstructions:
            return False, f"{item.name} has an obstruction with the sink at start"
    g = hung_cycle_graph(9, "goal")
    report = sp.unimodular_obstruction(g)
    run = wk.converge_power(g)
    return bool(report.unimodular_obstructions) and not run.converged, (
        f"{len(report.unimodular_obstructions)} obstructing eigenvalues on the 9-cycle graph"
    )


def check_hygiene(seed: int) -> tuple[bool, str]:
    rng = np.random.default_rng(seed)
    worst_norm = worst_dense = 0.0
    for item in default_corpus(seed)[::3]:
        g = item.graph
        u = wk.grover_matrix(g)
        for _ in range(20):
            xi = rng.normal(size=g.arc_count) + 1j * rng.normal(size=g.arc_count)
            step = wk.grover_step(g, xi)
            worst_norm = max(worst_norm, abs(np.linalg.norm(step) / np.linalg.norm(xi) - 1))
            worst_dense = max(worst_dense, float(np.max(np.abs(step - u @ xi))))
    return worst_norm < 1e-12 and worst_dense < 1e-13, f"norm {worst_norm:.1e}, dense {worst_dense:.1e}"


def check_power_vs_spectral(seed: int, tol: float = 1e-10, max_steps: int | None = None) -> tuple[bool, str]:
    worst = 0.0
    for item in small_dynamic_corpus():
        g = item.graph
        run = wk.converge_power(g, tol, max_steps or DYNAMIC_CAP)
        if not run.converged:
            return False, f"{item.name} did not converge in {run.steps} steps"
        mu = wk.vertex_distribution(g, run.limit)
        worst = max(worst, float(np.max(np.abs(mu - sp.limit_distribution(g)))))
    return worst < 1e-8, f"max deviation {worst:.2e}"


CHECKS: dict[str, Callable[[int], tuple[bool, str]]] = {
    "tree_localization": check_tree_localization,
    "dimension_law": check_dimension_law,
    "ladder_closed_form": check_ladder_closed_form,
    "monotone_amplitudes": check_monotone,
    "eigenvector_constructions": check_eigenvectors,
    "obstructions": check_obstructions,
    "numerical_hygiene": check_hygiene,
    "power_vs_spectral": check_power_vs_spectral,
}


def run_verify(cfg) -> tuple[int, dict]:
    results = {}
    ok = True
    for name, check in CHECKS.items():
        try:
            passed, detail = check(cfg.seed)
        except Exception as exc:  # a crashing check is a failed check
            passed, detail = False, f"{type(exc).__name__}: {exc}"
        passed = bool(passed)
        results[name] = {"passed": passed, "detail": detail}
        ok &= passed
    return (0 if ok else 1), {"seed": cfg.seed, "passed": ok, "checks": results}
