"""Acceptance suite: one recorded PASS/FAIL line per criterion.

Each test records its verdict through the ``record`` fixture before asserting,
so the terminal summary lists every criterion even when one fails.
"""

import itertools
import random
import time

import numpy as np
from hypothesis import given, strategies as st

from sinkwalk import graph as gr
from sinkwalk import ladder as ld
from sinkwalk import spectral as sp
from sinkwalk import walk as wk
from sinkwalk.verify import default_corpus, hung_cycle_graph, random_tree_cases

LADDER_GRID = list(itertools.product(range(1, 5), range(1, 5), range(6)))


def test_c1_tree_localization(record):
    cases = random_tree_cases(100, seed=2024, sizes=(5, 60))
    started = time.perf_counter()
    worst_spread = worst_off = 0.0
    support_ok = True
    for item in cases:
        g = item.graph
        mu = sp.limit_distribution(g)
        route = gr.path_vertices(g.base, g.start, gr.bfs_shortest_path(g.base, g.start, g.goal))
        on = np.array(sorted(route))
        off = np.setdiff1d(np.arange(g.base.vertex_count), on)
        support_ok &= bool(mu[on].min() > 1e-12)
        worst_spread = max(worst_spread, float(mu[on].max() - mu[on].min()))
        worst_off = max(worst_off, float(np.max(mu[off], initial=0.0)))
    elapsed = time.perf_counter() - started
    passed = support_ok and worst_spread < 1e-10 and worst_off < 1e-12 and elapsed < 10
    record(
        "C1 tree localization",
        passed,
        f"100 trees, spread {worst_spread:.1e} (<1e-10), off-route {worst_off:.1e} (<1e-12), {elapsed:.2f}s (<10s)",
    )
    assert passed


def test_c2_power_iteration_limit_formula(record):
    corpus = default_corpus(0)
    failures = []
    worst = 0.0
    for item in corpus:
        g = item.graph
        cap = 50 * g.arc_count
        run = wk.converge_power(g, tol=1e-10, max_steps=cap)
        gap = float(np.max(np.abs(wk.vertex_distribution(g, run.limit) - sp.limit_distribution(g))))
        if run.converged:
            worst = max(worst, gap)
        if not run.converged or gap >= 1e-8:
            failures.append(f"{item.name.split('(n=')[0]}[{run.steps}/{cap}]")
    passed = not failures
    record(
        "C2 power iteration within 50|A| steps",
        passed,
        f"{len(corpus) - len(failures)}/{len(corpus)} converged and matched (max gap {worst:.1e}); "
        f"not converged: {', '.join(failures) or 'none'}",
    )
    assert passed


def test_c3_p3_numbers(record):
    g = gr.decorate(gr.path_graph(3), 0, 2)
    mu = sp.limit_distribution(g)
    run = wk.converge_power(g, tol=1e-10)
    dyn = wk.vertex_distribution(g, run.limit)
    err = max(abs(mu.sum() - 1 / 6), float(np.max(np.abs(mu - 1 / 18))), float(np.max(np.abs(dyn - 1 / 18))))
    passed = run.converged and err < 1e-10
    record("C3 P3 survival 1/6, vertex 1/18", passed, f"max error {err:.1e} (<1e-10), power steps {run.steps}")
    assert passed


def test_c4_dimension_law(record):
    graphs = [item.graph for item in random_tree_cases(40, seed=7)]
    graphs += [gr.decorate(gr.cycle_graph(n), 0, n // 2) for n in (4, 6, 8, 12)]
    graphs += [ld.ladder_system(ld.LadderParams(*p)).graph for p in LADDER_GRID[::5]]
    mismatches = []
    for g in graphs:
        assert gr.is_bipartite(g.base)
        dim = sp.minus_one_eigenspace(g).shape[1]
        if dim != gr.betti_number(g.base) + 1:
            mismatches.append(dim)
    ladder_ok = all(
        sp.minus_one_eigenspace(ld.ladder_system(ld.LadderParams(*p)).graph).shape[1] == p[2] + 2
        for p in [(2, 1, 0), (2, 1, 1), (1, 3, 4), (4, 4, 5)]
    )
    passed = not mismatches and ladder_ok
    record("C4 nullity(U+I) = Betti+1", passed, f"{len(graphs)} bipartite graphs, {len(mismatches)} mismatches, ladders k+2: {ladder_ok}")
    assert passed


def test_c5_ladder_closed_form(record):
    worst = 0.0
    for params in LADDER_GRID:
        system = ld.ladder_system(ld.LadderParams(*params))
        spectral = np.abs(sp.navigation_vector(system.graph).vector)
        closed = np.abs(ld.closed_form_vector(system))
        worst = max(worst, float(np.max(np.abs(closed - spectral))))
    residual = ld.residual_norm_sq(ld.LadderParams(2, 1, 1))
    passed = worst < 1e-9 and abs(residual - 0.85) < 1e-12
    record(
        "C5 ladder closed form",
        passed,
        f"{len(LADDER_GRID)} ladders, max |phi| deviation {worst:.1e} (<1e-9), residual(2,1,1) = {residual:.15f}",
    )
    assert passed


def _spectral_rung_magnitudes(params):
    system = ld.ladder_system(params)
    phi = np.abs(sp.navigation_vector(system.graph).vector)
    left = np.array([phi[system.left_arcs(i)].mean() for i in range(params.k + 1)])
    top = np.array([phi[system.rail_arcs(i)[0]] for i in range(params.k + 1)])
    return left, top


def test_c6_monotonicity(record):
    seen = []

    @given(st.integers(1, 12), st.integers(1, 12), st.integers(1, 40))
    def closed_form_decreases(m, l, k):
        seen.append((m, l, k))
        assert ld.check_monotone(ld.LadderParams(m, l, k)) == (True, True)

    @given(st.sampled_from([p for p in LADDER_GRID if p[2] >= 1]))
    def spectral_decreases(params):
        p = ld.LadderParams(*params)
        left, top = _spectral_rung_magnitudes(p)
        assert np.all(left[:-1] > left[1:] + 1e-12)
        assert np.all(top[:-1] > top[1:] + 1e-12)

    try:
        closed_form_decreases()
        spectral_decreases()
        passed, detail = True, f"{len(seen)} closed-form cases plus spectral ladder grid, strict decrease"
    except AssertionError as exc:
        passed, detail = False, f"counterexample: {exc}"
    record("C6 monotone rung and rail amplitudes", passed, detail)
    assert passed


def test_c7_eigenvector_constructions(record):
    rng = random.Random(99)
    worst = 0.0
    for trial in range(50):
        if trial % 2 == 0:
            n = rng.randint(4, 40)
            tree = gr.make_random_tree(n, rng.randrange(2**31))
            s, t = rng.sample(range(n), 2)
            g = gr.decorate(tree, s, t, rng.choice(["start", "goal"]))
            xi = sp.path_eigenvector(g, gr.bfs_shortest_path(tree, s, t))
        else:
            half = rng.randint(2, 12)
            n = 2 * half
            base = gr.SymmetricDigraph.from_edges(
                n + 1, [(i, (i + 1) % n) for i in range(n)] + [(0, n)]
            )
            g = gr.decorate(base, n, half)
            shift = rng.randrange(n)
            walk = [(shift + j) % n for j in range(n)]
            if rng.random() < 0.5:
                walk.reverse()
            xi = sp.cycle_eigenvector(g, gr.walk_arcs(base, walk, closed=True))
        worst = max(worst, float(np.linalg.norm(wk.grover_step(g, xi) + xi)))
    passed = worst < 1e-12
    record("C7 path and even-cycle eigenvectors", passed, f"50 instances, max |U xi + xi| = {worst:.1e} (<1e-12)")
    assert passed


def test_c8_obstructions(record):
    start_nonempty = [
        item.name for item in default_corpus(0) if sp.unimodular_obstruction(item.graph).unimodular_obstructions
    ]
    g = hung_cycle_graph(9, "goal")
    report = sp.unimodular_obstruction(g)
    run = wk.converge_power(g, tol=1e-10)
    passed = not start_nonempty and bool(report.unimodular_obstructions) and not run.converged
    lams = ", ".join(f"{np.angle(lam) / np.pi:+.3f}pi" for lam, _ in report.unimodular_obstructions)
    record(
        "C8 obstruction behaviour",
        passed,
        f"sink-at-start non-empty: {len(start_nonempty)}; hung 9-cycle args [{lams}], power converged={run.converged}",
    )
    assert passed


def test_c9_numerical_hygiene(record):
    rng = np.random.default_rng(5)
    graphs = [item.graph for item in default_corpus(0)]
    worst_unit = worst_dense = 0.0
    dense = {}
    for trial in range(1000):
        idx = trial % len(graphs)
        g = graphs[idx]
        xi = rng.normal(size=g.arc_count) + 1j * rng.normal(size=g.arc_count)
        step = wk.grover_step(g, xi)
        worst_unit = max(worst_unit, abs(np.linalg.norm(step) / np.linalg.norm(xi) - 1))
        if idx not in dense:
            dense[idx] = wk.grover_matrix(g)
        worst_dense = max(worst_dense, float(np.max(np.abs(step - dense[idx] @ xi))))
    passed = worst_unit <= 1e-12 and worst_dense < 1e-13
    record(
        "C9 unitarity and sparse/dense agreement",
        passed,
        f"1000 states, |ratio-1| {worst_unit:.1e} (<=1e-12), dense gap {worst_dense:.1e} (<1e-13)",
    )
    assert passed
