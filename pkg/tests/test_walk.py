import numpy as np
import pytest
from hypothesis import given
from hypothesis.strategies import integers

from sinkwalk import graph as gr
from sinkwalk import spectral as sp
from sinkwalk import walk as wk
from sinkwalk.verify import hung_cycle_graph, ladder_case

from .strategies import decorated_graphs, decorated_trees


def random_state(g, seed):
    rng = np.random.default_rng(seed)
    return rng.normal(size=g.arc_count) + 1j * rng.normal(size=g.arc_count)


def test_initial_state(p3):
    z = wk.initial_state(p3)
    assert z[p3.self_loop_s] == 1.0
    assert np.linalg.norm(z) == 1.0
    assert z[p3.sink_arc_rev] == 0.0


def test_grover_step_by_hand(p3):
    # deg(s) = 3 (loop, edge, sink arc); only the start loop is occupied
    out = wk.grover_step(p3, wk.initial_state(p3))
    assert out[p3.self_loop_s] == pytest.approx(-1 / 3, abs=1e-15)
    assert out[p3.sink_arc] == pytest.approx(2 / 3, abs=1e-15)
    assert out[p3.base.arc_between(0, 1)] == pytest.approx(2 / 3, abs=1e-15)
    assert np.count_nonzero(out) == 3


def test_grover_step_dimension_mismatch(p3):
    with pytest.raises(ValueError):
        wk.grover_step(p3, np.zeros(5))


def test_path_and_cycle_vectors_are_minus_one_eigenvectors(p3):
    xi = sp.path_eigenvector(p3, gr.bfs_shortest_path(p3.base, 0, 2))
    assert np.allclose(wk.grover_step(p3, xi), -xi, atol=1e-15)
    c = gr.decorate(gr.cycle_graph(4), 0, 2)
    gamma = sp.cycle_eigenvector(c, gr.walk_arcs(c.base, [0, 1, 2, 3], closed=True))
    assert np.allclose(wk.grover_step(c, gamma), -gamma, atol=1e-15)


def test_project_sink():
    g = gr.decorate(gr.path_graph(3), 0, 2)
    xi = np.arange(g.arc_count, dtype=complex) + 1
    xi[g.sink_arc] = 0.5
    out = wk.project_sink(g, xi)
    assert out[g.sink_arc] == 0 and out[g.sink_arc_rev] == 0
    keep = [a for a in range(g.arc_count) if a not in (g.sink_arc, g.sink_arc_rev)]
    assert np.array_equal(out[keep], xi[keep])
    assert np.array_equal(wk.project_sink(g, out), out)
    assert np.linalg.norm(out) <= np.linalg.norm(xi)


def test_iterate_zero_and_one(p3):
    z = wk.initial_state(p3)
    assert np.array_equal(wk.iterate(p3, z, 0), z)
    one = wk.iterate(p3, z, 1)
    expected = np.zeros(p3.arc_count)
    expected[p3.self_loop_s] = -1 / 3
    expected[p3.base.arc_between(0, 1)] = 2 / 3
    assert np.allclose(one, expected, atol=1e-15)


@given(decorated_graphs(), integers(0, 2**32 - 1))
def test_unitarity_and_contraction(g, seed):
    xi = random_state(g, seed)
    step = wk.grover_step(g, xi)
    assert abs(np.linalg.norm(step) / np.linalg.norm(xi) - 1) < 1e-12
    assert np.linalg.norm(wk.truncated_step(g, xi)) <= np.linalg.norm(xi) * (1 + 1e-14)


@given(decorated_graphs(), integers(0, 2**32 - 1))
def test_sparse_matches_dense(g, seed):
    xi = random_state(g, seed)
    assert np.max(np.abs(wk.grover_step(g, xi) - wk.grover_matrix(g) @ xi)) < 1e-13


@given(decorated_graphs())
def test_dense_matrix_is_orthogonal(g):
    u = wk.grover_matrix(g)
    assert np.allclose(u.T @ u, np.eye(g.arc_count), atol=1e-12)


@given(decorated_graphs(max_n=8))
def test_real_input_gives_real_output(g):
    xi = np.random.default_rng(0).normal(size=g.arc_count)
    out = wk.grover_step(g, xi)
    assert out.dtype.kind == "f"


@given(decorated_graphs(max_n=8))
def test_sink_arcs_of_eigenvectors(g):
    u = wk.grover_matrix(g)
    evals, evecs = np.linalg.eig(u)
    gap = np.abs(evecs[g.sink_arc] - evals * evecs[g.sink_arc_rev])
    assert gap.max() < 1e-10


@given(decorated_trees(max_n=15))
def test_norm_is_monotone(g):
    xi = wk.initial_state(g)
    norms = []
    for _ in range(60):
        norms.append(np.linalg.norm(xi))
        xi = wk.truncated_step(g, xi)
    assert all(b <= a + 1e-14 for a, b in zip(norms, norms[1:]))


def test_finding_probability(p3):
    z = wk.initial_state(p3)
    assert wk.finding_probability(p3, z, 0) == 1.0
    assert wk.finding_probability(p3, z, 1) == 0.0
    with pytest.raises(ValueError):
        wk.finding_probability(p3, z, p3.sink_vertex)


@given(decorated_graphs(), integers(0, 2**32 - 1))
def test_finding_probability_bounded(g, seed):
    xi = random_state(g, seed)
    mu = [wk.finding_probability(g, xi, v) for v in range(g.base.vertex_count)]
    assert min(mu) >= 0
    assert sum(mu) <= np.linalg.norm(xi) ** 2 + 1e-12
    assert np.allclose(mu, wk.vertex_distribution(g, xi))


def test_p3_power_iteration_limit(p3):
    # brute force: 10^4 steps of the truncated walk, sign-corrected
    xi = wk.iterate(p3, wk.initial_state(p3), 10_000)
    assert np.allclose(wk.vertex_distribution(p3, xi), 1 / 18, atol=1e-12)
    run = wk.converge_power(p3)
    assert run.converged
    assert np.allclose(wk.vertex_distribution(p3, run.limit), 1 / 18, atol=1e-10)


def test_tree_limit_is_start_amplitude_times_navigation():
    g = gr.decorate(gr.make_random_tree(6, 2), 0, 5)
    run = wk.converge_power(g, max_steps=400_000)
    nav = sp.navigation_vector(g)
    assert run.converged
    assert np.allclose(run.limit, nav.start_amplitude * nav.vector, atol=1e-8)


def test_ladder_limit_matches_spectral():
    g = ladder_case(2, 1, 1).graph
    run = wk.converge_power(g, tol=1e-10, max_steps=200_000)
    nav = sp.navigation_vector(g)
    assert run.converged
    assert np.max(np.abs(run.limit - nav.start_amplitude * nav.vector)) < 1e-8


def test_ladder_exceeds_default_step_cap():
    # the slowest surviving mode of ladder (2,1,1) has modulus ~0.99952
    run = wk.converge_power(ladder_case(2, 1, 1).graph)
    assert not run.converged and run.steps == 50 * 28


def test_sink_at_goal_obstruction_never_converges():
    g = hung_cycle_graph(9, "goal")
    run = wk.converge_power(g, max_steps=20_000)
    assert not run.converged
    assert run.residual > 1e-3


def test_converge_power_rejects_bad_tol(p3):
    with pytest.raises(ValueError):
        wk.converge_power(p3, tol=0)
