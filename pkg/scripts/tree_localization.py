"""Limit distribution on random trees: mass sits on the BFS route, uniformly."""

from __future__ import annotations

import argparse

import numpy as np

from sinkwalk import graph as gr
from sinkwalk import spectral as sp
from sinkwalk.verify import random_tree_cases


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--count", type=int, default=20)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    print(f"{'tree':<26s} {'route':>5s} {'survival':>10s} {'1/(2L+2)':>10s} {'spread':>9s} {'off':>9s}")
    for item in random_tree_cases(args.count, args.seed):
        g = item.graph
        mu = sp.limit_distribution(g)
        route = gr.path_vertices(g.base, g.start, gr.bfs_shortest_path(g.base, g.start, g.goal))
        on = np.array(route)
        off = np.setdiff1d(np.arange(g.base.vertex_count), on)
        length = len(route) - 1
        print(
            f"{item.name:<26s} {length:>5d} {mu.sum():>10.6f} {1 / (2 * length + 2):>10.6f} "
            f"{np.ptp(mu[on]):>9.1e} {np.max(mu[off], initial=0.0):>9.1e}"
        )


if __name__ == "__main__":
    main()
