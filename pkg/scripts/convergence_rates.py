"""Steps the sign-corrected truncated walk needs to settle, against the 50|A| default cap.

Also prints the slowest surviving mode of PU (largest non-unit eigenvalue modulus),
which sets the geometric rate.
"""

from __future__ import annotations

import argparse

import numpy as np

from sinkwalk import walk as wk
from sinkwalk.verify import default_corpus


def slowest_mode(g) -> float:
    evals = np.abs(np.linalg.eigvals(wk.sink_projector(g) @ wk.grover_matrix(g)))
    inside = evals[evals < 1 - 1e-8]
    return float(inside.max()) if inside.size else 0.0


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--tol", type=float, default=1e-10)
    parser.add_argument("--hard-cap", type=int, default=200_000)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    print(f"{'graph':<28s} {'|A|':>5s} {'cap':>6s} {'steps':>8s} {'rho':>10s} {'predicted':>10s}")
    for item in default_corpus(args.seed):
        g = item.graph
        cap = 50 * g.arc_count
        rho = slowest_mode(g)
        run = wk.converge_power(g, tol=args.tol, max_steps=args.hard_cap)
        steps = str(run.steps) if run.converged else f">{args.hard_cap}"
        # residual ~ rho^n, so n ~ log(tol) / log(rho)
        predicted = np.log(args.tol) / np.log(rho) if 0 < rho < 1 else 0.0
        print(f"{item.name[:28]:<28s} {g.arc_count:>5d} {cap:>6d} {steps:>8s} {rho:>10.6f} {predicted:>10.0f}")


if __name__ == "__main__":
    main()
