"""Closed-form rung and rail amplitudes on a ladder, next to the spectral values."""

from __future__ import annotations

import argparse

import numpy as np

from sinkwalk import ladder as ld
from sinkwalk import spectral as sp


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("m", type=int)
    parser.add_argument("l", type=int)
    parser.add_argument("k", type=int)
    args = parser.parse_args()

    params = ld.LadderParams(args.m, args.l, args.k)
    system = ld.ladder_system(params)
    closed = ld.navigation_closed_form(params)
    phi = np.abs(sp.navigation_vector(system.graph).vector)
    print(f"kappa = {params.kappa:.6f}, residual norm^2 = {ld.residual_norm_sq(params):.12f}")
    print(f"{'i':>3s} {'rung (closed)':>14s} {'rung (spectral)':>14s} {'rail (closed)':>14s} {'rail (spectral)':>16s}")
    for i in range(params.k + 1):
        rung = phi[system.left_arcs(i)[0]]
        rail = phi[system.rail_arcs(i)[0]]
        print(f"{i:>3d} {abs(closed.left[i]):>14.10f} {rung:>14.10f} {abs(closed.top[i]):>14.10f} {rail:>14.10f}")
    left_ok, top_ok = ld.check_monotone(params)
    print(f"strictly decreasing: rungs={left_ok} rails={top_ok}")


if __name__ == "__main__":
    main()
