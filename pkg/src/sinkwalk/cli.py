"""Command-line entry point: ``sinkwalk solve | spectrum | verify``."""

from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import graph as gr
from . import ladder as ld
from . import spectral as sp
from . import walk as wk

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_INPUT = 2
EXIT_NONCONVERGED = 3


@dataclass(frozen=True)
class RunConfig:
    input: str | None = None
    ladder: tuple[int, int, int] | None = None
    tree: tuple[int, int] | None = None
    method: str = "spectral"
    sink: str = "start"
    tol: float = 1e-10
    max_steps: int | None = None
    threshold: float = 0.5
    format: str = "json"
    seed: int = 0

    def __post_init__(self) -> None:
        if self.tol <= 0:
            raise ValueError("tolerance must be positive")
        if not 0 < self.threshold < 1:
            raise ValueError("threshold must lie in (0, 1)")
        if self.method not in ("power", "spectral", "both"):
            raise ValueError(f"unknown method {self.method!r}")
        if self.format not in ("json", "text", "pgm"):
            raise ValueError(f"unknown format {self.format!r}")


def _num(x: float) -> float:
    # 14 significant digits keeps reports stable against last-ulp LAPACK noise
    return float(f"{x:.14g}")


def load_input(cfg: RunConfig) -> tuple[gr.SymmetricDigraph, int, int]:
    sources = [cfg.input is not None, cfg.ladder is not None, cfg.tree is not None]
    if sum(sources) != 1:
        raise gr.GraphError("give exactly one of --input, --ladder, --tree")
    if cfg.input is not None:
        try:
            text = Path(cfg.input).read_text()
        except OSError as exc:
            raise gr.GraphError(str(exc)) from exc
        return gr.load_maze(text)
    if cfg.ladder is not None:
        return gr.make_ladder(*cfg.ladder)
    n, seed = cfg.tree
    tree = gr.make_random_tree(n, seed)
    s, g = random.Random(seed).sample(range(n), 2)
    return tree, s, g


def _obstruction_list(report: sp.SpectralReport) -> list[dict]:
    return [
        {"eigenvalue": [_num(lam.real), _num(lam.imag)], "overlap": _num(ov)}
        for lam, ov in report.unimodular_obstructions
    ]


def solve(cfg: RunConfig) -> tuple[int, dict]:
    base, s, goal = load_input(cfg)
    g = gr.decorate(base, s, goal, cfg.sink)
    diagnostics: dict = {"bipartite": g.bipartite, "sink": cfg.sink}
    if not g.bipartite:
        diagnostics["warning"] = "underlying graph has an odd cycle; route localisation is not guaranteed"
    status = EXIT_OK

    spectral_mu = power_mu = None
    if cfg.method in ("spectral", "both"):
        basis = sp.minus_one_eigenspace(g)
        nav = sp.navigation_vector(g, basis)
        spectral_mu = sp.limit_distribution(g, nav)
        diagnostics["minus_one_dim"] = basis.shape[1]
        diagnostics["start_amplitude"] = _num(nav.start_amplitude)
        path_source = nav.vector
    if cfg.method in ("power", "both"):
        run = wk.converge_power(g, cfg.tol, cfg.max_steps)
        power_mu = wk.vertex_distribution(g, run.limit)
        diagnostics.update(steps=run.steps, converged=run.converged, residual=_num(run.residual))
        if not run.converged:
            status = EXIT_NONCONVERGED
        if spectral_mu is None:
            path_source = run.limit
    if cfg.method == "both":
        diagnostics["max_deviation"] = _num(float(np.max(np.abs(spectral_mu - power_mu))))

    if cfg.sink == "goal" or status == EXIT_NONCONVERGED:
        report = sp.unimodular_obstruction(g)
        diagnostics["obstructions"] = _obstruction_list(report)
        if report.unimodular_obstructions:
            status = EXIT_NONCONVERGED

    if cfg.ladder is not None:
        closed = ld.navigation_closed_form(ld.LadderParams(*cfg.ladder))
        left_ok, top_ok = ld.check_monotone(closed.params)
        diagnostics["ladder"] = {
            "left": [_num(v) for v in closed.left_magnitudes()],
            "top": [_num(v) for v in closed.top_magnitudes()],
            "left_decreasing": left_ok,
            "top_decreasing": top_ok,
        }

    mu = spectral_mu if spectral_mu is not None else power_mu
    try:
        path = sp.extract_path(g, path_source, cfg.threshold).vertices
        if not path:
            diagnostics["path_threshold_max"] = _num(sp.connecting_threshold(g, path_source))
    except sp.SpectralError:
        path = []
    report = {
        "vertices": list(range(base.vertex_count)),
        "limit_probability": [_num(x) for x in mu],
        "path": path,
        "survival": _num(float(mu.sum())),
        "method": cfg.method,
        "diagnostics": diagnostics,
    }
    if base.cells is not None:
        report["cells"] = [list(c) for c in base.cells]
        report["shape"] = list(base.shape)
    return status, report


def spectrum(cfg: RunConfig) -> tuple[int, dict]:
    base, s, goal = load_input(cfg)
    g = gr.decorate(base, s, goal, cfg.sink)
    report = sp.unimodular_obstruction(g)
    return EXIT_OK, {
        "minus_one_dim": report.minus_one_dim,
        "betti": gr.betti_number(base),
        "bipartite": g.bipartite,
        "sink": cfg.sink,
        "obstructions": _obstruction_list(report),
    }


def heatmap_pgm(report: dict) -> str:
    """Plain P2 image, one pixel per grid cell, walls black, max probability white."""
    if "cells" not in report:
        raise gr.GraphError("PGM output needs a grid maze input")
    height, width = report["shape"]
    pixels = np.zeros((height, width), dtype=int)
    mu = np.asarray(report["limit_probability"])
    top = mu.max()
    scaled = np.rint(255 * mu / top).astype(int) if top > 0 else np.zeros_like(mu, dtype=int)
    for (r, c), val in zip(report["cells"], scaled):
        pixels[r, c] = val
    rows = [" ".join(str(p) for p in row) for row in pixels]
    return "\n".join(["P2", f"{width} {height}", "255", *rows]) + "\n"


def format_text(report: dict) -> str:
    if "checks" in report:
        lines = [f"{'PASS' if r['passed'] else 'FAIL'}  {name:<28s} {r['detail']}" for name, r in report["checks"].items()]
        lines.append(f"seed {report['seed']}: {'all checks passed' if report['passed'] else 'FAILED'}")
        return "\n".join(lines) + "\n"
    lines = []
    if "limit_probability" in report:
        lines.append(f"method    {report['method']}")
        lines.append(f"survival  {report['survival']:.12g}")
        lines.append(f"path      {' '.join(map(str, report['path'])) or '(none)'}")
        for v, p in zip(report["vertices"], report["limit_probability"]):
            lines.append(f"  vertex {v:4d}  {p:.12g}")
    for key, val in report.get("diagnostics", report).items():
        if key == "ladder":
            lines.append("  i   |phi| left rung   |phi| rail")
            for i, (a, b) in enumerate(zip(val["left"], val["top"])):
                lines.append(f"  {i:<3d} {a:<17.10g} {b:.10g}")
            lines.append(f"  decreasing: left={val['left_decreasing']} rail={val['top_decreasing']}")
        elif key not in ("vertices", "limit_probability", "path", "survival", "method"):
            lines.append(f"{key}: {val}")
    return "\n".join(lines) + "\n"


def render(report: dict, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, indent=2) + "\n"
    if fmt == "text":
        return format_text(report)
    return heatmap_pgm(report)


def _triple(text: str) -> tuple[int, int, int]:
    m, l, k = (int(p) for p in text.split(","))
    return m, l, k


def _pair(text: str) -> tuple[int, int]:
    n, seed = (int(p) for p in text.split(","))
    return n, seed


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sinkwalk", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    src = common.add_mutually_exclusive_group()
    src.add_argument("--input", metavar="FILE", help="ASCII grid maze or JSON edge list")
    src.add_argument("--ladder", type=_triple, metavar="M,L,K")
    src.add_argument("--tree", type=_pair, metavar="N,SEED")
    common.add_argument("--method", choices=["power", "spectral", "both"], default="spectral")
    common.add_argument("--sink", choices=["start", "goal"], default="start")
    common.add_argument("--tol", type=float, default=1e-10)
    common.add_argument("--max-steps", type=int, default=None, help="default 50 * |A|")
    common.add_argument("--threshold", type=float, default=0.5)
    common.add_argument("--format", choices=["json", "text", "pgm"], default="json")
    common.add_argument("--seed", type=int, default=0)

    sub.add_parser("solve", parents=[common], help="limit distribution and extracted route")
    sub.add_parser("spectrum", parents=[common], help="-1 eigenspace dimension and obstructions")
    sub.add_parser("verify", parents=[common], help="run the invariant suite on generated corpora")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        cfg = RunConfig(
            input=args.input,
            ladder=args.ladder,
            tree=args.tree,
            method=args.method,
            sink=args.sink,
            tol=args.tol,
            max_steps=args.max_steps,
            threshold=args.threshold,
            format=args.format,
            seed=args.seed,
        )
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT

    if args.command == "verify":
        from .verify import run_verify

        status, report = run_verify(cfg)
        sys.stdout.write(render(report, "text" if cfg.format == "text" else "json"))
        return status

    handler = solve if args.command == "solve" else spectrum
    try:
        status, report = handler(cfg)
        out = render(report, cfg.format)
    except (gr.GraphError, sp.SpectralError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    sys.stdout.write(out)
    return status


if __name__ == "__main__":
    sys.exit(main())
