"""Command-line interface: graph families, walk simulation, CSV/JSON emission,
characteristic polynomials, gauges, and zero-transfer certificates.

All outputs are deterministic for a fixed command line.  Probability CSVs use
the header t,p_0,...,p_{n-1} with 17-significant-digit values and LF endings.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import re
import sys

import numpy as np

from . import gain_graph, gauge, spectral
from .evolution import distribution_at, eigendecompose, time_series, TimeSeries
from .hamiltonian import adjacency_matrix, excitation_block, excitation_masks, lift_full
from .spectral import charpoly, zero_transfer_certificate

SCHEMA_VERSION = "1"

_PI_EXPR = re.compile(
    r"^\s*([+-]?)(\d+(?:\.\d*)?|\.\d+)?\s*pi\s*(?:/\s*(\d+)\s*)?$", re.IGNORECASE
)


def parse_pi_expr(text: str) -> float:
    """Radians from '<float>' or '<float?>pi(/<int>)?'; pi-forms stay symbolic.

    No range reduction: '10pi' really is 10*pi (useful for times).
    """
    match = _PI_EXPR.match(text)
    if match:
        sign, coef, div = match.groups()
        value = (float(coef) if coef else 1.0) * math.pi
        if div:
            if int(div) == 0:
                raise ValueError(f"division by zero in angle expression {text!r}")
            value /= int(div)
        return -value if sign == "-" else value
    try:
        return float(text)
    except ValueError:
        raise ValueError(f"invalid angle expression {text!r}") from None


def parse_alpha_expr(text: str) -> float:
    """Arc phase in canonical [0, 2*pi) radians ('2pi' collapses to 0)."""
    return gain_graph.canonical_phase(parse_pi_expr(text))


def _load_graph(path: str) -> gain_graph.GainGraph:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ValueError(f"cannot read graph file {path}: {exc}") from exc
    return gain_graph.parse_graph(text)


def _write_text(path: str | None, text: str) -> None:
    if path is None:
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)


def _json_dump(payload: dict) -> str:
    return json.dumps(payload, indent=2) + "\n"


def _timeseries_csv(series: TimeSeries) -> str:
    n = series.n_vertices
    lines = ["t," + ",".join(f"p_{j}" for j in range(n))]
    for t, row in zip(series.t_grid, series.probabilities):
        lines.append(f"{t:.17g}," + ",".join(f"{p:.17g}" for p in row))
    return "\n".join(lines) + "\n"


def _slug(expr: str) -> str:
    return (
        expr.strip()
        .replace("/", "_over_")
        .replace(".", "p")
        .replace("+", "")
        .replace("-", "neg")
        .replace(" ", "")
    )


def _build_family(args) -> gain_graph.GainGraph:
    if args.kind == "cycle":
        if args.weighted_arcs is None:
            raise ValueError("cycle family requires --weighted-arcs")
        return gain_graph.cycle_family(args.n, args.weighted_arcs, parse_alpha_expr(args.alpha))
    if args.kind == "complete":
        return gain_graph.complete_family(args.n, parse_alpha_expr(args.alpha))
    if args.kind == "tree":
        return gain_graph.random_tree(args.n, args.seed, args.phase_mode)
    raise ValueError(f"unknown family kind {args.kind!r}")


def cmd_family(args) -> int:
    g = _build_family(args)
    _write_text(args.out, gain_graph.graph_to_json(g))
    return 0


def cmd_simulate(args) -> int:
    g = _load_graph(args.graph)
    spec = eigendecompose(adjacency_matrix(g))
    t_max = parse_pi_expr(args.t_max)
    if args.steps < 1:
        raise ValueError(f"--steps must be at least 1, got {args.steps}")
    series = time_series(spec, args.source, t_max, args.steps + 1)
    _write_text(args.out, _timeseries_csv(series))
    return 0


def cmd_distribution(args) -> int:
    g = _load_graph(args.graph)
    spec = eigendecompose(adjacency_matrix(g))
    t = parse_pi_expr(args.t)
    probs = distribution_at(spec, args.source, t)
    series = TimeSeries(args.source, np.array([t]), probs[None, :])
    series.validate()
    _write_text(args.out, _timeseries_csv(series))
    return 0


def cmd_charpoly(args) -> int:
    g = _load_graph(args.graph)
    poly = charpoly(adjacency_matrix(g))
    payload = {
        "schema": SCHEMA_VERSION,
        "command": "charpoly",
        "n": g.n_vertices,
        "coefficients": [float(c) for c in poly.coefficients],
    }
    _write_text(args.out, _json_dump(payload))
    return 0


def cmd_zero_transfer(args) -> int:
    g = _load_graph(args.graph)
    matrix = adjacency_matrix(g)
    spec = eigendecompose(matrix)
    cert = zero_transfer_certificate(spec, matrix, args.source, args.target, args.threshold)
    payload = {
        "schema": SCHEMA_VERSION,
        "command": "zero-transfer",
        "source": cert.source,
        "target": cert.target,
        "threshold": cert.threshold,
        "max_idempotent_entry": cert.max_idempotent_entry,
        "krylov_max": cert.krylov_max,
        "verdict": cert.verdict,
    }
    _write_text(args.out, _json_dump(payload))
    return 0


def cmd_gauge(args) -> int:
    g = _load_graph(args.graph)
    diag = gauge.tree_gauge(g)
    conjugated = diag.conjugate(adjacency_matrix(g))
    plain = adjacency_matrix(gain_graph.underlying_undirected(g))
    deviation = float(np.max(np.abs(conjugated.entries - plain.entries)))
    payload = {
        "schema": SCHEMA_VERSION,
        "command": "gauge",
        "n": g.n_vertices,
        "diagonal": [[float(z.real), float(z.imag)] for z in diag.phases],
        "max_conjugation_deviation": deviation,
    }
    _write_text(args.out, _json_dump(payload))
    return 0


def cmd_lift_check(args) -> int:
    g = _load_graph(args.graph)
    matrix = adjacency_matrix(g)
    lifted = lift_full(matrix)
    block = excitation_block(lifted, 1)
    block_dev = float(np.max(np.abs(block.entries - matrix.entries)))
    cross_sector_ok = all(r.bit_count() == c.bit_count() for r, c in lifted.entries)
    dims = [len(excitation_masks(lifted.n_qubits, k)) for k in range(lifted.n_qubits + 1)]
    ok = cross_sector_ok and block_dev <= 1e-12
    payload = {
        "schema": SCHEMA_VERSION,
        "command": "lift-check",
        "n": g.n_vertices,
        "block_deviation": block_dev,
        "sector_dims": dims,
        "cross_sector_ok": cross_sector_ok,
        "ok": ok,
    }
    _write_text(args.out, _json_dump(payload))
    if not ok:
        print(f"error: lift check failed (block deviation {block_dev:.3e})", file=sys.stderr)
        return 1
    return 0


def cmd_sweep(args) -> int:
    alphas = [expr for expr in args.alphas.split(",") if expr.strip()]
    if not alphas:
        raise ValueError("--alphas must list at least one angle expression")
    if args.steps < 1:
        raise ValueError(f"--steps must be at least 1, got {args.steps}")
    t_max = parse_pi_expr(args.t_max)
    os.makedirs(args.out_dir, exist_ok=True)
    written = []
    for expr in alphas:
        alpha = parse_alpha_expr(expr)
        if args.family == "cycle":
            if args.weighted_arcs is None:
                raise ValueError("cycle sweep requires --weighted-arcs")
            g = gain_graph.cycle_family(args.n, args.weighted_arcs, alpha)
        elif args.family == "complete":
            g = gain_graph.complete_family(args.n, alpha)
        else:
            raise ValueError(f"unknown sweep family {args.family!r}")
        if args.target is not None and not 0 <= args.target < g.n_vertices:
            raise ValueError(f"target {args.target} out of range for {g.n_vertices} vertices")
        spec = eigendecompose(adjacency_matrix(g))
        series = time_series(spec, args.source, t_max, args.steps + 1)
        name = f"sweep_{args.family}_n{args.n}_s{args.source}"
        if args.target is not None:
            name += f"_t{args.target}"
        name += f"_alpha_{_slug(expr)}.csv"
        path = os.path.join(args.out_dir, name)
        _write_text(path, _timeseries_csv(series))
        written.append(path)
    sys.stdout.write("\n".join(written) + "\n")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gainwalk",
        description="Continuous-time quantum walks on complex unit gain graphs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("family", help="write a standard graph family to a JSON file")
    p.add_argument("kind", choices=["cycle", "complete", "tree"])
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--alpha", default="0", help="arc phase, e.g. pi/8 or 0.25")
    p.add_argument("--weighted-arcs", type=int, default=None)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--phase-mode", choices=["zero", "uniform"], default="zero")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("simulate", help="sample site probabilities over a time grid")
    p.add_argument("--graph", required=True)
    p.add_argument("--source", type=int, required=True)
    p.add_argument("--t-max", required=True, help="final time, e.g. 31.4159 or 10pi")
    p.add_argument("--steps", type=int, required=True, help="number of time steps (rows = steps + 1)")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("distribution", help="site distribution at a single time")
    p.add_argument("--graph", required=True)
    p.add_argument("--source", type=int, required=True)
    p.add_argument("--t", required=True, help="time, e.g. 10pi")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_distribution)

    p = sub.add_parser("charpoly", help="characteristic polynomial coefficients as JSON")
    p.add_argument("--graph", required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_charpoly)

    p = sub.add_parser("zero-transfer", help="certify zero transfer between two vertices")
    p.add_argument("--graph", required=True)
    p.add_argument("--source", type=int, required=True)
    p.add_argument("--target", type=int, required=True)
    p.add_argument("--threshold", type=float, default=spectral.DEFAULT_ZERO_TRANSFER_THRESHOLD)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_zero_transfer)

    p = sub.add_parser("gauge", help="diagonal gauge of a forest as JSON")
    p.add_argument("--graph", required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_gauge)

    p = sub.add_parser("lift-check", help="verify the qubit lift against its 1-excitation block")
    p.add_argument("--graph", required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_lift_check)

    p = sub.add_parser("sweep", help="one probability CSV per alpha for a graph family")
    p.add_argument("--family", choices=["cycle", "complete"], required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--alphas", required=True, help="comma-separated angle expressions")
    p.add_argument("--weighted-arcs", type=int, default=None)
    p.add_argument("--source", type=int, required=True)
    p.add_argument("--target", type=int, default=None, help="recorded in output file names")
    p.add_argument("--t-max", required=True)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--out-dir", required=True)
    p.set_defaults(func=cmd_sweep)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
