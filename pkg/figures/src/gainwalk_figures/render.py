"""Render static figures from walk probability CSV files.

Input files follow the simulator's schema: header t,p_0,...,p_{n-1}, one row
per sampled time.  Three figure kinds are supported:

  curves       one probability-vs-time curve per input file (fixed target)
  sweep        same layout, used for parameter sweeps such as phase scans
  distribution site distribution (probability vs vertex) from each file's
               final row

Rendering is read-only and deterministic: it never touches the inputs and the
same inputs always produce the same axes content.
"""

from __future__ import annotations

import argparse
import csv
import os
import sys
from dataclasses import dataclass

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

KINDS = ("curves", "distribution", "sweep")


def read_probability_csv(path: str) -> tuple[list[str], np.ndarray]:
    """Read one CSV, returning (header, rows); every error names the file."""
    if not os.path.exists(path):
        raise ValueError(f"{path}: file does not exist")
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise ValueError(f"{path}: empty CSV") from None
        if len(header) < 2 or header[0] != "t" or any(
            col != f"p_{j}" for j, col in enumerate(header[1:])
        ):
            raise ValueError(f"{path}: header must be t,p_0,...,p_(n-1)")
        rows = []
        for lineno, row in enumerate(reader, start=2):
            if len(row) != len(header):
                raise ValueError(f"{path}: ragged row at line {lineno}")
            try:
                rows.append([float(x) for x in row])
            except ValueError:
                raise ValueError(f"{path}: non-numeric value at line {lineno}") from None
    if not rows:
        raise ValueError(f"{path}: no data rows")
    return header, np.array(rows)


@dataclass(frozen=True)
class FigureSpec:
    """What to draw: input CSVs, the figure kind, output image path, labels."""

    inputs: tuple[str, ...]
    kind: str
    out_path: str
    labels: tuple[str, ...] | None = None
    target: int = 1
    title: str | None = None

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown figure kind {self.kind!r}; expected one of {KINDS}")
        if not self.inputs:
            raise ValueError("at least one input CSV is required")
        if self.labels is not None and len(self.labels) != len(self.inputs):
            raise ValueError(
                f"{len(self.labels)} labels for {len(self.inputs)} inputs"
            )


def _label_for(spec: FigureSpec, index: int) -> str:
    if spec.labels is not None:
        return spec.labels[index]
    stem = os.path.basename(spec.inputs[index])
    return stem[:-4] if stem.endswith(".csv") else stem


def render(spec: FigureSpec) -> str:
    """Draw the figure and write the image file; returns the output path."""
    datasets = []
    schema = None
    for path in spec.inputs:
        header, rows = read_probability_csv(path)
        if schema is None:
            schema = header
        elif header != schema:
            raise ValueError(
                f"{path}: header does not match {spec.inputs[0]} "
                "(all inputs must share one schema)"
            )
        datasets.append(rows)
    n_vertices = len(schema) - 1

    fig, ax = plt.subplots(figsize=(8.0, 5.0))
    if spec.kind in ("curves", "sweep"):
        if not 0 <= spec.target < n_vertices:
            raise ValueError(f"target vertex {spec.target} out of range for {n_vertices} columns")
        for i, rows in enumerate(datasets):
            ax.plot(rows[:, 0], rows[:, 1 + spec.target], label=_label_for(spec, i), lw=1.2)
        ax.set_xlabel("t")
        ax.set_ylabel("probability")
        default_title = f"transfer probability to vertex {spec.target}"
    else:
        vertices = np.arange(n_vertices)
        for i, rows in enumerate(datasets):
            ax.plot(vertices, rows[-1, 1:], marker="o", ms=3, label=_label_for(spec, i), lw=1.0)
        ax.set_xlabel("vertex")
        ax.set_ylabel("probability")
        default_title = "site distribution"
    ax.set_title(spec.title if spec.title is not None else default_title)
    ax.legend(fontsize=8)
    ax.grid(True, alpha=0.3)
    fig.tight_layout()
    fig.savefig(spec.out_path)
    plt.close(fig)
    return spec.out_path


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="gainwalk-figures",
        description="Render static plots from gainwalk probability CSVs.",
    )
    parser.add_argument("--in", dest="inputs", action="extend", nargs="+", required=True,
                        help="input CSV (repeatable; accepts several paths per flag)")
    parser.add_argument("--kind", choices=KINDS, required=True)
    parser.add_argument("--out", required=True, help="output image path (.png/.svg/...)")
    parser.add_argument("--label", dest="labels", action="append",
                        help="curve label, one per --in")
    parser.add_argument("--target", type=int, default=1,
                        help="probability column p_<target> for curves/sweep plots")
    parser.add_argument("--title", default=None)
    args = parser.parse_args(argv)
    try:
        spec = FigureSpec(
            inputs=tuple(args.inputs),
            kind=args.kind,
            out_path=args.out,
            labels=tuple(args.labels) if args.labels else None,
            target=args.target,
            title=args.title,
        )
        render(spec)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
