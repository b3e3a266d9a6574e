#!/usr/bin/env python3
"""Drive the full CLI pipeline on the bundled dataset.

Writes every artifact (merged frame, stationarity diagnostics, criteria
table, model, causality report, impulse responses with figures) into an
output directory, using a fixed seed so repeated runs are byte-identical.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from sleepvar.cli import main as cli

REPO = Path(__file__).resolve().parent.parent


def run(*argv: str) -> None:
    code = cli(list(argv))
    if code != 0:
        sys.exit(f"pipeline step failed ({code}): {' '.join(argv)}")


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--data", type=Path, default=REPO / "data")
    parser.add_argument("--out", type=Path, default=REPO / "out")
    parser.add_argument("--seed", default="0")
    args = parser.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    out = args.out

    merged = out / "merged.csv"
    model = out / "model.json"
    run("ingest", "--oura", str(args.data / "sleep.csv"),
        "--emood", str(args.data / "mood.csv"), "-o", str(merged))
    run("describe", str(merged), "-o", str(out / "describe.txt"))
    run("adf", str(merged), "--column", "score", "-o", str(out / "adf_score.txt"))
    run("decompose", str(merged), "--column", "score",
        "-o", str(out / "decomposition.csv"), "--svg", str(out / "decomposition.svg"))
    run("pacf", str(merged), "--column", "score",
        "-o", str(out / "pacf.csv"), "--svg", str(out / "pacf.svg"))
    run("select-order", str(merged), "--maxlags", "15",
        "-o", str(out / "order_selection.txt"))
    run("fit", str(merged), "--lags", "2", "-o", str(model))
    run("granger", str(model), "--causing", "score", "-o", str(out / "granger.txt"))
    run("irf", str(model), "--seed", args.seed,
        "-o", str(out / "irf.csv"), "--svg", str(out / "irf.svg"))
    print(f"pipeline artifacts in {out}")


if __name__ == "__main__":
    main()
