#!/usr/bin/env python3
"""Run the full verify -> positivize -> re-verify -> correspondence pipeline
on the ring and bounded-lattice fixtures and print the text reports."""
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from factorlab.cli import main

ROOT = Path(__file__).resolve().parent.parent / "fixtures"

RUNS = [
    ("rings", ROOT / "rings.ctx", ROOT / "formulas" / "ring_mixed.fm"),
    ("bounded lattices", ROOT / "lattices.ctx",
     ROOT / "formulas" / "lattice_mixed.fm"),
]

if __name__ == "__main__":
    worst = 0
    for label, ctx, formula in RUNS:
        print(f"== {label} ==")
        code = main(["pipeline", str(ctx), str(formula)])
        print()
        worst = max(worst, code)
    sys.exit(worst)
