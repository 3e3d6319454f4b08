#!/usr/bin/env python3
"""Regenerate the fixtures/ corpus from the builders in factorlab.fixtures."""
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from factorlab import fileio
from factorlab.fixtures import (
    boolean_context,
    corpus,
    lattice_context,
    ring_context,
)

FORMULAS = {
    "ring_dfc.fm": (
        "# central-idempotent equation for rings with identity\n"
        "z1 * x = z1 * y\n"
    ),
    "ring_mixed.fm": (
        "# mixed-literal version with a decoy disjunct; the decoy covers\n"
        "# trivial products where the disequation cannot be satisfied\n"
        "exists w . (z1 * x = z1 * y and w != z1) or (z1 = w and x = y)\n"
    ),
    "lattice_dfc.fm": (
        "# neutral-complemented-element equation for bounded lattices\n"
        "x \\/ z1 = y \\/ z1\n"
    ),
    "lattice_mixed.fm": (
        "exists w . (x \\/ z1 = y \\/ z1 and w != z1) or (z1 = w and x = y)\n"
    ),
    "not_dfc.fm": (
        "# fails: plain equality also pins the second coordinate\n"
        "x = y\n"
    ),
}

CONTEXTS = {
    "rings.ctx": (ring_context, "z2", "z2.alg"),
    "rings_z6.ctx": (ring_context, "z6", "z6.alg"),
    "lattices.ctx": (lattice_context, "c3", "c3.alg"),
    "boolean.ctx": (boolean_context, "b2", "b2.alg"),
}


def main() -> None:
    root = Path(__file__).resolve().parent.parent / "fixtures"
    root.mkdir(exist_ok=True)
    algebras = corpus()
    for stem, algebra in algebras.items():
        fileio.dump_algebra(algebra, root / f"{stem}.alg")
    for name, (builder, stem, gen_path) in CONTEXTS.items():
        ctx = builder(algebras[stem])
        fileio.dump_context(ctx, root / name, generator_path=gen_path)
    formulas = root / "formulas"
    formulas.mkdir(exist_ok=True)
    for name, text in FORMULAS.items():
        (formulas / name).write_text(text, encoding="utf-8")
    print(f"wrote {len(algebras)} algebras, {len(CONTEXTS)} contexts, "
          f"{len(FORMULAS)} formulas under {root}")


if __name__ == "__main__":
    main()
