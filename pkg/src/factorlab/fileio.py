"""On-disk formats.

Algebra files (JSON):
    { "name": str, "size": int,
      "ops": { symbol: { "arity": int, "table": [int, ...] } } }
with tables flat row-major: the entry for (a1..ak) sits at
a1*n^(k-1) + .. + ak.

Variety-context files (JSON):
    { "generator": path-or-inline-algebra, "l": int,
      "zero": [term text, ...], "one": [term text, ...] }
where term texts use the formula grammar and generator paths are resolved
relative to the context file.

Formula files are plain text in the formula grammar; '#' starts a comment.
"""
from __future__ import annotations

import json
from pathlib import Path

from .core import FiniteAlgebra, Signature
from .errors import ValidationError
from .formulas import ExistentialDnf, parse_formula, parse_term_text
from .terms import term_text
from .variety import VarietyContext


def _read_json(path: Path) -> dict:
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ValidationError(f"cannot read '{path}': {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"'{path}' is not valid JSON: {exc}") from exc
    if not isinstance(data, dict):
        raise ValidationError(f"'{path}': expected a JSON object")
    return data


def algebra_from_dict(data: dict, l: int = 1, origin: str = "<inline>") -> FiniteAlgebra:
    for key in ("name", "size", "ops"):
        if key not in data:
            raise ValidationError(f"{origin}: missing '{key}'")
    ops = data["ops"]
    if not isinstance(ops, dict) or not ops:
        raise ValidationError(f"{origin}: 'ops' must be a non-empty object")
    symbols = []
    tables = {}
    for sym, spec in ops.items():
        if not isinstance(spec, dict) or "arity" not in spec or "table" not in spec:
            raise ValidationError(
                f"{origin}: op '{sym}' needs 'arity' and 'table'"
            )
        symbols.append((sym, int(spec["arity"])))
        tables[sym] = [int(v) for v in spec["table"]]
    signature = Signature(tuple(symbols), l=l)
    return FiniteAlgebra.from_ops(
        signature, int(data["size"]), tables, str(data["name"])
    )


def algebra_to_dict(algebra: FiniteAlgebra) -> dict:
    return {
        "name": algebra.name,
        "size": algebra.size,
        "ops": {
            sym: {"arity": arity, "table": list(table)}
            for (sym, arity), table in zip(
                algebra.signature.symbols, algebra.tables
            )
        },
    }


def load_algebra(path: str | Path, l: int = 1) -> FiniteAlgebra:
    p = Path(path)
    return algebra_from_dict(_read_json(p), l=l, origin=str(p))


def dump_algebra(algebra: FiniteAlgebra, path: str | Path) -> None:
    Path(path).write_text(
        json.dumps(algebra_to_dict(algebra), indent=2) + "\n", encoding="utf-8"
    )


def load_context(path: str | Path) -> VarietyContext:
    p = Path(path)
    data = _read_json(p)
    for key in ("generator", "zero", "one"):
        if key not in data:
            raise ValidationError(f"{p}: missing '{key}'")
    l = int(data.get("l", 1))
    gen = data["generator"]
    if isinstance(gen, str):
        generator = load_algebra(p.parent / gen, l=l)
    elif isinstance(gen, dict):
        generator = algebra_from_dict(gen, l=l, origin=f"{p}:generator")
    else:
        raise ValidationError(f"{p}: 'generator' must be a path or an object")
    zero = tuple(
        parse_term_text(str(t), generator.signature) for t in data["zero"]
    )
    one = tuple(
        parse_term_text(str(t), generator.signature) for t in data["one"]
    )
    return VarietyContext(generator, zero, one)


def context_to_dict(ctx: VarietyContext, generator_path: str | None = None) -> dict:
    return {
        "generator": generator_path or algebra_to_dict(ctx.generator),
        "l": ctx.l,
        "zero": [term_text(t) for t in ctx.zero_terms],
        "one": [term_text(t) for t in ctx.one_terms],
    }


def dump_context(
    ctx: VarietyContext, path: str | Path, generator_path: str | None = None
) -> None:
    Path(path).write_text(
        json.dumps(context_to_dict(ctx, generator_path), indent=2) + "\n",
        encoding="utf-8",
    )


def load_formula(path: str | Path, signature: Signature, l: int) -> ExistentialDnf:
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise ValidationError(f"cannot read '{p}': {exc}") from exc
    return parse_formula(text, signature, l)
