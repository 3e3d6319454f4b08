"""Variety contexts: a generating algebra, closed zero/one term tuples, and a
pool of members built by closing the generator under quotients, generated
subalgebras and binary products (so membership holds by construction).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, replace

from .congruences import all_congruences, quotient
from .core import FiniteAlgebra, Signature, direct_product, eval_term, subalgebra_generated
from .errors import ValidationError
from .terms import Term, is_closed


@dataclass(frozen=True)
class PoolEntry:
    algebra: FiniteAlgebra
    recipe: str


@dataclass(frozen=True)
class VarietyContext:
    generator: FiniteAlgebra
    zero_terms: tuple[Term, ...]
    one_terms: tuple[Term, ...]
    pool: tuple[PoolEntry, ...] = ()

    def __post_init__(self):
        l = self.signature.l
        if len(self.zero_terms) != l or len(self.one_terms) != l:
            raise ValidationError(
                f"zero/one term tuples must have length l={l}, got "
                f"{len(self.zero_terms)}/{len(self.one_terms)}"
            )
        for t in self.zero_terms + self.one_terms:
            if not is_closed(t):
                raise ValidationError("zero/one terms must be closed (variable-free)")
            eval_term(self.generator, t, {})  # raises on unknown symbols
        for entry in self.pool:
            if entry.algebra.signature != self.signature:
                raise ValidationError(
                    f"pool member '{entry.algebra.name}' has a different signature"
                )

    @property
    def signature(self) -> Signature:
        return self.generator.signature

    @property
    def l(self) -> int:
        return self.signature.l

    @property
    def pool_algebras(self) -> tuple[FiniteAlgebra, ...]:
        return tuple(e.algebra for e in self.pool)

    def zero_values(self, algebra: FiniteAlgebra) -> tuple[int, ...]:
        return tuple(eval_term(algebra, t, {}) for t in self.zero_terms)

    def one_values(self, algebra: FiniteAlgebra) -> tuple[int, ...]:
        return tuple(eval_term(algebra, t, {}) for t in self.one_terms)

    def with_pool(self, entries: tuple[PoolEntry, ...]) -> "VarietyContext":
        return replace(self, pool=entries)

    def populated(
        self, max_size: int = 8, depth: int = 2, cong_bound: int | None = None
    ) -> "VarietyContext":
        return self.with_pool(
            tuple(generate_pool(self, max_size=max_size, depth=depth,
                                cong_bound=cong_bound))
        )


def _fingerprint(a: FiniteAlgebra) -> tuple:
    return (a.size, a.tables)


def generate_pool(
    ctx: VarietyContext,
    max_size: int = 8,
    depth: int = 2,
    cong_bound: int | None = None,
) -> list[PoolEntry]:
    """Close {generator} under quotients, small generated subalgebras and
    binary products for `depth` rounds, discarding constructions larger than
    max_size.  The generator itself always stays in the pool.  Exact duplicate
    tables are pruned; no isomorphism testing is attempted.
    """
    gen = ctx.generator
    bound = cong_bound if cong_bound is not None else max(max_size, gen.size)
    entries = [PoolEntry(gen, "generator")]
    seen = {_fingerprint(gen)}

    def add(algebra: FiniteAlgebra, recipe: str, out: list[PoolEntry]) -> None:
        if algebra.size > max_size:
            return
        fp = _fingerprint(algebra)
        if fp in seen:
            return
        seen.add(fp)
        out.append(PoolEntry(algebra, recipe))

    for _ in range(depth):
        fresh: list[PoolEntry] = []
        snapshot = list(entries)
        for entry in snapshot:
            a = entry.algebra
            if a.size <= bound:
                for theta in all_congruences(a, bound=bound):
                    q, _ = quotient(a, theta)
                    add(q, f"quotient({a.name}, {theta})", fresh)
            seeds = [()] + [(s,) for s in range(a.size)] + [
                pair for pair in itertools.combinations(range(a.size), 2)
            ]
            for seed in seeds:
                if not seed and not a.signature.constants:
                    continue
                sub, _ = subalgebra_generated(a, seed)
                add(sub, f"subalgebra({a.name}, {list(seed)})", fresh)
        for e1 in snapshot:
            for e2 in snapshot:
                if e1.algebra.size * e2.algebra.size > max_size:
                    continue
                p = direct_product(e1.algebra, e2.algebra)
                add(p, f"product({e1.algebra.name}, {e2.algebra.name})", fresh)
        if not fresh:
            break
        entries.extend(fresh)
    return entries


@dataclass(frozen=True)
class ZeroOneReport:
    """Sampled check that equal zero/one tuples only happen in trivial algebras.

    A pass is evidence over the pool, not a proof for the whole variety.
    """

    entries: tuple[tuple[str, tuple[int, ...], tuple[int, ...], bool], ...]
    note: str = "sampled verification over the pool, not a proof"

    @property
    def ok(self) -> bool:
        return all(ok for _, _, _, ok in self.entries)

    @property
    def violations(self) -> tuple[str, ...]:
        return tuple(name for name, _, _, ok in self.entries if not ok)


def verify_zero_one_condition(ctx: VarietyContext) -> ZeroOneReport:
    if not ctx.pool:
        raise ValidationError("pool is empty; populate the context first")
    rows = []
    for entry in ctx.pool:
        a = entry.algebra
        zv = ctx.zero_values(a)
        ov = ctx.one_values(a)
        ok = zv != ov or a.size == 1
        rows.append((a.name, zv, ov, ok))
    return ZeroOneReport(tuple(rows))
