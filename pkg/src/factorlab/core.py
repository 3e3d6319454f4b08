"""Finite algebras over a shared signature: dense operation tables, term
evaluation, direct products, generated subalgebras and homomorphism checks.

Universe elements are plain ints 0..n-1.  Operation tables are flat row-major
tuples: for arity k the entry for arguments (a1, .., ak) sits at index
a1*n^(k-1) + a2*n^(k-2) + .. + ak.  All values are immutable after
construction and every operation here is a pure function, so callers may
evaluate across algebras and assignments concurrently.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .errors import EvalError, ResourceBoundError, ValidationError
from .terms import Term, Var


@dataclass(frozen=True)
class Signature:
    """Ordered operation symbols (name, arity) plus the 0/1 tuple length l."""

    symbols: tuple[tuple[str, int], ...]
    l: int = 1

    def __post_init__(self):
        names = [name for name, _ in self.symbols]
        if len(set(names)) != len(names):
            raise ValidationError(f"duplicate symbol names in signature: {names}")
        for name, arity in self.symbols:
            if not name:
                raise ValidationError("empty symbol name")
            if arity < 0:
                raise ValidationError(f"negative arity for symbol '{name}'")
        if self.l < 1:
            raise ValidationError("tuple length l must be positive")
        object.__setattr__(self, "_arity", dict(self.symbols))
        object.__setattr__(
            self, "_index", {name: i for i, (name, _) in enumerate(self.symbols)}
        )

    def arity(self, symbol: str) -> int:
        try:
            return self._arity[symbol]
        except KeyError:
            raise EvalError(f"unknown symbol '{symbol}'") from None

    def index(self, symbol: str) -> int:
        try:
            return self._index[symbol]
        except KeyError:
            raise EvalError(f"unknown symbol '{symbol}'") from None

    def has(self, symbol: str) -> bool:
        return symbol in self._arity

    @property
    def constants(self) -> tuple[str, ...]:
        return tuple(name for name, k in self.symbols if k == 0)


@dataclass(frozen=True)
class FiniteAlgebra:
    """Universe {0..size-1} with one flat row-major table per symbol."""

    signature: Signature
    size: int
    tables: tuple[tuple[int, ...], ...]
    name: str = "A"

    def __post_init__(self):
        n = self.size
        if n < 1:
            raise ValidationError(f"algebra '{self.name}': size must be positive")
        if len(self.tables) != len(self.signature.symbols):
            raise ValidationError(
                f"algebra '{self.name}': {len(self.tables)} tables for "
                f"{len(self.signature.symbols)} symbols"
            )
        for (sym, arity), table in zip(self.signature.symbols, self.tables):
            expected = n**arity
            if len(table) != expected:
                raise ValidationError(
                    f"algebra '{self.name}': table for '{sym}' has length "
                    f"{len(table)}, expected {expected}"
                )
            for idx, v in enumerate(table):
                if not 0 <= v < n:
                    raise ValidationError(
                        f"algebra '{self.name}': entry {v} out of range at index "
                        f"{idx} in table for '{sym}'"
                    )

    @classmethod
    def from_ops(
        cls,
        signature: Signature,
        size: int,
        ops: Mapping[str, Iterable[int]],
        name: str = "A",
    ) -> "FiniteAlgebra":
        missing = [s for s, _ in signature.symbols if s not in ops]
        if missing:
            raise ValidationError(f"algebra '{name}': missing tables for {missing}")
        tables = tuple(tuple(ops[s]) for s, _ in signature.symbols)
        return cls(signature, size, tables, name)

    def table(self, symbol: str) -> tuple[int, ...]:
        return self.tables[self.signature.index(symbol)]

    def apply(self, symbol: str, args: Sequence[int] = ()) -> int:
        arity = self.signature.arity(symbol)
        if len(args) != arity:
            raise EvalError(
                f"arity mismatch: '{symbol}' takes {arity} arguments, got {len(args)}"
            )
        idx = 0
        for a in args:
            idx = idx * self.size + a
        return self.tables[self.signature.index(symbol)][idx]

    def elements(self) -> range:
        return range(self.size)


def eval_term(algebra: FiniteAlgebra, t: Term, env: Mapping[str, int]) -> int:
    """Evaluate a term by structural recursion through the tables."""
    if isinstance(t, Var):
        try:
            return env[t.name]
        except KeyError:
            raise EvalError(f"unbound variable '{t.name}'") from None
    args = [eval_term(algebra, a, env) for a in t.args]
    return algebra.apply(t.symbol, args)


# -- direct products ---------------------------------------------------------
#
# Pair encoding is fixed as index = a*|B| + b; every decomposition and report
# in the package is stated against this encoding.


def pair_index(a: int, b: int, b_size: int) -> int:
    return a * b_size + b


def pair_split(p: int, b_size: int) -> tuple[int, int]:
    return p // b_size, p % b_size


def direct_product(
    a: FiniteAlgebra, b: FiniteAlgebra, name: str | None = None
) -> FiniteAlgebra:
    """Coordinatewise product on universe {0..|A|*|B|-1}, index = a*|B| + b."""
    if a.signature != b.signature:
        raise ValidationError(
            f"signature mismatch between '{a.name}' and '{b.name}'"
        )
    nb = b.size
    n = a.size * nb
    tables = []
    for (sym, arity), ta, tb in zip(a.signature.symbols, a.tables, b.tables):
        if arity == 0:
            tables.append((pair_index(ta[0], tb[0], nb),))
            continue
        table = []
        for args in itertools.product(range(n), repeat=arity):
            ia = ib = 0
            for p in args:
                ia = ia * a.size + p // nb
                ib = ib * nb + p % nb
            table.append(pair_index(ta[ia], tb[ib], nb))
        tables.append(tuple(table))
    return FiniteAlgebra(
        a.signature, n, tuple(tables), name or f"{a.name}x{b.name}"
    )


def projections_of_product(
    a: FiniteAlgebra, b: FiniteAlgebra
) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """The two coordinate projection maps of the fixed pair encoding."""
    n = a.size * b.size
    p1 = tuple(pair_split(p, b.size)[0] for p in range(n))
    p2 = tuple(pair_split(p, b.size)[1] for p in range(n))
    return p1, p2


# -- subalgebras and homomorphisms -------------------------------------------


def subalgebra_generated(
    algebra: FiniteAlgebra, seed: Iterable[int]
) -> tuple[FiniteAlgebra, tuple[int, ...]]:
    """Least subuniverse containing `seed` and all constants, re-indexed.

    Returns (sub, embedding) where embedding[i] is the element of `algebra`
    that sub-element i stands for.
    """
    current: set[int] = set(seed)
    for e in current:
        if not 0 <= e < algebra.size:
            raise ValidationError(f"seed element {e} outside universe")
    for sym, arity in algebra.signature.symbols:
        if arity == 0:
            current.add(algebra.apply(sym))
    if not current:
        raise ValidationError(
            "empty subuniverse: no constants in signature and empty seed"
        )
    changed = True
    while changed:
        changed = False
        snapshot = sorted(current)
        for sym, arity in algebra.signature.symbols:
            if arity == 0:
                continue
            for args in itertools.product(snapshot, repeat=arity):
                v = algebra.apply(sym, args)
                if v not in current:
                    current.add(v)
                    changed = True
    embedding = tuple(sorted(current))
    back = {old: new for new, old in enumerate(embedding)}
    m = len(embedding)
    tables = []
    for sym, arity in algebra.signature.symbols:
        table = []
        for args in itertools.product(embedding, repeat=arity):
            table.append(back[algebra.apply(sym, args)])
        tables.append(tuple(table))
    sub = FiniteAlgebra(
        algebra.signature, m, tuple(tables), f"{algebra.name}|{sorted(seed)}"
    )
    return sub, embedding


def is_homomorphism(
    a: FiniteAlgebra, b: FiniteAlgebra, h: Sequence[int]
) -> bool:
    """True iff h (total map on A's universe into B's) commutes with every table."""
    if a.signature != b.signature:
        raise ValidationError("signature mismatch")
    if len(h) != a.size:
        raise ValidationError(f"map has {len(h)} entries for universe of {a.size}")
    if any(not 0 <= v < b.size for v in h):
        raise ValidationError("map image outside codomain universe")
    for sym, arity in a.signature.symbols:
        for args in itertools.product(range(a.size), repeat=arity):
            if h[a.apply(sym, args)] != b.apply(sym, [h[x] for x in args]):
                return False
    return True


def surjective_homomorphisms(
    a: FiniteAlgebra, b: FiniteAlgebra, max_candidates: int = 200_000
) -> list[tuple[int, ...]]:
    """All surjective homomorphisms A -> B by brute enumeration.

    Raises ResourceBoundError when |B|^|A| exceeds max_candidates.
    """
    if a.signature != b.signature:
        raise ValidationError("signature mismatch")
    total = b.size**a.size
    if total > max_candidates:
        raise ResourceBoundError(
            f"{total} candidate maps {a.name} -> {b.name} exceed cap {max_candidates}"
        )
    ops = [
        (a.signature.index(sym), arity)
        for sym, arity in a.signature.symbols
    ]
    out = []
    rng_a = range(a.size)
    for h in itertools.product(range(b.size), repeat=a.size):
        if len(set(h)) != b.size:
            continue
        ok = True
        for sym_i, arity in ops:
            ta = a.tables[sym_i]
            tb = b.tables[sym_i]
            for args in itertools.product(rng_a, repeat=arity):
                ia = ib = 0
                for x in args:
                    ia = ia * a.size + x
                    ib = ib * b.size + h[x]
                if h[ta[ia]] != tb[ib]:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out.append(h)
    return out
