"""Congruences as compatible partitions: principal generation, the full
lattice at desk scale, factor pairs and product decompositions.

A congruence is stored as its canonical representative array rep[0..n-1] with
rep[i] = least element of i's class, so equality is tuple equality and sorted
output is deterministic.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from .core import FiniteAlgebra, direct_product, is_homomorphism, pair_index
from .errors import InternalCheckError, ResourceBoundError, ValidationError

DEFAULT_SIZE_BOUND = 8


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if rb < ra:
            ra, rb = rb, ra
        self.parent[rb] = ra
        return True

    def rep_tuple(self) -> tuple[int, ...]:
        # roots are already the least members because union keeps the smaller root
        return tuple(self.find(i) for i in range(len(self.parent)))


def _is_compatible(algebra: FiniteAlgebra, rep: tuple[int, ...]) -> bool:
    # One argument position at a time suffices: full compatibility follows by
    # transitivity through the intermediate tuples.
    n = algebra.size
    classes: dict[int, list[int]] = {}
    for i, r in enumerate(rep):
        classes.setdefault(r, []).append(i)
    multi = [c for c in classes.values() if len(c) > 1]
    if not multi:
        return True
    for sym, arity in algebra.signature.symbols:
        if arity == 0:
            continue
        table = algebra.table(sym)
        for pos in range(arity):
            for rest in itertools.product(range(n), repeat=arity - 1):
                for cls in multi:
                    first = None
                    for a in cls:
                        idx = 0
                        for j in range(arity):
                            if j == pos:
                                idx = idx * n + a
                            else:
                                idx = idx * n + rest[j if j < pos else j - 1]
                        v = rep[table[idx]]
                        if first is None:
                            first = v
                        elif v != first:
                            return False
    return True


@dataclass(frozen=True)
class Congruence:
    algebra: FiniteAlgebra
    rep: tuple[int, ...]

    def __post_init__(self):
        n = self.algebra.size
        if len(self.rep) != n:
            raise ValidationError(f"rep array length {len(self.rep)} for size {n}")
        for i, r in enumerate(self.rep):
            if not 0 <= r <= i:
                raise ValidationError(f"rep[{i}]={r} is not the least class member")
            if self.rep[r] != r:
                raise ValidationError(f"rep[{i}]={r} but rep[{r}]={self.rep[r]}")
        if not _is_compatible(self.algebra, self.rep):
            raise ValidationError("incompatible partition rejected")

    def related(self, a: int, b: int) -> bool:
        return self.rep[a] == self.rep[b]

    def classes(self) -> list[list[int]]:
        out: dict[int, list[int]] = {}
        for i, r in enumerate(self.rep):
            out.setdefault(r, []).append(i)
        return [out[r] for r in sorted(out)]

    @property
    def n_classes(self) -> int:
        return len(set(self.rep))

    def is_identity(self) -> bool:
        return all(r == i for i, r in enumerate(self.rep))

    def is_total(self) -> bool:
        return self.n_classes == 1

    def __str__(self) -> str:
        return partition_text(self)


def partition_text(theta: Congruence) -> str:
    """Compact class-list rendering, e.g. {0,3|1,4|2,5}."""
    return "{" + "|".join(",".join(map(str, c)) for c in theta.classes()) + "}"


def _normalize_rep(uf: _UnionFind) -> tuple[int, ...]:
    return uf.rep_tuple()


def identity_congruence(algebra: FiniteAlgebra) -> Congruence:
    return Congruence(algebra, tuple(range(algebra.size)))


def total_congruence(algebra: FiniteAlgebra) -> Congruence:
    return Congruence(algebra, (0,) * algebra.size)


def congruence_from_partition(
    algebra: FiniteAlgebra, classes: list[list[int]]
) -> Congruence:
    seen: set[int] = set()
    rep = [-1] * algebra.size
    for cls in classes:
        least = min(cls)
        for e in cls:
            if e in seen:
                raise ValidationError(f"element {e} in two classes")
            seen.add(e)
            rep[e] = least
    if len(seen) != algebra.size:
        raise ValidationError("partition does not cover the universe")
    return Congruence(algebra, tuple(rep))


def _close_under_operations(algebra: FiniteAlgebra, uf: _UnionFind) -> None:
    n = algebra.size
    changed = True
    while changed:
        changed = False
        classes: dict[int, list[int]] = {}
        for i in range(n):
            classes.setdefault(uf.find(i), []).append(i)
        multi = [c for c in classes.values() if len(c) > 1]
        if not multi:
            return
        for sym, arity in algebra.signature.symbols:
            if arity == 0:
                continue
            table = algebra.table(sym)
            for pos in range(arity):
                for rest in itertools.product(range(n), repeat=arity - 1):
                    for cls in multi:
                        first = None
                        for a in cls:
                            idx = 0
                            for j in range(arity):
                                if j == pos:
                                    idx = idx * n + a
                                else:
                                    idx = idx * n + rest[j if j < pos else j - 1]
                            v = table[idx]
                            if first is None:
                                first = v
                            elif uf.union(first, v):
                                changed = True


def principal_congruence(algebra: FiniteAlgebra, a: int, b: int) -> Congruence:
    """Least congruence identifying a and b (worklist closure over the tables)."""
    n = algebra.size
    if not (0 <= a < n and 0 <= b < n):
        raise ValidationError(f"elements ({a},{b}) outside universe of size {n}")
    uf = _UnionFind(n)
    uf.union(a, b)
    _close_under_operations(algebra, uf)
    return Congruence(algebra, _normalize_rep(uf))


def congruence_join(t1: Congruence, t2: Congruence) -> Congruence:
    _check_owner(t1, t2)
    uf = _UnionFind(t1.algebra.size)
    for i in range(t1.algebra.size):
        uf.union(i, t1.rep[i])
        uf.union(i, t2.rep[i])
    return Congruence(t1.algebra, _normalize_rep(uf))


def congruence_meet(t1: Congruence, t2: Congruence) -> Congruence:
    _check_owner(t1, t2)
    first: dict[tuple[int, int], int] = {}
    rep = []
    for i in range(t1.algebra.size):
        key = (t1.rep[i], t2.rep[i])
        rep.append(first.setdefault(key, i))
    return Congruence(t1.algebra, tuple(rep))


def compose(t1: Congruence, t2: Congruence) -> frozenset[tuple[int, int]]:
    """Relational composition {(x,z) : exists y with x t1 y and y t2 z}."""
    _check_owner(t1, t2)
    n = t1.algebra.size
    cls1: dict[int, list[int]] = {}
    for i in range(n):
        cls1.setdefault(t1.rep[i], []).append(i)
    pairs = set()
    for x in range(n):
        for y in cls1[t1.rep[x]]:
            r2 = t2.rep[y]
            for z in range(n):
                if t2.rep[z] == r2:
                    pairs.add((x, z))
    return frozenset(pairs)


def _check_owner(t1: Congruence, t2: Congruence) -> None:
    if t1.algebra != t2.algebra:
        raise ValidationError("congruences belong to different algebras")


def all_congruences(
    algebra: FiniteAlgebra, bound: int = DEFAULT_SIZE_BOUND
) -> list[Congruence]:
    """The full congruence lattice: join-closure of all principal congruences.

    Sorted by (number of classes, rep array), so the total congruence comes
    first and the identity last.
    """
    n = algebra.size
    if n > bound:
        raise ResourceBoundError(
            f"size {n} exceeds congruence enumeration bound {bound}"
        )
    found: dict[tuple[int, ...], Congruence] = {}
    delta = identity_congruence(algebra)
    found[delta.rep] = delta
    for a in range(n):
        for b in range(a + 1, n):
            c = principal_congruence(algebra, a, b)
            found.setdefault(c.rep, c)
    frontier = list(found.values())
    while frontier:
        fresh = []
        for c1 in frontier:
            for c2 in list(found.values()):
                j = congruence_join(c1, c2)
                if j.rep not in found:
                    found[j.rep] = j
                    fresh.append(j)
        frontier = fresh
    return sorted(found.values(), key=lambda c: (c.n_classes, c.rep))


# -- factor pairs and decompositions ------------------------------------------


@dataclass(frozen=True)
class FactorPair:
    """An ordered complementary pair: meet is identity, composition is total.

    One direction of the composition check suffices: if theta o theta_c is
    total then so is theta_c o theta, because the total relation is symmetric
    and (x,z) in theta o theta_c gives the reversed chain z theta_c y theta x.
    """

    theta: Congruence
    theta_c: Congruence

    def __post_init__(self):
        _check_owner(self.theta, self.theta_c)
        if not congruence_meet(self.theta, self.theta_c).is_identity():
            raise ValidationError("factor pair meet is not the identity")
        n = self.theta.algebra.size
        if len(compose(self.theta, self.theta_c)) != n * n:
            raise ValidationError("factor pair composition is not total")


def factor_pairs(
    algebra: FiniteAlgebra, bound: int = DEFAULT_SIZE_BOUND
) -> list[FactorPair]:
    """All ordered pairs (theta, theta*) with meet identity and composition total.

    Both orientations are returned: the central element attached to a pair
    depends on which side carries the zero tuple.
    """
    cons = all_congruences(algebra, bound)
    n = algebra.size
    out = []
    for t1 in cons:
        for t2 in cons:
            if not congruence_meet(t1, t2).is_identity():
                continue
            if len(compose(t1, t2)) != n * n:
                continue
            out.append(FactorPair(t1, t2))
    return out


@dataclass(frozen=True)
class Decomposition:
    left: FiniteAlgebra
    right: FiniteAlgebra
    iso: tuple[int, ...]
    proj_left: tuple[int, ...]
    proj_right: tuple[int, ...]


def quotient(
    algebra: FiniteAlgebra, theta: Congruence
) -> tuple[FiniteAlgebra, tuple[int, ...]]:
    """Quotient algebra on theta-classes plus the projection map."""
    if theta.algebra != algebra:
        raise ValidationError("congruence belongs to a different algebra")
    reps = sorted(set(theta.rep))
    index = {r: i for i, r in enumerate(reps)}
    proj = tuple(index[theta.rep[e]] for e in range(algebra.size))
    m = len(reps)
    tables = []
    for sym, arity in algebra.signature.symbols:
        table = []
        for args in itertools.product(reps, repeat=arity):
            table.append(proj[algebra.apply(sym, args)])
        tables.append(tuple(table))
    quot = FiniteAlgebra(
        algebra.signature, m, tuple(tables), f"{algebra.name}/{partition_text(theta)}"
    )
    return quot, proj


def decomposition_from_pair(algebra: FiniteAlgebra, pair: FactorPair) -> Decomposition:
    """Split the algebra along a factor pair; asserts the map is a bijective
    homomorphism onto the product of the two quotients."""
    a1, p1 = quotient(algebra, pair.theta)
    a2, p2 = quotient(algebra, pair.theta_c)
    iso = tuple(pair_index(p1[c], p2[c], a2.size) for c in range(algebra.size))
    if len(set(iso)) != algebra.size or a1.size * a2.size != algebra.size:
        raise InternalCheckError(
            f"factor pair of '{algebra.name}' does not induce a bijection"
        )
    if not is_homomorphism(algebra, direct_product(a1, a2), iso):
        raise InternalCheckError(
            f"factor pair of '{algebra.name}' does not induce a homomorphism"
        )
    return Decomposition(a1, a2, iso, tuple(p1), tuple(p2))


# -- compactness diagnostics ---------------------------------------------------


@dataclass(frozen=True)
class CompactnessReport:
    """How many principal congruences are needed to generate theta.

    Finite algebras always admit some finite generating set; the search below
    is exhaustive for m <= 2 and falls back to a greedy cover beyond that.
    """

    theta: Congruence
    m: int
    generating_pairs: tuple[tuple[int, int], ...]
    exhaustive: bool


def compactness_report(
    algebra: FiniteAlgebra, theta: Congruence
) -> CompactnessReport:
    if theta.algebra != algebra:
        raise ValidationError("congruence belongs to a different algebra")
    if theta.is_identity():
        return CompactnessReport(theta, 0, (), True)
    candidates = [
        (a, b)
        for a in range(algebra.size)
        for b in range(a + 1, algebra.size)
        if theta.related(a, b)
    ]
    principals = {p: principal_congruence(algebra, *p) for p in candidates}
    for p in candidates:
        if principals[p].rep == theta.rep:
            return CompactnessReport(theta, 1, (p,), True)
    for i, p in enumerate(candidates):
        for q in candidates[i + 1 :]:
            if congruence_join(principals[p], principals[q]).rep == theta.rep:
                return CompactnessReport(theta, 2, (p, q), True)
    # greedy cover: join principals until theta is reached
    chosen: list[tuple[int, int]] = []
    acc = identity_congruence(algebra)
    for p in candidates:
        if acc.rep == theta.rep:
            break
        if acc.related(*p):
            continue
        acc = congruence_join(acc, principals[p])
        chosen.append(p)
    if acc.rep != theta.rep:
        raise InternalCheckError("greedy principal cover failed to reach theta")
    return CompactnessReport(theta, len(chosen), tuple(chosen), False)
