"""Independent brute-force oracles.

Everything here deliberately avoids the library's algorithms: congruences are
found by filtering all set partitions with a full-tuple compatibility scan,
and free-algebra carriers by a plain set-based fixpoint over pointwise
vectors.
"""
import itertools


def set_partitions(n):
    """All partitions of {0..n-1} as lists of sorted classes (restricted
    growth strings)."""
    out = []

    def grow(prefix, maxi):
        i = len(prefix)
        if i == n:
            classes = {}
            for e, c in enumerate(prefix):
                classes.setdefault(c, []).append(e)
            out.append([classes[c] for c in sorted(classes)])
            return
        for c in range(maxi + 2):
            grow(prefix + [c], max(maxi, c))

    grow([], -1)
    return out


def rep_of_partition(n, classes):
    rep = [0] * n
    for cls in classes:
        least = min(cls)
        for e in cls:
            rep[e] = least
    return tuple(rep)


def compatible_naive(algebra, rep):
    """Full scan: every pair of componentwise-related argument tuples must
    have related images (no single-coordinate shortcut)."""
    n = algebra.size
    for sym, arity in algebra.signature.symbols:
        if arity == 0:
            continue
        for u in itertools.product(range(n), repeat=arity):
            for v in itertools.product(range(n), repeat=arity):
                if all(rep[a] == rep[b] for a, b in zip(u, v)):
                    if rep[algebra.apply(sym, u)] != rep[algebra.apply(sym, v)]:
                        return False
    return True


def congruence_reps_bruteforce(algebra):
    """All compatible partitions of the universe, as canonical rep tuples."""
    n = algebra.size
    found = set()
    for classes in set_partitions(n):
        rep = rep_of_partition(n, classes)
        if compatible_naive(algebra, rep):
            found.add(rep)
    return found


def ring_idempotents(algebra):
    return sorted(e for e in range(algebra.size) if algebra.apply("*", (e, e)) == e)


def term_function_vectors(algebra, rank):
    """Pointwise vectors of all term functions in `rank` variables, computed
    by a dumb set fixpoint (no witness bookkeeping, no budget, no layering)."""
    points = list(itertools.product(range(algebra.size), repeat=rank))
    vectors = set()
    for j in range(rank):
        vectors.add(tuple(p[j] for p in points))
    for sym, arity in algebra.signature.symbols:
        if arity == 0:
            vectors.add((algebra.apply(sym),) * len(points))
    while True:
        new = set()
        for sym, arity in algebra.signature.symbols:
            if arity == 0:
                continue
            for vecs in itertools.product(sorted(vectors), repeat=arity):
                out = tuple(
                    algebra.apply(sym, [v[p] for v in vecs])
                    for p in range(len(points))
                )
                if out not in vectors:
                    new.add(out)
        if not new:
            return vectors
        vectors |= new
