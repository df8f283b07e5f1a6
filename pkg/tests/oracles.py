"""Brute-force references used by several test modules."""

from __future__ import annotations

from itertools import combinations

WINDOW = range(0, 128)


def members(s, window=WINDOW) -> frozenset[int]:
    """Membership of a KSet read off point by point."""
    return frozenset(x for x in window if x in s)


def eval_diff(f, g, window) -> frozenset[int]:
    return frozenset(x for x in window if f(x) != g(x))


def exhaustive_psi(universe: frozenset, family: list[frozenset], target: frozenset) -> int | None:
    """Least number of family members whose intersection (inside ``universe``) is ``target``."""
    if target == universe:
        return 1
    for k in range(1, len(family) + 1):
        for combo in combinations(family, k):
            inter = universe.intersection(*combo)
            if inter == target:
                return k
    return None


def random_finite_instance(rng, max_subbase: int = 20):
    """A random closure on a small finite carrier with a subbase of at most ``max_subbase`` sets."""
    from gtopology import FiniteSet, Table, build_subbase, closure

    while True:
        n = rng.randint(3, 6)
        c = FiniteSet(n)
        gens = [Table(c, tuple(rng.randrange(n) for _ in range(n))) for _ in range(rng.randint(1, 2))]
        cl = closure(gens, max_word_len=3, max_elements=rng.randint(2, 5))
        window = sorted(rng.sample(range(n), rng.randint(1, n)))
        sb = build_subbase(cl, window)
        if len(sb) <= max_subbase:
            return sb


def subbase_psi_oracle(sb, x) -> int | float:
    """Exhaustive subbase pseudocharacter at ``x`` on a finite carrier."""
    universe = frozenset(sb.carrier.points())
    family = [frozenset(s.set.points()) for s in sb.sets if x in s.set]
    target = universe.intersection(*family) if family else universe
    return exhaustive_psi(universe, family, target)
