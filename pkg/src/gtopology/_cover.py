"""Exact minimum set cover over bitmask universes (branch and bound)."""

from __future__ import annotations

from typing import Sequence


class _Budget:
    def __init__(self, nodes: int):
        self.left = nodes
        self.exhausted = False

    def tick(self) -> bool:
        self.left -= 1
        if self.left < 0:
            self.exhausted = True
        return not self.exhausted


def greedy_cover(universe: int, sets: Sequence[int]) -> list[int] | None:
    uncovered = universe
    chosen: list[int] = []
    while uncovered:
        best, gain = -1, 0
        for i, s in enumerate(sets):
            g = (s & uncovered).bit_count()
            if g > gain:
                best, gain = i, g
        if best < 0:
            return None
        chosen.append(best)
        uncovered &= ~sets[best]
    return sorted(chosen)


def min_cover(
    universe: int, sets: Sequence[int], node_budget: int = 200_000
) -> tuple[int | None, list[int] | None, bool]:
    """Smallest subfamily of ``sets`` whose union contains ``universe``.

    Returns ``(size, indices, exact)``; ``size`` is None when no cover
    exists.  When the node budget runs out the best cover found so far is
    returned with ``exact=False``.
    """
    if universe == 0:
        return 0, [], True
    useful = [i for i, s in enumerate(sets) if s & universe]
    union = 0
    for i in useful:
        union |= sets[i]
    if universe & ~union:
        return None, None, True

    best = greedy_cover(universe, sets)
    best_size = len(best)
    covers: dict[int, list[int]] = {}
    u = universe
    while u:
        low = u & -u
        covers[low] = sorted((i for i in useful if sets[i] & low), key=lambda i: -(sets[i] & universe).bit_count())
        u ^= low
    max_size = max((sets[i] & universe).bit_count() for i in useful)
    budget = _Budget(node_budget)

    def dfs(uncovered: int, chosen: list[int]) -> None:
        nonlocal best, best_size
        if not budget.tick():
            return
        if not uncovered:
            if len(chosen) < best_size:
                best, best_size = sorted(chosen), len(chosen)
            return
        need = -(-uncovered.bit_count() // max_size)
        if len(chosen) + need >= best_size:
            return
        # branch on the uncovered element with the fewest options
        u, pick, n_opts = uncovered, 0, None
        while u:
            low = u & -u
            k = len(covers[low])
            if n_opts is None or k < n_opts:
                pick, n_opts = low, k
            u ^= low
        for i in covers[pick]:
            chosen.append(i)
            dfs(uncovered & ~sets[i], chosen)
            chosen.pop()
            if budget.exhausted:
                return

    dfs(universe, [])
    return best_size, best, not budget.exhausted


def lex_least_cover(
    universe: int, sets: Sequence[int], k: int, node_budget: int = 200_000
) -> list[int] | None:
    """Lexicographically least index list of ``k`` sets covering ``universe``.

    Meant to be called with the optimum ``k`` from :func:`min_cover`.
    Returns None if none is found within the budget.
    """
    n = len(sets)
    # max single-set gain available from index i onwards
    suffix_max = [0] * (n + 1)
    for i in range(n - 1, -1, -1):
        suffix_max[i] = max(suffix_max[i + 1], (sets[i] & universe).bit_count())
    budget = _Budget(node_budget)

    def rec(start: int, uncovered: int, left: int, chosen: list[int]) -> list[int] | None:
        if not uncovered:
            return list(chosen)
        if left == 0 or start >= n or not budget.tick():
            return None
        if suffix_max[start] * left < uncovered.bit_count():
            return None
        for i in range(start, n):
            s = sets[i]
            if not s & uncovered:
                continue
            if suffix_max[i] * left < uncovered.bit_count():
                return None
            chosen.append(i)
            found = rec(i + 1, uncovered & ~s, left - 1, chosen)
            chosen.pop()
            if found is not None:
                return found
            if budget.exhausted:
                return None
        return None

    return rec(0, universe, k, [])
