"""Filter-generated G-topologies at finite depth.

A filter on the support ``X_0 = {x_0, ..., x_k}`` of a special sequence is
represented by a finite base.  A set ``U`` is open in the generated topology
when, for every closure map ``g`` with ``g(x_0)`` in ``U``, the trace
``g^{-1}(U) & X_0`` contains some base set.  Every answer is relative to the
truncated closure and sequence.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Sequence

from ._cover import lex_least_cover, min_cover
from .acts import MonoidClosure
from .sets import KSet, intersect_all
from .special import SpecialSequence

log = logging.getLogger(__name__)

TAIL = "tail"
REFINED = "refined"

OPEN = "open"
NOT_OPEN = "not-open"
INDETERMINATE = "indeterminate"


@dataclass(frozen=True)
class FilterBase:
    seq: SpecialSequence
    base: tuple[KSet, ...]
    kind: str = TAIL
    directed: bool = field(default=True, compare=False)

    def __post_init__(self):
        x0 = self.seq.x0
        support = self.support
        if not self.base:
            raise ValueError("filter base is empty")
        for b in self.base:
            if x0 not in b:
                raise ValueError(f"base set {b!r} does not contain x_0 = {x0}")
            if not b.issubset(support):
                raise ValueError(f"base set {b!r} is not inside the support")
        object.__setattr__(self, "directed", _is_directed(self.base))
        if self.kind == TAIL and not self.directed:
            raise ValueError("tail base must be downward directed")

    @property
    def carrier(self):
        return self.seq.carrier

    @property
    def x0(self) -> int:
        return self.seq.x0

    @property
    def support(self) -> KSet:
        return KSet.finite(self.carrier, self.seq.points)

    def core(self) -> KSet:
        return intersect_all(self.base, self.carrier)

    def contains_base_set(self, s: KSet) -> bool:
        return any(b.issubset(s) for b in self.base)

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "x0": self.x0,
            "support_size": len(self.seq.points),
            "base": [b.to_json() for b in self.base],
            "directed": self.directed,
        }


def _is_directed(base: Sequence[KSet]) -> bool:
    for a, b in combinations(base, 2):
        ab = a & b
        if not any(c.issubset(ab) for c in base):
            return False
    return True


def tail_set(seq: SpecialSequence, alpha: int) -> KSet:
    """``{x_0} | {x_beta : beta > alpha}``."""
    return KSet.finite(seq.carrier, (seq.x0, *seq.points[alpha + 1 :]))


def tail_filter(seq: SpecialSequence) -> FilterBase:
    """Base of tails ``{x_0} | X_{>alpha}`` for ``alpha < k``.

    The last tail ``{x_0, x_k}`` stands in for the infinite remainder, so the
    degenerate tail ``{x_0}`` is never a base set.
    """
    if not seq.verified:
        raise ValueError("tail_filter needs a verified special sequence")
    if seq.k < 1:
        raise ValueError("a tail filter needs at least two points")
    return FilterBase(seq, tuple(tail_set(seq, a) for a in range(seq.k)), TAIL)


def refined_filter(seq: SpecialSequence, subsets: Iterable[Iterable[int]]) -> FilterBase:
    """Tails intersected with user subsets of the support (``x_0`` is added).

    Intersections that collapse to ``{x_0}`` are dropped; duplicates keep
    their first position.
    """
    if not seq.verified:
        raise ValueError("refined_filter needs a verified special sequence")
    carrier, x0 = seq.carrier, seq.x0
    base: list[KSet] = []
    for sub in subsets:
        s = KSet.finite(carrier, (x0, *sub))
        for a in range(seq.k):
            b = tail_set(seq, a) & s
            if b != KSet.singleton(carrier, x0) and b not in base:
                base.append(b)
    return FilterBase(seq, tuple(base), REFINED)


def meets_filter(e: KSet, fb: FilterBase) -> bool:
    """Whether ``e`` meets every base set."""
    return all(not (e & b).is_empty for b in fb.base)


# -- openness ----------------------------------------------------------------


@dataclass(frozen=True)
class OpennessVerdict:
    status: str
    checked_maps: int = 0
    closure_complete: bool = True
    witness_map: int | None = None
    witness_preimage: KSet | None = None
    reason: str | None = None

    @property
    def is_open(self) -> bool:
        return self.status == OPEN

    def to_json(self) -> dict:
        d = {"status": self.status, "checked_maps": self.checked_maps, "closure_complete": self.closure_complete}
        if self.witness_map is not None:
            d["witness_map"] = self.witness_map
            d["witness_preimage"] = self.witness_preimage.to_json()
        if self.reason:
            d["reason"] = self.reason
        return d


def trace_preimage(g, u: KSet, fb: FilterBase) -> KSet:
    """``g^{-1}(u) & X_0``, computed pointwise over the support."""
    return KSet.finite(fb.carrier, (x for x in fb.seq.points if g.apply(x) in u))


def is_open(u: KSet, fb: FilterBase, closure: MonoidClosure, strict: bool = False) -> OpennessVerdict:
    """Decide openness of ``u`` against every map of the closure.

    With ``strict=True`` a passing check over an incomplete closure is
    reported as indeterminate instead of open.
    """
    x0 = fb.x0
    checked = 0
    for i, g in enumerate(closure):
        if g.apply(x0) not in u:
            continue
        checked += 1
        pre = trace_preimage(g, u, fb)
        if not fb.contains_base_set(pre):
            return OpennessVerdict(NOT_OPEN, checked, closure.complete, i, pre)
    if strict and not closure.complete:
        return OpennessVerdict(
            INDETERMINATE, checked, False, reason=f"all {checked} maps of an incomplete closure pass"
        )
    return OpennessVerdict(OPEN, checked, closure.complete)


def is_closed(a: KSet, fb: FilterBase, closure: MonoidClosure) -> OpennessVerdict:
    return is_open(~a, fb, closure)


# -- recursions --------------------------------------------------------------


def _pad(chain: list[KSet], depth: int) -> list[KSet]:
    return chain + [chain[-1]] * (depth + 1 - len(chain))


def neighborhood_chain(f: KSet, fb: FilterBase, closure: MonoidClosure, depth: int = 4) -> list[KSet]:
    """``U_0 = {x_0}``, ``U_{n+1} = U_n | {g_a(x_b) : a < b <= k, x_b in f, g_a(x_0) in U_n}``.

    Returns ``depth + 1`` sets; once the chain stabilizes the last set repeats.
    """
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    if not fb.contains_base_set(f):
        raise ValueError("f does not belong to the filter")
    seq, carrier = fb.seq, fb.carrier
    x0 = seq.x0
    in_f = [b for b, x in enumerate(seq.points) if x in f]
    chain = [KSet.singleton(carrier, x0)]
    while len(chain) <= depth:
        cur = chain[-1]
        new = set()
        for a, g in enumerate(closure):
            if g.apply(x0) not in cur:
                continue
            new.update(g.apply(seq.points[b]) for b in in_f if b > a)
        nxt = cur | KSet.finite(carrier, new)
        if nxt == cur:
            break
        chain.append(nxt)
    return _pad(chain, depth)


@dataclass(frozen=True)
class Separation:
    a_chain: tuple[KSet, ...]
    b_chain: tuple[KSet, ...]
    disjoint: bool
    disjoint_at: tuple[bool, ...]
    warnings: tuple[str, ...] = ()

    def to_json(self) -> dict:
        return {
            "disjoint": self.disjoint,
            "disjoint_at_depth": list(self.disjoint_at),
            "A": [s.to_json() for s in self.a_chain],
            "B": [s.to_json() for s in self.b_chain],
            "warnings": list(self.warnings),
        }


def separate(
    a0: KSet, b0: KSet, fb: FilterBase, closure: MonoidClosure, depth: int = 4
) -> Separation:
    """Grow disjoint neighbourhoods of two disjoint closed sets.

    ``A_{n+1} = A_n | {g_a(x_c) : a < c <= k, g_a(x_0) in A_n, g_a(x_c) not in B_n}``
    and symmetrically for ``B``; both updates use the previous pair.
    """
    if not a0.isdisjoint(b0):
        raise ValueError("a0 and b0 must be disjoint")
    warnings = []
    for name, s in (("a0", a0), ("b0", b0)):
        v = is_closed(s, fb, closure)
        if v.status == NOT_OPEN:
            msg = f"{name} is not closed at this truncation (map {v.witness_map})"
            log.warning(msg)
        elif not v.closure_complete:
            msg = f"{name} closedness checked against an incomplete closure"
            log.debug(msg)
        else:
            continue
        warnings.append(msg)

    seq, carrier = fb.seq, fb.carrier
    x0, pts = seq.x0, seq.points
    images = [[g.apply(x) for x in pts] for g in closure]
    at0 = [row[0] for row in images]
    A, B = [a0], [b0]
    for _ in range(depth):
        a, b = A[-1], B[-1]
        grow_a, grow_b = set(), set()
        for i, row in enumerate(images):
            in_a, in_b = at0[i] in a, at0[i] in b
            if not (in_a or in_b):
                continue
            for c in range(i + 1, len(pts)):
                y = row[c]
                if in_a and y not in b:
                    grow_a.add(y)
                if in_b and y not in a:
                    grow_b.add(y)
        A.append(a | KSet.finite(carrier, grow_a))
        B.append(b | KSet.finite(carrier, grow_b))
    disjoint_at = tuple(x.isdisjoint(y) for x, y in zip(A, B))
    return Separation(tuple(A), tuple(B), all(disjoint_at), disjoint_at, tuple(warnings))


@dataclass(frozen=True)
class T1Cut:
    map_index: int
    cutoff: int
    # cutoff < k: the tail past the cutoff is a base set of the tail filter
    in_base: bool

    def to_json(self) -> dict:
        return {"map": self.map_index, "cutoff": self.cutoff, "in_base": self.in_base}


def t1_witness(x: int, fb: FilterBase, closure: MonoidClosure) -> list[T1Cut]:
    """Least cutoffs witnessing that ``X - {x}`` is open.

    For each map ``g`` with ``g(x_0) != x``, the least ``alpha <= k`` with
    ``g(x_beta) != x`` for all ``beta > alpha``.  A cutoff equal to ``k``
    is vacuous inside the truncation and is flagged with ``in_base=False``.
    """
    seq = fb.seq
    pts, k = seq.points, seq.k
    out = []
    for i, g in enumerate(closure):
        if g.apply(seq.x0) == x:
            continue
        last_hit = max((b for b in range(1, k + 1) if g.apply(pts[b]) == x), default=0)
        out.append(T1Cut(i, last_hit, last_hit < k))
    return out


def orbit(f: KSet, closure: MonoidClosure) -> KSet:
    """``{g(x) : g in closure, x in f}`` for finite ``f``."""
    if not f.is_finite:
        raise ValueError("orbit needs a finite set")
    return KSet.finite(f.carrier, {g.apply(x) for g in closure for x in f.points()})


# -- cardinal invariants of the truncated base -------------------------------


@dataclass(frozen=True)
class BaseInvariant:
    value: int
    witness: tuple[int, ...]
    exact: bool = True


def filter_pseudocharacter(fb: FilterBase, node_budget: int = 200_000) -> BaseInvariant:
    """Fewest base sets whose intersection equals the intersection of the base."""
    base = fb.base
    core = fb.core()
    support = list(fb.seq.points)
    bit = {p: 1 << n for n, p in enumerate(support)}
    outside = sum(bit[p] for p in support if p not in core)
    if outside == 0:
        return BaseInvariant(1, (0,))
    # a family reaches the core iff the complements cover support - core
    cover_sets = [sum(bit[p] for p in support if p not in b) for b in base]
    size, picked, exact = min_cover(outside, cover_sets, node_budget)
    lex = lex_least_cover(outside, cover_sets, size, node_budget) if exact else None
    return BaseInvariant(size, tuple(lex if lex is not None else picked), exact)


def filter_character(fb: FilterBase, node_budget: int = 200_000) -> BaseInvariant:
    """Fewest base sets such that every base set contains one of them."""
    base = fb.base
    n = len(base)
    # set i "covers" base set j when base[i] is inside base[j]
    cover_sets = [sum(1 << j for j in range(n) if base[i].issubset(base[j])) for i in range(n)]
    size, picked, exact = min_cover((1 << n) - 1, cover_sets, node_budget)
    lex = lex_least_cover((1 << n) - 1, cover_sets, size, node_budget) if exact else None
    return BaseInvariant(size, tuple(lex if lex is not None else picked), exact)
