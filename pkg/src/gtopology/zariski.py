"""Zariski subbase of a monoid closure, isolation and pseudocharacter.

The subbase consists of the difference sets ``{x : f(x) != g(x)}`` for
pairs of closure elements and ``{x : f(x) != c}`` for constants ``c`` in a
window.  All verdicts are relative to that truncation, and reports carry the
truncation parameters.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from ._cover import lex_least_cover, min_cover
from .acts import MonoidClosure, diff_const, diff_set, evaluation_profile
from .carriers import NatLine, check_point
from .errors import BudgetExceededError
from .sets import KSet, intersect_all

INFINITE = math.inf

DEFAULT_PAIR_BUDGET = 6_000_000
DEFAULT_NODE_BUDGET = 200_000


@dataclass(frozen=True, order=True)
class Diff:
    """Tag of ``{x : g_i(x) != g_j(x)}``."""

    i: int
    j: int

    @property
    def sort_key(self):
        return (self.i, self.j, 0)

    def __str__(self):
        return f"diff({self.i},{self.j})"


@dataclass(frozen=True, order=True)
class DiffConst:
    """Tag of ``{x : g_i(x) != c}``."""

    i: int
    c: int

    @property
    def sort_key(self):
        return (self.i, self.c, 1)

    def __str__(self):
        return f"const({self.i},{self.c})"


@dataclass(frozen=True)
class Whole:
    """Tag of the whole carrier (always available as a neighbourhood)."""

    @property
    def sort_key(self):
        return (-1, 0, 0)

    def __str__(self):
        return "X"


Tag = Diff | DiffConst | Whole


def parse_tag(s: str) -> Tag:
    s = s.strip()
    if s == "X":
        return Whole()
    head, _, rest = s.partition("(")
    a, b = (int(v) for v in rest.rstrip(")").split(","))
    if head == "diff":
        return Diff(a, b)
    if head == "const":
        return DiffConst(a, b)
    raise ValueError(f"bad tag {s!r}")


def tag_set(tag: Tag, closure: MonoidClosure) -> KSet:
    """Recompute the set a tag denotes, straight from the closure."""
    if isinstance(tag, Diff):
        return diff_set(closure[tag.i], closure[tag.j])
    if isinstance(tag, DiffConst):
        return diff_const(closure[tag.i], tag.c)
    return KSet.full(closure.carrier)


@dataclass(frozen=True)
class SubbasicSet:
    tag: Tag
    set: KSet


@dataclass(frozen=True)
class Subbase:
    closure: MonoidClosure
    const_window: tuple[int, ...]
    sets: tuple[SubbasicSet, ...]
    candidates: int = 0

    @property
    def carrier(self):
        return self.closure.carrier

    def __len__(self):
        return len(self.sets)

    def members(self, x: int) -> list[SubbasicSet]:
        return [s for s in self.sets if x in s.set]

    def parameters(self) -> dict:
        c = self.closure
        return {
            "carrier": self.carrier.to_json(),
            "closure_size": len(c),
            "max_word_len": c.max_word_len,
            "closure_complete": c.complete,
            "const_window": [min(self.const_window), max(self.const_window) + 1] if self.const_window else [],
            "subbase_size": len(self.sets),
        }


def build_subbase(
    closure: MonoidClosure,
    const_window: Iterable[int],
    pair_budget: int = DEFAULT_PAIR_BUDGET,
) -> Subbase:
    """Materialize and deduplicate all difference sets of the closure.

    Candidates are streamed in tag order, lexicographic on
    ``(i, j or c, kind)`` with ``Diff`` before ``DiffConst`` on ties; each
    distinct set keeps the first tag that produced it.  Deduplication runs on packed evaluation keys; the kept sets
    themselves are recomputed by :func:`diff_set`.
    """
    carrier = closure.carrier
    window = tuple(sorted({check_point(carrier, c) for c in const_window}))
    if not window:
        raise ValueError("const_window must be nonempty")
    maps = closure.elements
    m, w = len(maps), len(window)
    n_cand = m * (m - 1) // 2 + m * w
    if n_cand > pair_budget:
        raise BudgetExceededError(
            f"subbase needs {n_cand} candidate sets (closure {m}, constants {w}); budget {pair_budget}"
        )
    pts, vals, tails = evaluation_profile(maps, window)
    is_nat = isinstance(carrier, NatLine)

    blocks, tags_i, tags_j = [], [], []
    for i in range(m):
        js = np.arange(i + 1, m + w)
        if js.size == 0:
            continue
        blocks.append(_keys(i, js, pts, vals, tails, is_nat))
        tags_i.append(np.full(js.size, i))
        tags_j.append(js)
    ti, tj = np.concatenate(tags_i), np.concatenate(tags_j)
    keys = np.concatenate(blocks)
    is_const = tj >= m
    second = np.where(is_const, np.asarray(window)[np.maximum(tj - m, 0)], tj)
    order = np.lexsort((is_const, second, ti))
    ti, tj, keys = ti[order], tj[order], keys[order]
    void = np.ascontiguousarray(keys).view(np.dtype((np.void, keys.shape[1]))).ravel()
    _, first = np.unique(void, return_index=True)
    first.sort()

    sets = []
    for k in first:
        i, j = int(ti[k]), int(tj[k])
        if j < m:
            tag = Diff(i, j)
            s = diff_set(maps[i], maps[j])
        else:
            tag = DiffConst(i, window[j - m])
            s = diff_const(maps[i], tag.c)
        sets.append(SubbasicSet(tag, s))
    return Subbase(closure, window, tuple(sets), n_cand)


def _keys(i, js, pts, vals, tails, is_nat) -> np.ndarray:
    """Byte keys identifying the sets ``{x : row_i(x) != row_j(x)}``."""
    same_tail = np.all(tails[js] == tails[i], axis=1)
    neq = vals[js] != vals[i]
    bits = np.where(same_tail[:, None], neq, ~neq)
    a_i, b_i = tails[i]
    da = a_i - tails[js, 0]
    db = tails[js, 1] - b_i
    safe = np.where(da == 0, 1, da)
    has_root = (~same_tail) & (da != 0) & (db % safe == 0)
    root = np.where(has_root, db // safe, 0)
    if is_nat:
        has_root &= root >= 0
    if pts.size:
        has_root &= ~np.isin(root, pts)
    root = np.where(has_root, root, 0)
    head = np.stack([~same_tail, has_root], axis=1).astype(np.uint8)
    packed = np.packbits(bits, axis=1) if bits.shape[1] else np.zeros((len(js), 0), np.uint8)
    return np.concatenate([head, root.astype("<i8").view(np.uint8).reshape(-1, 8), packed], axis=1)


# -- certificates ------------------------------------------------------------

ISOLATION = "isolation"
PSEUDOCHARACTER = "pseudocharacter"


@dataclass(frozen=True)
class Certificate:
    point: int
    members: tuple[Tag, ...]
    kind: str

    def to_json(self) -> list[str]:
        return [str(t) for t in self.members]


@dataclass(frozen=True)
class PsiResult:
    value: int | float
    certificate: Certificate | None
    exact: bool = True

    def to_json(self) -> dict:
        return {
            "value": "infinite" if self.value == INFINITE else self.value,
            "cert": self.certificate.to_json() if self.certificate else None,
            "exact": self.exact,
        }


def verify_certificate(cert: Certificate, closure: MonoidClosure, target: KSet | None = None) -> bool:
    """Re-check a certificate by recomputing each member from its tag."""
    carrier = closure.carrier
    sets = [tag_set(t, closure) for t in cert.members]
    if not all(cert.point in s for s in sets):
        return False
    inter = intersect_all(sets, carrier)
    if cert.kind == ISOLATION:
        return inter == KSet.singleton(carrier, cert.point)
    return target is None or inter == target


def _search(subbase: Subbase, x: int, target: KSet, members: Sequence[SubbasicSet], node_budget: int):
    """Minimum subfamily of ``members`` intersecting exactly to ``target``.

    Returns ``(value, tags, exact)``; value is INFINITE when no finite
    subfamily can reach a finite target.
    """
    carrier = subbase.carrier
    if target.is_full:
        return 1, (Whole(),), True
    if carrier.is_finite:
        universe = ~target.mask & ((1 << carrier.size) - 1)
        cover_sets = [universe & ~s.set.mask for s in members]
        return _best_cover(universe, cover_sets, members, node_budget)
    if not target.is_finite:
        return INFINITE, None, True
    for s in members:
        if s.set == target:
            return 1, (s.tag,), True
    anchors = [k for k, s in enumerate(members) if s.set.is_finite]
    if not anchors:
        return INFINITE, None, True
    # each member as (is_cofinite, point set): excluded points or members
    shapes = [(s.set.kind != "finite", frozenset(s.set.data)) for s in members]
    results = []
    exact = True
    best_total = math.inf
    for a in anchors:
        rest = [p for p in members[a].set.points() if p not in target]
        bit = {p: 1 << n for n, p in enumerate(rest)}
        rest_set = frozenset(rest)
        universe = (1 << len(rest)) - 1
        cover_sets = []
        for cof, pts in shapes:
            missed = rest_set & pts if cof else rest_set - pts
            cover_sets.append(sum(bit[p] for p in missed))
        size, _, ok = min_cover(universe, cover_sets, node_budget)
        exact &= ok
        if size is None:
            continue
        total = 1 + size
        if total < best_total:
            best_total, results = total, [(a, universe, cover_sets)]
        elif total == best_total:
            results.append((a, universe, cover_sets))
    if not results:
        return INFINITE, None, exact
    best = None
    for a, universe, cover_sets in results:
        picked = lex_least_cover(universe, cover_sets, best_total - 1, node_budget)
        if picked is None:
            _, picked, _ = min_cover(universe, cover_sets, node_budget)
            exact = False
        tags = tuple(sorted({members[a].tag, *(members[i].tag for i in picked)}, key=lambda t: t.sort_key))
        if best is None or [t.sort_key for t in tags] < [t.sort_key for t in best]:
            best = tags
    return best_total, best, exact


def _best_cover(universe, cover_sets, members, node_budget):
    if universe == 0:
        return 1, (Whole(),), True
    size, picked, exact = min_cover(universe, cover_sets, node_budget)
    if size is None:
        return INFINITE, None, True
    lex = lex_least_cover(universe, cover_sets, size, node_budget) if exact else None
    if lex is not None:
        picked = lex
    tags = tuple(sorted((members[i].tag for i in picked), key=lambda t: t.sort_key))
    return size, tags, exact


def isolation(subbase: Subbase, x: int, node_budget: int = DEFAULT_NODE_BUDGET) -> Certificate | None:
    """A smallest family of subbasic sets intersecting exactly to ``{x}``.

    Ties are broken by the lexicographically least tag sequence.  Returns
    None when the enumerated subbase cannot isolate ``x``.
    """
    carrier = subbase.carrier
    x = check_point(carrier, x)
    members = subbase.members(x)
    point = KSet.singleton(carrier, x)
    if intersect_all((s.set for s in members), carrier) != point:
        return None
    value, tags, _ = _search(subbase, x, point, members, node_budget)
    if tags is None:
        return None
    return Certificate(x, tags, ISOLATION)


def pseudocharacter(subbase: Subbase, x: int, node_budget: int = DEFAULT_NODE_BUDGET) -> PsiResult:
    """Pseudocharacter of the subbase at ``x``.

    On finite carriers the target is the intersection of all enumerated
    members through ``x``.  On infinite carriers the full subbase always
    separates points (the sets ``{z : z != y}``), so the target is ``{x}``
    whenever the enumerated members pin ``x`` down to a finite set; if every
    member through ``x`` is cofinite no finite subfamily can reach a finite
    set and the value is infinite.
    """
    carrier = subbase.carrier
    x = check_point(carrier, x)
    members = subbase.members(x)
    target = intersect_all((s.set for s in members), carrier)
    value, tags, exact = _search(subbase, x, target, members, node_budget)
    cert = None if tags is None else Certificate(x, tags, PSEUDOCHARACTER)
    return PsiResult(value, cert, exact)


def discreteness_report(subbase: Subbase, probe: Iterable[int], with_psi: bool = True) -> dict:
    """Isolation (and optionally pseudocharacter) at each probe point.

    A non-discreteness witness is the non-isolated probe point nearest the
    origin, smaller value first on ties.
    """
    records = []
    missing = []
    for x in probe:
        cert = isolation(subbase, x)
        rec = {"point": int(x), "isolated": cert is not None, "certificate": cert.to_json() if cert else None}
        if with_psi:
            rec["psi"] = pseudocharacter(subbase, x).to_json()
        records.append(rec)
        if cert is None:
            missing.append(int(x))
    witness = min(missing, key=lambda p: (abs(p), p)) if missing else None
    summary = {"verdict": "discrete-on-probe"} if witness is None else {"verdict": "non-discrete-witness", "point": witness}
    return {"parameters": subbase.parameters(), "summary": summary, "points": records}


# -- finite topologies -------------------------------------------------------


@dataclass(frozen=True)
class Topology:
    """Topology on a finite carrier, stored as minimal open neighbourhoods.

    On a finite space the intersection of all subbasic sets through ``x`` is
    itself open, and a set is open iff it contains the minimal neighbourhood
    of each of its points.
    """

    carrier: object
    neighborhoods: tuple[int, ...]

    def is_open(self, u: KSet | int) -> bool:
        mask = u.mask if isinstance(u, KSet) else int(u)
        m = mask
        while m:
            low = m & -m
            if self.neighborhoods[low.bit_length() - 1] & ~mask:
                return False
            m ^= low
        return True

    def minimal_base(self) -> list[int]:
        return sorted(set(self.neighborhoods))

    @property
    def is_discrete(self) -> bool:
        return all(n == 1 << x for x, n in enumerate(self.neighborhoods))

    def pseudocharacter(self, x: int) -> int:
        return 1

    def open_sets(self, limit: int = 1 << 16) -> list[int]:
        """All open sets as masks, sorted; raises if there are more than ``limit``."""
        opens = {0}
        for nb in self.minimal_base():
            opens |= {o | nb for o in opens}
            if len(opens) > limit:
                raise BudgetExceededError(f"topology has more than {limit} open sets")
        return sorted(opens)


def generate_topology(subbase: Subbase) -> Topology:
    carrier = subbase.carrier
    if not carrier.is_finite:
        raise ValueError("generate_topology needs a finite carrier")
    full = (1 << carrier.size) - 1
    nbhd = [full] * carrier.size
    for s in subbase.sets:
        m = s.set.mask
        rest = m
        while rest:
            low = rest & -rest
            x = low.bit_length() - 1
            nbhd[x] &= m
            rest ^= low
    return Topology(carrier, tuple(nbhd))
