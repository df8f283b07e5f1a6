"""Special sequences over a truncated monoid enumeration.

A sequence ``x_0, ..., x_k`` is special for the enumeration ``g_0, ..., g_m``
when for every ``alpha`` and all ``beta, gamma < min(alpha, m + 1)``,
``delta < alpha``:

1. ``g_beta(x_0) != g_gamma(x_0)`` implies ``g_beta(x_alpha) != g_gamma(x_alpha)``;
2. ``g_beta(x_0) != g_gamma(x_delta)`` implies ``g_beta(x_alpha) != g_gamma(x_delta)``.

Enumeration indices past the end of the closure impose nothing.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Iterable, Sequence

from .acts import MonoidClosure, diff_const, diff_set, map_from_json
from .carriers import carrier_from_json, check_point
from .errors import WindowTooSmallError


@dataclass(frozen=True)
class SpecialSequence:
    closure: MonoidClosure
    points: tuple[int, ...]
    verified: bool = False

    def __post_init__(self):
        pts = tuple(check_point(self.carrier, x) for x in self.points)
        if not pts:
            raise ValueError("a special sequence needs at least x_0")
        if len(set(pts)) != len(pts):
            raise ValueError("sequence points must be pairwise distinct")
        object.__setattr__(self, "points", pts)

    @property
    def carrier(self):
        return self.closure.carrier

    @property
    def x0(self) -> int:
        return self.points[0]

    @property
    def k(self) -> int:
        """Index of the last point."""
        return len(self.points) - 1

    def prefix(self, length: int) -> SpecialSequence:
        return SpecialSequence(self.closure, self.points[:length], False)

    def to_json(self) -> dict:
        return {
            "carrier": self.carrier.to_json(),
            "enumeration": [g.to_json() for g in self.closure],
            "points": list(self.points),
            "verified": self.verified,
        }

    @classmethod
    def from_json(cls, d: dict) -> SpecialSequence:
        carrier = carrier_from_json(d["carrier"])
        maps = tuple(map_from_json(m, carrier) for m in d["enumeration"])
        cl = MonoidClosure(maps, maps[1:], 0, False)
        return cls(cl, tuple(d["points"]), False)


@dataclass(frozen=True)
class SpecialVerdict:
    ok: bool
    violation: tuple[int, int, int, int] | None = None
    condition: int | None = None
    checked: int = 0
    # the sequence is longer than the enumeration; later indices impose nothing
    padded: bool = False

    def __bool__(self):
        return self.ok

    def to_json(self) -> dict:
        d = {"ok": self.ok, "checked": self.checked, "padded": self.padded}
        if not self.ok:
            a, b, g, dl = self.violation
            d["violation"] = {"alpha": a, "beta": b, "gamma": g, "delta": dl, "condition": self.condition}
        return d


def _value_table(closure: MonoidClosure, points: Sequence[int]) -> list[list[int]]:
    """``vals[i][a] = g_i(x_a)``."""
    return [[g.apply(x) for x in points] for g in closure]


def verify_special(seq: SpecialSequence) -> SpecialVerdict:
    """Check both conditions; report the first violating (alpha, beta, gamma, delta)."""
    cl, pts = seq.closure, seq.points
    m1 = len(cl)
    vals = _value_table(cl, pts)
    checked = 0
    for alpha in range(1, len(pts)):
        lim = min(alpha, m1)
        for beta in range(lim):
            vb = vals[beta]
            for gamma in range(lim):
                vg = vals[gamma]
                checked += 1
                if vb[0] != vg[0] and vb[alpha] == vg[alpha]:
                    return SpecialVerdict(False, (alpha, beta, gamma, 0), 1, checked, len(pts) > m1)
                for delta in range(alpha):
                    checked += 1
                    if vb[0] != vg[delta] and vb[alpha] == vg[delta]:
                        return SpecialVerdict(False, (alpha, beta, gamma, delta), 2, checked, len(pts) > m1)
    return SpecialVerdict(True, None, None, checked, len(pts) > m1)


def constraint_sets(closure: MonoidClosure, points: Sequence[int], alpha: int):
    """The sets U_{beta,gamma} and V_{beta,gamma,delta} constraining ``x_alpha``.

    Yields only the nontrivial ones (sets that are not the whole carrier).
    """
    vals = _value_table(closure, points[:alpha])
    lim = min(alpha, len(closure))
    for beta in range(lim):
        gb = closure[beta]
        for gamma in range(lim):
            if gamma != beta and vals[beta][0] != vals[gamma][0]:
                yield diff_set(gb, closure[gamma])
            for delta in range(alpha):
                c = vals[gamma][delta]
                if vals[beta][0] != c:
                    yield diff_const(gb, c)


def build_special(
    closure: MonoidClosure,
    x0: int,
    length: int,
    search_window: Iterable[int] | tuple[int, int],
) -> SpecialSequence:
    """Greedy construction: each new point is the least admissible window point.

    The admissible set at step ``alpha`` is the intersection of all
    U_{beta,gamma} and V_{beta,gamma,delta} minus the points already used.
    """
    if length < 1:
        raise ValueError("length must be at least 1")
    carrier = closure.carrier
    if isinstance(search_window, tuple) and len(search_window) == 2:
        search_window = range(*search_window)
    window = [check_point(carrier, x) for x in search_window]
    points = [check_point(carrier, x0)]
    for alpha in range(1, length):
        excluded: set[int] = set(points)
        allowed: set[int] | None = None
        for s in constraint_sets(closure, points, alpha):
            if s.is_finite:
                pts = set(s.points())
                allowed = pts if allowed is None else allowed & pts
            else:
                excluded.update(s.excluded())
        pick = next(
            (x for x in window if x not in excluded and (allowed is None or x in allowed)),
            None,
        )
        if pick is None:
            raise WindowTooSmallError(alpha)
        points.append(pick)
    seq = SpecialSequence(closure, tuple(points))
    verdict = verify_special(seq)
    if not verdict.ok:
        raise AssertionError(f"greedy construction produced a non-special sequence: {verdict}")
    return replace(seq, verified=True)


def mark_verified(seq: SpecialSequence) -> SpecialSequence:
    """Return ``seq`` flagged as verified, or raise if it is not special."""
    v = verify_special(seq)
    if not v.ok:
        raise ValueError(f"sequence is not special: {v.to_json()}")
    return replace(seq, verified=True)
