"""Exact finite / cofinite / bitset subsets of a carrier.

Over a finite carrier every set is a ``bitset`` (a Python int mask, bit ``x``
set iff ``x`` is a member).  Over an infinite carrier a set is either
``finite`` (sorted member list) or ``cofinite`` (sorted list of excluded
points).  Constructors canonicalize, so two KSets are equal exactly when their
dataclass fields are.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Iterator

from .carriers import carrier_from_json, check_point
from .errors import CarrierMismatchError

FINITE = "finite"
COFINITE = "cofinite"
BITSET = "bitset"


@dataclass(frozen=True)
class KSet:
    carrier: object
    kind: str
    data: tuple[int, ...] | int

    # -- construction -----------------------------------------------------

    @classmethod
    def finite(cls, carrier, points: Iterable[int] = ()) -> KSet:
        pts = {check_point(carrier, x) for x in points}
        if carrier.is_finite:
            mask = 0
            for x in pts:
                mask |= 1 << x
            return cls(carrier, BITSET, mask)
        return cls(carrier, FINITE, tuple(sorted(pts)))

    @classmethod
    def cofinite(cls, carrier, excluded: Iterable[int] = ()) -> KSet:
        pts = {check_point(carrier, x) for x in excluded}
        if carrier.is_finite:
            return ~cls.finite(carrier, pts)
        return cls(carrier, COFINITE, tuple(sorted(pts)))

    @classmethod
    def from_mask(cls, carrier, mask: int) -> KSet:
        if not carrier.is_finite:
            raise ValueError("bitsets exist only over finite carriers")
        return cls(carrier, BITSET, int(mask) & ((1 << carrier.size) - 1))

    @classmethod
    def empty(cls, carrier) -> KSet:
        return cls.finite(carrier, ())

    @classmethod
    def full(cls, carrier) -> KSet:
        return cls.cofinite(carrier, ())

    @classmethod
    def singleton(cls, carrier, x: int) -> KSet:
        return cls.finite(carrier, (x,))

    # -- queries ----------------------------------------------------------

    @property
    def is_finite(self) -> bool:
        return self.kind != COFINITE

    @property
    def is_cofinite(self) -> bool:
        """True for sets with finite complement (every bitset qualifies)."""
        return self.kind != FINITE

    @property
    def is_empty(self) -> bool:
        return self.data == 0 if self.kind == BITSET else (self.kind == FINITE and not self.data)

    @property
    def is_full(self) -> bool:
        if self.kind == BITSET:
            return self.data == (1 << self.carrier.size) - 1
        return self.kind == COFINITE and not self.data

    @property
    def mask(self) -> int:
        if self.kind != BITSET:
            raise ValueError("mask is only defined for bitsets")
        return self.data

    def size(self) -> int | float:
        if self.kind == BITSET:
            return self.data.bit_count()
        if self.kind == FINITE:
            return len(self.data)
        return math.inf

    def __len__(self) -> int:
        s = self.size()
        if s == math.inf:
            raise ValueError("cofinite set over an infinite carrier has no finite length")
        return s

    def __contains__(self, x) -> bool:
        if not self.carrier.contains(x):
            return False
        x = int(x)
        if self.kind == BITSET:
            return bool(self.data >> x & 1)
        if self.kind == FINITE:
            return x in self._lookup
        return x not in self._lookup

    @property
    def _lookup(self) -> frozenset:
        cache = self.__dict__.get("_lookup_cache")
        if cache is None:
            cache = frozenset(self.data)
            object.__setattr__(self, "_lookup_cache", cache)
        return cache

    def points(self) -> Iterator[int]:
        """Members in increasing order; only for finite sets."""
        if self.kind == FINITE:
            return iter(self.data)
        if self.kind == BITSET:
            m = self.data
            return (x for x in range(m.bit_length()) if m >> x & 1)
        raise ValueError("cannot enumerate a cofinite set over an infinite carrier")

    def excluded(self) -> tuple[int, ...]:
        """The complement as a sorted tuple (cofinite sets, bitsets)."""
        if self.kind == COFINITE:
            return self.data
        if self.kind == BITSET:
            return tuple((~self).points())
        raise ValueError("complement of a finite set over an infinite carrier is infinite")

    def singleton_point(self) -> int | None:
        if self.kind == FINITE:
            return self.data[0] if len(self.data) == 1 else None
        if self.kind == BITSET:
            m = self.data
            return m.bit_length() - 1 if m and m & (m - 1) == 0 else None
        return None

    def restrict(self, lo: int, hi: int) -> frozenset:
        """Members inside ``[lo, hi)`` as a frozenset."""
        return frozenset(x for x in range(lo, hi) if x in self)

    # -- algebra ----------------------------------------------------------

    def _same(self, other: KSet) -> None:
        if not isinstance(other, KSet):
            raise TypeError(f"expected KSet, got {type(other).__name__}")
        if self.carrier != other.carrier:
            raise CarrierMismatchError(
                f"carrier mismatch: {self.carrier.to_json()} vs {other.carrier.to_json()}"
            )

    def __and__(self, other: KSet) -> KSet:
        self._same(other)
        c = self.carrier
        if self.kind == BITSET:
            return KSet(c, BITSET, self.data & other.data)
        a, b = self, other
        if a.kind == COFINITE and b.kind == COFINITE:
            return KSet(c, COFINITE, tuple(sorted(set(a.data) | set(b.data))))
        if a.kind == COFINITE:
            a, b = b, a
        if b.kind == FINITE:
            return KSet(c, FINITE, tuple(sorted(set(a.data) & set(b.data))))
        return KSet(c, FINITE, tuple(x for x in a.data if x not in b._lookup))

    def __or__(self, other: KSet) -> KSet:
        self._same(other)
        c = self.carrier
        if self.kind == BITSET:
            return KSet(c, BITSET, self.data | other.data)
        a, b = self, other
        if a.kind == FINITE and b.kind == FINITE:
            return KSet(c, FINITE, tuple(sorted(set(a.data) | set(b.data))))
        if a.kind == FINITE:
            a, b = b, a
        if b.kind == COFINITE:
            return KSet(c, COFINITE, tuple(sorted(set(a.data) & set(b.data))))
        return KSet(c, COFINITE, tuple(x for x in a.data if x not in b._lookup))

    def __invert__(self) -> KSet:
        c = self.carrier
        if self.kind == BITSET:
            return KSet(c, BITSET, ~self.data & ((1 << c.size) - 1))
        return KSet(c, COFINITE if self.kind == FINITE else FINITE, self.data)

    def __sub__(self, other: KSet) -> KSet:
        return self & ~other

    def issubset(self, other: KSet) -> bool:
        return (self - other).is_empty

    __le__ = issubset

    def isdisjoint(self, other: KSet) -> bool:
        return (self & other).is_empty

    # -- serialization ----------------------------------------------------

    def to_json(self) -> dict:
        if self.kind == BITSET:
            return {"kind": BITSET, "points": list(self.points())}
        return {"kind": self.kind, "points": list(self.data)}

    @classmethod
    def from_json(cls, d: dict, carrier) -> KSet:
        kind, pts = d["kind"], d.get("points", [])
        if kind in (FINITE, BITSET):
            return cls.finite(carrier, pts)
        if kind == COFINITE:
            return cls.cofinite(carrier, pts)
        raise ValueError(f"unknown KSet kind {kind!r}")

    def __repr__(self) -> str:
        if self.kind == COFINITE:
            return f"Cofinite{set(self.data) or '{}'}"
        pts = list(self.points())
        head = "Bitset" if self.kind == BITSET else "Finite"
        return f"{head}{{{', '.join(map(str, pts))}}}"


def intersect(a: KSet, b: KSet) -> KSet:
    return a & b


def union(a: KSet, b: KSet) -> KSet:
    return a | b


def complement(a: KSet) -> KSet:
    return ~a


def contains(a: KSet, x: int) -> bool:
    return x in a


def is_singleton(a: KSet) -> int | None:
    return a.singleton_point()


def equals(a: KSet, b: KSet) -> bool:
    a._same(b)
    return a == b


def intersect_all(sets: Iterable[KSet], carrier) -> KSet:
    out = KSet.full(carrier)
    for s in sets:
        out = out & s
    return out


def kset_from_json(d: dict, carrier_json: dict | None = None, carrier=None) -> KSet:
    if carrier is None:
        carrier = carrier_from_json(carrier_json)
    return KSet.from_json(d, carrier)
