"""Carriers: the underlying sets that maps act on.

Points are plain integers.  ``IntLine`` and ``NatLine`` use their own values;
``FiniteSet`` indexes its elements ``0..n-1``; ``GroupPower`` indexes tuples
of ``H^n`` lexicographically.  Display windows are presentation only and do
not take part in carrier equality.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import BudgetExceededError, PointError
from .groups import FiniteGroup, named_group

DEFAULT_SIZE_BUDGET = 100_000


def _check_window(window: tuple[int, int]) -> tuple[int, int]:
    lo, hi = (int(window[0]), int(window[1]))
    if hi <= lo:
        raise ValueError(f"window [{lo}, {hi}) is empty")
    return lo, hi


@dataclass(frozen=True)
class IntLine:
    """The integers, with a display window ``[lo, hi)``."""

    window: tuple[int, int] = field(default=(-16, 16), compare=False)

    def __post_init__(self):
        object.__setattr__(self, "window", _check_window(self.window))

    is_finite = False

    def contains(self, x) -> bool:
        return isinstance(x, (int, np.integer)) and not isinstance(x, bool)

    def window_points(self) -> range:
        return range(*self.window)

    def to_json(self) -> dict:
        return {"kind": "int", "window": list(self.window)}


@dataclass(frozen=True)
class NatLine:
    """The naturals {0, 1, 2, ...}, with a display window ``[lo, hi)``."""

    window: tuple[int, int] = field(default=(0, 16), compare=False)

    def __post_init__(self):
        lo, hi = _check_window(self.window)
        if lo < 0:
            raise ValueError("NatLine window must start at 0 or above")
        object.__setattr__(self, "window", (lo, hi))

    is_finite = False

    def contains(self, x) -> bool:
        return isinstance(x, (int, np.integer)) and not isinstance(x, bool) and x >= 0

    def window_points(self) -> range:
        return range(*self.window)

    def to_json(self) -> dict:
        return {"kind": "nat", "window": list(self.window)}


@dataclass(frozen=True)
class FiniteSet:
    n: int

    def __post_init__(self):
        if self.n <= 0:
            raise ValueError("FiniteSet needs at least one element")

    is_finite = True

    @property
    def size(self) -> int:
        return self.n

    @property
    def window(self) -> tuple[int, int]:
        return (0, self.n)

    def contains(self, x) -> bool:
        return isinstance(x, (int, np.integer)) and not isinstance(x, bool) and 0 <= x < self.n

    def points(self) -> range:
        return range(self.n)

    window_points = points

    def to_json(self) -> dict:
        return {"kind": "finite", "n": self.n}


@dataclass(frozen=True)
class GroupPower:
    """The group ``H^n`` as a carrier; point ``i`` encodes a tuple in base |H|."""

    group: FiniteGroup
    n: int
    size_budget: int = field(default=DEFAULT_SIZE_BUDGET, compare=False)

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("exponent must be at least 1")
        if self.group.order**self.n > self.size_budget:
            raise BudgetExceededError(
                f"|H|^n = {self.group.order}^{self.n} exceeds size budget {self.size_budget}"
            )

    is_finite = True

    @property
    def size(self) -> int:
        return self.group.order**self.n

    @property
    def window(self) -> tuple[int, int]:
        return (0, self.size)

    def contains(self, x) -> bool:
        return isinstance(x, (int, np.integer)) and not isinstance(x, bool) and 0 <= x < self.size

    def points(self) -> range:
        return range(self.size)

    window_points = points

    def encode(self, coords) -> int:
        k = self.group.order
        x = 0
        for c in coords:
            x = x * k + int(c)
        return x

    def decode(self, x: int) -> tuple[int, ...]:
        k = self.group.order
        out = []
        for _ in range(self.n):
            x, r = divmod(x, k)
            out.append(r)
        return tuple(reversed(out))

    @cached_property
    def _coords(self) -> np.ndarray:
        k = self.group.order
        idx = np.arange(self.size)
        return np.stack([(idx // k ** (self.n - 1 - a)) % k for a in range(self.n)], axis=1)

    @cached_property
    def mul_table(self) -> np.ndarray:
        """Full multiplication table of H^n as an array (size x size)."""
        coords = self._coords
        h = np.asarray(self.group.table)
        k = self.group.order
        prod = h[coords[:, None, :], coords[None, :, :]]
        weights = k ** np.arange(self.n - 1, -1, -1)
        return prod @ weights

    def mul(self, x: int, y: int) -> int:
        return int(self.mul_table[x, y])

    def inv(self, x: int) -> int:
        return self.encode(self.group.inv(c) for c in self.decode(x))

    @property
    def identity(self) -> int:
        return self.encode([self.group.identity] * self.n)

    def embed(self, alpha: int, a: int) -> int:
        """The point with coordinate ``alpha`` equal to ``a`` and identity elsewhere."""
        coords = [self.group.identity] * self.n
        coords[alpha] = a
        return self.encode(coords)

    def project(self, x: int, alpha: int) -> int:
        return self.decode(x)[alpha]

    def to_json(self) -> dict:
        return {"kind": "group-power", "group": self.group.to_json(), "n": self.n}


Carrier = IntLine | NatLine | FiniteSet | GroupPower


def check_point(carrier, x) -> int:
    if not carrier.contains(x):
        raise PointError(f"point {x!r} is not in carrier {carrier.to_json()}")
    return int(x)


def carrier_from_json(d: dict):
    kind = d.get("kind")
    if kind == "int":
        return IntLine(tuple(d.get("window", (-16, 16))))
    if kind == "nat":
        return NatLine(tuple(d.get("window", (0, 16))))
    if kind == "finite":
        return FiniteSet(int(d["n"]))
    if kind == "group-power":
        g = d["group"]
        if isinstance(g, str):
            group = named_group(g)
        else:
            group = FiniteGroup(tuple(map(tuple, g["table"])), name=g.get("name", "H"))
        return GroupPower(group, int(d["n"]), size_budget=int(d.get("size_budget", DEFAULT_SIZE_BUDGET)))
    raise ValueError(f"unknown carrier kind {kind!r}")
