"""Self-maps of a carrier, composition, difference sets and monoid closure.

Every supported map on an infinite carrier agrees with an affine *tail*
``x -> a*x + b`` outside a finite exceptional region.  That single fact makes
extensional equality decidable and every difference set finite or cofinite:
compare pointwise on the union of the two regions and solve one linear
equation for the tails.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .carriers import FiniteSet, GroupPower, IntLine, NatLine, carrier_from_json, check_point
from .errors import BudgetExceededError, CarrierMismatchError, HeterogeneousMapsError
from .sets import KSet


class EndoMap:
    carrier: object

    cls_name: str = ""

    def __call__(self, x: int) -> int:
        return self.apply(check_point(self.carrier, x))

    def apply(self, x: int) -> int:
        raise NotImplementedError

    def region(self) -> tuple[int, ...]:
        """Finite set of points outside which the map equals its tail."""
        return ()

    def tail(self) -> tuple[int, int]:
        raise NotImplementedError

    @property
    def is_identity(self) -> bool:
        return self.key() == identity_key(self.carrier)

    def key(self) -> tuple:
        """Canonical extensional key: equal keys iff equal maps."""
        c = self.carrier
        if c.is_finite:
            return ("t", tuple(self.apply(x) for x in c.points()))
        a, b = self.tail()
        exc = tuple((x, y) for x in sorted(self.region()) if (y := self.apply(x)) != a * x + b)
        return ("i", a, b, exc)

    def to_json(self) -> dict:
        raise NotImplementedError


@dataclass(frozen=True)
class Affine(EndoMap):
    """``x -> a*x + b`` on the integers."""

    carrier: IntLine
    a: int
    b: int
    cls_name = "affine"

    def __post_init__(self):
        if not isinstance(self.carrier, IntLine):
            raise TypeError("Affine maps live on IntLine")

    def apply(self, x):
        return self.a * x + self.b

    def tail(self):
        return (self.a, self.b)

    def to_json(self):
        return {"class": "affine", "a": self.a, "b": self.b}


@dataclass(frozen=True)
class MaxShift(EndoMap):
    """``x -> max(x, c)`` on the naturals."""

    carrier: NatLine
    c: int
    cls_name = "maxshift"

    def __post_init__(self):
        if not isinstance(self.carrier, NatLine):
            raise TypeError("MaxShift maps live on NatLine")
        check_point(self.carrier, self.c)

    def apply(self, x):
        return x if x > self.c else self.c

    def region(self):
        return tuple(range(self.c))

    def tail(self):
        return (1, 0)

    def to_json(self):
        return {"class": "maxshift", "c": self.c}


@dataclass(frozen=True)
class FinSuppPerm(EndoMap):
    """A bijection equal to the identity outside a finite support.

    ``table`` holds the moved points as sorted ``(x, f(x))`` pairs.
    """

    carrier: object
    table: tuple[tuple[int, int], ...] = ()
    cls_name = "perm"

    def __post_init__(self):
        if self.carrier.is_finite:
            raise TypeError("FinSuppPerm maps live on infinite carriers")
        pairs = {}
        for x, y in self.table:
            x, y = check_point(self.carrier, x), check_point(self.carrier, y)
            if x in pairs and pairs[x] != y:
                raise ValueError(f"point {x} mapped twice")
            pairs[x] = y
        if set(pairs) != set(pairs.values()):
            raise ValueError("permutation table is not a bijection of its domain")
        object.__setattr__(self, "table", tuple(sorted((x, y) for x, y in pairs.items() if x != y)))
        object.__setattr__(self, "_map", dict(self.table))

    @classmethod
    def cycle(cls, carrier, *points: int) -> FinSuppPerm:
        n = len(points)
        return cls(carrier, tuple((points[i], points[(i + 1) % n]) for i in range(n)))

    def apply(self, x):
        return self._map.get(x, x)

    def region(self):
        return tuple(x for x, _ in self.table)

    def tail(self):
        return (1, 0)

    def support(self) -> tuple[int, ...]:
        return self.region()

    def preimage(self, y: int) -> int:
        for x, fx in self.table:
            if fx == y:
                return x
        return y

    def to_json(self):
        return {"class": "perm", "table": [list(p) for p in self.table]}


@dataclass(frozen=True)
class Table(EndoMap):
    """An arbitrary self-map of a finite carrier given by its image vector."""

    carrier: object
    image: tuple[int, ...]
    cls_name = "table"

    def __post_init__(self):
        if not self.carrier.is_finite:
            raise TypeError("Table maps live on finite carriers")
        image = tuple(int(v) for v in self.image)
        if len(image) != self.carrier.size:
            raise ValueError(f"image has length {len(image)}, carrier has {self.carrier.size} points")
        for v in image:
            check_point(self.carrier, v)
        object.__setattr__(self, "image", image)

    def apply(self, x):
        return self.image[x]

    def key(self):
        return ("t", self.image)

    def to_json(self):
        return {"class": "table", "image": list(self.image)}


@dataclass(frozen=True)
class Const(EndoMap):
    carrier: object
    c: int
    cls_name = "const"

    def __post_init__(self):
        check_point(self.carrier, self.c)

    def apply(self, x):
        return self.c

    def tail(self):
        return (0, self.c)

    def to_json(self):
        return {"class": "const", "c": self.c}


def identity_key(carrier) -> tuple:
    if carrier.is_finite:
        return ("t", tuple(carrier.points()))
    return ("i", 1, 0, ())


def identity(carrier, like: str | None = None) -> EndoMap:
    """The identity map, in the class ``like`` when one is given."""
    if carrier.is_finite:
        return Table(carrier, tuple(carrier.points()))
    if like == "maxshift" or (like is None and isinstance(carrier, NatLine)):
        return MaxShift(carrier, 0) if isinstance(carrier, NatLine) else FinSuppPerm(carrier, ())
    if like == "affine" or (like is None and isinstance(carrier, IntLine)):
        return Affine(carrier, 1, 0)
    return FinSuppPerm(carrier, ())


def _same_carrier(f: EndoMap, g: EndoMap) -> None:
    if f.carrier != g.carrier:
        raise CarrierMismatchError(
            f"maps live on different carriers: {f.carrier.to_json()} vs {g.carrier.to_json()}"
        )


def apply(f: EndoMap, x: int) -> int:
    return f(x)


def compose(f: EndoMap, g: EndoMap) -> EndoMap:
    """The map ``x -> f(g(x))`` in closed form."""
    _same_carrier(f, g)
    c = f.carrier
    if isinstance(f, Const):
        return f
    if isinstance(g, Const):
        return Const(c, f.apply(g.c))
    if g.is_identity:
        return f
    if f.is_identity:
        return g
    if type(f) is not type(g):
        raise HeterogeneousMapsError(
            f"heterogeneous map classes: {f.cls_name} o {g.cls_name} has no closed form"
        )
    if isinstance(f, Affine):
        return Affine(c, f.a * g.a, f.a * g.b + f.b)
    if isinstance(f, MaxShift):
        return MaxShift(c, max(f.c, g.c))
    if isinstance(f, FinSuppPerm):
        dom = set(f.region()) | set(g.region())
        return FinSuppPerm(c, tuple((x, f.apply(g.apply(x))) for x in dom))
    if isinstance(f, Table):
        fi = f.image
        return Table(c, tuple(fi[y] for y in g.image))
    raise HeterogeneousMapsError(f"no composition rule for {f.cls_name}")


def diff_set(f: EndoMap, g: EndoMap) -> KSet:
    """The exact set ``{x : f(x) != g(x)}``."""
    _same_carrier(f, g)
    c = f.carrier
    if c.is_finite:
        return KSet.finite(c, (x for x in c.points() if f.apply(x) != g.apply(x)))
    region = set(f.region()) | set(g.region())
    differ = [x for x in region if f.apply(x) != g.apply(x)]
    (a1, b1), (a2, b2) = f.tail(), g.tail()
    if (a1, b1) == (a2, b2):
        return KSet.finite(c, differ)
    agree = [x for x in region if f.apply(x) == g.apply(x)]
    root = _tail_root(a1, b1, a2, b2)
    if root is not None and c.contains(root) and root not in region:
        agree.append(root)
    return KSet.cofinite(c, agree)


def _tail_root(a1: int, b1: int, a2: int, b2: int) -> int | None:
    """The unique integer solution of ``a1*x + b1 == a2*x + b2``, if any."""
    da, db = a1 - a2, b2 - b1
    if da == 0 or db % da:
        return None
    return db // da


def diff_const(f: EndoMap, c: int) -> KSet:
    """The exact set ``{x : f(x) != c}``."""
    return diff_set(f, Const(f.carrier, check_point(f.carrier, c)))


def preimage_point(f: EndoMap, y: int) -> KSet:
    return ~diff_const(f, y)


def map_eq(f: EndoMap, g: EndoMap) -> bool:
    return diff_set(f, g).is_empty


# -- closure ---------------------------------------------------------------


@dataclass(frozen=True)
class MonoidClosure:
    """Deterministic breadth-first enumeration ``g_0 = id, g_1, ...``."""

    elements: tuple[EndoMap, ...]
    generators: tuple[EndoMap, ...]
    max_word_len: int
    complete: bool
    word_lengths: tuple[int, ...] = field(default=(), compare=False)

    @property
    def carrier(self):
        return self.elements[0].carrier

    def __len__(self) -> int:
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __getitem__(self, i: int) -> EndoMap:
        return self.elements[i]

    def index_of(self, f: EndoMap) -> int | None:
        k = f.key()
        for i, g in enumerate(self.elements):
            if g.key() == k:
                return i
        return None

    def to_json(self) -> dict:
        return {
            "carrier": self.carrier.to_json(),
            "size": len(self.elements),
            "max_word_len": self.max_word_len,
            "complete": self.complete,
            "elements": [g.to_json() for g in self.elements],
        }


def _map_class(g: EndoMap) -> str | None:
    return None if isinstance(g, Const) or g.is_identity else g.cls_name


def closure(
    generators: Sequence[EndoMap],
    max_word_len: int = 8,
    max_elements: int = 10_000,
    carrier=None,
) -> MonoidClosure:
    """Enumerate the submonoid generated by ``generators``.

    Words are explored by length; a word of length L is ``gen_k o w`` for a
    word ``w`` of length L-1 (in enumeration order) and generator index ``k``.
    The result is marked complete only when a word length adds nothing new
    and the element budget was not hit.
    """
    if max_word_len < 0 or max_elements < 1:
        raise ValueError("closure bounds must be positive")
    gens = tuple(generators)
    if carrier is None:
        if not gens:
            raise ValueError("closure of no generators needs an explicit carrier")
        carrier = gens[0].carrier
    for g in gens:
        if g.carrier != carrier:
            raise CarrierMismatchError("generators live on different carriers")
    classes = {k for g in gens if (k := _map_class(g)) is not None}
    if len(classes) > 1:
        raise HeterogeneousMapsError(f"heterogeneous map classes among generators: {sorted(classes)}")
    like = next(iter(classes), None)
    ident = identity(carrier, like)

    elements = [ident]
    lengths = [0]
    seen = {ident.key()}
    frontier = [ident]
    complete = False
    for length in range(1, max_word_len + 1):
        new = []
        for w in frontier:
            for gen in gens:
                cand = compose(gen, w)
                k = cand.key()
                if k in seen:
                    continue
                seen.add(k)
                elements.append(cand)
                lengths.append(length)
                new.append(cand)
                if len(elements) >= max_elements:
                    return MonoidClosure(tuple(elements), gens, max_word_len, False, tuple(lengths))
        if not new:
            complete = True
            break
        frontier = new
    return MonoidClosure(tuple(elements), gens, max_word_len, complete, tuple(lengths))


# -- vectorised evaluation -------------------------------------------------


def evaluation_profile(maps: Sequence[EndoMap], extra_consts: Iterable[int] = ()):
    """Evaluate maps on a shared finite region.

    Returns ``(points, values, tails)`` where ``values[i, j]`` is the image of
    ``points[j]`` under map ``i``.  Constants in ``extra_consts`` are appended
    as rows after the maps.  On finite carriers the region is the whole
    carrier and every tail is reported as ``(0, 0)``.
    """
    carrier = maps[0].carrier
    consts = [int(c) for c in extra_consts]
    if carrier.is_finite:
        pts = np.arange(carrier.size, dtype=np.int64)
        rows = [np.asarray(m.image if isinstance(m, Table) else [m.apply(x) for x in pts], dtype=np.int64) for m in maps]
        rows += [np.full(carrier.size, c, dtype=np.int64) for c in consts]
        tails = np.zeros((len(rows), 2), dtype=np.int64)
        return pts, np.stack(rows), tails
    region = sorted(set().union(*(m.region() for m in maps)))
    pts = np.asarray(region, dtype=np.int64)
    values = np.empty((len(maps) + len(consts), len(region)), dtype=np.int64)
    for i, m in enumerate(maps):
        values[i] = [m.apply(x) for x in region]
    for j, c in enumerate(consts):
        values[len(maps) + j] = c
    tails = np.asarray([m.tail() for m in maps] + [(0, c) for c in consts], dtype=np.int64).reshape(-1, 2)
    return pts, values, tails


# -- JSON ------------------------------------------------------------------


def map_from_json(d: dict, carrier) -> EndoMap:
    kind = d.get("class")
    if kind == "affine":
        return Affine(carrier, int(d["a"]), int(d["b"]))
    if kind == "maxshift":
        return MaxShift(carrier, int(d["c"]))
    if kind == "perm":
        if "cycle" in d:
            return FinSuppPerm.cycle(carrier, *map(int, d["cycle"]))
        return FinSuppPerm(carrier, tuple((int(x), int(y)) for x, y in d["table"]))
    if kind == "table":
        return Table(carrier, tuple(d["image"]))
    if kind == "const":
        return Const(carrier, int(d["c"]))
    raise ValueError(f"unknown map class {kind!r}")


def maps_from_json(items: Iterable[dict], carrier_json: dict) -> list[EndoMap]:
    carrier = carrier_from_json(carrier_json)
    return [map_from_json(d, carrier) for d in items]


__all__ = [
    "Affine", "Const", "EndoMap", "FinSuppPerm", "FiniteSet", "GroupPower", "IntLine",
    "MaxShift", "MonoidClosure", "NatLine", "Table", "apply", "closure", "compose",
    "diff_const", "diff_set", "evaluation_profile", "identity", "map_eq", "map_from_json",
]
