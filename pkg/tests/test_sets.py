from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gtopology import FiniteSet, IntLine, KSet, NatLine
from gtopology.errors import CarrierMismatchError
from gtopology.sets import complement, contains, equals, intersect, is_singleton, union

from oracles import WINDOW, members

NAT = NatLine((0, 128))


def test_cofinite_intersection_unions_exclusions():
    assert KSet.cofinite(NAT, [1]) & KSet.cofinite(NAT, [2]) == KSet.cofinite(NAT, [1, 2])


def test_finite_meets_cofinite():
    assert KSet.finite(NAT, [1, 2]) & KSet.cofinite(NAT, [2]) == KSet.finite(NAT, [1])


def test_complement_is_involution():
    a = KSet.finite(NAT, [3, 5])
    assert complement(complement(a)) == a
    assert complement(a) == KSet.cofinite(NAT, [3, 5])


def test_cofinite_is_never_a_singleton():
    assert is_singleton(KSet.cofinite(NAT, range(50))) is None
    assert is_singleton(KSet.finite(NAT, [7])) == 7
    assert is_singleton(KSet.finite(NAT, [7, 8])) is None


def test_empty_and_full():
    assert KSet.empty(NAT) == KSet.finite(NAT)
    assert KSet.full(NAT) == KSet.cofinite(NAT)
    assert KSet.full(NAT).is_full and not KSet.full(NAT).is_empty


def test_points_are_sorted_and_deduplicated():
    a = KSet.finite(NAT, [5, 1, 5, 3])
    assert list(a.points()) == [1, 3, 5]
    assert KSet.cofinite(NAT, [9, 2, 9]).excluded() == (2, 9)


def test_finite_carrier_canonical_form_is_bitset():
    c = FiniteSet(6)
    a = KSet.finite(c, [0, 2])
    assert a.to_json()["kind"] == "bitset"
    assert ~a == KSet.finite(c, [1, 3, 4, 5])
    assert a.mask == 0b101
    # complements on a finite carrier are canonicalized, never stored as cofinite
    assert KSet.cofinite(c, [1]).to_json() == {"kind": "bitset", "points": [0, 2, 3, 4, 5]}


def test_carrier_mismatch_raises():
    with pytest.raises(CarrierMismatchError):
        KSet.finite(NAT, [1]) & KSet.finite(IntLine(), [1])
    with pytest.raises(CarrierMismatchError):
        equals(KSet.finite(NAT, [1]), KSet.finite(FiniteSet(4), [1]))


def test_json_round_trip():
    for s in (KSet.finite(NAT, [1, 4]), KSet.cofinite(NAT, [0]), KSet.finite(FiniteSet(5), [2])):
        assert KSet.from_json(s.to_json(), s.carrier) == s


def _random_kset(rng: random.Random) -> KSet:
    pts = rng.sample(WINDOW, rng.randrange(0, 20))
    return KSet.finite(NAT, pts) if rng.random() < 0.5 else KSet.cofinite(NAT, pts)


def _oracle(s: KSet) -> int:
    """Bitset over the window, built only from the raw representation."""
    m = 0
    for x in s.data if s.kind != "bitset" else ():
        m |= 1 << x
    return m if s.kind == "finite" else ~m & ((1 << 128) - 1)


def _bits(mask: int) -> frozenset[int]:
    return frozenset(x for x in WINDOW if mask >> x & 1)


def test_algebra_matches_bitset_oracle():
    rng = random.Random(20261015)
    full = (1 << 128) - 1
    for _ in range(10_000):
        a, b = _random_kset(rng), _random_kset(rng)
        op = rng.choice(["and", "or", "not", "sub"])
        if op == "and":
            got, want = intersect(a, b), _oracle(a) & _oracle(b)
        elif op == "or":
            got, want = union(a, b), _oracle(a) | _oracle(b)
        elif op == "sub":
            got, want = a - b, _oracle(a) & ~_oracle(b) & full
        else:
            got, want = complement(a), ~_oracle(a) & full
        assert members(got) == _bits(want)


def test_contains_matches_oracle():
    rng = random.Random(7)
    for _ in range(500):
        a = _random_kset(rng)
        x = rng.randrange(128)
        assert contains(a, x) == bool(_oracle(a) >> x & 1)


point_lists = st.lists(st.integers(0, 40), max_size=12)
ksets = st.builds(lambda pts, cof: KSet.cofinite(NAT, pts) if cof else KSet.finite(NAT, pts), point_lists, st.booleans())


@settings(max_examples=200, deadline=None)
@given(ksets, ksets)
def test_de_morgan(a, b):
    assert ~(a & b) == (~a | ~b)
    assert ~(a | b) == (~a & ~b)


@settings(max_examples=200, deadline=None)
@given(ksets, ksets, ksets)
def test_distributivity(a, b, c):
    assert a & (b | c) == (a & b) | (a & c)
    assert a | (b & c) == (a | b) & (a | c)


@settings(max_examples=200, deadline=None)
@given(ksets, ksets)
def test_equality_is_extensional(a, b):
    assert (a == b) == (members(a, range(0, 64)) == members(b, range(0, 64)))


@settings(max_examples=100, deadline=None)
@given(st.lists(point_lists, min_size=1, max_size=5))
def test_cofinite_intersections_stay_cofinite(excl):
    out = KSet.full(NAT)
    for e in excl:
        out = out & KSet.cofinite(NAT, e)
    assert out.is_cofinite
    assert is_singleton(out) is None


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 12), st.data())
def test_bitset_idempotence_and_complement(n, data):
    c = FiniteSet(n)
    mask = data.draw(st.integers(0, (1 << n) - 1))
    a = KSet.from_mask(c, mask)
    assert a & a == a
    assert ~~a == a
    assert len(a) + len(~a) == n
