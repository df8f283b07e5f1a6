from __future__ import annotations

import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gtopology import (
    Affine,
    Const,
    FinSuppPerm,
    FiniteSet,
    IntLine,
    KSet,
    MaxShift,
    NatLine,
    Table,
    apply,
    closure,
    compose,
    diff_const,
    diff_set,
    identity,
    map_eq,
)
from gtopology.acts import map_from_json
from gtopology.errors import CarrierMismatchError, HeterogeneousMapsError, PointError

from oracles import eval_diff, members

Z = IntLine((-16, 16))
N = NatLine((0, 16))
WIDE_Z = range(-32, 32)


def test_apply_examples():
    assert apply(Affine(Z, 2, 1), 3) == 7
    assert apply(MaxShift(N, 5), 2) == 5
    assert apply(MaxShift(N, 5), 9) == 9
    ident = identity(FiniteSet(4))
    assert [apply(ident, x) for x in range(4)] == [0, 1, 2, 3]


def test_apply_rejects_foreign_points():
    with pytest.raises(PointError):
        apply(MaxShift(N, 1), -1)
    with pytest.raises(PointError):
        apply(identity(FiniteSet(4)), 4)


def test_compose_affine_matches_pointwise():
    h = compose(Affine(Z, 2, 1), Affine(Z, 1, 3))
    assert h == Affine(Z, 2, 7)
    assert all(h(x) == 2 * (x + 3) + 1 for x in range(-16, 16))


def test_compose_maxshift_matches_pointwise():
    h = compose(MaxShift(N, 2), MaxShift(N, 5))
    assert h == MaxShift(N, 5)
    assert all(h(x) == max(max(x, 5), 2) for x in range(16))


def test_const_absorbs():
    f = Affine(Z, 3, -1)
    assert compose(f, Const(Z, 2)) == Const(Z, 5)
    assert compose(Const(Z, 2), f) == Const(Z, 2)


def test_identity_law_for_every_class():
    maps = [
        Affine(Z, 2, 1),
        MaxShift(N, 3),
        FinSuppPerm.cycle(N, 0, 4, 2),
        Table(FiniteSet(3), (1, 1, 0)),
        Const(N, 3),
    ]
    for f in maps:
        e = identity(f.carrier, None if isinstance(f, Const) else f.cls_name)
        assert map_eq(compose(f, e), f)
        assert map_eq(compose(e, f), f)


def test_cross_class_composition_is_rejected():
    with pytest.raises(HeterogeneousMapsError, match="heterogeneous map classes"):
        compose(MaxShift(N, 2), FinSuppPerm.cycle(N, 0, 1))


def test_diff_set_examples():
    f = Affine(Z, 2, 1)
    assert diff_set(f, f).is_empty
    assert diff_set(Affine(Z, 2, 1), Affine(Z, 1, 3)) == KSet.cofinite(Z, [2])
    assert members(diff_set(Affine(Z, 2, 1), Affine(Z, 1, 3)), WIDE_Z) == frozenset(WIDE_Z) - {2}
    assert diff_set(MaxShift(N, 2), MaxShift(N, 5)) == KSet.finite(N, range(5))
    assert diff_set(Affine(Z, 1, 0), Affine(Z, 1, 4)) == KSet.full(Z)


def test_diff_const_of_perm_is_cofinite_minus_preimage():
    t = FinSuppPerm.cycle(N, 0, 1)
    assert diff_const(t, 1) == KSet.cofinite(N, [0])
    assert diff_const(t, 7) == KSet.cofinite(N, [7])


def test_map_eq_examples():
    assert map_eq(Affine(Z, 1, 0), identity(Z))
    assert map_eq(MaxShift(N, 0), identity(N, "maxshift"))
    assert all(MaxShift(N, 0)(x) == x for x in range(16))
    assert not map_eq(Affine(Z, 2, 1), Affine(Z, 2, 2))


def test_perm_validation():
    with pytest.raises(ValueError):
        FinSuppPerm(N, ((0, 1), (1, 1)))
    p = FinSuppPerm(N, ((2, 3), (3, 2), (5, 5)))
    assert p.support() == (2, 3)
    assert p.preimage(3) == 2


def test_table_validation():
    with pytest.raises(ValueError):
        Table(FiniteSet(3), (0, 1))
    with pytest.raises(PointError):
        Table(FiniteSet(3), (0, 1, 3))


def test_carrier_mismatch():
    with pytest.raises(CarrierMismatchError):
        diff_set(Table(FiniteSet(3), (0, 1, 2)), Table(FiniteSet(4), (0, 1, 2, 3)))


def test_json_round_trip():
    for f in (Affine(Z, -2, 5), MaxShift(N, 4), FinSuppPerm.cycle(N, 1, 5), Const(N, 2)):
        assert map_from_json(f.to_json(), f.carrier) == f
    t = Table(FiniteSet(3), (2, 0, 1))
    assert map_from_json(t.to_json(), t.carrier) == t


# -- closure -------------------------------------------------------------------------


def test_closure_of_nothing_is_identity():
    cl = closure([], carrier=N)
    assert len(cl) == 1 and cl[0].is_identity and cl.complete


def test_closure_maxshift_saturates():
    cl = closure([MaxShift(N, 1), MaxShift(N, 2)], max_word_len=4)
    assert list(cl) == [MaxShift(N, 0), MaxShift(N, 1), MaxShift(N, 2)]
    assert cl.complete


def test_closure_affine_shift_by_word_length():
    cl = closure([Affine(Z, 1, 1)], max_word_len=3)
    assert list(cl) == [Affine(Z, 1, b) for b in range(4)]
    assert not cl.complete


def test_closure_element_budget():
    cl = closure([Affine(Z, 1, 1), Affine(Z, 1, -1)], max_word_len=50, max_elements=7)
    assert len(cl) == 7 and not cl.complete


def test_closure_rejects_mixed_classes():
    with pytest.raises(HeterogeneousMapsError):
        closure([MaxShift(N, 1), FinSuppPerm.cycle(N, 0, 1)])


def test_closure_is_sound_and_deduplicated():
    c = FiniteSet(4)
    gens = [Table(c, (1, 2, 3, 0)), Table(c, (0, 0, 2, 3))]
    cl = closure(gens, max_word_len=40)
    words = {tuple(range(4))}
    frontier = [tuple(range(4))]
    for _ in range(40):
        nxt = []
        for w in frontier:
            for g in gens:
                img = tuple(g.image[y] for y in w)
                if img not in words:
                    words.add(img)
                    nxt.append(img)
        frontier = nxt
    assert {g.image for g in cl} == words
    assert len({g.key() for g in cl}) == len(cl)
    assert cl.complete
    again = closure(list(cl), max_word_len=2)
    assert {g.key() for g in again} == {g.key() for g in cl}


def test_closure_counts_symmetric_group():
    # adjacent transpositions of 0..3 generate all 24 permutations
    gens = [FinSuppPerm.cycle(N, i, i + 1) for i in range(3)]
    cl = closure(gens, max_word_len=10)
    brute = {p for p in itertools.permutations(range(4))}
    assert len(cl) == len(brute) == 24
    assert cl.complete


def test_closure_order_is_deterministic():
    gens = [FinSuppPerm.cycle(N, i, i + 1) for i in range(4)]
    a = closure(gens, max_word_len=4)
    b = closure(gens, max_word_len=4)
    assert [g.key() for g in a] == [g.key() for g in b]
    assert list(a.word_lengths) == sorted(a.word_lengths)


# -- randomized laws -----------------------------------------------------------------


def random_map(rng: random.Random, kind: str):
    if kind == "affine":
        return Affine(Z, rng.randint(-3, 3), rng.randint(-8, 8))
    if kind == "maxshift":
        return MaxShift(N, rng.randint(0, 12))
    if kind == "perm":
        pts = rng.sample(range(12), rng.randint(0, 6))
        img = pts[:]
        rng.shuffle(img)
        return FinSuppPerm(N, tuple(zip(pts, img)))
    c = FiniteSet(6)
    return Table(c, tuple(rng.randrange(6) for _ in range(6)))


KINDS = ["affine", "maxshift", "perm", "table"]


def test_action_law_randomized():
    rng = random.Random(1)
    for _ in range(400):
        kind = rng.choice(KINDS)
        f, g = random_map(rng, kind), random_map(rng, kind)
        h = compose(f, g)
        for x in f.carrier.window_points():
            assert h(x) == f(g(x))


def test_action_law_exhaustive_on_small_finite_carrier():
    c = FiniteSet(3)
    maps = [Table(c, img) for img in itertools.product(range(3), repeat=3)]
    for f in maps:
        for g in maps:
            h = compose(f, g)
            assert all(h(x) == f(g(x)) for x in range(3))


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(KINDS), st.integers(0, 10**6))
def test_diff_set_symmetric_and_pointwise(kind, seed):
    rng = random.Random(seed)
    f, g = random_map(rng, kind), random_map(rng, kind)
    d = diff_set(f, g)
    assert d == diff_set(g, f)
    window = f.carrier.window_points() if f.carrier.is_finite else range(-40, 40) if kind == "affine" else range(0, 40)
    assert members(d, window) == eval_diff(f, g, window)
    c = rng.choice(list(f.carrier.window_points()))
    assert members(diff_const(f, c), window) == frozenset(x for x in window if f(x) != c)
