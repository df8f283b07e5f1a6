"""One test per acceptance criterion, each printing a PASS/FAIL line.

Time limits are wall-clock seconds and include building closures and
subbases from scratch.
"""

from __future__ import annotations

import random
import time

import pytest

from gtopology import (
    INFINITE,
    Affine,
    IntLine,
    KSet,
    NatLine,
    build_special,
    build_subbase,
    closure,
    diff_const,
    diff_set,
    discreteness_report,
    generate_topology,
    isolation,
    pseudocharacter,
    verify_projection_identity,
)
from gtopology.catalog import build_scenario, filter_checks
from gtopology.zariski import DiffConst, verify_certificate

from conftest import ACCEPTANCE
from oracles import eval_diff, members, random_finite_instance, subbase_psi_oracle
from test_acts import KINDS, random_map
from test_sets import _bits, _oracle, _random_kset
from test_special import brute_special

LIMITS = {1: 10.0, 2: 5.0, 3: 5.0, 4: 60.0, 5: 10.0, 6: 30.0, 7: 60.0}


def report(n: int, ok: bool, elapsed: float, detail: str) -> bool:
    within = elapsed < LIMITS[n]
    status = "PASS" if ok and within else "FAIL"
    ACCEPTANCE.append(f"criterion {n} {status}: {detail} ({elapsed:.2f}s, limit {LIMITS[n]:.0f}s)")
    return ok and within


def test_criterion_1_finitary_permutations():
    t0 = time.perf_counter()
    sc = build_scenario("finitary-perms")
    assert sc.max_word_len == 6 and sc.const_window == tuple(range(16)) and len(sc.generators) == 8
    sb = sc.subbase
    sizes, singles, psis = {}, [], {}
    for x in sc.probe:
        cert = isolation(sb, x)
        sizes[x] = None if cert is None else len(cert.members)
        assert cert is None or verify_certificate(cert, sc.closure)
        if any(s.set == KSet.singleton(sc.carrier, x) for s in sb.members(x)):
            singles.append(x)
        psis[x] = pseudocharacter(sb, x).value
    ok = set(sizes.values()) == {2} and not singles and set(psis.values()) == {2}
    elapsed = time.perf_counter() - t0
    assert report(1, ok, elapsed, f"probe {list(sc.probe)}: certificate sizes {sorted(set(sizes.values()))}, "
                  f"1-set certificates {singles}, psi {sorted(set(psis.values()))}")


@pytest.mark.xfail(strict=True, reason="the stated singleton formula and sizes are not attainable; see decisions ledger")
def test_criterion_2_nat_max_formula():
    t0 = time.perf_counter()
    sc = build_scenario("nat-max", probe=list(range(9)))
    sb, cl = sc.subbase, sc.closure
    index = {g.c: i for i, g in enumerate(cl)}
    problems = []
    for n in range(9):
        # {x : max(x, n) != n} and {x : x != k} for k < n, exactly as stated
        stated = sorted((DiffConst(index[n], n), *(DiffConst(0, k) for k in range(n))), key=lambda t: t.sort_key)
        cert = isolation(sb, n)
        if cert is None:
            problems.append(f"{n}: not isolated")
            continue
        if len(cert.members) != n + 1:
            problems.append(f"{n}: size {len(cert.members)}")
        if list(cert.members) != stated:
            problems.append(f"{n}: tags {[str(t) for t in cert.members]}")
    verdict = discreteness_report(sb, range(9), with_psi=False)["summary"]
    if verdict != {"verdict": "discrete-on-probe"}:
        problems.append(f"summary {verdict}")
    elapsed = time.perf_counter() - t0
    detail = "all certificates match" if not problems else f"{len(problems)} mismatches, e.g. {problems[:3]} ... {problems[-1]}"
    assert report(2, not problems, elapsed, detail)


def test_criterion_3_integer_shifts():
    t0 = time.perf_counter()
    sc = build_scenario("int-shifts-left")
    assert {g.b for g in sc.generators} == set(range(-8, 9)) - {0}
    sb = sc.subbase
    non_cofinite = [str(s.tag) for s in sb.sets if not s.set.is_empty and not s.set.is_cofinite]
    isolated = [x for x in sc.probe if isolation(sb, x) is not None]
    psis = {pseudocharacter(sb, x).value for x in sc.probe}
    ok = not non_cofinite and not isolated and psis == {INFINITE}
    elapsed = time.perf_counter() - t0
    assert report(3, ok, elapsed, f"{len(sb)} subbasic sets, non-cofinite {non_cofinite}, isolated {isolated}, "
                  f"psi {['infinite' if v == INFINITE else v for v in psis]}")


def test_criterion_4_projection_identity():
    t0 = time.perf_counter()
    identities = {(n, a, h): verify_projection_identity("S3", n, a, h) for n in (1, 2) for a in range(n) for h in range(6)}
    opens = {}
    for n in (1, 2):
        sc = build_scenario("group-power", n=n)
        assert len(sc.generators) == 2 * 6**n
        top = generate_topology(sc.subbase)
        c = sc.carrier
        for a in range(n):
            for h in range(6):
                fibre = KSet.finite(c, (x for x in c.points() if c.project(x, a) == h))
                opens[(n, a, h)] = top.is_open(fibre)
    ok = len(identities) == 18 and all(identities.values()) and all(opens.values())
    elapsed = time.perf_counter() - t0
    assert report(4, ok, elapsed, f"{sum(identities.values())}/18 identities hold, "
                  f"{sum(opens.values())}/{len(opens)} fibres open")


def test_criterion_5_special_sequence():
    t0 = time.perf_counter()
    cl = closure([Affine(IntLine(), 1, b) for b in range(-4, 5) if b], max_word_len=8, max_elements=20)
    seq = build_special(cl, 0, 24, (0, 4096))
    bad = brute_special(cl, seq.points)
    ok = len(cl) == 20 and len(seq.points) == 24 and not bad
    elapsed = time.perf_counter() - t0
    assert report(5, ok, elapsed, f"closure {len(cl)}, sequence length {len(seq.points)}, violations {len(bad)}")


def test_criterion_6_filter_topology():
    t0 = time.perf_counter()
    z = IntLine()
    runs = []
    sc = build_scenario("int-shifts")
    runs.append(("shifts", sc.special_sequence(), sc.closure))
    dbl = closure([Affine(z, 2, 0), Affine(z, 1, 1)], max_word_len=3, max_elements=12)
    runs.append(("doubling", build_special(dbl, 1, 16, (0, 100_000)), dbl))
    ident = closure([], carrier=z)
    runs.append(("identity", build_special(ident, 0, 12, (0, 64)), ident))
    parts = []
    ok = True
    for name, seq, cl in runs:
        assert seq.verified
        probe = list(range(-16, 16)) + list(seq.points)
        res = filter_checks(seq, cl, probe, depth=6)
        ok &= res["ok"]
        flags = "".join(k[0] if res[k]["ok"] else "-" for k in ("t1", "separation", "chains", "trace"))
        parts.append(f"{name}:{flags}")
    elapsed = time.perf_counter() - t0
    assert report(6, ok, elapsed, "(a) T1 (b) separation (c) chains (d) trace on " + ", ".join(parts))


def test_criterion_7_oracle_equivalence():
    t0 = time.perf_counter()
    rng = random.Random(7)
    full = (1 << 128) - 1
    kset_bad = 0
    for _ in range(10_000):
        a, b = _random_kset(rng), _random_kset(rng)
        op = rng.randrange(3)
        if op == 0:
            got, want = a & b, _oracle(a) & _oracle(b)
        elif op == 1:
            got, want = a | b, _oracle(a) | _oracle(b)
        else:
            got, want = ~a, ~_oracle(a) & full
        kset_bad += members(got) != _bits(want)
    diff_bad = 0
    for _ in range(1_000):
        kind = rng.choice(KINDS)
        f, g = random_map(rng, kind), random_map(rng, kind)
        window = f.carrier.window_points()
        diff_bad += members(diff_set(f, g), window) != eval_diff(f, g, window)
        c = rng.choice(list(window))
        diff_bad += members(diff_const(f, c), window) != frozenset(x for x in window if f(x) != c)
    psi_bad = 0
    for _ in range(50):
        sb = random_finite_instance(rng)
        for x in sb.carrier.points():
            psi_bad += pseudocharacter(sb, x).value != subbase_psi_oracle(sb, x)
    ok = kset_bad == diff_bad == psi_bad == 0
    elapsed = time.perf_counter() - t0
    assert report(7, ok, elapsed, f"mismatches: kset {kset_bad}, diff_set {diff_bad}, psi {psi_bad}")
