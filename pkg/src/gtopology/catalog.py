"""Prebuilt scenarios and their expected verdicts.

Scenario files live in the ``scenarios`` package directory.  Each one names
a carrier, a generator family, truncation bounds and a list of
expectations; :func:`run_expectations` recomputes every expectation and
counts mismatches.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from importlib import resources
from typing import Any, Iterable

import numpy as np

from . import filtertop as ft
from .acts import (
    Affine,
    EndoMap,
    FinSuppPerm,
    MaxShift,
    MonoidClosure,
    Table,
    closure,
    diff_set,
    map_from_json,
)
from .carriers import GroupPower, carrier_from_json
from .errors import BudgetExceededError, ConfigError, HypothesisViolatedError
from .groups import FiniteGroup, named_group
from .sets import KSet, intersect_all
from .special import SpecialSequence, build_special, verify_special
from .zariski import (
    INFINITE,
    Diff,
    DiffConst,
    Subbase,
    build_subbase,
    discreteness_report,
    generate_topology,
    isolation,
    pseudocharacter,
    verify_certificate,
    Certificate,
    ISOLATION,
)


def scenario_names() -> list[str]:
    files = resources.files(__package__).joinpath("scenarios").iterdir()
    return sorted(f.name[:-5] for f in files if f.name.endswith(".json"))


def _load(name: str) -> dict:
    path = resources.files(__package__).joinpath("scenarios", f"{name}.json")
    if not path.is_file():
        raise ConfigError("scenario", f"unknown scenario {name!r}; known: {', '.join(scenario_names())}")
    return json.loads(path.read_text())


# -- generator families --------------------------------------------------------


def group_shifts(carrier: GroupPower, inversion: bool = False) -> list[Table]:
    """Left and right translations by every element of ``H^n``.

    ``l_a`` for all ``a`` come first, then ``r_b``; with ``inversion`` the
    map ``x -> x^{-1}`` is appended.
    """
    mt = carrier.mul_table
    pts = carrier.points()
    gens = [Table(carrier, tuple(int(v) for v in mt[a, :])) for a in pts]
    gens += [Table(carrier, tuple(int(v) for v in mt[:, b])) for b in pts]
    if inversion:
        gens.append(Table(carrier, tuple(carrier.inv(x) for x in pts)))
    return gens


def polynomial_closure(carrier: GroupPower, max_elements: int = 500) -> MonoidClosure:
    """Maps built from the identity and constants by pointwise products and composition.

    Breadth-first over rounds; each round forms products and composites of
    all pairs found so far.  Marked incomplete when ``max_elements`` stops
    the search.
    """
    mt = carrier.mul_table
    n = carrier.size
    ident = tuple(range(n))
    found: dict[tuple[int, ...], None] = {ident: None}
    for c in range(n):
        found.setdefault((c,) * n, None)
    complete = True
    changed = True
    while changed:
        changed = False
        current = [np.asarray(f) for f in found]
        for f in current:
            for g in current:
                for h in (mt[f, g], f[g]):
                    key = tuple(int(v) for v in h)
                    if key not in found:
                        found[key] = None
                        changed = True
                        if len(found) >= max_elements:
                            complete = False
                            changed = False
                            break
                if not changed and not complete:
                    break
            if not changed and not complete:
                break
    elements = tuple(Table(carrier, k) for k in found)
    return MonoidClosure(elements, elements[1:], 0, complete, (0,) * len(elements))


def _family(spec: dict, carrier) -> list[EndoMap]:
    kind = spec["kind"]
    if kind == "transpositions":
        return [FinSuppPerm.cycle(carrier, i, i + 1) for i in range(int(spec["count"]))]
    if kind == "shifts":
        return [Affine(carrier, 1, b) for b in range(int(spec["lo"]), int(spec["hi"]) + 1) if b != 0]
    if kind == "maxshift":
        return [MaxShift(carrier, c) for c in range(int(spec["max_shift"]) + 1)]
    if kind == "group-shifts":
        return group_shifts(carrier, inversion=spec.get("monoid", "s") == "q")
    raise ConfigError("family.kind", f"unknown generator family {kind!r}")


# -- scenarios -----------------------------------------------------------------


@dataclass(frozen=True)
class Scenario:
    name: str
    carrier: Any
    generators: tuple[EndoMap, ...]
    const_window: tuple[int, ...]
    probe: tuple[int, ...]
    max_word_len: int = 8
    max_elements: int = 10_000
    family: dict = field(default_factory=dict, compare=False)
    special: dict | None = field(default=None, compare=False)
    depth: int = 4
    expectations: tuple[dict, ...] = field(default=(), compare=False)
    description: str = field(default="", compare=False)

    @cached_property
    def closure(self) -> MonoidClosure:
        if self.family.get("kind") == "group-shifts" and self.family.get("monoid") == "p":
            return polynomial_closure(self.carrier, self.max_elements)
        return closure(self.generators, self.max_word_len, self.max_elements, carrier=self.carrier)

    @cached_property
    def subbase(self) -> Subbase:
        return build_subbase(self.closure, self.const_window)

    def special_sequence(self) -> SpecialSequence:
        if not self.special:
            raise ConfigError("special", f"scenario {self.name!r} defines no special-sequence settings")
        sp = self.special
        return build_special(self.closure, sp["x0"], sp["length"], tuple(sp["window"]))

    def parameters(self) -> dict:
        d = {
            "scenario": self.name,
            "carrier": self.carrier.to_json(),
            "generators": len(self.generators),
            "max_word_len": self.max_word_len,
            "max_elements": self.max_elements,
            "const_window": _span(self.const_window),
            "probe": list(self.probe),
            "depth": self.depth,
        }
        if self.special:
            d["special"] = dict(self.special)
        return d

    def to_json(self) -> dict:
        d = self.parameters()
        d["generators"] = [g.to_json() for g in self.generators]
        d["const_window"] = list(self.const_window)
        return d


def _span(points: Iterable[int]) -> list[int]:
    pts = sorted(points)
    if pts and pts == list(range(pts[0], pts[-1] + 1)):
        return [pts[0], pts[-1] + 1]
    return pts


def _points(spec) -> tuple[int, ...]:
    """A ``[lo, hi)`` pair or an explicit list."""
    if isinstance(spec, dict):
        return tuple(range(int(spec["lo"]), int(spec["hi"])))
    return tuple(int(x) for x in spec)


def scenario_from_dict(d: dict, **params) -> Scenario:
    """Build a scenario from a definition, with keyword overrides.

    Overrides may replace top-level keys (``max_word_len``, ``probe`` ...) or
    keys of the generator family (``max_shift``, ``n``, ``monoid`` ...).
    """
    d = json.loads(json.dumps(d))
    fam = d.get("family", {})
    for k, v in params.items():
        if k in fam or k in ("n", "group", "monoid", "max_shift", "count", "lo", "hi"):
            fam[k] = v
        else:
            d[k] = v
    cj = d["carrier"]
    if fam.get("kind") == "group-shifts":
        cj = {"kind": "group-power", "group": fam.get("group", "S3"), "n": fam.get("n", 2)}
    carrier = carrier_from_json(cj)
    if fam:
        gens = _family(fam, carrier)
    else:
        gens = [map_from_json(g, carrier) for g in d.get("generators", [])]
    window = _points(d["const_window"]) if "const_window" in d else tuple(carrier.window_points())
    probe = _points(d["probe"]) if "probe" in d else tuple(carrier.window_points())
    return Scenario(
        name=d["name"],
        carrier=carrier,
        generators=tuple(gens),
        const_window=window,
        probe=probe,
        max_word_len=int(d.get("max_word_len", 8)),
        max_elements=int(d.get("max_elements", 10_000)),
        family=fam,
        special=d.get("special"),
        depth=int(d.get("depth", 4)),
        expectations=tuple(d.get("expectations", ())),
        description=d.get("description", ""),
    )


def build_scenario(name: str, **params) -> Scenario:
    return scenario_from_dict(_load(name), **params)


# -- projection identity on H^n ---------------------------------------------------


def _translation(carrier: GroupPower, a: int, side: str) -> Table:
    mt = carrier.mul_table
    row = mt[a, :] if side == "l" else mt[:, a]
    return Table(carrier, tuple(int(v) for v in row))


def verify_projection_identity(group: FiniteGroup | str, n: int, alpha: int, h: int) -> bool:
    """Check ``pr_alpha^{-1}(h) = ∩ {U_{a,b} : a h != h b}`` on ``H^n``.

    ``U_{a,b} = {x : i_alpha(a) x != x i_alpha(b)}`` is the difference set of a
    left and a right translation.  ``H`` must have trivial center.
    """
    if isinstance(group, str):
        group = named_group(group)
    if group.center() != [group.identity]:
        raise HypothesisViolatedError(
            f"hypothesis violated: group {group.name} has center {group.center()}, expected trivial"
        )
    carrier = GroupPower(group, n)
    if not 0 <= alpha < n:
        raise ValueError(f"coordinate {alpha} outside 0..{n - 1}")
    if h not in group.elements():
        raise ValueError(f"{h} is not an element of {group.name}")
    pairs = [(a, b) for a in group.elements() for b in group.elements() if group.mul(a, h) != group.mul(h, b)]
    sets = [
        diff_set(_translation(carrier, carrier.embed(alpha, a), "l"), _translation(carrier, carrier.embed(alpha, b), "r"))
        for a, b in pairs
    ]
    lhs = KSet.finite(carrier, (x for x in carrier.points() if carrier.project(x, alpha) == h))
    return intersect_all(sets, carrier) == lhs


# -- filter checks on a verified sequence -------------------------------------------


def default_separation_pairs(seq: SpecialSequence) -> list[tuple[KSet, KSet]]:
    """Five disjoint finite pairs drawn from the sequence and one far point."""
    c, p = seq.carrier, seq.points
    far = max(p) + 1000 if c.contains(max(p) + 1000) else None
    pairs = [((1,), (2,)), ((3,), (4, 6)), ((2, 7), (9,)), ((10,), (11, 12)), ((5,), (8,))]
    out = []
    for a, b in pairs:
        ka = KSet.finite(c, (p[i] for i in a if i < seq.k))
        kb = KSet.finite(c, (p[i] for i in b if i < seq.k))
        out.append((ka, kb))
    if far is not None:
        out[-1] = (KSet.singleton(c, far), out[-1][1])
    return out


def filter_checks(
    seq: SpecialSequence,
    cl: MonoidClosure,
    probe: Iterable[int],
    depth: int = 6,
    samples: int = 200,
    seed: int = 0,
) -> dict:
    """Finite-depth checks of the filter topology on one verified sequence.

    ``t1``: every cutoff is correct and minimal.  ``separation``: the default
    pairs are closed and their chains stay disjoint up to ``depth``.
    ``chains``: chains are monotone and the chains of a family meeting in
    ``{x_0}`` meet the orbit of the support only in ``x_0``.  ``trace``: tails
    padded with the outside are open, and open samples through ``x_0`` trace
    onto a tail superset.
    """
    fb = ft.tail_filter(seq)
    carrier, pts, k, x0 = seq.carrier, seq.points, seq.k, seq.x0
    out: dict[str, Any] = {}

    t1_ok, t1_maps = True, 0
    for x in probe:
        for cut in ft.t1_witness(x, fb, cl):
            g = cl[cut.map_index]
            hits = [b for b in range(1, k + 1) if g.apply(pts[b]) == x]
            t1_maps += 1
            if cut.cutoff != (max(hits) if hits else 0):
                t1_ok = False
    out["t1"] = {"ok": t1_ok, "checked": t1_maps}

    sep_ok, warnings, closed_ok = True, [], True
    for a0, b0 in default_separation_pairs(seq):
        for s in (a0, b0):
            if ft.is_closed(s, fb, cl).status == ft.NOT_OPEN:
                closed_ok = False
        res = ft.separate(a0, b0, fb, cl, depth)
        sep_ok &= res.disjoint
    out["separation"] = {"ok": sep_ok and closed_ok, "pairs_closed": closed_ok, "depth": depth}

    mono = all(
        all(a.issubset(b) for a, b in zip(ch, ch[1:]))
        for ch in (ft.neighborhood_chain(f, fb, cl, depth) for f in fb.base)
    )
    even = [p for i, p in enumerate(pts) if i and i % 2 == 0]
    odd = [p for i, p in enumerate(pts) if i % 2 == 1]
    rf = ft.refined_filter(seq, [even, odd])
    fam = [next(b for b in rf.base if b & KSet.finite(carrier, even) != KSet.empty(carrier)),
           next(b for b in rf.base if b & KSet.finite(carrier, odd) != KSet.empty(carrier))]
    fam_meet = intersect_all(fam, carrier) == KSet.singleton(carrier, x0)
    ends = [ft.neighborhood_chain(f, rf, cl, 4)[-1] for f in fam]
    orb = ft.orbit(fb.support, cl)
    meets = intersect_all(ends, carrier) & orb
    out["chains"] = {"ok": mono and fam_meet and meets == KSet.singleton(carrier, x0), "monotone": mono}

    outside = ~fb.support
    tails_open = all(ft.is_open(f | outside, fb, cl).is_open for f in fb.base)
    rng = np.random.default_rng(seed)
    converse_ok, n_open = True, 0
    for _ in range(samples):
        keep = rng.random(len(pts)) < rng.uniform(0.3, 1.0)
        s = KSet.finite(carrier, [x0] + [p for p, b in zip(pts[1:], keep[1:]) if b])
        u = s | outside if rng.random() < 0.8 else s
        if ft.is_open(u, fb, cl).is_open:
            n_open += 1
            converse_ok &= fb.contains_base_set(u & fb.support)
    out["trace"] = {"ok": tails_open and converse_ok, "tails_open": tails_open, "open_samples": n_open}
    out["ok"] = all(v["ok"] for v in out.values() if isinstance(v, dict))
    return out


# -- expectations ---------------------------------------------------------------------


def formula_certificate(n: int) -> tuple:
    """Tags of ``{x : max(x, n+1) != x} ∩ ∩_{k<n} {x != k}`` in a max-shift closure.

    Closure index ``c`` is ``MaxShift(c)``, index 0 the identity.
    """
    return (Diff(0, n + 1), *(DiffConst(0, k) for k in range(n)))


def _psi_value(v):
    return "infinite" if v == INFINITE else v


def _check(sc: Scenario, e: dict) -> tuple[Any, Any]:
    """Return ``(expected, observed)`` for one expectation."""
    kind = e["check"]
    pts = _points(e["points"]) if "points" in e else sc.probe
    sb = lambda: sc.subbase  # noqa: E731
    if kind == "generator-count":
        return e["value"], len(sc.generators)
    if kind == "closure-size":
        return e["value"], len(sc.closure)
    if kind == "summary":
        rep = discreteness_report(sb(), pts, with_psi=False)
        return {k: v for k, v in e.items() if k in ("verdict", "point")}, rep["summary"]
    if kind == "isolation-size":
        sizes = {}
        for x in pts:
            c = isolation(sb(), x)
            sizes[x] = None if c is None else len(c.members)
        want = e["value"]
        expected = {x: (want[str(x)] if isinstance(want, dict) else want) for x in pts}
        return expected, sizes
    if kind == "no-singleton-certificate":
        singles = [x for x in pts if any(s.set == KSet.singleton(sc.carrier, x) for s in sb().members(x))]
        return [], singles
    if kind == "not-isolated":
        return [], [x for x in pts if isolation(sb(), x) is not None]
    if kind == "psi":
        return {x: e["value"] for x in pts}, {x: _psi_value(pseudocharacter(sb(), x).value) for x in pts}
    if kind == "all-cofinite":
        bad = [str(s.tag) for s in sb().sets if not s.set.is_empty and not s.set.is_cofinite]
        return [], bad
    if kind == "formula-certificate":
        ok = {}
        for x in pts:
            cert = Certificate(x, formula_certificate(x), ISOLATION)
            ok[x] = verify_certificate(cert, sc.closure)
        return {x: True for x in pts}, ok
    if kind == "commutative-coincide":
        fam = sc.family
        lo, hi = int(fam["lo"]), int(fam["hi"])
        c = sc.carrier
        left = [Affine(c, 1, b) for b in range(lo, hi + 1)]
        right = list(left)
        # two-sided shifts a + x + b collapse to shifts by a + b
        two = [Affine(c, 1, a + b) for a in range(lo, hi + 1) for b in range(lo, hi + 1)]
        # a two-sided word of length L spans a one-sided word of length 2L
        fams = []
        for gens, wl in ((left, sc.max_word_len), (right, sc.max_word_len), (two, max(1, sc.max_word_len // 2))):
            cl = closure(gens, wl, sc.max_elements, carrier=c)
            fams.append(frozenset(s.set for s in build_subbase(cl, sc.const_window).sets))
        return True, fams[0] == fams[1] == fams[2]
    if kind == "special":
        seq = sc.special_sequence()
        v = verify_special(SpecialSequence(seq.closure, seq.points))
        return {"ok": True, "length": sc.special["length"]}, {"ok": v.ok, "length": len(seq.points)}
    if kind == "filter":
        seq = sc.special_sequence()
        res = filter_checks(seq, sc.closure, pts, depth=int(e.get("depth", 6)), seed=int(e.get("seed", 0)))
        return True, res["ok"]
    if kind == "projection-identity":
        ns = e.get("n", [sc.carrier.n])
        group = sc.carrier.group
        results = {
            f"n={n},alpha={a},h={h}": verify_projection_identity(group, n, a, h)
            for n in ns
            for a in range(n)
            for h in group.elements()
        }
        return {k: True for k in results}, results
    if kind == "projections-open":
        top = generate_topology(sb())
        c = sc.carrier
        res = {
            f"alpha={a},h={h}": top.is_open(KSet.finite(c, (x for x in c.points() if c.project(x, a) == h)))
            for a in range(c.n)
            for h in c.group.elements()
        }
        return {k: True for k in res}, res
    if kind == "topology-discrete":
        out = {}
        for monoid in e.get("monoids", ["s"]):
            other = build_scenario(
                sc.name, monoid=monoid, n=int(e.get("n", sc.carrier.n)), max_elements=int(e.get("max_elements", sc.max_elements))
            )
            out[monoid] = generate_topology(other.subbase).is_discrete
        return {m: True for m in out}, out
    raise ConfigError("expectations.check", f"unknown check {kind!r}")


def run_expectations(sc: Scenario) -> dict:
    """Evaluate every expectation; mismatches are reported, not raised."""
    results = []
    for e in sc.expectations:
        try:
            expected, observed = _check(sc, e)
            ok = expected == observed
        except BudgetExceededError as err:
            expected, observed, ok = "within budget", f"budget exceeded: {err}", False
        results.append(
            {
                "check": e["check"],
                "claim": e.get("claim", ""),
                "expected": _jsonable(expected),
                "observed": _jsonable(observed),
                "ok": ok,
            }
        )
    return {
        "scenario": sc.name,
        "parameters": sc.parameters(),
        "results": results,
        "mismatches": sum(not r["ok"] for r in results),
    }


def _jsonable(v):
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    if isinstance(v, float) and v == INFINITE:
        return "infinite"
    return v


def run_catalog(names: Iterable[str] | None = None) -> dict:
    reports = [run_expectations(build_scenario(n)) for n in (names or scenario_names())]
    return {"scenarios": reports, "mismatches": sum(r["mismatches"] for r in reports)}
