"""Command-line front end.

Exit codes: 0 success, 1 catalog mismatches, 2 configuration error,
3 budget exhausted, 4 construction failure.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import asdict, dataclass, field, replace
from pathlib import Path
from typing import Any, Sequence

from . import catalog
from . import filtertop as ft
from .carriers import carrier_from_json
from .errors import BudgetExceededError, ConfigError, GTopologyError, WindowTooSmallError
from .sets import KSet
from .special import verify_special
from .zariski import discreteness_report

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_CONFIG = 2
EXIT_BUDGET = 3
EXIT_CONSTRUCTION = 4


@dataclass(frozen=True)
class RunConfig:
    name: str
    carrier: dict
    family: dict = field(default_factory=dict)
    generators: tuple[dict, ...] = ()
    const_window: tuple[int, ...] | None = None
    probe: tuple[int, ...] | None = None
    max_word_len: int = 8
    max_elements: int = 10_000
    x0: int = 0
    length: int = 8
    search_window: tuple[int, int] = (0, 4096)
    depth: int = 4
    format: str = "text"
    seed: int = 0

    def __post_init__(self):
        for name in ("max_word_len", "max_elements", "length", "depth", "seed", "x0"):
            v = getattr(self, name)
            if not isinstance(v, int) or isinstance(v, bool):
                raise ConfigError(name, f"expected an integer, got {v!r}")
        if self.max_word_len < 1:
            raise ConfigError("max_word_len", f"must be positive, got {self.max_word_len}")
        if self.max_elements < 1:
            raise ConfigError("max_elements", f"must be positive, got {self.max_elements}")
        if self.length < 1:
            raise ConfigError("length", f"must be positive, got {self.length}")
        if self.depth < 0:
            raise ConfigError("depth", f"must be nonnegative, got {self.depth}")
        if self.format not in ("text", "json"):
            raise ConfigError("format", f"must be 'text' or 'json', got {self.format!r}")
        lo, hi = self.search_window
        if hi <= lo:
            raise ConfigError("search_window", f"empty window [{lo}, {hi})")
        try:
            carrier = carrier_from_json(self.carrier)
        except (KeyError, TypeError, ValueError) as err:
            raise ConfigError("carrier", str(err)) from err
        if self.const_window is not None and not self.const_window:
            raise ConfigError("const_window", "must be nonempty")
        for key in ("probe", "const_window"):
            pts = getattr(self, key)
            if pts is None:
                continue
            bad = [x for x in pts if x not in carrier.window_points()]
            if bad:
                raise ConfigError(key, f"points {bad[:5]} lie outside the display window {list(carrier.window)}")
        if not self.family and not self.generators:
            raise ConfigError("generators", "give either a generator family or a generator list")

    @classmethod
    def from_dict(cls, d: dict) -> RunConfig:
        d = dict(d)
        if "scenario" in d:
            base = catalog._load(d.pop("scenario"))
            base.update(d)
            d = base
        sp = d.pop("special", None) or {}
        known = {f for f in cls.__dataclass_fields__}
        unknown = set(d) - known - {"description", "expectations"}
        if unknown:
            raise ConfigError(sorted(unknown)[0], "unknown configuration key")
        if "carrier" not in d:
            raise ConfigError("carrier", "missing")
        kw: dict[str, Any] = {k: v for k, v in d.items() if k in known}
        kw.setdefault("name", "custom")
        for key in ("const_window", "probe"):
            if key in kw and kw[key] is not None:
                kw[key] = _as_points(kw[key], key)
        if "generators" in kw:
            kw["generators"] = tuple(kw["generators"])
        for k in ("x0", "length"):
            if k in sp and k not in kw:
                kw[k] = sp[k]
        if "window" in sp and "search_window" not in kw:
            kw["search_window"] = sp["window"]
        if "search_window" in kw:
            sw = kw["search_window"]
            if not (isinstance(sw, (list, tuple)) and len(sw) == 2):
                raise ConfigError("search_window", f"expected [lo, hi], got {sw!r}")
            kw["search_window"] = (int(sw[0]), int(sw[1]))
        return cls(**kw)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["generators"] = list(self.generators)
        for k in ("const_window", "probe"):
            if d[k] is not None:
                d[k] = list(d[k])
        d["search_window"] = list(self.search_window)
        return d

    def scenario(self) -> catalog.Scenario:
        d = {
            "name": self.name,
            "carrier": self.carrier,
            "max_word_len": self.max_word_len,
            "max_elements": self.max_elements,
            "depth": self.depth,
            "special": {"x0": self.x0, "length": self.length, "window": list(self.search_window)},
        }
        if self.family:
            d["family"] = self.family
        else:
            d["generators"] = list(self.generators)
        if self.const_window is not None:
            d["const_window"] = list(self.const_window)
        if self.probe is not None:
            d["probe"] = list(self.probe)
        return catalog.scenario_from_dict(d)


def _as_points(v, key: str) -> tuple[int, ...]:
    if isinstance(v, dict):
        return tuple(range(int(v["lo"]), int(v["hi"])))
    if isinstance(v, str):
        return parse_range(v, key)
    try:
        return tuple(int(x) for x in v)
    except (TypeError, ValueError) as err:
        raise ConfigError(key, f"expected a list of integers, got {v!r}") from err


def parse_range(text: str, key: str = "range") -> tuple[int, ...]:
    """``lo:hi`` (half-open) or a comma-separated list."""
    try:
        if ":" in text:
            lo, hi = text.split(":")
            return tuple(range(int(lo), int(hi)))
        return tuple(int(x) for x in text.split(",") if x.strip())
    except ValueError as err:
        raise ConfigError(key, f"cannot parse {text!r}; use lo:hi or a,b,c") from err


# -- commands -------------------------------------------------------------------------


def _provenance(cfg: RunConfig, sc: catalog.Scenario) -> dict:
    cl = sc.closure
    return {
        "config": cfg.to_dict(),
        "closure_size": len(cl),
        "closure_complete": cl.complete,
    }


def cmd_analyze(cfg: RunConfig) -> tuple[int, dict]:
    sc = cfg.scenario()
    rep = discreteness_report(sc.subbase, sc.probe)
    rep["provenance"] = _provenance(cfg, sc)
    return EXIT_OK, rep


def _sequence(cfg: RunConfig, sc: catalog.Scenario):
    return sc.special_sequence()


def cmd_special(cfg: RunConfig) -> tuple[int, dict]:
    sc = cfg.scenario()
    seq = _sequence(cfg, sc)
    verdict = verify_special(replace(seq, verified=False))
    return EXIT_OK, {"sequence": seq.to_json(), "verdict": verdict.to_json(), "provenance": _provenance(cfg, sc)}


def cmd_open(cfg: RunConfig, set_json: dict, strict: bool = False) -> tuple[int, dict]:
    sc = cfg.scenario()
    seq = _sequence(cfg, sc)
    fb = ft.tail_filter(seq)
    u = _kset(set_json, sc.carrier, "set")
    v = ft.is_open(u, fb, sc.closure, strict=strict)
    return EXIT_OK, {
        "set": u.to_json(),
        "verdict": v.to_json(),
        "sequence_length": len(seq.points),
        "provenance": _provenance(cfg, sc),
    }


def cmd_separate(cfg: RunConfig, a_json: dict, b_json: dict) -> tuple[int, dict]:
    sc = cfg.scenario()
    seq = _sequence(cfg, sc)
    fb = ft.tail_filter(seq)
    a0, b0 = _kset(a_json, sc.carrier, "a"), _kset(b_json, sc.carrier, "b")
    if not a0.isdisjoint(b0):
        raise ConfigError("a", "the two sets must be disjoint")
    res = ft.separate(a0, b0, fb, sc.closure, cfg.depth)
    out = res.to_json()
    out["sequence_length"] = len(seq.points)
    out["provenance"] = _provenance(cfg, sc)
    return EXIT_OK, out


def cmd_catalog(names: Sequence[str] | None = None) -> tuple[int, dict]:
    rep = catalog.run_catalog(names)
    return (EXIT_OK if rep["mismatches"] == 0 else EXIT_MISMATCH), rep


def _kset(d, carrier, key: str) -> KSet:
    if isinstance(d, str):
        d = _read_json_arg(d, key)
    try:
        return KSet.from_json(d, carrier)
    except (KeyError, TypeError, ValueError) as err:
        raise ConfigError(key, str(err)) from err


def _read_json_arg(text: str, key: str):
    """Inline JSON, or ``@path`` to read it from a file."""
    try:
        if text.startswith("@"):
            return json.loads(Path(text[1:]).read_text())
        return json.loads(text)
    except (OSError, json.JSONDecodeError) as err:
        raise ConfigError(key, f"cannot read JSON: {err}") from err


# -- rendering ------------------------------------------------------------------------


def render_json(report: dict) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


def render_text(command: str, report: dict) -> str:
    lines = []
    if command == "analyze":
        p = report["parameters"]
        lines.append(
            f"closure {p['closure_size']} maps (word length {p['max_word_len']}, "
            f"{'complete' if p['closure_complete'] else 'truncated'}), subbase {p['subbase_size']} sets, "
            f"constants {p['const_window']}"
        )
        for r in report["points"]:
            cert = ", ".join(r["certificate"]) if r["certificate"] else "-"
            psi = r.get("psi", {}).get("value", "")
            lines.append(f"  x={r['point']:>4}  isolated={str(r['isolated']):5}  psi={psi}  cert=[{cert}]")
        s = report["summary"]
        lines.append(f"verdict: {s['verdict']}" + (f" at x={s['point']}" if "point" in s else ""))
    elif command == "special":
        seq, v = report["sequence"], report["verdict"]
        lines.append(f"points ({len(seq['points'])}): {seq['points']}")
        lines.append(f"enumeration: {len(seq['enumeration'])} maps; verified={v['ok']} padded={v['padded']}")
    elif command == "open":
        v = report["verdict"]
        lines.append(f"verdict: {v['status']} (checked {v['checked_maps']} maps, closure complete={v['closure_complete']})")
        if "witness_map" in v:
            lines.append(f"witness map {v['witness_map']}, trace of preimage {v['witness_preimage']['points']}")
    elif command == "separate":
        for n, (a, b) in enumerate(zip(report["A"], report["B"])):
            lines.append(f"  n={n}  |A|={len(a['points'])}  |B|={len(b['points'])}  disjoint={report['disjoint_at_depth'][n]}")
        lines.append(f"disjoint at every depth: {report['disjoint']}")
        lines.extend(f"warning: {w}" for w in report["warnings"])
    elif command == "catalog":
        for sc in report["scenarios"]:
            for r in sc["results"]:
                mark = "ok  " if r["ok"] else "FAIL"
                lines.append(f"{mark} {sc['scenario']:<16} {r['check']:<26} {r['claim']}")
        lines.append(f"mismatches: {report['mismatches']}")
    return "\n".join(lines) + "\n"


# -- argument handling ----------------------------------------------------------------


def _common(p: argparse.ArgumentParser) -> None:
    src = p.add_mutually_exclusive_group()
    src.add_argument("--scenario", help="named scenario (see the catalog command)")
    src.add_argument("--config", type=Path, help="JSON run configuration")
    p.add_argument("--probe", help="probe points, lo:hi or a,b,c")
    p.add_argument("--max-word-len", type=int)
    p.add_argument("--max-elements", type=int)
    p.add_argument("--const-window", help="constants, lo:hi or a,b,c")
    p.add_argument("--length", type=int, help="special sequence length")
    p.add_argument("--search-window", help="lo:hi range searched for sequence points")
    p.add_argument("--depth", type=int)
    p.add_argument("--format", choices=("text", "json"), default=None)
    p.add_argument("--seed", type=int)
    p.add_argument("--out", type=Path, help="write the report here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gtopology", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)
    _common(sub.add_parser("analyze", help="isolation and pseudocharacter at probe points"))
    _common(sub.add_parser("special", help="build and verify a special sequence"))
    p = sub.add_parser("open", help="openness of a set in the tail-filter topology")
    _common(p)
    p.add_argument("--set", required=True, help='KSet JSON, e.g. {"kind":"finite","points":[0]}, or @file')
    p.add_argument("--strict", action="store_true", help="report indeterminate on incomplete closures")
    p = sub.add_parser("separate", help="separation chains for two disjoint closed sets")
    _common(p)
    p.add_argument("--a", required=True, help="first set as KSet JSON or @file")
    p.add_argument("--b", required=True, help="second set as KSet JSON or @file")
    p = sub.add_parser("catalog", help="run every scenario's expectations")
    p.add_argument("--scenario", action="append", help="restrict to these scenarios")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--out", type=Path)
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    if args.config is not None:
        d = _read_json_arg("@" + str(args.config), "config")
        if not isinstance(d, dict):
            raise ConfigError("config", "expected a JSON object")
    elif args.scenario is not None:
        d = {"scenario": args.scenario}
    else:
        raise ConfigError("scenario", "give --scenario NAME or --config FILE")
    cfg = RunConfig.from_dict(d)
    over: dict[str, Any] = {}
    if args.probe is not None:
        over["probe"] = parse_range(args.probe, "probe")
    if args.const_window is not None:
        over["const_window"] = parse_range(args.const_window, "const_window")
    if args.search_window is not None:
        sw = parse_range(args.search_window, "search_window")
        over["search_window"] = (sw[0], sw[-1] + 1) if sw else (0, 0)
    for key in ("max_word_len", "max_elements", "length", "depth", "seed", "format"):
        v = getattr(args, key)
        if v is not None:
            over[key] = v
    return replace(cfg, **over) if over else cfg


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    fmt = args.format or "text"
    try:
        if args.command == "catalog":
            code, report = cmd_catalog(args.scenario)
        else:
            cfg = config_from_args(args)
            fmt = cfg.format
            if args.command == "analyze":
                code, report = cmd_analyze(cfg)
            elif args.command == "special":
                code, report = cmd_special(cfg)
            elif args.command == "open":
                code, report = cmd_open(cfg, args.set, args.strict)
            else:
                code, report = cmd_separate(cfg, args.a, args.b)
    except ConfigError as err:
        print(f"config error: {err}", file=sys.stderr)
        return EXIT_CONFIG
    except BudgetExceededError as err:
        print(f"budget exceeded: {err}", file=sys.stderr)
        return EXIT_BUDGET
    except WindowTooSmallError as err:
        print(f"construction failed: {err}", file=sys.stderr)
        return EXIT_CONSTRUCTION
    except GTopologyError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_CONFIG
    text = render_json(report) if fmt == "json" else render_text(args.command, report)
    if args.out is not None:
        args.out.write_text(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
