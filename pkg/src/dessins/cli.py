"""Command-line front end.

    dessins census A5 --format json
    dessins mobius PSL2_7
    dessins tsystems A5 --format csv
    dessins ucover A5 --include-ucover-orbits
    dessins formula rL2p 13
    dessins verify D7

Exit codes: 0 success, 1 computation error, 2 usage error, 3 verification
failure.  With ``--format json`` errors are also written to stderr as JSON.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from . import __version__
from .census import CensusReport, check_automorphisms, dessin_census, simple_bound_window
from .errors import (DessinError, InternalCheckFailed, NotApplicable, ParseError, TimeBudgetExceeded,
                     UnsupportedFamily, ValidationError)
from .formulas import closed_form_r, r_cyclic, r_l2_2e, r_l2p, r_suzuki
from .lattice import check_moebius_identity, phi2_via_moebius
from .report import CSV_FIELDS, census_rows, document, dumps, load_lattice, mobius_summary, to_csv
from .tsystems import omega_orbits
from .ucover import closed_form_ucover, ucover_record
from .zoo import construct_group, parse_descriptor

EXIT_OK, EXIT_COMPUTE, EXIT_USAGE, EXIT_VERIFY = 0, 1, 2, 3

# Whole covers with more blocks than this are only built with
# --attempt-l27-ucover (L2(7), r = 57, is the smallest case of interest).
LARGE_COVER_BLOCKS = 50
DEFAULT_TIME_BUDGET = 600.0

FORMULAS = {"rC": r_cyclic, "rL2p": r_l2p, "rL2_2e": r_l2_2e, "rSz": r_suzuki}



class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


@dataclass
class RunConfig:
    command: str
    descriptor: str
    format: str = "json"
    cache_dir: str | None = None
    threads: int = 1
    include_ucover_orbits: bool = False
    attempt_l27_ucover: bool = False
    orbit: int | None = None
    regular: bool = False
    time_budget: float = DEFAULT_TIME_BUDGET
    params: list[str] = field(default_factory=list)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "text"), default="json")
    common.add_argument("--cache-dir", default=None,
                        help="directory for cached lattices (default: $DESSIN_CACHE_DIR, else no cache)")
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--include-ucover-orbits", action="store_true",
                        help="also build the cover of every T2-system orbit")
    common.add_argument("--attempt-l27-ucover", action="store_true",
                        help=f"allow whole covers with more than {LARGE_COVER_BLOCKS} blocks (e.g. L2(7))")
    common.add_argument("--time-budget", type=float, default=DEFAULT_TIME_BUDGET,
                        help="seconds allowed for a large cover before it is skipped")

    parser = _Parser(prog="dessins", description="Regular dessins: census, Moebius counts, "
                                                 "T2-systems and universal covers.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name, text in (("census", "classes of regular dessins"), ("mobius", "subgroup lattice and mu"),
                       ("tsystems", "orbits of the Nielsen moves"), ("verify", "run every cross-check")):
        p = sub.add_parser(name, parents=[common], help=text)
        p.add_argument("descriptor")
    p = sub.add_parser("ucover", parents=[common], help="universal cover U(G) or U_i(G)")
    p.add_argument("descriptor")
    p.add_argument("--orbit", type=int, default=None, help="T2-system orbit id")
    p.add_argument("--regular", action="store_true", help="use right-regular blocks")
    p = sub.add_parser("formula", parents=[common], help="closed-form counts")
    p.add_argument("name", choices=sorted(FORMULAS))
    p.add_argument("params", nargs="+")
    return parser


def parse_config(argv: list[str]) -> RunConfig:
    ns = build_parser().parse_args(argv)
    if ns.threads < 1:
        raise UsageError("--threads must be at least 1")
    cache = ns.cache_dir or os.environ.get("DESSIN_CACHE_DIR") or None
    cfg = RunConfig(command=ns.command, descriptor=ns.name if ns.command == "formula" else ns.descriptor,
                    format=ns.format, cache_dir=cache, threads=ns.threads,
                    include_ucover_orbits=ns.include_ucover_orbits,
                    attempt_l27_ucover=ns.attempt_l27_ucover, orbit=getattr(ns, "orbit", None),
                    regular=getattr(ns, "regular", False), time_budget=ns.time_budget,
                    params=getattr(ns, "params", []))
    if cfg.command != "formula":
        parse_descriptor(cfg.descriptor)      # validate before any work
    return cfg


# -- commands -------------------------------------------------------------

def _header(cfg: RunConfig) -> dict:
    return {"tool": "dessins", "version": __version__, "command": cfg.command, "descriptor": cfg.descriptor}


def _census(cfg: RunConfig):
    G = construct_group(cfg.descriptor)
    L, M, _ = load_lattice(G, cfg.cache_dir)
    return G, dessin_census(G, L, M, threads=cfg.threads)


def _needs_flag(census: CensusReport, cfg: RunConfig) -> bool:
    return census.r > LARGE_COVER_BLOCKS and not cfg.attempt_l27_ucover


def _whole_cover(census: CensusReport, cfg: RunConfig):
    """The whole cover, or (None, reason) when it is gated or runs out of time."""
    if _needs_flag(census, cfg):
        return None, f"r = {census.r} blocks; pass --attempt-l27-ucover to build this cover"
    budget = cfg.time_budget if census.r > LARGE_COVER_BLOCKS else None
    try:
        return ucover_record(census, regular=cfg.regular, time_budget=budget), None
    except TimeBudgetExceeded as exc:
        return None, f"skipped: {exc}"


def cmd_census(cfg: RunConfig):
    G, census = _census(cfg)
    ts = omega_orbits(census) if cfg.format == "csv" else None
    if cfg.format == "csv":
        return to_csv(census_rows(census, ts), CSV_FIELDS), EXIT_OK
    if cfg.format == "text":
        lines = [f"{G.label}: |G| = {G.order}, |Aut G| = {census.aut_order}, r = {census.r}",
                 "genus histogram: " + ", ".join(f"{g}: {k}" for g, k in census.genus_histogram().items())]
        lines += [f"  {(t, g)}: {k}" for (t, g), k in sorted(census.by_type_genus.items())]
        return "\n".join(lines) + "\n", EXIT_OK
    return dumps(document(G, census, header=_header(cfg))), EXIT_OK


def cmd_mobius(cfg: RunConfig):
    G = construct_group(cfg.descriptor)
    L, M, _ = load_lattice(G, cfg.cache_dir)
    summary = mobius_summary(L, M)
    summary["phi2"] = str(phi2_via_moebius(L, M))
    if cfg.format == "csv":
        return to_csv(summary["classes"], ("class", "order", "class_size", "mu", "maximal")), EXIT_OK
    if cfg.format == "text":
        lines = [f"{G.label}: {summary['subgroups']} subgroups in {summary['subgroup_classes']} classes, "
                 f"phi2 = {summary['phi2']}"]
        lines += [f"  class {r['class']}: order {r['order']}, size {r['class_size']}, mu {r['mu']}"
                  for r in summary["classes"]]
        return "\n".join(lines) + "\n", EXIT_OK
    return dumps(document(G, header=_header(cfg), mobius=summary)), EXIT_OK


def cmd_tsystems(cfg: RunConfig):
    G, census = _census(cfg)
    ts = omega_orbits(census)
    if cfg.format == "csv":
        return to_csv(census_rows(census, ts), CSV_FIELDS), EXIT_OK
    if cfg.format == "text":
        lines = [f"{G.label}: r = {census.r}, nu = {ts.nu}"]
        lines += [f"  orbit {o.orbit_id}: length {o.length}, commutator order {o.commutator_order}"
                  for o in ts.orbits]
        return "\n".join(lines) + "\n", EXIT_OK
    return dumps(document(G, census, ts, header=_header(cfg))), EXIT_OK


def cmd_ucover(cfg: RunConfig):
    G, census = _census(cfg)
    ts = omega_orbits(census)
    whole, note = None, None
    if cfg.orbit is not None:
        if not 0 <= cfg.orbit < ts.nu:
            raise UsageError(f"--orbit must be in 0..{ts.nu - 1}")
        whole = ucover_record(census, cfg.orbit, ts, regular=cfg.regular)
    else:
        whole, note = _whole_cover(census, cfg)
    orbits = None
    if cfg.include_ucover_orbits:
        orbits = [ucover_record(census, i, ts, regular=cfg.regular) for i in range(ts.nu)]
    records = ([whole] if whole else []) + (orbits or [])
    if cfg.format == "csv":
        rows = [{**r.to_dict(), "type": " ".join(map(str, r.type))} for r in records]
        return to_csv(rows, ("group", "scope", "r", "degree", "order", "type", "genus")), EXIT_OK
    if cfg.format == "text":
        lines = [f"{r.scope}: r = {r.r}, |G-bar| = {r.order}, type {r.type}, genus {r.genus}" for r in records]
        if note:
            lines.append(note)
        return "\n".join(lines) + "\n", EXIT_OK
    extra = {"universal_cover_note": note} if note else {}
    return dumps(document(G, census, ts, whole, orbits, header=_header(cfg), **extra)), EXIT_OK


def cmd_formula(cfg: RunConfig):
    fn = FORMULAS[cfg.descriptor]
    try:
        args = [int(p) for p in cfg.params]
    except ValueError:
        raise UsageError("formula parameters must be integers") from None
    if len(args) != 1:
        raise UsageError(f"{cfg.descriptor} takes exactly one parameter")
    value = fn(args[0])
    if cfg.format == "csv":
        return to_csv([{"formula": cfg.descriptor, "param": args[0], "value": value}],
                      ("formula", "param", "value")), EXIT_OK
    if cfg.format == "text":
        return f"{value}\n", EXIT_OK
    return dumps({"schema_version": 1, "header": _header(cfg),
                  "formula": {"name": cfg.descriptor, "param": args[0], "value": str(value)}}), EXIT_OK


def _check(results: list, name: str, fn) -> None:
    try:
        detail = fn()
        results.append({"check": name, "status": "pass", "detail": detail or ""})
    except (NotApplicable, UnsupportedFamily) as exc:
        results.append({"check": name, "status": "skip", "detail": str(exc)})
    except (InternalCheckFailed, AssertionError) as exc:
        results.append({"check": name, "status": "fail", "detail": str(exc)})


def run_checks(cfg: RunConfig) -> tuple[object, list[dict]]:
    """Every applicable cross-check for the group; one result dict per check."""
    G = construct_group(cfg.descriptor)
    desc = G.descriptor
    L, M, _ = load_lattice(G, cfg.cache_dir)
    census = dessin_census(G, L, M, threads=cfg.threads, strict=False)
    results: list[dict] = []

    def expect(cond, msg):
        if not cond:
            raise InternalCheckFailed(msg)

    _check(results, "moebius-delta", lambda: check_moebius_identity(L, M))
    _check(results, "phi2-moebius-vs-direct",
           lambda: expect(census.phi2 == census.phi2_moebius, f"{census.phi2} != {census.phi2_moebius}")
           or f"phi2 = {census.phi2}")
    _check(results, "r-moebius-vs-orbits",
           lambda: expect(census.moebius_r == census.r, f"{census.moebius_r} != {census.r}") or f"r = {census.r}")
    _check(results, "automorphisms", lambda: check_automorphisms(G, census.aut, samples=2000))

    def closed_r():
        value = closed_form_r(desc)
        expect(value == census.r, f"closed form {value} != census {census.r}")
        return f"r = {value}"
    _check(results, "closed-form-r", closed_r)

    def genera():
        for c in census.classes:
            expect(c.genus >= 0, f"class {c.class_id} has negative genus")
    _check(results, "genus-nonnegative", genera)

    ts_holder = {}

    def tsys():
        ts_holder["ts"] = omega_orbits(census)
        return f"nu = {ts_holder['ts'].nu}"
    _check(results, "t-systems-invariants", tsys)

    def bounds():
        lo, hi = simple_bound_window(G, L, census.aut)
        expect(lo <= census.r <= hi, f"r = {census.r} outside [{lo}, {hi}]")
        return f"{float(Fraction(lo)):.3f} <= {census.r} <= {hi}"
    _check(results, "simple-bound-window", bounds)

    def ucover():
        closed = closed_form_ucover(desc)
        rec, note = _whole_cover(census, cfg)
        if rec is None:
            raise NotApplicable(note)
        expect((rec.order, rec.type, rec.genus) == (closed.order, closed.type, closed.genus),
               f"computed ({rec.order}, {rec.type}, {rec.genus}) != closed form "
               f"({closed.order}, {closed.type}, {closed.genus})")
        return f"|G-bar| = {rec.order}"
    _check(results, "ucover-vs-closed-form", ucover)
    return G, results


def cmd_verify(cfg: RunConfig):
    G, results = run_checks(cfg)
    ok = all(r["status"] != "fail" for r in results)
    code = EXIT_OK if ok else EXIT_VERIFY
    if cfg.format == "csv":
        return to_csv(results, ("check", "status", "detail")), code
    if cfg.format == "text":
        lines = [f"{r['status'].upper():4} {r['check']}  {r['detail']}".rstrip() for r in results]
        return "\n".join(lines) + "\n", code
    return dumps(document(G, header=_header(cfg), verify={"ok": ok, "checks": results})), code


HANDLERS = {"census": cmd_census, "mobius": cmd_mobius, "tsystems": cmd_tsystems,
            "ucover": cmd_ucover, "formula": cmd_formula, "verify": cmd_verify}


def run(cfg: RunConfig) -> tuple[str, int]:
    return HANDLERS[cfg.command](cfg)


def _error(fmt: str, exc: BaseException, code: int) -> int:
    if fmt == "json":
        sys.stderr.write(json.dumps({"error": {"type": type(exc).__name__, "message": str(exc),
                                               "exit_code": code}}, sort_keys=True) + "\n")
    else:
        sys.stderr.write(f"dessins: error: {exc}\n")
    return code


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    fmt = "json"
    if "--format" in argv and argv.index("--format") + 1 < len(argv):
        fmt = argv[argv.index("--format") + 1]
    try:
        cfg = parse_config(argv)
        out, code = run(cfg)
    except (UsageError, ParseError, ValidationError) as exc:
        return _error(fmt, exc, EXIT_USAGE)
    except InternalCheckFailed as exc:
        return _error(fmt, exc, EXIT_VERIFY)
    except DessinError as exc:
        return _error(fmt, exc, EXIT_COMPUTE)
    sys.stdout.write(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
