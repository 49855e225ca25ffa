"""Command-line entry point: ``arc-contact <command> <scenario> [options]``."""

from __future__ import annotations

import argparse
import json
import logging
import math
import random
import sys
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence

from . import series
from .arcs import instantiate_family
from .errors import ArcContactError, DomainError, MaxStepsExceeded
from .groebner import DEFAULT_EXPONENT_CAP
from .invariants import (
    IsolatedResult,
    NotIsolatedResult,
    closure_of,
    contact_report,
    family_search,
    isolated_verdict,
    phi_sample,
    strictly_increasing,
    synthesize_family,
)
from .nash import DEFAULT_MAX_STEPS, nash_sequence
from .rees import ord_at_origin, tau_lower_bound, weight1_ideal
from .scenario import ParseError, Scenario, parse_scenario

log = logging.getLogger("arccontact")

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DOMAIN = 2


class UsageError(ArcContactError):
    pass


class VerificationFailed(DomainError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def q(value: Optional[Fraction]) -> Optional[str]:
    """Exact rational as a decimal-free string."""
    return None if value is None else str(Fraction(value))


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON report")
    common.add_argument("--prec", type=int, help="working precision for truncated series")
    common.add_argument("--seed", type=int, default=0, help="seed for sampling order")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = _Parser(prog="arc-contact", description=__doc__, parents=[common])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("closure", parents=[common], help="differential closure of the defining algebra")
    p.add_argument("file")
    p.add_argument("--poly")

    p = sub.add_parser("contact", parents=[common], help="order of contact of an arc")
    p.add_argument("file")
    p.add_argument("--arc", required=True)

    p = sub.add_parser("nash", parents=[common], help="Nash multiplicity sequence of an arc")
    p.add_argument("file")
    p.add_argument("--arc", required=True)
    p.add_argument("--full", action="store_true", help="continue past the first drop")

    p = sub.add_parser("isolated", parents=[common], help="is the origin isolated in Max mult?")
    p.add_argument("file")

    p = sub.add_parser("family", parents=[common], help="contact along an arc family")
    p.add_argument("file")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--family")
    g.add_argument("--auto-axis", metavar="VAR")
    p.add_argument("--range", default="1..10", help="N range for --auto-axis, e.g. 1..10")

    p = sub.add_parser("sample", parents=[common], help="sample normalized contact over monomial arcs")
    p.add_argument("file")
    p.add_argument("--cap", type=int)
    p.add_argument("--count", type=int)

    p = sub.add_parser("verify", parents=[common], help="dual-oracle and elimination consistency checks")
    p.add_argument("file")
    return parser


def _load(path: str) -> Scenario:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    return parse_scenario(text)


def _max_steps(sc: Scenario) -> int:
    return sc.options.get("max_steps", DEFAULT_MAX_STEPS)


def _arc(sc: Scenario, name: str):
    if name not in sc.arcs:
        raise UsageError(f"unknown arc {name!r}")
    return sc.arcs[name]


def _report_record(rep) -> Dict[str, Any]:
    rec = {
        "ord": q(rep.ord_phi),
        "r": q(rep.r),
        "r_bar": q(rep.r_bar),
        "rho": rep.rho,
        "rho_bar": q(rep.rho_bar),
        "rho_route": rep.rho_route,
    }
    if rep.elimination is not None:
        e = rep.elimination
        rec["elimination"] = {
            "variable": e.variable,
            "r_eliminated": q(e.r_eliminated),
            "variable_order": q(e.variable_order),
            "holds": e.holds,
        }
    return rec


def cmd_closure(sc: Scenario, args) -> List[Dict[str, Any]]:
    variety = sc.variety(args.poly)
    g = closure_of(variety, sc.weight_list(args.poly))
    return [
        {
            "poly": args.poly or "all",
            "generators": [
                {"poly": gen.poly.to_str(sc.variables), "weight": gen.weight} for gen in g.generators
            ],
            "weight1": [p.to_str(sc.variables) for p in weight1_ideal(g)],
            "ord": q(ord_at_origin(g).value),
            "tau_lower_bound": tau_lower_bound(g),
        }
    ]


def cmd_contact(sc: Scenario, args) -> List[Dict[str, Any]]:
    rep = contact_report(sc.variety(), _arc(sc, args.arc), sc.weight_list(), _max_steps(sc))
    return [dict(arc=args.arc, **_report_record(rep))]


def _fresh_name(taken: Sequence[str], base: str) -> str:
    name, k = base, 0
    while name in taken:
        k += 1
        name = f"{base}{k}"
    return name


def cmd_nash(sc: Scenario, args) -> List[Dict[str, Any]]:
    variety = sc.variety()
    if not variety.is_hypersurface:
        raise UsageError("the Nash simulator handles hypersurfaces only")
    names = sc.variables + (_fresh_name(sc.variables, "w"),)
    trace = nash_sequence(variety.polynomials[0], _arc(sc, args.arc), _max_steps(sc), full=args.full)
    steps = [
        {
            "chart": names[s.chart],
            "center": [q(c) for c in s.center],
            "strict_transform": s.strict_transform.to_str(names),
            "multiplicity": s.multiplicity,
        }
        for s in trace.steps
    ]
    return [
        {
            "arc": args.arc,
            "m": trace.m,
            "terminated": trace.terminated,
            "rho": trace.persistance,
            "steps": steps,
        }
    ]


def _family_text(sc: Scenario, fam) -> str:
    parts = []
    for v, t in zip(sc.variables, fam.terms):
        if t is None:
            parts.append(f"{v} -> 0")
            continue
        c, a, b = t
        lin = str(b) if a == 0 else (f"{a}*N" if a != 1 else "N") + (f"{b:+d}" if b else "")
        parts.append(f"{v} -> " + ("" if c == 1 else f"{c}*") + f"t^({lin})")
    return ", ".join(parts)


def cmd_isolated(sc: Scenario, args) -> List[Dict[str, Any]]:
    variety = sc.variety()
    declared = next(iter(sc.families.values()), None)
    rng = (declared.start, declared.stop) if declared else (1, 10)
    verdict = isolated_verdict(
        variety,
        cap=sc.options.get("cap", DEFAULT_EXPONENT_CAP),
        sample_cap=min(sc.options.get("cap", 8), 12),
        family_range=rng,
        family=declared,
    )
    if isinstance(verdict, IsolatedResult):
        rec = {"verdict": "ISOLATED", "Q": verdict.q, "exponents": verdict.exponents}
        if verdict.sample is not None:
            rec.update(
                sample_cap=verdict.sample.cap,
                sample_count=len(verdict.sample.entries),
                max_observed=q(verdict.sample.max_observed),
                violations=[{"arc": d, "r_bar": q(r)} for d, r in verdict.sample.violations],
            )
        return [rec]
    if isinstance(verdict, NotIsolatedResult):
        return [
            {
                "verdict": "NOT_ISOLATED",
                "axis": verdict.axis,
                "family": _family_text(sc, verdict.family) if verdict.family else None,
                "table": [{"N": n, "r_bar": q(rb)} for n, rb in verdict.table],
            }
        ]
    return [{"verdict": "UNKNOWN", "reason": verdict.reason}]


def _parse_range(text: str):
    try:
        lo, hi = text.split("..")
        return int(lo), int(hi)
    except ValueError:
        raise UsageError(f"bad range {text!r}; expected A..B") from None


def cmd_family(sc: Scenario, args) -> List[Dict[str, Any]]:
    variety = sc.variety()
    if args.family:
        if args.family not in sc.families:
            raise UsageError(f"unknown family {args.family!r}")
        fam = sc.families[args.family]
        rows = []
        for n in fam.values():
            arc = instantiate_family(fam, n)
            rows.append((n, arc, contact_report(variety, arc, sc.weight_list(), _max_steps(sc))))
    else:
        if args.auto_axis not in sc.variables:
            raise UsageError(f"unknown variable {args.auto_axis!r}")
        axis = sc.variables.index(args.auto_axis)
        lo, hi = _parse_range(args.range)
        fam = synthesize_family(variety, axis, lo, hi)
        rows = family_search(variety, axis, family=fam, max_steps=_max_steps(sc))
    out = []
    for n, arc, rep in rows:
        out.append(dict(N=n, arc=arc.to_str(sc.variables), **_report_record(rep)))
    increasing = strictly_increasing([rep.r_bar for _, _, rep in rows])
    for rec in out:
        rec["r_bar_increasing"] = increasing
    return out


def cmd_sample(sc: Scenario, args) -> List[Dict[str, Any]]:
    variety = sc.variety()
    cap = args.cap or sc.options.get("cap", 12)
    sample = phi_sample(variety, cap, count_cap=args.count)
    # processing order is shuffled; the report is sorted, so output is seed-independent
    entries = list(sample.entries)
    random.Random(args.seed).shuffle(entries)
    entries.sort(key=lambda e: tuple(int(x) for x in e[0].strip("()").split(",")))
    return [
        {
            "cap": cap,
            "count": len(entries),
            "max_observed": q(sample.max_observed),
            "min_observed": q(sample.min_observed),
            "violations": [{"arc": d, "r_bar": q(r)} for d, r in sample.violations],
            "entries": [{"arc": d, "r_bar": q(r)} for d, r in entries],
        }
    ]


def cmd_verify(sc: Scenario, args) -> List[Dict[str, Any]]:
    variety = sc.variety()
    closure = closure_of(variety, sc.weight_list())
    items = [(name, arc) for name, arc in sc.arcs.items()]
    for name, fam in sc.families.items():
        items.extend((f"{name}[N={n}]", instantiate_family(fam, n)) for n in fam.values())
    out = []
    for name, arc in items:
        rep = contact_report(variety, arc, closure=closure, max_steps=_max_steps(sc))
        rec = {
            "item": name,
            "r": q(rep.r),
            "rho": rep.rho,
            "rho_route": rep.rho_route,
            "floor_r": math.floor(rep.r),
            "dual_oracle": rep.dual_oracle_agrees,
            "elimination": None if rep.elimination is None else rep.elimination.holds,
        }
        out.append(rec)
    return out


COMMANDS = {
    "closure": cmd_closure,
    "contact": cmd_contact,
    "nash": cmd_nash,
    "isolated": cmd_isolated,
    "family": cmd_family,
    "sample": cmd_sample,
    "verify": cmd_verify,
}


def _format_value(v: Any) -> str:
    if isinstance(v, list):
        if v and isinstance(v[0], dict):
            return "\n" + "\n".join("    " + ", ".join(f"{k}={_format_value(x)}" for k, x in d.items()) for d in v)
        return "[" + ", ".join(_format_value(x) for x in v) + "]"
    if isinstance(v, dict):
        return "{" + ", ".join(f"{k}: {_format_value(x)}" for k, x in v.items()) + "}"
    if v is None:
        return "-"
    return str(v)


def render_text(report: Dict[str, Any]) -> str:
    lines = []
    if report["command"] is not None:
        lines.append(f"{report['command']}: {report['scenario']}")
    for rec in report["results"]:
        lines.append("")
        for k, v in rec.items():
            lines.append(f"  {k:18} {_format_value(v)}")
    for err in report["errors"]:
        lines.append(f"error: {err['error']}: {err['message']}")
    return "\n".join(lines)


def run_command(argv: Sequence[str]):
    """Execute a command; returns ``(report, exit_code)``."""
    report: Dict[str, Any] = {"command": None, "scenario": None, "results": [], "errors": []}
    saved_prec = series.DEFAULT_PRECISION
    try:
        args = build_parser().parse_args(list(argv))
        report["command"] = args.command
        report["scenario"] = args.file
        if args.verbose:
            logging.basicConfig(level=logging.DEBUG)
        sc = _load(args.file)
        prec = args.prec or sc.options.get("prec")
        if prec:
            series.DEFAULT_PRECISION = prec
        report["results"] = COMMANDS[args.command](sc, args)
        if args.command == "verify":
            bad = [r["item"] for r in report["results"] if not r["dual_oracle"] or r["elimination"] is False]
            if bad:
                raise VerificationFailed("checks failed for " + ", ".join(bad))
        code = EXIT_OK
    except (UsageError, ParseError, KeyError, ValueError) as exc:
        message = exc.args[0] if isinstance(exc, KeyError) and exc.args else str(exc)
        report["errors"].append({"error": type(exc).__name__, "message": message})
        code = EXIT_USAGE
    except DomainError as exc:
        rec = {"error": exc.name, "message": str(exc)}
        if isinstance(exc, MaxStepsExceeded) and exc.trace is not None:
            rec["partial_m"] = exc.trace.m
        report["errors"].append(rec)
        code = EXIT_DOMAIN
    finally:
        series.DEFAULT_PRECISION = saved_prec
    return report, code


def main(argv: Optional[Sequence[str]] = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    if not argv or argv[0] in ("-h", "--help"):
        build_parser().print_help()
        return EXIT_OK if argv else EXIT_USAGE
    report, code = run_command(argv)
    if "--json" in argv:
        print(json.dumps(report, sort_keys=False))
    else:
        text = render_text(report)
        print(text, file=sys.stderr if code and not report["results"] else sys.stdout)
    return code


if __name__ == "__main__":
    sys.exit(main())
