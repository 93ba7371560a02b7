"""Command-line entry point: ``dercost {compute,risk,verify,battery} SCENARIO``.

Exit codes: 0 success, 1 invalid input, 2 file I/O failure.
"""
from __future__ import annotations

import argparse
import sys
import warnings
from dataclasses import replace
from pathlib import Path

from . import __version__
from .battery import annual_effective_ah, battery_cost_per_effective_ah, charge_life, read_events
from .econ import Approach, rate
from .errors import ValidationError
from .reports import render_table, write_csv
from .risk import rank_approaches, risk_report
from .scenario import Scenario, ScenarioIOError, load_scenario
from .verification import gate_errors, verification_study

EXIT_OK, EXIT_VALIDATION, EXIT_IO = 0, 1, 2

RISK_APPROACHES = (Approach.I, Approach.IIIA, Approach.IIIB)

RECONSTRUCTION_CAVEAT = (
    "note: the annual-usage outcome grid is the default reconstruction "
    "(indices 1..5 -> 7300..8100 h); expected costs and risks are not a "
    "reproduction of published tables."
)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_VALIDATION, f"{self.prog}: error: {message}\n")


def _horizon_list(text: str) -> tuple[int, ...]:
    items = [t for t in text.replace(" ", "").split(",") if t]
    try:
        years = tuple(int(t) for t in items)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of years: {text!r}") from None
    return years


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("scenario", help="scenario file, or the name of a bundled scenario (e.g. dig_table1)")
    common.add_argument("--approach", choices=["I", "II", "IIIA", "IIIB"], help="restrict to one approach")
    common.add_argument("--year", type=int, help="operating year j for Approach III.B (0 = first year)")
    common.add_argument("--gate-tol", type=float, help="accuracy gate tolerance as a fraction (default 0.015)")
    common.add_argument("--pv", action="store_true", default=None, help="use present-value accumulation for the gate")
    common.add_argument("--horizons", type=_horizon_list, help="comma-separated project horizons in years")
    common.add_argument("--surface", action="store_true", help="also write the sensitivity surfaces")
    common.add_argument(
        "--fractional-years", action="store_true", default=None,
        help="allow a non-integer one-lifetime horizon for Approach I",
    )
    common.add_argument("--events", help="discharge event CSV (battery; overrides the scenario)")
    common.add_argument("--out", default=".", help="directory for CSV output (default: current directory)")

    parser = _Parser(prog="dercost", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"dercost {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    sub.add_parser("compute", parents=[common], help="deterministic cost rate per approach")
    sub.add_parser("risk", parents=[common], help="expected cost, risk and ranking")
    sub.add_parser("verify", parents=[common], help="accumulated payments vs. the base-case")
    sub.add_parser("battery", parents=[common], help="cost per effective Ah from a discharge log")
    return parser


def _settings(args, scn: Scenario):
    opts = scn.options
    return {
        "year": opts.year if args.year is None else args.year,
        "gate_tol": opts.gate_tolerance if args.gate_tol is None else args.gate_tol,
        "pv": opts.pv if args.pv is None else args.pv,
        "horizons": opts.horizons if args.horizons is None else args.horizons,
        "fractional": opts.fractional_years if args.fractional_years is None else args.fractional_years,
    }


def _with_battery_usage(args, scn: Scenario) -> tuple[Scenario, list]:
    """For battery scenarios, set annual usage from the event log when one is given."""
    if scn.kind != "battery":
        return scn, []
    path = Path(args.events) if args.events else scn.events_path
    if path is None:
        return scn, []
    try:
        events = read_events(path)
    except OSError as exc:
        raise ScenarioIOError(f"cannot read discharge log {path}: {exc.strerror or exc}") from exc
    annual = annual_effective_ah(events, scn.battery)
    if annual <= 0:
        raise ValidationError("battery.events", "discharge log has no effective Ah")
    return replace(scn, equipment=replace(scn.equipment, annual_usage=annual)), events


def _approaches(args, default=tuple(Approach)):
    return (Approach.parse(args.approach),) if args.approach else default


def cmd_compute(args, scn: Scenario) -> int:
    cfg = _settings(args, scn)
    horizon = "fractional" if cfg["fractional"] else "strict"
    s = scn.equipment
    rows = []
    for approach in _approaches(args):
        if approach is Approach.IIIB:
            years = [cfg["year"]] if args.year is not None else range(s.project_years)
            for j in years:
                rows.append((str(approach), j, rate(approach, s, scn.financial, j, horizon).value, f"$/{scn.unit}"))
        else:
            rows.append((str(approach), 0, rate(approach, s, scn.financial, horizon=horizon).value, f"$/{scn.unit}"))
    header = ("approach", "year", "rate", "unit")
    print(render_table(header, rows))
    path = write_csv(Path(args.out) / "compute.csv", header, rows, scn.digest)
    print(f"wrote {path}")
    return EXIT_OK


def cmd_risk(args, scn: Scenario) -> int:
    cfg = _settings(args, scn)
    horizon = "fractional" if cfg["fractional"] else "round"
    mode = "pv" if cfg["pv"] else "nominal"
    errors = gate_errors(scn.equipment, scn.financial, RISK_APPROACHES, mode, horizon)
    reports = [
        risk_report(
            a, scn.lifetime, scn.usage, scn.equipment, scn.financial,
            errors[a], cfg["gate_tol"], cfg["year"], horizon,
        )
        for a in RISK_APPROACHES
    ]
    ranking = rank_approaches(reports, cfg["gate_tol"])
    ranks = {r.approach: k + 1 for k, r in enumerate(ranking)}
    header = ("approach", "expected_cost", "risk", "gate_error", "gate_passed", "rank")
    rows = [
        (str(r.approach), r.expected_cost, r.risk, r.gate_error, r.gate_passed, ranks.get(r.approach, ""))
        for r in reports
    ]
    print(render_table(header, rows))
    print("ranking: " + " < ".join(f"{r.approach} (risk {r.risk:.4g})" for r in ranking))
    excluded = [str(r.approach) for r in reports if r.approach not in ranks]
    if excluded:
        print(f"excluded by the {cfg['gate_tol']:.3g} accuracy gate ({mode}): {', '.join(excluded)}")
    if scn.uses_reconstructed_usage_grid:
        print(RECONSTRUCTION_CAVEAT, file=sys.stderr)
    out = Path(args.out)
    print(f"wrote {write_csv(out / 'risk.csv', header, rows, scn.digest)}")
    if args.surface:
        u = scn.unit.lower()
        srows = [
            (str(r.approach), life, usage, cost)
            for r in reports
            for life, usage, cost in r.surface.long_rows()
        ]
        path = write_csv(out / "surface.csv", ("approach", f"lifetime_{u}", f"usage_{u}", "cost"), srows, scn.digest)
        print(f"wrote {path}")
    return EXIT_OK


def cmd_verify(args, scn: Scenario) -> int:
    cfg = _settings(args, scn)
    if not cfg["horizons"]:
        raise ValidationError("horizons", "at least one project horizon is required")
    horizon = "fractional" if cfg["fractional"] else "strict"
    study = verification_study(scn.equipment, scn.financial, cfg["horizons"], horizon=horizon)
    if args.approach:
        keep = {Approach.I, Approach.parse(args.approach)}
        study = [row for row in study if row.approach in keep]
    header = ("project_years", "approach", "total_payment", "error_vs_base", "mode")
    rows = [(r.project_years, str(r.approach), r.total_payment, r.error_vs_base, r.mode) for r in study]
    gate_mode = "pv" if cfg["pv"] else "nominal"
    shown = [
        (r.project_years, str(r.approach), r.total_payment, r.error_vs_base, abs(r.error_vs_base) <= cfg["gate_tol"])
        for r in study
        if r.mode == gate_mode
    ]
    print(f"accumulated payments ({gate_mode}), gate tolerance {cfg['gate_tol']:.3g}")
    print(render_table(("project_years", "approach", "total_payment", "error_vs_base", "gate_passed"), shown))
    print(f"wrote {write_csv(Path(args.out) / 'verify.csv', header, rows, scn.digest)}")
    return EXIT_OK


def cmd_battery(args, scn: Scenario, events: list) -> int:
    if scn.kind != "battery":
        raise ValidationError("kind", "the battery command needs a scenario with kind = \"battery\"")
    if not events:
        raise ValidationError("battery.events", "no discharge log given (use --events or battery.events)")
    cfg = _settings(args, scn)
    horizon = "fractional" if cfg["fractional"] else "round"
    s, fp, j = scn.equipment, scn.financial, cfg["year"]
    annual = s.annual_usage
    print(f"charge life: {charge_life(scn.battery):.6g} Ah; economic life used: {s.economic_life:.6g} Ah")
    print(f"events: {len(events)}; annual effective discharge: {annual:.6g} Ah")
    rows = []
    for approach in _approaches(args):
        if approach is Approach.IIIB:
            for variant in ("lifetime", "annual"):
                value = battery_cost_per_effective_ah(s, fp, annual, j, variant).value
                rows.append((str(approach), variant, j, value))
        else:
            rows.append((str(approach), "", 0, rate(approach, s, fp, horizon=horizon).value))
    header = ("approach", "denominator", "year", "cost_per_ah")
    print(render_table(header, rows))
    print(f"wrote {write_csv(Path(args.out) / 'battery.csv', header, rows, scn.digest)}")
    return EXIT_OK


def _show_warning(message, category, filename, lineno, file=None, line=None):
    print(f"dercost: warning: {message}", file=sys.stderr)


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    with warnings.catch_warnings():
        warnings.simplefilter("default")
        warnings.showwarning = _show_warning
        try:
            scn = load_scenario(args.scenario)
            scn, events = _with_battery_usage(args, scn)
            if args.command == "compute":
                return cmd_compute(args, scn)
            if args.command == "risk":
                return cmd_risk(args, scn)
            if args.command == "verify":
                return cmd_verify(args, scn)
            return cmd_battery(args, scn, events)
        except ValidationError as exc:
            print(f"dercost: invalid input: {exc}", file=sys.stderr)
            return EXIT_VALIDATION
        except OSError as exc:
            print(f"dercost: {exc}", file=sys.stderr)
            return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
