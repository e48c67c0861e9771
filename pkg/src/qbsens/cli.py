"""Command-line interface: ``qbsens rate|sensitivity|case-study|validate``."""

from __future__ import annotations

import argparse
import logging
import sys
from collections.abc import Sequence
from pathlib import Path

from .errors import QBSensError
from .fixture import fixture_text
from .perturb import displayed_scenarios, parse_scenarios
from .ratings import BurkeSign, parse_systems
from .report import (
    CaseStudySpec,
    run_case_study,
    run_sensitivity_report,
    to_csv,
    to_markdown,
    TABLE1_HEADER,
    TABLE2_HEADER,
    TABLE3_HEADER,
    CASE_STUDY_HEADER,
    fmt1,
)
from .sensitivity import rank_table
from .stats_model import load_dataset

log = logging.getLogger("qbsens")

EXIT_OK = 0
EXIT_DATA = 1
EXIT_USAGE = 2


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _common(parser: argparse.ArgumentParser, scenarios: bool = True) -> None:
    parser.add_argument("--data", required=True, help="season CSV (season,team,att,comp,yds,td,int,sk,skyd)")
    parser.add_argument("--systems", default="trad,burke,wow", help="comma list of trad, burke, wow")
    parser.add_argument(
        "--burke-sign", choices=[s.value for s in BurkeSign], default=BurkeSign.CORRECTED.value,
        help="sign of the Burke interception term",
    )
    parser.add_argument("--format", choices=["csv", "markdown"], default="csv")
    parser.add_argument("--out", type=Path, help="output directory (default: print to stdout)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qbsens",
        description="Sensitivity of quarterback rating rankings to small stat-line changes.",
    )
    parser.add_argument("--seed-fixture", action="store_true",
                        help="write the bundled synthetic dataset (to --out DIR/fixture.csv or stdout)")
    parser.add_argument("--out", type=Path, dest="fixture_out", help=argparse.SUPPRESS)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command")

    p = sub.add_parser("rate", help="print each season's ranking")
    _common(p)
    p.add_argument("--season", type=_int_list, help="comma list of seasons (default: all)")

    p = sub.add_parser("sensitivity", help="rank-change summary, maxima and pairwise tests")
    _common(p)
    p.add_argument("--scenarios", default=None,
                   help="comma list like TD+1,INT-3,SK+5,COMP+1%%; 'all' for the 20-scenario sweep "
                        "(default: magnitudes 1, 3, 5 of each kind)")
    p.add_argument("--clamp-interceptions", action="store_true",
                   help="cap interception removals at the team's total instead of excluding the team")

    p = sub.add_parser("case-study", help="base vs perturbed ranks for selected teams")
    _common(p)
    p.add_argument("--seasons", type=_int_list, required=True, help="comma list of seasons")
    p.add_argument("--teams", default="", help="comma list of team codes (default: top-K per season)")
    p.add_argument("--top-k", type=int, default=9)
    p.add_argument("--elite-threshold", type=int, default=6)
    p.add_argument("--scenarios", default="INT-3,INT+3")

    p = sub.add_parser("validate", help="check a data file against the schema")
    p.add_argument("--data", required=True)
    return parser


def _emit(text: str, out: Path | None, name: str) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    out.mkdir(parents=True, exist_ok=True)
    (out / name).write_text(text, encoding="utf-8", newline="\n")


def _render(header, rows, fmt: str) -> str:
    return to_markdown(header, rows) if fmt == "markdown" else to_csv(header, rows)


def _cmd_rate(args, dataset, systems) -> None:
    seasons = args.season or dataset.seasons
    header = ("season", "team", "system", "rating", "rank")
    rows = []
    for season in seasons:
        lines = dataset.season_lines(season)
        if not lines:
            raise QBSensError(f"season {season} not in dataset")
        for system in systems:
            table = rank_table(lines, system)
            rows += [(str(season), e.team, system.name, fmt1(e.rating), str(e.rank)) for e in table.entries]
    ext = "md" if args.format == "markdown" else "csv"
    _emit(_render(header, rows, args.format), args.out, f"ratings.{ext}")


def _cmd_sensitivity(args, dataset, systems, scenarios) -> None:
    report = run_sensitivity_report(
        dataset, systems, scenarios, clamp_interceptions=args.clamp_interceptions
    )
    for row in report.warning_rows():
        log.warning("excluded %s %s under %s (%s): %s", *row)
    if args.out is not None:
        for path in report.write(args.out, args.format):
            log.info("wrote %s", path)
        return
    if args.format == "markdown":
        sys.stdout.write(report.markdown())
        return
    for header, rows in (
        (TABLE1_HEADER, report.table1_rows()),
        (TABLE2_HEADER, report.table2_rows()),
        (TABLE3_HEADER, report.table3_rows()),
    ):
        sys.stdout.write(to_csv(header, rows) + "\n")


def _cmd_case_study(args, dataset, systems, scenarios) -> None:
    spec = CaseStudySpec(
        seasons=tuple(args.seasons),
        teams=tuple(t.strip() for t in args.teams.split(",") if t.strip()),
        top_k=args.top_k,
        scenarios=tuple(scenarios),
        elite_threshold=args.elite_threshold,
    )
    report = run_case_study(dataset, spec, systems)
    for c in report.cells:
        if c.reason:
            log.warning("%s %s %s %s: %s", c.season, c.team, c.system.name, c.label, c.reason)
    if args.out is not None:
        report.write(args.out, args.format)
    elif args.format == "markdown":
        sys.stdout.write(report.markdown())
    else:
        sys.stdout.write(to_csv(CASE_STUDY_HEADER, report.rows()))


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s: %(message)s",
        stream=sys.stderr,
    )

    if args.seed_fixture:
        _emit(fixture_text(), args.fixture_out, "fixture.csv")
        return EXIT_OK
    if args.command is None:
        parser.error("a command is required (rate, sensitivity, case-study, validate)")

    try:
        systems = parse_systems(args.systems, args.burke_sign) if hasattr(args, "systems") else []
        if hasattr(args, "systems") and not systems:
            parser.error("--systems must name at least one rating system")
        scenarios = []
        if getattr(args, "scenarios", None) is not None or args.command == "sensitivity":
            text = args.scenarios
            scenarios = displayed_scenarios() if text is None else parse_scenarios(text)
            if not scenarios:
                parser.error("--scenarios must name at least one scenario")
    except ValueError as exc:
        parser.error(str(exc))

    try:
        dataset = load_dataset(args.data)
        if args.command == "validate":
            print(f"ok: {len(dataset)} lines, {len(dataset.seasons)} seasons")
        elif args.command == "rate":
            _cmd_rate(args, dataset, systems)
        elif args.command == "sensitivity":
            _cmd_sensitivity(args, dataset, systems, scenarios)
        else:
            _cmd_case_study(args, dataset, systems, scenarios)
    except (QBSensError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
