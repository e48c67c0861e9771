"""Report tables (delimited text and markdown) built from sensitivity results.

Nothing here does arithmetic beyond formatting; every number comes straight
from :mod:`qbsens.sensitivity` or :mod:`qbsens.inference`.
"""

from __future__ import annotations

import csv
import io
import itertools
import math
from collections.abc import Sequence
from dataclasses import dataclass, field
from pathlib import Path

from .errors import DegenerateLineError, InfeasibleScenarioError, InputError
from .inference import Comparison, compare_summaries
from .perturb import Scenario, ScenarioKind, apply_scenario
from .ratings import RatingSystem, rate
from .sensitivity import (
    RankChange,
    SensitivitySummary,
    aggregate,
    rank_against,
    rank_table,
)
from .stats_model import Dataset

TABLE1_HEADER = ("scenario", "system", "mean", "std")
TABLE2_HEADER = ("scenario", "system", "max_all", "max_top8")
TABLE3_HEADER = ("scenario", "pair", "verdict", "t_stat", "p_value")
RANKCHANGES_HEADER = ("season", "team", "scenario", "system", "rank_change")
WARNINGS_HEADER = ("season", "team", "scenario", "system", "reason")
CASE_STUDY_HEADER = ("season", "team", "system", "scenario_label", "rank", "elite_flag")

BASE_LABEL = "Base"


def fmt1(value: float) -> str:
    return f"{value:.1f}"


def _fmt_t(value: float) -> str:
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return f"{value:.4f}"


def _fmt_p(value: float) -> str:
    return f"{value:.6g}"


def to_csv(header: Sequence[str], rows: Sequence[Sequence[object]]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


def to_markdown(header: Sequence[str], rows: Sequence[Sequence[object]]) -> str:
    lines = ["| " + " | ".join(header) + " |", "|" + "|".join("---" for _ in header) + "|"]
    lines += ["| " + " | ".join(str(c) for c in row) + " |" for row in rows]
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class SensitivityReport:
    scenarios: tuple[Scenario, ...]
    systems: tuple[RatingSystem, ...]
    summaries: dict[tuple[Scenario, RatingSystem], SensitivitySummary] = field(repr=False)
    comparisons: tuple[Comparison, ...] = field(repr=False)

    def table1_rows(self) -> list[tuple[str, ...]]:
        return [
            (sc.label, sy.name, fmt1(s.mean), fmt1(s.std))
            for sc in self.scenarios
            for sy in self.systems
            for s in [self.summaries[sc, sy]]
        ]

    def table2_rows(self) -> list[tuple[str, ...]]:
        return [
            (sc.label, sy.name, str(s.max_all), str(s.max_top8))
            for sc in self.scenarios
            for sy in self.systems
            for s in [self.summaries[sc, sy]]
        ]

    def table3_rows(self) -> list[tuple[str, ...]]:
        return [
            (c.scenario.label, c.pair, c.verdict, _fmt_t(c.test.t_stat), _fmt_p(c.test.p_one_sided))
            for c in self.comparisons
        ]

    def _changes(self) -> list[RankChange]:
        out: list[RankChange] = []
        for sc in self.scenarios:
            for sy in self.systems:
                out.extend(self.summaries[sc, sy].changes)
        return out

    def rankchange_rows(self) -> list[tuple[str, ...]]:
        rows = []
        for c in self._changes():
            value = "" if c.change is None else str(c.change)
            rows.append((str(c.season), c.team, c.scenario.label, c.system.name, value))
        return rows

    def warning_rows(self) -> list[tuple[str, ...]]:
        return [
            (str(c.season), c.team, c.scenario.label, c.system.name, c.reason or "")
            for c in self._changes()
            if c.excluded
        ]

    def markdown(self) -> str:
        names = [s.name for s in self.systems]
        t1 = [
            [sc.label] + [f"{fmt1(self.summaries[sc, sy].mean)} ({fmt1(self.summaries[sc, sy].std)})" for sy in self.systems]
            for sc in self.scenarios
        ]
        t2 = [
            [sc.label]
            + [str(self.summaries[sc, sy].max_all) for sy in self.systems]
            + [str(self.summaries[sc, sy].max_top8) for sy in self.systems]
            for sc in self.scenarios
        ]
        pairs = list(dict.fromkeys(c.pair for c in self.comparisons))
        verdicts = {(c.scenario, c.pair): c.verdict for c in self.comparisons}
        t3 = [
            [sc.label] + [("-" if verdicts[sc, p] == "none" else verdicts[sc, p]) for p in pairs]
            for sc in self.scenarios
        ]
        parts = [
            "## Rank changes per season: mean (std)\n",
            to_markdown(["Scenario", *names], t1),
            "\n## Maximum rank change per team (all teams / top 8)\n",
            to_markdown(["Scenario", *(f"{n} all" for n in names), *(f"{n} top8" for n in names)], t2),
        ]
        if pairs:
            parts += [
                "\n## More sensitive system (one-sided pooled t-test, p < 0.05)\n",
                to_markdown(["Scenario", *pairs], t3),
            ]
        warnings = self.warning_rows()
        if warnings:
            parts += ["\n## Warnings: excluded perturbations\n", to_markdown(WARNINGS_HEADER, warnings)]
        return "".join(parts)

    def write(self, out_dir: str | Path, fmt: str = "csv") -> list[Path]:
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        files = {
            "table1.csv": to_csv(TABLE1_HEADER, self.table1_rows()),
            "table2.csv": to_csv(TABLE2_HEADER, self.table2_rows()),
            "table3.csv": to_csv(TABLE3_HEADER, self.table3_rows()),
            "rankchanges.csv": to_csv(RANKCHANGES_HEADER, self.rankchange_rows()),
            "warnings.csv": to_csv(WARNINGS_HEADER, self.warning_rows()),
        }
        if fmt == "markdown":
            files["report.md"] = self.markdown()
        written = []
        for name, text in files.items():
            path = out / name
            path.write_text(text, encoding="utf-8", newline="\n")
            written.append(path)
        return written


def run_sensitivity_report(
    dataset: Dataset,
    systems: Sequence[RatingSystem],
    scenarios: Sequence[Scenario],
    sack_fallback: float | None = None,
    *,
    clamp_interceptions: bool = False,
) -> SensitivityReport:
    if not scenarios:
        raise InputError("at least one scenario is required")
    if not systems:
        raise InputError("at least one rating system is required")
    if sack_fallback is None:
        sack_fallback = dataset.sack_yards_average()
    summaries = {
        (sc, sy): aggregate(dataset, sc, sy, sack_fallback, clamp_interceptions=clamp_interceptions)
        for sc in scenarios
        for sy in systems
    }
    comparisons = tuple(
        compare_summaries(summaries[sc, a], summaries[sc, b])
        for sc in scenarios
        for a, b in itertools.combinations(systems, 2)
    )
    return SensitivityReport(tuple(scenarios), tuple(systems), summaries, comparisons)


@dataclass(frozen=True)
class CaseStudySpec:
    seasons: tuple[int, ...]
    teams: tuple[str, ...] = ()
    top_k: int = 9
    scenarios: tuple[Scenario, ...] = (
        Scenario(ScenarioKind.INTERCEPTION, -3),
        Scenario(ScenarioKind.INTERCEPTION, 3),
    )
    elite_threshold: int = 6

    def __post_init__(self) -> None:
        if self.top_k < 1:
            raise InputError("top_k must be at least 1")
        if self.elite_threshold < 1:
            raise InputError("elite_threshold must be at least 1")
        if not self.scenarios:
            raise InputError("at least one scenario is required")
        if not self.seasons:
            raise InputError("at least one season is required")


@dataclass(frozen=True)
class CaseStudyCell:
    season: int
    team: str
    system: RatingSystem
    label: str
    rank: int | None
    rating: float | None
    elite: bool
    reason: str | None = None


@dataclass(frozen=True)
class CaseStudyReport:
    spec: CaseStudySpec
    systems: tuple[RatingSystem, ...]
    cells: tuple[CaseStudyCell, ...]

    @property
    def labels(self) -> list[str]:
        return [BASE_LABEL] + [s.label for s in self.spec.scenarios]

    def cell(self, season: int, team: str, system: RatingSystem, label: str) -> CaseStudyCell:
        for c in self.cells:
            if (c.season, c.team, c.system, c.label) == (season, team, system, label):
                return c
        raise KeyError((season, team, system.name, label))

    def rows(self) -> list[tuple[str, ...]]:
        return [
            (str(c.season), c.team, c.system.name, c.label,
             "" if c.rank is None else str(c.rank), "1" if c.elite else "0")
            for c in self.cells
        ]

    def markdown(self) -> str:
        header = ["Season", "Team"] + [f"{sy.name} {lab}" for sy in self.systems for lab in self.labels]
        keys = list(dict.fromkeys((c.season, c.team) for c in self.cells))
        body = []
        for season, team in keys:
            row = [str(season), team]
            for sy in self.systems:
                for lab in self.labels:
                    c = self.cell(season, team, sy, lab)
                    if c.rank is None:
                        row.append("n/a")
                    else:
                        row.append(f"{c.rank}{'' if c.elite else '*'}")
            body.append(row)
        note = f"\nAsterisks mark ranks worse than {self.spec.elite_threshold}.\n"
        return to_markdown(header, body) + note

    def write(self, out_dir: str | Path, fmt: str = "csv") -> list[Path]:
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        files = {"case_study.csv": to_csv(CASE_STUDY_HEADER, self.rows())}
        if fmt == "markdown":
            files["case_study.md"] = self.markdown()
        written = []
        for name, text in files.items():
            path = out / name
            path.write_text(text, encoding="utf-8", newline="\n")
            written.append(path)
        return written


def run_case_study(
    dataset: Dataset,
    spec: CaseStudySpec,
    systems: Sequence[RatingSystem],
    sack_fallback: float | None = None,
) -> CaseStudyReport:
    """Base and perturbed ranks for selected teams, one team perturbed at a time.

    With no explicit teams, each season's top ``spec.top_k`` teams under the
    first system are used.
    """
    if not systems:
        raise InputError("at least one rating system is required")
    if sack_fallback is None:
        sack_fallback = dataset.sack_yards_average()
    cells = []
    for season in spec.seasons:
        lines = dataset.season_lines(season)
        if not lines:
            raise InputError(f"season {season} not in dataset")
        tables = {sy: rank_table(lines, sy) for sy in systems}
        teams = list(spec.teams) or tables[systems[0]].top(spec.top_k)
        by_team = {line.team: line for line in lines}
        for team in teams:
            if team not in by_team:
                raise InputError(f"team {team} not in season {season}")
            for sy in systems:
                table = tables[sy]
                ratings = table.ratings
                base_rank = table.rank_of(team)
                cells.append(CaseStudyCell(
                    season, team, sy, BASE_LABEL, base_rank, ratings[team],
                    base_rank <= spec.elite_threshold,
                ))
                for sc in spec.scenarios:
                    try:
                        new_line = apply_scenario(by_team[team], sc, sack_fallback)
                        rating = rate(new_line, sy)
                    except (InfeasibleScenarioError, DegenerateLineError) as exc:
                        cells.append(CaseStudyCell(season, team, sy, sc.label, None, None, False, str(exc)))
                        continue
                    rank = rank_against(ratings, team, rating)
                    cells.append(CaseStudyCell(
                        season, team, sy, sc.label, rank, rating, rank <= spec.elite_threshold
                    ))
    return CaseStudyReport(spec, tuple(systems), tuple(cells))
