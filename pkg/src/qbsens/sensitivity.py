"""Season rankings and the rank displacement caused by perturbing one team."""

from __future__ import annotations

import statistics
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import NamedTuple

from .errors import (
    DegenerateLineError,
    InfeasibleScenarioError,
    InputError,
    InsufficientDataError,
)
from .perturb import Scenario, apply_scenario
from .ratings import RatingSystem, rate
from .stats_model import Dataset, StatLine

ELITE_TOP_K = 8


class RankEntry(NamedTuple):
    team: str
    rating: float
    rank: int


@dataclass(frozen=True)
class RankTable:
    season: int
    system: RatingSystem
    entries: tuple[RankEntry, ...]

    def rank_of(self, team: str) -> int:
        for entry in self.entries:
            if entry.team == team:
                return entry.rank
        raise InputError(f"team {team!r} not in {self.season} table")

    def entry(self, team: str) -> RankEntry:
        return self.entries[self.rank_of(team) - 1]

    def top(self, k: int) -> list[str]:
        return [e.team for e in self.entries[:k]]

    @property
    def ratings(self) -> dict[str, float]:
        return {e.team: e.rating for e in self.entries}


def _rate_named(line: StatLine, system: RatingSystem) -> float:
    try:
        return rate(line, system)
    except DegenerateLineError as exc:
        raise DegenerateLineError(f"team {line.team}: {exc}") from None


def _single_season(lines: Sequence[StatLine]) -> int:
    if not lines:
        raise InputError("cannot rank an empty season")
    seasons = {line.season for line in lines}
    if len(seasons) > 1:
        raise InputError(f"lines span several seasons: {sorted(seasons)}")
    return lines[0].season


def rank_table(lines: Sequence[StatLine], system: RatingSystem) -> RankTable:
    """Rank by descending rating; exact ties go to the lower team code."""
    lines = list(lines)
    season = _single_season(lines)
    rated = [(-_rate_named(line, system), line.team) for line in lines]
    rated.sort()
    entries = tuple(RankEntry(team, -neg, i) for i, (neg, team) in enumerate(rated, start=1))
    return RankTable(season, system, entries)


def rank_against(ratings: Mapping[str, float], team: str, rating: float) -> int:
    """Rank ``team`` would hold with ``rating`` while every other team keeps its
    rating from ``ratings``."""
    rank = 1
    for other, r in ratings.items():
        if other == team:
            continue
        if r > rating or (r == rating and other < team):
            rank += 1
    return rank


class RankChange(NamedTuple):
    """Outcome of perturbing one team; ``change`` is None when the scenario
    could not be applied and ``reason`` says why."""

    season: int
    team: str
    scenario: Scenario
    system: RatingSystem
    base_rank: int
    perturbed_rank: int | None
    reason: str | None = None

    @property
    def change(self) -> int | None:
        if self.perturbed_rank is None:
            return None
        return abs(self.perturbed_rank - self.base_rank)

    @property
    def excluded(self) -> bool:
        return self.perturbed_rank is None


def _perturbed_rank(
    line: StatLine,
    scenario: Scenario,
    system: RatingSystem,
    ratings: Mapping[str, float],
    sack_fallback: float,
    clamp_interceptions: bool,
) -> int:
    new_line = apply_scenario(line, scenario, sack_fallback, clamp_interceptions=clamp_interceptions)
    return rank_against(ratings, line.team, _rate_named(new_line, system))


def perturbed_rank_change(
    season_lines: Sequence[StatLine],
    team: str,
    scenario: Scenario,
    system: RatingSystem,
    sack_fallback: float,
    *,
    clamp_interceptions: bool = False,
) -> int:
    """Absolute rank displacement of ``team`` when only its line is perturbed.

    Raises :class:`InfeasibleScenarioError` or :class:`DegenerateLineError`
    if the perturbed line cannot be built or rated.
    """
    table = rank_table(season_lines, system)
    line = next((ln for ln in season_lines if ln.team == team), None)
    if line is None:
        raise InputError(f"team {team!r} not in season {table.season}")
    ratings = {e.team: e.rating for e in table.entries}
    new_rank = _perturbed_rank(line, scenario, system, ratings, sack_fallback, clamp_interceptions)
    return abs(new_rank - table.rank_of(team))


_TABLE_CACHE: dict[tuple[int, RatingSystem], tuple[tuple[StatLine, ...], RankTable]] = {}
_TABLE_CACHE_MAX = 1024


def _base_table(lines: tuple[StatLine, ...], system: RatingSystem) -> RankTable:
    # Keyed on the identity of a Dataset's immutable season tuple; the entry
    # holds a reference to that tuple so its id cannot be reused while cached.
    key = (id(lines), system)
    hit = _TABLE_CACHE.get(key)
    if hit is not None and hit[0] is lines:
        return hit[1]
    table = rank_table(lines, system)
    if len(_TABLE_CACHE) >= _TABLE_CACHE_MAX:
        _TABLE_CACHE.clear()
    _TABLE_CACHE[key] = (lines, table)
    return table


def season_rank_changes(
    dataset: Dataset,
    season: int,
    scenario: Scenario,
    system: RatingSystem,
    sack_fallback: float | None = None,
    *,
    clamp_interceptions: bool = False,
) -> list[RankChange]:
    """One :class:`RankChange` per team in ``season``, in base-rank order."""
    lines = dataset.season_tuple(season)
    if not lines:
        raise InputError(f"season {season} not in dataset")
    if sack_fallback is None:
        sack_fallback = dataset.sack_yards_average()
    table = _base_table(lines, system)
    ratings = table.ratings
    by_team = {line.team: line for line in lines}
    out = []
    for entry in table.entries:
        try:
            new_rank = _perturbed_rank(
                by_team[entry.team], scenario, system, ratings, sack_fallback, clamp_interceptions
            )
        except (InfeasibleScenarioError, DegenerateLineError) as exc:
            out.append(RankChange(season, entry.team, scenario, system, entry.rank, None, str(exc)))
        else:
            out.append(RankChange(season, entry.team, scenario, system, entry.rank, new_rank))
    return out


def yearly_rank_change_sum(
    dataset: Dataset,
    season: int,
    scenario: Scenario,
    system: RatingSystem,
    sack_fallback: float | None = None,
    *,
    clamp_interceptions: bool = False,
) -> int:
    """Sum of rank changes over the season's teams; excluded teams contribute nothing."""
    changes = season_rank_changes(
        dataset, season, scenario, system, sack_fallback, clamp_interceptions=clamp_interceptions
    )
    return sum(c.change for c in changes if c.change is not None)


@dataclass(frozen=True)
class SensitivitySummary:
    scenario: Scenario
    system: RatingSystem
    yearly_sums: Mapping[int, int]
    mean: float
    std: float
    max_all: int
    max_top8: int
    changes: tuple[RankChange, ...] = field(default=(), repr=False)

    @property
    def exclusions(self) -> list[RankChange]:
        return [c for c in self.changes if c.excluded]


def mean_std(values: Iterable[float]) -> tuple[float, float]:
    """Mean and sample (n - 1) standard deviation."""
    values = list(values)
    if len(values) < 2:
        raise InsufficientDataError(f"need at least 2 values, got {len(values)}")
    return statistics.fmean(values), statistics.stdev(values)


def aggregate(
    dataset: Dataset,
    scenario: Scenario,
    system: RatingSystem,
    sack_fallback: float | None = None,
    *,
    top_k: int = ELITE_TOP_K,
    clamp_interceptions: bool = False,
) -> SensitivitySummary:
    seasons = dataset.seasons
    if len(seasons) < 2:
        raise InsufficientDataError(f"need at least 2 seasons, got {len(seasons)}")
    if sack_fallback is None:
        sack_fallback = dataset.sack_yards_average()

    yearly: dict[int, int] = {}
    all_changes: list[RankChange] = []
    max_all = 0
    max_top = 0
    for season in seasons:
        changes = season_rank_changes(
            dataset, season, scenario, system, sack_fallback,
            clamp_interceptions=clamp_interceptions,
        )
        yearly[season] = sum(c.change for c in changes if c.change is not None)
        for c in changes:
            if c.change is None:
                continue
            max_all = max(max_all, c.change)
            if c.base_rank <= top_k:
                max_top = max(max_top, c.change)
        all_changes.extend(changes)

    mean, std = mean_std(yearly.values())
    return SensitivitySummary(
        scenario, system, MappingProxyType(yearly), mean, std, max_all, max_top, tuple(all_changes)
    )
