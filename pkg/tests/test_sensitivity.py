import math
import random
import statistics

import pytest
from hypothesis import given, settings, strategies as st

import qbsens.sensitivity as sens
from qbsens.errors import DegenerateLineError, InfeasibleScenarioError, InputError, InsufficientDataError
from qbsens.perturb import Scenario, ScenarioKind, apply_scenario, standard_scenarios
from qbsens.ratings import ALL_SYSTEMS, BURKE, TRADITIONAL, WAGES_OF_WINS, rate
from qbsens.sensitivity import (
    aggregate,
    mean_std,
    perturbed_rank_change,
    rank_against,
    rank_table,
    season_rank_changes,
    yearly_rank_change_sum,
)
from qbsens.stats_model import Dataset, StatLine

from conftest import random_dataset, random_season
from oracles import brute_force_rank_change

TD1 = Scenario(ScenarioKind.TOUCHDOWN, 1)


def wow_line(team, yds, season=2009, int_=0):
    # att=100, no sacks, so the WoW rating is yds - 300 - 30 * int_
    return StatLine(team, season, 100, 50, yds, 0, int_, 0, 0)


def test_rank_table_orders_descending():
    lines = [wow_line("A", 310), wow_line("B", 308), wow_line("C", 309)]
    table = rank_table(lines, WAGES_OF_WINS)
    assert [(e.team, e.rank) for e in table.entries] == [("A", 1), ("C", 2), ("B", 3)]
    assert [e.rating for e in table.entries] == [10.0, 9.0, 8.0]


def test_rank_table_ties_go_to_lower_code():
    table = rank_table([wow_line("NYG", 320), wow_line("DAL", 320)], WAGES_OF_WINS)
    assert table.rank_of("DAL") == 1
    assert table.rank_of("NYG") == 2


def test_rank_table_singleton_and_errors():
    assert rank_table([wow_line("A", 300)], TRADITIONAL).rank_of("A") == 1
    with pytest.raises(InputError):
        rank_table([wow_line("A", 300), wow_line("B", 300, season=2010)], TRADITIONAL)
    with pytest.raises(InputError):
        rank_table([], TRADITIONAL)
    bad = StatLine("BAD", 2009, 5, 1, 10, 0, 0, 5, 20)
    with pytest.raises(DegenerateLineError, match="BAD"):
        rank_table([wow_line("A", 300), bad], BURKE)


def test_rank_against():
    ratings = {"A": 10.0, "B": 9.5, "C": 5.0}
    assert rank_against(ratings, "C", 9.8) == 2
    assert rank_against(ratings, "C", 5.0) == 3
    assert rank_against(ratings, "A", 9.5) == 1  # tie with B, A sorts first
    assert rank_against(ratings, "C", 9.5) == 3  # tie with B, B sorts first


def test_perturbed_rank_change_examples():
    lines = [wow_line("A", 310), wow_line("B", 309.5), wow_line("C", 335, int_=1)]
    # C rates 5.0; INT-1 lifts it to 38.0, past both
    assert perturbed_rank_change(lines, "C", Scenario(ScenarioKind.INTERCEPTION, -1), WAGES_OF_WINS, 6.75) == 2
    # leader cannot rise
    assert perturbed_rank_change(lines, "A", TD1, WAGES_OF_WINS, 6.75) == 0
    for t in "ABC":
        assert perturbed_rank_change(lines, t, Scenario(ScenarioKind.SACK, 0), WAGES_OF_WINS, 6.75) == 0
    with pytest.raises(InputError):
        perturbed_rank_change(lines, "Z", TD1, WAGES_OF_WINS, 6.75)
    with pytest.raises(InfeasibleScenarioError):
        perturbed_rank_change(lines, "A", Scenario(ScenarioKind.INTERCEPTION, -1), WAGES_OF_WINS, 6.75)


def test_infeasible_team_is_flagged_and_excluded():
    lines = [wow_line("A", 310), wow_line("B", 309.5), wow_line("C", 335, int_=1)]
    ds = Dataset.from_lines(lines)
    changes = season_rank_changes(ds, 2009, Scenario(ScenarioKind.INTERCEPTION, -1), WAGES_OF_WINS)
    by_team = {c.team: c for c in changes}
    assert by_team["A"].excluded and by_team["B"].excluded
    assert "int" in by_team["A"].reason
    assert by_team["C"].change == 2
    assert yearly_rank_change_sum(ds, 2009, Scenario(ScenarioKind.INTERCEPTION, -1), WAGES_OF_WINS) == 2


def test_four_team_season_matches_brute_force():
    rng = random.Random(4)
    lines = random_season(rng, 2009, 4, tie_prob=0.0)
    ds = Dataset.from_lines(lines)
    fallback = ds.sack_yards_average()
    for system in ALL_SYSTEMS:
        expected = sum(brute_force_rank_change(lines, ln.team, TD1, system, fallback) for ln in lines)
        assert yearly_rank_change_sum(ds, 2009, TD1, system) == expected


def test_yearly_sum_zero_cases():
    ds = random_dataset(random.Random(1), [2009], 12)
    assert yearly_rank_change_sum(ds, 2009, Scenario(ScenarioKind.SACK, 3), TRADITIONAL) == 0
    assert yearly_rank_change_sum(ds, 2009, Scenario(ScenarioKind.TOUCHDOWN, 0), BURKE) == 0
    with pytest.raises(InputError):
        yearly_rank_change_sum(ds, 1999, TD1, BURKE)


def test_mean_std():
    assert mean_std([10, 14]) == (12.0, pytest.approx(2.8284271247461903, abs=1e-12))
    assert mean_std([7, 7, 7]) == (7.0, 0.0)
    with pytest.raises(InsufficientDataError):
        mean_std([3])


def test_aggregate_matches_direct_calls():
    ds = random_dataset(random.Random(7), [2008, 2009, 2010], 10)
    summary = aggregate(ds, TD1, TRADITIONAL)
    direct = {s: yearly_rank_change_sum(ds, s, TD1, TRADITIONAL) for s in ds.seasons}
    assert dict(summary.yearly_sums) == direct
    assert summary.mean == pytest.approx(statistics.mean(direct.values()))
    assert summary.std == pytest.approx(statistics.stdev(direct.values()))
    assert summary.max_top8 <= summary.max_all
    top8_max = max(
        c.change for s in ds.seasons for c in season_rank_changes(ds, s, TD1, TRADITIONAL)
        if c.base_rank <= 8
    )
    assert summary.max_top8 == top8_max


def test_aggregate_needs_two_seasons():
    ds = random_dataset(random.Random(2), [2009], 6)
    with pytest.raises(InsufficientDataError):
        aggregate(ds, TD1, BURKE)


@pytest.mark.parametrize("k", [1, 3, 5])
def test_traditional_sacks_aggregate_to_zero(k):
    ds = random_dataset(random.Random(k), [2008, 2009], 16)
    s = aggregate(ds, Scenario(ScenarioKind.SACK, k), TRADITIONAL)
    assert (s.mean, s.std, s.max_all, s.max_top8) == (0.0, 0.0, 0, 0)


seasons = st.integers(0, 10_000).flatmap(
    lambda seed: st.integers(2, 8).map(lambda n: random_season(random.Random(seed), 2009, n))
)


@settings(max_examples=60, deadline=None)
@given(seasons, st.sampled_from(ALL_SYSTEMS), st.sampled_from(standard_scenarios()))
def test_oracle_equivalence(lines, system, scenario):
    fallback = Dataset.from_lines(lines).sack_yards_average()
    for ln in lines:
        expected = brute_force_rank_change(lines, ln.team, scenario, system, fallback)
        try:
            got = perturbed_rank_change(lines, ln.team, scenario, system, fallback)
        except (InfeasibleScenarioError, DegenerateLineError):
            got = None
        assert got == expected


@settings(max_examples=60, deadline=None)
@given(seasons, st.sampled_from(ALL_SYSTEMS), st.sampled_from(standard_scenarios()))
def test_rank_change_bounds_and_monotonicity(lines, system, scenario):
    ds = Dataset.from_lines(lines)
    table = rank_table(lines, system)
    for c in season_rank_changes(ds, 2009, scenario, system):
        if c.excluded:
            continue
        assert 0 <= c.change <= len(lines) - 1
        line = ds.get(2009, c.team)
        new_rating = rate(apply_scenario(line, scenario, ds.sack_yards_average()), system)
        if new_rating > table.ratings[c.team]:
            assert c.perturbed_rank <= c.base_rank


@settings(max_examples=30, deadline=None)
@given(seasons, st.sampled_from(ALL_SYSTEMS), st.sampled_from([2.0, 0.5, 10.0, 1e-3]))
def test_rank_scale_invariance(lines, system, factor):
    ds = Dataset.from_lines(lines)
    base = [(e.team, e.rank) for e in rank_table(lines, system).entries]
    sums = [yearly_rank_change_sum(ds, 2009, sc, system) for sc in standard_scenarios()]
    original = sens.rate
    sens.rate = lambda line, sy: factor * original(line, sy)
    sens._TABLE_CACHE.clear()
    try:
        scaled = [(e.team, e.rank) for e in rank_table(lines, system).entries]
        scaled_sums = [yearly_rank_change_sum(ds, 2009, sc, system) for sc in standard_scenarios()]
    finally:
        sens.rate = original
        sens._TABLE_CACHE.clear()
    assert scaled == base
    # power-of-two factors are exact; others may split near-ties only at machine precision
    if math.log2(factor).is_integer():
        assert scaled_sums == sums


@settings(max_examples=30, deadline=None)
@given(seasons, st.integers(1, 5))
def test_traditional_ignores_sack_scenarios(lines, k):
    ds = Dataset.from_lines(lines)
    assert yearly_rank_change_sum(ds, 2009, Scenario(ScenarioKind.SACK, k), TRADITIONAL) == 0


def test_base_table_cache_is_per_dataset():
    a = random_dataset(random.Random(21), [2009], 6)
    b = random_dataset(random.Random(22), [2009], 6)
    for ds in (a, b, a):
        expected = rank_table(ds.season_lines(2009), BURKE)
        assert sens._base_table(ds.season_tuple(2009), BURKE) == expected
