"""Independent reference computations used by the tests."""

from __future__ import annotations

from fractions import Fraction

from qbsens.errors import DegenerateLineError, InfeasibleScenarioError
from qbsens.perturb import apply_scenario
from qbsens.ratings import rate


def exact_traditional(att, comp, yds, td, int_):
    att, comp, yds, td, int_ = map(Fraction, (att, comp, yds, td, int_))
    return Fraction(100, 6) * (
        5 * (comp / att - Fraction(3, 10))
        + 20 * (td / att)
        + (Fraction(2375, 1000) - 25 * (int_ / att))
        + Fraction(1, 4) * (yds / att - 3)
    )


def exact_burke(att, yds, skyd, int_, sk, sign=-1):
    att, yds, skyd, int_, sk = map(Fraction, (att, yds, skyd, int_, sk))
    return Fraction(1543, 1000) * (yds - skyd) / (att - sk) + sign * Fraction(500957, 10000) * (int_ / att)


def exact_wow(att, yds, int_, sk):
    return Fraction(yds) - 3 * (Fraction(att) + sk) - 30 * Fraction(int_)


def brute_force_rank(lines, team, system):
    ordered = sorted(lines, key=lambda ln: (-rate(ln, system), ln.team))
    return [ln.team for ln in ordered].index(team) + 1


def brute_force_rank_change(lines, team, scenario, system, sack_fallback):
    """Re-sort the whole season from scratch with only ``team`` perturbed.

    Returns None where the perturbation cannot be applied or rated.
    """
    try:
        perturbed = [
            apply_scenario(ln, scenario, sack_fallback) if ln.team == team else ln for ln in lines
        ]
        new_rank = brute_force_rank(perturbed, team, system)
    except (InfeasibleScenarioError, DegenerateLineError):
        return None
    return abs(new_rank - brute_force_rank(lines, team, system))
