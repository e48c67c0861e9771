"""Counterfactual stat lines: extra touchdowns, fewer interceptions, more sacks,
higher completion rate."""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass

from .errors import InfeasibleScenarioError, ValidationError
from .stats_model import DEFAULT_YARDS_PER_SACK, StatLine, yards_per_completion, yards_per_sack


class ScenarioKind(str, enum.Enum):
    TOUCHDOWN = "TD"
    INTERCEPTION = "INT"
    SACK = "SK"
    COMPLETION_PCT = "COMP"


@dataclass(frozen=True)
class Scenario:
    """A single-dimension edit. ``magnitude`` counts plays, or percentage
    points for :attr:`ScenarioKind.COMPLETION_PCT`."""

    kind: ScenarioKind
    magnitude: int

    @property
    def label(self) -> str:
        suffix = "%" if self.kind is ScenarioKind.COMPLETION_PCT else ""
        return f"{self.kind.value}{self.magnitude:+d}{suffix}"

    def __str__(self) -> str:
        return self.label


_SCENARIO_RE = re.compile(r"^\s*(TD|INT|SK|COMP)\s*([+-]?\d+)\s*(%?)\s*$", re.IGNORECASE)


def parse_scenario(text: str) -> Scenario:
    """Parse labels like ``TD+1``, ``INT-3``, ``SK+5`` or ``COMP+1%``."""
    m = _SCENARIO_RE.match(text)
    if m is None:
        raise ValueError(f"cannot parse scenario {text!r}")
    kind = ScenarioKind(m.group(1).upper())
    if m.group(3) and kind is not ScenarioKind.COMPLETION_PCT:
        raise ValueError(f"'%' only applies to COMP scenarios: {text!r}")
    return Scenario(kind, int(m.group(2)))


def parse_scenarios(text: str) -> list[Scenario]:
    if text.strip().lower() == "all":
        return standard_scenarios()
    if text.strip().lower() == "table":
        return displayed_scenarios()
    return [parse_scenario(t) for t in text.split(",") if t.strip()]


def standard_scenarios() -> list[Scenario]:
    """TD+1..+5, INT-1..-5, SK+1..+5, COMP+1%..+5%, in that order."""
    out = [Scenario(ScenarioKind.TOUCHDOWN, k) for k in range(1, 6)]
    out += [Scenario(ScenarioKind.INTERCEPTION, -k) for k in range(1, 6)]
    out += [Scenario(ScenarioKind.SACK, k) for k in range(1, 6)]
    out += [Scenario(ScenarioKind.COMPLETION_PCT, k) for k in range(1, 6)]
    return out


def displayed_scenarios() -> list[Scenario]:
    """The twelve rows reported in the summary tables (magnitudes 1, 3, 5)."""
    return [s for s in standard_scenarios() if abs(s.magnitude) in (1, 3, 5)]


def completion_delta(att: int, pct: int) -> int:
    """Completions added by a ``pct`` point rise in completion rate, rounded half away from zero."""
    sign = -1 if pct < 0 else 1
    return sign * ((2 * abs(pct) * att + 100) // 200)


def _build(line: StatLine, scenario: Scenario, att, comp, yds, td, int_, sk, skyd) -> StatLine:
    if att < 0 or comp < 0 or td < 0 or int_ < 0 or sk < 0:
        for name, value in (("att", att), ("comp", comp), ("td", td), ("int", int_), ("sk", sk)):
            if value < 0:
                raise InfeasibleScenarioError(f"{scenario} on {line.team} {line.season}: {name} would be {value}")
    try:
        return StatLine(line.team, line.season, att, comp, yds, td, int_, sk, skyd)
    except ValidationError as exc:
        raise InfeasibleScenarioError(f"{scenario} on {line.team} {line.season}: {exc}") from None


def apply_scenario(
    line: StatLine,
    scenario: Scenario,
    sack_fallback: float = DEFAULT_YARDS_PER_SACK,
    *,
    clamp_interceptions: bool = False,
) -> StatLine:
    """Return the stat line as it would read under ``scenario``.

    Averages (yards per completion, yards per sack) always come from the
    unperturbed ``line``. With ``clamp_interceptions`` an interception
    reduction larger than the team's total removes only what exists.
    """
    k = scenario.magnitude
    if k == 0:
        return line
    kind = scenario.kind
    att, comp, yds, td, int_, sk, skyd = (
        line.att, line.comp, line.yds, line.td, line.int_, line.sk, line.skyd
    )

    if kind is ScenarioKind.TOUCHDOWN:
        ypc = yards_per_completion(line)
        return _build(line, scenario, att + k, comp + k, yds + k * ypc, td + k, int_, sk, skyd)

    if kind is ScenarioKind.INTERCEPTION:
        if clamp_interceptions and int_ + k < 0:
            k = -int_
            if k == 0:
                return line
        return _build(line, scenario, att + k, comp, yds, td, int_ + k, sk, skyd)

    if kind is ScenarioKind.SACK:
        new_sk = sk + k
        new_skyd = 0.0 if new_sk == 0 else skyd + k * yards_per_sack(line, sack_fallback)
        return _build(line, scenario, att, comp, yds, td, int_, new_sk, new_skyd)

    ypc = yards_per_completion(line)
    delta = completion_delta(att, k)
    available = att - comp - int_
    if delta > available:
        raise InfeasibleScenarioError(
            f"{scenario} on {line.team} {line.season}: needs {delta} incompletions, "
            f"only {available} available (short by {delta - available})"
        )
    return _build(line, scenario, att, comp + delta, yds + delta * ypc, td, int_, sk, skyd)
