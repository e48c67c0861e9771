"""The Traditional, Burke and Wages of Wins quarterback ratings.

All three map a :class:`StatLine` to a real score where higher is better
(with the Burke interception term in its default, corrected sign).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .errors import DegenerateLineError
from .stats_model import StatLine


@dataclass(frozen=True)
class RatingConstants:
    trad_scale: float = 100 / 6
    trad_comp_coeff: float = 5.0
    trad_comp_offset: float = 0.3
    trad_td_coeff: float = 20.0
    trad_int_base: float = 2.375
    trad_int_coeff: float = 25.0
    trad_yds_coeff: float = 0.25
    trad_yds_offset: float = 3.0
    burke_ypa_coeff: float = 1.543
    burke_int_coeff_mag: float = 50.0957
    wow_play_coeff: float = 3.0
    wow_int_coeff: float = 30.0


CONSTANTS = RatingConstants()


class Variant(str, enum.Enum):
    TRADITIONAL = "Traditional"
    BURKE = "Burke"
    WAGES_OF_WINS = "WagesOfWins"


class BurkeSign(str, enum.Enum):
    CORRECTED = "corrected"  # interceptions lower the rating
    AS_WRITTEN = "as-written"  # +50.0957 * INT/ATT, as the formula is usually printed

    @property
    def factor(self) -> float:
        return -1.0 if self is BurkeSign.CORRECTED else 1.0


@dataclass(frozen=True)
class RatingSystem:
    variant: Variant
    burke_int_sign: BurkeSign = BurkeSign.CORRECTED

    @property
    def name(self) -> str:
        return self.variant.value

    def __str__(self) -> str:
        return self.name


TRADITIONAL = RatingSystem(Variant.TRADITIONAL)
BURKE = RatingSystem(Variant.BURKE)
WAGES_OF_WINS = RatingSystem(Variant.WAGES_OF_WINS)
ALL_SYSTEMS = (TRADITIONAL, BURKE, WAGES_OF_WINS)

_ALIASES = {
    "trad": Variant.TRADITIONAL,
    "traditional": Variant.TRADITIONAL,
    "burke": Variant.BURKE,
    "wow": Variant.WAGES_OF_WINS,
    "wagesofwins": Variant.WAGES_OF_WINS,
}


def parse_systems(text: str, burke_sign: BurkeSign | str = BurkeSign.CORRECTED) -> list[RatingSystem]:
    """Parse a comma list such as ``"trad,burke,wow"``."""
    sign = BurkeSign(burke_sign)
    systems = []
    for token in text.split(","):
        token = token.strip().lower()
        if not token:
            continue
        if token not in _ALIASES:
            raise ValueError(f"unknown rating system {token!r}; expected one of trad, burke, wow")
        system = RatingSystem(_ALIASES[token], sign)
        if system not in systems:
            systems.append(system)
    return systems


def traditional_rating(line: StatLine) -> float:
    """Unclamped 1971 passer rating."""
    if line.att < 1:
        raise DegenerateLineError(f"{line.team} {line.season}: no pass attempts")
    c = CONSTANTS
    att = line.att
    completion = c.trad_comp_coeff * (line.comp / att - c.trad_comp_offset)
    touchdown = c.trad_td_coeff * (line.td / att)
    interception = c.trad_int_base - c.trad_int_coeff * (line.int_ / att)
    yardage = c.trad_yds_coeff * (line.yds / att - c.trad_yds_offset)
    return c.trad_scale * (completion + touchdown + interception + yardage)


def burke_rating(line: StatLine, sign_mode: BurkeSign = BurkeSign.CORRECTED) -> float:
    c = CONSTANTS
    if line.att < 1:
        raise DegenerateLineError(f"{line.team} {line.season}: no pass attempts")
    dropbacks = line.att - line.sk
    if dropbacks < 1:
        raise DegenerateLineError(
            f"{line.team} {line.season}: attempts minus sacks is {dropbacks}"
        )
    net_yards = c.burke_ypa_coeff * (line.yds - line.skyd) / dropbacks
    return net_yards + sign_mode.factor * c.burke_int_coeff_mag * (line.int_ / line.att)


def wow_rating(line: StatLine) -> float:
    c = CONSTANTS
    return line.yds - c.wow_play_coeff * (line.att + line.sk) - c.wow_int_coeff * line.int_


def rate(line: StatLine, system: RatingSystem) -> float:
    variant = system.variant
    if variant is Variant.TRADITIONAL:
        return traditional_rating(line)
    if variant is Variant.BURKE:
        return burke_rating(line, system.burke_int_sign)
    return wow_rating(line)
