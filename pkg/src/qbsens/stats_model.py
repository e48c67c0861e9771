"""Team-season passing records and CSV ingestion."""

from __future__ import annotations

import csv
import io
from collections.abc import Iterable, Iterator, Mapping
from dataclasses import dataclass, field
from types import MappingProxyType

from .errors import DegenerateLineError, DuplicateKeyError, ParseError, ValidationError

HEADER = ("season", "team", "att", "comp", "yds", "td", "int", "sk", "skyd")

# Yards lost per sack used when a dataset carries no sack yardage at all.
DEFAULT_YARDS_PER_SACK = 6.75


@dataclass(frozen=True, slots=True)
class StatLine:
    """One team's passing totals for one season."""

    team: str
    season: int
    att: int
    comp: int
    yds: float
    td: int
    int_: int
    sk: int
    skyd: float

    def __post_init__(self) -> None:
        if type(self.yds) is not float:
            object.__setattr__(self, "yds", float(self.yds))
        if type(self.skyd) is not float:
            object.__setattr__(self, "skyd", float(self.skyd))
        self.validate()

    def validate(self) -> None:
        if not isinstance(self.team, str) or not self.team.strip():
            raise ValidationError("team code must be a nonempty string", "team")
        att, comp, td, int_, sk = self.att, self.comp, self.td, self.int_, self.sk
        typed = type(att) is int and type(comp) is int and type(td) is int and type(int_) is int and type(sk) is int
        if not typed or att < 0 or comp < 0 or td < 0 or int_ < 0 or sk < 0:
            for name, value in zip(("att", "comp", "td", "int_", "sk"), (att, comp, td, int_, sk)):
                if not isinstance(value, int) or isinstance(value, bool):
                    raise ValidationError(f"expected an integer, got {value!r}", name)
                if value < 0:
                    raise ValidationError(f"must be nonnegative, got {value}", name)
        if self.skyd < 0:
            raise ValidationError(f"must be nonnegative, got {self.skyd}", "skyd")
        if comp > att:
            raise ValidationError(f"{comp} completions exceed {att} attempts", "comp")
        if td > comp:
            raise ValidationError(f"{td} touchdowns exceed {comp} completions", "td")
        if int_ > att - comp:
            raise ValidationError(f"{int_} interceptions exceed {att - comp} incompletions", "int_")
        if sk == 0 and self.skyd != 0:
            raise ValidationError("sack yards recorded with zero sacks", "skyd")

    @property
    def key(self) -> tuple[int, str]:
        return (self.season, self.team)


def yards_per_completion(line: StatLine) -> float:
    if line.comp < 1:
        raise DegenerateLineError(f"{line.team} {line.season}: no completions")
    return line.yds / line.comp


def yards_per_sack(line: StatLine, fallback: float = DEFAULT_YARDS_PER_SACK) -> float:
    """Average yards lost per sack, or ``fallback`` for a team never sacked."""
    if line.sk >= 1:
        return line.skyd / line.sk
    return fallback


@dataclass(frozen=True)
class Dataset:
    """StatLines keyed by (season, team); at most one line per key."""

    lines: Mapping[tuple[int, str], StatLine] = field(default_factory=dict)
    _by_season: Mapping[int, tuple[StatLine, ...]] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "lines", MappingProxyType(dict(self.lines)))
        by_season: dict[int, list[StatLine]] = {}
        for key in sorted(self.lines):
            by_season.setdefault(key[0], []).append(self.lines[key])
        object.__setattr__(
            self, "_by_season", MappingProxyType({s: tuple(v) for s, v in by_season.items()})
        )

    @classmethod
    def from_lines(cls, lines: Iterable[StatLine]) -> Dataset:
        keyed: dict[tuple[int, str], StatLine] = {}
        for i, line in enumerate(lines, start=1):
            if line.key in keyed:
                raise DuplicateKeyError(f"duplicate record for {line.season} {line.team}", i)
            keyed[line.key] = line
        return cls(keyed)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Dataset):
            return NotImplemented
        return dict(self.lines) == dict(other.lines)

    def __len__(self) -> int:
        return len(self.lines)

    def __iter__(self) -> Iterator[StatLine]:
        for key in sorted(self.lines):
            yield self.lines[key]

    @property
    def seasons(self) -> list[int]:
        return list(self._by_season)

    @property
    def teams_per_season(self) -> dict[int, list[str]]:
        return {s: [line.team for line in lines] for s, lines in self._by_season.items()}

    def season_lines(self, season: int) -> list[StatLine]:
        """The season's lines sorted by team code (empty if the season is absent)."""
        return list(self._by_season.get(season, ()))

    def season_tuple(self, season: int) -> tuple[StatLine, ...]:
        """Like :meth:`season_lines`, but returns the same tuple object on every call."""
        return self._by_season.get(season, ())

    def get(self, season: int, team: str) -> StatLine | None:
        return self.lines.get((season, team))

    def sack_yards_average(self, default: float = DEFAULT_YARDS_PER_SACK) -> float:
        """Dataset-wide yards lost per sack; ``default`` when no sacks are recorded."""
        sacks = sum(line.sk for line in self.lines.values())
        if sacks == 0:
            return default
        return sum(line.skyd for line in self.lines.values()) / sacks


def _parse_int(text: str, name: str, row: int) -> int:
    try:
        return int(text)
    except ValueError:
        pass
    # Accept "4483.0" style exports but never silently truncate.
    try:
        value = float(text)
    except ValueError:
        raise ParseError(f"malformed number {text!r} in column {name}", row) from None
    if not value.is_integer():
        raise ParseError(f"expected an integer in column {name}, got {text!r}", row)
    return int(value)


def _parse_real(text: str, name: str, row: int) -> float:
    try:
        value = float(text)
    except ValueError:
        raise ParseError(f"malformed number {text!r} in column {name}", row) from None
    if value != value or value in (float("inf"), float("-inf")):
        raise ParseError(f"non-finite value in column {name}", row)
    return value


def parse_dataset(text: str) -> Dataset:
    """Parse CSV text with the header ``season,team,att,comp,yds,td,int,sk,skyd``.

    Rows are numbered from 1 (the first record after the header) in error
    messages. Blank lines are ignored.
    """
    text = text.removeprefix("\ufeff")
    reader = csv.reader(io.StringIO(text, newline=""))
    header = next(reader, None)
    if header is None:
        return Dataset()
    header = [h.strip().lower() for h in header]
    if tuple(header) != HEADER:
        raise ParseError(f"expected header {','.join(HEADER)}, got {','.join(header)}", 0)

    keyed: dict[tuple[int, str], StatLine] = {}
    for row, fields in enumerate(reader, start=1):
        if not fields or all(not f.strip() for f in fields):
            continue
        if len(fields) != len(HEADER):
            raise ParseError(f"expected {len(HEADER)} fields, got {len(fields)}", row)
        f = [x.strip() for x in fields]
        season = _parse_int(f[0], "season", row)
        counts = {name: _parse_int(f[i], name, row) for i, name in ((2, "att"), (3, "comp"), (5, "td"), (6, "int"), (7, "sk"))}
        try:
            line = StatLine(
                team=f[1],
                season=season,
                att=counts["att"],
                comp=counts["comp"],
                yds=_parse_real(f[4], "yds", row),
                td=counts["td"],
                int_=counts["int"],
                sk=counts["sk"],
                skyd=_parse_real(f[8], "skyd", row),
            )
        except ValidationError as exc:
            raise ValidationError(exc.detail, exc.field, row) from None
        if line.key in keyed:
            raise DuplicateKeyError(f"duplicate record for {season} {line.team}", row)
        keyed[line.key] = line
    return Dataset(keyed)


def load_dataset(path: str) -> Dataset:
    with open(path, encoding="utf-8", newline="") as fh:
        return parse_dataset(fh.read())


def _format_number(value: float) -> str:
    if value.is_integer():
        return str(int(value))
    return repr(value)


def serialize_dataset(dataset: Dataset) -> str:
    """Inverse of :func:`parse_dataset`; rows sorted by (season, team), LF endings."""
    out = [",".join(HEADER)]
    for line in dataset:
        out.append(",".join((
            str(line.season),
            line.team,
            str(line.att),
            str(line.comp),
            _format_number(line.yds),
            str(line.td),
            str(line.int_),
            str(line.sk),
            _format_number(line.skyd),
        )))
    return "\n".join(out) + "\n"
