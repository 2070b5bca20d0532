"""Match-result ingestion in the public football-data.co.uk CSV layout.

Required columns: Date, HomeTeam, AwayTeam, FTR (H/D/A).  The Bet365 odds
columns B365H, B365D, B365A are picked up when present; everything else is
ignored.  Dates are day-first with 2- or 4-digit years, both of which occur
in the source files.
"""

from __future__ import annotations

import csv
import datetime as dt
import io
from dataclasses import dataclass, field
from pathlib import Path
from typing import TextIO

import numpy as np

from .errors import RowError, SchemaError
from .models import OutcomeProbs

REQUIRED_COLUMNS = ("Date", "HomeTeam", "AwayTeam", "FTR")
ODDS_COLUMNS = ("B365H", "B365D", "B365A")
OUTCOMES = ("H", "D", "A")

_DATE_FORMATS = ("%d/%m/%Y", "%d/%m/%y")


@dataclass(frozen=True)
class GameRecord:
    """One fixture: identities, categorical outcome, optional decimal odds.

    ``odds`` is (o_H, o_D, o_A) in the bookmaker column order, or None when
    the source row carries no odds.
    """

    date: dt.date
    home_id: str
    away_id: str
    outcome: str
    odds: tuple[float, float, float] | None = None

    def __post_init__(self):
        if self.home_id == self.away_id:
            raise ValueError(f"home and away must differ, got {self.home_id!r} twice")
        if self.outcome not in OUTCOMES:
            raise ValueError(f"outcome must be one of {OUTCOMES}, got {self.outcome!r}")
        if self.odds is not None and any(o <= 1.0 for o in self.odds):
            raise ValueError(f"decimal odds must all exceed 1, got {self.odds}")


@dataclass
class Dataset:
    """Chronologically ordered games plus a dense team index."""

    games: list[GameRecord]
    team_index: dict[str, int] = field(default_factory=dict)

    def __post_init__(self):
        if not self.team_index:
            for g in self.games:
                for name in (g.home_id, g.away_id):
                    self.team_index.setdefault(name, len(self.team_index))

    @property
    def team_names(self) -> list[str]:
        return list(self.team_index)

    @property
    def n_games(self) -> int:
        return len(self.games)

    @property
    def n_teams(self) -> int:
        return len(self.team_index)


# ---------------------------------------------------------------------------
# Parsing / serialization
# ---------------------------------------------------------------------------


def _parse_date(text: str, line: int) -> dt.date:
    for fmt in _DATE_FORMATS:
        try:
            return dt.datetime.strptime(text, fmt).date()
        except ValueError:
            continue
    raise RowError(f"unparseable date {text!r}", line)


def _parse_odds(row: dict[str, str], line: int) -> tuple[float, float, float] | None:
    cells = [(row.get(c) or "").strip() for c in ODDS_COLUMNS]  # short rows give None
    if any(c == "" for c in cells):
        return None
    try:
        odds = tuple(float(c) for c in cells)
    except ValueError:
        raise RowError(f"unparseable odds {cells}", line) from None
    if any(o <= 1.0 for o in odds):
        raise RowError(f"decimal odds must all exceed 1, got {odds}", line)
    return odds


def parse_matches(source: str | TextIO) -> Dataset:
    """Parse a football-data CSV stream into a Dataset.

    Games are sorted by date, preserving file order within a date (the
    files themselves do not record kick-off order).  Duplicate fixtures on
    the same date are accepted; cup replays exist.
    """
    if isinstance(source, str):
        source = io.StringIO(source)
    reader = csv.DictReader(source)
    header = reader.fieldnames or []
    missing = [c for c in REQUIRED_COLUMNS if c not in header]
    if missing:
        raise SchemaError(f"missing required column(s): {', '.join(missing)}")

    games: list[GameRecord] = []
    for row in reader:
        line = reader.line_num
        date_cell = (row.get("Date") or "").strip()
        home = (row.get("HomeTeam") or "").strip()
        away = (row.get("AwayTeam") or "").strip()
        outcome = (row.get("FTR") or "").strip()
        if not any((date_cell, home, away, outcome)):
            continue  # blank line
        if outcome not in OUTCOMES:
            raise RowError(f"FTR must be one of {OUTCOMES}, got {outcome!r}", line)
        date = _parse_date(date_cell, line)
        try:
            record = GameRecord(
                date=date,
                home_id=home,
                away_id=away,
                outcome=outcome,
                odds=_parse_odds(row, line),
            )
        except ValueError as exc:
            raise RowError(str(exc), line) from None
        games.append(record)

    games.sort(key=lambda g: g.date)  # stable: file order kept within a date
    return Dataset(games=games)


def load_matches(path: str | Path) -> Dataset:
    with open(path, "r", encoding="utf-8", errors="replace", newline="") as fh:
        return parse_matches(fh)


def serialize_matches(dataset: Dataset) -> str:
    """Write a Dataset back to the same CSV layout (cache format).

    Dates come out day-first with 4-digit years; odds columns are emitted
    only if at least one game carries odds.  Re-parsing the output yields
    records equal to the input.
    """
    with_odds = any(g.odds is not None for g in dataset.games)
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    header = list(REQUIRED_COLUMNS) + (list(ODDS_COLUMNS) if with_odds else [])
    writer.writerow(header)
    for g in dataset.games:
        row = [g.date.strftime("%d/%m/%Y"), g.home_id, g.away_id, g.outcome]
        if with_odds:
            row += [repr(o) for o in g.odds] if g.odds is not None else ["", "", ""]
        writer.writerow(row)
    return buf.getvalue()


# ---------------------------------------------------------------------------
# Derived quantities
# ---------------------------------------------------------------------------


def odds_to_probs(o_home: float, o_draw: float, o_away: float) -> OutcomeProbs:
    """Bookmaker decimal odds -> probabilities, margin removed.

    Reciprocal odds sum above 1 by the bookmaker's margin; normalizing the
    reciprocals removes it.
    """
    for o in (o_home, o_draw, o_away):
        if not o > 1.0:
            raise ValueError(f"decimal odds must exceed 1, got {o}")
    w_home, w_draw, w_away = 1.0 / o_home, 1.0 / o_draw, 1.0 / o_away
    total = w_home + w_draw + w_away
    return OutcomeProbs(p_home=w_home / total, p_away=w_away / total, p_draw=w_draw / total)


def scheduling_vector(home_index: int, away_index: int, n_teams: int) -> np.ndarray:
    """Signed indicator vector: +1 at home, -1 at away, 0 elsewhere.

    Its inner product with a rating vector is the rating difference, which
    also makes the origin ambiguity explicit: constant vectors map to 0.
    """
    if home_index == away_index:
        raise ValueError("home and away indices must differ")
    for idx in (home_index, away_index):
        if not 0 <= idx < n_teams:
            raise ValueError(f"index {idx} out of range for {n_teams} teams")
    x = np.zeros(n_teams)
    x[home_index] = 1.0
    x[away_index] = -1.0
    return x
