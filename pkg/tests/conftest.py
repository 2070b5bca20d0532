import datetime as dt
import os
from pathlib import Path

import pytest

from drawelo.data import GameRecord

EPOCH = dt.date(2021, 8, 1)


def game(home, away, outcome, day=0, odds=None):
    return GameRecord(
        date=EPOCH + dt.timedelta(days=day),
        home_id=home,
        away_id=away,
        outcome=outcome,
        odds=odds,
    )


def random_games(rng, players, n, allow_draws=True):
    """Arbitrary fixtures with uniform-ish outcomes, one per day."""
    outcomes = ("H", "D", "A") if allow_draws else ("H", "A")
    games = []
    for i in range(n):
        home, away = rng.choice(len(players), size=2, replace=False)
        games.append(
            game(players[home], players[away], outcomes[rng.integers(len(outcomes))], day=i)
        )
    return games


def epl_path(season: str) -> Path | None:
    """Locate a user-supplied EPL season file, e.g. '2017-2018'."""
    root = Path(os.environ.get("DRAWELO_EPL_DIR", Path(__file__).parent.parent / "data" / "epl"))
    path = root / f"{season}.csv"
    return path if path.exists() else None


@pytest.fixture
def two_player_record():
    """A beats B twice, B beats A once."""
    return [game("A", "B", "H", 0), game("A", "B", "H", 1), game("B", "A", "H", 2)]
