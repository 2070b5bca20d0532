"""Forecast scoring and empirical draw statistics.

The headline metric is the negative logarithmic score, -ln p(realized
outcome), averaged over the second half of a season so the warm-up phase of
the online algorithms is excluded.  Alongside the mean we report the
minimum-length interval containing at least 95% of the per-game scores.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .data import GameRecord
from .errors import ZeroProbabilityError
from .models import OutcomeProbs


@dataclass(frozen=True)
class EmpiricalStats:
    """Outcome frequencies of a game list and the draw parameter they imply."""

    p_home_bar: float
    p_away_bar: float
    p_draw_bar: float
    delta_bar: float
    kappa_bar: float
    n_games: int


@dataclass(frozen=True)
class EvalReport:
    """Mean log score over a window plus the 95% minimum-length interval."""

    mean_ls: float
    interval_low: float
    interval_high: float
    per_game_ls: list[float]
    window: tuple[int, int]  # half-open [start, end) into the scored list


def log_score(prediction: OutcomeProbs, outcome: str) -> float:
    """-ln of the probability assigned to the realized outcome (lower is better)."""
    p = prediction.prob_of(outcome)
    if p <= 0.0:
        raise ZeroProbabilityError(
            f"prediction assigns probability 0 to realized outcome {outcome!r}"
        )
    return -math.log(p)


def score_games(
    predictions: Sequence[OutcomeProbs], games: Sequence[GameRecord]
) -> list[float]:
    """Per-game log scores, with the offending game named on failure."""
    if len(predictions) != len(games):
        raise ValueError(
            f"{len(predictions)} predictions for {len(games)} games"
        )
    scores = []
    for i, (pred, game) in enumerate(zip(predictions, games)):
        try:
            scores.append(log_score(pred, game.outcome))
        except ZeroProbabilityError as exc:
            raise ZeroProbabilityError(
                f"game {i} ({game.home_id} vs {game.away_id}, {game.date}): {exc}"
            ) from None
    return scores


def second_half_window(n_total: int) -> tuple[int, int]:
    """Evaluation window: the last ceil(N/2) games, as [start, end)."""
    if n_total <= 0:
        raise ValueError("empty score list")
    return n_total - (n_total + 1) // 2, n_total


def mean_second_half_ls(per_game_ls: Sequence[float]) -> float:
    """Mean log score over the second half of the list."""
    start, end = second_half_window(len(per_game_ls))
    window = per_game_ls[start:end]
    return sum(window) / len(window)


def credibility_interval(values: Sequence[float], level: float = 0.95) -> tuple[float, float]:
    """Minimum-length interval covering at least ``level`` of the values.

    Scans windows of k = ceil(level*n) consecutive order statistics; ties in
    length are broken toward the smallest lower bound, so the result is
    deterministic.
    """
    if not values:
        raise ValueError("empty value list")
    if not 0.0 < level <= 1.0:
        raise ValueError(f"level must be in (0, 1], got {level}")
    ordered = sorted(values)
    n = len(ordered)
    k = math.ceil(level * n)
    best = (ordered[0], ordered[k - 1])
    for i in range(1, n - k + 1):
        low, high = ordered[i], ordered[i + k - 1]
        if high - low < best[1] - best[0]:
            best = (low, high)
    return best


def evaluate_scores(per_game_ls: Sequence[float], window: str = "second-half") -> EvalReport:
    """Bundle mean and interval over the chosen window into a report."""
    if window == "second-half":
        start, end = second_half_window(len(per_game_ls))
    elif window == "full":
        if not per_game_ls:
            raise ValueError("empty score list")
        start, end = 0, len(per_game_ls)
    else:
        raise ValueError(f"window must be 'second-half' or 'full', got {window!r}")
    scored = list(per_game_ls[start:end])
    low, high = credibility_interval(scored)
    return EvalReport(
        mean_ls=sum(scored) / len(scored),
        interval_low=low,
        interval_high=high,
        per_game_ls=scored,
        window=(start, end),
    )


def empirical_stats(games: Sequence[GameRecord]) -> EmpiricalStats:
    """Outcome frequencies plus the draw parameter matching the draw rate."""
    if not games:
        raise ValueError("empty game list")
    n = len(games)
    n_home = sum(1 for g in games if g.outcome == "H")
    n_away = sum(1 for g in games if g.outcome == "A")
    n_draw = n - n_home - n_away
    p_home, p_away, p_draw = n_home / n, n_away / n, n_draw / n
    kappa_bar = math.inf if p_draw == 1.0 else 2.0 * p_draw / (1.0 - p_draw)
    return EmpiricalStats(
        p_home_bar=p_home,
        p_away_bar=p_away,
        p_draw_bar=p_draw,
        delta_bar=p_home - p_away,
        kappa_bar=kappa_bar,
        n_games=n,
    )


def implied_draw_freq(kappa: float) -> float:
    """Draw frequency a draw parameter assumes between equal-rated sides: k/(2+k)."""
    if kappa < 0:
        raise ValueError(f"kappa must be >= 0, got {kappa}")
    return kappa / (2.0 + kappa)
