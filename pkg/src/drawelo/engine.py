"""Rating engines: online stochastic-gradient updates and batch ML fitting.

The online side covers three modes:

* ``elo``        -- classic update K*(s - F(v)) with the logistic expected
                    score; predictions come from the draw model this update
                    implicitly assumes.
* ``kappa-elo``  -- same update shape with the generalized expected score
                    f_kappa, so the draw frequency is adjustable.
* ``elo-check``  -- ratings driven by the classic update, predictions made
                    with a separate draw parameter (deliberate mismatch).

The batch side minimizes the negative log likelihood of a fixed game list
by projected steepest descent, pinning sum(theta) = 0 to remove the origin
ambiguity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Iterable, Mapping, Sequence

from .data import GameRecord
from .errors import ConvergenceError, ZeroProbabilityError
from .models import (
    ModelFamily,
    ModelParams,
    OutcomeProbs,
    apply_home_advantage,
    f_kappa,
    logistic_cdf,
    predict_probs,
)


class UpdateMode(str, Enum):
    ELO = "elo"
    KAPPA_ELO = "kappa-elo"
    ELO_CHECK_KAPPA = "elo-check"


@dataclass
class RatingState:
    """Rating level per player plus a processed-game counter."""

    ratings: dict[str, float] = field(default_factory=dict)
    games_processed: int = 0


@dataclass(frozen=True)
class EngineConfig:
    """Online-update configuration.

    The step is specified as k_tilde with K = k_tilde * sigma, which makes
    the produced predictions independent of the scale.  k_tilde = 0 is
    allowed and freezes the ratings (useful as a degenerate baseline).
    """

    model: ModelParams = ModelParams()
    k_tilde: float = 0.125
    mode: UpdateMode = UpdateMode.KAPPA_ELO
    check_kappa: float = 1.0
    initial_rating: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.k_tilde) and self.k_tilde >= 0):
            raise ValueError(f"k_tilde must be >= 0, got {self.k_tilde}")
        if self.check_kappa < 0:
            raise ValueError(f"check_kappa must be >= 0, got {self.check_kappa}")


@dataclass
class SeasonResult:
    """Output of a sequential season run.

    ``predictions[i]`` is the forecast made *before* game i was processed;
    ``trajectory[i]`` is a snapshot of all ratings just after it.
    """

    state: RatingState
    predictions: list[OutcomeProbs]
    trajectory: list[dict[str, float]]


def score_of(outcome: str, side: str) -> float:
    """Numeric game score from one side's perspective: win 1, draw 0.5, loss 0."""
    if side not in ("home", "away"):
        raise ValueError(f"side must be 'home' or 'away', got {side!r}")
    if outcome == "D":
        return 0.5
    won = (outcome == "H") == (side == "home")
    return 1.0 if won else 0.0


def rating_difference(
    state: RatingState, home: str, away: str, initial_rating: float = 0.0
) -> float:
    """theta_home - theta_away, before any home-advantage shift."""
    ratings = state.ratings
    return ratings.get(home, initial_rating) - ratings.get(away, initial_rating)


def _expected_score(v: float, config: EngineConfig) -> float:
    if config.mode is UpdateMode.KAPPA_ELO:
        return f_kappa(v, config.model)
    # classic Elo: plain logistic expected score (the factor 2 of the
    # implicit draw model's gradient lives inside K)
    return logistic_cdf(v, config.model.sigma)


def sg_update(state: RatingState, game: GameRecord, config: EngineConfig) -> RatingState:
    """One stochastic-gradient rating update; mutates and returns ``state``.

    Unknown players are initialized on first sight.  The two deltas are the
    same number with opposite signs, so the rating sum is conserved exactly.
    """
    ratings = state.ratings
    for player in (game.home_id, game.away_id):
        ratings.setdefault(player, config.initial_rating)
    v = apply_home_advantage(
        ratings[game.home_id] - ratings[game.away_id], config.model
    )
    k = config.k_tilde * config.model.sigma
    delta = k * (score_of(game.outcome, "home") - _expected_score(v, config))
    ratings[game.home_id] += delta
    ratings[game.away_id] -= delta
    state.games_processed += 1
    return state


def prediction_model(config: EngineConfig) -> ModelParams:
    """The probability model a given mode predicts with."""
    if config.mode is UpdateMode.KAPPA_ELO:
        return replace(config.model, family=ModelFamily.DAVIDSON)
    if config.mode is UpdateMode.ELO:
        return replace(config.model, family=ModelFamily.ELO_IMPLICIT)
    return replace(config.model, family=ModelFamily.DAVIDSON, kappa=config.check_kappa)


def predict(state: RatingState, home: str, away: str, config: EngineConfig) -> OutcomeProbs:
    """Outcome probabilities for a fixture under the current ratings."""
    v = rating_difference(state, home, away, config.initial_rating)
    return predict_probs(v, prediction_model(config))


def run_season(
    games: Sequence[GameRecord],
    config: EngineConfig,
    players: Iterable[str] | None = None,
) -> SeasonResult:
    """Process games in order, predicting each one before updating on it."""
    state = RatingState()
    for player in players or ():
        state.ratings.setdefault(player, config.initial_rating)
    predictions: list[OutcomeProbs] = []
    trajectory: list[dict[str, float]] = []
    for game in games:
        predictions.append(predict(state, game.home_id, game.away_id, config))
        sg_update(state, game, config)
        trajectory.append(dict(state.ratings))
    return SeasonResult(state=state, predictions=predictions, trajectory=trajectory)


# ---------------------------------------------------------------------------
# Batch maximum likelihood
# ---------------------------------------------------------------------------


def nll(theta: Mapping[str, float], games: Sequence[GameRecord], model: ModelParams) -> float:
    """Negative log likelihood (natural log) of the games under ``model``."""
    total = 0.0
    for i, game in enumerate(games):
        v = theta[game.home_id] - theta[game.away_id]
        p = predict_probs(v, model).prob_of(game.outcome)
        if p <= 0.0:
            raise ZeroProbabilityError(
                f"game {i} ({game.home_id} vs {game.away_id}): model assigns "
                f"probability 0 to observed outcome {game.outcome!r}"
            )
        total -= math.log(p)
    return total


def _dlogp_dv(v: float, outcome: str, model: ModelParams, label: str) -> float:
    """d log P(outcome | v) / dv for the shifted difference v."""
    sp = model.sigma_prime
    s = score_of(outcome, "home")
    if model.family is ModelFamily.DAVIDSON:
        return (s - f_kappa(v, model)) / sp
    if model.family is ModelFamily.ELO_IMPLICIT:
        return 2.0 * (s - logistic_cdf(v, model.sigma)) / sp
    if model.family is ModelFamily.BINARY:
        if outcome == "D":
            raise ZeroProbabilityError(
                f"{label}: binary model assigns probability 0 to draws"
            )
        return (s - logistic_cdf(v, model.sigma)) / sp
    # threshold family
    lo = logistic_cdf(v - model.v0, model.sigma)
    hi = logistic_cdf(v + model.v0, model.sigma)
    if outcome == "H":
        return (1.0 - lo) / sp
    if outcome == "A":
        return -hi / sp
    p_draw = hi - lo
    if p_draw <= 0.0:
        raise ZeroProbabilityError(
            f"{label}: threshold model assigns probability 0 to draws"
        )
    slope_hi = hi * (1.0 - hi) / sp
    slope_lo = lo * (1.0 - lo) / sp
    return (slope_hi - slope_lo) / p_draw


def nll_gradient(
    theta: Mapping[str, float], games: Sequence[GameRecord], model: ModelParams
) -> dict[str, float]:
    """Gradient of ``nll``; only a game's two participants get contributions."""
    grad = {player: 0.0 for player in theta}
    for i, game in enumerate(games):
        v = apply_home_advantage(theta[game.home_id] - theta[game.away_id], model)
        d = _dlogp_dv(v, game.outcome, model, f"game {i} ({game.home_id} vs {game.away_id})")
        grad[game.home_id] -= d
        grad[game.away_id] += d
    return grad


@dataclass
class FitResult:
    theta: dict[str, float]
    nll: float
    grad_max_norm: float
    iterations: int
    converged: bool
    stop_reason: str


def _check_separable(games: Sequence[GameRecord]):
    score_sum: dict[str, float] = {}
    count: dict[str, int] = {}
    for g in games:
        for player, side in ((g.home_id, "home"), (g.away_id, "away")):
            score_sum[player] = score_sum.get(player, 0.0) + score_of(g.outcome, side)
            count[player] = count.get(player, 0) + 1
    for player, total in score_sum.items():
        if total == 0.0 or total == float(count[player]):
            raise ConvergenceError(
                f"player {player!r} won (or lost) every game; the likelihood "
                "has no finite maximizer - enable ridge regularization"
            )


def batch_ml_fit(
    games: Sequence[GameRecord],
    model: ModelParams,
    *,
    step: float | None = None,
    max_iters: int = 5000,
    tol: float = 1e-6,
    ridge: float = 0.0,
) -> FitResult:
    """Minimize the negative log likelihood over zero-sum rating vectors.

    Steepest descent with the gradient projected onto the zero-sum plane;
    the step halves whenever a trial increases the objective and stays
    halved.  Convergence means gradient max-norm below tol/sigma'.

    The default step is sigma'^2 / max(games per player): per-game
    curvature is at most 1/(4 sigma'^2) and the schedule Laplacian bounds
    the Hessian's largest eigenvalue by twice the busiest player's game
    count, so this keeps the update well inside the stable region.
    """
    if not games:
        raise ValueError("cannot fit an empty game list")
    if ridge < 0:
        raise ValueError(f"ridge must be >= 0, got {ridge}")
    if model.family is ModelFamily.BINARY and any(g.outcome == "D" for g in games):
        raise ValueError(
            "binary family assigns probability 0 to draws; "
            "fit drawn games with a draw-capable family"
        )
    if ridge == 0.0:
        _check_separable(games)

    players: list[str] = []
    seen: set[str] = set()
    for g in games:
        for p in (g.home_id, g.away_id):
            if p not in seen:
                seen.add(p)
                players.append(p)

    theta = {p: 0.0 for p in players}
    sp = model.sigma_prime
    if step is not None:
        mu = step
    else:
        appearances: dict[str, int] = {}
        for g in games:
            for p in (g.home_id, g.away_id):
                appearances[p] = appearances.get(p, 0) + 1
        mu = sp * sp / max(appearances.values())

    def objective(th: dict[str, float]) -> float:
        value = nll(th, games, model)
        if ridge:
            value += ridge * sum(x * x for x in th.values())
        return value

    current = objective(theta)
    g_max = math.inf
    converged = False
    stop_reason = "max-iters"
    increase_streak = 0
    iterations = 0

    for iterations in range(1, max_iters + 1):
        grad = nll_gradient(theta, games, model)
        if ridge:
            for p in players:
                grad[p] += 2.0 * ridge * theta[p]
        mean_g = sum(grad.values()) / len(players)
        for p in players:
            grad[p] -= mean_g
        g_max = max(abs(x) for x in grad.values())
        if g_max < tol / sp:
            converged = True
            stop_reason = "gradient"
            iterations -= 1
            break

        for _ in range(60):
            trial = {p: theta[p] - mu * grad[p] for p in players}
            trial_value = objective(trial)
            if trial_value <= current + 1e-12 * max(1.0, abs(current)):
                break
            mu *= 0.5
        else:
            stop_reason = "stalled"
            break
        if not math.isfinite(trial_value):
            raise ConvergenceError("objective became non-finite during descent")
        increase_streak = increase_streak + 1 if trial_value > current else 0
        if increase_streak >= 10:
            raise ConvergenceError("objective increased on 10 consecutive steps")
        theta, current = trial, trial_value
        if max(abs(x) for x in theta.values()) > 50.0 * model.sigma:
            raise ConvergenceError(
                "ratings diverging beyond 50 sigma; data may be separable - "
                "enable ridge regularization"
            )

    mean_theta = sum(theta.values()) / len(players)
    theta = {p: x - mean_theta for p, x in theta.items()}
    return FitResult(
        theta=theta,
        nll=current,
        grad_max_norm=g_max,
        iterations=iterations,
        converged=converged,
        stop_reason=stop_reason,
    )
