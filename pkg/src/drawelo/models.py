"""Closed-form outcome-probability models for win/draw/loss games.

All models map a rating difference v = theta_home - theta_away to a
normalized triple (p_home, p_away, p_draw).  Four families are provided:

* ``binary``       -- plain logistic win/loss model, p_draw identically 0
* ``elo-implicit`` -- the draw model implied by the classic Elo update:
                      (F^2(v), F^2(-v), 2 F(v) F(-v)) with F the logistic cdf
* ``threshold``    -- latent-variable model with a draw band of width 2*v0
* ``davidson``     -- draw parameter kappa >= 0; kappa=0 recovers the binary
                      model and kappa=2 recovers the elo-implicit model at
                      twice the scale

Everything here is a pure function of its arguments and safe to call from
any thread.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

LOG10_E = math.log10(math.e)


class ModelFamily(str, Enum):
    BINARY = "binary"
    ELO_IMPLICIT = "elo-implicit"
    THRESHOLD = "threshold"
    DAVIDSON = "davidson"


@dataclass(frozen=True)
class ModelParams:
    """Parameters shared by all model families.

    sigma  -- logistic scale (FIFA uses 600, FIDE 400); base-10 exponent
              throughout, so changing base is just a reparameterization of
              sigma and no base knob is exposed.
    kappa  -- draw parameter of the davidson family.
    eta    -- home advantage; the effective difference is v + eta*sigma,
              which makes eta independent of the scale.
    v0     -- draw-band half width of the threshold family.
    """

    sigma: float = 600.0
    kappa: float = 0.7
    eta: float = 0.0
    v0: float = 0.0
    family: ModelFamily = ModelFamily.DAVIDSON

    def __post_init__(self):
        if not (math.isfinite(self.sigma) and self.sigma > 0):
            raise ValueError(f"sigma must be a positive finite real, got {self.sigma}")
        if self.kappa < 0:
            raise ValueError(f"kappa must be >= 0, got {self.kappa}")
        if self.eta < 0:
            raise ValueError(f"eta must be >= 0, got {self.eta}")
        if self.v0 < 0:
            raise ValueError(f"v0 must be >= 0, got {self.v0}")

    @property
    def sigma_prime(self) -> float:
        """Natural-log equivalent of the base-10 scale: sigma * log10(e)."""
        return self.sigma * LOG10_E


@dataclass(frozen=True)
class OutcomeProbs:
    """Normalized probabilities of home win / away win / draw."""

    p_home: float
    p_away: float
    p_draw: float

    def prob_of(self, outcome: str) -> float:
        """Probability assigned to an outcome code 'H', 'A' or 'D'."""
        if outcome == "H":
            return self.p_home
        if outcome == "A":
            return self.p_away
        if outcome == "D":
            return self.p_draw
        raise ValueError(f"unknown outcome {outcome!r}")


# ---------------------------------------------------------------------------
# Core curves
# ---------------------------------------------------------------------------


def _check_finite(v: float):
    if not math.isfinite(v):
        raise ValueError(f"rating difference must be finite, got {v}")


def logistic_cdf(v: float, sigma: float) -> float:
    """Logistic cdf 1 / (1 + 10^(-v/sigma)).

    Evaluated through 10^(-|v|/sigma) only, so large |v| underflows to the
    asymptotic limit instead of overflowing.
    """
    _check_finite(v)
    if not (math.isfinite(sigma) and sigma > 0):
        raise ValueError(f"sigma must be a positive finite real, got {sigma}")
    t = v / sigma
    if t >= 0:
        return 1.0 / (1.0 + 10.0 ** (-t))
    u = 10.0 ** t
    return u / (1.0 + u)


def f_kappa(v: float, params: ModelParams) -> float:
    """Generalized expected score (10^(v/2s) + k/2) / (10^(v/2s) + 10^(-v/2s) + k).

    Antisymmetric around one half: f_kappa(v) + f_kappa(-v) = 1.  kappa=0
    collapses to logistic_cdf(v, sigma); kappa=2 equals logistic_cdf at
    doubled scale.
    """
    _check_finite(v)
    z = 0.5 * v / params.sigma
    if z >= 0:
        return _f_kappa_core(z, params.kappa)
    return 1.0 - _f_kappa_core(-z, params.kappa)


def _f_kappa_core(z: float, kappa: float) -> float:
    # z >= 0; numerator and denominator both scaled by 10^-z so nothing
    # overflows and the z=0 case is exactly one half.
    u = 10.0 ** (-z)
    return (1.0 + 0.5 * kappa * u) / (1.0 + u * u + kappa * u)


# ---------------------------------------------------------------------------
# Family probability triples
# ---------------------------------------------------------------------------


def davidson_probs(v: float, params: ModelParams) -> OutcomeProbs:
    """Draw-parameter model: p_draw = kappa * sqrt(p_home * p_away)."""
    _check_finite(v)
    z = 0.5 * v / params.sigma
    if z >= 0:
        p_win, p_loss, p_draw = _davidson_core(z, params.kappa)
        return OutcomeProbs(p_home=p_win, p_away=p_loss, p_draw=p_draw)
    p_win, p_loss, p_draw = _davidson_core(-z, params.kappa)
    return OutcomeProbs(p_home=p_loss, p_away=p_win, p_draw=p_draw)


def _davidson_core(z: float, kappa: float) -> tuple[float, float, float]:
    # z >= 0; all three terms scaled by 10^-z relative to the textbook form.
    u = 10.0 ** (-z)
    den = 1.0 + u * u + kappa * u
    return 1.0 / den, (u * u) / den, (kappa * u) / den


def elo_implicit_probs(v: float, params: ModelParams) -> OutcomeProbs:
    """The draw model the classic Elo update implements implicitly."""
    p = logistic_cdf(v, params.sigma)
    q = logistic_cdf(-v, params.sigma)
    return OutcomeProbs(p_home=p * p, p_away=q * q, p_draw=2.0 * p * q)


def threshold_probs(v: float, params: ModelParams) -> OutcomeProbs:
    """Latent-difference model: a draw is a difference landing in [-v0, v0]."""
    lo = logistic_cdf(v - params.v0, params.sigma)
    hi = logistic_cdf(v + params.v0, params.sigma)
    # hi - lo >= 0 mathematically; clamp the ~1 ulp cancellation noise
    return OutcomeProbs(
        p_home=lo,
        p_away=logistic_cdf(-v - params.v0, params.sigma),
        p_draw=max(hi - lo, 0.0),
    )


def binary_probs(v: float, params: ModelParams) -> OutcomeProbs:
    """Win/loss logistic model; draws carry probability exactly zero."""
    p = logistic_cdf(v, params.sigma)
    return OutcomeProbs(p_home=p, p_away=logistic_cdf(-v, params.sigma), p_draw=0.0)


# ---------------------------------------------------------------------------
# Dispatch
# ---------------------------------------------------------------------------

_FAMILY_FUNCS = {
    ModelFamily.BINARY: binary_probs,
    ModelFamily.ELO_IMPLICIT: elo_implicit_probs,
    ModelFamily.THRESHOLD: threshold_probs,
    ModelFamily.DAVIDSON: davidson_probs,
}


def apply_home_advantage(v: float, params: ModelParams) -> float:
    """Shift the rating difference in favour of the home side: v + eta*sigma."""
    return v + params.eta * params.sigma


def predict_probs(v: float, params: ModelParams) -> OutcomeProbs:
    """Home-advantage shift followed by the configured family's triple."""
    return _FAMILY_FUNCS[params.family](apply_home_advantage(v, params), params)
