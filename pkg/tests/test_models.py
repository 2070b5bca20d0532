import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from drawelo.models import (
    ModelFamily,
    ModelParams,
    OutcomeProbs,
    apply_home_advantage,
    binary_probs,
    davidson_probs,
    elo_implicit_probs,
    f_kappa,
    logistic_cdf,
    predict_probs,
    threshold_probs,
)

SIGMA = 600.0
GRID_V = [i * SIGMA / 10 for i in range(-50, 51)]  # -5 sigma .. 5 sigma
KAPPAS = [0.0, 0.4, 0.7, 1.0, 2.0]


def params(**kw):
    return ModelParams(**{"sigma": SIGMA, "eta": 0.0, **kw})


def triple(p: OutcomeProbs):
    return (p.p_home, p.p_away, p.p_draw)


# ---------------------------------------------------------------------------
# logistic cdf
# ---------------------------------------------------------------------------


def test_logistic_examples():
    assert logistic_cdf(0.0, SIGMA) == 0.5
    assert logistic_cdf(600.0, SIGMA) == pytest.approx(10 / 11, abs=1e-15)
    assert logistic_cdf(-600.0, SIGMA) == pytest.approx(1 / 11, abs=1e-15)


def test_logistic_monotone_and_complement():
    previous = -1.0
    for v in GRID_V:
        p = logistic_cdf(v, SIGMA)
        assert p > previous
        assert abs(p + logistic_cdf(-v, SIGMA) - 1.0) < 1e-15
        previous = p


def test_logistic_extremes_do_not_overflow():
    assert logistic_cdf(1e9, SIGMA) == 1.0
    assert logistic_cdf(-1e9, SIGMA) == 0.0


@pytest.mark.parametrize("bad_sigma", [0.0, -1.0, math.nan, math.inf])
def test_logistic_rejects_bad_sigma(bad_sigma):
    with pytest.raises(ValueError):
        logistic_cdf(0.0, bad_sigma)


@pytest.mark.parametrize("bad_v", [math.nan, math.inf, -math.inf])
def test_logistic_rejects_non_finite_v(bad_v):
    with pytest.raises(ValueError):
        logistic_cdf(bad_v, SIGMA)


# ---------------------------------------------------------------------------
# generalized expected score
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("kappa", KAPPAS)
def test_f_kappa_half_at_zero(kappa):
    assert f_kappa(0.0, params(kappa=kappa)) == 0.5


def test_f_kappa_zero_reduces_to_logistic():
    p = params(kappa=0.0)
    for v in GRID_V:
        assert f_kappa(v, p) == pytest.approx(logistic_cdf(v, SIGMA), rel=1e-12, abs=1e-15)


def test_f_kappa_two_is_logistic_at_double_scale():
    # F_2(v; s) = logistic(v; 2s); at v = sigma both sides are 1/(1+10^-0.5)
    p = params(kappa=2.0)
    for v in GRID_V:
        assert f_kappa(v, p) == pytest.approx(logistic_cdf(v, 2 * SIGMA), abs=1e-15)
    assert f_kappa(600.0, p) == pytest.approx(0.7597469266479578, abs=1e-12)


@given(
    v=st.floats(-5000, 5000),
    kappa=st.floats(0, 5),
    sigma=st.floats(1, 2000),
)
def test_f_kappa_antisymmetry(v, kappa, sigma):
    p = ModelParams(sigma=sigma, kappa=kappa)
    assert abs(f_kappa(v, p) + f_kappa(-v, p) - 1.0) < 1e-15


def test_f_kappa_monotone():
    p = params(kappa=0.7)
    values = [f_kappa(v, p) for v in GRID_V]
    assert all(a < b for a, b in zip(values, values[1:]))


# ---------------------------------------------------------------------------
# probability triples
# ---------------------------------------------------------------------------


def test_davidson_equal_ratings_kappa2_is_quarter_quarter_half():
    assert triple(davidson_probs(0.0, params(kappa=2.0))) == (0.25, 0.25, 0.5)


def test_davidson_kappa0_has_no_draws():
    probs = davidson_probs(0.0, params(kappa=0.0))
    assert triple(probs) == (0.5, 0.5, 0.0)


def test_davidson_closed_form_point():
    # v = sigma, kappa = 1: with x = 10^0.5 the triple is
    # (x, 1/x, 1) / (x + 1/x + 1), evaluated here from scratch
    x = 10.0**0.5
    den = x + 1 / x + 1
    probs = davidson_probs(600.0, params(kappa=1.0))
    assert probs.p_home == pytest.approx(x / den, abs=1e-12)
    assert probs.p_away == pytest.approx(1 / x / den, abs=1e-12)
    assert probs.p_draw == pytest.approx(1 / den, abs=1e-12)
    assert probs.p_home + probs.p_away + probs.p_draw == pytest.approx(1.0, abs=1e-12)


def test_davidson_draw_is_kappa_times_geometric_mean():
    for kappa in (0.4, 1.0, 2.0):
        for v in (-900.0, -60.0, 0.0, 240.0, 1500.0):
            probs = davidson_probs(v, params(kappa=kappa))
            assert probs.p_draw == pytest.approx(
                kappa * math.sqrt(probs.p_home * probs.p_away), rel=1e-12, abs=1e-15
            )


def test_elo_implicit_examples():
    assert triple(elo_implicit_probs(0.0, params())) == (0.25, 0.25, 0.5)
    probs = elo_implicit_probs(600.0, params())
    assert probs.p_home == pytest.approx((10 / 11) ** 2, abs=1e-12)
    assert probs.p_away == pytest.approx((1 / 11) ** 2, abs=1e-12)
    assert probs.p_draw == pytest.approx(20 / 121, abs=1e-12)
    far = elo_implicit_probs(1e8, params())
    assert triple(far) == (1.0, 0.0, 0.0)


def test_threshold_examples():
    assert triple(threshold_probs(0.0, params(v0=0.0))) == (0.5, 0.5, 0.0)
    probs = threshold_probs(0.0, params(v0=600.0))
    assert probs.p_home == pytest.approx(1 / 11, abs=1e-12)
    assert probs.p_away == pytest.approx(1 / 11, abs=1e-12)
    assert probs.p_draw == pytest.approx(9 / 11, abs=1e-12)
    probs = threshold_probs(300.0, params(v0=300.0))
    assert probs.p_home == pytest.approx(0.5, abs=1e-12)
    assert probs.p_away == pytest.approx(1 / 11, abs=1e-12)
    assert probs.p_draw == pytest.approx(1 - 0.5 - 1 / 11, abs=1e-12)


ALL_FAMILIES = (
    [("davidson", params(kappa=k), davidson_probs) for k in KAPPAS]
    + [("elo-implicit", params(), elo_implicit_probs)]
    + [("threshold", params(v0=v0), threshold_probs) for v0 in (0.0, 300.0, 600.0)]
    + [("binary", params(), binary_probs)]
)


@pytest.mark.parametrize("name,model,func", ALL_FAMILIES)
def test_normalization_on_grid(name, model, func):
    for v in GRID_V:
        probs = func(v, model)
        assert abs(probs.p_home + probs.p_away + probs.p_draw - 1.0) < 1e-12
        assert 0.0 <= probs.p_home <= 1.0
        assert 0.0 <= probs.p_away <= 1.0
        assert 0.0 <= probs.p_draw <= 1.0


@pytest.mark.parametrize("name,model,func", ALL_FAMILIES)
def test_symmetry_on_grid(name, model, func):
    for v in GRID_V:
        here, mirror = func(v, model), func(-v, model)
        assert here.p_home == pytest.approx(mirror.p_away, rel=1e-12, abs=1e-15)
        assert here.p_draw == pytest.approx(mirror.p_draw, rel=1e-12, abs=1e-15)


@pytest.mark.parametrize("name,model,func", ALL_FAMILIES)
def test_p_home_strictly_increasing(name, model, func):
    values = [func(v, model).p_home for v in GRID_V]
    assert all(a < b for a, b in zip(values, values[1:]))


@pytest.mark.parametrize(
    "model,func",
    [(params(kappa=0.7), davidson_probs),
     (params(kappa=2.0), davidson_probs),
     (params(), elo_implicit_probs),
     (params(v0=300.0), threshold_probs)],
)
def test_p_draw_peaks_at_zero_difference(model, func):
    non_negative = [v for v in GRID_V if v >= 0]
    values = [func(v, model).p_draw for v in non_negative]
    assert values[0] == max(func(v, model).p_draw for v in GRID_V)
    assert all(a >= b - 1e-15 for a, b in zip(values, values[1:]))


def test_davidson_kappa0_matches_binary_on_grid():
    model = params(kappa=0.0)
    for v in GRID_V:
        assert davidson_probs(v, model).p_home == pytest.approx(
            logistic_cdf(v, SIGMA), rel=1e-12, abs=1e-15
        )


@pytest.mark.parametrize("scale", [300.0, 600.0])
def test_davidson_kappa2_equals_elo_implicit_at_double_scale(scale):
    dav = ModelParams(sigma=scale, kappa=2.0)
    elo = ModelParams(sigma=2 * scale)
    for v in GRID_V:
        a, b = davidson_probs(v, dav), elo_implicit_probs(v, elo)
        assert a.p_home == pytest.approx(b.p_home, rel=1e-12, abs=1e-15)
        assert a.p_away == pytest.approx(b.p_away, rel=1e-12, abs=1e-15)
        assert a.p_draw == pytest.approx(b.p_draw, rel=1e-12, abs=1e-15)


def test_draw_dominates_at_kappa_one_and_above():
    for kappa in (1.0, 1.3, 2.0, 5.0):
        probs = davidson_probs(0.0, params(kappa=kappa))
        assert probs.p_draw >= probs.p_home
    below = davidson_probs(0.0, params(kappa=0.99))
    assert below.p_draw < below.p_home


@given(
    v=st.floats(-3000, 3000),
    kappa=st.floats(0, 4),
    c=st.floats(0.01, 100),
)
def test_davidson_scale_invariance(v, kappa, c):
    base = davidson_probs(v, ModelParams(sigma=SIGMA, kappa=kappa))
    scaled = davidson_probs(c * v, ModelParams(sigma=c * SIGMA, kappa=kappa))
    assert scaled.p_home == pytest.approx(base.p_home, rel=1e-12, abs=1e-15)
    assert scaled.p_draw == pytest.approx(base.p_draw, rel=1e-12, abs=1e-15)


# ---------------------------------------------------------------------------
# home advantage and dispatch
# ---------------------------------------------------------------------------


def test_home_advantage_shift():
    assert apply_home_advantage(0.0, params(eta=0.3)) == 180.0
    assert apply_home_advantage(100.0, params(eta=0.0)) == 100.0
    assert apply_home_advantage(-180.0, params(eta=0.3)) == 0.0


def test_predict_probs_dispatch():
    dav = params(kappa=2.0, family=ModelFamily.DAVIDSON)
    assert triple(predict_probs(0.0, dav)) == (0.25, 0.25, 0.5)
    binary = params(family=ModelFamily.BINARY)
    assert triple(predict_probs(0.0, binary)) == (0.5, 0.5, 0.0)


def test_predict_probs_composes_shift_then_family():
    shifted = predict_probs(0.0, params(kappa=1.0, eta=0.3, family=ModelFamily.DAVIDSON))
    direct = davidson_probs(180.0, params(kappa=1.0))
    assert triple(shifted) == triple(direct)


def test_outcome_probs_prob_of():
    probs = OutcomeProbs(p_home=0.5, p_away=0.3, p_draw=0.2)
    assert probs.prob_of("H") == 0.5
    assert probs.prob_of("A") == 0.3
    assert probs.prob_of("D") == 0.2
    with pytest.raises(ValueError):
        probs.prob_of("X")


@pytest.mark.parametrize(
    "kw",
    [{"sigma": 0.0}, {"sigma": -5.0}, {"sigma": math.inf},
     {"kappa": -0.1}, {"eta": -0.2}, {"v0": -1.0}],
)
def test_model_params_validation(kw):
    with pytest.raises(ValueError):
        ModelParams(**kw)


def test_sigma_prime_is_natural_log_scale():
    assert params().sigma_prime == pytest.approx(600 * math.log10(math.e), rel=1e-15)
