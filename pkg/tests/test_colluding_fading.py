"""Zero-secrecy probabilities under Rayleigh fading, colluding eavesdroppers.

The conditional closed form exp(-v2)/(1+v1) is cross-checked against a raw
frequency count, and the jam-response taxonomy against probe minimization.
"""

import math

import numpy as np
import pytest

from fdjam.colluding_fading import (
    JamResponseKind,
    cdf_lower_bound,
    classify_jam_response,
    cond_prob_zero,
    decreasing_prob_complement,
    decreasing_prob_lower_bound,
    rho_for_eta,
    sample_cond_prob_zero,
    secrecy_sample,
    uncond_prob_zero,
    uncond_upper_bound,
    v_terms,
)
from fdjam.errors import InvalidParameterError
from fdjam.geometry import LinkGains, SystemParams, gains
from fdjam.montecarlo import MCConfig, estimate
from fdjam.oracles import mc_cond_prob_zero_colluding


def test_v_terms_unit_fading() -> None:
    g = LinkGains(4.0, 1.0)
    params = SystemParams(p_t=100.0, p_j=50.0, rho=0.01)
    t = v_terms(g, params, 1.0, 1.0)
    den = 4.0 * (1.0 + 0.01 * 50.0)
    assert t.v1 == pytest.approx(50.0 / den)
    assert t.v2 == pytest.approx(1.0 / den)
    assert cond_prob_zero(g, params, 1.0, 1.0) == pytest.approx(math.exp(-t.v2) / (1.0 + t.v1))


def test_no_jamming_conditional() -> None:
    # v1 vanishes with P_J, leaving exp(-A~/a)
    g = gains(-1.5, 0.0, 2.0)  # d_A = 1, so a = 1
    params = SystemParams(p_t=100.0, p_j=0.0, rho=0.1)
    assert cond_prob_zero(g, params, 1.0, 1.0) == pytest.approx(math.exp(-1.0))
    assert cond_prob_zero(g, params, 2.0, 7.0) == pytest.approx(math.exp(-2.0))


def test_infinite_jamming_conditional() -> None:
    g = LinkGains(2.0, 1.0)
    params = SystemParams(p_t=100.0, p_j=math.inf, rho=0.1)
    t = v_terms(g, params, 1.5, 0.5)
    assert t.v2 == 0.0
    assert t.v1 == pytest.approx((1.0 / 2.0) * 1.5 / (0.1 * 0.5))
    assert cond_prob_zero(g, params, 1.5, 0.5) == pytest.approx(1.0 / (1.0 + t.v1))


def test_conditional_decreases_in_legit_fading() -> None:
    g = LinkGains(4.0, 1.0)
    params = SystemParams(p_t=100.0, p_j=20.0, rho=0.05)
    probs = [cond_prob_zero(g, params, at, 1.0) for at in (0.1, 0.5, 1.0, 3.0)]
    assert all(p0 > p1 for p0, p1 in zip(probs, probs[1:]))


def test_conditional_matches_frequency_count() -> None:
    g = gains(-0.6, 0.0, 2.0)
    params = SystemParams(p_t=100.0, p_j=30.0, rho=0.01)
    closed = cond_prob_zero(g, params, 0.8, 1.3)
    est = mc_cond_prob_zero_colluding(g, params, 0.8, 1.3, MCConfig(seed=10, n_samples=200_000))
    se = math.sqrt(closed * (1.0 - closed) / est.n)
    assert abs(est.mean - closed) <= 3.0 * se


def test_unconditional_below_upper_bound() -> None:
    g = gains(-0.6, 0.0, 2.0)
    params = SystemParams(p_t=100.0, p_j=100.0, rho=0.01)
    mc = MCConfig(seed=2, n_samples=100_000)
    p = uncond_prob_zero(g, params, mc)
    ub = uncond_upper_bound(g, params, mc)
    # dominance holds draw by draw on the shared stream
    assert p.mean < ub.mean
    samples = sample_cond_prob_zero(g, params, mc)
    assert samples.shape == (mc.n_samples,)
    assert p.mean == pytest.approx(float(samples.mean()), rel=1e-12)


def test_jam_response_classes_name_the_minimizer() -> None:
    rng = np.random.default_rng(14)
    probes = np.array([0.0, 1e-3, 1.0, 1e3, 1e6])
    for _ in range(40):
        g = LinkGains(float(10.0 ** rng.uniform(-1, 1)), float(10.0 ** rng.uniform(-1, 1)))
        rho = float(rng.uniform(0.01, 0.5))
        at, bt = (float(v) for v in rng.exponential(size=2))
        resp = classify_jam_response(g, rho, at, bt)

        def prob(pj: float) -> float:
            return cond_prob_zero(g, SystemParams(p_t=1.0, p_j=pj, rho=rho), at, bt)

        grid = list(probes)
        if resp.kind is JamResponseKind.OPTIMAL_FINITE:
            assert 0.0 < resp.p_j_opt < math.inf
            grid += [resp.p_j_opt * 0.999, resp.p_j_opt * 1.001]
            best = prob(resp.p_j_opt)
        elif resp.kind is JamResponseKind.OPTIMAL_INFINITE:
            assert math.isinf(resp.p_j_opt)
            best = prob(1e12)
        else:
            assert resp.p_j_opt == 0.0
            best = prob(0.0)
        assert all(best <= prob(pj) + 1e-12 for pj in grid)
    with pytest.raises(InvalidParameterError):
        classify_jam_response(LinkGains(1.0, 1.0), 0.0, 1.0, 1.0)


def test_decreasing_probability_tail() -> None:
    # exclusion radius 0.1, exponent 2: the response is decreasing in P_J
    # except on a set of fading draws of measure ~2.4e-42
    g = gains(-0.6, 0.0, 2.0)
    rho = rho_for_eta(g.a, g.b, 1.01)
    assert g.b / (rho * g.a) == pytest.approx(1.01, rel=1e-12)
    comp = decreasing_prob_complement(g.a, g.b, rho)
    exact = math.exp(-100.0) * (101.0 - 100.0 * math.exp(-1.0))
    assert comp == pytest.approx(exact, rel=1e-9)
    assert comp == pytest.approx(2.3887372646e-42, rel=1e-9)
    assert decreasing_prob_lower_bound(g.a, g.b, rho) == 1.0 - comp


def test_decreasing_probability_eta_one_limit() -> None:
    a, b = 5.0, 2.0
    comp = decreasing_prob_complement(a, b, b / a)  # eta = 1
    assert comp == pytest.approx((1.0 + a) * math.exp(-a), rel=1e-12)
    with pytest.raises(InvalidParameterError):
        decreasing_prob_complement(0.0, 1.0, 0.1)


def test_cdf_lower_bound_shape() -> None:
    a, b, rho = 100.0, 1.1**-2, 0.01
    levels = np.linspace(0.05, 0.95, 19)
    for p_j in (100.0, 1000.0, math.inf):
        vals = [cdf_lower_bound(float(p), a, b, rho, p_j) for p in levels]
        assert all(0.0 < v <= 1.0 for v in vals)
        assert all(v0 <= v1 for v0, v1 in zip(vals, vals[1:]))
    assert cdf_lower_bound(1.0, a, b, rho, 10.0) == 1.0
    # the exponential factor disappears in the unbounded-power limit
    p = 0.3
    tail = b * p / (b * p + a * rho * (1.0 - p))
    assert cdf_lower_bound(p, a, b, rho, math.inf) == pytest.approx(tail)
    assert cdf_lower_bound(p, a, b, rho, 1e9) == pytest.approx(tail, rel=1e-4)
    with pytest.raises(InvalidParameterError):
        cdf_lower_bound(0.0, a, b, rho, 10.0)
    with pytest.raises(InvalidParameterError):
        cdf_lower_bound(0.5, a, b, rho, 0.0)


def test_bound_dominated_by_empirical_cdf() -> None:
    g = gains(-0.6, 0.0, 2.0)
    params = SystemParams(p_t=100.0, p_j=1000.0, rho=0.01)
    samples = sample_cond_prob_zero(g, params, MCConfig(seed=6, n_samples=50_000))
    for p in (0.1, 0.3, 0.5, 0.7, 0.9):
        bound = cdf_lower_bound(p, g.a, g.b, params.rho, params.p_j)
        emp = float((samples <= p).mean())
        se = math.sqrt(max(emp * (1.0 - emp), 1e-12) / samples.size)
        assert bound <= emp + 3.0 * se


def test_secrecy_sample_zero_event_frequency() -> None:
    g = LinkGains(4.0, 1.0)
    params = SystemParams(p_t=100.0, p_j=10.0, rho=0.05)
    closed = cond_prob_zero(g, params, 1.0, 1.0)
    cfg = MCConfig(seed=11, n_samples=50_000)

    def f(u: np.ndarray) -> np.ndarray:
        return np.array(
            [secrecy_sample(g, params, float(c), float(d)) == 0.0 for c, d in u], dtype=float
        )

    est = estimate(f, cfg, draws_per_sample=2)
    se = math.sqrt(closed * (1.0 - closed) / cfg.n_samples)
    assert abs(est.mean - closed) <= 3.0 * se
    # a positive sample really carries positive rate
    rng = np.random.default_rng(0)
    vals = [secrecy_sample(g, params, float(c), float(d)) for c, d in rng.exponential(size=(200, 2))]
    assert all(v >= 0.0 for v in vals)
    assert any(v > 0.0 for v in vals)
