"""Static secrecy against colluding eavesdroppers and the optimal jamming power."""

import math

import numpy as np
import pytest

from fdjam.colluding import (
    gamma_coeff,
    jam_derivative_coeffs,
    lambda_factor,
    opt_jam,
    positivity,
    secrecy_ab,
    snr_ab,
    snr_ae,
    worst_location,
    zero_region_predicate,
)
from fdjam.errors import InvalidParameterError, UnboundedOptimumError, UnsupportedRegimeError
from fdjam.geometry import LinkGains, Region, SystemParams, gains
from fdjam.oracles import golden_max_secrecy


def _params(p_j: float, rho: float = 0.01, p_t: float = 100.0) -> SystemParams:
    return SystemParams(p_t=p_t, p_j=p_j, rho=rho)


def test_snr_and_secrecy_formulas() -> None:
    g = LinkGains(4.0, 1.0)
    params = _params(p_j=50.0)
    assert snr_ab(params) == pytest.approx(100.0 / 1.5)
    assert snr_ae(g, params) == pytest.approx(400.0 / 51.0)
    lam = lambda_factor(g, params)
    assert lam == pytest.approx(51.0 / (4.0 * 1.5))
    s = secrecy_ab(g, params)
    assert s == pytest.approx(math.log2(1.0 + 100.0 / 1.5) - math.log2(1.0 + 400.0 / 51.0))
    assert (s > 0.0) == (lam > 1.0) == positivity(g, params)


def test_secrecy_clamps_at_zero() -> None:
    g = LinkGains(4.0, 1.0)  # strong eavesdropper, no jamming
    params = _params(p_j=0.0)
    assert secrecy_ab(g, params) == 0.0
    assert not positivity(g, params)


def test_positivity_matches_secrecy_sign() -> None:
    rng = np.random.default_rng(17)
    for _ in range(300):
        g = LinkGains(float(10.0 ** rng.uniform(-2, 2)), float(10.0 ** rng.uniform(-2, 2)))
        params = _params(
            p_j=float(10.0 ** rng.uniform(-2, 4)),
            rho=float(rng.uniform(0.0, 1.5)),
            p_t=float(10.0 ** rng.uniform(0, 3)),
        )
        assert positivity(g, params) == (secrecy_ab(g, params) > 0.0)


def test_gamma_threshold_splits_positivity() -> None:
    g = LinkGains(4.0, 1.0)
    gam = gamma_coeff(g, 0.01)
    assert gam == pytest.approx(3.0 / 0.96)
    assert not positivity(g, _params(p_j=gam * 0.999))
    assert positivity(g, _params(p_j=gam * 1.001))


def test_opt_jam_reference_point() -> None:
    g = LinkGains(4.0, 1.0)
    res = opt_jam(g, rho=0.01, p_t=100.0)
    assert res.region is Region.R2
    assert res.gamma == pytest.approx(3.125)
    assert res.beta == pytest.approx(399.99 / 0.0096)
    assert res.p_j_opt == pytest.approx(207.27051335995608, rel=1e-12)
    # derivative polynomial changes sign exactly there
    c2, c1, c0 = jam_derivative_coeffs(g, 0.01, 100.0)
    p = res.p_j_opt
    assert -c2 * p * p + c1 * p + c0 == pytest.approx(0.0, abs=1e-9)


def test_opt_jam_beats_search_oracle() -> None:
    g = LinkGains(4.0, 1.0)
    res = opt_jam(g, rho=0.01, p_t=100.0)
    pj_oracle, s_oracle = golden_max_secrecy(g, 0.01, 100.0)
    s_closed = secrecy_ab(g, _params(p_j=res.p_j_opt))
    assert abs(pj_oracle - res.p_j_opt) / res.p_j_opt < 1e-6
    assert s_closed >= s_oracle - 1e-10


def test_opt_jam_r1_interior_and_clip() -> None:
    interior = opt_jam(LinkGains(0.5, 2.0), rho=0.1, p_t=10.0)
    assert interior.region is Region.R1
    assert interior.p_j_opt > 0.0
    clipped = opt_jam(LinkGains(0.5, 0.2), rho=0.3, p_t=10.0)
    assert clipped.region is Region.R1
    assert clipped.p_j_opt == 0.0
    # with c0 <= 0 any positive power only hurts
    s0 = secrecy_ab(LinkGains(0.5, 0.2), SystemParams(p_t=10.0, p_j=0.0, rho=0.3))
    s1 = secrecy_ab(LinkGains(0.5, 0.2), SystemParams(p_t=10.0, p_j=1.0, rho=0.3))
    assert s0 > s1


def test_opt_jam_r3_r4_zero() -> None:
    r3 = opt_jam(LinkGains(0.5, 0.01), rho=0.1, p_t=100.0)
    assert r3.region is Region.R3 and r3.p_j_opt == 0.0
    r4 = opt_jam(LinkGains(4.0, 0.01), rho=0.1, p_t=100.0)
    assert r4.region is Region.R4 and r4.p_j_opt == 0.0


def test_opt_jam_unbounded_without_self_interference() -> None:
    with pytest.raises(UnboundedOptimumError):
        opt_jam(LinkGains(4.0, 1.0), rho=0.0, p_t=100.0)
    with pytest.raises(InvalidParameterError):
        opt_jam(LinkGains(math.inf, 1.0), rho=0.1, p_t=100.0)


def test_zero_region_predicate() -> None:
    params = SystemParams(p_t=100.0, p_j=10.0, rho=0.1)
    assert zero_region_predicate(LinkGains(4.0, 0.01), params)  # R4
    g = LinkGains(4.0, 1.0)
    gam = gamma_coeff(g, 0.1)
    assert zero_region_predicate(g, SystemParams(p_t=100.0, p_j=gam * 0.9, rho=0.1))
    assert not zero_region_predicate(g, SystemParams(p_t=100.0, p_j=gam * 1.1, rho=0.1))
    with pytest.raises(UnsupportedRegimeError):
        zero_region_predicate(g, SystemParams(p_t=100.0, p_j=10.0, rho=0.5))  # rho >= 2^-alpha
    with pytest.raises(UnsupportedRegimeError):
        zero_region_predicate(g, SystemParams(p_t=100.0, p_j=0.0, rho=0.1))
    with pytest.raises(UnsupportedRegimeError):
        # an R3 gain pair cannot come from a location when rho < 2^-alpha
        zero_region_predicate(LinkGains(0.5, 0.01), params)


def test_worst_location_candidate() -> None:
    params = SystemParams(p_t=100.0, p_j=1000.0, rho=0.005, alpha=2.0, delta=0.1)
    loc = worst_location(params)
    assert (loc.x, loc.y) == (-0.6, 0.0)
    # the candidate actually minimizes over a coarse probe of the allowed set
    s_cand = secrecy_ab(gains(loc.x, loc.y, 2.0), params)
    rng = np.random.default_rng(8)
    for _ in range(500):
        x, y = rng.uniform(-2, 2, size=2)
        if math.hypot(x + 0.5, y) < params.delta:
            continue
        assert secrecy_ab(gains(float(x), float(y), 2.0), params) >= s_cand - 1e-12


def test_worst_location_preconditions() -> None:
    with pytest.raises(UnsupportedRegimeError):
        worst_location(SystemParams(p_t=100.0, p_j=1000.0, rho=0.005, delta=1.5))
    with pytest.raises(UnsupportedRegimeError):
        worst_location(SystemParams(p_t=100.0, p_j=1000.0, rho=0.01, delta=0.1))
    with pytest.raises(UnsupportedRegimeError):
        worst_location(SystemParams(p_t=100.0, p_j=100.0, rho=0.005, delta=0.1))
