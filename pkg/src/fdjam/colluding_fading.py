"""Zero-secrecy probabilities for colluding eavesdroppers under Rayleigh fading.

Fading factors are unit-mean exponentials: a_tilde on the protected link,
b_tilde on the residual self-interference path (both known to the link and
conditioned upon), c_tilde and d_tilde on the two eavesdropper paths
(unknown, integrated out).  Zero secrecy given (a_tilde, b_tilde) is the
event c_tilde >= v1*d_tilde + v2 over independent Exp(1) pairs, whose
probability is exp(-v2)/(1+v1).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidParameterError
from .geometry import LinkGains, SystemParams
from .montecarlo import Estimate, MCConfig, estimate, sample_matrix

__all__ = [
    "FadingSampleColluding",
    "ZeroSecrecyTermsColluding",
    "JamResponseKind",
    "JamResponse",
    "v_terms",
    "cond_prob_zero",
    "uncond_prob_zero",
    "uncond_upper_bound",
    "sample_cond_prob_zero",
    "classify_jam_response",
    "decreasing_prob_lower_bound",
    "decreasing_prob_complement",
    "rho_for_eta",
    "cdf_lower_bound",
    "secrecy_sample",
]


@dataclass(frozen=True)
class FadingSampleColluding:
    a_tilde: float
    b_tilde: float
    c_tilde: float
    d_tilde: float

    def __post_init__(self) -> None:
        for name in ("a_tilde", "b_tilde", "c_tilde", "d_tilde"):
            if not getattr(self, name) >= 0:
                raise InvalidParameterError(f"{name} must be >= 0")


@dataclass(frozen=True)
class ZeroSecrecyTermsColluding:
    v1: float
    v2: float


def v_terms(g: LinkGains, params: SystemParams, a_tilde: float, b_tilde: float) -> ZeroSecrecyTermsColluding:
    """v1 = b*A~*P_J/(a*(1+rho*B~*P_J)), v2 = A~/(a*(1+rho*B~*P_J))."""
    a, b, rho, p_j = g.a, g.b, params.rho, params.p_j
    if math.isinf(a):
        return ZeroSecrecyTermsColluding(0.0, 0.0)
    if math.isinf(p_j):
        rb = rho * b_tilde
        if rb > 0:
            v1 = (b / a) * (a_tilde / rb) if not math.isinf(b) else math.inf
            return ZeroSecrecyTermsColluding(v1, 0.0)
        # no effective self-interference: jamming is free, v1 runs away
        v1 = math.inf if b * a_tilde > 0 else 0.0
        return ZeroSecrecyTermsColluding(v1, a_tilde / a)
    den = a * (1.0 + rho * b_tilde * p_j)
    v1 = math.inf if (math.isinf(b) and p_j > 0) else b * a_tilde * p_j / den
    return ZeroSecrecyTermsColluding(v1, a_tilde / den)


def cond_prob_zero(g: LinkGains, params: SystemParams, a_tilde: float, b_tilde: float) -> float:
    """P{zero secrecy | a_tilde, b_tilde} = exp(-v2)/(1+v1)."""
    t = v_terms(g, params, a_tilde, b_tilde)
    if math.isinf(t.v1):
        return 0.0
    return math.exp(-t.v2) / (1.0 + t.v1)


def _cond_prob_zero_array(
    g: LinkGains, params: SystemParams, a_t: np.ndarray, b_t: np.ndarray
) -> np.ndarray:
    a, b, rho, p_j = g.a, g.b, params.rho, params.p_j
    if math.isinf(a):
        return np.ones_like(a_t)
    if math.isinf(b) and p_j > 0:
        return np.zeros_like(a_t)
    if math.isinf(p_j):
        with np.errstate(divide="ignore"):
            v1 = (b / a) * a_t / (rho * b_t)
        return 1.0 / (1.0 + v1)
    den = a * (1.0 + rho * b_t * p_j)
    v1 = b * a_t * p_j / den
    v2 = a_t / den
    return np.exp(-v2) / (1.0 + v1)


def sample_cond_prob_zero(g: LinkGains, params: SystemParams, mc: MCConfig) -> np.ndarray:
    """Conditional zero-secrecy probabilities over sampled (a_tilde, b_tilde)."""
    u = sample_matrix(mc, 2)
    return _cond_prob_zero_array(g, params, u[:, 0], u[:, 1])


def uncond_prob_zero(g: LinkGains, params: SystemParams, mc: MCConfig) -> Estimate:
    """Monte Carlo mean of cond_prob_zero over (a_tilde, b_tilde) ~ Exp(1)^2."""
    return estimate(
        lambda u: _cond_prob_zero_array(g, params, u[:, 0], u[:, 1]), mc, draws_per_sample=2
    )


def uncond_upper_bound(g: LinkGains, params: SystemParams, mc: MCConfig) -> Estimate:
    """Estimate of E{1/(1+v1)}, which dominates uncond_prob_zero samplewise."""

    def f(u: np.ndarray) -> np.ndarray:
        a, b, rho, p_j = g.a, g.b, params.rho, params.p_j
        if math.isinf(a):
            return np.ones(u.shape[0])
        if math.isinf(b) and p_j > 0:
            return np.zeros(u.shape[0])
        if math.isinf(p_j):
            with np.errstate(divide="ignore"):
                v1 = (b / a) * u[:, 0] / (rho * u[:, 1])
        else:
            v1 = b * u[:, 0] * p_j / (a * (1.0 + rho * u[:, 1] * p_j))
        return 1.0 / (1.0 + v1)

    return estimate(f, mc, draws_per_sample=2)


class JamResponseKind(enum.Enum):
    OPTIMAL_INFINITE = "optimal-infinite"
    OPTIMAL_FINITE = "optimal-finite"
    OPTIMAL_ZERO = "optimal-zero"


@dataclass(frozen=True)
class JamResponse:
    kind: JamResponseKind
    p_j_opt: float  # inf / positive value / 0 respectively


def classify_jam_response(g: LinkGains, rho: float, a_tilde: float, b_tilde: float) -> JamResponse:
    """How the conditional zero-secrecy probability responds to P_J.

    With a0 = a(b - rho*B~) and a1 = rho*B~[a(b - rho*B~) - b*A~], the sign
    of d/dP_J of cond_prob_zero is -(a0 + a1*P_J): a0 > 0 with a1 >= 0 means
    larger is always better (optimal-infinite); a0 > 0 with a1 < 0 gives the
    interior minimizer a0/(-a1); a0 <= 0 means jamming only hurts.
    """
    if not rho > 0:
        raise InvalidParameterError(f"classify_jam_response needs rho > 0, got {rho}")
    a, b = g.a, g.b
    a0 = a * (b - rho * b_tilde)
    a1 = rho * b_tilde * (a * (b - rho * b_tilde) - b * a_tilde)
    if a0 > 0 and a1 >= 0:
        return JamResponse(JamResponseKind.OPTIMAL_INFINITE, math.inf)
    if a0 > 0:
        return JamResponse(JamResponseKind.OPTIMAL_FINITE, a0 / -a1)
    return JamResponse(JamResponseKind.OPTIMAL_ZERO, 0.0)


def rho_for_eta(a: float, b: float, eta: float) -> float:
    """rho making b/(rho*a) equal eta."""
    if not eta > 0:
        raise InvalidParameterError(f"eta must be > 0, got {eta}")
    return b / (eta * a)


def decreasing_prob_complement(a: float, b: float, rho: float) -> float:
    """The gap 1 - decreasing_prob_lower_bound, evaluated in log space.

    With eta = b/(rho*a) and delta = eta - 1 the complement is
    exp(-a) * (1 - expm1(-delta*a)/delta), which stays exact to several
    digits even when it is ~1e-42; the eta = 1 limit is (1+a)exp(-a).
    """
    if not a > 0:
        raise InvalidParameterError(f"a must be > 0, got {a}")
    if math.isinf(a):
        return 0.0
    eta = math.inf if rho == 0 or math.isinf(b) else b / (rho * a)
    if eta <= 0:
        raise InvalidParameterError("b and rho must make eta = b/(rho*a) positive")
    if eta == 1.0:
        return math.exp(math.log1p(a) - a)
    delta = eta - 1.0
    factor = 1.0 - math.expm1(-delta * a) / delta if not math.isinf(delta) else 1.0
    # factor > 0 for all delta > -1, so the log-space route is always open
    return math.exp(-a + math.log(factor))


def decreasing_prob_lower_bound(a: float, b: float, rho: float) -> float:
    """Probability of the fading event {A~ < a, B~ < (b/rho)(1 - A~/a)}.

    On that event the conditional zero-secrecy probability decreases in P_J
    for every P_J (optimal-infinite response), so this lower-bounds the
    probability of a decreasing response.  Closed form
    1 - (1/(eta-1))*(eta*exp(-a) - exp(-eta*a)) with eta = b/(rho*a);
    equals 1 at a = inf and 1 - exp(-a) at eta = inf.
    """
    return 1.0 - decreasing_prob_complement(a, b, rho)


def cdf_lower_bound(p: float, a: float, b: float, rho: float, p_j: float) -> float:
    """Lower bound on the CDF of cond_prob_zero at level p.

    exp(-a(1-p)/(b*P_J*p)) * b*p/(b*p + a*rho*(1-p)); the exponential factor
    disappears at P_J = inf, where the bound is the exact CDF.
    """
    if not 0 < p <= 1:
        raise InvalidParameterError(f"p must be in (0, 1], got {p}")
    if not p_j > 0:
        raise InvalidParameterError(f"cdf_lower_bound needs P_J > 0, got {p_j}")
    if not a > 0 or not b > 0:
        raise InvalidParameterError("gains must be > 0")
    if p == 1.0:
        return 1.0
    tail = b * p / (b * p + a * rho * (1.0 - p))
    if math.isinf(p_j):
        return tail
    return math.exp(-a * (1.0 - p) / (b * p_j * p)) * tail


def secrecy_sample(
    g: LinkGains,
    params: SystemParams,
    c_tilde: float,
    d_tilde: float,
    a_tilde: float = 1.0,
    b_tilde: float = 1.0,
) -> float:
    """One fading realization of the secrecy capacity, in bits.

    SNR_AB = A~*P_T/(1+rho*B~*P_J) and SNR_AE = C~*a*P_T/(1+D~*b*P_J).
    """
    a, b, rho, p_j, p_t = g.a, g.b, params.rho, params.p_j, params.p_t
    if p_j == 0 or rho * b_tilde == 0:
        s_ab = a_tilde * p_t
    elif math.isinf(p_j):
        s_ab = 0.0
    else:
        s_ab = a_tilde * p_t / (1.0 + rho * b_tilde * p_j)
    if c_tilde == 0.0:
        s_ae = 0.0
    elif math.isinf(a):
        s_ae = math.inf
    elif p_j == 0 or d_tilde == 0:
        s_ae = c_tilde * a * p_t
    elif math.isinf(p_j) or math.isinf(b):
        s_ae = 0.0
    else:
        s_ae = c_tilde * a * p_t / (1.0 + d_tilde * b * p_j)
    diff = math.log1p(s_ab) - math.log1p(s_ae)
    return max(0.0, diff * math.log2(math.e))
