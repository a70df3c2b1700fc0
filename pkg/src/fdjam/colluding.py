"""Secrecy against colluding eavesdroppers without small-scale fading.

One transmitter sends while the full-duplex receiver jams.  Colluding
eavesdroppers at (x, y) combine what they hear from both endpoints, so the
wiretap SNR uses the total gain pair (a, b).  Everything here is a pure
function of LinkGains and SystemParams.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import InvalidParameterError, UnboundedOptimumError, UnsupportedRegimeError
from .geometry import LinkGains, Region, SystemParams, gains, region_classify, sign_b_minus_rho_a

__all__ = [
    "OptJamResult",
    "snr_ab",
    "snr_ae",
    "secrecy_ab",
    "lambda_factor",
    "gamma_coeff",
    "positivity",
    "zero_region_predicate",
    "jam_derivative_coeffs",
    "opt_jam",
    "worst_location",
]

LOG2E = math.log2(math.e)


def snr_ab(params: SystemParams) -> float:
    """Received SNR on the protected link: P_T / (1 + rho*P_J)."""
    if params.rho == 0:
        return params.p_t
    if math.isinf(params.p_j):
        return 0.0
    return params.p_t / (1.0 + params.rho * params.p_j)


def snr_ae(g: LinkGains, params: SystemParams) -> float:
    """Eavesdropper SNR a*P_T / (1 + b*P_J), with infinite-gain limits."""
    if math.isinf(g.a):
        return math.inf
    if params.p_j == 0:
        return g.a * params.p_t
    if math.isinf(g.b) or math.isinf(params.p_j):
        return 0.0
    return g.a * params.p_t / (1.0 + g.b * params.p_j)


def secrecy_ab(g: LinkGains, params: SystemParams) -> float:
    """Secrecy capacity [C_AB - C_AE]^+ in bits per channel use."""
    if math.isinf(g.a):
        return 0.0
    diff = math.log1p(snr_ab(params)) - math.log1p(snr_ae(g, params))
    return max(0.0, diff * LOG2E)


def lambda_factor(g: LinkGains, params: SystemParams) -> float:
    """lambda = (1 + b*P_J) / (a*(1 + rho*P_J)); secrecy is positive iff > 1."""
    a, b, rho, p_j = g.a, g.b, params.rho, params.p_j
    if math.isinf(a):
        return 0.0
    if math.isinf(p_j):
        if rho == 0:
            return math.inf
        return math.inf if math.isinf(b) else b / (rho * a)
    num = 1.0 if p_j == 0 else 1.0 + b * p_j  # guards inf*0 when b is infinite
    return num / (a * (1.0 + rho * p_j))


def gamma_coeff(g: LinkGains, rho: float) -> float:
    """gamma = (a - 1)/(b - rho*a); NaN on the boundary b = rho*a.

    This is the jamming power at which secrecy switches on (sign of b - rho*a
    positive) or off (negative).
    """
    s = sign_b_minus_rho_a(g.a, g.b, rho)
    if s == 0:
        return math.nan
    if math.isinf(g.b):
        return 0.0 if not math.isinf(g.a) else math.nan
    if math.isinf(g.a):
        # only reachable with rho == 0, where b - rho*a = b
        return math.inf
    return (g.a - 1.0) / (g.b - rho * g.a)


def positivity(g: LinkGains, params: SystemParams) -> bool:
    """True iff secrecy_ab > 0, decided by sign cases rather than floats.

    Cases: b - rho*a > 0 needs P_J > gamma (automatic when a < 1);
    b = rho*a needs a < 1; b - rho*a < 0 needs a < 1 and P_J < gamma.
    """
    s = sign_b_minus_rho_a(g.a, g.b, params.rho)
    if s == 0:
        return g.a < 1.0
    gam = gamma_coeff(g, params.rho)
    if s > 0:
        return g.a < 1.0 or params.p_j > gam
    return g.a < 1.0 and params.p_j < gam


def zero_region_predicate(g: LinkGains, params: SystemParams) -> bool:
    """Membership in the zero-secrecy set R4 union {R1/R2 with P_J <= gamma}.

    Valid for rho < 2^-alpha (where R3 contains no geometric point) and
    P_J > 0; other regimes raise.
    """
    if not params.rho < 2.0**-params.alpha:
        raise UnsupportedRegimeError(
            f"zero_region_predicate needs rho < 2^-alpha, got rho={params.rho}, alpha={params.alpha}"
        )
    if not params.p_j > 0:
        raise UnsupportedRegimeError("zero_region_predicate needs P_J > 0")
    region = region_classify(g, params.rho)
    if region is Region.R3:
        raise UnsupportedRegimeError("R3 input with rho < 2^-alpha is not a geometric point")
    if region is Region.R4:
        return True
    return params.p_j <= gamma_coeff(g, params.rho)


def jam_derivative_coeffs(g: LinkGains, rho: float, p_t: float) -> tuple[float, float, float]:
    """(c2, c1, c0) with sign(dS/dP_J) = sign(-c2*P_J^2 + c1*P_J + c0) where S > 0."""
    a, b = g.a, g.b
    c2 = rho * b * (b - rho * a)
    c1 = 2.0 * rho * b * (a - 1.0)
    c0 = a * b - rho + a * p_t * (b - rho)
    return c2, c1, c0


@dataclass(frozen=True)
class OptJamResult:
    """Optimal jamming power with the quadratic-root ingredients.

    gamma/beta are NaN where undefined (boundary b = rho*a, or rho = 0 paths
    that raise before construction).  In R3 and R4 the optimum is reported as
    0: jamming never helps in R3, and in R4 secrecy is identically zero so
    the cheapest power wins.
    """

    p_j_opt: float
    gamma: float
    beta: float
    region: Region


def opt_jam(g: LinkGains, rho: float, p_t: float) -> OptJamResult:
    """Jamming power maximizing secrecy_ab for fixed gains.

    Closed form [gamma + sqrt(gamma^2 + beta)]^+ in R1/R2 with the R1 clip
    at c0 <= 0; zero in R3/R4.  rho = 0 makes secrecy strictly increasing in
    P_J on the positive side, so no finite maximizer exists.
    """
    if math.isinf(g.a) or math.isinf(g.b):
        raise InvalidParameterError("opt_jam needs finite gains")
    if not p_t > 0:
        raise InvalidParameterError(f"p_t must be > 0, got {p_t}")
    if not rho >= 0:
        raise InvalidParameterError(f"rho must be >= 0, got {rho}")
    if rho == 0:
        raise UnboundedOptimumError("rho = 0: secrecy increases in P_J without bound")
    region = region_classify(g, rho)
    if region in (Region.R3, Region.R4):
        s = sign_b_minus_rho_a(g.a, g.b, rho)
        gam = gamma_coeff(g, rho) if s != 0 else math.nan
        return OptJamResult(p_j_opt=0.0, gamma=gam, beta=math.nan, region=region)
    gam = gamma_coeff(g, rho)
    c2, c1, c0 = jam_derivative_coeffs(g, rho, p_t)
    beta = c0 / c2
    if region is Region.R1 and c0 <= 0:
        return OptJamResult(p_j_opt=0.0, gamma=gam, beta=beta, region=region)
    p_j_opt = gam + math.sqrt(gam * gam + beta)
    return OptJamResult(p_j_opt=p_j_opt, gamma=gam, beta=beta, region=region)


def worst_location(params: SystemParams):
    """Most harmful eavesdropper location outside the exclusion radius.

    Requires delta <= 1, rho below the containment threshold
    delta^alpha/(1+delta)^alpha, and P_J above gamma at the candidate point;
    then the minimizer of secrecy over d_A >= delta is (-delta - 0.5, 0).
    """
    from .geometry import EveLocation, region4_containment_threshold

    if params.delta > 1:
        raise UnsupportedRegimeError(f"worst_location needs delta <= 1, got {params.delta}")
    thr = region4_containment_threshold(params.delta, params.alpha)
    if not params.rho < thr:
        raise UnsupportedRegimeError(
            f"worst_location needs rho < {thr:.6g}, got {params.rho}"
        )
    loc = EveLocation(-params.delta - 0.5, 0.0)
    gam = gamma_coeff(gains(loc.x, loc.y, params.alpha), params.rho)
    if not params.p_j > gam:
        raise UnsupportedRegimeError(
            f"worst_location needs P_J > gamma = {gam:.6g} at the candidate point, got {params.p_j}"
        )
    return loc
