"""Zero-secrecy probabilities and jamming policies for the dual-phase link under fading.

The protected-link fading a_tilde is shared by both phases (reciprocity);
b1_tilde and b2_tilde are the self-interference fadings at the two jamming
receivers; c_tilde and d_tilde are the unknown eavesdropper-path fadings.
Zero secrecy in both phases is the wedge event
{c >= v1*d + v2} and {d >= u1*c + u2} over independent Exp(1) (c, d), whose
probability collapses to K*exp(-E) when w1 > 0 and to 0 otherwise.
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
    "FadingSamplePair",
    "ZeroSecrecyTermsPair",
    "JamPolicyKind",
    "JamPolicy",
    "PolicyReport",
    "pair_terms",
    "cond_prob_zero_pair",
    "cond_prob_zero_pair_array",
    "prob_zero_nojam",
    "prob_zero_nojam_origin",
    "eve_at_node_prob",
    "pj_star",
    "policy_prob_zero",
    "p1_bound",
    "p2_bound",
    "semi_dynamic_cap",
    "homogeneous_secrecy",
    "homogeneous_tail_bound",
    "secrecy_sample_pair",
]

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(48)


@dataclass(frozen=True)
class FadingSamplePair:
    a_tilde: float
    b1_tilde: float
    b2_tilde: float
    c_tilde: float
    d_tilde: float

    def __post_init__(self) -> None:
        for name in ("a_tilde", "b1_tilde", "b2_tilde", "c_tilde", "d_tilde"):
            if not getattr(self, name) >= 0:
                raise InvalidParameterError(f"{name} must be >= 0")


@dataclass(frozen=True)
class ZeroSecrecyTermsPair:
    """All intermediates of the two-phase wedge probability.

    c_min is the smallest c for which the wedge has positive d-width; the
    wedge is empty (probability zero without integrating) when v1*u1 >= 1.
    At infinite P_J the w's diverge while k and e_exp keep their limits, so
    the w fields are reported as inf there.
    """

    v1: float
    v2: float
    u1: float
    u2: float
    c_min: float
    k: float
    e_exp: float
    w1: float
    w2: float
    w3: float


def pair_terms(
    g: LinkGains, params: SystemParams, a_tilde: float, b1_tilde: float, b2_tilde: float
) -> ZeroSecrecyTermsPair:
    a, b, rho, p_j = g.a, g.b, params.rho, params.p_j
    if math.isinf(a) or math.isinf(b):
        raise InvalidParameterError("pair_terms needs finite gains; use the node limit results")
    if math.isinf(p_j):
        r1 = rho * b1_tilde
        r2 = rho * b2_tilde
        v1 = b * a_tilde / (a * r1) if r1 > 0 else (math.inf if a_tilde > 0 else 0.0)
        u1 = a * a_tilde / (b * r2) if r2 > 0 else (math.inf if a_tilde > 0 else 0.0)
        prod = a_tilde * a_tilde / (r1 * r2) if r1 * r2 > 0 else (math.inf if a_tilde > 0 else 0.0)
        if prod < 1.0:
            c_min = 0.0
            k = (
                a * b * (r1 * r2 - a_tilde**2)
                / ((a * a_tilde + rho * b * b2_tilde) * (b * a_tilde + rho * a * b1_tilde))
            )
        else:
            c_min = math.inf
            k = 0.0
        return ZeroSecrecyTermsPair(
            v1=v1, u1=u1, v2=0.0, u2=0.0, c_min=c_min, k=k, e_exp=0.0,
            w1=math.inf, w2=math.inf, w3=math.inf,
        )
    q1 = 1.0 + rho * b1_tilde * p_j
    q2 = 1.0 + rho * b2_tilde * p_j
    v1 = b * a_tilde * p_j / (a * q1)
    v2 = a_tilde / (a * q1)
    u1 = a * a_tilde * p_j / (b * q2)
    u2 = a_tilde / (b * q2)
    prod = a_tilde**2 * p_j**2 / (q1 * q2)
    c_min = (v2 + v1 * u2) / (1.0 - prod) if prod < 1.0 else math.inf
    w1 = a * b * (q1 * q2 - a_tilde**2 * p_j**2)
    w2 = (a * a_tilde * p_j + b * q2) * (b * a_tilde * p_j + a * q1)
    w3 = a_tilde * (a * q1 + b * q2 + b * a_tilde * p_j + a * a_tilde * p_j)
    if w1 > 0:
        k = w1 / w2
        e_exp = w3 / w1
    else:
        k = 0.0
        e_exp = math.inf
    return ZeroSecrecyTermsPair(
        v1=v1, v2=v2, u1=u1, u2=u2, c_min=c_min, k=k, e_exp=e_exp, w1=w1, w2=w2, w3=w3
    )


# Below this fraction of w2, w1 is treated as 0: K has already vanished and
# E = w3/w1 would overflow before the product does.
_W1_GUARD = 1e-30


def cond_prob_zero_pair(
    g: LinkGains, params: SystemParams, a_tilde: float, b1_tilde: float, b2_tilde: float
) -> float:
    """P{both phases have zero secrecy | a_tilde, b1_tilde, b2_tilde}."""
    if math.isinf(g.a) or math.isinf(g.b):
        if params.p_j > 0:
            return 0.0
        # no jamming: only the finite-gain phase can fail
        inv = (1.0 / g.a if not math.isinf(g.a) else 0.0) + (
            1.0 / g.b if not math.isinf(g.b) else 0.0
        )
        return math.exp(-a_tilde * inv)
    t = pair_terms(g, params, a_tilde, b1_tilde, b2_tilde)
    if math.isfinite(t.w1):
        if not t.w1 > _W1_GUARD * t.w2:
            return 0.0
    elif t.k <= 0.0:
        return 0.0
    return t.k * math.exp(-t.e_exp)


def cond_prob_zero_pair_array(
    g: LinkGains, params: SystemParams, a_t: np.ndarray, b1_t: np.ndarray, b2_t: np.ndarray
) -> np.ndarray:
    """Vectorized cond_prob_zero_pair over fading arrays (finite gains)."""
    a, b, rho, p_j = g.a, g.b, params.rho, params.p_j
    if math.isinf(a) or math.isinf(b):
        raise InvalidParameterError("array form needs finite gains")
    if math.isinf(p_j):
        d = rho**2 * b1_t * b2_t - a_t**2
        num = a * b * d
        den = (a * a_t + rho * b * b2_t) * (b * a_t + rho * a * b1_t)
        with np.errstate(invalid="ignore", divide="ignore"):
            out = np.where(d > 0, num / den, 0.0)
        return out
    q1 = 1.0 + rho * b1_t * p_j
    q2 = 1.0 + rho * b2_t * p_j
    w1 = a * b * (q1 * q2 - a_t**2 * p_j**2)
    w2 = (a * a_t * p_j + b * q2) * (b * a_t * p_j + a * q1)
    w3 = a_t * (a * q1 + b * q2 + (a + b) * a_t * p_j)
    live = w1 > _W1_GUARD * w2
    with np.errstate(invalid="ignore", divide="ignore", over="ignore"):
        val = np.where(live, w1 / w2 * np.exp(-w3 / np.where(live, w1, 1.0)), 0.0)
    return val


def prob_zero_nojam(g: LinkGains) -> float:
    """Unconditional P{S = 0} without jamming: 1/(1 + 1/a + 1/b)."""
    inv_a = 0.0 if math.isinf(g.a) else 1.0 / g.a
    inv_b = 0.0 if math.isinf(g.b) else 1.0 / g.b
    return 1.0 / (1.0 + inv_a + inv_b)


def prob_zero_nojam_origin(alpha: float) -> float:
    """The maximum of prob_zero_nojam over locations: 1/(1+0.5^(alpha-1)) at the origin."""
    return 1.0 / (1.0 + 0.5 ** (alpha - 1.0))


def eve_at_node_prob(params: SystemParams) -> float:
    """P{S = 0} with the eavesdropper exactly at an endpoint.

    Any positive jamming power drives it to zero; without jamming it is the
    no-jam node value 0.5.
    """
    return 0.0 if params.p_j > 0 else 0.5


def pj_star(a_tilde: float, b1_tilde: float, b2_tilde: float, rho: float) -> float | None:
    """Smallest jamming power that forces the conditional probability to zero.

    Exists iff a_tilde^2 > rho^2*b1_tilde*b2_tilde; w1 <= 0 (wedge empty)
    for every P_J >= the returned root.  None when the fading draw leaves
    w1 positive for all powers.
    """
    if not rho >= 0:
        raise InvalidParameterError(f"rho must be >= 0, got {rho}")
    disc = a_tilde**2 - rho**2 * b1_tilde * b2_tilde
    if not disc > 0:
        return None
    s = rho * (b1_tilde + b2_tilde)
    return (s + math.sqrt(s * s + 4.0 * disc)) / (2.0 * disc)


class JamPolicyKind(enum.Enum):
    CONSTANT = "constant"
    SEMI_DYNAMIC = "semi-dynamic"
    FULL_DYNAMIC = "full-dynamic"
    GENERAL_DYNAMIC = "general-dynamic"


@dataclass(frozen=True)
class JamPolicy:
    kind: JamPolicyKind
    p_accept: float | None = None  # only for general-dynamic

    def __post_init__(self) -> None:
        if self.kind is JamPolicyKind.GENERAL_DYNAMIC:
            if self.p_accept is None or not 0.0 < self.p_accept < 1.0:
                raise InvalidParameterError("general-dynamic needs p_accept in (0, 1)")
        elif self.p_accept is not None:
            raise InvalidParameterError("p_accept only applies to general-dynamic")


@dataclass(frozen=True)
class PolicyReport:
    """Zero-secrecy probability of a policy plus its closed-form companions.

    p1/p2 are the analytic upper bounds evaluated on the same fading stream
    as the estimate, so estimate < p1 (semi-dynamic) and estimate < p2
    (constant) hold samplewise, not just in expectation.  residual is the
    mean conditional probability over accepted states for general-dynamic.
    """

    policy: JamPolicy
    estimate: Estimate
    p1: Estimate | None = None
    p2: Estimate | None = None
    acceptance: Estimate | None = None
    residual: Estimate | None = None


def semi_dynamic_cap(rho: float) -> float:
    """Analytic cap pi*rho/4 on P1 = E{1 - exp(-rho*sqrt(b1*b2))}."""
    return math.pi * rho / 4.0


def _k_inf_grid(w: np.ndarray, u: np.ndarray, v: np.ndarray, a: float, b: float, rho: float) -> np.ndarray:
    num = a * b * (rho**2 * u * v - w**2)
    den = (a * w + rho * b * v) * (b * w + rho * a * u)
    with np.errstate(invalid="ignore", divide="ignore"):
        return np.where(num > 0, num / den, 0.0)


def _semi_dynamic_integrand(u_col: np.ndarray, v_col: np.ndarray, a: float, b: float, rho: float) -> np.ndarray:
    """E_A{K_inf * 1[A < rho*sqrt(uv)]} per (u, v) row, by Gauss-Legendre."""
    t = rho * np.sqrt(u_col * v_col)
    half = 0.5 * t
    w = half * (_GL_NODES + 1.0)  # (m, 48)
    vals = _k_inf_grid(w, u_col, v_col, a, b, rho) * np.exp(-w)
    return (vals @ _GL_WEIGHTS) * half[:, 0]


def _constant_integrand(
    u_col: np.ndarray, v_col: np.ndarray, g: LinkGains, rho: float, p_j: float
) -> tuple[np.ndarray, np.ndarray]:
    """(estimate term, bound term) per (u, v) row for the constant policy."""
    a, b = g.a, g.b
    w0 = np.sqrt(rho**2 * u_col * v_col + (1.0 + rho * (u_col + v_col) * p_j) / p_j**2)
    half = 0.5 * w0
    w = half * (_GL_NODES + 1.0)
    q1 = 1.0 + rho * u_col * p_j
    q2 = 1.0 + rho * v_col * p_j
    w1 = a * b * (q1 * q2 - w**2 * p_j**2)
    w2 = (a * w * p_j + b * q2) * (b * w * p_j + a * q1)
    w3 = w * (a * q1 + b * q2 + (a + b) * w * p_j)
    live = w1 > 0
    with np.errstate(invalid="ignore", divide="ignore", over="ignore"):
        vals = np.where(live, w1 / w2 * np.exp(-w3 / np.where(live, w1, 1.0)), 0.0)
    inner = (np.exp(-w) * vals) @ _GL_WEIGHTS * half[:, 0]
    return inner, -np.expm1(-w0[:, 0])


def policy_prob_zero(
    policy: JamPolicy, g: LinkGains, params: SystemParams, mc: MCConfig
) -> PolicyReport:
    """Zero-secrecy probability achieved by a jamming-power policy.

    semi-dynamic: P_J > pj_star whenever it exists, unbounded power
    otherwise; only draws with a_tilde <= rho*sqrt(b1*b2) can fail, and the
    a_tilde coordinate is integrated in closed quadrature (the estimator
    averages a deterministic function of (b1, b2), which both cuts variance
    and makes estimate < p1 hold draw by draw).

    constant: P_J = params.p_j throughout, same construction over the
    window a_tilde < w0; p_j = 0 falls back to the exact no-jam closed form.

    full-dynamic: power chosen per (c, d) reality; never zero secrecy.

    general-dynamic(p): transmit only when the conditional probability is
    at most p, then suppress dynamically (zero secrecy never happens);
    reports the acceptance probability and the mean accepted conditional
    probability as the residual.
    """
    a, b, rho = g.a, g.b, params.rho
    kind = policy.kind
    if kind is JamPolicyKind.FULL_DYNAMIC:
        return PolicyReport(policy=policy, estimate=Estimate(0.0, 0.0, mc.n_samples))
    if kind is JamPolicyKind.SEMI_DYNAMIC:
        if math.isinf(a) or math.isinf(b):
            return PolicyReport(policy=policy, estimate=Estimate(0.0, 0.0, mc.n_samples))
        est = estimate(
            lambda uv: _semi_dynamic_integrand(uv[:, :1], uv[:, 1:2], a, b, rho),
            mc,
            draws_per_sample=2,
        )
        p1 = estimate(
            lambda uv: -np.expm1(-rho * np.sqrt(uv[:, 0] * uv[:, 1])), mc, draws_per_sample=2
        )
        return PolicyReport(policy=policy, estimate=est, p1=p1)
    if kind is JamPolicyKind.CONSTANT:
        if math.isinf(a) or math.isinf(b):
            val = eve_at_node_prob(params)
            return PolicyReport(policy=policy, estimate=Estimate(val, 0.0, mc.n_samples))
        if params.p_j == 0:
            return PolicyReport(
                policy=policy,
                estimate=Estimate(prob_zero_nojam(g), 0.0, mc.n_samples),
                p2=Estimate(1.0, 0.0, mc.n_samples),
            )
        if math.isinf(params.p_j):
            est = estimate(
                lambda uv: _semi_dynamic_integrand(uv[:, :1], uv[:, 1:2], a, b, rho),
                mc,
                draws_per_sample=2,
            )
            p2 = estimate(
                lambda uv: -np.expm1(-rho * np.sqrt(uv[:, 0] * uv[:, 1])), mc, draws_per_sample=2
            )
            return PolicyReport(policy=policy, estimate=est, p2=p2)
        def f_both(uv: np.ndarray) -> np.ndarray:
            inner, _ = _constant_integrand(uv[:, :1], uv[:, 1:2], g, rho, params.p_j)
            return inner

        def f_bound(uv: np.ndarray) -> np.ndarray:
            _, bound = _constant_integrand(uv[:, :1], uv[:, 1:2], g, rho, params.p_j)
            return bound

        est = estimate(f_both, mc, draws_per_sample=2)
        p2 = estimate(f_bound, mc, draws_per_sample=2)
        return PolicyReport(policy=policy, estimate=est, p2=p2)
    # general-dynamic
    p = float(policy.p_accept)
    draws = sample_matrix(mc, 3)
    if math.isinf(a) or math.isinf(b):
        if params.p_j > 0:
            cond = np.zeros(draws.shape[0])
        else:
            inv = (0.0 if math.isinf(a) else 1.0 / a) + (0.0 if math.isinf(b) else 1.0 / b)
            cond = np.exp(-draws[:, 0] * inv)
    else:
        cond = cond_prob_zero_pair_array(g, params, draws[:, 0], draws[:, 1], draws[:, 2])
    accepted = cond <= p
    n = cond.size
    acc_mean = float(accepted.mean())
    acc_stderr = math.sqrt(max(acc_mean * (1.0 - acc_mean), 0.0) / n)
    n_acc = int(accepted.sum())
    if n_acc > 1:
        sub = cond[accepted]
        res = Estimate(float(sub.mean()), float(sub.std(ddof=1) / math.sqrt(n_acc)), n_acc)
    else:
        res = Estimate(float(cond[accepted].mean()) if n_acc else 0.0, 0.0, n_acc)
    return PolicyReport(
        policy=policy,
        estimate=Estimate(0.0, 0.0, n),
        acceptance=Estimate(acc_mean, acc_stderr, n),
        residual=res,
    )


def p1_bound(rho: float, mc: MCConfig) -> Estimate:
    """P1 = E{1 - exp(-rho*sqrt(b1*b2))}, the semi-dynamic failure-window mass."""
    return estimate(
        lambda uv: -np.expm1(-rho * np.sqrt(uv[:, 0] * uv[:, 1])), mc, draws_per_sample=2
    )


def p2_bound(rho: float, p_j: float, mc: MCConfig) -> Estimate:
    """P2 = E{1 - exp(-w0)}, the constant-policy failure-window mass.

    w0 = sqrt(rho^2*b1*b2 + (1+rho*(b1+b2)*P_J)/P_J^2) shrinks to the P1
    window as P_J grows; the same fading stream as p1_bound (same config)
    makes P1 < P2 hold draw by draw at finite P_J.
    """
    if not p_j > 0:
        raise InvalidParameterError(f"p2_bound needs P_J > 0, got {p_j}")
    if math.isinf(p_j):
        return p1_bound(rho, mc)

    def f(uv: np.ndarray) -> np.ndarray:
        u, v = uv[:, 0], uv[:, 1]
        w0 = np.sqrt(rho**2 * u * v + (1.0 + rho * (u + v) * p_j) / p_j**2)
        return -np.expm1(-w0)

    return estimate(f, mc, draws_per_sample=2)


def homogeneous_secrecy(a_tilde: float, b1_tilde: float, b2_tilde: float, rho: float) -> float:
    """Near-field secrecy under fading: log2(a_tilde/(rho*sqrt(b1*b2))).

    Location drops out across the whole near plateau; negative values mean
    the realized secrecy is essentially zero.
    """
    if not rho > 0:
        raise InvalidParameterError(f"rho must be > 0, got {rho}")
    denom = rho * math.sqrt(b1_tilde * b2_tilde)
    if denom == 0.0:
        return math.inf
    if a_tilde == 0.0:
        return -math.inf
    return math.log2(a_tilde / denom)


def homogeneous_tail_bound(s: float, rho: float) -> float:
    """P{near-field secrecy <= s} < 2^s * rho * pi/4 (clipped at 1)."""
    return min(1.0, 2.0**s * rho * math.pi / 4.0)


def secrecy_sample_pair(
    g: LinkGains,
    params: SystemParams,
    c_tilde: float,
    d_tilde: float,
    a_tilde: float = 1.0,
    b1_tilde: float = 1.0,
    b2_tilde: float = 1.0,
) -> float:
    """One fading realization of the pair secrecy, in bits."""
    a, b, rho, p_j, p_t = g.a, g.b, params.rho, params.p_j, params.p_t
    log2e = math.log2(math.e)

    def main_snr(b_self: float) -> float:
        if p_j == 0 or rho * b_self == 0:
            return a_tilde * p_t
        if math.isinf(p_j):
            return 0.0
        return a_tilde * p_t / (1.0 + rho * b_self * p_j)

    def eve_snr(ga: float, gb: float, ce: float, de: float) -> float:
        if ce == 0.0:
            return 0.0
        if math.isinf(ga):
            return math.inf
        if p_j == 0 or de == 0:
            return ce * ga * p_t
        if math.isinf(p_j) or math.isinf(gb):
            return 0.0
        return ce * ga * p_t / (1.0 + de * gb * p_j)

    def one_direction(ga: float, gb: float, ce: float, de: float, b_self: float) -> float:
        diff = math.log1p(main_snr(b_self)) - math.log1p(eve_snr(ga, gb, ce, de))
        return max(0.0, diff * log2e)

    s_ab = one_direction(a, b, c_tilde, d_tilde, b1_tilde)
    s_ba = one_direction(b, a, d_tilde, c_tilde, b2_tilde)
    return 0.5 * (s_ab + s_ba)
