"""Link geometry, normalization, and eavesdropper region classification.

The two legitimate endpoints sit at (-0.5, 0) and (0.5, 0) so that their
separation is the unit of distance.  All powers and gains are normalized:
the direct link has unit gain and unit receiver noise, an eavesdropper at
(x, y) sees the endpoints through large-scale gains a = d_A^-alpha and
b = d_B^-alpha, and rho is the residual self-interference gain of the
full-duplex receiver after cancellation.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidParameterError

__all__ = [
    "RawLinkParams",
    "SystemParams",
    "EveLocation",
    "LinkGains",
    "Region",
    "DiskBoundary",
    "NormalizedLink",
    "normalize",
    "denormalize",
    "gains",
    "gain_fields",
    "region_classify",
    "rho_disk",
    "region4_containment_threshold",
    "sign_b_minus_rho_a",
]


@dataclass(frozen=True)
class RawLinkParams:
    """Physical (un-normalized) link parameters, all in linear units.

    Attributes:
        g_prime: direct-link gain between the endpoints (> 0).
        pt_prime: transmit power (> 0).
        pj_prime: jamming power (>= 0).
        rho_prime: residual self-interference gain after cancellation (>= 0).
        noise_b: receiver noise variance at the legitimate receiver (> 0).
        noise_e: receiver noise variance at the eavesdropper (> 0).
    """

    g_prime: float
    pt_prime: float
    pj_prime: float
    rho_prime: float
    noise_b: float
    noise_e: float

    def __post_init__(self) -> None:
        for name in ("g_prime", "pt_prime", "noise_b", "noise_e"):
            if not getattr(self, name) > 0:
                raise InvalidParameterError(f"{name} must be > 0, got {getattr(self, name)}")
        for name in ("pj_prime", "rho_prime"):
            if not getattr(self, name) >= 0:
                raise InvalidParameterError(f"{name} must be >= 0, got {getattr(self, name)}")


@dataclass(frozen=True)
class SystemParams:
    """Normalized system parameters.

    p_j may be math.inf, the designated infinite jamming power; closed forms
    then evaluate their analytic limits instead of overflowing.
    """

    p_t: float
    p_j: float
    rho: float
    alpha: float = 2.0
    delta: float = 0.1

    def __post_init__(self) -> None:
        if not self.p_t > 0 or math.isinf(self.p_t):
            raise InvalidParameterError(f"p_t must be finite and > 0, got {self.p_t}")
        if not self.p_j >= 0:
            raise InvalidParameterError(f"p_j must be >= 0, got {self.p_j}")
        if not self.rho >= 0 or math.isinf(self.rho):
            raise InvalidParameterError(f"rho must be finite and >= 0, got {self.rho}")
        if not self.alpha >= 2:
            raise InvalidParameterError(f"alpha must be >= 2, got {self.alpha}")
        if not self.delta > 0:
            raise InvalidParameterError(f"delta must be > 0, got {self.delta}")


@dataclass(frozen=True)
class EveLocation:
    x: float
    y: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise InvalidParameterError(f"location must be finite, got ({self.x}, {self.y})")


ALICE = EveLocation(-0.5, 0.0)
BOB = EveLocation(0.5, 0.0)


@dataclass(frozen=True)
class LinkGains:
    """Large-scale gains from the two endpoints to one eavesdropper point.

    a is the gain from the transmitter at (-0.5, 0), b from (0.5, 0).
    Either may be math.inf when the point coincides with an endpoint.
    Distances are carried along when the gains came from a location and are
    NaN when the pair (a, b) was constructed directly.
    """

    a: float
    b: float
    d_a: float = math.nan
    d_b: float = math.nan

    def __post_init__(self) -> None:
        if not self.a > 0 or not self.b > 0:
            raise InvalidParameterError(f"gains must be > 0, got a={self.a}, b={self.b}")
        if math.isinf(self.a) and math.isinf(self.b):
            raise InvalidParameterError("a and b cannot both be infinite")

    def swapped(self) -> "LinkGains":
        """Gains seen when the two endpoint roles are exchanged."""
        return LinkGains(self.b, self.a, self.d_b, self.d_a)


class Region(enum.Enum):
    """Partition of eavesdropper locations by (sign(b - rho*a), a vs 1)."""

    R1 = "R1"  # b - rho*a > 0 and a < 1
    R2 = "R2"  # b - rho*a > 0 and a >= 1
    R3 = "R3"  # b - rho*a <= 0 and a < 1
    R4 = "R4"  # b - rho*a <= 0 and a >= 1


class DiskSide(enum.Enum):
    LEFT_EXCLUSION = "left-exclusion"    # rho < 1: secrecy possible outside the disk
    RIGHT_INCLUSION = "right-inclusion"  # rho > 1: secrecy possible only inside the disk
    HALF_PLANE = "half-plane"            # rho = 1: secrecy possible for x > 0


@dataclass(frozen=True)
class DiskBoundary:
    """Boundary of the set where b - rho*a > 0.

    For rho != 1 the boundary is the circle (x + x0)^2 + y^2 = r^2 with
    r = sqrt(x0^2 - 1/4); x0 > 1/2 when rho < 1 (disk on the left, around
    (-0.5, 0)) and x0 < 0 when rho > 1 (disk on the right).  rho = 1
    degenerates to the half-plane x > 0.
    """

    x0: float
    r: float
    side: DiskSide

    def secrecy_side(self, x, y):
        """True where b - rho*a > 0 (scalar or ndarray input)."""
        if self.side is DiskSide.HALF_PLANE:
            return np.asarray(x) > 0 if isinstance(x, np.ndarray) else x > 0
        q = (np.asarray(x, dtype=float) + self.x0) ** 2 + np.asarray(y, dtype=float) ** 2
        out = q > self.r**2 if self.side is DiskSide.LEFT_EXCLUSION else q < self.r**2
        return out if isinstance(x, np.ndarray) else bool(out)


@dataclass(frozen=True)
class NormalizedLink:
    """Output of normalize(): the dimensionless quantities the model uses."""

    p_t: float
    p_j: float
    rho: float
    a: float
    b: float


def normalize(raw: RawLinkParams, a_prime: float, b_prime: float) -> NormalizedLink:
    """Reduce physical powers, gains and noise levels to normalized form.

    The direct link gain and the legitimate receiver noise are absorbed into
    the powers; the eavesdropper noise is absorbed into its gains.

    Args:
        raw: physical parameters.
        a_prime: physical gain from the transmitter at (-0.5, 0) to Eve (> 0).
        b_prime: physical gain from the other endpoint to Eve (> 0).
    """
    if not a_prime > 0 or not b_prime > 0:
        raise InvalidParameterError("a_prime and b_prime must be > 0")
    return NormalizedLink(
        p_t=raw.g_prime * raw.pt_prime / raw.noise_b,
        p_j=raw.g_prime * raw.pj_prime / raw.noise_b,
        rho=raw.rho_prime / raw.g_prime,
        a=a_prime * raw.noise_b / (raw.g_prime * raw.noise_e),
        b=b_prime * raw.noise_b / (raw.g_prime * raw.noise_e),
    )


def denormalize(
    link: NormalizedLink, g_prime: float, noise_b: float, noise_e: float
) -> tuple[RawLinkParams, float, float]:
    """Invert normalize() given the absorbed scale factors.

    Returns the physical parameters and the pair (a_prime, b_prime).
    """
    if not g_prime > 0 or not noise_b > 0 or not noise_e > 0:
        raise InvalidParameterError("g_prime and noise variances must be > 0")
    raw = RawLinkParams(
        g_prime=g_prime,
        pt_prime=link.p_t * noise_b / g_prime,
        pj_prime=link.p_j * noise_b / g_prime,
        rho_prime=link.rho * g_prime,
        noise_b=noise_b,
        noise_e=noise_e,
    )
    scale = g_prime * noise_e / noise_b
    return raw, link.a * scale, link.b * scale


def gains(x: float, y: float, alpha: float) -> LinkGains:
    """Large-scale gains at location (x, y) for path-loss exponent alpha.

    A point exactly on an endpoint gets an infinite gain marker.
    """
    if alpha < 2:
        raise InvalidParameterError(f"alpha must be >= 2, got {alpha}")
    d_a = math.hypot(x + 0.5, y)
    d_b = math.hypot(x - 0.5, y)
    a = math.inf if d_a == 0 else d_a**-alpha
    b = math.inf if d_b == 0 else d_b**-alpha
    return LinkGains(a=a, b=b, d_a=d_a, d_b=d_b)


def gain_fields(x: np.ndarray, y: np.ndarray, alpha: float) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized gains over coordinate arrays; endpoints map to inf."""
    d_a = np.hypot(np.asarray(x, dtype=float) + 0.5, y)
    d_b = np.hypot(np.asarray(x, dtype=float) - 0.5, y)
    with np.errstate(divide="ignore"):
        a = d_a**-float(alpha)
        b = d_b**-float(alpha)
    return a, b


def sign_b_minus_rho_a(a: float, b: float, rho: float) -> int:
    """Sign of b - rho*a with infinite gains handled as limits.

    rho == 0 makes the sign +1 regardless of a (even a = inf), because the
    product rho*a is identically zero along the limit path.
    """
    if rho == 0:
        return 1
    if math.isinf(b):
        return 1
    if math.isinf(a):
        return -1
    diff = b - rho * a
    return 0 if diff == 0 else (1 if diff > 0 else -1)


def region_classify(g: LinkGains, rho: float) -> Region:
    """Assign the eavesdropper point to one of the four canonical regions.

    The boundary b = rho*a is folded into the b - rho*a <= 0 side.
    """
    if not rho >= 0:
        raise InvalidParameterError(f"rho must be >= 0, got {rho}")
    positive_side = sign_b_minus_rho_a(g.a, g.b, rho) > 0
    strong = g.a >= 1
    if positive_side:
        return Region.R2 if strong else Region.R1
    return Region.R4 if strong else Region.R3


def rho_disk(rho: float, alpha: float) -> DiskBoundary:
    """Boundary of {b - rho*a > 0} for rho >= 0.

    The locus b = rho*a is the set of points whose distance ratio
    d_A/d_B equals rho^(1/alpha), a circle; rho -> 0 collapses it onto the
    transmitter point and rho = 1 flattens it into the axis x = 0.
    """
    if not rho >= 0:
        raise InvalidParameterError(f"rho must be >= 0, got {rho}")
    if alpha < 2:
        raise InvalidParameterError(f"alpha must be >= 2, got {alpha}")
    if rho == 1:
        return DiskBoundary(x0=math.inf, r=math.inf, side=DiskSide.HALF_PLANE)
    k2 = rho ** (2.0 / alpha)
    x0 = (1 + k2) / (2 * (1 - k2))
    r = math.sqrt(max(0.0, x0 * x0 - 0.25))
    side = DiskSide.LEFT_EXCLUSION if rho < 1 else DiskSide.RIGHT_INCLUSION
    return DiskBoundary(x0=x0, r=r, side=side)


def region4_containment_threshold(delta: float, alpha: float) -> float:
    """Largest rho keeping the whole zero-secrecy disk within delta of the transmitter.

    For an exclusion radius delta <= 1 the condition is
    rho < delta^alpha / (1 + delta)^alpha; any rho works for delta > 1
    (then the threshold saturates at 1).
    """
    if not delta > 0:
        raise InvalidParameterError(f"delta must be > 0, got {delta}")
    if alpha < 2:
        raise InvalidParameterError(f"alpha must be >= 2, got {alpha}")
    if delta > 1:
        return 1.0
    return (delta / (1.0 + delta)) ** alpha
