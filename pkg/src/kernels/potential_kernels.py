"""
Potential kernels by subordination,

    K(x, y) = 1/Gamma(sigma) * int_0^inf G_t(x, y) t**(sigma-1) dt,

for the convolution, Hermite-type and Dunkl settings, and the auxiliary
kernel that drives the Dunkl estimates. The integral is taken in s = log t
with tanh-sinh panels broken at t = p(xy), t = 1 and the Gaussian scales.
"""

import math
from enum import Enum
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from src.kernels.heat_kernels import dunkl_heat_t, log_hermite_heat_t, log_laguerre_heat_t
from src.kernels.quadrature import QuadratureConfig, QuadratureResult, composite_log_integral
from src.kernels.signed_log import SignedLogValue
from src.kernels.special_functions import Params, log_gamma, log_sinh, p_of
from src.utils.config import config
from src.utils.errors import DomainError
from src.utils.logger import logger
from src.utils.parallel import parallel_map

S_FLOOR = -690.0
# log-size below the peak at which the t -> 0 tail is dropped
SMALL_T_DROP = 45.0
LARGE_T_DROP = 70.0

LogIntegrand = Callable[[np.ndarray], Tuple[np.ndarray, np.ndarray]]


class KernelKind(Enum):
    CONVOLUTION = "conv"
    HERMITE_TYPE = "hermite"
    DUNKL = "dunkl"
    DUNKL_AUX = "dunkl_aux"

    @classmethod
    def parse(cls, value) -> "KernelKind":
        """Accept a KernelKind or its CLI name"""
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            names = ", ".join(k.value for k in cls)
            raise DomainError(f"unknown kernel kind '{value}', expected one of: {names}") from None

    @property
    def half_line(self) -> bool:
        return self is not KernelKind.DUNKL


# ==================== INTEGRANDS ====================
def _integrand(kind: KernelKind, params: Params, x: float, y: float, diff: float) -> LogIntegrand:
    """log of G_{e^s}(x, y) e^{sigma s}, plus the kind-specific weights"""
    alpha, sigma = params.alpha, params.sigma

    if kind is KernelKind.DUNKL:
        gap = _gaussian_gap(kind, x, y, diff)

        def dunkl(s: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
            sign, log_abs = dunkl_heat_t(alpha, np.exp(s), x, y, gap)
            return sign, log_abs + sigma * s

        return dunkl

    if kind is KernelKind.DUNKL_AUX:
        log_xy = math.log(x * y)

        def aux(s: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
            t = np.exp(s)
            log_sh = log_sinh(2.0 * t)
            weight = np.minimum(log_sh - log_xy, 0.0) - (alpha + 0.5) * np.maximum(log_xy, log_sh)
            return np.ones_like(s), weight + log_hermite_heat_t(t, x, y, diff) + sigma * s

        return aux

    shift = (alpha + 0.5) * math.log(x * y) if kind is KernelKind.HERMITE_TYPE else 0.0

    def laguerre(s: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        return np.ones_like(s), log_laguerre_heat_t(alpha, np.exp(s), x, y, diff) + sigma * s + shift

    return laguerre


def small_time_exponent(kind: KernelKind, params: Params, x: float, y: float) -> float:
    """
    Exponent b of the integrand's e^{b s} behaviour as s -> -inf when the
    Gaussian factor does not decay (coincident arguments)
    """
    sigma = params.sigma
    if kind is KernelKind.DUNKL_AUX:
        return sigma + 0.5
    if kind is KernelKind.DUNKL:
        if x == 0 and y == 0:
            return sigma - params.alpha - 1.0
        if x == -y:
            return sigma + 0.5
    return sigma - 0.5


def _gaussian_gap(kind: KernelKind, x: float, y: float, diff: Optional[float] = None) -> float:
    """|x - y|, or ||x| - |y|| for the Dunkl kernel; `diff` is the exact x - y when known"""
    if diff is None:
        return abs(abs(x) - abs(y)) if kind is KernelKind.DUNKL else abs(x - y)
    if kind is KernelKind.DUNKL and not x * y > 0:
        return abs(abs(x) - abs(y))
    return abs(diff)


def _s_range(kind: KernelKind, params: Params, x: float, y: float, d: float) -> Tuple[float, float]:
    b = small_time_exponent(kind, params, x, y)
    s_min = -math.inf
    if d > 0:
        s_min = math.log(d * d / 400.0)
    if b > 0:
        scale = min(0.0, -math.log(x * x + y * y + 1.0))
        s_min = max(s_min, scale - SMALL_T_DROP / b - 5.0)
    s_min = max(S_FLOOR, s_min)

    rate = 2.0 * params.alpha + 2.0
    t_max = max(2.0, (LARGE_T_DROP + 2.0 * (params.sigma + 1.0) * math.log(2.0 + LARGE_T_DROP / rate)) / rate)
    return s_min, math.log(t_max)


def _breakpoints(kind: KernelKind, params: Params, x: float, y: float, d: float) -> List[float]:
    s_min, s_max = _s_range(kind, params, x, y, d)
    points = [s_min, s_max, 0.0]
    xy = abs(x * y)
    if xy > 0:
        points.append(math.log(p_of(xy)))
    if d > 0:
        points.append(math.log(d * d / 4.0))
    r2 = x * x + y * y
    if r2 > 0:
        points.append(-math.log(r2))
    return sorted(p for p in points if s_min <= p <= s_max)


def _check_point(kind: KernelKind, x: float, y: float) -> None:
    if not (math.isfinite(x) and math.isfinite(y)):
        raise DomainError(f"coordinates must be finite, got ({x}, {y})")
    if kind.half_line and (x <= 0 or y <= 0):
        raise DomainError(f"{kind.value} kernel requires x, y > 0, got ({x}, {y})")


def is_singular(kind, params: Params, x: float, y: float, diff: Optional[float] = None) -> bool:
    """True where the kernel is +inf: coincident arguments with a non-integrable t -> 0 tail"""
    kind = KernelKind.parse(kind)
    return _gaussian_gap(kind, x, y, diff) == 0 and small_time_exponent(kind, params, x, y) <= 0


# ==================== PUBLIC OPERATIONS ====================
def potential_kernel_with_error(
    kind,
    params: Params,
    x: float,
    y: float,
    quad: Optional[QuadratureConfig] = None,
    diff: Optional[float] = None,
) -> QuadratureResult:
    """
    Potential kernel value and the achieved relative tolerance

    Args:
        kind: KernelKind or its name
        params: (alpha, sigma)
        x: First argument (x > 0 except for the Dunkl kernel)
        y: Second argument (y > 0 except for the Dunkl kernel)
        quad: Quadrature settings, defaults from the configuration
        diff: Exact x - y for near-diagonal callers that know it better than x - y rounds

    Returns:
        QuadratureResult: +inf with zero tolerance at singular points
    """
    kind = KernelKind.parse(kind)
    _check_point(kind, x, y)
    quad = quad if quad is not None else config.quadrature_config()

    d = _gaussian_gap(kind, x, y, diff)
    if d == 0 and small_time_exponent(kind, params, x, y) <= 0:
        return QuadratureResult(SignedLogValue.infinity(), 0.0)

    signed_diff = (x - y) if diff is None else diff
    result = composite_log_integral(_integrand(kind, params, x, y, signed_diff), _breakpoints(kind, params, x, y, d), quad)
    if result.achieved_tol > quad.tol:
        logger.debug(f"{kind.value} kernel at ({x}, {y}): achieved tol {result.achieved_tol:.2e} above {quad.tol:.0e}")
    if kind is KernelKind.DUNKL_AUX or result.value.is_zero:
        return result
    scaled = result.value * SignedLogValue.from_log(-log_gamma(params.sigma))
    return QuadratureResult(scaled, result.achieved_tol)


def potential_kernel(kind, params: Params, x: float, y: float, quad: Optional[QuadratureConfig] = None) -> SignedLogValue:
    """K(x, y) of the given kind as a SignedLogValue"""
    return potential_kernel_with_error(kind, params, x, y, quad).value


def potential_kernel_grid(
    kind,
    params: Params,
    points: Sequence[Tuple[float, float]],
    quad: Optional[QuadratureConfig] = None,
    workers: Optional[int] = None,
) -> List[QuadratureResult]:
    """Kernel values at many points, evaluated in parallel and returned in input order"""
    kind = KernelKind.parse(kind)
    quad = quad if quad is not None else config.quadrature_config()
    return parallel_map(lambda p: potential_kernel_with_error(kind, params, p[0], p[1], quad), list(points), workers, f"{kind.value} grid")
