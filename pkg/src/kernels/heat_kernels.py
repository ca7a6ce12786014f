"""
Heat kernels of the Hermite, Laguerre (convolution type) and Dunkl settings.

Every kernel is evaluated in the log domain. The Gaussian part is written as

    -(x - y)**2 / (2 sinh 2t) - tanh(t) (x**2 + y**2) / 2,

which equals -coth(2t)(x**2+y**2)/2 + xy/sinh 2t without the cancellation
between the two large terms. Vectorised `*_t` variants take arrays of times
and an optional exact difference x - y for near-diagonal callers.
"""

import math
from typing import Optional, Tuple

import numpy as np

from src.kernels.signed_log import SignedLogValue
from src.kernels.special_functions import LOG2, log_phi_scaled, log_reduced_bessel_i, log_sinh
from src.utils.errors import DomainError

LOG_2PI = math.log(2.0 * math.pi)


def _check_time(t: float) -> None:
    if not t > 0:
        raise DomainError(f"time must be > 0, got {t}")


def _check_alpha(alpha: float) -> None:
    if not alpha > -1:
        raise DomainError(f"alpha must be > -1, got {alpha}")


def _gauss_exponent(t: np.ndarray, log_sh: np.ndarray, diff: float, x: float, y: float) -> np.ndarray:
    return -0.5 * diff * diff * np.exp(-log_sh) - 0.5 * np.tanh(t) * (x * x + y * y)


# ==================== VECTORISED CORES ====================
def log_hermite_heat_t(t: np.ndarray, x: float, y: float, diff: Optional[float] = None) -> np.ndarray:
    """log G_t(x, y) for an array of times"""
    t = np.asarray(t, dtype=float)
    log_sh = log_sinh(2.0 * t)
    d = (x - y) if diff is None else diff
    return -0.5 * (LOG_2PI + log_sh) + _gauss_exponent(t, log_sh, d, x, y)


def log_laguerre_heat_t(alpha: float, t: np.ndarray, x: float, y: float, diff: Optional[float] = None) -> np.ndarray:
    """log G_t^alpha(x, y) for an array of times; x or y may be 0"""
    t = np.asarray(t, dtype=float)
    log_sh = log_sinh(2.0 * t)
    d = (x - y) if diff is None else diff
    u = x * y * np.exp(-log_sh)
    return -(alpha + 1.0) * log_sh + _gauss_exponent(t, log_sh, d, x, y) + log_reduced_bessel_i(alpha, u)


def dunkl_heat_t(alpha: float, t: np.ndarray, x: float, y: float, diff: Optional[float] = None) -> Tuple[np.ndarray, np.ndarray]:
    """Sign and log |G_t^{alpha,D}(x, y)| for an array of times; diff is |x| - |y|"""
    t = np.asarray(t, dtype=float)
    log_sh = log_sinh(2.0 * t)
    d = (abs(x) - abs(y)) if diff is None else diff
    u = x * y * np.exp(-log_sh)
    sign, log_phi = log_phi_scaled(alpha, u)
    log_abs = -LOG2 - (alpha + 1.0) * log_sh + _gauss_exponent(t, log_sh, d, x, y) + log_phi
    return sign, np.where(sign == 0, -np.inf, log_abs)


# ==================== PUBLIC OPERATIONS ====================
def hermite_heat(t: float, x: float, y: float, form: str = "tanh") -> SignedLogValue:
    """
    Hermite heat kernel G_t(x, y)

    Args:
        t: Time > 0
        x: Space point
        y: Space point
        form: "tanh" for the tanh/coth form, "coth" for the coth/sinh form

    Returns:
        SignedLogValue: Positive kernel value
    """
    _check_time(t)
    if form == "tanh":
        exponent = -0.25 * (math.tanh(t) * (x + y) ** 2 + (x - y) ** 2 / math.tanh(t))
    elif form == "coth":
        exponent = -0.5 * (x * x + y * y) / math.tanh(2.0 * t) + x * y / math.sinh(2.0 * t)
    else:
        raise DomainError(f"unknown form '{form}', expected 'tanh' or 'coth'")
    return SignedLogValue.from_log(-0.5 * (LOG_2PI + float(log_sinh(2.0 * t))) + exponent)


def laguerre_heat(alpha: float, t: float, x: float, y: float) -> SignedLogValue:
    """Laguerre heat kernel of convolution type G_t^alpha(x, y), x, y > 0"""
    _check_alpha(alpha)
    _check_time(t)
    if x <= 0 or y <= 0:
        raise DomainError(f"laguerre_heat requires x, y > 0, got ({x}, {y})")
    return SignedLogValue.from_log(float(log_laguerre_heat_t(alpha, np.array([t]), x, y)[0]))


def dunkl_heat(alpha: float, t: float, x: float, y: float) -> SignedLogValue:
    """Dunkl heat kernel G_t^{alpha,D}(x, y) on the real line"""
    _check_alpha(alpha)
    _check_time(t)
    sign, log_abs = dunkl_heat_t(alpha, np.array([t]), x, y)
    return SignedLogValue.from_log(float(log_abs[0]), int(sign[0]))


def her_lag_envelope(alpha: float, t: float, x: float, y: float) -> SignedLogValue:
    """(xy v sinh 2t)**(-alpha-1/2) G_t(x, y), comparable with G_t^alpha(x, y)"""
    _check_alpha(alpha)
    _check_time(t)
    log_scale = max(math.log(x * y), float(log_sinh(2.0 * t)))
    return SignedLogValue.from_log(-(alpha + 0.5) * log_scale) * hermite_heat(t, x, y)


def her_dun_envelope(alpha: float, t: float, x: float, y: float) -> SignedLogValue:
    """
    Two-regime shape comparable with G_t^{alpha,D}(x, y) for alpha > -1/2

    Args:
        alpha: Parameter > -1/2
        t: Time > 0
        x: Space point
        y: Space point

    Returns:
        SignedLogValue: G_t(|x|, |y|) times the power factor of the regime
    """
    if not alpha > -0.5:
        raise DomainError(f"her_dun_envelope requires alpha > -1/2, got {alpha}")
    _check_time(t)
    log_sh = float(log_sinh(2.0 * t))
    xy = x * y
    if xy == 0 or math.log(abs(xy)) <= log_sh:
        log_factor = -(alpha + 0.5) * log_sh
    elif xy > 0:
        log_factor = -(alpha + 0.5) * math.log(xy)
    else:
        log_factor = log_sh - (alpha + 1.5) * math.log(-xy)
    return SignedLogValue.from_log(log_factor) * hermite_heat(t, abs(x), abs(y))
