"""
Log-scaled, cancellation-safe special functions.

The modified Bessel function enters every kernel through the reduced form
R_nu(u) = u**(-nu) * exp(-u) * I_nu(u), which is finite and positive on
[0, inf) for nu > -1. Small arguments use the ascending series, larger ones
scipy's exponentially scaled ive. The difference 1 - I_{nu+1}/I_nu, which
cancels catastrophically for large u, has its own asymptotic expansion.
"""

import math
from dataclasses import dataclass
from typing import Tuple, Union

import numpy as np
from numpy.polynomial import polynomial as P
from scipy.special import expit, gammaln, ive, logsumexp

from src.kernels.signed_log import SignedLogValue
from src.utils.errors import DomainError

ArrayLike = Union[float, np.ndarray]

LOG2 = math.log(2.0)
SERIES_LIMIT = 1.0
SERIES_TERMS = 30
ASYMPTOTIC_TERMS = 16
CF_LIMIT = 1.0e4
CF_MAX_ITER = 200_000
_TINY = 1e-300


# ==================== PARAMETERS ====================
@dataclass(frozen=True)
class Params:
    """The pair (alpha, sigma) defining a setting"""

    alpha: float
    sigma: float

    def __post_init__(self):
        if not self.alpha > -1:
            raise DomainError(f"alpha must be > -1, got {self.alpha}")
        if not self.sigma > 0:
            raise DomainError(f"sigma must be > 0, got {self.sigma}")


def _check_order(nu: float) -> None:
    if not nu > -1:
        raise DomainError(f"Bessel order must be > -1, got {nu}")


# ==================== SCALAR HELPERS ====================
def log_gamma(x: float) -> float:
    """
    Natural log of the Gamma function

    Args:
        x: Positive argument

    Returns:
        float: ln Gamma(x)
    """
    if not x > 0:
        raise DomainError(f"log_gamma requires x > 0, got {x}")
    return float(gammaln(x))


def p_of(r: float) -> float:
    """The time p(r) with sinh(2 p(r)) = r"""
    if not r > 0:
        raise DomainError(f"p_of requires r > 0, got {r}")
    return 0.5 * math.asinh(r)


def log_sinh(z: ArrayLike) -> np.ndarray:
    """log(sinh z) for z > 0 without overflow"""
    z = np.asarray(z, dtype=float)
    big = z > 20.0
    safe = np.where(big, 1.0, z)
    return np.where(big, z - LOG2 + np.log1p(-np.exp(-2.0 * np.where(big, z, 20.0))), np.log(np.sinh(safe)))


# ==================== VECTORISED BESSEL CORE ====================
def _log_series(nu: float, u: np.ndarray, terms: int) -> np.ndarray:
    """Ascending series of log R_nu(u), summed in the log domain"""
    m = np.arange(1, terms)
    log_ratios = (2.0 * np.log(u / 2.0))[:, None] - np.log(m * (m + nu))
    log_terms = np.concatenate([np.zeros((u.size, 1)), np.cumsum(log_ratios, axis=1)], axis=1)
    return -u - nu * LOG2 - gammaln(nu + 1.0) + logsumexp(log_terms, axis=1)


def log_reduced_bessel_i(nu: float, u: ArrayLike) -> np.ndarray:
    """
    log of u**(-nu) * exp(-u) * I_nu(u) for u >= 0

    At u = 0 the value is the limit -nu*log 2 - log Gamma(nu+1). Where ive
    underflows (high orders at moderate arguments) the series is summed
    with enough terms to pass its largest one.
    """
    u = np.atleast_1d(np.asarray(u, dtype=float))
    out = np.empty_like(u)
    small = u <= SERIES_LIMIT
    if small.any():
        us = u[small]
        m = np.arange(1, SERIES_TERMS)
        ratios = (us * us / 4.0)[:, None] / (m * (m + nu))
        series = 1.0 + np.cumprod(ratios, axis=1).sum(axis=1)
        out[small] = -us - nu * LOG2 - gammaln(nu + 1.0) + np.log(series)
    if (~small).any():
        ub = u[~small]
        scaled = ive(nu, ub)
        with np.errstate(divide="ignore"):
            logs = np.log(scaled) - nu * np.log(ub)
        lost = ~(scaled > _TINY) | ~np.isfinite(scaled)
        if lost.any():
            terms = SERIES_TERMS + int(math.ceil(ub[lost].max()))
            logs[lost] = _log_series(nu, ub[lost], terms)
        if not np.isfinite(logs).all():
            raise DomainError(f"reduced Bessel value of order {nu} is not representable")
        out[~small] = logs
    return out


def bessel_ratio_array(nu: float, u: ArrayLike) -> np.ndarray:
    """I_{nu+1}(u) / I_nu(u), vectorised, 0 at u = 0"""
    u = np.atleast_1d(np.asarray(u, dtype=float))
    with np.errstate(divide="ignore"):
        log_u = np.log(u)
    return np.exp(log_u + log_reduced_bessel_i(nu + 1.0, u) - log_reduced_bessel_i(nu, u))


def asymptotic_limit(nu: float) -> float:
    """Argument above which 1 - I_{nu+1}/I_nu comes from the asymptotic expansion"""
    return max(40.0, 8.0 * (nu + 1.0) ** 2)


def _hankel_coefficients(nu: float, terms: int = ASYMPTOTIC_TERMS) -> np.ndarray:
    mu = 4.0 * nu * nu
    coeffs = np.empty(terms)
    coeffs[0] = 1.0
    for k in range(1, terms):
        coeffs[k] = -coeffs[k - 1] * (mu - (2 * k - 1) ** 2) / (8.0 * k)
    return coeffs


def one_minus_ratio(nu: float, u: ArrayLike) -> np.ndarray:
    """
    1 - I_{nu+1}(u) / I_nu(u) for u > 0, accurate where the ratio approaches 1

    Negative for nu < -1/2 and large u.
    """
    u = np.atleast_1d(np.asarray(u, dtype=float))
    if nu == -0.5:
        return 2.0 * expit(-2.0 * u)
    out = np.empty_like(u)
    large = u > asymptotic_limit(nu)
    if (~large).any():
        out[~large] = 1.0 - bessel_ratio_array(nu, u[~large])
    if large.any():
        base = _hankel_coefficients(nu)
        diff = base - _hankel_coefficients(nu + 1.0)
        w = 1.0 / u[large]
        out[large] = P.polyval(w, diff) / P.polyval(w, base)
    return out


def log_phi_scaled(alpha: float, u: ArrayLike) -> Tuple[np.ndarray, np.ndarray]:
    """
    Sign and log-magnitude of exp(-|u|) * Phi_alpha(u), vectorised

    Returns:
        tuple: (sign array, log-magnitude array)
    """
    u = np.atleast_1d(np.asarray(u, dtype=float))
    a = np.abs(u)
    log_r = log_reduced_bessel_i(alpha, a)
    sign = np.ones_like(u)
    log_factor = np.zeros_like(u)
    pos = u > 0
    neg = u < 0
    if pos.any():
        log_factor[pos] = np.log1p(bessel_ratio_array(alpha, a[pos]))
    if neg.any():
        q = one_minus_ratio(alpha, a[neg])
        sign[neg] = np.sign(q)
        with np.errstate(divide="ignore"):
            log_factor[neg] = np.log(np.abs(q))
    log_abs = np.where(sign == 0, -np.inf, log_r + log_factor)
    return sign, log_abs


# ==================== PUBLIC BESSEL OPERATIONS ====================
def bessel_i_scaled(nu: float, u: float) -> SignedLogValue:
    """
    exp(-u) * I_nu(u)

    Args:
        nu: Order > -1
        u: Argument >= 0

    Returns:
        SignedLogValue: The scaled Bessel value (zero at u=0 for nu>0, +inf for nu<0)
    """
    _check_order(nu)
    if u < 0:
        raise DomainError(f"bessel_i_scaled requires u >= 0, got {u}")
    if u == 0:
        if nu == 0:
            return SignedLogValue(1, 0.0)
        return SignedLogValue.zero() if nu > 0 else SignedLogValue.infinity()
    return SignedLogValue.from_log(nu * math.log(u) + float(log_reduced_bessel_i(nu, u)[0]))


def bessel_ratio(nu: float, u: float) -> float:
    """
    I_{nu+1}(u) / I_nu(u) by Gauss's continued fraction

    Args:
        nu: Order > -1
        u: Argument > 0

    Returns:
        float: The ratio (in (0, 1) for nu >= -1/2)
    """
    _check_order(nu)
    if not u > 0:
        raise DomainError(f"bessel_ratio requires u > 0, got {u}")
    if u > CF_LIMIT:
        return float(1.0 - one_minus_ratio(nu, u)[0])

    # modified Lentz on 1 / (b_1 + 1 / (b_2 + ...)), b_k = 2 (nu + k) / u
    f = 2.0 * (nu + 1.0) / u
    c, d = f, 0.0
    for k in range(2, CF_MAX_ITER):
        b = 2.0 * (nu + k) / u
        d = b + d
        d = 1.0 / (d if d != 0.0 else _TINY)
        c = b + 1.0 / c
        if c == 0.0:
            c = _TINY
        delta = c * d
        f *= delta
        if abs(delta - 1.0) < 1e-15:
            break
    return 1.0 / f


def psi_alpha(alpha: float, u: float) -> SignedLogValue:
    """
    I_alpha(u) - I_{alpha+1}(u), evaluated as I_alpha(u) * (1 - ratio)

    Args:
        alpha: Order > -1
        u: Argument > 0

    Returns:
        SignedLogValue: Negative for alpha < -1/2 and u past the sign change
    """
    _check_order(alpha)
    if not u > 0:
        raise DomainError(f"psi_alpha requires u > 0, got {u}")
    q = float(one_minus_ratio(alpha, u)[0])
    if q == 0.0:
        return SignedLogValue.zero()
    log_i = alpha * math.log(u) + u + float(log_reduced_bessel_i(alpha, u)[0])
    return SignedLogValue(1 if q > 0 else -1, log_i + math.log(abs(q)))


def phi_alpha(alpha: float, u: float) -> SignedLogValue:
    """
    Phi_alpha(u) = |u|**(-alpha) (I_alpha(|u|) + sgn(u) I_{alpha+1}(|u|))

    The value at 0 is the limit 2**(-alpha) / Gamma(alpha+1).
    """
    _check_order(alpha)
    sign, log_abs = log_phi_scaled(alpha, u)
    if sign[0] == 0:
        return SignedLogValue.zero()
    return SignedLogValue(int(sign[0]), float(log_abs[0]) + abs(u))


# ==================== LAGUERRE FAMILY ====================
def laguerre_polynomial(n: int, alpha: float, u: ArrayLike) -> np.ndarray:
    """
    Generalised Laguerre polynomial L_n^alpha(u) by the three-term recurrence

    Args:
        n: Degree >= 0
        alpha: Parameter > -1
        u: Evaluation points

    Returns:
        np.ndarray: Polynomial values
    """
    if n < 0:
        raise DomainError(f"degree must be >= 0, got {n}")
    u = np.asarray(u, dtype=float)
    prev = np.ones_like(u)
    if n == 0:
        return prev
    cur = 1.0 + alpha - u
    for k in range(1, n):
        prev, cur = cur, ((2 * k + 1 + alpha - u) * cur - (k + alpha) * prev) / (k + 1)
    return cur


def laguerre_eigenvalue(n: int, alpha: float) -> float:
    return 4.0 * n + 2.0 * alpha + 2.0


def dunkl_eigenvalue(n: int, alpha: float) -> float:
    return 2.0 * n + 2.0 * alpha + 2.0


def laguerre_fn(n: int, alpha: float, x: ArrayLike) -> ArrayLike:
    """
    Laguerre function of convolution type, orthonormal in L^2(x^(2 alpha+1) dx)

    Args:
        n: Degree >= 0
        alpha: Parameter > -1
        x: Points x >= 0

    Returns:
        float or np.ndarray: c_n L_n^alpha(x^2) exp(-x^2/2), c_n = sqrt(2 n! / Gamma(n+alpha+1))
    """
    _check_order(alpha)
    xs = np.asarray(x, dtype=float)
    if np.any(xs < 0):
        raise DomainError("laguerre_fn is defined for x >= 0")
    log_c = 0.5 * (LOG2 + gammaln(n + 1.0) - gammaln(n + alpha + 1.0))
    values = math.exp(log_c) * laguerre_polynomial(n, alpha, xs * xs) * np.exp(-xs * xs / 2.0)
    return float(values) if values.ndim == 0 else values


def generalized_hermite_fn(n: int, alpha: float, x: ArrayLike) -> ArrayLike:
    """Generalised Hermite function h_n^alpha, orthonormal in L^2(|x|^(2 alpha+1) dx)"""
    if n < 0:
        raise DomainError(f"degree must be >= 0, got {n}")
    xs = np.asarray(x, dtype=float)
    ax = np.abs(xs)
    if n % 2 == 0:
        k = n // 2
        values = (-1) ** k * np.asarray(laguerre_fn(k, alpha, ax)) / math.sqrt(2.0)
    else:
        k = (n - 1) // 2
        values = (-1) ** k * xs * np.asarray(laguerre_fn(k, alpha + 1.0, ax)) / math.sqrt(2.0)
    return float(values) if values.ndim == 0 else values
