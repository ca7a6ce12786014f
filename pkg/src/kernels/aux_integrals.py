"""
The auxiliary integrals

    J_A(T, S) = int_T^S t^A exp(-t) dt,
    E_A(T, S) = int_0^1 t^A exp(-T/t - S t) dt,

by direct quadrature, and their sharp two-sided envelopes.
"""

import math
from typing import Callable, List, Tuple

import numpy as np

from src.kernels.certificates import EnvelopeConstants, EnvelopeShape
from src.kernels.quadrature import QuadratureConfig, QuadratureResult, composite_log_integral, sum_results
from src.kernels.signed_log import SignedLogValue, log_diff_exp, signed_logsumexp
from src.utils.config import config
from src.utils.errors import DomainError

# below exp(-40) the factor exp(-t) is replaced by its Taylor polynomial
LOG_CUT = -40.0
TAYLOR_TERMS = 4
DECAY_DROP = 60.0
DEFAULT_BETA = 2.0
DEFAULT_GAMMA = 1.0


def _quad(quad: QuadratureConfig = None) -> QuadratureConfig:
    return quad if quad is not None else config.quadrature_config()


def _log_power_integral(c: float, s_lo: float, s_hi: float) -> float:
    """log of int_{s_lo}^{s_hi} exp(c s) ds for s_lo < s_hi, s_lo may be -inf when c > 0"""
    if c == 0:
        return math.log(s_hi - s_lo)
    if c > 0:
        return log_diff_exp(c * s_hi, c * s_lo) - math.log(c)
    return log_diff_exp(c * s_lo, c * s_hi) - math.log(-c)


def _taylor_piece(A: float, s_lo: float, s_hi: float) -> QuadratureResult:
    """int e^{(A+1)s} exp(-e^s) ds over [s_lo, s_hi] with e^{s_hi} tiny"""
    logs, signs = [], []
    for k in range(TAYLOR_TERMS):
        logs.append(_log_power_integral(A + 1.0 + k, s_lo, s_hi) - math.lgamma(k + 1.0))
        signs.append(1 if k % 2 == 0 else -1)
    return QuadratureResult(signed_logsumexp(logs, signs), 0.0)


def _decay_cutoff(log_f: Callable[[np.ndarray], np.ndarray], start: float, step: float = 0.5, limit: float = 800.0) -> float:
    """First point after `start` where log_f has fallen DECAY_DROP below its running maximum"""
    s = start
    peak = float(log_f(np.array([s]))[0])
    while s < limit:
        s += step
        value = float(log_f(np.array([s]))[0])
        peak = max(peak, value)
        if value < peak - DECAY_DROP:
            break
    return s


# ==================== J ====================
def j_integral_with_error(A: float, T: float, S: float, quad: QuadratureConfig = None) -> QuadratureResult:
    """
    J_A(T, S) with its achieved tolerance

    Args:
        A: Exponent
        T: Lower limit, 0 <= T < inf
        S: Upper limit, T <= S <= inf
        quad: Quadrature settings

    Returns:
        QuadratureResult: Nonnegative value, +inf when A <= -1 and T = 0
    """
    if not (0 <= T < math.inf) or not S >= T:
        raise DomainError(f"J requires 0 <= T <= S <= inf with T finite, got T={T}, S={S}")
    if S == T:
        return QuadratureResult(SignedLogValue.zero(), 0.0)
    if T == 0 and A <= -1:
        return QuadratureResult(SignedLogValue.infinity(), 0.0)
    quad = _quad(quad)
    pieces: List[QuadratureResult] = []

    if T < 1:
        s_lo = math.log(T) if T > 0 else -math.inf
        s_hi = math.log(min(S, 1.0))
        s_cut = min(s_hi, LOG_CUT)
        if s_lo < s_cut:
            pieces.append(_taylor_piece(A, s_lo, s_cut))

        def lower_integrand(s: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
            return np.ones_like(s), (A + 1.0) * s - np.exp(s)

        start = max(s_lo, s_cut)
        if start < s_hi:
            pieces.append(composite_log_integral(lower_integrand, [start, s_hi], quad))

    if S > 1:
        a = max(T, 1.0)
        v_max = min(S - a, 80.0 + 10.0 * max(A, 0.0))

        def upper_integrand(v: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
            t = a + v
            return np.ones_like(v), A * np.log(t) - t

        pieces.append(composite_log_integral(upper_integrand, [0.0, v_max], quad))

    return sum_results(pieces)


def j_integral(A: float, T: float, S: float, quad: QuadratureConfig = None) -> SignedLogValue:
    """J_A(T, S) = int_T^S t^A exp(-t) dt"""
    return j_integral_with_error(A, T, S, quad).value


# ==================== E ====================
def e_integral_with_error(A: float, T: float, S: float, quad: QuadratureConfig = None) -> QuadratureResult:
    """
    E_A(T, S) with its achieved tolerance

    The substitution t = exp(-s) maps (0, 1] to [0, inf) and turns the
    essential singularity exp(-T/t) into a doubly exponential decay.
    """
    if T < 0 or S < 0 or math.isinf(T) or math.isinf(S):
        raise DomainError(f"E requires finite T, S >= 0, got T={T}, S={S}")
    if T == 0 and A <= -1:
        return QuadratureResult(SignedLogValue.infinity(), 0.0)
    quad = _quad(quad)

    def integrand_log(s: np.ndarray) -> np.ndarray:
        return -(A + 1.0) * s - T * np.exp(s) - S * np.exp(-s)

    def integrand(s: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        return np.ones_like(s), integrand_log(s)

    if T > 0:
        s_max = _decay_cutoff(integrand_log, 0.0)
        return composite_log_integral(integrand, [0.0, s_max], quad)

    # T = 0, A > -1: quadrature up to s1, then the tail with exp(-S e^{-s}) expanded
    s1 = max(0.0, math.log(S) - LOG_CUT) if S > 0 else 0.0
    pieces = []
    if s1 > 0:
        pieces.append(composite_log_integral(integrand, [0.0, s1], quad))
    logs, signs = [], []
    for k in range(TAYLOR_TERMS if S > 0 else 1):
        rate = A + 1.0 + k
        log_s_power = k * math.log(S) if k > 0 else 0.0
        logs.append(log_s_power - math.lgamma(k + 1.0) - rate * s1 - math.log(rate))
        signs.append(1 if k % 2 == 0 else -1)
    pieces.append(QuadratureResult(signed_logsumexp(logs, signs), 0.0))
    return sum_results(pieces)


def e_integral(A: float, T: float, S: float, quad: QuadratureConfig = None) -> SignedLogValue:
    """E_A(T, S) = int_0^1 t^A exp(-T/t - S t) dt"""
    return e_integral_with_error(A, T, S, quad).value


# ==================== ENVELOPES ====================
def _log_or_inf(x: float) -> float:
    return math.log(x) if x > 0 else -math.inf


def log1p_logplus(x: float) -> float:
    """log(1 + log+(x))"""
    if x == math.inf:
        return math.inf
    return math.log1p(max(0.0, math.log(x))) if x > 0 else 0.0


def j_envelope_shape(A: float, T: float, S: float, beta: float = DEFAULT_BETA, gamma: float = DEFAULT_GAMMA) -> EnvelopeShape:
    """
    Case-wise shape of J_A(T, S)

    Args:
        A: Exponent
        T: Lower limit
        S: Upper limit
        beta: Case split constant > 1
        gamma: Case split constant > 0

    Returns:
        EnvelopeShape: Shape with case label "a", "b", "c" or "d"
    """
    if not beta > 1 or not gamma > 0:
        raise DomainError(f"J envelope requires beta > 1 and gamma > 0, got beta={beta}, gamma={gamma}")
    if not (0 <= T < math.inf) or not S >= T:
        raise DomainError(f"J requires 0 <= T <= S <= inf with T finite, got T={T}, S={S}")
    if S <= beta * T:
        if S == T:
            return EnvelopeShape(-math.inf, T, "a")
        return EnvelopeShape(A * math.log(T) + math.log(S - T), T, "a")
    if T >= gamma:
        return EnvelopeShape(A * math.log(T) - T, 0.0, "b")
    if S >= beta * gamma:
        if A < -1:
            return EnvelopeShape((A + 1.0) * _log_or_inf(T) if T > 0 else math.inf, 0.0, "c")
        if A == -1:
            return EnvelopeShape(log1p_logplus(1.0 / T) if T > 0 else math.inf, 0.0, "c")
        return EnvelopeShape(0.0, 0.0, "c")
    if A < -1:
        return EnvelopeShape((A + 1.0) * math.log(T) if T > 0 else math.inf, 0.0, "d")
    if A == -1:
        return EnvelopeShape(math.log(math.log(S / T)) if T > 0 else math.inf, 0.0, "d")
    return EnvelopeShape((A + 1.0) * math.log(S), 0.0, "d")


def j_envelope(
    A: float,
    T: float,
    S: float,
    beta: float = DEFAULT_BETA,
    gamma: float = DEFAULT_GAMMA,
    consts: EnvelopeConstants = EnvelopeConstants(),
) -> Tuple[SignedLogValue, SignedLogValue]:
    """Lower and upper envelope of J_A(T, S)"""
    return j_envelope_shape(A, T, S, beta, gamma).bounds(consts)


def e_envelope_shape(A: float, T: float, S: float, gamma: float = DEFAULT_GAMMA) -> EnvelopeShape:
    """exp(-c sqrt(T (T v S))) times the polynomial or logarithmic factor of E_A"""
    if T < 0 or S < 0:
        raise DomainError(f"E requires T, S >= 0, got T={T}, S={S}")
    prod = T * max(T, S)
    z = math.sqrt(prod)
    if A < -1:
        log_y = (A + 1.0) * math.log(T) if T > 0 else math.inf
        return EnvelopeShape(log_y, z, "A<-1")
    if A == -1:
        log_y = log1p_logplus(1.0 / prod) if prod > 0 else math.inf
        return EnvelopeShape(log_y, z, "A=-1")
    return EnvelopeShape(-(A + 1.0) * math.log(max(S, gamma)), z, "A>-1")


def e_envelope(
    A: float,
    T: float,
    S: float,
    gamma: float = DEFAULT_GAMMA,
    consts: EnvelopeConstants = EnvelopeConstants(),
) -> Tuple[SignedLogValue, SignedLogValue]:
    """Lower and upper envelope of E_A(T, S)"""
    return e_envelope_shape(A, T, S, gamma).bounds(consts)
