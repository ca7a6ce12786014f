"""
tanh-sinh (double exponential) quadrature in the log domain.

Nodes of a level are the even-indexed nodes of the next level, so one
evaluation at level L+1 yields two estimates whose difference is the
reported achieved tolerance.
"""

import math
from dataclasses import dataclass, replace
from functools import lru_cache
from typing import Callable, Iterable, List, Sequence, Tuple

import numpy as np
from scipy.special import expit

from src.kernels.signed_log import SignedLogValue, signed_logsumexp
from src.utils.errors import QuadratureError

# integrand(nodes) -> (signs, log-magnitudes)
LogIntegrand = Callable[[np.ndarray], Tuple[np.ndarray, np.ndarray]]

TANH_SINH_EXTENT = 3.5


@dataclass(frozen=True)
class QuadratureConfig:
    """Settings shared by all quadratures"""

    level: int = 3
    tol: float = 1e-10
    panel_width: float = 2.0

    def refined(self) -> "QuadratureConfig":
        """One level finer and a hundred times stricter"""
        return replace(self, level=self.level + 1, tol=self.tol / 100.0, panel_width=self.panel_width / 2.0)


@dataclass(frozen=True)
class QuadratureResult:
    value: SignedLogValue
    achieved_tol: float


@lru_cache(maxsize=16)
def tanh_sinh_rule(level: int, extent: float = TANH_SINH_EXTENT) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    """
    tanh-sinh rule on [0, 1] with step 2**-level

    Args:
        level: Refinement level (step h = 2**-level)
        extent: Truncation of the sinh parameter

    Returns:
        tuple: (fractions, complementary fractions, weights); the fractions
        are exact near both endpoints so singular integrands can be fed the
        distance to the endpoint directly
    """
    h = 2.0 ** (-level)
    n = int(math.ceil(extent / h))
    t = np.arange(-n, n + 1) * h
    z = math.pi * np.sinh(t)
    frac = expit(z)
    cofrac = expit(-z)
    weight = h * math.pi * np.cosh(t) * frac * cofrac
    return frac, cofrac, weight


def _panels(breakpoints: Iterable[float], panel_width: float) -> List[Tuple[float, float]]:
    points = sorted(set(float(b) for b in breakpoints))
    panels = []
    for a, b in zip(points[:-1], points[1:]):
        pieces = max(1, int(math.ceil((b - a) / panel_width)))
        edges = np.linspace(a, b, pieces + 1)
        panels.extend(zip(edges[:-1], edges[1:]))
    return panels


def _estimates(signs: np.ndarray, logs: np.ndarray, log_w: np.ndarray, coarse: np.ndarray) -> QuadratureResult:
    if np.isnan(logs).any():
        raise QuadratureError("integrand produced NaN")
    terms = logs + log_w
    fine = signed_logsumexp(terms, signs)
    if fine.is_zero or fine.is_infinite:
        return QuadratureResult(fine, 0.0)
    rough = signed_logsumexp(terms[coarse] + math.log(2.0), signs[coarse])
    diff = fine - rough
    achieved = 0.0 if diff.is_zero else math.exp(min(0.0, diff.log_abs - fine.log_abs))
    return QuadratureResult(fine, achieved)


def composite_log_integral(func: LogIntegrand, breakpoints: Sequence[float], config: QuadratureConfig) -> QuadratureResult:
    """
    Integrate a log-domain integrand over [min(breakpoints), max(breakpoints)]

    Args:
        func: Vectorised integrand returning signs and log-magnitudes
        breakpoints: Panel boundaries; gaps wider than panel_width are subdivided
        config: Quadrature settings

    Returns:
        QuadratureResult: Signed value and achieved relative tolerance
    """
    panels = _panels(breakpoints, config.panel_width)
    if not panels:
        return QuadratureResult(SignedLogValue.zero(), 0.0)
    frac, _, weight = tanh_sinh_rule(config.level + 1)
    n_half = (frac.size - 1) // 2
    even = (np.arange(frac.size) - n_half) % 2 == 0

    starts = np.array([a for a, _ in panels])
    widths = np.array([b - a for a, b in panels])
    nodes = (starts[:, None] + widths[:, None] * frac[None, :]).ravel()
    log_w = (np.log(widths)[:, None] + np.log(weight)[None, :]).ravel()
    coarse = np.tile(even, len(panels))

    signs, logs = func(nodes)
    return _estimates(np.asarray(signs, dtype=float), np.asarray(logs, dtype=float), log_w, coarse)


def endpoint_log_integral(func: LogIntegrand, length: float, config: QuadratureConfig) -> QuadratureResult:
    """
    Integrate g(d) for d in [0, length], feeding g exact small offsets near d = 0

    Args:
        func: Vectorised integrand of the offset d
        length: Upper limit
        config: Quadrature settings (single panel)

    Returns:
        QuadratureResult: Signed value and achieved relative tolerance
    """
    if length <= 0:
        return QuadratureResult(SignedLogValue.zero(), 0.0)
    frac, _, weight = tanh_sinh_rule(config.level + 1)
    n_half = (frac.size - 1) // 2
    even = (np.arange(frac.size) - n_half) % 2 == 0
    signs, logs = func(length * frac)
    return _estimates(np.asarray(signs, dtype=float), np.asarray(logs, dtype=float), math.log(length) + np.log(weight), even)


def real_to_log(values: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    """Split real values into signs and log-magnitudes"""
    values = np.asarray(values, dtype=float)
    with np.errstate(divide="ignore"):
        return np.sign(values), np.log(np.abs(values))


def integrate(func: Callable[[np.ndarray], np.ndarray], a: float, b: float, config: QuadratureConfig) -> QuadratureResult:
    """Integrate an ordinary vectorised real function over a finite [a, b]"""
    if b < a:
        result = integrate(func, b, a, config)
        return QuadratureResult(-result.value, result.achieved_tol)
    return composite_log_integral(lambda s: real_to_log(func(s)), [a, b], config)


def sum_results(results: Sequence[QuadratureResult]) -> QuadratureResult:
    """Add quadrature results, combining tolerances relative to the total"""
    total = signed_logsumexp([r.value.log_abs for r in results], [r.value.sign for r in results])
    if total.is_zero or total.is_infinite:
        return QuadratureResult(total, 0.0)
    error = sum(r.achieved_tol * math.exp(r.value.log_abs - total.log_abs) for r in results if not r.value.is_zero)
    return QuadratureResult(total, error)
