"""
Norm experiments for the potential operators.

Local/global kernel split, row norms by dyadic shells, operator application
by quadrature, the counterexample families and their growth rates, the
Hardy-type comparison operator and the negativity scan of the Dunkl kernel.
"""

import math
from dataclasses import asdict, dataclass, field, replace
from enum import Enum
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from src.kernels.potential_kernels import (
    KernelKind,
    is_singular,
    potential_kernel,
    potential_kernel_grid,
    potential_kernel_with_error,
)
from src.kernels.quadrature import (
    QuadratureConfig,
    QuadratureResult,
    composite_log_integral,
    endpoint_log_integral,
    real_to_log,
    sum_results,
)
from src.kernels.signed_log import SignedLogValue, log_diff_exp, signed_logsumexp
from src.kernels.special_functions import (
    Params,
    dunkl_eigenvalue,
    generalized_hermite_fn,
    laguerre_eigenvalue,
    laguerre_fn,
)
from src.utils.config import config
from src.utils.errors import DomainError
from src.utils.logger import logger
from src.utils.parallel import parallel_map

SPLIT_POINT = 2.0
MAX_DIAGONAL_SHELLS = 48
MAX_RADIAL_SHELLS = 60
SHELL_LEVEL = 2
# log-size below the running total at which a shell is dropped
NEGLIGIBLE = 35.0
RATIO_STABILITY = 0.02
SUP_GROWTH = 1.02
SUP_REFINEMENT_CHANGE = 0.01
ZERO_SCAN_START = 20
TRUNCATION = 12.0
TAIL_TOL = 1e-4
DIVERGENT_TOL = 0.5
MAX_CUTS_PER_SCALE = 40

Interval = Tuple[float, float]
LogKernel = Callable[[np.ndarray, np.ndarray], Tuple[np.ndarray, np.ndarray]]


def _quad(quad: Optional[QuadratureConfig]) -> QuadratureConfig:
    return quad if quad is not None else config.quadrature_config()


def _inv(p: float) -> float:
    return 0.0 if p == math.inf else 1.0 / p


def _check_exponent(p: float, name: str = "p") -> None:
    if not 1.0 <= p <= math.inf:
        raise DomainError(f"{name} must lie in [1, inf], got {p}")


def _log_sum(logs: Sequence[float]) -> float:
    return signed_logsumexp(logs, [1] * len(logs)).log_abs


# ==================== SPLIT KERNELS ====================
class Part(Enum):
    LOCAL = "local"
    GLOBAL = "global"
    FULL = "full"

    @classmethod
    def parse(cls, value) -> "Part":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise DomainError(f"unknown kernel part '{value}', expected local, global or full") from None


class Measure(Enum):
    """dmu = y^(2 alpha+1) dy on (0, inf), dw = |y|^(2 alpha+1) dy on R, or dy"""

    MU = "mu"
    W = "w"
    LEBESGUE = "lebesgue"

    @classmethod
    def parse(cls, value) -> "Measure":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).lower())
        except ValueError:
            raise DomainError(f"unknown measure '{value}', expected mu, w or lebesgue") from None

    @classmethod
    def default_for(cls, kind: KernelKind) -> "Measure":
        if kind is KernelKind.HERMITE_TYPE:
            return cls.LEBESGUE
        if kind is KernelKind.DUNKL:
            return cls.W
        return cls.MU

    def log_weight(self, alpha: float, y: np.ndarray) -> np.ndarray:
        y = np.asarray(y, dtype=float)
        if self is Measure.LEBESGUE or 2.0 * alpha + 1.0 == 0:
            return np.zeros_like(y)
        with np.errstate(divide="ignore"):
            return (2.0 * alpha + 1.0) * np.log(np.abs(y))

    def log_interval(self, alpha: float, a: float, b: float) -> float:
        """log of the measure of (a, b)"""
        if b <= a:
            return -math.inf
        if self is Measure.LEBESGUE:
            return math.log(b - a)
        if a < 0 < b:
            return _log_sum([self.log_interval(alpha, a, 0.0), self.log_interval(alpha, 0.0, b)])
        lo, hi = (a, b) if a >= 0 else (-b, -a)
        k = 2.0 * alpha + 2.0
        log_lo = k * math.log(lo) if lo > 0 else -math.inf
        return log_diff_exp(k * math.log(hi), log_lo) - math.log(k)


@dataclass(frozen=True)
class SplitKernel:
    """K = K_local + K_global, with K_local the restriction of K to |x| <= 2, |y| <= 2"""

    kind: KernelKind
    params: Params
    part: Part = Part.FULL

    def __post_init__(self):
        object.__setattr__(self, "kind", KernelKind.parse(self.kind))
        object.__setattr__(self, "part", Part.parse(self.part))

    def contains(self, x: float, y: float) -> bool:
        if self.part is Part.FULL:
            return True
        local = abs(x) <= SPLIT_POINT and abs(y) <= SPLIT_POINT
        return local if self.part is Part.LOCAL else not local

    def y_support(self, x: float) -> List[Interval]:
        """Intervals of y where the row at x can be nonzero"""
        inf = math.inf
        if self.part is Part.FULL or (self.part is Part.GLOBAL and abs(x) > SPLIT_POINT):
            intervals = [(-inf, inf)]
        elif self.part is Part.LOCAL:
            intervals = [(-SPLIT_POINT, SPLIT_POINT)] if abs(x) <= SPLIT_POINT else []
        else:
            intervals = [(-inf, -SPLIT_POINT), (SPLIT_POINT, inf)]
        if not self.kind.half_line:
            return intervals
        return [(max(lo, 0.0), hi) for lo, hi in intervals if hi > 0]

    def value_with_error(
        self, x: float, y: float, quad: Optional[QuadratureConfig] = None, diff: Optional[float] = None
    ) -> QuadratureResult:
        if not self.contains(x, y):
            return QuadratureResult(SignedLogValue.zero(), 0.0)
        return potential_kernel_with_error(self.kind, self.params, x, y, quad, diff)

    def value(self, x: float, y: float, quad: Optional[QuadratureConfig] = None) -> SignedLogValue:
        return self.value_with_error(x, y, quad).value

    def log_values(
        self, x: float, ys: np.ndarray, diffs: np.ndarray, quad: Optional[QuadratureConfig] = None
    ) -> Tuple[np.ndarray, np.ndarray]:
        """Signs and log-magnitudes of the row at x on the nodes ys, with exact differences x - ys"""
        signs = np.zeros(len(ys))
        logs = np.full(len(ys), -np.inf)
        for i, (y, d) in enumerate(zip(ys, diffs)):
            value = self.value_with_error(x, float(y), quad, float(d)).value
            signs[i], logs[i] = value.sign, value.log_abs
        return signs, logs


def full_kernel(kind, params: Params) -> SplitKernel:
    return SplitKernel(KernelKind.parse(kind), params, Part.FULL)


def _intersect(first: Sequence[Interval], second: Sequence[Interval]) -> List[Interval]:
    out = []
    for a, b in first:
        for c, d in second:
            lo, hi = max(a, c), min(b, d)
            if lo < hi:
                out.append((lo, hi))
    return out


# ==================== ROW NORMS ====================
def predicted_row_norm_exponent(kind, alpha: float, sigma: float, p: float) -> float:
    """Exponent e in ||K_global(x, .)||_p ~ x^e for large x"""
    kind = KernelKind.parse(kind)
    _check_exponent(p)
    inv_p = _inv(p)
    if kind is KernelKind.CONVOLUTION:
        return -2.0 * sigma + 2.0 * alpha * (inv_p - 1.0)
    if kind is KernelKind.HERMITE_TYPE:
        return -2.0 * sigma + 1.0 - inv_p
    raise DomainError(f"row norm exponents are known for the conv and hermite kernels, got {kind.value}")


def row_norm_is_finite(kind, alpha: float, sigma: float, p: float) -> bool:
    """Whether the global row norm at x > 4 is finite"""
    kind = KernelKind.parse(kind)
    _check_exponent(p)
    if kind not in (KernelKind.CONVOLUTION, KernelKind.HERMITE_TYPE):
        raise DomainError(f"row norm finiteness is known for the conv and hermite kernels, got {kind.value}")
    inv_p = _inv(p)
    finite = inv_p > 1.0 - 2.0 * sigma
    if kind is KernelKind.HERMITE_TYPE and alpha < -0.5:
        finite = finite and inv_p > -alpha - 0.5
    return finite


def _shell_series(contribution: Callable[[int], Optional[float]], max_shells: int) -> Tuple[float, bool]:
    """
    Sum dyadic shell contributions given as logs

    Empty shells (None) before the first nonempty one are skipped, after it
    they end the series. Once the log-ratio of consecutive shells settles,
    the remainder is a geometric tail, or divergence when the settled ratio
    stays at or above DIVERGENCE_RATIO for DIVERGENCE_STREAK shells.

    Returns:
        tuple: (log of the sum, divergent flag)
    """
    log_threshold = math.log(config.DIVERGENCE_RATIO)
    logs: List[float] = []
    ratios: List[float] = []
    streak = 0
    settled = 0
    for k in range(max_shells):
        c = contribution(k)
        if c is None or c == -math.inf:
            if logs:
                break
            continue
        if c == math.inf:
            return math.inf, True
        logs.append(c)
        if len(logs) < 2:
            continue
        ratios.append(logs[-1] - logs[-2])
        if len(ratios) < 2:
            continue
        stable = abs(ratios[-1] - ratios[-2]) < RATIO_STABILITY
        settled = settled + 1 if stable else 0
        streak = streak + 1 if stable and ratios[-1] >= log_threshold else 0
        if streak >= config.DIVERGENCE_STREAK:
            return math.inf, True
        total = _log_sum(logs)
        if logs[-1] < total - NEGLIGIBLE:
            return total, False
        if settled >= 2 and ratios[-1] < log_threshold:
            r = ratios[-1]
            tail = logs[-1] + r - math.log(-math.expm1(r))
            return _log_sum([total, tail]), False

    if not logs:
        return -math.inf, False
    if ratios and ratios[-1] >= 0 and logs[-1] > _log_sum(logs) - NEGLIGIBLE:
        return math.inf, True
    return _log_sum(logs), False


def _shell_log_integral(
    split: SplitKernel,
    x: float,
    p: float,
    measure: Measure,
    quad: QuadratureConfig,
    anchor: float,
    direction: float,
    lo: float,
    hi: float,
) -> Optional[float]:
    """log int |K(x, y)|^p dm(y) over y = anchor + direction*v, v in [lo, hi], clipped to the row support"""
    pieces = []
    for s_lo, s_hi in split.y_support(x):
        if direction > 0:
            v_lo, v_hi = s_lo - anchor, s_hi - anchor
        else:
            v_lo, v_hi = anchor - s_hi, anchor - s_lo
        a, b = max(lo, v_lo), min(hi, v_hi)
        if a < b:
            pieces.append((a, b))
    if not pieces:
        return None

    alpha = split.params.alpha
    shell_quad = replace(quad, level=SHELL_LEVEL)

    def integrand(s: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        v = np.exp(s)
        ys = anchor + direction * v
        diffs = (x - anchor) - direction * v
        signs, logs = split.log_values(x, ys, diffs, quad)
        out = p * logs + measure.log_weight(alpha, ys) + s
        out[signs == 0] = -np.inf
        return np.abs(signs), out

    results = []
    for a, b in pieces:
        results.append(composite_log_integral(integrand, [math.log(a), math.log(b)], shell_quad))
    return sum_results(results).value.log_abs


def _sup_row_norm(split: SplitKernel, x: float, quad: QuadratureConfig) -> SignedLogValue:
    """Grid maximum of |K(x, .)| on refinement-stable log grids"""
    kind, params = split.kind, split.params
    if split.contains(x, x) and is_singular(kind, params, x, x):
        return SignedLogValue.infinity()

    scan_ys = np.array([x * 2.0 ** -k for k in range(ZERO_SCAN_START, ZERO_SCAN_START + config.DIVERGENCE_STREAK + 1)])
    scan_ys = np.array([y for y in scan_ys if split.contains(x, y)])
    if scan_ys.size == config.DIVERGENCE_STREAK + 1:
        _, logs = split.log_values(x, scan_ys, x - scan_ys, quad)
        if np.all(np.diff(logs) >= math.log(SUP_GROWTH)):
            logger.warning(f"sup row norm at x={x}: row grows towards y = 0")
            return SignedLogValue.infinity()

    previous = None
    for per_octave in (2, 4, 8):
        j = np.arange(1, 30 * per_octave + 1)
        offsets = x * 2.0 ** (-j / per_octave)
        ys = np.concatenate([x - offsets, x + offsets, offsets[offsets <= x / 2], 2.0 * x * 2.0 ** (np.arange(0, 8 * per_octave + 1) / per_octave)])
        diffs = np.concatenate([offsets, -offsets, x - offsets[offsets <= x / 2], x - 2.0 * x * 2.0 ** (np.arange(0, 8 * per_octave + 1) / per_octave)])
        keep = np.array([split.contains(x, float(y)) for y in ys], dtype=bool)
        if not keep.any():
            return SignedLogValue.zero()
        signs, logs = split.log_values(x, ys[keep], diffs[keep], quad)
        peak = float(np.max(logs))
        if previous is not None and abs(peak - previous) < math.log1p(SUP_REFINEMENT_CHANGE):
            return SignedLogValue.from_log(peak)
        previous = peak
    return SignedLogValue.from_log(previous)


def row_norm(
    split: SplitKernel,
    x: float,
    p: float,
    tail: Optional[QuadratureConfig] = None,
    measure=None,
) -> SignedLogValue:
    """
    L^p norm of the row y -> K(x, y) of a split kernel

    Args:
        split: Half-line kernel and part
        x: Row position > 0
        p: Exponent in [1, inf]
        tail: Quadrature settings of the kernel evaluations
        measure: Measure of the norm, by default the one of the kernel's setting

    Returns:
        SignedLogValue: The norm, +inf when the shell sums diverge
    """
    _check_exponent(p)
    if not split.kind.half_line:
        raise DomainError("row norms are computed for the half-line kernels")
    if not x > 0:
        raise DomainError(f"row position must be > 0, got {x}")
    quad = _quad(tail)
    measure = Measure.parse(measure) if measure is not None else Measure.default_for(split.kind)
    if p == math.inf:
        return _sup_row_norm(split, x, quad)

    def shells(anchor: float, direction: float, radius: Callable[[int], Tuple[float, float]]):
        return lambda k: _shell_log_integral(split, x, p, measure, quad, anchor, direction, *radius(k))

    directions = [
        ("inner diagonal", shells(x, -1.0, lambda k: (x * 2.0 ** (-k - 2), x * 2.0 ** (-k - 1))), MAX_DIAGONAL_SHELLS),
        ("outer diagonal", shells(x, 1.0, lambda k: (x * 2.0 ** (-k - 1), x * 2.0 ** (-k))), MAX_DIAGONAL_SHELLS),
        ("towards zero", shells(0.0, 1.0, lambda k: (x * 2.0 ** (-k - 2), x * 2.0 ** (-k - 1))), MAX_RADIAL_SHELLS),
        ("outwards", shells(0.0, 1.0, lambda k: (2.0 * x * 2.0 ** k, 2.0 * x * 2.0 ** (k + 1))), MAX_RADIAL_SHELLS),
    ]
    totals = []
    for label, contribution, max_shells in directions:
        total, divergent = _shell_series(contribution, max_shells)
        if divergent:
            logger.warning(f"{split.kind.value}/{split.part.value} row norm at x={x}, p={p}: diverges {label}")
            return SignedLogValue.infinity()
        totals.append(total)
    log_integral = _log_sum(totals)
    return SignedLogValue.from_log(log_integral / p)


def row_norm_slope(
    split: SplitKernel,
    xs: Sequence[float],
    p: float,
    tail: Optional[QuadratureConfig] = None,
    workers: Optional[int] = None,
) -> float:
    """Least-squares slope of log row_norm against log x"""
    norms = parallel_map(lambda x: row_norm(split, x, p, tail), list(xs), workers, "row norms")
    if any(n.is_infinite or n.is_zero for n in norms):
        raise DomainError("row norm slope needs finite nonzero norms on the whole grid")
    return float(np.polyfit(np.log(xs), [n.log_abs for n in norms], 1)[0])


# ==================== TEST FUNCTIONS ====================
@dataclass(frozen=True)
class TestFunction:
    """
    A nonnegative function with its support and, where known, exact norms

    `edge_profile(d)` gives f(edge_point - d) for quadratures anchored at a
    singular right edge, where edge_point - d would round.
    """

    name: str
    func: Callable[[np.ndarray], np.ndarray]
    support: Tuple[Interval, ...]
    edge_point: Optional[float] = None
    edge_profile: Optional[Callable[[np.ndarray], np.ndarray]] = None
    indicator: bool = False
    exact_log_norms: Dict[float, float] = field(default_factory=dict, compare=False)
    meta: Dict[str, Any] = field(default_factory=dict, compare=False)

    def __call__(self, y) -> np.ndarray:
        return np.asarray(self.func(np.asarray(y, dtype=float)), dtype=float)

    def values_near(self, anchor: float, direction: float, d: np.ndarray) -> np.ndarray:
        if self.edge_profile is not None and anchor == self.edge_point and direction < 0:
            return np.asarray(self.edge_profile(d), dtype=float)
        return self(anchor + direction * d)

    def norm(self, p: float, alpha: float, measure=Measure.MU, quad: Optional[QuadratureConfig] = None) -> SignedLogValue:
        """
        ||f||_p against the given measure

        Indicators and families with a known closed form are exact; other
        functions use endpoint quadrature on each support interval and, for
        p = inf, the maximum over the quadrature nodes.
        """
        _check_exponent(p)
        measure = Measure.parse(measure)
        if self.indicator:
            if p == math.inf:
                return SignedLogValue.from_log(0.0)
            return SignedLogValue.from_log(_log_sum([measure.log_interval(alpha, a, b) for a, b in self.support]) / p)
        if measure is Measure.MU and p in self.exact_log_norms and self.meta.get("alpha") == alpha:
            return SignedLogValue.from_log(self.exact_log_norms[p])
        if any(math.isinf(a) or math.isinf(b) for a, b in self.support):
            raise DomainError(f"{self.name}: no closed-form norm for p={p} on an unbounded support")

        quad = _quad(quad)
        results, peak = [], -math.inf
        for a, b in self.support:
            mid = 0.5 * (a + b)
            for anchor, direction in ((a, 1.0), (b, -1.0)):

                def integrand(d: np.ndarray, anchor=anchor, direction=direction) -> Tuple[np.ndarray, np.ndarray]:
                    signs, logs = real_to_log(self.values_near(anchor, direction, d))
                    return np.abs(signs), (1.0 if p == math.inf else p) * logs + measure.log_weight(alpha, anchor + direction * d)

                if p == math.inf:
                    frac = np.linspace(0.0, 1.0, 257)[1:-1]
                    _, logs = real_to_log(self.values_near(anchor, direction, (mid - a) * frac))
                    peak = max(peak, float(np.max(logs)))
                else:
                    results.append(endpoint_log_integral(integrand, abs(mid - anchor), quad))
        if p == math.inf:
            return SignedLogValue.from_log(peak)
        return SignedLogValue.from_log(sum_results(results).value.log_abs / p)


def _indicator(name: str, a: float, b: float, **meta) -> TestFunction:
    return TestFunction(
        name=name,
        func=lambda y: ((y > a) & (y < b)).astype(float),
        support=((a, b),),
        indicator=True,
        meta=dict(meta),
    )


def _log_edge(alpha: float, sigma: float, p: float, quad: QuadratureConfig) -> TestFunction:
    if not 1.0 <= p < math.inf:
        raise DomainError(f"log_edge requires 1 <= p < inf, got p={p}")
    power = -2.0 * (alpha + 1.0) / p
    log_power = -1.0 / p - sigma / (alpha + 1.0)
    k = sigma * p / (alpha + 1.0)

    def func(y: np.ndarray) -> np.ndarray:
        inside = y > math.e
        safe = np.where(inside, y, 2.0 * math.e)
        return np.where(inside, safe ** power * np.log(safe) ** log_power, 0.0)

    # ||f||_p^p = int_1^inf u^(-1-k) du in u = log y, certified again by quadrature in v = log u
    v_max = 80.0 / k
    certificate = composite_log_integral(lambda v: (np.ones_like(v), -k * v), [0.0, v_max], quad)
    tail = -k * v_max - math.log(k)
    log_norm_p = _log_sum([certificate.value.log_abs, tail])
    return TestFunction(
        name="log_edge",
        func=func,
        support=((math.e, math.inf),),
        exact_log_norms={p: math.log((alpha + 1.0) / (sigma * p)) / p},
        meta={
            "alpha": alpha,
            "sigma": sigma,
            "p": p,
            "certificate_log_norm_p": log_norm_p,
            "certificate_achieved_tol": certificate.achieved_tol,
        },
    )


def _bump_at_n(alpha: float, n: float) -> TestFunction:
    if not n >= 1:
        raise DomainError(f"bump_at_n requires n >= 1, got n={n}")
    f = _indicator("bump_at_n", n, n + 1.0 / n, alpha=alpha, n=n)
    k = 2.0 * alpha + 2.0
    exact = k * math.log(n) + math.log(math.expm1(k * math.log1p(1.0 / (n * n)))) - math.log(k)
    f.meta["log_measure"] = exact
    return f


def _edge_power(alpha: float, sigma: float, p: float, q: float, epsilon: float) -> TestFunction:
    _check_exponent(p)
    _check_exponent(q, "q")
    gap = _inv(p) - 2.0 * sigma - _inv(q)
    if not 0 < epsilon < gap:
        raise DomainError(f"edge_power requires 0 < epsilon < 1/p - 2 sigma - 1/q = {gap:.6g}, got epsilon={epsilon}")
    A = -_inv(p) + epsilon

    def func(y: np.ndarray) -> np.ndarray:
        inside = (y > 2.0) & (y < 3.0)
        return np.where(inside, np.abs(3.0 - np.where(inside, y, 2.0)) ** A, 0.0)

    return TestFunction(
        name="edge_power",
        func=func,
        support=((2.0, 3.0),),
        edge_point=3.0,
        edge_profile=lambda d: np.where(d < 1.0, d ** A, 0.0),
        meta={"alpha": alpha, "sigma": sigma, "p": p, "q": q, "epsilon": epsilon, "A": A},
    )


def _log_log_edge(alpha: float, sigma: float) -> TestFunction:
    if not 0 < sigma < 0.5:
        raise DomainError(f"log_log_edge requires 0 < sigma < 1/2, got sigma={sigma}")

    def profile(d: np.ndarray) -> np.ndarray:
        d = np.asarray(d, dtype=float)
        safe = np.clip(d, 1e-300, 1.0)
        return np.where((d > 0) & (d < 1.0), safe ** (-2.0 * sigma) / np.log(2.0 / safe), 0.0)

    return TestFunction(
        name="log_log_edge",
        func=lambda y: profile(3.0 - y),
        support=((2.0, 3.0),),
        edge_point=3.0,
        edge_profile=profile,
        meta={"alpha": alpha, "sigma": sigma, "p": 1.0 / (2.0 * sigma)},
    )


FAMILIES = ("log_edge", "bump_at_n", "edge_power", "log_log_edge", "shrinking_edge")


def counterexample_family(
    name: str,
    alpha: float,
    sigma: float,
    p: Optional[float] = None,
    q: Optional[float] = None,
    n: Optional[float] = None,
    epsilon: Optional[float] = None,
    quad: Optional[QuadratureConfig] = None,
) -> TestFunction:
    """
    Test functions exhibiting the failure of L^p - L^q bounds

    Args:
        name: One of FAMILIES
        alpha: Type parameter
        sigma: Order of the potential
        p: Source exponent (log_edge, edge_power)
        q: Target exponent (edge_power)
        n: Family index (bump_at_n, shrinking_edge)
        epsilon: Offset of the edge exponent (edge_power)
        quad: Quadrature settings of the log_edge norm certificate

    Returns:
        TestFunction: The family member with its exact support

    Raises:
        DomainError: When the family's parameter constraint is violated
    """
    Params(alpha, sigma)
    if name == "log_edge":
        if p is None:
            raise DomainError("log_edge requires p")
        return _log_edge(alpha, sigma, p, _quad(quad))
    if name == "bump_at_n":
        if n is None:
            raise DomainError("bump_at_n requires n")
        return _bump_at_n(alpha, n)
    if name == "edge_power":
        if p is None or q is None or epsilon is None:
            raise DomainError("edge_power requires p, q and epsilon")
        return _edge_power(alpha, sigma, p, q, epsilon)
    if name == "log_log_edge":
        return _log_log_edge(alpha, sigma)
    if name == "shrinking_edge":
        if n is None or not n >= 1:
            raise DomainError(f"shrinking_edge requires n >= 1, got n={n}")
        return _indicator("shrinking_edge", 3.0 - 1.0 / n, 3.0, alpha=alpha, n=n)
    raise DomainError(f"unknown counterexample family '{name}', expected one of: {', '.join(FAMILIES)}")


def eigenfunction(kind, n: int, alpha: float) -> TestFunction:
    """l_n^alpha for the convolution setting, h_n^alpha (on R) for the Dunkl setting"""
    kind = KernelKind.parse(kind)
    if kind is KernelKind.CONVOLUTION:
        return TestFunction(
            name=f"laguerre_{n}",
            func=lambda y: laguerre_fn(n, alpha, np.maximum(y, 0.0)) * (y > 0),
            support=((0.0, math.inf),),
            meta={"alpha": alpha, "n": n},
        )
    if kind is KernelKind.DUNKL:
        return TestFunction(
            name=f"hermite_{n}",
            func=lambda y: np.asarray(generalized_hermite_fn(n, alpha, y), dtype=float),
            support=((-math.inf, math.inf),),
            meta={"alpha": alpha, "n": n},
        )
    raise DomainError(f"eigenfunctions are provided for the conv and dunkl settings, got {kind.value}")


def smooth_bump(center: float, radius: float) -> TestFunction:
    """C^2 bump (1 - ((y - center)/radius)^2)^3 supported on (center - radius, center + radius)"""
    if not radius > 0:
        raise DomainError(f"bump radius must be > 0, got {radius}")

    def func(y: np.ndarray) -> np.ndarray:
        u = (y - center) / radius
        return np.where(np.abs(u) < 1.0, (1.0 - u * u) ** 3, 0.0)

    return TestFunction(name="smooth_bump", func=func, support=((center - radius, center + radius),), meta={"center": center, "radius": radius})


# ==================== OPERATOR APPLICATION ====================
@dataclass
class OperatorResult:
    """Values of an integral operator on a grid, with per-point divergence flags"""

    x: np.ndarray
    values: List[SignedLogValue]
    achieved_tol: List[float]
    divergent: List[bool]

    def log_abs(self) -> np.ndarray:
        return np.array([v.log_abs for v in self.values])

    def signs(self) -> np.ndarray:
        return np.array([v.sign for v in self.values])

    def to_real(self) -> np.ndarray:
        return np.array([v.to_real() for v in self.values])

    def __add__(self, other: "OperatorResult") -> "OperatorResult":
        return OperatorResult(
            x=self.x,
            values=[a + b for a, b in zip(self.values, other.values)],
            achieved_tol=[max(a, b) for a, b in zip(self.achieved_tol, other.achieved_tol)],
            divergent=[a or b for a, b in zip(self.divergent, other.divergent)],
        )

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            {
                "x": self.x,
                "sign": self.signs(),
                "log_abs": self.log_abs(),
                "achieved_tol": self.achieved_tol,
                "divergent": self.divergent,
            }
        )


def _cut_points(x: float, f: TestFunction) -> List[float]:
    """Panel boundaries: the diagonal and the split points, plus geometric rings around x"""
    points = {x, -x, 0.0, SPLIT_POINT, -SPLIT_POINT}
    scales = {min(1.0, 1.0 / abs(x)) / 8.0 if x != 0 else 0.125}
    if f.edge_point is not None and f.edge_point != x:
        scales.add(abs(x - f.edge_point))
    reach = 4.0 * max(abs(x), 1.0)
    for scale in scales:
        step = scale
        for _ in range(MAX_CUTS_PER_SCALE):
            if step > reach:
                break
            points.update((x - step, x + step))
            step *= 4.0
    return sorted(points)


def _truncate(intervals: Sequence[Interval], x: float, factor: float = 1.0) -> List[Interval]:
    """Unbounded ends cut at `factor` times 2|x| + TRUNCATION beyond the finite end"""
    out = []
    for lo, hi in intervals:
        if hi == math.inf:
            hi = factor * (max(lo, 2.0 * abs(x)) + TRUNCATION)
        if lo == -math.inf:
            lo = factor * (min(hi, -2.0 * abs(x)) - TRUNCATION)
        out.append((lo, hi))
    return out


def _tails(intervals: Sequence[Interval], x: float) -> List[Interval]:
    """The pieces between the cut and the doubled cut of every unbounded end"""
    out = []
    for (lo, hi), (c_lo, c_hi), (d_lo, d_hi) in zip(intervals, _truncate(intervals, x), _truncate(intervals, x, 2.0)):
        if hi == math.inf:
            out.append((c_hi, d_hi))
        if lo == -math.inf:
            out.append((d_lo, c_lo))
    return out


def _with_tail(body: QuadratureResult, tail: QuadratureResult, label: str) -> QuadratureResult:
    """Add the doubled-cut tail; a tail carrying more than TAIL_TOL of the total means no convergence"""
    if tail.value.is_zero:
        return body
    total = sum_results([body, tail])
    if total.value.is_infinite or total.value.is_zero:
        change = math.inf
    else:
        change = math.exp(tail.value.log_abs - total.value.log_abs)
    if change > TAIL_TOL:
        logger.debug(f"{label}: doubling the cut changes the value by {change:.2e}")
        return QuadratureResult(SignedLogValue.infinity(), change)
    return QuadratureResult(total.value, max(total.achieved_tol, change))


def _half_integrand(
    x: float, f: TestFunction, anchor: float, direction: float, log_kernel: LogKernel, log_weight: Callable[[np.ndarray], np.ndarray]
):
    def integrand(d: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        ys = anchor + direction * d
        f_sign, f_log = real_to_log(f.values_near(anchor, direction, d))
        signs = np.zeros_like(d)
        logs = np.full_like(d, -np.inf)
        live = f_sign != 0
        if live.any():
            k_sign, k_log = log_kernel(ys[live], (x - anchor) - direction * d[live])
            signs[live] = f_sign[live] * k_sign
            logs[live] = f_log[live] + k_log + log_weight(ys[live])
        logs[signs == 0] = -np.inf
        return signs, logs

    return integrand


def _pair(
    x: float,
    f: TestFunction,
    intervals: Sequence[Interval],
    log_kernel: LogKernel,
    log_weight: Callable[[np.ndarray], np.ndarray],
    quad: QuadratureConfig,
) -> QuadratureResult:
    """int k(x, y) f(y) dm(y) over the intervals, every piece integrated from both ends"""
    cuts = _cut_points(x, f)
    results = []
    for lo, hi in intervals:
        edges = [lo] + [c for c in cuts if lo < c < hi] + [hi]
        for a, b in zip(edges[:-1], edges[1:]):
            mid = 0.5 * (a + b)
            results.append(endpoint_log_integral(_half_integrand(x, f, a, 1.0, log_kernel, log_weight), mid - a, quad))
            results.append(endpoint_log_integral(_half_integrand(x, f, b, -1.0, log_kernel, log_weight), b - mid, quad))
    if not results:
        return QuadratureResult(SignedLogValue.zero(), 0.0)
    return sum_results(results)


def _collect(xs: np.ndarray, outcomes: List[Tuple[SignedLogValue, float, bool]], label: str) -> OperatorResult:
    flagged = sum(1 for _, _, divergent in outcomes if divergent)
    if flagged:
        logger.warning(f"{label}: {flagged} of {len(outcomes)} point(s) flagged divergent")
    return OperatorResult(
        x=xs,
        values=[v for v, _, _ in outcomes],
        achieved_tol=[t for _, t, _ in outcomes],
        divergent=[d for _, _, d in outcomes],
    )


def _outcome(result: QuadratureResult) -> Tuple[SignedLogValue, float, bool]:
    if result.value.is_infinite or result.achieved_tol >= DIVERGENT_TOL:
        return SignedLogValue.infinity(), result.achieved_tol, True
    return result.value, result.achieved_tol, False


def apply_operator(
    kernel: SplitKernel,
    f: TestFunction,
    x_grid: Sequence[float],
    measure=None,
    quad: Optional[QuadratureConfig] = None,
    workers: Optional[int] = None,
) -> OperatorResult:
    """
    Evaluate int K(x, y) f(y) dm(y) at every grid point

    Args:
        kernel: Split (or full) kernel
        f: Test function
        x_grid: Evaluation points
        measure: mu, w or lebesgue, by default the one of the kernel's setting
        quad: Quadrature settings of both the kernel and the pairing
        workers: Thread cap

    Returns:
        OperatorResult: Values; non-integrable pairings come back as +inf with the divergent flag set
    """
    quad = _quad(quad)
    measure = Measure.parse(measure) if measure is not None else Measure.default_for(kernel.kind)
    alpha = kernel.params.alpha
    xs = np.asarray(list(x_grid), dtype=float)
    if kernel.kind.half_line and np.any(xs <= 0):
        raise DomainError(f"{kernel.kind.value} operator is evaluated at x > 0")

    def log_weight(ys: np.ndarray) -> np.ndarray:
        return measure.log_weight(alpha, ys)

    label = f"{kernel.kind.value}/{kernel.part.value} operator on {f.name}"

    def one(x: float) -> Tuple[SignedLogValue, float, bool]:
        support = _intersect(kernel.y_support(x), f.support)

        def log_kernel(ys: np.ndarray, diffs: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
            return kernel.log_values(x, ys, diffs, quad)

        result = _pair(x, f, _truncate(support, x), log_kernel, log_weight, quad)
        tails = _tails(support, x)
        if tails:
            result = _with_tail(result, _pair(x, f, tails, log_kernel, log_weight, quad), f"{label} at x={x}")
        return _outcome(result)

    return _collect(xs, parallel_map(one, [float(x) for x in xs], workers, label), label)


def spectral_check(
    kind, params: Params, n: int, x_grid: Sequence[float], quad: Optional[QuadratureConfig] = None, workers: Optional[int] = None
) -> pd.DataFrame:
    """Operator applied to an eigenfunction next to eigenvalue^-sigma times the eigenfunction"""
    kind = KernelKind.parse(kind)
    f = eigenfunction(kind, n, params.alpha)
    eigenvalue = laguerre_eigenvalue(n, params.alpha) if kind is KernelKind.CONVOLUTION else dunkl_eigenvalue(n, params.alpha)
    result = apply_operator(full_kernel(kind, params), f, x_grid, quad=quad, workers=workers)
    expected = eigenvalue ** (-params.sigma) * f(result.x)
    computed = result.to_real()
    frame = result.to_frame()
    frame["computed"] = computed
    frame["expected"] = expected
    frame["relative_error"] = np.abs(computed - expected) / np.maximum(np.abs(expected), np.finfo(float).tiny)
    return frame


# ==================== GROWTH EXPERIMENTS ====================
@dataclass(frozen=True)
class GrowthFit:
    family: str
    ns: Tuple[float, ...]
    log_ratios: Tuple[float, ...]
    exponent: float
    predicted: Optional[float]

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


def operator_norm_near_support(
    kernel: SplitKernel,
    f: TestFunction,
    q: float,
    window: float = 4.0,
    nodes: int = 16,
    measure=None,
    quad: Optional[QuadratureConfig] = None,
    workers: Optional[int] = None,
) -> SignedLogValue:
    """
    ||I f||_q over the support of f widened by `window` support widths on each side

    Gauss-Legendre on the three pieces left of, on, and right of the support;
    q = inf takes the maximum over the nodes and the support edges.
    """
    _check_exponent(q, "q")
    measure = Measure.parse(measure) if measure is not None else Measure.default_for(kernel.kind)
    a, b = f.support[0]
    width = b - a
    nodes_x, nodes_w = np.polynomial.legendre.leggauss(nodes)
    xs, ws = [], []
    for lo, hi in ((a - window * width, a), (a, b), (b, b + window * width)):
        half = 0.5 * (hi - lo)
        xs.extend(lo + half * (nodes_x + 1.0))
        ws.extend(half * nodes_w)
    if q == math.inf:
        xs.extend([a, b])
    result = apply_operator(kernel, f, xs, measure, quad, workers)
    if any(result.divergent):
        return SignedLogValue.infinity()
    logs = result.log_abs()
    if q == math.inf:
        return SignedLogValue.from_log(float(np.max(logs)))
    xs_q = np.asarray(xs[: len(ws)])
    terms = q * logs[: len(ws)] + np.log(ws) + measure.log_weight(kernel.params.alpha, xs_q)
    return SignedLogValue.from_log(_log_sum(list(terms)) / q)


def ratio_growth(
    family: str,
    alpha: float,
    sigma: float,
    p: float,
    q: float,
    ns: Sequence[float],
    kind=KernelKind.CONVOLUTION,
    window: float = 4.0,
    nodes: int = 16,
    quad: Optional[QuadratureConfig] = None,
    workers: Optional[int] = None,
) -> GrowthFit:
    """
    Growth exponent of ||I_global f_n||_q / ||f_n||_p in n

    Args:
        family: bump_at_n or shrinking_edge
        alpha: Type parameter
        sigma: Order of the potential
        p: Source exponent
        q: Target exponent
        ns: Family indices
        kind: Kernel setting
        window: Support widths added on each side for the q-norm
        nodes: Gauss-Legendre nodes per piece
        quad: Quadrature settings
        workers: Thread cap

    Returns:
        GrowthFit: Least-squares slope of log ratio against log n
    """
    if family not in ("bump_at_n", "shrinking_edge"):
        raise DomainError(f"ratio growth is defined for bump_at_n and shrinking_edge, got '{family}'")
    _check_exponent(p)
    _check_exponent(q, "q")
    kernel = SplitKernel(KernelKind.parse(kind), Params(alpha, sigma), Part.GLOBAL)
    log_ratios = []
    for n in ns:
        f = counterexample_family(family, alpha, sigma, n=n)
        numerator = operator_norm_near_support(kernel, f, q, window, nodes, quad=quad, workers=workers)
        denominator = f.norm(p, alpha)
        log_ratios.append(numerator.log_abs - denominator.log_abs)
        logger.debug(f"{family} n={n}: log ratio {log_ratios[-1]:.6f}")
    exponent = float(np.polyfit(np.log(ns), log_ratios, 1)[0]) if len(ns) > 1 else float("nan")
    predicted = -2.0 * sigma - 2.0 * alpha * (_inv(p) - _inv(q)) if family == "bump_at_n" else None
    logger.info(f"{family} growth (alpha={alpha}, sigma={sigma}, p={p}, q={q}): exponent {exponent:.4f}")
    return GrowthFit(family, tuple(float(n) for n in ns), tuple(log_ratios), exponent, predicted)


@dataclass(frozen=True)
class PartialNormGrowth:
    log_windows: Tuple[float, ...]
    log_partials: Tuple[float, ...]
    divergent: bool

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


def partial_norm_growth(
    kernel: SplitKernel,
    f: TestFunction,
    q: float,
    start: float,
    log_windows: Sequence[float] = (2.0, 4.0, 8.0, 16.0),
    nodes: int = 8,
    measure=None,
    quad: Optional[QuadratureConfig] = None,
    workers: Optional[int] = None,
) -> PartialNormGrowth:
    """
    Partial q-th powers int_start^X |I f|^q dm for log X doubling through `log_windows`

    Growth is certified when each doubling raises the partial integral by more
    than GROWTH_INCREASE, DIVERGENCE_STREAK times in a row.
    """
    if not 1.0 <= q < math.inf:
        raise DomainError(f"partial norms need a finite q >= 1, got {q}")
    measure = Measure.parse(measure) if measure is not None else Measure.default_for(kernel.kind)
    edges = [math.log(start)] + list(log_windows)
    if any(b <= a for a, b in zip(edges[:-1], edges[1:])):
        raise DomainError("log windows must increase beyond log(start)")

    nodes_x, nodes_w = np.polynomial.legendre.leggauss(nodes)
    vs, log_ws, owner = [], [], []
    for i, (lo, hi) in enumerate(zip(edges[:-1], edges[1:])):
        half = 0.5 * (hi - lo)
        vs.extend(lo + half * (nodes_x + 1.0))
        log_ws.extend(np.log(half * nodes_w))
        owner.extend([i] * nodes)
    vs_arr = np.asarray(vs)
    result = apply_operator(kernel, f, np.exp(vs_arr), measure, quad, workers)
    if any(result.divergent):
        return PartialNormGrowth(tuple(log_windows), tuple([math.inf] * len(log_windows)), True)

    terms = q * result.log_abs() + np.asarray(log_ws) + measure.log_weight(kernel.params.alpha, np.exp(vs_arr)) + vs_arr
    owner_arr = np.asarray(owner)
    increments = [_log_sum(list(terms[owner_arr == i])) for i in range(len(log_windows))]
    partials = list(np.logaddexp.accumulate(increments))

    streak = 0
    for previous, current in zip(partials[:-1], partials[1:]):
        streak = streak + 1 if current - previous > math.log1p(config.GROWTH_INCREASE) else 0
    divergent = streak >= config.DIVERGENCE_STREAK
    if divergent:
        logger.warning(f"{f.name}: partial L^{q} norms keep growing across {streak} window doublings")
    return PartialNormGrowth(tuple(log_windows), tuple(float(v) for v in partials), divergent)


def edge_growth_exponent(
    kernel: SplitKernel,
    f: TestFunction,
    hs: Sequence[float] = (2.0 ** -12, 2.0 ** -14),
    quad: Optional[QuadratureConfig] = None,
) -> float:
    """Local slope of log I f(edge + h) against log h at the singular edge of f"""
    if f.edge_point is None:
        raise DomainError(f"{f.name} has no singular edge")
    result = apply_operator(kernel, f, [f.edge_point + h for h in hs], quad=quad, workers=1)
    return float(np.polyfit(np.log(hs), result.log_abs(), 1)[0])


# ==================== HARDY-TYPE OPERATOR ====================
def ball_measure(alpha: float, x: float, r: float) -> float:
    """mu_alpha of the ball (x - r, x + r) in (1, inf)"""
    if not x > 1 or not r > 0:
        raise DomainError(f"balls need centre x > 1 and radius r > 0, got x={x}, r={r}")
    return math.exp(Measure.MU.log_interval(alpha, max(1.0, x - r), x + r))


def ball_measure_model(alpha: float, x: float, r: float) -> float:
    """r (x + r)^(2 alpha + 1)"""
    return r * (x + r) ** (2.0 * alpha + 1.0)


def hardy_kernel_ratio(alpha: float, sigma: float, x: float, y: float) -> float:
    """(x+y)^(-2 alpha-1) |x-y|^(2 sigma-1) divided by |x-y|^(2 sigma) / mu_alpha(B(x, |x-y|))"""
    d = abs(x - y)
    if d == 0:
        raise DomainError("the Hardy-type kernels are compared off the diagonal")
    return (x + y) ** (-2.0 * alpha - 1.0) * ball_measure(alpha, x, d) / d


def hardy_operator(
    alpha: float,
    sigma: float,
    f: TestFunction,
    x_grid: Sequence[float],
    quad: Optional[QuadratureConfig] = None,
    workers: Optional[int] = None,
) -> OperatorResult:
    """U f(x) = int_1^inf (x+y)^(-2 alpha-1) |x-y|^(2 sigma-1) f(y) dmu_alpha(y) for x > 1"""
    if not alpha >= -0.5:
        raise DomainError(f"Hardy-type operator requires alpha >= -1/2, got {alpha}")
    if not 0 < sigma < 0.5:
        raise DomainError(f"Hardy-type operator requires 0 < sigma < 1/2, got {sigma}")
    if any(math.isinf(b) for _, b in f.support):
        raise DomainError("Hardy-type operator is applied to compactly supported functions")
    xs = np.asarray(list(x_grid), dtype=float)
    if np.any(xs <= 1):
        raise DomainError("Hardy-type operator is evaluated at x > 1")
    quad = _quad(quad)

    def log_weight(ys: np.ndarray) -> np.ndarray:
        return Measure.MU.log_weight(alpha, ys)

    def one(x: float) -> Tuple[SignedLogValue, float, bool]:
        def log_kernel(ys: np.ndarray, diffs: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
            return np.ones_like(ys), (-2.0 * alpha - 1.0) * np.log(x + ys) + (2.0 * sigma - 1.0) * np.log(np.abs(diffs))

        return _outcome(_pair(x, f, _intersect([(1.0, math.inf)], f.support), log_kernel, log_weight, quad))

    return _collect(xs, parallel_map(one, [float(x) for x in xs], workers, "hardy operator"), f"hardy operator on {f.name}")


# ==================== DUNKL NEGATIVITY AND FOLDING ====================
@dataclass(frozen=True)
class NegativityReport:
    alpha: float
    sigma: float
    box: float
    density: int
    hits: Tuple[Tuple[float, float], ...]
    anti_diagonal_min: Optional[float]
    checked: int

    @property
    def min_radius(self) -> Optional[float]:
        if not self.hits:
            return None
        return min(abs(x) + abs(y) for x, y in self.hits)

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data["hits"] = [list(h) for h in self.hits]
        data["min_radius"] = self.min_radius
        return data

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(list(self.hits), columns=["x", "y"])


def negativity_scan(
    alpha: float,
    sigma: float,
    box: float = 20.0,
    density: int = 41,
    enforce_domain: bool = True,
    anti_diagonal_points: int = 200,
    quad: Optional[QuadratureConfig] = None,
    workers: Optional[int] = None,
) -> NegativityReport:
    """
    Points of a square grid where the Dunkl potential kernel is negative

    Args:
        alpha: Type parameter in (-1, -1/2)
        sigma: Order of the potential
        box: Half-side of the square [-box, box]^2
        density: Grid points per axis
        enforce_domain: Reject alpha outside (-1, -1/2); control runs switch it off
        anti_diagonal_points: Samples of the line y = -x in (0, box]
        quad: Quadrature settings; hits are re-verified one level finer
        workers: Thread cap

    Returns:
        NegativityReport: Verified hits and the smallest negative |x| on the anti-diagonal
    """
    if enforce_domain and not -1 < alpha < -0.5:
        raise DomainError(f"negativity scan requires -1 < alpha < -1/2, got {alpha}")
    params = Params(alpha, sigma)
    quad = _quad(quad)
    refined = quad.refined()
    kind = KernelKind.DUNKL

    axis = np.linspace(-box, box, density)
    points = [(float(x), float(y)) for x in axis for y in axis if not is_singular(kind, params, float(x), float(y))]
    values = potential_kernel_grid(kind, params, points, quad, workers)
    candidates = [pt for pt, r in zip(points, values) if r.value.sign < 0]
    verified = parallel_map(lambda pt: potential_kernel(kind, params, pt[0], pt[1], refined), candidates, workers, "negativity re-check")
    hits = tuple(pt for pt, v in zip(candidates, verified) if v.sign < 0)

    xs = np.linspace(box / anti_diagonal_points, box, anti_diagonal_points)
    anti = potential_kernel_grid(kind, params, [(float(x), -float(x)) for x in xs], quad, workers)
    anti_min = None
    for x, r in zip(xs, anti):
        if r.value.sign < 0 and potential_kernel(kind, params, float(x), -float(x), refined).sign < 0:
            anti_min = float(x)
            break

    logger.info(f"negativity scan alpha={alpha}, sigma={sigma}: {len(hits)} hit(s) of {len(points)}, anti-diagonal from {anti_min}")
    return NegativityReport(alpha, sigma, box, density, hits, anti_min, len(points))


def fold(f: TestFunction) -> Tuple[TestFunction, TestFunction]:
    """(f_+, f_-) on (0, inf) with f_+(y) = f(y) and f_-(y) = f(-y)"""
    plus_support = tuple((max(a, 0.0), b) for a, b in f.support if b > 0)
    minus_support = tuple((max(-b, 0.0), -a) for a, b in f.support if a < 0)

    def plus(y: np.ndarray) -> np.ndarray:
        return np.where(y > 0, f(np.where(y > 0, y, 1.0)), 0.0)

    def minus(y: np.ndarray) -> np.ndarray:
        return np.where(y > 0, f(np.where(y > 0, -y, -1.0)), 0.0)

    return (
        TestFunction(f"{f.name}+", plus, plus_support, meta=dict(f.meta)),
        TestFunction(f"{f.name}-", minus, minus_support, meta=dict(f.meta)),
    )


def apply_folded_dunkl(
    params: Params,
    f: TestFunction,
    x_grid: Sequence[float],
    quad: Optional[QuadratureConfig] = None,
    workers: Optional[int] = None,
) -> Tuple[OperatorResult, OperatorResult]:
    """
    (I_D f)(x) and (I_D f)(-x) for x > 0 assembled as I_+(f_+) + I_-(f_-) and I_+(f_-) + I_-(f_+)

    I_+ g(x) = int_0^inf K_D(x, y) g(y) dw(y) and I_- g(x) = int_0^inf K_D(x, -y) g(y) dw(y) = I_+ g(-x).
    """
    xs = np.asarray(list(x_grid), dtype=float)
    if np.any(xs <= 0):
        raise DomainError("folded Dunkl operator is evaluated at x > 0")
    f_plus, f_minus = fold(f)
    kernel = full_kernel(KernelKind.DUNKL, params)

    def apply(g: TestFunction, points: np.ndarray) -> OperatorResult:
        result = apply_operator(kernel, g, points, Measure.W, quad, workers)
        result.x = xs
        return result

    plus = apply(f_plus, xs) + apply(f_minus, -xs)
    minus = apply(f_minus, xs) + apply(f_plus, -xs)
    return plus, minus
