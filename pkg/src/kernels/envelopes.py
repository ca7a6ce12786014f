"""
Sharp two-sided envelopes of the potential kernels, the J/E decompositions,
and the calibration of their constants over point grids.
"""

import math
from dataclasses import asdict, dataclass
from typing import Any, Callable, Dict, List, Optional, Tuple

import numpy as np

from src.kernels.aux_integrals import e_integral, j_integral, log1p_logplus
from src.kernels.certificates import EnvelopeConstants, EnvelopeShape, RatioReport, calibrate_shapes, sandwich_holds
from src.kernels.potential_kernels import KernelKind, potential_kernel_grid
from src.kernels.quadrature import QuadratureConfig
from src.kernels.signed_log import SignedLogValue, signed_logsumexp
from src.kernels.special_functions import Params
from src.utils.config import config
from src.utils.errors import DomainError, SingularPointError
from src.utils.logger import logger
from src.utils.parallel import parallel_map

EXPONENT_TOL = 1e-12

Point = Tuple[float, float]


def _same(a: float, b: float) -> bool:
    return abs(a - b) <= EXPONENT_TOL


def _log(v: float) -> float:
    return math.log(v) if v > 0 else -math.inf


def _log_sum(*logs: float) -> float:
    return signed_logsumexp(logs, [1] * len(logs)).log_abs


def _diagonal_factor(sigma: float, log_delta: float, log_half_branch: float, log_upper_branch: float) -> float:
    """Three sigma-branches shared by every envelope: delta**(2 sigma-1), a log branch, a power branch"""
    if _same(sigma, 0.5):
        return log_half_branch
    if sigma < 0.5:
        return (2.0 * sigma - 1.0) * log_delta
    return log_upper_branch


def _near_origin(params: Params, r: float, log_tail: float) -> float:
    """chi_{sigma > alpha+1} + chi_{sigma = alpha+1} log(1/r) + exp(log_tail), in log form"""
    terms = [log_tail]
    if _same(params.sigma, params.alpha + 1.0):
        if r < 1:
            terms.append(math.log(-math.log(r)) if r > 0 else math.inf)
    elif params.sigma > params.alpha + 1.0:
        terms.append(0.0)
    return _log_sum(*terms)


# ==================== SHAPES ====================
def _conv_shape(params: Params, x: float, y: float) -> EnvelopeShape:
    alpha, sigma = params.alpha, params.sigma
    r, delta = x + y, abs(x - y)
    log_r, log_delta = _log(r), _log(delta)
    if r <= 1:
        half = math.log1p(math.log(r / delta)) if delta > 0 else math.inf
        tail = -(2.0 * alpha + 1.0) * log_r + _diagonal_factor(sigma, log_delta, half, (2.0 * sigma - 1.0) * log_r)
        return EnvelopeShape(_near_origin(params, r, tail), 0.0, "near")
    half = log1p_logplus(1.0 / (delta * r)) if delta > 0 else math.inf
    log_y = -(2.0 * alpha + 1.0) * log_r + _diagonal_factor(sigma, log_delta, half, (1.0 - 2.0 * sigma) * log_r)
    return EnvelopeShape(log_y, delta * r, "far")


def conv_envelope_shape(params: Params, x: float, y: float) -> EnvelopeShape:
    """Shape of K^{alpha,sigma}(x, y), x, y > 0, split at x + y = 1"""
    if x <= 0 or y <= 0:
        raise DomainError(f"convolution envelope requires x, y > 0, got ({x}, {y})")
    return _conv_shape(params, x, y)


def dunkl_envelope_shape(params: Params, x: float, y: float) -> EnvelopeShape:
    """
    Shape of K_D^{alpha,sigma}(x, y) on the whole line

    Args:
        params: (alpha, sigma) with alpha > -1/2
        x: First argument
        y: Second argument

    Returns:
        EnvelopeShape: Case "same/near", "same/far", "opposite/near" or "opposite/far"
    """
    if not params.alpha > -0.5:
        raise DomainError(f"Dunkl envelope requires alpha > -1/2, got {params.alpha}")
    if x * y >= 0:
        shape = _conv_shape(params, abs(x), abs(y))
        return EnvelopeShape(shape.log_y, shape.z, f"same/{shape.case}")
    alpha, sigma = params.alpha, params.sigma
    r = abs(x) + abs(y)
    log_r = math.log(r)
    if r <= 1:
        tail = (2.0 * sigma - 2.0 * alpha - 2.0) * log_r
        return EnvelopeShape(_near_origin(params, r, tail), 0.0, "opposite/near")
    log_y = (-2.0 * alpha - 1.0 + 1.0 - 2.0 * sigma - 4.0) * log_r
    return EnvelopeShape(log_y, abs(x - y) * abs(x + y), "opposite/far")


def hermite_osc_shape(sigma: float, x: float, y: float) -> EnvelopeShape:
    """Shape of K_D^{-1/2,sigma}(x, y), valid for all real x, y"""
    if not sigma > 0:
        raise DomainError(f"sigma must be > 0, got {sigma}")
    r, delta = abs(x) + abs(y), abs(x - y)
    half = log1p_logplus(1.0 / (delta * r)) if delta * r > 0 else math.inf
    log_y = _diagonal_factor(sigma, _log(delta), half, (1.0 - 2.0 * sigma) * math.log1p(abs(x + y)))
    return EnvelopeShape(log_y, delta * r, "osc")


def envelope_conv(params: Params, x: float, y: float, consts: EnvelopeConstants = EnvelopeConstants()) -> Tuple[SignedLogValue, SignedLogValue]:
    """Lower and upper envelope of the convolution-type kernel"""
    return conv_envelope_shape(params, x, y).bounds(consts)


def envelope_dunkl(params: Params, x: float, y: float, consts: EnvelopeConstants = EnvelopeConstants()) -> Tuple[SignedLogValue, SignedLogValue]:
    """Lower and upper envelope of the Dunkl kernel, alpha > -1/2"""
    return dunkl_envelope_shape(params, x, y).bounds(consts)


def envelope_hermite_osc(sigma: float, x: float, y: float, consts: EnvelopeConstants = EnvelopeConstants()) -> Tuple[SignedLogValue, SignedLogValue]:
    """Lower and upper envelope of the alpha = -1/2 Dunkl kernel"""
    return hermite_osc_shape(sigma, x, y).bounds(consts)


# ==================== J/E DECOMPOSITION ====================
@dataclass(frozen=True)
class DecompositionRates:
    """Rates of one side of the J/E decomposition; c1 < c2 feed J"""

    c: float
    c1: float
    c2: float

    def __post_init__(self):
        if not (self.c > 0 and 0 < self.c1 < self.c2):
            raise DomainError(f"decomposition rates need c > 0 and 0 < c1 < c2, got {self}")


@dataclass(frozen=True)
class DecompositionConstants:
    lower: DecompositionRates = DecompositionRates(0.5, 0.25, 0.5)
    upper: DecompositionRates = DecompositionRates(0.125, 0.125, 1.0)


def _je_side(kind: KernelKind, params: Params, x: float, y: float, rates: DecompositionRates) -> SignedLogValue:
    alpha, sigma = params.alpha, params.sigma
    c = rates.c
    xy, s2, d2 = x * y, (x + y) ** 2, (x - y) ** 2
    e_index = sigma - 1.5 if kind is KernelKind.CONVOLUTION else sigma - 0.5
    gauss = SignedLogValue.from_log(-c * s2)
    if xy <= 1:
        j_term = SignedLogValue.from_log((2.0 * sigma - 2.0 * alpha - 2.0) * math.log(s2) / 2.0) * j_integral(
            alpha - sigma, rates.c1 * s2, rates.c2 * s2 / xy
        )
        e_term = SignedLogValue.from_log((sigma - alpha - 1.0) * math.log(xy)) * e_integral(e_index, c * d2 / xy, c * xy * s2)
        return gauss + j_term + e_term
    power = -alpha - 0.5 if kind is KernelKind.CONVOLUTION else -alpha - 1.5
    return gauss + SignedLogValue.from_log(power * math.log(xy)) * e_integral(e_index, c * d2, c * s2)


def exp_je_decomposition(
    kind,
    params: Params,
    x: float,
    y: float,
    consts: DecompositionConstants = DecompositionConstants(),
) -> Tuple[SignedLogValue, SignedLogValue]:
    """
    Three-term (xy <= 1) or two-term (xy > 1) J/E expression of the convolution
    or auxiliary kernel, with the lower and upper rates

    Args:
        kind: KernelKind.CONVOLUTION or KernelKind.DUNKL_AUX
        params: (alpha, sigma)
        x: First argument > 0
        y: Second argument > 0
        consts: Rates used on each side

    Returns:
        tuple: (lower, upper) up to a multiplicative constant
    """
    kind = KernelKind.parse(kind)
    if kind not in (KernelKind.CONVOLUTION, KernelKind.DUNKL_AUX):
        raise DomainError(f"J/E decomposition exists for conv and dunkl_aux only, got {kind.value}")
    if x <= 0 or y <= 0:
        raise DomainError(f"J/E decomposition requires x, y > 0, got ({x}, {y})")
    return _je_side(kind, params, x, y, consts.lower), _je_side(kind, params, x, y, consts.upper)


# ==================== GRIDS ====================
@dataclass
class GridSpec:
    """
    Tensor grid of points with optional filters

    Text form: "spacing:lo:hi:count" optionally followed by ";key=value"
    filters, e.g. "log:0.01:10:50;sum_max=1;offdiag=1e-6;signs=opposite".
    """

    spacing: str = "log"
    lo: float = 0.01
    hi: float = 10.0
    count: int = 20
    sum_min: Optional[float] = None
    sum_max: Optional[float] = None
    offdiag: float = 0.0
    signs: str = "same"

    def __post_init__(self):
        if self.spacing not in ("log", "lin"):
            raise DomainError(f"grid spacing must be 'log' or 'lin', got '{self.spacing}'")
        if self.count < 1 or not self.hi >= self.lo:
            raise DomainError(f"grid needs count >= 1 and hi >= lo, got {self.count}, [{self.lo}, {self.hi}]")
        if self.spacing == "log" and not self.lo > 0:
            raise DomainError(f"log grid needs lo > 0, got {self.lo}")
        if self.signs not in ("same", "opposite", "both"):
            raise DomainError(f"grid signs must be same, opposite or both, got '{self.signs}'")

    @classmethod
    def parse(cls, text: str) -> "GridSpec":
        """Build a GridSpec from its text form"""
        base, *filters = [part.strip() for part in text.split(";") if part.strip()]
        parts = base.split(":")
        if len(parts) != 4:
            raise DomainError(f"grid '{text}' must look like spacing:lo:hi:count")
        try:
            kwargs: Dict[str, Any] = {"spacing": parts[0], "lo": float(parts[1]), "hi": float(parts[2]), "count": int(parts[3])}
            for item in filters:
                key, _, value = item.partition("=")
                if key in ("sum_min", "sum_max", "offdiag"):
                    kwargs[key] = float(value)
                elif key == "signs":
                    kwargs[key] = value
                else:
                    raise DomainError(f"unknown grid filter '{key}'")
        except ValueError as e:
            raise DomainError(f"cannot parse grid '{text}': {e}") from None
        return cls(**kwargs)

    def axis(self) -> np.ndarray:
        if self.count == 1:
            return np.array([self.lo])
        if self.spacing == "log":
            return np.geomspace(self.lo, self.hi, self.count)
        return np.linspace(self.lo, self.hi, self.count)

    def _keep(self, x: float, y: float) -> bool:
        r = abs(x) + abs(y)
        if self.sum_min is not None and not r > self.sum_min:
            return False
        if self.sum_max is not None and not r <= self.sum_max:
            return False
        return abs(x - y) >= self.offdiag * r

    def points(self) -> List[Point]:
        """Grid points after the filters, in a fixed order"""
        axis = [float(v) for v in self.axis()]
        sides = {"same": (1.0,), "opposite": (-1.0,), "both": (1.0, -1.0)}[self.signs]
        pts = [(x, s * y) for x in axis for y in axis for s in sides]
        return [p for p in pts if self._keep(*p)]

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


# ==================== CALIBRATION ====================
SELECTORS = ("conv", "dunkl", "hermite_osc", "aux", "je")


def _shape_for(selector: str, kind: KernelKind, params: Params) -> Callable[[float, float], EnvelopeShape]:
    if selector == "conv":
        if kind is KernelKind.HERMITE_TYPE:
            return lambda x, y: conv_envelope_shape(params, x, y).scaled((params.alpha + 0.5) * math.log(x * y))
        return lambda x, y: conv_envelope_shape(params, x, y)
    if selector == "dunkl":
        return lambda x, y: dunkl_envelope_shape(params, x, y)
    if selector == "hermite_osc":
        return lambda x, y: hermite_osc_shape(params.sigma, x, y)
    if selector == "aux":
        return lambda x, y: dunkl_envelope_shape(params, x, -y)
    raise DomainError(f"unknown envelope selector '{selector}', expected one of: {', '.join(SELECTORS)}")


def _kernel_logs(kind: KernelKind, params: Params, points: List[Point], quad: Optional[QuadratureConfig], workers: Optional[int]) -> List[float]:
    logs = []
    for point, result in zip(points, potential_kernel_grid(kind, params, points, quad, workers)):
        value = result.value
        if value.is_infinite:
            raise SingularPointError(f"{kind.value} kernel is infinite at {point}")
        if value.sign <= 0:
            raise DomainError(f"{kind.value} kernel is not positive at {point}; no envelope applies")
        logs.append(value.log_abs)
    return logs


def _calibrate_je(kind: KernelKind, params: Params, points: List[Point], logs: List[float], grid: Any, workers: Optional[int]) -> RatioReport:
    consts = DecompositionConstants()
    sides = parallel_map(lambda p: exp_je_decomposition(kind, params, p[0], p[1], consts), points, workers, "J/E")
    lower = np.array([lo.log_abs for lo, _ in sides])
    upper = np.array([up.log_abs for _, up in sides])
    v = np.asarray(logs)
    if not (np.isfinite(lower).all() and np.isfinite(upper).all()):
        bad = int(np.argmax(~(np.isfinite(lower) & np.isfinite(upper))))
        raise SingularPointError(f"J/E decomposition is not finite at {points[bad]}")
    ratios = v - 0.5 * (lower + upper)
    log_c = max(0.0, float(np.max(lower - v)), float(np.max(v - upper)))
    i_min, i_max = int(np.argmin(ratios)), int(np.argmax(ratios))
    return RatioReport(
        min_ratio=math.exp(ratios[i_min]),
        max_ratio=math.exp(ratios[i_max]),
        argmin=points[i_min],
        argmax=points[i_max],
        fitted=EnvelopeConstants(math.exp(log_c), consts.lower.c, consts.upper.c),
        grid=grid,
        points=len(points),
        cases={"xy<=1": sum(1 for x, y in points if x * y <= 1), "xy>1": sum(1 for x, y in points if x * y > 1)},
    )


def calibrate_envelope(
    kind,
    params: Params,
    grid: GridSpec,
    selector: str = "conv",
    quad: Optional[QuadratureConfig] = None,
    workers: Optional[int] = None,
) -> RatioReport:
    """
    Fit a certificate (C, c_lower, c_upper) for one envelope over a grid

    Args:
        kind: Kernel evaluated at the grid points
        params: (alpha, sigma)
        grid: Points to sweep
        selector: Envelope family: conv, dunkl, hermite_osc, aux or je
        quad: Quadrature settings
        workers: Thread cap for the sweep

    Returns:
        RatioReport: Extremes of kernel / envelope and the fitted certificate

    Raises:
        SingularPointError: A grid point where the kernel or envelope is infinite
    """
    kind = KernelKind.parse(kind)
    points = grid.points()
    if not points:
        raise DomainError(f"grid {grid.to_dict()} has no points after filtering")
    logger.info(f"Calibrating '{selector}' envelope for {kind.value} kernel, {params}, {len(points)} points")
    logs = _kernel_logs(kind, params, points, quad, workers)

    if selector == "je":
        report = _calibrate_je(kind, params, points, logs, grid, workers)
    else:
        shape_of = _shape_for(selector, kind, params)
        shapes = [shape_of(x, y) for x, y in points]
        report = calibrate_shapes(logs, shapes, points, config.c_grid(), grid)

    logger.info(f"Certificate: C={report.C_ratio:.4g}, c_lower={report.fitted.c_lower:.4g}, c_upper={report.fitted.c_upper:.4g}")
    return report


@dataclass(frozen=True)
class CertificateCheck:
    """A certificate tested on points it was not fitted on, with the refit those points give"""

    certificate: EnvelopeConstants
    holds: bool
    failures: int
    worst_log_excess: float
    refit: RatioReport

    def to_dict(self) -> Dict[str, Any]:
        return {
            "certificate": self.certificate.to_dict(),
            "holds": self.holds,
            "failures": self.failures,
            "worst_log_excess": self.worst_log_excess,
            "refit": self.refit.to_dict(),
        }


def check_certificate(
    kind,
    params: Params,
    grid: GridSpec,
    certificate: EnvelopeConstants,
    selector: str = "conv",
    quad: Optional[QuadratureConfig] = None,
    workers: Optional[int] = None,
) -> CertificateCheck:
    """
    Test a fixed certificate on every point of a grid

    Args:
        kind: Kernel evaluated at the grid points
        params: (alpha, sigma)
        grid: Points to test, typically finer than the calibration grid
        certificate: Constants under test
        selector: Envelope family: conv, dunkl, hermite_osc or aux
        quad: Quadrature settings
        workers: Thread cap for the sweep

    Returns:
        CertificateCheck: Whether the sandwich holds everywhere, the worst
        log-excess over the band (<= 0 when it holds) and the certificate
        the same values would have produced
    """
    kind = KernelKind.parse(kind)
    if selector == "je":
        raise DomainError("J/E certificates carry fixed rates; check them with calibrate_envelope")
    points = grid.points()
    if not points:
        raise DomainError(f"grid {grid.to_dict()} has no points after filtering")
    logs = _kernel_logs(kind, params, points, quad, workers)
    shape_of = _shape_for(selector, kind, params)
    shapes = [shape_of(x, y) for x, y in points]

    failures, worst = 0, -math.inf
    for v, shape in zip(logs, shapes):
        bounds = shape.bounds(certificate)
        worst = max(worst, bounds[0].log_abs - v, v - bounds[1].log_abs)
        if not sandwich_holds(SignedLogValue.from_log(v), bounds):
            failures += 1
    refit = calibrate_shapes(logs, shapes, points, config.c_grid(), grid)
    logger.info(f"Certificate C={certificate.C_ratio:.4g} checked on {len(points)} points: {failures} failure(s), refit C={refit.C_ratio:.4g}")
    return CertificateCheck(certificate, failures == 0, failures, worst, refit)
