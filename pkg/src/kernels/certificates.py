"""
Envelope constants and their calibration.

An envelope is a shape Y * exp(-c Z); a certificate (C, c_lower, c_upper)
asserts

    Y exp(-c_lower Z) / C  <=  value  <=  C Y exp(-c_upper Z).
"""

import math
from dataclasses import dataclass, field
from typing import Any, Dict, Sequence, Tuple

import numpy as np

from src.kernels.signed_log import SignedLogValue
from src.utils.errors import DomainError, SingularPointError

Point = Tuple[float, ...]


@dataclass(frozen=True)
class EnvelopeConstants:
    """Constants hidden in a two-sided estimate"""

    C_ratio: float = 1.0
    c_lower: float = 1.0
    c_upper: float = 1.0

    def __post_init__(self):
        if not self.C_ratio >= 1:
            raise DomainError(f"C_ratio must be >= 1, got {self.C_ratio}")
        if not self.c_upper > 0:
            raise DomainError(f"c_upper must be > 0, got {self.c_upper}")
        if not self.c_lower >= self.c_upper:
            raise DomainError(f"c_lower ({self.c_lower}) must be >= c_upper ({self.c_upper})")

    def to_dict(self) -> Dict[str, float]:
        return {"C_ratio": self.C_ratio, "c_lower": self.c_lower, "c_upper": self.c_upper}


@dataclass(frozen=True)
class EnvelopeShape:
    """Y exp(-c Z) in log form, tagged with the case that produced it"""

    log_y: float
    z: float = 0.0
    case: str = ""

    def log_at(self, c: float) -> float:
        if self.log_y in (math.inf, -math.inf):
            return self.log_y
        return self.log_y - c * self.z

    def bounds(self, consts: EnvelopeConstants) -> Tuple[SignedLogValue, SignedLogValue]:
        """
        Lower and upper envelope for the given constants

        Args:
            consts: Certificate constants

        Returns:
            tuple: (lower, upper) SignedLogValues
        """
        log_c = math.log(consts.C_ratio)
        lower = SignedLogValue.from_log(self.log_at(consts.c_lower) - log_c)
        upper = SignedLogValue.from_log(self.log_at(consts.c_upper) + log_c)
        return lower, upper

    def scaled(self, log_factor: float) -> "EnvelopeShape":
        return EnvelopeShape(self.log_y + log_factor, self.z, self.case)


@dataclass
class RatioReport:
    """Extremes of value / envelope over a grid, with the fitted certificate"""

    min_ratio: float
    max_ratio: float
    argmin: Point
    argmax: Point
    fitted: EnvelopeConstants
    grid: Any = None
    points: int = 0
    cases: Dict[str, int] = field(default_factory=dict)

    @property
    def C_ratio(self) -> float:
        return self.fitted.C_ratio

    def to_dict(self) -> Dict[str, Any]:
        return {
            "min_ratio": self.min_ratio,
            "max_ratio": self.max_ratio,
            "argmin": list(self.argmin),
            "argmax": list(self.argmax),
            "fitted": self.fitted.to_dict(),
            "grid": self.grid.to_dict() if hasattr(self.grid, "to_dict") else self.grid,
            "points": self.points,
            "cases": dict(self.cases),
        }


def calibrate_shapes(
    log_values: Sequence[float],
    shapes: Sequence[EnvelopeShape],
    points: Sequence[Point],
    c_grid: np.ndarray,
    grid: Any = None,
    slack: float = math.log(2.0),
) -> RatioReport:
    """
    Fit the tightest certificate sandwiching the values

    The lower rate is the smallest grid value whose constant is within
    `slack` of the best achievable one, the upper rate the largest such
    value; if they cross, both collapse onto a common rate.

    Args:
        log_values: Log of the (positive) values
        shapes: Envelope shape at each point
        points: Coordinates reported for the extremes
        c_grid: Increasing grid of exponential rates
        grid: Grid description echoed in the report
        slack: Tolerated log-excess over the best constant

    Returns:
        RatioReport: Extremes and certificate
    """
    if not points:
        raise DomainError("calibration needs at least one point")
    v = np.asarray(log_values, dtype=float)
    y = np.array([s.log_y for s in shapes], dtype=float)
    z = np.array([s.z for s in shapes], dtype=float)
    bad = ~(np.isfinite(v) & np.isfinite(y))
    if bad.any():
        raise SingularPointError(f"kernel or envelope is not finite and positive at {points[int(np.argmax(bad))]}")

    c = np.asarray(c_grid, dtype=float)
    if not (z > 0).any():
        c_lower = c_upper = 1.0
        log_c = max(0.0, float(np.max(y - v)), float(np.max(v - y)))
    else:
        lower_need = np.max(y[:, None] - c[None, :] * z[:, None] - v[:, None], axis=0)
        upper_need = np.max(v[:, None] - y[:, None] + c[None, :] * z[:, None], axis=0)
        i_low = int(np.argmax(lower_need <= lower_need[-1] + slack))
        i_up = int(len(c) - 1 - np.argmax((upper_need <= upper_need[0] + slack)[::-1]))
        if i_up > i_low:
            i_low = i_up = (i_low + i_up) // 2
        c_lower, c_upper = float(c[i_low]), float(c[i_up])
        log_c = max(0.0, float(lower_need[i_low]), float(upper_need[i_up]))

    c_ref = math.sqrt(c_lower * c_upper)
    ratios = v - (y - c_ref * z)
    i_min, i_max = int(np.argmin(ratios)), int(np.argmax(ratios))
    cases: Dict[str, int] = {}
    for s in shapes:
        cases[s.case] = cases.get(s.case, 0) + 1
    return RatioReport(
        min_ratio=math.exp(ratios[i_min]),
        max_ratio=math.exp(ratios[i_max]),
        argmin=tuple(points[i_min]),
        argmax=tuple(points[i_max]),
        fitted=EnvelopeConstants(math.exp(log_c), c_lower, c_upper),
        grid=grid,
        points=len(points),
        cases=cases,
    )


def comparability_band(log_ratios: Sequence[float]) -> Tuple[float, float, float]:
    """
    Band of a ratio family

    Returns:
        tuple: (min ratio, max ratio, C) with C = max(max, 1/min)
    """
    r = np.asarray(log_ratios, dtype=float)
    lo, hi = float(np.min(r)), float(np.max(r))
    return math.exp(lo), math.exp(hi), math.exp(max(hi, -lo, 0.0))


def sandwich_holds(value: SignedLogValue, bounds: Tuple[SignedLogValue, SignedLogValue], rel: float = 1e-9) -> bool:
    """lower <= value <= upper up to a relative rounding allowance"""
    lower, upper = bounds
    if value.sign <= 0:
        return False
    return value.log_abs >= lower.log_abs - rel and value.log_abs <= upper.log_abs + rel
