"""
Exact L^p-L^q boundedness regions of the potential operators.

Points are (1/p, 1/q) in the unit square, 0 encoding p or q = inf. Every
coordinate and parameter is converted to a Fraction (floats through their
shortest decimal repr), so points lying exactly on a boundary line are
decided exactly.
"""

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

import pandas as pd

from src.utils.errors import DomainError

Number = Union[int, float, Fraction, str]

HALF = Fraction(1, 2)
SETTINGS = ("conv", "hermite_type", "dunkl")


def as_fraction(value: Number) -> Fraction:
    """Exact rational for an int, Fraction, decimal string or float (via repr)"""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        if not math.isfinite(value):
            raise DomainError(f"expected a finite number, got {value}")
        return Fraction(repr(value))
    return Fraction(value)


def _fmt(v: Fraction) -> str:
    return str(v) if v.denominator != 1 else str(v.numerator)


# ==================== DOMAIN TYPES ====================
@dataclass(frozen=True)
class RegionPoint:
    """(1/p, 1/q) in [0, 1]**2"""

    inv_p: Fraction
    inv_q: Fraction

    def __post_init__(self):
        for name in ("inv_p", "inv_q"):
            value = as_fraction(getattr(self, name))
            if not 0 <= value <= 1:
                raise DomainError(f"{name} must lie in [0, 1], got {value}")
            object.__setattr__(self, name, value)

    @classmethod
    def from_exponents(cls, p: float, q: float) -> "RegionPoint":
        """Point for exponents 1 <= p, q <= inf"""
        def inv(e: float) -> Fraction:
            if e == math.inf:
                return Fraction(0)
            if not e >= 1:
                raise DomainError(f"exponent must be >= 1, got {e}")
            return 1 / as_fraction(e)

        return cls(inv(p), inv(q))

    @property
    def dual(self) -> "RegionPoint":
        """(1/q', 1/p')"""
        return RegionPoint(1 - self.inv_q, 1 - self.inv_p)


@dataclass(frozen=True)
class Verdict:
    bounded: bool
    rule: str
    binding_constraint: str


@dataclass(frozen=True)
class DerivedExponents:
    """delta = ((-1/2) v alpha) + 1 and eta = 1/2 v (-alpha)"""

    delta: Fraction
    eta: Fraction


def derived_exponents(alpha: Number) -> DerivedExponents:
    a = as_fraction(alpha)
    return DerivedExponents(delta=max(-HALF, a) + 1, eta=max(HALF, -a))


@dataclass(frozen=True)
class Constraint:
    """a * inv_p + b * inv_q + c >= 0 (or > 0 when strict)"""

    name: str
    a: Fraction
    b: Fraction
    c: Fraction
    strict: bool = False

    def value(self, x: Fraction, y: Fraction) -> Fraction:
        return self.a * x + self.b * y + self.c

    def holds(self, x: Fraction, y: Fraction) -> bool:
        v = self.value(x, y)
        return v > 0 if self.strict else v >= 0


@dataclass
class Region:
    """Intersection of half-planes in the unit square minus excluded points"""

    setting: str
    case: str
    constraints: List[Constraint] = field(default_factory=list)
    excluded: Dict[Tuple[Fraction, Fraction], str] = field(default_factory=dict)

    def lower_strip(self, width: Fraction, label: str) -> "Region":
        self.constraints.append(Constraint(f"1/q >= 1/p - {label}", Fraction(-1), Fraction(1), width))
        return self

    def upper_strip(self, width: Fraction, label: str) -> "Region":
        self.constraints.append(Constraint(f"1/q < 1/p + {label}", Fraction(1), Fraction(-1), width, strict=True))
        return self

    def exclude_corners(self, width: Fraction, label: str) -> "Region":
        self.excluded[(width, Fraction(0))] = f"({label}, 0)"
        self.excluded[(Fraction(1), 1 - width)] = f"(1, 1-{label})"
        return self

    def contains(self, x: Fraction, y: Fraction) -> bool:
        return (x, y) not in self.excluded and all(c.holds(x, y) for c in self.constraints)

    def verdict(self, pt: RegionPoint) -> Verdict:
        """Decide pt; the binding constraint is the first violated one, or the tightest satisfied one"""
        x, y = pt.inv_p, pt.inv_q
        prefix = f"{self.setting}, {self.case}"
        for c in self.constraints:
            if not c.holds(x, y):
                return Verdict(False, f"{prefix}: {c.name}", c.name)
        if (x, y) in self.excluded:
            name = f"excluded corner {self.excluded[(x, y)]}"
            return Verdict(False, f"{prefix}: {name}", name)
        if not self.constraints:
            return Verdict(True, f"{prefix}: unconstrained", "none")
        tightest = min(self.constraints, key=lambda c: c.value(x, y) / max(abs(c.a), abs(c.b)))
        return Verdict(True, f"{prefix}: {tightest.name}", tightest.name)


# ==================== REGIONS ====================
def _check(alpha: Number, sigma: Number) -> Tuple[Fraction, Fraction]:
    a, s = as_fraction(alpha), as_fraction(sigma)
    if not a > -1:
        raise DomainError(f"alpha must be > -1, got {a}")
    if not s > 0:
        raise DomainError(f"sigma must be > 0, got {s}")
    return a, s


def conv_region(alpha: Number, sigma: Number, setting: str = "conv") -> Region:
    """Region of the convolution-type (and Dunkl) operator"""
    a, s = _check(alpha, sigma)
    if a >= -HALF:
        width = s / (a + 1)
        region = Region(setting, "alpha >= -1/2")
        return region.lower_strip(width, "sigma/(alpha+1)").upper_strip(width, "sigma/(alpha+1)").exclude_corners(width, "sigma/(alpha+1)")
    region = Region(setting, "alpha < -1/2")
    return region.lower_strip(-s / a, "sigma/|alpha|").upper_strip(s / (a + 1), "sigma/(alpha+1)")


def _dom_constraint(a: Fraction) -> Constraint:
    return Constraint("Dom restriction 1/p < alpha + 3/2", Fraction(-1), Fraction(0), a + Fraction(3, 2), strict=True)


def _pencil_constraint(a: Fraction) -> Constraint:
    return Constraint("1/q > -alpha - 1/2", Fraction(0), Fraction(1), a + HALF, strict=True)


def hermite_region(alpha: Number, sigma: Number) -> Region:
    """Region of the Hermite-type operator on L^p(dx)"""
    a, s = _check(alpha, sigma)
    if a >= -HALF:
        region = Region("hermite_type", "alpha >= -1/2")
        return region.lower_strip(2 * s, "2sigma").upper_strip(2 * s, "2sigma").exclude_corners(2 * s, "2sigma")
    region = Region("hermite_type", "alpha < -1/2", [_dom_constraint(a)])
    region.lower_strip(2 * s, "2sigma").upper_strip(2 * s, "2sigma")
    region.constraints.append(_pencil_constraint(a))
    return region


def local_conv_region(alpha: Number, sigma: Number) -> Region:
    a, s = _check(alpha, sigma)
    delta = derived_exponents(a).delta
    return Region("conv local", f"delta = {_fmt(delta)}").lower_strip(s / delta, "sigma/delta").exclude_corners(s / delta, "sigma/delta")


def global_conv_region(alpha: Number, sigma: Number) -> Region:
    a, s = _check(alpha, sigma)
    eta = derived_exponents(a).eta
    region = Region("conv global", f"eta = {_fmt(eta)}").lower_strip(s / eta, "sigma/eta").upper_strip(s / (a + 1), "sigma/(alpha+1)")
    if eta == HALF and s <= HALF:
        region.exclude_corners(2 * s, "2sigma")
    return region


def local_hermite_region(alpha: Number, sigma: Number) -> Region:
    a, s = _check(alpha, sigma)
    if a >= -HALF:
        return Region("hermite local", "alpha >= -1/2").lower_strip(2 * s, "2sigma").exclude_corners(2 * s, "2sigma")
    region = Region("hermite local", "alpha < -1/2", [_dom_constraint(a)]).lower_strip(2 * s, "2sigma")
    region.constraints.append(_pencil_constraint(a))
    return region


def bounded_conv(alpha: Number, sigma: Number, pt: RegionPoint) -> Verdict:
    """L^p(dmu_alpha) -> L^q(dmu_alpha) boundedness of the convolution-type operator"""
    return conv_region(alpha, sigma).verdict(pt)


def bounded_dunkl(alpha: Number, sigma: Number, pt: RegionPoint) -> Verdict:
    """L^p(dw_alpha) -> L^q(dw_alpha) boundedness of the Dunkl operator"""
    return conv_region(alpha, sigma, setting="dunkl").verdict(pt)


def bounded_hermite_type(alpha: Number, sigma: Number, pt: RegionPoint) -> Verdict:
    """
    L^p(dx) -> L^q(dx) boundedness of the Hermite-type operator

    For alpha < -1/2 a point with 1/p >= alpha + 3/2 is reported unbounded
    with the "Dom restriction" constraint: L^p is not inside the domain.
    """
    return hermite_region(alpha, sigma).verdict(pt)


def bounded_local_conv(alpha: Number, sigma: Number, pt: RegionPoint) -> Verdict:
    return local_conv_region(alpha, sigma).verdict(pt)


def bounded_global_conv(alpha: Number, sigma: Number, pt: RegionPoint) -> Verdict:
    return global_conv_region(alpha, sigma).verdict(pt)


def bounded_local_hermite(alpha: Number, sigma: Number, pt: RegionPoint) -> Verdict:
    return local_hermite_region(alpha, sigma).verdict(pt)


def hermite_domain_contains(alpha: Number, inv_p: Number) -> bool:
    """Whether L^p(dx) lies in the natural domain of the Hermite-type operator"""
    a, x = as_fraction(alpha), as_fraction(inv_p)
    if not 0 <= x <= 1:
        raise DomainError(f"inv_p must lie in [0, 1], got {x}")
    return a >= -HALF or x < a + Fraction(3, 2)


def figure_case(alpha: Number, sigma: Number) -> Optional[str]:
    """Shape label b1-b4 of the Hermite-type region for alpha < -1/2, sigma < 1/2"""
    a, s = _check(alpha, sigma)
    if not (a < -HALF and s < HALF):
        return None
    pivot = -a / 2 - Fraction(1, 4)
    if s >= a + 1:
        return "b1" if s > pivot else "b3"
    return "b2" if s > pivot else "b4"


# ==================== FIGURE DATA ====================
_SQUARE = [(Fraction(0), Fraction(0)), (Fraction(1), Fraction(0)), (Fraction(1), Fraction(1)), (Fraction(0), Fraction(1))]
_SQUARE_SIDES = [
    Constraint("1/p >= 0", Fraction(1), Fraction(0), Fraction(0)),
    Constraint("1/p <= 1", Fraction(-1), Fraction(0), Fraction(1)),
    Constraint("1/q >= 0", Fraction(0), Fraction(1), Fraction(0)),
    Constraint("1/q <= 1", Fraction(0), Fraction(-1), Fraction(1)),
]


def _clip(polygon: List[Tuple[Fraction, Fraction]], c: Constraint) -> List[Tuple[Fraction, Fraction]]:
    """Sutherland-Hodgman step against the closure of one half-plane"""
    out: List[Tuple[Fraction, Fraction]] = []
    n = len(polygon)
    for i in range(n):
        cur, nxt = polygon[i], polygon[(i + 1) % n]
        v_cur, v_nxt = c.value(*cur), c.value(*nxt)
        if v_cur >= 0:
            out.append(cur)
        if (v_cur > 0 > v_nxt) or (v_cur < 0 < v_nxt):
            t = v_cur / (v_cur - v_nxt)
            out.append((cur[0] + t * (nxt[0] - cur[0]), cur[1] + t * (nxt[1] - cur[1])))
    deduped = []
    for p in out:
        if not deduped or deduped[-1] != p:
            deduped.append(p)
    if len(deduped) > 1 and deduped[0] == deduped[-1]:
        deduped.pop()
    return deduped


@dataclass
class Segment:
    segment_id: int
    start: Tuple[Fraction, Fraction]
    end: Tuple[Fraction, Fraction]
    closed: bool
    closed_start: bool
    closed_end: bool
    label: str


@dataclass
class FigureData:
    """Boundary of a region with open/closed annotations and a membership sample"""

    setting: str
    alpha: Fraction
    sigma: Fraction
    case_label: Optional[str]
    vertices: List[Tuple[Fraction, Fraction]]
    segments: List[Segment]
    samples: List[Tuple[float, float, bool]]

    def to_frame(self) -> pd.DataFrame:
        """One row per boundary segment"""
        rows = [
            {
                "segment_id": s.segment_id,
                "x0": float(s.start[0]),
                "y0": float(s.start[1]),
                "x1": float(s.end[0]),
                "y1": float(s.end[1]),
                "closed_start": s.closed_start,
                "closed_end": s.closed_end,
                "label": s.label if s.closed else f"{s.label} (open)",
            }
            for s in self.segments
        ]
        columns = ["segment_id", "x0", "y0", "x1", "y1", "closed_start", "closed_end", "label"]
        return pd.DataFrame(rows, columns=columns)

    def to_dict(self) -> Dict[str, Any]:
        return {
            "setting": self.setting,
            "alpha": float(self.alpha),
            "sigma": float(self.sigma),
            "case_label": self.case_label,
            "vertices": [[float(x), float(y)] for x, y in self.vertices],
            "segments": self.to_frame().to_dict(orient="records"),
            "samples": [{"inv_p": x, "inv_q": y, "bounded": b} for x, y, b in self.samples],
        }


def _segment_label(region: Region, a: Tuple[Fraction, Fraction], b: Tuple[Fraction, Fraction]) -> str:
    for c in region.constraints + _SQUARE_SIDES:
        if c.value(*a) == 0 and c.value(*b) == 0:
            return c.name
    return "boundary"


def region_for(setting: str, alpha: Number, sigma: Number) -> Region:
    if setting == "conv":
        return conv_region(alpha, sigma)
    if setting == "dunkl":
        return conv_region(alpha, sigma, setting="dunkl")
    if setting == "hermite_type":
        return hermite_region(alpha, sigma)
    raise DomainError(f"unknown setting '{setting}', expected one of: {', '.join(SETTINGS)}")


def figure_data(setting: str, alpha: Number, sigma: Number, resolution: int = 11) -> FigureData:
    """
    Boundary geometry of a boundedness region

    Args:
        setting: conv, hermite_type or dunkl
        alpha: Parameter > -1
        sigma: Parameter > 0
        resolution: Side of the membership sample grid, >= 2

    Returns:
        FigureData: Polygon, segments flagged open/closed, Hermite-type case label
    """
    if resolution < 2:
        raise DomainError(f"resolution must be >= 2, got {resolution}")
    region = region_for(setting, alpha, sigma)
    a, s = as_fraction(alpha), as_fraction(sigma)

    polygon = list(_SQUARE)
    for c in region.constraints:
        polygon = _clip(polygon, c)
        if not polygon:
            break

    segments: List[Segment] = []
    n = len(polygon)
    edges: Sequence[Tuple[int, int]] = [(i, (i + 1) % n) for i in range(n)] if n > 2 else ([(0, 1)] if n == 2 else [])
    for k, (i, j) in enumerate(edges):
        p0, p1 = polygon[i], polygon[j]
        mid = ((p0[0] + p1[0]) / 2, (p0[1] + p1[1]) / 2)
        segments.append(
            Segment(
                segment_id=k,
                start=p0,
                end=p1,
                closed=region.contains(*mid),
                closed_start=region.contains(*p0),
                closed_end=region.contains(*p1),
                label=_segment_label(region, p0, p1),
            )
        )

    step = Fraction(1, resolution - 1)
    samples = []
    for i in range(resolution):
        for j in range(resolution):
            x, y = i * step, j * step
            samples.append((float(x), float(y), region.contains(x, y)))

    return FigureData(
        setting=setting,
        alpha=a,
        sigma=s,
        case_label=figure_case(a, s) if setting == "hermite_type" else None,
        vertices=polygon,
        segments=segments,
        samples=samples,
    )
