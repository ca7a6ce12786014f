"""
Sign and log-magnitude representation of extended reals.

Kernel values span hundreds of orders of magnitude and the Dunkl kernel
changes sign, so every value leaving the numerics layer is a SignedLogValue.
"""

import math
from dataclasses import dataclass
from typing import Iterable, Tuple, Union

import numpy as np
from scipy.special import logsumexp

from src.utils.errors import ArithmeticDomainError

Real = Union[int, float]

_LOG_MAX = math.log(np.finfo(float).max)
_EPS = np.finfo(float).eps


@dataclass(frozen=True)
class SignedLogValue:
    """sign * exp(log_abs), with sign in {-1, 0, +1}"""

    sign: int
    log_abs: float

    def __post_init__(self):
        if self.sign not in (-1, 0, 1):
            raise ArithmeticDomainError(f"sign must be -1, 0 or 1, got {self.sign}")
        if math.isnan(self.log_abs):
            raise ArithmeticDomainError("log_abs is NaN")
        if (self.sign == 0) != (self.log_abs == -math.inf):
            raise ArithmeticDomainError(
                f"sign 0 requires log_abs = -inf (got sign={self.sign}, log_abs={self.log_abs})"
            )

    # ==================== CONSTRUCTORS ====================
    @classmethod
    def zero(cls) -> "SignedLogValue":
        return cls(0, -math.inf)

    @classmethod
    def infinity(cls, sign: int = 1) -> "SignedLogValue":
        return cls(sign, math.inf)

    @classmethod
    def from_real(cls, value: Real) -> "SignedLogValue":
        """
        Convert an ordinary float

        Args:
            value: Finite or infinite real

        Returns:
            SignedLogValue: Exact representation of value
        """
        if math.isnan(value):
            raise ArithmeticDomainError("cannot represent NaN")
        if value == 0:
            return cls.zero()
        return cls(1 if value > 0 else -1, math.log(abs(value)))

    @classmethod
    def from_log(cls, log_abs: float, sign: int = 1) -> "SignedLogValue":
        if sign == 0 or log_abs == -math.inf:
            return cls.zero()
        return cls(sign, float(log_abs))

    # ==================== PREDICATES ====================
    @property
    def is_zero(self) -> bool:
        return self.sign == 0

    @property
    def is_infinite(self) -> bool:
        return self.log_abs == math.inf

    @property
    def is_finite(self) -> bool:
        return not self.is_infinite

    # ==================== CONVERSION ====================
    def to_real(self) -> float:
        """Ordinary float, overflowing to +-inf and underflowing to 0"""
        if self.sign == 0:
            return 0.0
        if self.log_abs > _LOG_MAX:
            return self.sign * math.inf
        return self.sign * math.exp(self.log_abs)

    def __float__(self) -> float:
        return self.to_real()

    # ==================== ARITHMETIC ====================
    def __neg__(self) -> "SignedLogValue":
        return SignedLogValue(-self.sign, self.log_abs)

    def __abs__(self) -> "SignedLogValue":
        return SignedLogValue(abs(self.sign), self.log_abs)

    def __mul__(self, other: Union["SignedLogValue", Real]) -> "SignedLogValue":
        other = _coerce(other)
        if self.is_zero or other.is_zero:
            if self.is_infinite or other.is_infinite:
                raise ArithmeticDomainError("0 * inf is undefined")
            return SignedLogValue.zero()
        return SignedLogValue(self.sign * other.sign, self.log_abs + other.log_abs)

    __rmul__ = __mul__

    def __truediv__(self, other: Union["SignedLogValue", Real]) -> "SignedLogValue":
        other = _coerce(other)
        if other.is_zero:
            raise ArithmeticDomainError("division by zero")
        if self.is_infinite and other.is_infinite:
            raise ArithmeticDomainError("inf / inf is undefined")
        if self.is_zero:
            return SignedLogValue.zero()
        return SignedLogValue(self.sign * other.sign, self.log_abs - other.log_abs)

    def __pow__(self, exponent: Real) -> "SignedLogValue":
        if self.sign < 0:
            raise ArithmeticDomainError("real powers of negative values are undefined")
        if self.is_zero:
            if exponent > 0:
                return SignedLogValue.zero()
            if exponent == 0:
                return SignedLogValue(1, 0.0)
            return SignedLogValue.infinity()
        return SignedLogValue.from_log(exponent * self.log_abs)

    def __add__(self, other: Union["SignedLogValue", Real]) -> "SignedLogValue":
        return self.subtract_with_accuracy(-_coerce(other))[0]

    __radd__ = __add__

    def __sub__(self, other: Union["SignedLogValue", Real]) -> "SignedLogValue":
        return self.subtract_with_accuracy(_coerce(other))[0]

    def __rsub__(self, other: Real) -> "SignedLogValue":
        return _coerce(other) - self

    def subtract_with_accuracy(self, other: "SignedLogValue") -> Tuple["SignedLogValue", float]:
        """
        Compute self - other and the relative accuracy achieved

        Args:
            other: Subtrahend

        Returns:
            tuple: (difference, bound on its relative rounding error)
        """
        if self.is_infinite and other.is_infinite and self.sign == other.sign:
            raise ArithmeticDomainError("inf - inf is undefined")
        result = signed_logsumexp([self.log_abs, other.log_abs], [self.sign, -other.sign])
        if result.is_zero or result.is_infinite:
            return result, 0.0
        if self.sign == -other.sign or self.is_zero or other.is_zero:
            return result, 2 * _EPS
        # cancellation amplifies the operands' rounding by their size relative to the result
        scale = max(self.log_abs, other.log_abs)
        return result, min(1.0, 2 * _EPS * math.exp(scale - result.log_abs))

    # ==================== COMPARISON ====================
    def __lt__(self, other: Union["SignedLogValue", Real]) -> bool:
        return (self - _coerce(other)).sign < 0

    def __le__(self, other: Union["SignedLogValue", Real]) -> bool:
        return (self - _coerce(other)).sign <= 0

    def __gt__(self, other: Union["SignedLogValue", Real]) -> bool:
        return _coerce(other) < self

    def __ge__(self, other: Union["SignedLogValue", Real]) -> bool:
        return _coerce(other) <= self

    def __repr__(self) -> str:
        return f"SignedLogValue(sign={self.sign}, log_abs={self.log_abs!r})"


def _coerce(value: Union[SignedLogValue, Real]) -> SignedLogValue:
    if isinstance(value, SignedLogValue):
        return value
    return SignedLogValue.from_real(value)


def signed_logsumexp(log_abs: Iterable[float], signs: Iterable[int]) -> SignedLogValue:
    """
    Sum of signed terms given in log-magnitude form

    Args:
        log_abs: Log-magnitudes of the terms (may contain -inf and +inf)
        signs: Signs of the terms

    Returns:
        SignedLogValue: The exact-as-possible sum
    """
    logs = np.asarray(list(log_abs), dtype=float)
    sgn = np.asarray(list(signs), dtype=float)
    live = (sgn != 0) & (logs > -np.inf)
    logs, sgn = logs[live], sgn[live]
    if logs.size == 0:
        return SignedLogValue.zero()
    infinite = logs == np.inf
    if infinite.any():
        inf_signs = set(np.sign(sgn[infinite]).astype(int).tolist())
        if len(inf_signs) > 1:
            raise ArithmeticDomainError("inf - inf is undefined")
        return SignedLogValue.infinity(inf_signs.pop())
    value, sign = logsumexp(logs, b=sgn, return_sign=True)
    if sign == 0 or value == -np.inf:
        return SignedLogValue.zero()
    return SignedLogValue(int(sign), float(value))


def log_diff_exp(a: float, b: float) -> float:
    """log(exp(a) - exp(b)) for a >= b"""
    if b == -math.inf:
        return a
    if a == b:
        return -math.inf
    return a + math.log(-math.expm1(b - a))
