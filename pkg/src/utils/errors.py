"""
Exception hierarchy of the kernel toolkit.

Divergent quantities are never raised: they come back as +inf values.
"""


class LplError(Exception):
    """Root of all toolkit errors"""


class DomainError(LplError, ValueError):
    """A parameter or argument lies outside the domain of an operation"""


class SingularPointError(DomainError):
    """A calibration grid touches a point where the kernel is infinite"""


class QuadratureError(LplError, ArithmeticError):
    """A quadrature produced NaN or could not evaluate a panel"""


class ArithmeticDomainError(LplError, ArithmeticError):
    """An undefined operation on signed log values (inf - inf, 0 * inf)"""
