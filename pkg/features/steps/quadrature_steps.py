"""
Step definitions for the log-domain quadrature
"""

import math

import numpy as np
from behave import when, then # type: ignore
from assertpy import assert_that # type: ignore
from src.kernels.quadrature import composite_log_integral, endpoint_log_integral, integrate
from src.utils.errors import QuadratureError
from src.utils.logger import logger


@when('I integrate exp over [{a:g}, {b:g}]')
def step_integrate_exp(context, a, b):
    """Ordinary real integrand"""
    context.result = integrate(np.exp, a, b, context.quad)


@when('I integrate d^(-1/2) over [0, 1] from the endpoint')
def step_integrate_endpoint_singularity(context):
    """Integrand fed the exact distance to the singular endpoint"""
    context.result = endpoint_log_integral(lambda d: (np.ones_like(d), -0.5 * np.log(d)), 1.0, context.quad)


@when('I integrate exp(-2000 - s) over [0, 1] in the log domain')
def step_integrate_tiny(context):
    """Integrand whose values underflow as floats"""
    context.result = composite_log_integral(lambda s: (np.ones_like(s), -2000.0 - s), [0.0, 1.0], context.quad)


@when('I integrate an integrand that returns NaN')
def step_integrate_nan(context):
    """Integrand producing NaN everywhere"""
    try:
        composite_log_integral(lambda s: (np.ones_like(s), np.full_like(s, np.nan)), [0.0, 1.0], context.quad)
    except QuadratureError as e:
        context.error = e


@then('the integral equals e - 1 within {tol:g}')
def step_verify_e_minus_one(context, tol):
    """int_0^1 e^s ds"""
    assert_that(context.result.value.to_real()).is_close_to(math.e - 1.0, tol)
    logger.info("Verified: int exp = e - 1")


@then('the integral equals 1 - e within {tol:g}')
def step_verify_one_minus_e(context, tol):
    """Reversed limits"""
    assert_that(context.result.value.to_real()).is_close_to(1.0 - math.e, tol)
    logger.info("Verified: reversed integral is negative")


@then('the integral equals {expected:g} within {tol:g}')
def step_verify_integral(context, expected, tol):
    """Verify the integral value"""
    assert_that(context.result.value.to_real()).is_close_to(expected, tol)
    logger.info(f"Verified: integral equals {expected}")


@then('the log of the integral equals -2000 + log(1 - 1/e) within {tol:g}')
def step_verify_tiny_integral(context, tol):
    """The value itself is far below the float range"""
    expected = -2000.0 + math.log1p(-math.exp(-1.0))
    assert_that(context.result.value.log_abs).is_close_to(expected, tol)
    assert context.result.value.to_real() == 0.0, "The value should underflow as a float"
    logger.info("Verified: log-domain integral below the float range")


@then('the achieved tolerance is below {tol:g}')
def step_verify_achieved_tolerance(context, tol):
    """Error estimate from the two nested levels"""
    assert_that(context.result.achieved_tol).is_less_than(tol)
    logger.info(f"Verified: achieved tolerance {context.result.achieved_tol:.1e}")


@then('a quadrature error is raised')
def step_verify_quadrature_error(context):
    """NaN integrands are not silently summed"""
    assert isinstance(context.error, QuadratureError), f"Expected QuadratureError, got {context.error!r}"
    logger.info("Verified: QuadratureError raised")


@then('refining the default quadrature raises the level by one and divides the tolerance by 100')
def step_verify_refined(context):
    """QuadratureConfig.refined"""
    refined = context.quad.refined()
    assert_that(refined.level).is_equal_to(context.quad.level + 1)
    assert_that(refined.tol).is_close_to(context.quad.tol / 100.0, context.quad.tol * 1e-12)
    logger.info("Verified: refined quadrature settings")
