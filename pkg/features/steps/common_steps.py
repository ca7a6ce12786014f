"""
Common step definitions shared across features
"""

from dataclasses import replace

from behave import given, then # type: ignore
from assertpy import assert_that # type: ignore
from src.utils.errors import ArithmeticDomainError, DomainError, SingularPointError
from src.utils.reference_data import reference_data
from src.utils.logger import logger


@given('the reference section "{section}"')
def step_load_reference_section(context, section):
    """Load one section of the reference cases"""
    context.ref = reference_data.section(section)
    logger.info(f"Loaded reference section '{section}'")


@given('the quadrature tolerance {tol:g}')
def step_set_quadrature_tolerance(context, tol):
    """Tighten or relax the quadrature tolerance of the scenario"""
    context.quad = replace(context.quad, tol=tol)
    logger.info(f"Quadrature tolerance set to {tol:.0e}")


@then('a domain error is raised')
def step_verify_domain_error(context):
    """Verify the last action failed with a DomainError"""
    assert isinstance(context.error, DomainError), f"Expected DomainError, got {context.error!r}"
    logger.info(f"Verified: DomainError raised ({context.error})")


@then('a domain error is raised mentioning "{text}"')
def step_verify_domain_error_message(context, text):
    """Verify the DomainError names the violated constraint"""
    assert isinstance(context.error, DomainError), f"Expected DomainError, got {context.error!r}"
    assert_that(str(context.error)).contains(text)
    logger.info(f"Verified: DomainError mentions '{text}'")
    context.error = None


@then('a singular point error is raised')
def step_verify_singular_point_error(context):
    """Verify the last action failed with a SingularPointError"""
    assert isinstance(context.error, SingularPointError), f"Expected SingularPointError, got {context.error!r}"
    logger.info("Verified: SingularPointError raised")


@then('an arithmetic domain error is raised')
def step_verify_arithmetic_domain_error(context):
    """Verify the last action failed with an ArithmeticDomainError"""
    assert isinstance(context.error, ArithmeticDomainError), f"Expected ArithmeticDomainError, got {context.error!r}"
    logger.info("Verified: ArithmeticDomainError raised")
