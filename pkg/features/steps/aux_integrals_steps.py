"""
Step definitions for the auxiliary integrals J and E
"""

import math

import mpmath
from behave import when, then # type: ignore
from assertpy import assert_that # type: ignore
from src.kernels.aux_integrals import e_envelope, e_envelope_shape, e_integral, j_envelope, j_envelope_shape, j_integral
from src.kernels.certificates import EnvelopeConstants, sandwich_holds
from src.utils.errors import LplError
from src.utils.logger import logger


def _e_oracle(A: float, T: float, S: float) -> float:
    return float(mpmath.quad(lambda t: t ** A * mpmath.exp(-T / t - S * t), [0, 0.01, 0.1, 1]))


def _relative(actual: float, expected: float) -> float:
    return abs(actual - expected) / abs(expected)


# ==================== J ====================
@then('J with exponent 2.5 from 0 to infinity equals Gamma(3.5)')
def step_verify_j_gamma(context):
    """Complete Gamma integral"""
    value = j_integral(2.5, 0.0, math.inf, context.quad)
    assert _relative(value.to_real(), math.gamma(3.5)) < 1e-11, f"J = {value.to_real()}, expected {math.gamma(3.5)}"
    logger.info("Verified: J_2.5(0, inf) = Gamma(3.5)")


@then('J with exponent 0 from 0.5 to 3 equals exp(-0.5) - exp(-3)')
def step_verify_j_exponentials(context):
    """Elementary case"""
    expected = math.exp(-0.5) - math.exp(-3.0)
    assert _relative(j_integral(0.0, 0.5, 3.0, context.quad).to_real(), expected) < 1e-11
    logger.info("Verified: J_0(0.5, 3)")


@then('J with exponent {A:g} from {T:g} to {S:g} matches the incomplete Gamma function')
def step_verify_j_gammainc(context, A, T, S):
    """J_A(T, S) = Gamma(A+1, T) - Gamma(A+1, S)"""
    expected = float(mpmath.gammainc(A + 1.0, T, S))
    error = _relative(j_integral(A, T, S, context.quad).to_real(), expected)
    assert error <= context.ref["tolerance"], f"J_{A}({T}, {S}): relative error {error:.2e}"
    logger.info(f"Verified: J_{A}({T}, {S}) to {error:.1e}")


@then('J with exponent {A:g} from {T:g} to {S:g} is infinite')
def step_verify_j_infinite(context, A, T, S):
    """Non-integrable power at the origin"""
    value = j_integral(A, T, S, context.quad)
    assert value.is_infinite and value.sign == 1, f"Expected +inf, got {value!r}"
    logger.info(f"Verified: J_{A}({T}, {S}) = +inf")


@when('I evaluate J with exponent {A:g} from {T:g} to {S:g}')
def step_eval_j(context, A, T, S):
    """Attempt J"""
    try:
        context.value = j_integral(A, T, S, context.quad)
    except LplError as e:
        context.error = e


@then('the J envelope of exponent {A:g} at T = {T:g} and S = {S:g} is case "{case}"')
def step_verify_j_case(context, A, T, S, case):
    """Case selection of the J envelope"""
    assert_that(j_envelope_shape(A, T, S).case).is_equal_to(case)
    logger.info(f"Verified: J envelope case '{case}' at ({T}, {S})")


@then('J with exponent {A} from {T} to {S} lies inside its envelope with C = {C:g}')
def step_verify_j_sandwich(context, A, T, S, C):
    """lower <= J <= upper"""
    A, T, S = float(A), float(T), float(S)
    value = j_integral(A, T, S, context.quad)
    bounds = j_envelope(A, T, S, consts=EnvelopeConstants(C, 2.0, 0.5))
    assert sandwich_holds(value, bounds), (
        f"J_{A}({T}, {S}) = {value.to_real():.4g} outside [{bounds[0].to_real():.4g}, {bounds[1].to_real():.4g}]"
    )
    logger.info(f"Verified: J_{A}({T}, {S}) inside its envelope")


# ==================== E ====================
@then('E with exponent 0.5 at T = 0 and S = 0 equals 1/1.5')
def step_verify_e_power(context):
    """int_0^1 t^A dt"""
    assert_that(e_integral(0.5, 0.0, 0.0, context.quad).to_real()).is_close_to(1.0 / 1.5, 1e-14)
    logger.info("Verified: E_0.5(0, 0) = 1/1.5")


@then('E at the reference oracle point matches mpmath')
def step_verify_e_reference(context):
    """Direct quadrature oracle"""
    case = context.ref["e_oracle"]
    expected = _e_oracle(case["A"], case["T"], case["S"])
    error = _relative(e_integral(case["A"], case["T"], case["S"], context.quad).to_real(), expected)
    assert error <= case["tolerance"], f"E: relative error {error:.2e}"
    logger.info(f"Verified: E at the reference point to {error:.1e}")


@then('E with exponent {A:g} at T = {T:g} and S = {S:g} matches mpmath within {tol:g}')
def step_verify_e_oracle(context, A, T, S, tol):
    """Direct quadrature oracle"""
    error = _relative(e_integral(A, T, S, context.quad).to_real(), _e_oracle(A, T, S))
    assert error <= tol, f"E_{A}({T}, {S}): relative error {error:.2e}"
    logger.info(f"Verified: E_{A}({T}, {S}) to {error:.1e}")


@then('E at the reference oracle point lies inside its envelope with C = {C:g}')
def step_verify_e_sandwich(context, C):
    """lower <= E <= upper"""
    case = context.ref["e_oracle"]
    value = e_integral(case["A"], case["T"], case["S"], context.quad)
    bounds = e_envelope(case["A"], case["T"], case["S"], consts=EnvelopeConstants(C, 4.0, 0.25))
    assert sandwich_holds(value, bounds), f"E = {value.to_real():.4g} outside its envelope"
    logger.info("Verified: E inside its envelope")


@then('the E envelope at T = {T:g} and S = {S:g} has decay argument sqrt(0.6)')
def step_verify_e_decay_sqrt(context, T, S):
    """z = sqrt(T (T v S))"""
    assert_that(e_envelope_shape(0.0, T, S).z).is_close_to(math.sqrt(0.6), 1e-15)
    logger.info("Verified: E envelope decay argument sqrt(0.6)")


@then('the E envelope at T = {T:g} and S = {S:g} has decay argument {z:g}')
def step_verify_e_decay(context, T, S, z):
    """z = sqrt(T (T v S))"""
    assert_that(e_envelope_shape(0.0, T, S).z).is_close_to(z, 1e-15)
    logger.info(f"Verified: E envelope decay argument {z}")
