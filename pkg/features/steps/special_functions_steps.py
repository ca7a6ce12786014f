"""
Step definitions for the special functions and signed log arithmetic
"""

import math

import mpmath
import numpy as np
from behave import given, when, then # type: ignore
from assertpy import assert_that # type: ignore
from src.kernels.signed_log import SignedLogValue
from src.kernels.special_functions import (
    Params,
    bessel_i_scaled,
    bessel_ratio,
    dunkl_eigenvalue,
    generalized_hermite_fn,
    laguerre_eigenvalue,
    laguerre_fn,
    log_gamma,
    log_reduced_bessel_i,
    p_of,
    phi_alpha,
    psi_alpha,
)
from src.utils.errors import LplError
from src.utils.logger import logger

# breakpoints for half-line integrals of functions with a Gaussian factor
HALF_LINE = [0, 1, 3, 6, 12]


def _relative(actual: float, expected: float) -> float:
    return abs(actual - expected) / abs(expected)


# ==================== SIGNED LOG VALUES ====================
@given('the signed log values {a:g} and {b:g}')
def step_signed_values(context, a, b):
    """Build two signed log values from reals"""
    context.a = SignedLogValue.from_real(a)
    context.b = SignedLogValue.from_real(b)


@given('the signed log magnitudes {log_a:g} and {log_b:g}')
def step_signed_magnitudes(context, log_a, log_b):
    """Build two positive values from their logs"""
    context.a = SignedLogValue.from_log(log_a)
    context.b = SignedLogValue.from_log(log_b)


@then('their product equals {expected:g}')
def step_verify_product(context, expected):
    """Verify the product"""
    assert_that((context.a * context.b).to_real()).is_close_to(expected, 1e-12)
    logger.info(f"Verified: product is {expected}")


@then('their sum equals {expected:g}')
def step_verify_sum(context, expected):
    """Verify the sum"""
    assert_that((context.a + context.b).to_real()).is_close_to(expected, 1e-12)
    logger.info(f"Verified: sum is {expected}")


@then('their quotient equals {expected:g}')
def step_verify_quotient(context, expected):
    """Verify the quotient"""
    assert_that((context.a / context.b).to_real()).is_close_to(expected, 1e-12)
    logger.info(f"Verified: quotient is {expected}")


@then('their difference is exactly zero')
def step_verify_zero_difference(context):
    """Verify exact cancellation"""
    difference = context.a - context.b
    assert difference.is_zero, f"Expected an exact zero, got {difference!r}"
    logger.info("Verified: difference is exactly zero")


@when('I subtract positive infinity from positive infinity')
def step_subtract_infinities(context):
    """Attempt inf - inf"""
    try:
        SignedLogValue.infinity() - SignedLogValue.infinity()
    except LplError as e:
        context.error = e


@when('I build model parameters with alpha {alpha:g} and sigma {sigma:g}')
def step_build_params(context, alpha, sigma):
    """Attempt to build (alpha, sigma)"""
    context.error = None
    try:
        context.params = Params(alpha, sigma)
    except LplError as e:
        context.error = e


# ==================== GAMMA AND BESSEL ====================
@then('log_gamma matches every reference case')
def step_verify_log_gamma(context):
    """Verify log Gamma against the reference table"""
    tol = context.ref["log_gamma_tolerance"]
    for case in context.ref["log_gamma"]:
        assert_that(log_gamma(case["x"])).is_close_to(case["expected"], tol)
    logger.info(f"Verified: log_gamma at {len(context.ref['log_gamma'])} reference points")


@then('exp(-u) I_nu(u) matches mpmath for order {nu:g} at u = {u:g}')
def step_verify_scaled_bessel(context, nu, u):
    """Verify the scaled Bessel function against mpmath"""
    expected = float(mpmath.besseli(nu, u) * mpmath.exp(-u))
    actual = bessel_i_scaled(nu, u).to_real()
    error = _relative(actual, expected)
    assert error <= context.ref["bessel_tolerance"], f"I_{nu}({u}): relative error {error:.2e}"
    logger.info(f"Verified: exp(-u) I_{nu}({u}) to {error:.1e}")


@then('the Bessel ratio of order 0.5 at 2 equals coth(2) - 1/2')
def step_verify_half_order_ratio(context):
    """I_(3/2)/I_(1/2) = coth u - 1/u"""
    expected = 1.0 / math.tanh(2.0) - 0.5
    assert_that(bessel_ratio(0.5, 2.0)).is_close_to(expected, 1e-13)
    logger.info("Verified: half-order Bessel ratio")


@then('the Bessel ratio of order {nu:g} at {u:g} lies strictly between 0 and 1')
def step_verify_ratio_bounds(context, nu, u):
    """The ratio lies in (0, 1) for nu >= -1/2"""
    ratio = bessel_ratio(nu, u)
    assert 0 < ratio < 1, f"Ratio I_{nu + 1}/I_{nu} at {u} is {ratio}"
    logger.info(f"Verified: ratio {ratio:.6f} in (0, 1)")


@then('psi is negative at u = {u:g} for every sign change alpha')
def step_verify_psi_negative(context, u):
    """I_alpha - I_(alpha+1) < 0 for alpha < -1/2 and large u"""
    for alpha in context.ref["psi_sign_change_alphas"]:
        value = psi_alpha(alpha, u)
        assert value.sign == -1, f"psi_{alpha}({u}) should be negative, got {value!r}"
    logger.info("Verified: psi changes sign below alpha = -1/2")


@then('psi is positive at u = {u:g} for every positive alpha')
def step_verify_psi_positive(context, u):
    """I_alpha - I_(alpha+1) > 0 for alpha >= -1/2"""
    for alpha in context.ref["psi_positive_alphas"]:
        value = psi_alpha(alpha, u)
        assert value.sign == 1, f"psi_{alpha}({u}) should be positive, got {value!r}"
    logger.info("Verified: psi positive from alpha = -1/2 on")


@then('psi of order -0.5 at 3 equals sqrt(2/(3 pi)) exp(-3)')
def step_verify_psi_closed_form(context):
    """I_(-1/2) - I_(1/2) = sqrt(2/(pi u)) exp(-u)"""
    expected = math.sqrt(2.0 / (3.0 * math.pi)) * math.exp(-3.0)
    assert _relative(psi_alpha(-0.5, 3.0).to_real(), expected) < 1e-12
    logger.info("Verified: psi closed form")


@then('Phi of order {alpha:g} at {u:g} matches mpmath')
def step_verify_phi(context, alpha, u):
    """Phi_alpha(u) = |u|^-alpha (I_alpha(|u|) + sgn(u) I_(alpha+1)(|u|))"""
    a = abs(u)
    expected = float(a ** (-alpha) * (mpmath.besseli(alpha, a) + math.copysign(1.0, u) * mpmath.besseli(alpha + 1, a)))
    error = _relative(phi_alpha(alpha, u).to_real(), expected)
    assert error < 1e-11, f"Phi_{alpha}({u}): relative error {error:.2e}"
    logger.info(f"Verified: Phi_{alpha}({u}) to {error:.1e}")


@then('Phi of order 0.3 at 0 equals 2^(-0.3) / Gamma(1.3)')
def step_verify_phi_at_zero(context):
    """Limit of Phi at the origin"""
    expected = 2.0 ** (-0.3) / math.gamma(1.3)
    assert_that(phi_alpha(0.3, 0.0).to_real()).is_close_to(expected, 1e-14)
    logger.info("Verified: Phi at zero")


# ==================== LAGUERRE FAMILY ====================
@then('the Laguerre functions {n:d} and {m:d} of type {alpha:g} have inner product {expected:g}')
def step_verify_laguerre_orthonormality(context, n, m, alpha, expected):
    """Inner product in L^2(x^(2 alpha+1) dx)"""
    def integrand(x):
        x = float(x)
        return laguerre_fn(n, alpha, x) * laguerre_fn(m, alpha, x) * x ** (2 * alpha + 1)

    value = float(mpmath.quad(integrand, HALF_LINE))
    assert_that(value).is_close_to(expected, 1e-9)
    logger.info(f"Verified: <l_{n}, l_{m}> = {value:.12f} for alpha = {alpha}")


@then('the generalised Hermite function {n:d} of type {alpha:g} has unit norm')
def step_verify_hermite_norm(context, n, alpha):
    """Norm in L^2(|x|^(2 alpha+1) dx) over the whole line"""
    def integrand(x):
        x = float(x)
        return generalized_hermite_fn(n, alpha, x) ** 2 * x ** (2 * alpha + 1)

    value = 2.0 * float(mpmath.quad(integrand, HALF_LINE))
    assert_that(value).is_close_to(1.0, 1e-9)
    logger.info(f"Verified: ||h_{n}|| = 1 for alpha = {alpha}")


@then('the Laguerre eigenvalue of degree {n:d} and type {alpha:g} is {expected:g}')
def step_verify_laguerre_eigenvalue(context, n, alpha, expected):
    """4n + 2 alpha + 2"""
    assert_that(laguerre_eigenvalue(n, alpha)).is_equal_to(expected)
    logger.info(f"Verified: Laguerre eigenvalue {expected}")


@then('the Dunkl eigenvalue of degree {n:d} and type {alpha:g} is {expected:g}')
def step_verify_dunkl_eigenvalue(context, n, alpha, expected):
    """2n + 2 alpha + 2"""
    assert_that(dunkl_eigenvalue(n, alpha)).is_equal_to(expected)
    logger.info(f"Verified: Dunkl eigenvalue {expected}")


@then('p_of inverts sinh(2 p) at 0.01, 1 and 1e6')
def step_verify_p_of(context):
    """sinh(2 p(r)) = r"""
    for r in (0.01, 1.0, 1e6):
        assert _relative(math.sinh(2.0 * p_of(r)), r) < 1e-12, f"sinh(2 p({r})) != {r}"
    logger.info("Verified: p_of inverts sinh(2p)")


# ==================== RANDOMISED IDENTITIES ====================
@then('I_(nu-1) - I_(nu+1) equals (2 nu / u) I_nu from mpmath at {count:d} random points')
def step_verify_recurrence(context, count):
    """I_(nu-1)(u) - I_(nu+1)(u) = (2 nu / u) I_nu(u), scaled by exp(-u)"""
    worst = 0.0
    for _ in range(count):
        nu = float(context.rng.uniform(0.2, 5.0))
        u = float(context.rng.uniform(0.1, 100.0))
        lhs = bessel_i_scaled(nu - 1.0, u).to_real() - bessel_i_scaled(nu + 1.0, u).to_real()
        expected = float(2 * nu / u * mpmath.besseli(nu, u) * mpmath.exp(-u))
        error = _relative(lhs, expected)
        assert error < 1e-9, f"recurrence at nu={nu}, u={u}: relative error {error:.2e}"
        worst = max(worst, error)
    logger.info(f"Verified: recurrence at {count} points, worst {worst:.1e}")


@then('1 - I_(alpha+1)/I_alpha lies strictly between its rational bounds at {count:d} random points')
def step_verify_ratio_sandwich(context, count):
    """(a+1/2)/(a+1/2+u) < 1 - ratio < 2(a+1)/(2(a+1)+u) for alpha > -1/2"""
    context.samples = []
    for _ in range(count):
        alpha = float(context.rng.uniform(-0.499, 5.0))
        u = float(context.rng.uniform(1e-3, 1e3))
        gap = 1.0 - bessel_ratio(alpha, u)
        lower = (alpha + 0.5) / (alpha + 0.5 + u)
        upper = 2 * (alpha + 1) / (2 * (alpha + 1) + u)
        assert lower < gap < upper, f"alpha={alpha}, u={u}: {lower} < {gap} < {upper} fails"
        context.samples.append((alpha, u))
    logger.info(f"Verified: ratio bounds at {count} points")


@then('the Bessel ratio agrees with mpmath at the first {count:d} of them')
def step_verify_ratio_oracle(context, count):
    """Continued fraction against the arbitrary precision quotient"""
    for alpha, u in context.samples[:count]:
        expected = float(mpmath.besseli(alpha + 1, u) / mpmath.besseli(alpha, u))
        error = _relative(bessel_ratio(alpha, u), expected)
        assert error < 1e-12, f"ratio at alpha={alpha}, u={u}: relative error {error:.2e}"
    logger.info(f"Verified: Bessel ratio against mpmath at {count} points")


@then('psi changes sign at some u below 1000 for {count:d} random alpha in (-1, -1/2)')
def step_verify_psi_sign_change(context, count):
    """Scan u on a log grid; confirm the bracketing signs with mpmath"""
    grid = np.geomspace(1e-3, 1e3, 241)
    for _ in range(count):
        alpha = float(context.rng.uniform(-0.99, -0.51))
        signs = np.array([psi_alpha(alpha, float(u)).sign for u in grid])
        flips = np.flatnonzero((signs[:-1] > 0) & (signs[1:] < 0))
        assert flips.size > 0, f"psi_{alpha} keeps its sign on (0, 1000]"
        lo, hi = (mpmath.mpf(float(grid[flips[0]])), mpmath.mpf(float(grid[flips[0] + 1])))
        assert mpmath.besseli(alpha, lo) > mpmath.besseli(alpha + 1, lo), f"mpmath psi_{alpha}({lo}) not positive"
        assert mpmath.besseli(alpha, hi) < mpmath.besseli(alpha + 1, hi), f"mpmath psi_{alpha}({hi}) not negative"
    logger.info(f"Verified: psi sign change below 1000 for {count} alphas")


@then('the reduced Bessel log of order {nu:g} at {u:g} matches mpmath')
def step_verify_high_order(context, nu, u):
    """log(u^-nu exp(-u) I_nu(u)) stays finite where the scaled Bessel underflows"""
    actual = float(log_reduced_bessel_i(nu, u)[0])
    expected = float(mpmath.log(mpmath.besseli(nu, u)) - nu * mpmath.log(u) - u)
    assert math.isfinite(actual), f"log R_{nu}({u}) is {actual}"
    assert_that(actual).is_close_to(expected, 1e-10 * abs(expected))
    logger.info(f"Verified: log R_{nu}({u}) = {actual:.6f}")
