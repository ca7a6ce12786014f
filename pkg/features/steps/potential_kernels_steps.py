"""
Step definitions for the potential kernels and their envelopes
"""

import math

from behave import given, when, then # type: ignore
from assertpy import assert_that # type: ignore
from src.kernels.certificates import EnvelopeConstants, comparability_band
from src.kernels.envelopes import (
    GridSpec,
    calibrate_envelope,
    check_certificate,
    conv_envelope_shape,
    dunkl_envelope_shape,
    envelope_conv,
    envelope_dunkl,
    envelope_hermite_osc,
    exp_je_decomposition,
    hermite_osc_shape,
)
from src.kernels.norm_experiments import spectral_check
from src.kernels.potential_kernels import KernelKind, potential_kernel
from src.kernels.special_functions import Params
from src.utils.errors import LplError
from src.utils.logger import logger


def _random_points(context, count: int, lo: float = 0.1, hi: float = 5.0):
    return [(float(x), float(y)) for x, y in context.rng.uniform(lo, hi, size=(count, 2))]


def _relative_gap(a, b) -> float:
    assert a.sign == b.sign, f"Signs differ: {a!r} vs {b!r}"
    return abs(math.expm1(a.log_abs - b.log_abs))


# ==================== KERNEL VALUES ====================
@then('the convolution kernel with alpha {alpha:g} and sigma {sigma:g} is symmetric at {count:d} random points')
def step_verify_symmetry(context, alpha, sigma, count):
    """K(x, y) = K(y, x)"""
    params = Params(alpha, sigma)
    for x, y in _random_points(context, count):
        gap = _relative_gap(potential_kernel("conv", params, x, y, context.quad), potential_kernel("conv", params, y, x, context.quad))
        assert gap < 1e-9, f"K({x}, {y}) and K({y}, {x}) differ by {gap:.2e}"
    logger.info(f"Verified: convolution kernel symmetric at {count} points")


@then('the Hermite-type kernel equals (xy)^(alpha+1/2) times the convolution kernel at {count:d} random points')
def step_verify_hermite_link(context, count):
    """K_H(x, y) = (xy)^(alpha+1/2) K(x, y)"""
    tol = context.ref["hermite_link_tolerance"]
    for x, y in _random_points(context, count):
        alpha = float(context.rng.choice([-0.75, -0.5, 0.0, 1.0]))
        params = Params(alpha, 0.8)
        hermite = potential_kernel(KernelKind.HERMITE_TYPE, params, x, y, context.quad)
        conv = potential_kernel(KernelKind.CONVOLUTION, params, x, y, context.quad)
        gap = abs(hermite.log_abs - conv.log_abs - (alpha + 0.5) * math.log(x * y))
        assert gap <= tol, f"Hermite link off by {gap:.2e} in log at ({x}, {y}), alpha={alpha}"
    logger.info(f"Verified: Hermite-type link at {count} points")


@then('the convolution kernel with alpha {alpha:g} and sigma {sigma:g} is infinite at ({x:g}, {y:g})')
def step_verify_kernel_infinite(context, alpha, sigma, x, y):
    """Coincident arguments with sigma <= 1/2"""
    value = potential_kernel("conv", Params(alpha, sigma), x, y, context.quad)
    assert value.is_infinite and value.sign == 1, f"Expected +inf, got {value!r}"
    logger.info(f"Verified: K({x}, {y}) = +inf for sigma = {sigma}")


@then('the convolution kernel with alpha {alpha:g} and sigma {sigma:g} is finite and positive at ({x:g}, {y:g})')
def step_verify_kernel_finite(context, alpha, sigma, x, y):
    """Coincident arguments with sigma > 1/2"""
    value = potential_kernel("conv", Params(alpha, sigma), x, y, context.quad)
    assert value.is_finite and value.sign == 1, f"Expected a finite positive value, got {value!r}"
    logger.info(f"Verified: K({x}, {y}) = {value.to_real():.6g}")


@then('the Dunkl kernel at the negative reference point is negative')
def step_verify_dunkl_kernel_negative(context):
    """alpha < -1/2 admits negative values"""
    case = context.ref["dunkl_negative"]
    value = potential_kernel(KernelKind.DUNKL, Params(case["alpha"], case["sigma"]), case["x"], case["y"], context.quad)
    assert value.sign == -1, f"Expected a negative value, got {value!r}"
    logger.info(f"Verified: K_D({case['x']}, {case['y']}) < 0")


@then('the Dunkl and convolution kernels of type -1/2 satisfy both consistency identities at {count:d} random points')
def step_verify_consistency(context, count):
    """2 K_D = K^(-1/2) + xy K^(1/2) and K_D(x, y) + K_D(-x, y) = K^(-1/2)"""
    tol = context.ref["consistency_tolerance"]
    sigma = 0.7
    half, plus = Params(-0.5, sigma), Params(0.5, sigma)
    for x, y in _random_points(context, count):
        k_d = potential_kernel(KernelKind.DUNKL, half, x, y, context.quad)
        k_d_reflected = potential_kernel(KernelKind.DUNKL, half, -x, y, context.quad)
        k_minus = potential_kernel(KernelKind.CONVOLUTION, half, x, y, context.quad)
        k_plus = potential_kernel(KernelKind.CONVOLUTION, plus, x, y, context.quad)
        assert _relative_gap(k_d * 2.0, k_minus + k_plus * (x * y)) <= tol, f"Even/odd identity fails at ({x}, {y})"
        assert _relative_gap(k_d + k_d_reflected, k_minus) <= tol, f"Reflection identity fails at ({x}, {y})"
    logger.info(f"Verified: consistency identities at {count} points")


@then('the operator applied to the ground state matches the eigenvalue power at the reference point')
def step_verify_spectral(context):
    """int K(x, y) e^(-y^2/2) dmu(y) = (2 alpha + 2)^-sigma e^(-x^2/2)"""
    case = context.ref["spectral"]
    frame = spectral_check("conv", Params(case["alpha"], case["sigma"]), 0, [case["x"]], context.quad)
    error = float(frame["relative_error"].iloc[0])
    assert error <= case["tolerance"], f"Spectral identity off by {error:.2e}"
    logger.info(f"Verified: spectral identity to {error:.1e}")


@when('I evaluate the "{kind}" kernel with alpha {alpha:g} and sigma {sigma:g} at ({x:g}, {y:g})')
def step_eval_kernel(context, kind, alpha, sigma, x, y):
    """Attempt one kernel value"""
    try:
        context.value = potential_kernel(kind, Params(alpha, sigma), x, y, context.quad)
    except LplError as e:
        context.error = e



# ==================== DUNKL COMPARISONS ====================
def _random_signed_points(context, count: int):
    signs = context.rng.choice([-1.0, 1.0], size=(count, 2))
    return [(sx * x, sy * y) for (x, y), (sx, sy) in zip(_random_points(context, count, 0.2, 3.0), signs)]


def _log_ratio(numerator, denominator) -> float:
    assert numerator.is_finite and denominator.is_finite, f"Non-finite values {numerator!r}, {denominator!r}"
    return numerator.log_abs - denominator.log_abs


@then('the Dunkl kernel with alpha {alpha:g} and sigma {sigma:g} satisfies K_D(-x, -y) = K_D(x, y) at {count:d} random signed points')
def step_verify_dunkl_reflection(context, alpha, sigma, count):
    """Reflecting both arguments leaves xy and ||x| - |y|| unchanged"""
    params = Params(alpha, sigma)
    for x, y in _random_signed_points(context, count):
        value = potential_kernel(KernelKind.DUNKL, params, x, y, context.quad)
        reflected = potential_kernel(KernelKind.DUNKL, params, -x, -y, context.quad)
        gap = _relative_gap(value, reflected)
        assert gap < 1e-12, f"K_D({x}, {y}) and K_D({-x}, {-y}) differ by {gap:.2e}"
    logger.info(f"Verified: Dunkl reflection symmetry at {count} points")


@then('|K_D(x, y)| is at most 2 K(|x|, |y|) with alpha {alpha:g} and sigma {sigma:g} at {count:d} random signed points')
def step_verify_dunkl_domination(context, alpha, sigma, count):
    """Domination by the convolution kernel, including opposite signs"""
    params = Params(alpha, sigma)
    worst = -math.inf
    for x, y in _random_signed_points(context, count):
        dunkl = potential_kernel(KernelKind.DUNKL, params, x, y, context.quad)
        conv = potential_kernel(KernelKind.CONVOLUTION, params, abs(x), abs(y), context.quad)
        ratio = _log_ratio(dunkl, conv)
        assert ratio <= math.log(2.0), f"|K_D({x}, {y})| / K = {math.exp(ratio):.4g} above 2"
        worst = max(worst, ratio)
    logger.info(f"Verified: |K_D| <= {math.exp(worst):.4g} K at {count} points")


@then('K_D(x, y) / K(x, y) lies between 1/4 and 2 with alpha {alpha:g} and sigma {sigma:g} at {count:d} random points')
def step_verify_dunkl_comparable(context, alpha, sigma, count):
    """Two-sided comparability on x, y > 0"""
    params = Params(alpha, sigma)
    ratios = []
    for x, y in _random_points(context, count, 0.2, 3.0):
        dunkl = potential_kernel(KernelKind.DUNKL, params, x, y, context.quad)
        assert_that(dunkl.sign).is_equal_to(1)
        ratios.append(_log_ratio(dunkl, potential_kernel(KernelKind.CONVOLUTION, params, x, y, context.quad)))
    lo, hi, _ = comparability_band(ratios)
    assert 0.25 <= lo and hi <= 2.0, f"K_D / K spans [{lo:.4g}, {hi:.4g}]"
    logger.info(f"Verified: K_D / K in [{lo:.4g}, {hi:.4g}]")


@then('K_D(x, -y) / K_aux(x, y) stays within the calibration ceiling with alpha {alpha:g} and sigma {sigma:g} at {count:d} random points')
def step_verify_aux_comparable(context, alpha, sigma, count):
    """The auxiliary kernel replaces the Dunkl kernel across the origin"""
    params = Params(alpha, sigma)
    ratios = []
    for x, y in _random_points(context, count, 0.2, 3.0):
        dunkl = potential_kernel(KernelKind.DUNKL, params, x, -y, context.quad)
        aux = potential_kernel(KernelKind.DUNKL_AUX, params, x, y, context.quad)
        assert_that(dunkl.sign).is_equal_to(1)
        ratios.append(_log_ratio(dunkl, aux))
    lo, hi, C = comparability_band(ratios)
    assert_that(C).is_less_than_or_equal_to(context.ref["calibration_ceiling"])
    logger.info(f"Verified: K_D(x, -y) / K_aux in [{lo:.4g}, {hi:.4g}]")


@then('the convolution kernel with alpha {alpha:g} and sigma {sigma:g} at (r, 2r) grows linearly in log(1/r) for r = 1e-2, 1e-3 and 1e-4')
def step_verify_log_blow_up(context, alpha, sigma):
    """At sigma = alpha + 1 the near-origin kernel behaves like c log(1/(x + y))"""
    radii = (1e-2, 1e-3, 1e-4)
    values = [potential_kernel(KernelKind.CONVOLUTION, Params(alpha, sigma), r, 2 * r, context.quad).to_real() for r in radii]
    slopes = [(b - a) / math.log(r_a / r_b) for (a, r_a), (b, r_b) in zip(zip(values, radii), zip(values[1:], radii[1:]))]
    for slope in slopes:
        assert 0 < slope < 10, f"slope {slope:.4g} of K against log(1/r) is not positive and bounded"
    assert_that(slopes[1]).is_close_to(slopes[0], 0.05 * slopes[0])
    logger.info(f"Verified: K grows like {slopes[1]:.4g} log(1/r)")


# ==================== ENVELOPES ====================
@then('the convolution envelope with alpha {alpha:g} and sigma {sigma:g} at ({x:g}, {y:g}) is case "{case}"')
def step_verify_conv_case(context, alpha, sigma, x, y, case):
    """Near and far regimes"""
    assert_that(conv_envelope_shape(Params(alpha, sigma), x, y).case).is_equal_to(case)
    logger.info(f"Verified: envelope case '{case}' at ({x}, {y})")


@then('the convolution envelope with alpha {alpha:g} and sigma {sigma:g} at ({x:g}, {y:g}) is at least 1')
def step_verify_conv_indicator(context, alpha, sigma, x, y):
    """sigma > alpha + 1 adds a constant term"""
    shape = conv_envelope_shape(Params(alpha, sigma), x, y)
    assert_that(shape.log_y).is_greater_than_or_equal_to(0.0)
    logger.info("Verified: near-origin indicator active")


@then('the convolution envelope with alpha {alpha:g} and sigma {sigma:g} at ({x:g}, {y:g}) has an infinite upper bound')
def step_verify_conv_diagonal(context, alpha, sigma, x, y):
    """|x - y|^(2 sigma - 1) at x = y"""
    _, upper = envelope_conv(Params(alpha, sigma), x, y)
    assert upper.is_infinite, f"Expected an infinite upper envelope, got {upper!r}"
    logger.info("Verified: envelope infinite on the diagonal")


@then('the Dunkl envelope with alpha {alpha:g} and sigma {sigma:g} at ({x:g}, {y:g}) is finite')
def step_verify_dunkl_finite(context, alpha, sigma, x, y):
    """No singularity for opposite signs"""
    lower, upper = envelope_dunkl(Params(alpha, sigma), x, y)
    assert math.isfinite(lower.log_abs) and math.isfinite(upper.log_abs), f"Expected a finite envelope, got {lower!r}, {upper!r}"
    logger.info(f"Verified: Dunkl envelope finite at ({x}, {y})")


@then('the Dunkl envelope with alpha {alpha:g} and sigma {sigma:g} at ({x:g}, {y:g}) has no exponential factor and power {power:g}')
def step_verify_dunkl_anti_diagonal(context, alpha, sigma, x, y, power):
    """(|x|+|y|)^(-2 alpha - 2 sigma - 4) on y = -x"""
    shape = dunkl_envelope_shape(Params(alpha, sigma), x, y)
    assert_that(shape.z).is_equal_to(0.0)
    assert_that(shape.log_y).is_close_to(power * math.log(abs(x) + abs(y)), 1e-12)
    logger.info(f"Verified: Dunkl envelope power {power} on the anti-diagonal")


@when('I evaluate the Dunkl envelope shape with alpha {alpha:g} and sigma {sigma:g}')
def step_eval_dunkl_shape(context, alpha, sigma):
    """Attempt the Dunkl envelope"""
    try:
        dunkl_envelope_shape(Params(alpha, sigma), 1.0, -2.0)
    except LplError as e:
        context.error = e


@then('the oscillating envelope with sigma {sigma:g} at ({x:g}, {y:g}) decays with argument {z:g}')
def step_verify_osc_decay(context, sigma, x, y, z):
    """exp(-c |x - y| (|x| + |y|))"""
    assert_that(hermite_osc_shape(sigma, x, y).z).is_close_to(z, 1e-12)
    logger.info(f"Verified: oscillating envelope decay argument {z}")


@then('the oscillating envelope with sigma {sigma:g} at ({x:g}, {y:g}) and constants ({C:g}, {c_lower:g}, {c_upper:g}) spans a log width of {width:g}')
def step_verify_osc_width(context, sigma, x, y, C, c_lower, c_upper, width):
    """log(upper / lower) = 2 log C + (c_lower - c_upper) Z"""
    lower, upper = envelope_hermite_osc(sigma, x, y, EnvelopeConstants(C, c_lower, c_upper))
    assert_that(upper.log_abs - lower.log_abs).is_close_to(width, 1e-8)
    logger.info(f"Verified: oscillating envelope width {width}")


# ==================== J/E DECOMPOSITION ====================
@then('the J/E decomposition of the "{kind}" kernel with alpha {alpha:g} and sigma {sigma:g} at ({x:g}, {y:g}) is finite and ordered')
def step_verify_je_ordered(context, kind, alpha, sigma, x, y):
    """Slower rates on the upper side give the larger expression"""
    lower, upper = exp_je_decomposition(kind, Params(alpha, sigma), x, y)
    assert_that(lower.sign).is_equal_to(1)
    assert math.isfinite(lower.log_abs) and math.isfinite(upper.log_abs), f"Non-finite decomposition {lower!r}, {upper!r}"
    assert_that(lower.log_abs).is_less_than_or_equal_to(upper.log_abs)
    logger.info(f"Verified: J/E decomposition ordered at ({x}, {y})")


@when('I decompose the "{kind}" kernel with alpha {alpha:g} and sigma {sigma:g} at ({x:g}, {y:g})')
def step_decompose(context, kind, alpha, sigma, x, y):
    """Attempt the J/E decomposition"""
    try:
        exp_je_decomposition(kind, Params(alpha, sigma), x, y)
    except LplError as e:
        context.error = e


# ==================== GRIDS AND CALIBRATION ====================
@then('the grid "{text}" has {count:d} points')
def step_verify_grid_size(context, text, count):
    """Points surviving the filters"""
    assert_that(GridSpec.parse(text).points()).is_length(count)
    logger.info(f"Verified: grid '{text}' has {count} points")


@when('I parse the grid "{text}"')
def step_parse_grid(context, text):
    """Attempt to parse a grid"""
    context.error = None
    try:
        GridSpec.parse(text)
    except LplError as e:
        context.error = e


@when('I calibrate the "{selector}" envelope of the "{kind}" kernel with alpha {alpha:g} and sigma {sigma:g} on "{grid}"')
def step_calibrate(context, selector, kind, alpha, sigma, grid):
    """Fit a certificate over a grid"""
    context.report_kind, context.report_params, context.report_selector = kind, Params(alpha, sigma), selector
    try:
        context.report = calibrate_envelope(kind, context.report_params, GridSpec.parse(grid), selector, context.quad)
    except LplError as e:
        context.error = e


@then('the fitted C_ratio is below the calibration ceiling')
def step_verify_calibration(context):
    """Certificate within the configured ceiling"""
    ceiling = context.ref["calibration_ceiling"]
    assert context.report.C_ratio <= ceiling, f"C_ratio {context.report.C_ratio:.4g} above {ceiling}"
    logger.info(f"Verified: C_ratio = {context.report.C_ratio:.4g}")


@when('I check the fitted certificate on "{grid}"')
def step_check_fitted(context, grid):
    """Test the calibrated certificate as fitted"""
    context.check = check_certificate(context.report_kind, context.report_params, GridSpec.parse(grid), context.report.fitted,
                                      context.report_selector, context.quad)


@when('I check the fitted certificate widened by {percent:d}% on "{grid}"')
def step_check_widened(context, percent, grid):
    """Test the calibrated certificate with C_ratio widened by a refinement allowance"""
    fitted = context.report.fitted
    widened = EnvelopeConstants(fitted.C_ratio * (1.0 + percent / 100.0), fitted.c_lower, fitted.c_upper)
    context.check = check_certificate(context.report_kind, context.report_params, GridSpec.parse(grid), widened,
                                      context.report_selector, context.quad)


@when('I check the certificate ({C:g}, {c_lower:g}, {c_upper:g}) of the "{selector}" envelope for the "{kind}" kernel with alpha {alpha:g} and sigma {sigma:g} on "{grid}"')
def step_check_given(context, C, c_lower, c_upper, selector, kind, alpha, sigma, grid):
    """Test explicit constants"""
    try:
        context.check = check_certificate(kind, Params(alpha, sigma), GridSpec.parse(grid), EnvelopeConstants(C, c_lower, c_upper),
                                          selector, context.quad)
    except LplError as e:
        context.error = e


@then('the certificate holds at every checked point')
def step_verify_check_holds(context):
    assert_that(context.check.failures).is_equal_to(0)
    assert_that(context.check.holds).is_true()
    logger.info(f"Verified: certificate holds, worst log-excess {context.check.worst_log_excess:.3g}")


@then('the certificate fails at some checked point')
def step_verify_check_fails(context):
    assert_that(context.check.holds).is_false()
    assert_that(context.check.failures).is_greater_than(0)
    assert_that(context.check.worst_log_excess).is_greater_than(0.0)
    logger.info(f"Verified: {context.check.failures} failure(s), worst log-excess {context.check.worst_log_excess:.3g}")


@then('the check covers {checked:d} points against {fitted:d} calibration points')
def step_verify_check_sizes(context, checked, fitted):
    assert_that(context.report.points).is_equal_to(fitted)
    assert_that(context.check.refit.points).is_equal_to(checked)
    logger.info(f"Verified: fitted on {fitted} points, checked on {checked}")


@then('the check verdict agrees with its worst excess over the band')
def step_verify_check_excess(context):
    """holds exactly when no value leaves the band by more than the rounding allowance"""
    check = context.check
    assert math.isfinite(check.worst_log_excess), f"worst log-excess is {check.worst_log_excess}"
    assert_that(check.holds).is_equal_to(check.worst_log_excess <= 1e-9)
    assert_that(check.refit.C_ratio).is_greater_than_or_equal_to(1.0)
    logger.info(f"Verified: holds={check.holds} with worst log-excess {check.worst_log_excess:.3g}")
