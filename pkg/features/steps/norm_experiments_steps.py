"""
Step definitions for the norm experiments and counterexample families
"""

import math

import mpmath
import numpy as np

from behave import when, then # type: ignore
from assertpy import assert_that # type: ignore
from src.kernels.certificates import comparability_band
from src.kernels.norm_experiments import (
    Measure,
    Part,
    SplitKernel,
    TestFunction,
    apply_folded_dunkl,
    apply_operator,
    ball_measure,
    ball_measure_model,
    counterexample_family,
    eigenfunction,
    fold,
    full_kernel,
    hardy_kernel_ratio,
    hardy_operator,
    negativity_scan,
    predicted_row_norm_exponent,
    row_norm,
    row_norm_is_finite,
    row_norm_slope,
    smooth_bump,
)
from src.kernels.potential_kernels import KernelKind, potential_kernel
from src.kernels.special_functions import Params
from src.utils.config import config
from src.utils.errors import LplError
from src.utils.logger import logger


def _exponent(text: str) -> float:
    return math.inf if text.strip() == "inf" else float(text)


# ==================== ROW NORMS ====================
@then('the "{kind}" row norm with alpha {alpha:g}, sigma {sigma:g} and p {p} is {verdict}')
def step_verify_row_norm_finiteness(context, kind, alpha, sigma, p, verdict):
    """Finiteness rule of the global row norms"""
    finite = row_norm_is_finite(kind, alpha, sigma, _exponent(p))
    assert_that(finite).is_equal_to(verdict == "finite")
    logger.info(f"Verified: {kind} row norm with p={p} is {verdict}")


@then('the predicted "{kind}" row norm exponent with alpha {alpha:g}, sigma {sigma:g} and p {p} is {exponent:g}')
def step_verify_row_norm_exponent(context, kind, alpha, sigma, p, exponent):
    assert_that(predicted_row_norm_exponent(kind, alpha, sigma, _exponent(p))).is_close_to(exponent, 1e-12)
    logger.info(f"Verified: predicted exponent {exponent}")


@when('I ask for the predicted "{kind}" row norm exponent with alpha {alpha:g}, sigma {sigma:g} and p {p}')
def step_ask_row_norm_exponent(context, kind, alpha, sigma, p):
    try:
        predicted_row_norm_exponent(kind, alpha, sigma, _exponent(p))
    except LplError as e:
        context.error = e


@then('the reference divergent row norm is infinite')
def step_verify_divergent_row_norm(context):
    """The diagonal singularity is not p-integrable"""
    case = context.ref["row_norm_divergent"]
    split = SplitKernel(case["kind"], Params(case["alpha"], case["sigma"]), Part.GLOBAL)
    value = row_norm(split, case["x"], case["p"], context.quad)
    assert value.is_infinite, f"Expected a divergent row norm, got {value!r}"
    logger.info(f"Verified: row norm at x={case['x']} diverges")


@then('the reference row norm slope matches the predicted exponent')
def step_verify_row_norm_slope(context):
    """log ||K_global(x, .)||_p against log x"""
    case = context.ref["row_norm_slope"]
    split = SplitKernel(case["kind"], Params(case["alpha"], case["sigma"]), Part.GLOBAL)
    slope = row_norm_slope(split, case["xs"], case["p"], context.quad)
    predicted = predicted_row_norm_exponent(case["kind"], case["alpha"], case["sigma"], case["p"])
    assert_that(slope).is_close_to(predicted, context.ref["slope_tolerance"])
    logger.info(f"Verified: slope {slope:.4f} against predicted {predicted:.4f}")


# ==================== COUNTEREXAMPLE FAMILIES ====================
@then('the bump at n = {n:g} with alpha {alpha:g} has measure {measure:g}')
def step_verify_bump_measure(context, n, alpha, measure):
    """mu_alpha((n, n + 1/n))"""
    f = counterexample_family("bump_at_n", alpha, 0.3, n=n)
    assert_that(math.exp(f.meta["log_measure"])).is_close_to(measure, 1e-12 * measure)
    logger.info(f"Verified: bump at n={n} has measure {measure}")


@then('the shrinking edge at n = {n:g} with alpha {alpha:g} has L^2 norm sqrt({square:g})')
def step_verify_indicator_norm(context, n, alpha, square):
    f = counterexample_family("shrinking_edge", alpha, 0.3, n=n)
    assert_that(f.norm(2.0, alpha).to_real()).is_close_to(math.sqrt(square), 1e-12)
    logger.info(f"Verified: ||1_(3 - 1/n, 3)||_2 = sqrt({square})")


@then('the reference log edge function has its closed-form norm')
def step_verify_log_edge_norm(context):
    """||f||_p^p = (alpha + 1) / (sigma p)"""
    case = context.ref["log_edge"]
    alpha, sigma, p = case["alpha"], case["sigma"], case["p"]
    context.log_edge = counterexample_family("log_edge", alpha, sigma, p=p, quad=context.quad)
    expected = math.log((alpha + 1.0) / (sigma * p)) / p
    assert_that(context.log_edge.norm(p, alpha).log_abs).is_close_to(expected, 1e-14)
    logger.info(f"Verified: log edge norm exp({expected:.6f})")


@then('its quadrature certificate agrees with the closed form')
def step_verify_log_edge_certificate(context):
    f = context.log_edge
    exact = math.log((f.meta["alpha"] + 1.0) / (f.meta["sigma"] * f.meta["p"]))
    gap = abs(math.expm1(f.meta["certificate_log_norm_p"] - exact))
    assert gap <= 1e-8, f"Certificate off by {gap:.2e}"
    logger.info(f"Verified: certificate agrees to {gap:.1e}")


@then('the reference edge power function has exponent A from its metadata')
def step_verify_edge_power(context):
    """A = -1/p + epsilon"""
    case = context.ref["edge_power"]
    f = counterexample_family(
        "edge_power", case["alpha"], case["sigma"], p=1.0 / case["inv_p"], q=1.0 / case["inv_q"], epsilon=case["epsilon"]
    )
    assert_that(f.meta["A"]).is_close_to(case["A"], 1e-12)
    assert_that(f.edge_point).is_equal_to(3.0)
    logger.info(f"Verified: edge power exponent {case['A']}")


@when('I build the "{name}" family with alpha {alpha:g}, sigma {sigma:g}, p {p:g}, q {q:g} and epsilon {epsilon:g}')
def step_build_family(context, name, alpha, sigma, p, q, epsilon):
    try:
        context.family = counterexample_family(name, alpha, sigma, p=p, q=q, epsilon=epsilon)
    except LplError as e:
        context.error = e


@then('folding a bump centred at {center:g} with radius {radius:g} leaves only a negative half on ({lo:g}, {hi:g})')
def step_verify_fold(context, center, radius, lo, hi):
    """f_+(y) = f(y) and f_-(y) = f(-y) on (0, inf)"""
    plus, minus = fold(smooth_bump(center, radius))
    assert_that(plus.support).is_empty()
    assert_that(minus.support).is_equal_to(((lo, hi),))
    assert_that(float(minus(-center))).is_close_to(1.0, 1e-15)
    logger.info(f"Verified: fold of the bump at {center}")


@then('the folded Dunkl operator with alpha {alpha:g} and sigma {sigma:g} matches the direct one on a bump centred at {center:g} with radius {radius:g}')
def step_verify_folded_dunkl(context, alpha, sigma, center, radius):
    """(I_D f)(+-x) assembled from the half-line pieces"""
    params, f, xs = Params(alpha, sigma), smooth_bump(center, radius), [0.5, 1.0, 2.0]
    plus, minus = apply_folded_dunkl(params, f, xs, context.quad)
    direct = apply_operator(full_kernel("dunkl", params), f, xs + [-x for x in xs], Measure.W, context.quad)
    folded = plus.values + minus.values
    for x, a, b in zip(direct.x, folded, direct.values):
        assert a.sign == b.sign, f"Sign mismatch at {x}: {a!r} vs {b!r}"
        gap = abs(math.expm1(a.log_abs - b.log_abs))
        assert gap < 1e-6, f"Folded and direct operators differ by {gap:.2e} at {x}"
    logger.info(f"Verified: folded Dunkl operator at +-{xs}")


# ==================== HARDY-TYPE OPERATOR ====================
@then('the ball measure with alpha {alpha:g} at x = {x:g} and r = {r:g} is {measure:g}')
def step_verify_ball_measure(context, alpha, x, r, measure):
    assert_that(ball_measure(alpha, x, r)).is_close_to(measure, 1e-12 * measure)
    logger.info(f"Verified: mu(B({x}, {r})) = {measure}")


@then('the ball measure stays within a factor {factor:g} of its model for alpha in -0.5, 0 and 1.5')
def step_verify_ball_model(context, factor):
    """mu_alpha(B(x, r)) ~ r (x + r)^(2 alpha + 1)"""
    for alpha in (-0.5, 0.0, 1.5):
        for x in (1.5, 3.0, 10.0):
            for r in (0.01, 0.5, 2.0, 20.0):
                ratio = ball_measure(alpha, x, r) / ball_measure_model(alpha, x, r)
                assert 1.0 / factor <= ratio <= factor, f"alpha={alpha}, x={x}, r={r}: ratio {ratio:.3g}"
    logger.info(f"Verified: ball measures within a factor {factor} of the model")


@when('I compare the Hardy-type kernels with alpha {alpha:g} and sigma {sigma:g} at ({x:g}, {y:g})')
def step_compare_hardy(context, alpha, sigma, x, y):
    try:
        context.ratio = hardy_kernel_ratio(alpha, sigma, x, y)
    except LplError as e:
        context.error = e


@when('I apply the Hardy-type operator with alpha {alpha:g} and sigma {sigma:g}')
def step_apply_hardy(context, alpha, sigma):
    try:
        hardy_operator(alpha, sigma, smooth_bump(3.0, 0.5), [2.0], context.quad)
    except LplError as e:
        context.error = e



def _hardy_on_unit_indicator(context, alpha: float, sigma: float, xs):
    f = counterexample_family("bump_at_n", alpha, sigma, n=1.0)
    return hardy_operator(alpha, sigma, f, xs, context.quad)


@then('the Hardy-type operator with alpha {alpha:g} and sigma {sigma:g} on the indicator of (1, 2) matches mpmath at x = 1.5, 3 and 10')
def step_verify_hardy_values(context, alpha, sigma):
    """U 1_(1,2)(x) = int_1^2 (x+y)^(-2 alpha-1) |x-y|^(2 sigma-1) y^(2 alpha+1) dy"""
    xs = (1.5, 3.0, 10.0)
    result = _hardy_on_unit_indicator(context, alpha, sigma, xs)
    for x, value in zip(xs, result.to_real()):
        expected = float(
            mpmath.quad(
                lambda y: (x + y) ** (-2 * alpha - 1) * abs(x - y) ** (2 * sigma - 1) * y ** (2 * alpha + 1),
                [1, x, 2] if 1 < x < 2 else [1, 2],
            )
        )
        assert_that(value).is_close_to(expected, 1e-8 * expected)
    assert_that(result.divergent).does_not_contain(True)
    logger.info(f"Verified: Hardy-type operator values at {xs}")


@then('the Hardy-type operator with alpha {alpha:g} and sigma {sigma:g} on the indicator of (1, 2) has log-log slope {slope:g} between x = {x0:g} and {x1:g}')
def step_verify_hardy_decay(context, alpha, sigma, slope, x0, x1):
    """Far from the support the operator behaves like x^(-2 alpha - 1) x^(2 sigma - 1)"""
    logs = _hardy_on_unit_indicator(context, alpha, sigma, [x0, x1]).log_abs()
    fitted = (logs[1] - logs[0]) / math.log(x1 / x0)
    assert_that(fitted).is_close_to(slope, 0.01)
    logger.info(f"Verified: Hardy-type decay slope {fitted:.4f}")


@then('the Hardy-type kernel ratio stays within a factor {factor:g} for alpha in -0.5, 0 and 1 on x, y in [2, 10]')
def step_verify_hardy_ratio_band(context, factor):
    """(x+y)^(-2 alpha-1) |x-y|^(2 sigma-1) against |x-y|^(2 sigma) / mu_alpha(B(x, |x-y|))"""
    axis = (2.0, 2.5, 3.0, 5.0, 7.5, 10.0)
    for alpha in (-0.5, 0.0, 1.0):
        ratios = [math.log(hardy_kernel_ratio(alpha, 0.3, x, y)) for x in axis for y in axis if x != y]
        lo, hi, C = comparability_band(ratios)
        assert C <= factor, f"alpha={alpha}: ratio spans [{lo:.3g}, {hi:.3g}]"
    logger.info(f"Verified: Hardy-type kernels comparable within {factor}")


@then('the convolution kernel with alpha {alpha:g} and sigma {sigma:g} stays within a factor {factor:g} of the Hardy-type kernel where |x - y| (x + y) <= 1')
def step_verify_hardy_bounds_kernel(context, alpha, sigma, factor):
    """Near the diagonal and away from the origin K ~ (x+y)^(-2 alpha-1) |x-y|^(2 sigma-1)"""
    params = Params(alpha, sigma)
    ratios = []
    for x in (1.5, 2.0, 3.0):
        for d in (0.01, 0.05, 0.15):
            y = x + d
            assert d * (x + y) <= 1.0
            kernel = potential_kernel(KernelKind.CONVOLUTION, params, x, y, context.quad)
            hardy = (-2.0 * alpha - 1.0) * math.log(x + y) + (2.0 * sigma - 1.0) * math.log(d)
            ratios.append(kernel.log_abs - hardy)
    lo, hi, C = comparability_band(ratios)
    assert C <= factor, f"K / Hardy-type kernel spans [{lo:.3g}, {hi:.3g}]"
    logger.info(f"Verified: K / Hardy-type kernel in [{lo:.3g}, {hi:.3g}]")


# ==================== TRUNCATED TAILS ====================
@when('I apply the full "{kind}" operator with alpha {alpha:g} and sigma {sigma:g} to exp(y^2/2) on (0.5, inf) at x = {x:g}')
def step_apply_growing(context, kind, alpha, sigma, x):
    """A Gaussian growth cancelling the kernel's decay leaves a non-integrable tail"""
    f = TestFunction(name="gaussian_growth", func=lambda y: np.exp(0.5 * y * y), support=((0.5, math.inf),))
    context.result = apply_operator(full_kernel(kind, Params(alpha, sigma)), f, [x], quad=context.quad)


@when('I apply the full "{kind}" operator with alpha {alpha:g} and sigma {sigma:g} to its ground state at x = {x:g}')
def step_apply_ground_state(context, kind, alpha, sigma, x):
    context.result = apply_operator(full_kernel(kind, Params(alpha, sigma)), eigenfunction(kind, 0, alpha), [x], quad=context.quad)


@then('the value at x = {x:g} is flagged divergent')
def step_verify_divergent(context, x):
    assert_that(context.result.divergent).is_equal_to([True])
    assert context.result.values[0].is_infinite, f"Expected +inf at x={x}, got {context.result.values[0]!r}"
    logger.info(f"Verified: non-converging tail flagged at x={x}")


@then('the value at x = {x:g} is finite and not flagged divergent')
def step_verify_not_divergent(context, x):
    assert_that(context.result.divergent).is_equal_to([False])
    assert context.result.values[0].is_finite, f"Expected a finite value at x={x}, got {context.result.values[0]!r}"
    logger.info(f"Verified: finite value {context.result.values[0].to_real():.6g} at x={x}")


# ==================== NEGATIVITY ====================
@when('I scan the Dunkl kernel with alpha {alpha:g} and sigma {sigma:g} for negative values without the domain check')
def step_scan_control(context, alpha, sigma):
    """Small control scan"""
    context.report = negativity_scan(
        alpha, sigma, box=4.0, density=5, enforce_domain=False, anti_diagonal_points=8, quad=context.quad, workers=config.THREADS
    )


@when('I scan the Dunkl kernel with alpha {alpha:g} and sigma {sigma:g} for negative values')
def step_scan(context, alpha, sigma):
    try:
        context.report = negativity_scan(alpha, sigma, quad=context.quad)
    except LplError as e:
        context.error = e


@then('no negative values are found')
def step_verify_no_hits(context):
    assert_that(context.report.hits).is_empty()
    assert_that(context.report.anti_diagonal_min).is_none()
    assert_that(context.report.checked).is_equal_to(25)
    logger.info(f"Verified: no negative values among {context.report.checked} points")
