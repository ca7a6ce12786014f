"""
Step definitions for the heat kernels
"""

import math

from behave import when, then # type: ignore
from assertpy import assert_that # type: ignore
from src.kernels.certificates import comparability_band
from src.kernels.heat_kernels import dunkl_heat, her_dun_envelope, her_lag_envelope, hermite_heat, laguerre_heat
from src.kernels.suites import semigroup_gap
from src.utils.errors import LplError
from src.utils.logger import logger

HEAT_TOL = 1e-11


def _log_gap(a, b) -> float:
    assert a.sign == b.sign, f"Signs differ: {a!r} vs {b!r}"
    return abs(a.log_abs - b.log_abs)


@then('the tanh and coth forms of G_t agree at t = {t:g}, x = {x:g}, y = {y:g}')
def step_verify_hermite_forms(context, t, x, y):
    """Both closed forms of the Mehler kernel"""
    gap = _log_gap(hermite_heat(t, x, y, "tanh"), hermite_heat(t, x, y, "coth"))
    assert gap < 1e-10, f"Forms differ by {gap:.2e} in log at t={t}, ({x}, {y})"
    logger.info(f"Verified: tanh and coth forms agree to {gap:.1e}")


@then('G_t(0, 0) equals (2 pi sinh 2t)^(-1/2) for t in 0.001, 1 and 30')
def step_verify_hermite_origin(context):
    """Only the normalising factor survives at the origin"""
    for t in (0.001, 1.0, 30.0):
        expected = -0.5 * (math.log(2.0 * math.pi) + math.log(math.sinh(2.0 * t)))
        assert_that(hermite_heat(t, 0.0, 0.0).log_abs).is_close_to(expected, 1e-12)
    logger.info("Verified: G_t(0, 0)")


@then('G^(-1/2)_t(x, y) equals G_t(x, y) + G_t(x, -y) at {count:d} random points')
def step_verify_half_type_fold(context, count):
    """The type -1/2 Laguerre kernel is the even part of the Hermite kernel"""
    for _ in range(count):
        t = float(context.rng.uniform(0.05, 2.0))
        x, y = (float(v) for v in context.rng.uniform(0.1, 3.0, size=2))
        folded = hermite_heat(t, x, y) + hermite_heat(t, x, -y)
        gap = _log_gap(laguerre_heat(-0.5, t, x, y), folded)
        assert gap < HEAT_TOL, f"Fold identity off by {gap:.2e} at t={t}, ({x}, {y})"
    logger.info(f"Verified: G^(-1/2) fold identity at {count} points")


@then('2 G^D_t(x, y) equals G^alpha_t(|x|, |y|) + xy G^(alpha+1)_t(|x|, |y|) for alpha {alpha:g}, t {t:g}, x {x:g}, y {y:g}')
def step_verify_dunkl_split(context, alpha, t, x, y):
    """Even and odd parts of the Dunkl kernel"""
    ax, ay = abs(x), abs(y)
    combined = laguerre_heat(alpha, t, ax, ay) + laguerre_heat(alpha + 1.0, t, ax, ay) * (x * y)
    gap = _log_gap(dunkl_heat(alpha, t, x, y) * 2.0, combined)
    assert gap < HEAT_TOL, f"Dunkl split off by {gap:.2e}"
    logger.info(f"Verified: Dunkl split identity at alpha={alpha}, t={t}, ({x}, {y})")


@then('the Dunkl heat kernel at the negative reference point is negative')
def step_verify_dunkl_heat_negative(context):
    """alpha < -1/2 makes the kernel change sign"""
    case = context.ref["dunkl_negative"]
    value = dunkl_heat(case["alpha"], case["t"], case["x"], case["y"])
    assert value.sign == -1, f"Expected a negative kernel value, got {value!r}"
    logger.info(f"Verified: Dunkl heat kernel negative at ({case['x']}, {case['y']})")


@then('the semigroup and ground-state gaps at the reference tuple are below the tolerance')
def step_verify_semigroup(context):
    """G_t G_s = G_(t+s) and G_t l_0 = e^(-(2 alpha+2) t) l_0"""
    case = context.ref["semigroup"]
    semigroup, ground = semigroup_gap(case["alpha"], case["t"], case["s"], case["x"], case["y"], context.quad)
    assert_that(semigroup).is_less_than_or_equal_to(case["tolerance"])
    assert_that(ground).is_less_than_or_equal_to(case["tolerance"])
    logger.info(f"Verified: semigroup gap {semigroup:.1e}, ground-state gap {ground:.1e}")


def _her_lag_band(alpha: float):
    ts = [1e-3, 1e-2, 0.1, 0.5, 1.0, 5.0]
    xs = [1e-2, 0.1, 0.5, 1.0, 3.0, 10.0]
    logs = [
        (laguerre_heat(alpha, t, x, y) / her_lag_envelope(alpha, t, x, y)).log_abs
        for t in ts for x in xs for y in xs
    ]
    return comparability_band(logs)


@then('G^alpha over the Hermite envelope stays within the reference band for every reference alpha')
def step_verify_her_lag_band(context):
    """Two-sided comparison of the Laguerre and Hermite heat kernels"""
    ceiling = context.ref["her_lag_ceiling"]
    for alpha in context.ref["her_lag_alphas"]:
        low, high, band = _her_lag_band(alpha)
        assert band <= ceiling, f"alpha={alpha}: ratio in [{low:.3g}, {high:.3g}], C={band:.3g} above {ceiling}"
        logger.info(f"Verified: alpha={alpha} band C={band:.3g}")


@then('G^alpha over the Hermite envelope tends to sqrt(2 pi) / (2^alpha Gamma(alpha + 1)) as xy vanishes')
def step_verify_her_lag_limit(context):
    """Small-argument limit of the ratio"""
    for alpha in (-0.9, 0.0, 0.5, 2.0):
        ratio = (laguerre_heat(alpha, 1.0, 1e-4, 1e-4) / her_lag_envelope(alpha, 1.0, 1e-4, 1e-4)).to_real()
        expected = math.sqrt(2.0 * math.pi) / (2.0 ** alpha * math.gamma(alpha + 1.0))
        assert_that(ratio).is_close_to(expected, 1e-7 * expected)
    logger.info("Verified: small-argument limit of the Hermite envelope ratio")


@when('I evaluate the Dunkl envelope of type {alpha:g}')
def step_eval_her_dun(context, alpha):
    """Attempt the Dunkl heat envelope"""
    try:
        her_dun_envelope(alpha, 1.0, 1.0, 2.0)
    except LplError as e:
        context.error = e


@when('I evaluate the Hermite heat kernel at time {t:g}')
def step_eval_hermite_time(context, t):
    """Attempt the Hermite heat kernel"""
    try:
        hermite_heat(t, 1.0, 1.0)
    except LplError as e:
        context.error = e
