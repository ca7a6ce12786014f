"""
Step definitions for the L^p-L^q boundedness regions
"""

import math
from fractions import Fraction
from itertools import product

from behave import given, when, then # type: ignore
from assertpy import assert_that # type: ignore
from src.kernels import lp_lq_regions as regions
from src.kernels.lp_lq_regions import RegionPoint, conv_region, figure_case, figure_data, hermite_domain_contains
from src.utils.errors import LplError
from src.utils.logger import logger

PREDICATES = {
    "conv": regions.bounded_conv,
    "hermite_type": regions.bounded_hermite_type,
    "dunkl": regions.bounded_dunkl,
    "local_conv": regions.bounded_local_conv,
    "global_conv": regions.bounded_global_conv,
    "local_hermite": regions.bounded_local_hermite,
}


def _number(text: str):
    return math.inf if text.strip() == "inf" else Fraction(text.strip())


def _verdict(predicate: str, alpha: str, sigma: str, inv_p: str, inv_q: str):
    return PREDICATES[predicate](alpha, sigma, RegionPoint(Fraction(inv_p), Fraction(inv_q)))


# ==================== VERDICTS ====================
@then('every reference example gets its expected verdict and binding constraint')
def step_verify_reference_examples(context):
    """Worked examples with known answers"""
    for case in context.ref["examples"]:
        verdict = _verdict(case["predicate"], case["alpha"], case["sigma"], case["inv_p"], case["inv_q"])
        label = f"{case['predicate']}(alpha={case['alpha']}, sigma={case['sigma']}) at ({case['inv_p']}, {case['inv_q']})"
        assert verdict.bounded == case["bounded"], f"{label}: expected bounded={case['bounded']}, got {verdict}"
        if case["binding"]:
            assert_that(verdict.binding_constraint).contains(case["binding"])
    logger.info(f"Verified: {len(context.ref['examples'])} reference verdicts")


@then('the "{predicate}" operator with alpha {alpha} and sigma {sigma} is bounded at ({inv_p}, {inv_q})')
def step_verify_bounded(context, predicate, alpha, sigma, inv_p, inv_q):
    """Closed boundary lines belong to the region"""
    verdict = _verdict(predicate, alpha, sigma, inv_p, inv_q)
    assert verdict.bounded, f"Expected bounded at ({inv_p}, {inv_q}), got {verdict}"
    logger.info(f"Verified: bounded at ({inv_p}, {inv_q}) by {verdict.binding_constraint}")


@then('the "{predicate}" operator with alpha {alpha} and sigma {sigma} is unbounded at ({inv_p}, {inv_q})')
def step_verify_unbounded(context, predicate, alpha, sigma, inv_p, inv_q):
    """Open boundary lines do not"""
    verdict = _verdict(predicate, alpha, sigma, inv_p, inv_q)
    assert not verdict.bounded, f"Expected unbounded at ({inv_p}, {inv_q}), got {verdict}"
    logger.info(f"Verified: unbounded at ({inv_p}, {inv_q}), {verdict.binding_constraint}")


@then('the convolution region is invariant under (1/p, 1/q) -> (1 - 1/q, 1 - 1/p) for alpha in -3/4, -1/2, 0 and 2')
def step_verify_duality(context):
    """Adjoint operators share the region"""
    axis = [Fraction(k, 20) for k in range(21)]
    for alpha, sigma in product(("-3/4", "-1/2", "0", "2"), ("1/10", "1/4", "3/5")):
        region = conv_region(alpha, sigma)
        for x, y in product(axis, axis):
            pt = RegionPoint(x, y)
            dual = pt.dual
            assert region.contains(x, y) == region.contains(dual.inv_p, dual.inv_q), (
                f"alpha={alpha}, sigma={sigma}: ({x}, {y}) and its dual disagree"
            )
    logger.info("Verified: convolution regions are self-dual")


@when('I ask for the "{predicate}" verdict with alpha {alpha} and sigma {sigma} at ({inv_p}, {inv_q})')
def step_ask_verdict(context, predicate, alpha, sigma, inv_p, inv_q):
    """Attempt a verdict"""
    try:
        context.verdict = _verdict(predicate, alpha, sigma, inv_p, inv_q)
    except LplError as e:
        context.error = e


# ==================== SHAPES AND DOMAINS ====================
@then('every reference figure case gets its shape label')
def step_verify_figure_cases(context):
    for case in context.ref["figure_cases"]:
        assert_that(figure_case(case["alpha"], case["sigma"])).is_equal_to(case["case"])
    logger.info(f"Verified: {len(context.ref['figure_cases'])} shape labels")


@then('the Hermite-type region with alpha {alpha} and sigma {sigma} has no shape label')
def step_verify_no_figure_case(context, alpha, sigma):
    assert_that(figure_case(alpha, sigma)).is_none()
    logger.info(f"Verified: no shape label for alpha={alpha}")


@then('L^p with 1/p = {inv_p} lies in the Hermite-type domain for alpha {alpha}')
def step_verify_in_domain(context, inv_p, alpha):
    assert_that(hermite_domain_contains(alpha, inv_p)).is_true()
    logger.info(f"Verified: 1/p = {inv_p} inside the domain")


@then('L^p with 1/p = {inv_p} does not lie in the Hermite-type domain for alpha {alpha}')
def step_verify_outside_domain(context, inv_p, alpha):
    assert_that(hermite_domain_contains(alpha, inv_p)).is_false()
    logger.info(f"Verified: 1/p = {inv_p} outside the domain")


# ==================== POINTS ====================
@then('the exponents p = {p} and q = {q} give the point ({inv_p}, {inv_q})')
def step_verify_from_exponents(context, p, q, inv_p, inv_q):
    """Exact reciprocals"""
    pt = RegionPoint.from_exponents(_number(p), _number(q))
    assert_that(pt.inv_p).is_equal_to(Fraction(inv_p))
    assert_that(pt.inv_q).is_equal_to(Fraction(inv_q))
    logger.info(f"Verified: (p, q) = ({p}, {q}) -> ({inv_p}, {inv_q})")


@when('I convert the exponents p = {p} and q = {q}')
def step_convert_exponents(context, p, q):
    try:
        RegionPoint.from_exponents(_number(p), _number(q))
    except LplError as e:
        context.error = e


@when('I build the region point ({inv_p}, {inv_q})')
def step_build_point(context, inv_p, inv_q):
    try:
        RegionPoint(Fraction(inv_p), Fraction(inv_q))
    except LplError as e:
        context.error = e


# ==================== FIGURE DATA ====================
@when('I compute the "{setting}" figure data with alpha {alpha} and sigma {sigma}')
def step_compute_figure(context, setting, alpha, sigma):
    """Boundary geometry of one region"""
    try:
        context.figure = figure_data(setting, alpha, sigma)
        context.frame = context.figure.to_frame()
    except LplError as e:
        context.error = e


@then('the figure has {count:d} boundary segments')
def step_verify_segment_count(context, count):
    assert_that(context.frame).is_length(count)
    logger.info(f"Verified: {count} boundary segments")


@then('the segment labelled "{label}" is present')
def step_verify_segment_present(context, label):
    assert_that(context.frame["label"].tolist()).contains(label)
    logger.info(f"Verified: segment '{label}' present")


@then('the segment labelled "{label}" is closed with both end points excluded')
def step_verify_segment_closed(context, label):
    """Closed edge between two excluded corners"""
    rows = context.frame[context.frame["label"] == label]
    assert_that(rows).is_length(1)
    row = rows.iloc[0]
    assert not row["closed_start"] and not row["closed_end"], f"Expected excluded end points, got {row.to_dict()}"
    logger.info(f"Verified: segment '{label}' closed, end points excluded")


@then('the figure frame has the columns {columns}')
def step_verify_figure_columns(context, columns):
    expected = [c.strip() for c in columns.replace(" and ", ", ").split(",")]
    assert_that(list(context.frame.columns)).is_equal_to(expected)
    logger.info("Verified: figure frame columns")


@then('the figure case label is "{case}"')
def step_verify_figure_label(context, case):
    assert_that(context.figure.case_label).is_equal_to(case)
    logger.info(f"Verified: case label '{case}'")


# ==================== RANDOMISED CONSISTENCY ====================
def _random_fraction(rng, lo: int, hi: int, denominator: int) -> Fraction:
    """Fraction k/denominator with lo <= k <= hi"""
    return Fraction(int(rng.integers(lo, hi + 1)), denominator)


@given('{count:d} random rational parameter points')
def step_random_rational_points(context, count):
    """alpha in (-1, 3], sigma in (0, 3], (1/p, 1/q) on a grid of step 1/40"""
    rng = context.rng
    context.rational_points = [
        (
            _random_fraction(rng, -99, 300, 100),
            _random_fraction(rng, 1, 300, 100),
            RegionPoint(_random_fraction(rng, 0, 40, 40), _random_fraction(rng, 0, 40, 40)),
        )
        for _ in range(count)
    ]


@then('the "conv" verdict equals the conjunction of the "local_conv" and "global_conv" verdicts at every point')
def step_verify_local_global_split(context):
    """Bounded exactly when both the local and the global part are"""
    for alpha, sigma, pt in context.rational_points:
        whole = regions.bounded_conv(alpha, sigma, pt).bounded
        local = regions.bounded_local_conv(alpha, sigma, pt).bounded
        global_ = regions.bounded_global_conv(alpha, sigma, pt).bounded
        assert whole == (local and global_), (
            f"alpha={alpha}, sigma={sigma} at ({pt.inv_p}, {pt.inv_q}): conv={whole}, local={local}, global={global_}"
        )
    logger.info(f"Verified: local/global split at {len(context.rational_points)} points")


@then('the "dunkl" verdict equals the "conv" verdict at every point')
def step_verify_dunkl_matches_conv(context):
    """The Dunkl operator shares the convolution region"""
    for alpha, sigma, pt in context.rational_points:
        dunkl = regions.bounded_dunkl(alpha, sigma, pt).bounded
        conv = regions.bounded_conv(alpha, sigma, pt).bounded
        assert dunkl == conv, f"alpha={alpha}, sigma={sigma} at ({pt.inv_p}, {pt.inv_q}): dunkl={dunkl}, conv={conv}"
    logger.info(f"Verified: Dunkl and convolution verdicts agree at {len(context.rational_points)} points")


@then('exactly one of b1, b2, b3 and b4 applies at {count:d} random rational (alpha, sigma)')
def step_verify_single_shape(context, count):
    """The labels split on sigma vs alpha + 1 and sigma vs -alpha/2 - 1/4"""
    seen = set()
    for _ in range(count):
        alpha = _random_fraction(context.rng, -99, -51, 100)
        sigma = _random_fraction(context.rng, 1, 49, 100)
        wide = sigma >= alpha + 1
        steep = sigma > -alpha / 2 - Fraction(1, 4)
        applies = {"b1": wide and steep, "b2": not wide and steep, "b3": wide and not steep, "b4": not wide and not steep}
        matching = [label for label, holds in applies.items() if holds]
        assert_that(matching).is_length(1)
        assert_that(figure_case(alpha, sigma)).is_equal_to(matching[0])
        seen.add(matching[0])
    logger.info(f"Verified: one shape label at each of {count} points, labels seen {sorted(seen)}")
