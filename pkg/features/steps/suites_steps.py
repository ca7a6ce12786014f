"""
Step definitions for the named experiment suites
"""

from behave import when, then # type: ignore
from assertpy import assert_that # type: ignore
from src.kernels.suites import run_suite
from src.utils.config import config
from src.utils.errors import LplError
from src.utils.logger import logger


@when('I run the "{name}" suite at the {scale} scale')
def step_run_suite(context, name, scale):
    """Run a suite with the scenario's quadrature settings"""
    context.suite = None
    try:
        context.suite = run_suite(name, scale, context.quad, config.THREADS, config.RNG_SEED)
    except LplError as e:
        context.error = e


@then('the suite passes')
def step_verify_suite_passed(context):
    assert context.suite is not None, f"Suite did not run: {context.error!r}"
    assert context.suite.passed, f"Suite '{context.suite.name}' failed: {context.suite.summary}"
    logger.info(f"Verified: suite '{context.suite.name}' passed with {len(context.suite.rows)} row(s)")


@then('the suite frame starts with experiment_id and ends with value_log, sign and achieved_tol')
def step_verify_suite_frame(context):
    """CSV column order"""
    columns = list(context.suite.to_frame().columns)
    assert_that(columns[0]).is_equal_to("experiment_id")
    assert_that(columns[-3:]).is_equal_to(["value_log", "sign", "achieved_tol"])
    logger.info(f"Verified: suite frame columns {columns}")


@then('the suite summary reports the ceiling {ceiling:g}')
def step_verify_suite_ceiling(context, ceiling):
    assert context.suite is not None, f"Suite did not run: {context.error!r}"
    assert_that(context.suite.summary["ceiling"]).is_equal_to(ceiling)
    logger.info(f"Verified: suite ceiling {ceiling}")


@then('the suite passes exactly when every band C is at most the ceiling')
def step_verify_band_verdict(context):
    """Comparability bands report C, domination entries their maximum"""
    summary = context.suite.summary
    ceiling = summary["ceiling"]
    worst = max(band.get("C", band.get("max")) for band in summary["bands"].values())
    assert_that(context.suite.passed).is_equal_to(worst <= ceiling)
    logger.info(f"Verified: worst band {worst:.4g} against ceiling {ceiling}, passed={context.suite.passed}")


@then('every sandwich certificate was checked on more points than it was fitted on')
def step_verify_sandwich_refinement(context):
    for key, entry in context.suite.summary["certificates"].items():
        fitted, checked = entry["calibration"]["points"], entry["check"]["refit"]["points"]
        assert checked > fitted, f"{key}: checked on {checked} points, fitted on {fitted}"
        stable = entry["change"] < context.suite.summary["refinement_change"]
        capped = key.endswith("/far") or entry["calibration"]["fitted"]["C_ratio"] <= context.suite.summary["ceiling"]
        assert_that(entry["passed"]).is_equal_to(entry["check"]["holds"] and stable and capped)
    logger.info(f"Verified: {len(context.suite.summary['certificates'])} certificates checked on finer grids")


@then('the sandwich certificates cover the near and far regions of the conv, dunkl and hermite_osc envelopes')
def step_verify_sandwich_coverage(context):
    keys = list(context.suite.summary["certificates"])
    for selector in ("conv", "dunkl", "hermite_osc"):
        for region in ("near", "far"):
            assert any(k.startswith(f"{selector}/") and k.endswith(f"/{region}") for k in keys), f"no {selector} certificate for the {region} region"
    logger.info(f"Verified: sandwich coverage {keys}")
