"""
Step definitions for the command-line front-end
"""

import json
import tempfile
from pathlib import Path

import pandas as pd
from behave import when, then # type: ignore
from assertpy import assert_that # type: ignore
from src import __version__
from src.cli import main
from src.utils.logger import logger


def _run(context, arguments: str, output: str = "") -> None:
    argv = arguments.split()
    if output:
        context.output = Path(tempfile.mkdtemp(prefix="lpl-")) / output
        argv += ["--out", str(context.output)]
    logger.info(f"lpl {' '.join(argv)}")
    context.exit_code = main(argv)


def _json_data(context) -> dict:
    return json.loads(context.output.read_text(encoding="utf-8"))


@when('I run lpl with "{arguments}" writing "{output}"')
def step_run_lpl_with_output(context, arguments, output):
    """Run the CLI with --out in a fresh temporary directory"""
    _run(context, arguments, output)


@when('I run lpl with "{arguments}"')
def step_run_lpl(context, arguments):
    _run(context, arguments)


@when('I evaluate the negative Dunkl reference point through lpl writing "{output}"')
def step_run_dunkl_reference(context, output):
    case = context.ref["dunkl_negative"]
    arguments = f"eval --kind {case['kind']} --alpha {case['alpha']} --sigma {case['sigma']} --x {case['x']} --y {case['y']}"
    _run(context, arguments, output)


@then('the exit code is {code:d}')
def step_verify_exit_code(context, code):
    assert_that(context.exit_code).is_equal_to(code)
    logger.info(f"Verified: exit code {code}")


@then('the JSON output has "{key}" equal to "{expected}"')
def step_verify_json_value(context, key, expected):
    data = _json_data(context)["data"]
    value = data[key]
    actual = json.dumps(value) if isinstance(value, bool) else str(value)
    assert_that(actual).is_equal_to(expected)
    logger.info(f"Verified: {key} = {expected}")


@then('the JSON output has "{key}" containing "{text}"')
def step_verify_json_contains(context, key, text):
    assert_that(_json_data(context)["data"][key]).contains(text)
    logger.info(f"Verified: {key} mentions '{text}'")


@then('the JSON output records the package version')
def step_verify_json_meta(context):
    """Run metadata travels with every JSON file"""
    meta = _json_data(context)["meta"]
    assert_that(meta["versions"]["lpl"]).is_equal_to(__version__)
    assert_that(meta["config"]).contains_key("subcommand")
    logger.info(f"Verified: output records lpl {__version__}")


@then('the CSV output has {rows:d} rows with the columns {columns}')
def step_verify_csv_shape(context, rows, columns):
    frame = pd.read_csv(context.output)
    assert_that(frame).is_length(rows)
    assert_that(list(frame.columns)).is_equal_to([c.strip() for c in columns.split(",")])
    logger.info(f"Verified: {rows} CSV rows")


@then('the CSV output uses CRLF line endings')
def step_verify_crlf(context):
    raw = context.output.read_bytes()
    assert_that(raw.count(b"\r\n")).is_equal_to(raw.count(b"\n"))
    logger.info("Verified: CRLF line endings")


@then('every CSV row has sign {sign:d}')
def step_verify_csv_sign(context, sign):
    frame = pd.read_csv(context.output)
    assert_that(frame["sign"].tolist()).is_equal_to([sign] * len(frame))
    logger.info(f"Verified: {len(frame)} row(s) with sign {sign}")


@then('a JSON summary is written next to the CSV output')
def step_verify_summary_file(context):
    summary = json.loads(context.output.with_suffix(".json").read_text(encoding="utf-8"))
    assert_that(summary["data"]["passed"]).is_true()
    logger.info("Verified: suite summary written")
