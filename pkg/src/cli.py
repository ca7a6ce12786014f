"""
Command-line front-end.

Sub-commands: eval, envelope-check, region, figure, experiments.
Exit codes: 0 pass, 1 verification failure, 2 usage or domain error.
"""

import argparse
import json
import math
import platform
import sys
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd
import scipy

from src import __version__
from src.kernels.envelopes import SELECTORS, GridSpec, calibrate_envelope
from src.kernels.lp_lq_regions import SETTINGS, RegionPoint, as_fraction, figure_case, figure_data, region_for
from src.kernels.potential_kernels import KernelKind, potential_kernel_grid
from src.kernels.special_functions import Params
from src.kernels.suites import SCALES, SUITES, run_suite
from src.utils.config import config
from src.utils.errors import DomainError, LplError
from src.utils.logger import logger

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2

DEFAULT_FORMATS = {
    "eval": "csv",
    "envelope-check": "json",
    "region": "json",
    "figure": "csv",
    "experiments": "csv",
}


# ==================== RUN CONFIG ====================
@dataclass
class RunConfig:
    """Validated arguments of one invocation"""

    subcommand: str
    alpha: Optional[float] = None
    sigma: Optional[float] = None
    kind: Optional[str] = None
    grid: Optional[str] = None
    x: Optional[float] = None
    y: Optional[float] = None
    p: Optional[Union[Fraction, float]] = None
    q: Optional[Union[Fraction, float]] = None
    tol: Optional[float] = None
    seed: Optional[int] = None
    out: Optional[str] = None
    format: str = "csv"
    selector: str = "conv"
    setting: str = "conv"
    resolution: int = 11
    ceiling: float = field(default_factory=lambda: config.C_RATIO_CEILING)
    suites: Tuple[str, ...] = ()
    scale: str = "quick"

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "RunConfig":
        known = {k: v for k, v in vars(args).items() if k in cls.__dataclass_fields__ and v is not None}
        if "suites" in known:
            known["suites"] = tuple(known["suites"])
        known.setdefault("format", DEFAULT_FORMATS[args.subcommand])
        run = cls(**known)
        run.validate()
        return run

    @property
    def params(self) -> Params:
        return Params(self.alpha, self.sigma)  # type: ignore[arg-type]

    def quad(self):
        return config.quadrature_config(tol=self.tol) if self.tol is not None else config.quadrature_config()

    def validate(self) -> None:
        """
        Check every precondition of the target operation before any computation

        Raises:
            DomainError: Naming the violated constraint
        """
        if self.tol is not None and not 0 < self.tol < 1:
            raise DomainError(f"--tol must lie in (0, 1), got {self.tol}")
        if self.subcommand in ("eval", "envelope-check"):
            self._require("alpha", "sigma", "kind")
            kind = KernelKind.parse(self.kind)
            Params(self.alpha, self.sigma)  # type: ignore[arg-type]
            if self.grid is not None:
                GridSpec.parse(self.grid)
            elif self.subcommand == "envelope-check":
                raise DomainError("envelope-check requires --grid")
            elif self.x is None or self.y is None:
                raise DomainError("eval requires --grid or both --x and --y")
            elif kind.half_line and not (self.x > 0 and self.y > 0):
                raise DomainError(f"{kind.value} kernel requires x, y > 0, got ({self.x}, {self.y})")
            if self.subcommand == "envelope-check" and self.selector not in SELECTORS:
                raise DomainError(f"unknown selector '{self.selector}', expected one of: {', '.join(SELECTORS)}")
        elif self.subcommand in ("region", "figure"):
            self._require("alpha", "sigma")
            region_for(self.setting, self.alpha, self.sigma)  # type: ignore[arg-type]
            if self.subcommand == "region":
                self._require("p", "q")
                RegionPoint.from_exponents(self.p, self.q)  # type: ignore[arg-type]
        elif self.subcommand == "experiments":
            unknown = [s for s in self.suites if s not in SUITES]
            if unknown:
                raise DomainError(f"unknown suite(s) {', '.join(unknown)}, expected: {', '.join(SUITES)}")
            if self.scale not in SCALES:
                raise DomainError(f"--scale must be one of {', '.join(SCALES)}")

    def _require(self, *names: str) -> None:
        missing = [f"--{n}" for n in names if getattr(self, n) is None]
        if missing:
            raise DomainError(f"{self.subcommand} requires {', '.join(missing)}")

    def output_path(self) -> Path:
        name = self.out or f"{self.subcommand}.{self.format}"
        return config.get_output_path(name)


# ==================== OUTPUT ====================
def _jsonable(value: Any) -> Any:
    """Plain JSON types; non-finite floats become the strings inf, -inf and nan"""
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, np.generic):
        value = value.item()
    if isinstance(value, float) and not math.isfinite(value):
        return "nan" if math.isnan(value) else ("inf" if value > 0 else "-inf")
    return value


def _meta(run: RunConfig) -> Dict[str, Any]:
    return {
        "config": asdict(run),
        "versions": {
            "lpl": __version__,
            "python": platform.python_version(),
            "numpy": np.__version__,
            "scipy": scipy.__version__,
            "pandas": pd.__version__,
        },
    }


def write_json(run: RunConfig, data: Any, path: Optional[Path] = None) -> Path:
    path = path or run.output_path()
    path.parent.mkdir(parents=True, exist_ok=True)
    text = json.dumps(_jsonable({"meta": _meta(run), "data": data}), indent=2, allow_nan=False)
    path.write_text(text + "\n", encoding="utf-8")
    logger.info(f"Wrote {path}")
    return path


def write_csv(run: RunConfig, frame: pd.DataFrame, path: Optional[Path] = None) -> Path:
    path = path or run.output_path()
    path.parent.mkdir(parents=True, exist_ok=True)
    frame.to_csv(path, index=False, encoding="utf-8", lineterminator="\r\n")
    logger.info(f"Wrote {len(frame)} row(s) to {path}")
    return path


def _emit(run: RunConfig, frame: Optional[pd.DataFrame], data: Any) -> Path:
    if run.format == "csv" and frame is not None:
        return write_csv(run, frame)
    return write_json(run, data)


# ==================== SUB-COMMANDS ====================
def cmd_eval(run: RunConfig) -> int:
    """Kernel values on a grid or at a single point, one row per point"""
    kind = KernelKind.parse(run.kind)
    if run.grid is not None:
        points = GridSpec.parse(run.grid).points()
    else:
        points = [(run.x, run.y)]
    results = potential_kernel_grid(kind, run.params, points, run.quad())
    frame = pd.DataFrame(
        {
            "x": [p[0] for p in points],
            "y": [p[1] for p in points],
            "sign": [r.value.sign for r in results],
            "log_abs": [r.value.log_abs for r in results],
            "achieved_tol": [r.achieved_tol for r in results],
        }
    )
    _emit(run, frame, frame.to_dict(orient="records"))
    return EXIT_OK


def cmd_envelope_check(run: RunConfig) -> int:
    """Certificate of one envelope over a grid; passes iff C_ratio <= ceiling"""
    grid = GridSpec.parse(run.grid)  # type: ignore[arg-type]
    report = calibrate_envelope(run.kind, run.params, grid, run.selector, run.quad())
    passed = report.C_ratio <= run.ceiling
    data = {**report.to_dict(), "C_ratio": report.C_ratio, "ceiling": run.ceiling, "passed": passed}
    write_json(run, data)
    if not passed:
        logger.error(f"Envelope check failed: C_ratio={report.C_ratio:.4g} exceeds {run.ceiling:g}")
        return EXIT_FAILED
    logger.info(f"Envelope check passed: C_ratio={report.C_ratio:.4g}")
    return EXIT_OK


def cmd_region(run: RunConfig) -> int:
    """Boundedness verdict at (1/p, 1/q) with the binding constraint"""
    pt = RegionPoint.from_exponents(run.p, run.q)  # type: ignore[arg-type]
    verdict = region_for(run.setting, run.alpha, run.sigma).verdict(pt)  # type: ignore[arg-type]
    data = {
        "setting": run.setting,
        "alpha": run.alpha,
        "sigma": run.sigma,
        "inv_p": str(pt.inv_p),
        "inv_q": str(pt.inv_q),
        **asdict(verdict),
        "figure_case": figure_case(run.alpha, run.sigma) if run.setting == "hermite_type" else None,  # type: ignore[arg-type]
    }
    frame = pd.DataFrame([data]) if run.format == "csv" else None
    _emit(run, frame, data)
    logger.info(f"{run.setting} region at ({pt.inv_p}, {pt.inv_q}): {'bounded' if verdict.bounded else 'unbounded'} ({verdict.binding_constraint})")
    return EXIT_OK


def cmd_figure(run: RunConfig) -> int:
    """Boundary polygon of a region for plotting"""
    figure = figure_data(run.setting, run.alpha, run.sigma, run.resolution)  # type: ignore[arg-type]
    _emit(run, figure.to_frame(), figure.to_dict())
    return EXIT_OK


def cmd_experiments(run: RunConfig) -> int:
    """Named suites; CSV rows plus a JSON summary written next to them"""
    names = run.suites or tuple(SUITES)
    results = [run_suite(name, run.scale, run.quad(), seed=run.seed) for name in names]
    summary = {"suites": [r.to_dict() for r in results], "passed": all(r.passed for r in results)}
    if run.format == "csv":
        frame = pd.concat([r.to_frame().assign(suite=r.name) for r in results], ignore_index=True)
        path = write_csv(run, frame)
        write_json(run, summary, path.with_suffix(".json"))
    else:
        write_json(run, {**summary, "rows": {r.name: r.rows for r in results}})
    failed = [r.name for r in results if not r.passed]
    if failed:
        logger.error(f"Suites failed: {', '.join(failed)}")
        return EXIT_FAILED
    logger.info(f"All {len(results)} suite(s) passed")
    return EXIT_OK


COMMANDS = {
    "eval": cmd_eval,
    "envelope-check": cmd_envelope_check,
    "region": cmd_region,
    "figure": cmd_figure,
    "experiments": cmd_experiments,
}


# ==================== PARSER ====================
def exponent(text: str) -> Union[Fraction, float]:
    """Lebesgue exponent: an exact rational >= 1 (e.g. 4/3 or 1.2) or 'inf'"""
    if text.strip().lower() in ("inf", "infinity"):
        return math.inf
    try:
        return as_fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"invalid exponent '{text}'") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--tol', type=float, help='Requested relative quadrature tolerance')
    common.add_argument('--seed', type=int, help='Seed of random samples (defaults to LPL_SEED)')
    common.add_argument('--out', help='Output file, relative names go to the output directory')
    common.add_argument('--format', choices=config.OUTPUT_FORMATS, help='Output format')

    model = argparse.ArgumentParser(add_help=False)
    model.add_argument('--alpha', type=float, help='Type parameter, > -1')
    model.add_argument('--sigma', type=float, help='Order of the potential, > 0')

    parser = argparse.ArgumentParser(prog='lpl', description='Laguerre and Dunkl-Laguerre potential kernel toolkit')
    sub = parser.add_subparsers(dest='subcommand', required=True)

    p_eval = sub.add_parser('eval', parents=[common, model], help='Evaluate a potential kernel')
    p_eval.add_argument('--kind', choices=[k.value for k in KernelKind], required=True, help='Kernel setting')
    p_eval.add_argument('--grid', help='Grid spec, e.g. log:0.01:10:50;offdiag=1e-6;signs=both')
    p_eval.add_argument('--x', type=float, help='Single point, first argument')
    p_eval.add_argument('--y', type=float, help='Single point, second argument')

    p_env = sub.add_parser('envelope-check', parents=[common, model], help='Calibrate an envelope certificate')
    p_env.add_argument('--kind', choices=[k.value for k in KernelKind], required=True, help='Kernel setting')
    p_env.add_argument('--grid', required=True, help='Grid spec')
    p_env.add_argument('--selector', choices=SELECTORS, default='conv', help='Envelope family')
    p_env.add_argument('--ceiling', type=float, help='Largest accepted C_ratio (defaults to LPL_C_RATIO_CEILING)')

    p_region = sub.add_parser('region', parents=[common, model], help='L^p-L^q verdict at one point')
    p_region.add_argument('--setting', choices=SETTINGS, default='conv', help='Operator setting')
    p_region.add_argument('--p', type=exponent, required=True, help='Source exponent, >= 1 or inf')
    p_region.add_argument('--q', type=exponent, required=True, help='Target exponent, >= 1 or inf')

    p_figure = sub.add_parser('figure', parents=[common, model], help='Region boundary for plotting')
    p_figure.add_argument('--setting', choices=SETTINGS, default='conv', help='Operator setting')
    p_figure.add_argument('--resolution', type=int, default=11, help='Side of the membership sample grid')

    p_exp = sub.add_parser('experiments', parents=[common], help='Run named experiment suites')
    p_exp.add_argument('--suite', dest='suites', action='append', choices=list(SUITES), help='Suite to run (repeatable, default all)')
    p_exp.add_argument('--scale', choices=SCALES, default='quick', help='quick or acceptance sized sweeps')

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    """
    Parse, validate and dispatch

    Args:
        argv: Arguments without the program name (defaults to sys.argv[1:])

    Returns:
        int: Exit code
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE

    try:
        run = RunConfig.from_args(args)
        logger.info(f"lpl {run.subcommand}: {asdict(run)}")
        return COMMANDS[run.subcommand](run)
    except DomainError as e:
        logger.error(f"{args.subcommand}: {e}")
        return EXIT_USAGE
    except LplError as e:
        logger.error(f"{args.subcommand} failed: {e}")
        return EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
