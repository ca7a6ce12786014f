"""
Configuration for the Laguerre potential kernel toolkit.
Contains paths, numerical tolerances, calibration grids, parallelism and logging settings.
"""

import os
from pathlib import Path
from typing import Any, Optional

import numpy as np
from dotenv import load_dotenv

# Load environment variables from .env file
env_path = Path(__file__).parent.parent.parent / '.env'
load_dotenv(dotenv_path=env_path)


def _env_bool(name: str, default: str) -> bool:
    return os.getenv(name, default).lower() == "true"


class Config:
    """Main configuration class for the kernel toolkit"""

    # ==================== PROJECT PATHS ====================
    # Project root directory
    ROOT_DIR = Path(__file__).parent.parent.parent

    # Source directories
    SRC_DIR = ROOT_DIR / "src"
    KERNELS_DIR = SRC_DIR / "kernels"
    DATA_DIR = ROOT_DIR / "data"

    # Test directories
    FEATURES_DIR = ROOT_DIR / "features"
    STEPS_DIR = FEATURES_DIR / "steps"

    # Output directories
    REPORTS_DIR = ROOT_DIR / "reports"
    LOGS_DIR = ROOT_DIR / "logs"
    OUTPUT_DIR = Path(os.getenv("LPL_OUTPUT_DIR", str(ROOT_DIR / "output")))

    # ==================== NUMERICS ====================
    # Seed for every randomised sample (0x5EED)
    RNG_SEED = int(os.getenv("LPL_SEED", str(0x5EED)), 0)

    # tanh-sinh step is 2**-QUAD_LEVEL; the error estimate uses the next level
    QUAD_LEVEL = int(os.getenv("LPL_QUAD_LEVEL", "3"))

    # Requested relative accuracy of kernel quadratures
    QUAD_TOL = float(os.getenv("LPL_QUAD_TOL", "1e-10"))

    # Maximal panel width in the log-time variable
    PANEL_WIDTH = float(os.getenv("LPL_PANEL_WIDTH", "2.0"))

    # ==================== CALIBRATION ====================
    C_GRID_MIN = float(os.getenv("LPL_C_GRID_MIN", "1e-3"))
    C_GRID_MAX = float(os.getenv("LPL_C_GRID_MAX", "10"))
    C_GRID_SIZE = int(os.getenv("LPL_C_GRID_SIZE", "25"))

    # Certificates with a larger constant are reported as failures
    C_RATIO_CEILING = float(os.getenv("LPL_C_RATIO_CEILING", "100"))

    # ==================== EXPERIMENTS ====================
    # Accepted deviation of fitted log-log slopes
    SLOPE_TOLERANCE = float(os.getenv("LPL_SLOPE_TOLERANCE", "0.05"))

    # Ratio of consecutive dyadic contributions treated as non-decaying
    DIVERGENCE_RATIO = float(os.getenv("LPL_DIVERGENCE_RATIO", "0.98"))

    # Consecutive non-decaying contributions that declare divergence
    DIVERGENCE_STREAK = int(os.getenv("LPL_DIVERGENCE_STREAK", "3"))

    # Relative increase of a partial norm per window doubling that counts as growth
    GROWTH_INCREASE = float(os.getenv("LPL_GROWTH_INCREASE", "0.10"))

    # ==================== PARALLEL EXECUTION ====================
    # Number of worker threads for grid sweeps
    THREADS = int(os.getenv("LPL_THREADS", str(os.cpu_count() or 1)))

    # ==================== LOGGING SETTINGS ====================
    LOG_LEVEL = os.getenv("LOG_LEVEL", "INFO").upper()

    LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"
    COLOR_LOG_FORMAT = "%(log_color)s%(asctime)s - %(name)s - %(levelname)s%(reset)s - %(message)s"

    LOG_TO_FILE = _env_bool("LOG_TO_FILE", "true")
    LOG_TO_CONSOLE = _env_bool("LOG_TO_CONSOLE", "true")
    LOG_COLOR = _env_bool("LOG_COLOR", "true")

    LOG_FILE_NAME = "lpl.log"

    # ==================== REPORTING SETTINGS ====================
    ALLURE_RESULTS_DIR = REPORTS_DIR / "allure-results"
    OUTPUT_FORMATS = ["csv", "json"]

    # ==================== HELPER METHODS ====================
    @classmethod
    def create_directories(cls) -> None:
        """Create all necessary directories if they don't exist"""
        directories = [
            cls.REPORTS_DIR,
            cls.LOGS_DIR,
            cls.OUTPUT_DIR,
            cls.ALLURE_RESULTS_DIR,
        ]

        for directory in directories:
            directory.mkdir(parents=True, exist_ok=True)

    @classmethod
    def get_log_file_path(cls) -> Path:
        """
        Get log file path

        Returns:
            Path: Full path to log file
        """
        return cls.LOGS_DIR / cls.LOG_FILE_NAME

    @classmethod
    def get_output_path(cls, name: str) -> Path:
        """
        Resolve an output file name inside the output directory

        Args:
            name: File name or relative path

        Returns:
            Path: Absolute output path (absolute names are returned unchanged)
        """
        path = Path(name)
        if path.is_absolute():
            return path
        return cls.OUTPUT_DIR / path

    @classmethod
    def quadrature_config(cls, **overrides: Any):
        """
        Build the quadrature settings from the environment

        Args:
            **overrides: Field values replacing the configured ones (level, tol, panel_width)

        Returns:
            QuadratureConfig: Settings for kernel quadratures
        """
        from src.kernels.quadrature import QuadratureConfig

        settings = {
            "level": cls.QUAD_LEVEL,
            "tol": cls.QUAD_TOL,
            "panel_width": cls.PANEL_WIDTH,
        }
        settings.update(overrides)
        return QuadratureConfig(**settings)

    @classmethod
    def c_grid(cls, size: Optional[int] = None) -> np.ndarray:
        """
        Log-spaced grid of exponential constants scanned by calibration

        Args:
            size: Number of grid values (defaults to C_GRID_SIZE)

        Returns:
            np.ndarray: Increasing grid in [C_GRID_MIN, C_GRID_MAX]
        """
        return np.geomspace(cls.C_GRID_MIN, cls.C_GRID_MAX, size or cls.C_GRID_SIZE)

    @classmethod
    def thread_count(cls, requested: Optional[int] = None) -> int:
        """
        Number of worker threads for a sweep

        Args:
            requested: Explicit request, capped by LPL_THREADS

        Returns:
            int: At least one worker
        """
        if requested is None:
            return max(1, cls.THREADS)
        return max(1, min(requested, cls.THREADS))


# Create an instance for easy access
config = Config()

# Create directories on import
config.create_directories()
