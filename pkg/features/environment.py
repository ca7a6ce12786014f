"""
Behave environment setup and teardown hooks.
"""

import numpy as np

from src.utils.config import config
from src.utils.logger import logger


# =============================================================================
# HOOKS
# =============================================================================

def before_all(context):
    """
    Runs once before all tests.
    """
    logger.info("=" * 80)
    logger.info("Starting Kernel Checks")
    logger.info("=" * 80)
    config.create_directories()
    logger.info(f"Seed: {config.RNG_SEED}, threads: {config.THREADS}, tolerance: {config.QUAD_TOL:.0e}")


def before_scenario(context, scenario):
    """
    Runs before each scenario.
    """
    logger.info(f"🎬 Starting Scenario: {scenario.name}")
    context.quad = config.quadrature_config()
    context.rng = np.random.default_rng(config.RNG_SEED)
    context.error = None


def after_scenario(context, scenario):
    """
    Log the outcome of each scenario.
    """
    if scenario.status.name == "failed":
        logger.error(f"❌ Scenario failed: {scenario.name}")
    else:
        logger.info(f"✅ Scenario {scenario.status.name}: {scenario.name}")


def after_all(_context):
    """
    Runs once after all tests.
    """
    logger.info("=" * 80)
    logger.info("Kernel Checks Completed")
    logger.info("=" * 80)
