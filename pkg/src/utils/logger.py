"""
Logger configuration for the kernel toolkit.
"""

import logging
import sys
from typing import Optional

import colorlog

from src.utils.config import config


def _console_formatter() -> logging.Formatter:
    if not config.LOG_COLOR:
        return logging.Formatter(config.LOG_FORMAT)
    return colorlog.ColoredFormatter(
        config.COLOR_LOG_FORMAT,
        log_colors={
            "DEBUG": "cyan",
            "INFO": "green",
            "WARNING": "yellow",
            "ERROR": "red",
            "CRITICAL": "bold_red",
        },
    )


def setup_logger(name: str = __name__, log_level: Optional[str] = None) -> logging.Logger:
    """
    Setup and configure logger

    Args:
        name: Logger name
        log_level: Log level (DEBUG, INFO, WARNING, ERROR, CRITICAL)

    Returns:
        logging.Logger: Configured logger instance
    """
    level = log_level or config.LOG_LEVEL
    log_level_obj = getattr(logging, level.upper(), logging.INFO)

    logger = logging.getLogger(name)
    logger.setLevel(log_level_obj)

    # Avoid duplicate handlers
    if logger.handlers:
        return logger

    if config.LOG_TO_CONSOLE:
        console_handler = logging.StreamHandler(sys.stdout)
        console_handler.setLevel(log_level_obj)
        console_handler.setFormatter(_console_formatter())
        logger.addHandler(console_handler)

    if config.LOG_TO_FILE:
        file_handler = logging.FileHandler(config.get_log_file_path(), mode='a', encoding='utf-8')
        file_handler.setLevel(log_level_obj)
        file_handler.setFormatter(logging.Formatter(config.LOG_FORMAT))
        logger.addHandler(file_handler)

    return logger


# Create default logger
logger = setup_logger("lpl")
