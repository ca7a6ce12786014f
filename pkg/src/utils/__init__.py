"""
Utilities Package
=================
Configuration, logging, errors, parallel sweeps and reference data
"""

from .config import config, Config
from .logger import logger, setup_logger
from .errors import LplError, DomainError, SingularPointError, QuadratureError, ArithmeticDomainError
from .parallel import ParallelRunner, parallel_map
from .reference_data import ReferenceDataLoader, reference_data

__all__ = [
    'config',
    'Config',
    'logger',
    'setup_logger',
    'LplError',
    'DomainError',
    'SingularPointError',
    'QuadratureError',
    'ArithmeticDomainError',
    'ParallelRunner',
    'parallel_map',
    'ReferenceDataLoader',
    'reference_data',
]
