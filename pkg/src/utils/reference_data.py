"""
Utility module for loading reference cases from JSON and parameter sweeps from CSV
"""

import json
from typing import Any, Dict, List, Optional

import pandas as pd

from src.utils.config import config
from src.utils.logger import logger


class ReferenceDataLoader:
    """Loads and provides access to reference constants and parameter grids"""

    _instance = None
    _cases: Optional[Dict[str, Any]] = None
    _grid: Optional[pd.DataFrame] = None

    def __new__(cls):
        """Singleton pattern to ensure data is loaded only once"""
        if cls._instance is None:
            cls._instance = super(ReferenceDataLoader, cls).__new__(cls)
        return cls._instance

    def __init__(self):
        if self._cases is None:
            self._load_cases()
        if self._grid is None:
            self._load_grid()

    def _load_cases(self) -> None:
        path = config.DATA_DIR / "reference_cases.json"
        try:
            with open(path, "r", encoding="utf-8") as file:
                ReferenceDataLoader._cases = json.load(file)
        except FileNotFoundError:
            logger.warning(f"reference_cases.json not found at {path}")
            ReferenceDataLoader._cases = {}

    def _load_grid(self) -> None:
        path = config.DATA_DIR / "parameter_grid.csv"
        try:
            ReferenceDataLoader._grid = pd.read_csv(path)
        except FileNotFoundError:
            logger.warning(f"parameter_grid.csv not found at {path}")
            ReferenceDataLoader._grid = pd.DataFrame(columns=["sweep", "alpha", "sigma"])

    def section(self, name: str) -> Dict[str, Any]:
        """
        Get one top-level section of reference_cases.json

        Args:
            name: Section name (a module name such as "aux_integrals")

        Returns:
            dict: The section

        Raises:
            KeyError: If the section does not exist
        """
        cases = self._cases or {}
        if name not in cases:
            raise KeyError(f"reference section '{name}' not found, available: {', '.join(cases)}")
        return cases[name]

    def sweep(self, name: str) -> pd.DataFrame:
        """
        Rows of parameter_grid.csv belonging to one sweep

        Example:
            >>> reference_data.sweep("spectral")[["alpha", "sigma"]].values.tolist()
            [[-0.75, 0.3], [-0.75, 1.0], ...]
        """
        grid = self._grid if self._grid is not None else pd.DataFrame()
        rows = grid[grid["sweep"] == name]
        if rows.empty:
            raise KeyError(f"sweep '{name}' not found in parameter_grid.csv")
        return rows.reset_index(drop=True)

    def sweep_params(self, name: str) -> List[tuple]:
        """(alpha, sigma) tuples of a sweep"""
        rows = self.sweep(name)
        return [(float(a), float(s)) for a, s in zip(rows["alpha"], rows["sigma"])]


# Create a singleton instance for easy access
reference_data = ReferenceDataLoader()
