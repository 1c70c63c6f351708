#!/usr/bin/env python
"""
Configuration for the weighted-rate search and the region sweeps.
"""

import logging
from dataclasses import dataclass
from pathlib import Path

import draccus

from .exceptions import SearchConfigError

logger = logging.getLogger(__name__)


@dataclass
class SearchConfig:
    """Knobs of the allocation search. Defaults reproduce the reference figures."""

    # Grid stage
    grid_resolution: int = 21
    """Points per allocation coordinate; the grid holds the compositions of grid_resolution - 1."""
    max_grid_points: int = 250_000
    """Above this many grid points the resolution is lowered."""

    # Local polish
    multistarts: int = 8
    """Best grid cells used as pattern-search starts."""
    max_iterations: int = 2000
    tolerance: float = 1e-7
    """Pattern search stops once its step drops below this."""
    seed: int = 0
    """Permutes the polling order that breaks ties between equal moves."""
    lp_polish: bool = True
    """Also solve the linear program of the variant and keep the better point."""

    # Region construction
    sweep_angles: int = 64
    """Weight directions swept for the coding schemes."""
    refine_rounds: int = 8
    """Rounds of edge-normal queries after the sweep; 0 keeps the plain sweep."""
    sweep_count: int = 2048
    """Directions swept for support-function regions."""

    def __post_init__(self):
        if self.grid_resolution < 2:
            raise SearchConfigError(f"grid_resolution must be >= 2, got {self.grid_resolution}")
        if self.multistarts < 1:
            raise SearchConfigError(f"multistarts must be >= 1, got {self.multistarts}")
        if self.max_iterations < 0:
            raise SearchConfigError(f"max_iterations must be >= 0, got {self.max_iterations}")
        if not self.tolerance > 0:
            raise SearchConfigError(f"tolerance must be > 0, got {self.tolerance}")
        if self.max_grid_points < 1:
            raise SearchConfigError(f"max_grid_points must be >= 1, got {self.max_grid_points}")
        if self.sweep_angles < 1:
            raise SearchConfigError(f"sweep_angles must be >= 1, got {self.sweep_angles}")
        if self.refine_rounds < 0:
            raise SearchConfigError(f"refine_rounds must be >= 0, got {self.refine_rounds}")
        if self.sweep_count < 8:
            raise SearchConfigError(f"sweep_count must be >= 8, got {self.sweep_count}")


def load_search_config(path: str | Path) -> SearchConfig:
    """Read a SearchConfig from YAML; missing keys keep their defaults."""
    path = Path(path)
    if not path.is_file():
        raise SearchConfigError(f"search config not found: {path}")
    try:
        with open(path) as f:
            cfg = draccus.load(SearchConfig, f)
    except SearchConfigError:
        raise
    except Exception as e:
        # draccus reports decoding problems through its own and builtin exception types
        raise SearchConfigError(f"cannot parse search config {path}: {e}") from e
    logger.info(f"Loaded search config from {path}")
    return cfg
