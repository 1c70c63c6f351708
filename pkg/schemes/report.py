#!/usr/bin/env python

# Key-value export of evaluated allocations

import logging
from collections.abc import Mapping
from pathlib import Path

import yaml

from .types import PhaseEvaluation

logger = logging.getLogger(__name__)


def format_phase_report(evaluations: Mapping[str, PhaseEvaluation]) -> str:
    document = {name: pe.to_report() for name, pe in evaluations.items()}
    return yaml.safe_dump(document, sort_keys=False, default_flow_style=None)


def write_phase_report(evaluations: Mapping[str, PhaseEvaluation], path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(format_phase_report(evaluations))
    logger.info(f"Wrote {len(evaluations)} phase report(s) to {path}")
    return path
