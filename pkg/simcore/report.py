#!/usr/bin/env python
"""
Per-trial results, their aggregate and the CSV / summary exports.
"""

import csv
import io
import logging
from dataclasses import dataclass
from pathlib import Path

import numpy as np
import yaml

from geometry.types import RatePoint

logger = logging.getLogger(__name__)

CSV_COLUMNS = ("trial", "slots_phase1", "slots_total", "rate1", "rate2", "decode_ok")


@dataclass(frozen=True)
class TrialResult:
    trial: int
    slots_phase1: int
    slots_total: int
    rates: tuple[float, float]
    decode_ok: tuple[bool, bool]
    direct: tuple[int, int]
    """Packets each user received uncoded."""
    coded: tuple[int, int]
    """Packets each user recovered from coded symbols."""
    discarded: tuple[int, int]
    """Coded symbols each user received that did not raise its rank."""
    decisions: tuple | None = None
    """Per-slot transmitter decisions, when recorded."""

    @property
    def decoded(self) -> bool:
        return all(self.decode_ok)


@dataclass(frozen=True)
class SimReport:
    variant: str
    alloc: np.ndarray
    seed: int
    results: tuple[TrialResult, ...]
    analytic: RatePoint | None = None
    """Rates the fluid analysis predicts for the same allocation."""

    @property
    def trials(self) -> int:
        return len(self.results)

    def _column(self, name: str) -> np.ndarray:
        return np.array([getattr(r, name) for r in self.results], dtype=float)

    @property
    def mean_rates(self) -> np.ndarray:
        return self._column("rates").mean(axis=0)

    @property
    def std_rates(self) -> np.ndarray:
        return self._column("rates").std(axis=0)

    @property
    def mean_slots_total(self) -> float:
        return float(self._column("slots_total").mean())

    @property
    def std_slots_total(self) -> float:
        return float(self._column("slots_total").std())

    @property
    def mean_slots_phase1(self) -> float:
        return float(self._column("slots_phase1").mean())

    @property
    def all_decoded(self) -> bool:
        return all(r.decoded for r in self.results)

    def to_summary(self) -> dict:
        summary = {
            "variant": self.variant,
            "k": self.alloc.tolist(),
            "seed": self.seed,
            "trials": self.trials,
            "mean_rate1": float(self.mean_rates[0]),
            "mean_rate2": float(self.mean_rates[1]),
            "std_rate1": float(self.std_rates[0]),
            "std_rate2": float(self.std_rates[1]),
            "mean_slots_phase1": self.mean_slots_phase1,
            "mean_slots_total": self.mean_slots_total,
            "std_slots_total": self.std_slots_total,
            "all_decoded": self.all_decoded,
        }
        if self.analytic is not None:
            summary["analytic_rate1"] = self.analytic[0]
            summary["analytic_rate2"] = self.analytic[1]
        return summary


def format_trials_csv(report: SimReport) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in report.results:
        writer.writerow(
            [r.trial, r.slots_phase1, r.slots_total, f"{r.rates[0]:.10f}", f"{r.rates[1]:.10f}", str(r.decoded).lower()]
        )
    return buffer.getvalue()


def write_trials_csv(report: SimReport, path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(format_trials_csv(report))
    logger.info(f"Wrote {report.trials} trials to {path}")
    return path


def write_summary(report: SimReport, path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(yaml.safe_dump(report.to_summary(), sort_keys=False))
    logger.info(f"Wrote simulation summary to {path}")
    return path


def format_summary(report: SimReport) -> str:
    lines = [
        f"Variant {report.variant}, k={report.alloc.tolist()}, seed {report.seed}, {report.trials} trials",
        f"{'USER':<6} | {'MEAN RATE':>10} | {'STD':>8} | {'ANALYTIC':>10}",
        "-" * 44,
    ]
    for u in range(2):
        analytic = f"{report.analytic[u]:>10.5f}" if report.analytic is not None else f"{'-':>10}"
        lines.append(f"{u + 1:<6} | {report.mean_rates[u]:>10.5f} | {report.std_rates[u]:>8.5f} | {analytic}")
    lines.append("-" * 44)
    lines.append(
        f"slots: phase1 {report.mean_slots_phase1:.1f}, total {report.mean_slots_total:.1f} "
        f"(std {report.std_slots_total:.1f}); all decoded: {report.all_decoded}"
    )
    return "\n".join(lines)
