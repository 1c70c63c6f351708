#!/usr/bin/env python
"""
Command-line entry point for layered packet erasure broadcast channels.

    python lpebc.py region   --channel channels/correlated.yaml --scheme cof-outer --out cof.csv
    python lpebc.py corners  --channel channels/correlated.yaml --scheme ach2-inter
    python lpebc.py simulate --channel channels/correlated.yaml --variant inter --alloc allocations/corner_inter.yaml
    python lpebc.py compare  --channel channels/correlated.yaml
    python lpebc.py plot     --inputs cof.csv ach1.csv --out figure.svg

Exit codes: 0 success, 1 computational failure, 2 usage or input error.
"""

import csv
import logging
import sys
from dataclasses import asdict, dataclass, replace
from pathlib import Path
from pprint import pformat
from typing import Annotated, Literal, Union

import tyro

from channel import ChannelError, compute_stats, load_channel
from geometry import RegionFormatError, format_corner_csv, read_corner_csv, render_svg, support, write_corner_csv
from geometry.types import Weights
from gf import ProtocolIntegrityError
from optimizer import (
    SCHEME_ALIASES,
    SearchConfig,
    SearchConfigError,
    corner_rows,
    feedback_gain,
    inclusion_verdicts,
    load_search_config,
    region_gap,
    trace_region,
)
from schemes import AllocationError, load_allocation
from simcore import (
    DEFAULT_WINDOW,
    SimConfig,
    SimConfigError,
    format_summary,
    integer_allocation,
    run_batch,
    write_summary,
    write_trials_csv,
)
from utils.logging_utils import init_logging
from utils.table_utils import format_table

logger = logging.getLogger("lpebc")

SchemeName = Literal["no-csit", "full-la", "cof-outer", "ach1", "ach2-idle", "ach2-intra", "ach2-inter"]
DISPLAY_NAMES = {internal: name for name, internal in SCHEME_ALIASES.items()}
COMPARE_SCHEMES = ("no-csit", "full-la", "cof-outer", "ach1", "ach2-idle", "ach2-intra", "ach2-inter")

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2

INPUT_ERRORS = (
    ChannelError,
    AllocationError,
    RegionFormatError,
    SearchConfigError,
    SimConfigError,
    FileNotFoundError,
    ValueError,
)


@dataclass
class RegionCommand:
    """Write the corner CSV of one scheme's region."""

    channel: Path
    """Channel document (YAML with K, Q, pmf)."""
    scheme: SchemeName
    sweep: int = 2048
    """Directions swept for support-function regions."""
    search_config: Path | None = None
    """YAML file with optimizer settings for the coding schemes."""
    out: Path | None = None
    """Output CSV; printed to stdout when omitted."""


@dataclass
class CornersCommand:
    """Print the corner report of one scheme: rates, supporting angle and allocation."""

    channel: Path
    scheme: SchemeName
    sweep: int = 2048
    search_config: Path | None = None
    out: Path | None = None
    """Optional CSV copy of the report."""


@dataclass
class SimulateCommand:
    """Run the slot-level protocol and compare with the fluid analysis."""

    channel: Path
    variant: Literal["idle", "intra", "inter"]
    alloc: Path
    """Allocation document; scaled to `packets` packets in total."""
    packets: int = 10_000
    seed: int = 0
    trials: int = 10
    scheduling: Literal["sequential", "randomized"] | None = None
    window: int = DEFAULT_WINDOW
    """Most undecoded pool packets per user in one coded symbol."""
    out: Path | None = None
    """Per-trial CSV; a summary YAML is written next to it."""


@dataclass
class CompareCommand:
    """Build every region and report corners, inclusion verdicts and gaps."""

    channel: Path
    sweep: int = 2048
    search_config: Path | None = None
    out: Path | None = None
    """Optional text copy of the report."""


@dataclass
class PlotCommand:
    """Overlay corner CSVs in one SVG figure."""

    inputs: tuple[Path, ...]
    out: Path
    labels: tuple[str, ...] = ()
    """Legend entries; file stems by default."""
    title: str | None = None


Command = Union[
    Annotated[RegionCommand, tyro.conf.subcommand("region")],
    Annotated[CornersCommand, tyro.conf.subcommand("corners")],
    Annotated[SimulateCommand, tyro.conf.subcommand("simulate")],
    Annotated[CompareCommand, tyro.conf.subcommand("compare")],
    Annotated[PlotCommand, tyro.conf.subcommand("plot")],
]


def _search_config(path: Path | None, sweep: int) -> SearchConfig:
    cfg = load_search_config(path) if path is not None else SearchConfig()
    return replace(cfg, sweep_count=sweep)


def _stats(path: Path):
    return compute_stats(load_channel(path))


def cmd_region(cmd: RegionCommand) -> int:
    trace = trace_region(_stats(cmd.channel), cmd.scheme, _search_config(cmd.search_config, cmd.sweep))
    if cmd.out is None:
        print(format_corner_csv(trace.region), end="")
    else:
        write_corner_csv(trace.region, cmd.out)
    return EXIT_OK


def _corner_table(rows) -> str:
    return format_table(
        ("SCHEME", "R1", "R2", "ANGLE", "ALLOCATION"),
        [(DISPLAY_NAMES[r.scheme], r.r1, r.r2, f"{r.angle:.2f}", r.allocation) for r in rows],
    )


def cmd_corners(cmd: CornersCommand) -> int:
    trace = trace_region(_stats(cmd.channel), cmd.scheme, _search_config(cmd.search_config, cmd.sweep))
    rows = corner_rows(trace)
    print(_corner_table(rows))
    if cmd.out is not None:
        cmd.out.parent.mkdir(parents=True, exist_ok=True)
        with open(cmd.out, "w", newline="") as f:
            writer = csv.writer(f, lineterminator="\n")
            writer.writerow(("scheme", "r1", "r2", "angle", "allocation"))
            for r in rows:
                writer.writerow((DISPLAY_NAMES[r.scheme], f"{r.r1:.10f}", f"{r.r2:.10f}", f"{r.angle:.6f}", r.allocation))
        logger.info(f"Wrote {len(rows)} corners to {cmd.out}")
    return EXIT_OK


def cmd_simulate(cmd: SimulateCommand) -> int:
    channel = load_channel(cmd.channel)
    alloc = load_allocation(cmd.alloc, Q=channel.Q)
    cfg = SimConfig(
        channel=channel,
        variant=cmd.variant,
        alloc=integer_allocation(alloc, cmd.packets),
        seed=cmd.seed,
        trials=cmd.trials,
        scheduling=cmd.scheduling,
        window=cmd.window,
    )
    report = run_batch(cfg)
    print(format_summary(report))
    if cmd.out is not None:
        write_trials_csv(report, cmd.out)
        write_summary(report, cmd.out.with_suffix(".yaml"))
    if not report.all_decoded:
        logger.error("At least one user failed to decode its packets")
        return EXIT_FAILURE
    return EXIT_OK


def compare_report(stats, cfg: SearchConfig) -> str:
    traces = {DISPLAY_NAMES[t.scheme]: t for t in (trace_region(stats, name, cfg) for name in COMPARE_SCHEMES)}
    sum_rate = Weights((1.0, 1.0))
    summary = format_table(
        ("SCHEME", "CORNERS", "MAX R1", "MAX R2", "SUM RATE"),
        [
            (name, len(t.region.frontier), *t.region.max_rates, support(t.region, sum_rate))
            for name, t in traces.items()
        ],
    )
    corners = _corner_table([row for t in traces.values() for row in corner_rows(t)])

    verdicts = inclusion_verdicts({t.scheme: t.region for t in traces.values()})
    inclusion = [
        f"{DISPLAY_NAMES[v.inner]} in {DISPLAY_NAMES[v.outer]}: "
        + ("yes" if v.holds else f"NO, corner {v.worst_corner} outside")
        for v in verdicts
    ]
    gap = region_gap(traces["ach2-inter"].region, traces["cof-outer"].region, cfg.sweep_count)
    gain = feedback_gain(stats, cfg.sweep_count)
    return "\n".join(
        [
            summary,
            "",
            corners,
            "",
            "Inclusion:",
            *(f"  {line}" for line in inclusion),
            "",
            f"Max gap ach2-inter to cof-outer: {gap.value:.6f} at {gap.angle:.2f} deg",
            f"Max feedback gain (cof-outer minus no-csit): {gain.value:.6f} at {gain.angle:.2f} deg",
        ]
    )


def cmd_compare(cmd: CompareCommand) -> int:
    report = compare_report(_stats(cmd.channel), _search_config(cmd.search_config, cmd.sweep))
    print(report)
    if cmd.out is not None:
        cmd.out.parent.mkdir(parents=True, exist_ok=True)
        cmd.out.write_text(report + "\n")
        logger.info(f"Wrote comparison to {cmd.out}")
    return EXIT_OK


def cmd_plot(cmd: PlotCommand) -> int:
    if not cmd.inputs:
        raise ValueError("plot needs at least one corner CSV")
    if cmd.labels and len(cmd.labels) != len(cmd.inputs):
        raise ValueError(f"{len(cmd.labels)} labels for {len(cmd.inputs)} inputs")
    labels = cmd.labels or tuple(path.stem for path in cmd.inputs)
    regions = [(label, read_corner_csv(path)) for label, path in zip(labels, cmd.inputs)]
    render_svg(regions, cmd.out, title=cmd.title)
    return EXIT_OK


HANDLERS = {
    RegionCommand: cmd_region,
    CornersCommand: cmd_corners,
    SimulateCommand: cmd_simulate,
    CompareCommand: cmd_compare,
    PlotCommand: cmd_plot,
}


def main(argv: list[str] | None = None) -> int:
    init_logging()
    try:
        cmd = tyro.cli(Command, args=argv, prog="lpebc")
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE
    except INPUT_ERRORS as e:
        logger.error(f"{e}")
        return EXIT_USAGE
    logger.info(pformat(asdict(cmd)))

    try:
        return HANDLERS[type(cmd)](cmd)
    except ProtocolIntegrityError as e:
        logger.error(f"Protocol integrity failure: {e.message}")
        return EXIT_FAILURE
    except INPUT_ERRORS as e:
        logger.error(f"{e}")
        return EXIT_USAGE
    except RuntimeError as e:
        logger.error(f"Computation failed: {e}")
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
