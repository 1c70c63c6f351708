#!/usr/bin/env python
"""
Corner CSV interchange and SVG rendering of region polygons.
"""

import csv
import io
import logging
from collections.abc import Sequence
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
from matplotlib.patches import Polygon  # noqa: E402

from .region import convex_hull  # noqa: E402
from .types import RegionPolygon  # noqa: E402

logger = logging.getLogger(__name__)

CSV_HEADER = ("r1", "r2")
SVG_SIZE_PT = 600
COLORS = ["#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf"]


class RegionFormatError(ValueError):
    """Exception raised when a corner CSV cannot be parsed."""

    def __init__(self, message="Malformed corner CSV."):
        self.message = message
        super().__init__(self.message)


def format_corner_csv(region: RegionPolygon) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for corner in region.corners:
        writer.writerow([f"{corner[0]:.10f}", f"{corner[1]:.10f}"])
    return buffer.getvalue()


def write_corner_csv(region: RegionPolygon, path: str | Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(format_corner_csv(region))
    logger.info(f"Wrote {len(region)} corners to {path}")
    return path


def read_corner_csv(path: str | Path) -> RegionPolygon:
    path = Path(path)
    if not path.is_file():
        raise RegionFormatError(f"corner file not found: {path}")
    rows = list(csv.reader(io.StringIO(path.read_text())))
    rows = [row for row in rows if row and any(cell.strip() for cell in row)]
    if not rows or tuple(cell.strip() for cell in rows[0]) != CSV_HEADER:
        raise RegionFormatError(f"{path}: expected header {','.join(CSV_HEADER)}")
    if len(rows) == 1:
        raise RegionFormatError(f"{path}: no corners listed")

    points = []
    for lineno, row in enumerate(rows[1:], start=2):
        if len(row) != 2:
            raise RegionFormatError(f"{path}:{lineno}: expected 2 columns, got {len(row)}")
        try:
            points.append((float(row[0]), float(row[1])))
        except ValueError as e:
            raise RegionFormatError(f"{path}:{lineno}: {e}") from e
    try:
        return convex_hull(points)
    except ValueError as e:
        raise RegionFormatError(f"{path}: {e}") from e


def render_svg(
    regions: Sequence[tuple[str, RegionPolygon]],
    path: str | Path,
    ticks: tuple[float, float] | None = None,
    title: str | None = None,
) -> Path:
    """Overlay region boundaries with a legend; identical inputs give identical bytes.

    `ticks` marks (E[N_1], E[N_2]) on the axes; by default the largest single-user
    rates among the regions are used.
    """
    if not regions:
        raise ValueError("render_svg needs at least one region")
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)

    if ticks is None:
        ticks = (
            max(region.max_rates[0] for _, region in regions),
            max(region.max_rates[1] for _, region in regions),
        )
    limit = 1.1 * max(max(ticks), 1e-6)

    with plt.rc_context({"svg.hashsalt": "lpebc", "svg.fonttype": "path"}):
        fig, ax = plt.subplots(figsize=(SVG_SIZE_PT / 72, SVG_SIZE_PT / 72), dpi=72)
        for i, (label, region) in enumerate(regions):
            color = COLORS[i % len(COLORS)]
            pts = region.points
            if len(pts) >= 3:
                ax.add_patch(Polygon(pts, closed=True, fill=False, edgecolor=color, lw=1.5, label=label))
            else:
                ax.plot(pts[:, 0], pts[:, 1], color=color, lw=1.5, marker="o", label=label)
            frontier = region.frontier
            ax.plot([c[0] for c in frontier], [c[1] for c in frontier], "o", color=color, ms=3)

        ax.set_xlim(0.0, limit)
        ax.set_ylim(0.0, limit)
        ax.set_aspect("equal", "box")
        ax.set_xticks([0.0, ticks[0]], labels=["0", f"E[N1]={ticks[0]:.4f}"])
        ax.set_yticks([0.0, ticks[1]], labels=["0", f"E[N2]={ticks[1]:.4f}"])
        ax.set_xlabel("R1 (packets/slot)")
        ax.set_ylabel("R2 (packets/slot)")
        ax.grid(True, lw=0.3)
        ax.legend(loc="upper right")
        if title:
            ax.set_title(title)
        fig.savefig(path, format="svg", metadata={"Date": None})
        plt.close(fig)

    logger.info(f"Wrote figure with {len(regions)} region(s) to {path}")
    return path
