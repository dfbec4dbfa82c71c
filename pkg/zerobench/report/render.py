"""Markdown tables and SVG bar charts of a summary."""

import logging
import math
import re
from collections.abc import Iterable
from enum import Enum
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from zerobench.report.summary import GroupField, Summary, SummaryRow  # noqa: E402

logger = logging.getLogger(__name__)

EMPTY_NOTICE = "No results to report."
REPORT_NAME = "report.md"


class ReportFormat(str, Enum):
    """Output formats of `render_report`."""

    MARKDOWN = "markdown"
    SVG = "svg"


def format_snr(snr: float | None) -> str:
    if snr is None:
        return "all"
    if math.isinf(snr):
        return "inf dB" if snr > 0 else "-inf dB"
    return f"{snr:g} dB"


def format_cell(row: SummaryRow) -> str:
    """Format as "mean ± half-width"; n/a for all-NaN groups."""
    if math.isnan(row.mean):
        return "n/a"
    cell = f"{row.mean:.3f} ± {row.half_width:.3f}"
    if row.nan_count:
        cell += f" ({row.nan_count} NaN)"
    return cell


def _is_pivotable(summary: Summary) -> bool:
    return {GroupField.METHOD, GroupField.SIGNAL, GroupField.SNR} <= set(summary.spec.group_by)


def _panels(summary: Summary) -> dict[tuple[str, str], list[SummaryRow]]:
    """Rows split by (signal, metric), in summary order."""
    panels: dict[tuple[str, str], list[SummaryRow]] = {}
    for row in summary.rows:
        panels.setdefault((row.signal or "", row.metric), []).append(row)
    return panels


def _pivot(
    rows: list[SummaryRow],
) -> tuple[list[str], list[float], dict[tuple[str, float], SummaryRow]]:
    methods = sorted({row.method or "" for row in rows})
    snrs = sorted({row.snr_db for row in rows if row.snr_db is not None})
    cells = {(row.method or "", row.snr_db): row for row in rows if row.snr_db is not None}
    return methods, snrs, cells


def _markdown_table(header: list[str], body: Iterable[list[str]]) -> list[str]:
    lines = ["| " + " | ".join(header) + " |", "|" + "---|" * len(header)]
    lines.extend("| " + " | ".join(cells) + " |" for cells in body)
    return lines


def render_markdown(summary: Summary) -> str:
    """One methods x SNR table per (signal, metric), or a flat table for coarser groupings."""
    lines = ["# Benchmark report", ""]
    if not summary.rows:
        return "\n".join([*lines, EMPTY_NOTICE, ""])

    interval_note = f"Cells are mean ± half-width of the {summary.spec.confidence:.0%} interval"
    lines.extend([interval_note + " (Bonferroni-adjusted).", ""])

    if not _is_pivotable(summary):
        header = ["metric", "method", "signal", "SNR", "mean ± hw", "n"]
        body = [
            [
                row.metric,
                row.method or "all",
                row.signal or "all",
                format_snr(row.snr_db),
                format_cell(row),
                str(row.count),
            ]
            for row in summary.rows
        ]
        return "\n".join([*lines, *_markdown_table(header, body), ""])

    for (signal, metric), rows in _panels(summary).items():
        methods, snrs, cells = _pivot(rows)
        lines.extend([f"## {signal}: {metric}", ""])
        body = [
            [method]
            + [format_cell(cells[(method, s)]) if (method, s) in cells else "" for s in snrs]
            for method in methods
        ]
        lines.extend(_markdown_table(["method", *[format_snr(s) for s in snrs]], body))
        lines.append("")
    return "\n".join(lines)


def _slug(text: str) -> str:
    return re.sub(r"[^A-Za-z0-9_.-]+", "_", text).strip("_")


def render_bars(rows: list[SummaryRow], title: str, path: Path) -> None:
    """Grouped bars: one group per SNR, one bar per method, interval error bars."""
    methods, snrs, cells = _pivot(rows)
    width = 0.8 / max(len(methods), 1)
    positions = np.arange(len(snrs))

    fig, ax = plt.subplots(figsize=(max(6.0, 1.2 * len(snrs) + 3.0), 4.0))
    for i, method in enumerate(methods):
        chosen = [cells.get((method, s)) for s in snrs]
        means = [r.mean if r is not None else math.nan for r in chosen]
        below = [r.mean - r.lo if r is not None else 0.0 for r in chosen]
        above = [r.hi - r.mean if r is not None else 0.0 for r in chosen]
        ax.bar(
            positions + (i - (len(methods) - 1) / 2.0) * width,
            np.nan_to_num(means),
            width,
            yerr=np.nan_to_num(np.array([below, above])),
            capsize=3,
            label=method,
        )
    ax.set_xticks(positions)
    ax.set_xticklabels([format_snr(s) for s in snrs])
    ax.set_xlabel("SNR")
    ax.set_ylabel(rows[0].metric)
    ax.set_title(title)
    ax.legend(fontsize="small")
    fig.tight_layout()
    fig.savefig(path, format="svg")
    plt.close(fig)


def render_report(
    summary: Summary,
    out_dir: Path,
    formats: Iterable[ReportFormat | str] = (ReportFormat.MARKDOWN,),
) -> list[Path]:
    """Write the requested outputs into `out_dir`.

    Returns:
        Paths of the files written.
    """
    out_dir.mkdir(parents=True, exist_ok=True)
    chosen = {ReportFormat(f) for f in formats}
    written: list[Path] = []

    if ReportFormat.MARKDOWN in chosen:
        path = out_dir / REPORT_NAME
        path.write_text(render_markdown(summary), encoding="utf-8")
        written.append(path)

    if ReportFormat.SVG in chosen:
        if summary.rows and not _is_pivotable(summary):
            logger.warning("SVG charts need grouping by method, signal and snr; skipped")
        elif summary.rows:
            for (signal, metric), rows in _panels(summary).items():
                path = out_dir / f"{_slug(signal)}__{_slug(metric)}.svg"
                render_bars(rows, f"{signal}: {metric}", path)
                written.append(path)

    logger.info(f"Wrote {len(written)} report files to {out_dir}")
    return written
