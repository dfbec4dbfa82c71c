"""Results persistence, summaries and rendering."""

from zerobench.report.csv_io import FIELDNAMES, CsvFormatError, read_csv, write_csv
from zerobench.report.render import ReportFormat, render_markdown, render_report
from zerobench.report.summary import (
    GroupField,
    IntervalKind,
    ReportSpec,
    Summary,
    SummaryRow,
    summarize,
)

__all__ = [
    "FIELDNAMES",
    "CsvFormatError",
    "GroupField",
    "IntervalKind",
    "ReportFormat",
    "ReportSpec",
    "Summary",
    "SummaryRow",
    "read_csv",
    "render_markdown",
    "render_report",
    "summarize",
    "write_csv",
]
