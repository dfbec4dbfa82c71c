"""Tests for results CSV files, summaries and rendered reports."""

import math
import xml.etree.ElementTree as ET
from pathlib import Path

import pytest

from zerobench.core.metrics import bonferroni_adjust, clopper_pearson, t_interval
from zerobench.core.runner import ResultRow, ResultsTable
from zerobench.report.csv_io import FIELDNAMES, CsvFormatError, read_csv, write_csv
from zerobench.report.render import EMPTY_NOTICE, render_markdown, render_report
from zerobench.report.summary import (
    GroupField,
    IntervalKind,
    ReportSpec,
    method_label,
    runtime_rows,
    summarize,
)


def result(
    method: str = "t_hard",
    snr_db: float = 10.0,
    repetition: int = 1,
    value: float = 1.0,
    metric: str = "qrf",
    signal: str = "LinearChirp",
    param_set_id: str = "default",
    runtime_s: float = 0.25,
) -> ResultRow:
    return ResultRow(
        method=method,
        param_set_id=param_set_id,
        signal=signal,
        snr_db=snr_db,
        repetition=repetition,
        metric=metric,
        value=value,
        runtime_s=runtime_s,
    )


def qrf_table() -> ResultsTable:
    rows = []
    for method, offset in (("t_hard", 0.0), ("sst_rd", 5.0)):
        for snr in (0.0, 10.0):
            for rep, value in enumerate((1.0, 2.0, 3.0), start=1):
                rows.append(result(method, snr, rep, snr + offset + value))
    return ResultsTable(rows=rows)


class TestCsv:
    """Tests for write_csv and read_csv."""

    def test_empty_table_writes_header(self, tmp_path: Path) -> None:
        path = tmp_path / "empty.csv"
        write_csv(ResultsTable(), path)
        assert path.read_text(encoding="utf-8") == ",".join(FIELDNAMES) + "\n"
        assert len(read_csv(path)) == 0

    def test_rows_written_sorted(self, tmp_path: Path) -> None:
        """Three rows give four lines in composite-key order."""
        rows = [result(repetition=3), result(repetition=1), result(method="empty_space")]
        path = tmp_path / "results" / "out.csv"
        write_csv(ResultsTable(rows=rows), path)
        lines = path.read_text(encoding="utf-8").split("\n")
        assert len(lines) == 5 and lines[-1] == ""
        assert lines[1].startswith("empty_space,")
        assert read_csv(path).rows == ResultsTable(rows=rows).sorted().rows

    def test_values_round_trip_exactly(self, tmp_path: Path) -> None:
        """Doubles survive the text representation bit for bit."""
        rows = [result(value=0.1 + 0.2, runtime_s=1e-7), result(repetition=2, value=-math.inf)]
        path = tmp_path / "exact.csv"
        write_csv(ResultsTable(rows=rows), path)
        back = read_csv(path).rows
        assert back[0].value == 0.1 + 0.2
        assert back[0].runtime_s == 1e-7
        assert back[1].value == -math.inf

    def test_nan_values(self, tmp_path: Path) -> None:
        """Failed calls are stored as NaN."""
        path = tmp_path / "nan.csv"
        write_csv(ResultsTable(rows=[result(value=math.nan)]), path)
        assert math.isnan(read_csv(path).rows[0].value)

    def test_missing_file(self, tmp_path: Path) -> None:
        with pytest.raises(CsvFormatError, match="File not found"):
            read_csv(tmp_path / "missing.csv")

    def test_wrong_header(self, tmp_path: Path) -> None:
        path = tmp_path / "other.csv"
        path.write_text("a,b,c\n1,2,3\n", encoding="utf-8")
        with pytest.raises(CsvFormatError, match="expected header"):
            read_csv(path)

    def test_malformed_row(self, tmp_path: Path) -> None:
        path = tmp_path / "bad.csv"
        path.write_text(
            ",".join(FIELDNAMES) + "\nt_hard,default,LinearChirp,ten,1,qrf,1.0,0.1\n",
            encoding="utf-8",
        )
        with pytest.raises(CsvFormatError, match=":2: malformed row"):
            read_csv(path)


class TestSummarize:
    """Tests for summarize."""

    def test_group_means_and_intervals(self) -> None:
        """Means per (method, signal, snr) with Bonferroni-adjusted t intervals."""
        summary = summarize(qrf_table())
        assert len(summary) == 4
        row = next(r for r in summary.rows if r.method == "t_hard" and r.snr_db == 10.0)
        assert row.mean == pytest.approx(12.0)
        assert row.count == 3
        assert row.interval == IntervalKind.T
        expected = t_interval([11.0, 12.0, 13.0], bonferroni_adjust(0.95, 2))
        assert (row.lo, row.hi) == pytest.approx(expected)

    def test_explicit_comparisons(self) -> None:
        spec = ReportSpec(bonferroni_comparisons=1)
        row = summarize(qrf_table(), spec).rows[0]
        values = [1.0, 2.0, 3.0] if row.method == "t_hard" else [6.0, 7.0, 8.0]
        assert (row.lo, row.hi) == pytest.approx(t_interval(values, 0.95))

    def test_rows_sorted(self) -> None:
        keys = [(r.metric, r.method, r.signal, r.snr_db) for r in summarize(qrf_table()).rows]
        assert keys == sorted(keys)

    def test_single_value_degenerate(self) -> None:
        summary = summarize(ResultsTable(rows=[result(value=4.0)]))
        (row,) = summary.rows
        assert row.degenerate
        assert (row.mean, row.lo, row.hi) == (4.0, 4.0, 4.0)

    def test_nan_values_excluded(self) -> None:
        """NaN values are counted but left out; an all-NaN group has no mean."""
        rows = [
            result(value=2.0),
            result(repetition=2, value=math.nan),
            result(method="delaunay", value=math.nan),
        ]
        summary = summarize(ResultsTable(rows=rows))
        by_method = {r.method: r for r in summary.rows}
        assert by_method["t_hard"].mean == 2.0
        assert by_method["t_hard"].nan_count == 1
        assert math.isnan(by_method["delaunay"].mean)
        assert by_method["delaunay"].count == 0
        assert by_method["delaunay"].degenerate

    def test_detection_uses_clopper_pearson(self) -> None:
        """Binary outcomes get exact binomial intervals."""
        outcomes = [1.0] * 5 + [0.0] * 5
        rows = [
            result("rank_test", repetition=i + 1, value=v, metric="detected")
            for i, v in enumerate(outcomes)
        ]
        (row,) = summarize(ResultsTable(rows=rows)).rows
        assert row.interval == IntervalKind.CLOPPER_PEARSON
        assert row.mean == pytest.approx(0.5)
        assert (row.lo, row.hi) == pytest.approx(clopper_pearson(5, 10, 0.95))

    def test_coarser_grouping(self) -> None:
        """Grouping by method only pools signals and SNRs."""
        spec = ReportSpec(group_by=[GroupField.METHOD])
        summary = summarize(qrf_table(), spec)
        assert len(summary) == 2
        t_hard = next(r for r in summary.rows if r.method == "t_hard")
        assert t_hard.signal is None and t_hard.snr_db is None
        assert t_hard.count == 6
        assert t_hard.mean == pytest.approx(7.0)

    def test_runtime_summary(self) -> None:
        """Runtime summaries count each call once even with several metrics."""
        rows = [result(), result(metric="cc", value=0.9)]
        assert len(runtime_rows(ResultsTable(rows=rows))) == 1
        (row,) = summarize(ResultsTable(rows=rows), ReportSpec(runtime=True)).rows
        assert row.metric == "runtime_s"
        assert row.mean == pytest.approx(0.25)

    def test_method_label(self) -> None:
        assert method_label(result()) == "t_hard"
        assert method_label(result(param_set_id="c=2.0")) == "t_hard[c=2.0]"


class TestRender:
    """Tests for render_markdown and render_report."""

    def test_markdown_panels(self) -> None:
        """One methods x SNR table per signal and metric."""
        text = render_markdown(summarize(qrf_table()))
        assert "## LinearChirp: qrf" in text
        assert "| method | 0 dB | 10 dB |" in text
        assert "| t_hard | 2.000 ± " in text
        assert "Bonferroni" in text

    def test_markdown_empty(self) -> None:
        text = render_markdown(summarize(ResultsTable()))
        assert EMPTY_NOTICE in text

    def test_markdown_flat_table(self) -> None:
        spec = ReportSpec(group_by=[GroupField.METHOD])
        text = render_markdown(summarize(qrf_table(), spec))
        assert "| metric | method | signal | SNR | mean ± hw | n |" in text
        assert "| qrf | t_hard | all | all |" in text

    def test_markdown_nan_cell(self) -> None:
        text = render_markdown(summarize(ResultsTable(rows=[result(value=math.nan)])))
        assert "n/a" in text

    def test_report_files(self, tmp_path: Path) -> None:
        """Markdown and one SVG chart per panel are written; charts are valid SVG."""
        written = render_report(summarize(qrf_table()), tmp_path, ["markdown", "svg"])
        names = sorted(p.name for p in written)
        assert names == ["LinearChirp__qrf.svg", "report.md"]
        root = ET.parse(tmp_path / "LinearChirp__qrf.svg").getroot()
        assert root.tag.endswith("svg")

    def test_svg_skipped_without_pivot(self, tmp_path: Path) -> None:
        spec = ReportSpec(group_by=[GroupField.METHOD])
        written = render_report(summarize(qrf_table(), spec), tmp_path, ["markdown", "svg"])
        assert [p.name for p in written] == ["report.md"]
