"""Results table persistence as CSV."""

import csv
import io
import logging
import os
import tempfile
from pathlib import Path

from zerobench.core.errors import ZerobenchError
from zerobench.core.runner import ResultRow, ResultsTable

logger = logging.getLogger(__name__)

FIELDNAMES = [
    "method",
    "param_set_id",
    "signal",
    "snr_db",
    "repetition",
    "metric",
    "value",
    "runtime_s",
]


class CsvFormatError(ZerobenchError):
    """Error reading a results CSV file."""

    pass


def format_real(value: float) -> str:
    """17 significant digits, enough to round-trip any double."""
    return format(value, ".17g")


def write_csv(table: ResultsTable, path: Path) -> None:
    """Write the table in composite-key order as UTF-8 CSV with LF line endings.

    The file is written to a temporary sibling first and renamed into place, so `path` never
    holds a partial table.
    """
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as f:
            writer = csv.DictWriter(f, fieldnames=FIELDNAMES, lineterminator="\n")
            writer.writeheader()
            for row in table.sorted().rows:
                writer.writerow(
                    {
                        "method": row.method,
                        "param_set_id": row.param_set_id,
                        "signal": row.signal,
                        "snr_db": format_real(row.snr_db),
                        "repetition": row.repetition,
                        "metric": row.metric,
                        "value": format_real(row.value),
                        "runtime_s": format_real(row.runtime_s),
                    }
                )
        os.replace(tmp, path)
    except BaseException:
        Path(tmp).unlink(missing_ok=True)
        raise
    logger.info(f"Wrote {len(table)} rows to {path}")


def read_csv(path: Path) -> ResultsTable:
    """Read a table written by `write_csv`.

    Raises:
        CsvFormatError: If the file is missing, has a different header or a malformed row.
    """
    try:
        text = path.read_text(encoding="utf-8")
    except FileNotFoundError as e:
        raise CsvFormatError(f"File not found: {path}") from e

    reader = csv.DictReader(io.StringIO(text, newline=""))
    if reader.fieldnames != FIELDNAMES:
        raise CsvFormatError(f"{path}: expected header {','.join(FIELDNAMES)}")
    rows = []
    for line, record in enumerate(reader, start=2):
        try:
            rows.append(
                ResultRow(
                    method=record["method"],
                    param_set_id=record["param_set_id"],
                    signal=record["signal"],
                    snr_db=float(record["snr_db"]),
                    repetition=int(record["repetition"]),
                    metric=record["metric"],
                    value=float(record["value"]),
                    runtime_s=float(record["runtime_s"]),
                )
            )
        except (TypeError, ValueError) as e:
            raise CsvFormatError(f"{path}:{line}: malformed row: {e}") from e
    return ResultsTable(rows=rows)
