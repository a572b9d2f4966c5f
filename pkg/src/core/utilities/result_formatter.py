"""Result Formatter for distance results and benchmark tables.

Output is deterministic: no timestamps, fixed key order and floats written
with 17 significant digits, so the same inputs give byte-identical text.
"""

import csv
import io
import json
import math
from dataclasses import asdict, fields, is_dataclass
from typing import Any, Dict, List, Optional, Sequence

from src.core.errors import ParameterError
from src.core.types import DistanceResult
from src.core.utilities.cloud_io_utility import format_float

OUTPUT_FORMATS = ("json", "csv")


def _json_value(value: Any) -> Any:
    # JSON has no NaN/inf literals
    if isinstance(value, float) and not math.isfinite(value):
        return None if math.isnan(value) else ("inf" if value > 0 else "-inf")
    return value


def _csv_value(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, float):
        return format_float(value) if math.isfinite(value) else str(value)
    return str(value)


class ResultFormatter:
    """Formatter for DistanceResult records and lists of dataclass rows."""

    def __init__(self):
        """Initialize the Result Formatter."""
        pass

    def _check_format(self, fmt: str):
        if fmt not in OUTPUT_FORMATS:
            raise ParameterError(f"Unknown output format: {fmt}. Supported: {', '.join(OUTPUT_FORMATS)}")

    def _to_json(self, data: Any) -> str:
        def clean(item):
            if isinstance(item, dict):
                return {k: clean(v) for k, v in item.items()}
            if isinstance(item, (list, tuple)):
                return [clean(v) for v in item]
            return _json_value(item)

        return json.dumps(clean(data), indent=2, allow_nan=False)

    def format_distance(self, result: DistanceResult, fmt: str = "json",
                        include_levels: bool = False) -> str:
        """
        Serialize one distance result.

        Args:
            result (DistanceResult): Result to serialize
            fmt (str): "json" or "csv"
            include_levels (bool): Add the per-level Hausdorff distances (json only)

        Returns:
            Formatted text without a trailing newline
        """
        self._check_format(fmt)
        if fmt == "json":
            return self._to_json(result.to_dict(include_levels))
        data = result.to_dict(include_levels=False)
        return self._csv([data], list(data))

    def format_rows(self, rows: Sequence[Any], fmt: str = "csv",
                    metadata: Optional[Dict[str, Any]] = None) -> str:
        """
        Serialize benchmark rows as a long-format table.

        Args:
            rows: Dataclass instances of one type (BenchRow or TimingRow)
            fmt (str): "csv" (header + one row per line) or "json"
            metadata (dict): Extra top-level fields for json output

        Returns:
            Formatted text without a trailing newline
        """
        self._check_format(fmt)
        records = [asdict(row) if is_dataclass(row) else dict(row) for row in rows]
        if fmt == "json":
            document = dict(metadata or {})
            document["rows"] = records
            return self._to_json(document)
        if rows and is_dataclass(rows[0]):
            columns = [f.name for f in fields(rows[0])]
        else:
            columns = list(records[0]) if records else []
        return self._csv(records, columns)

    def _csv(self, records: List[Dict[str, Any]], columns: List[str]) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        writer.writerow(columns)
        for record in records:
            writer.writerow([_csv_value(record.get(column)) for column in columns])
        return buffer.getvalue().rstrip("\n")
