"""Cloud IO Utility for reading and writing point clouds.

Two formats are supported:

- csv: optional one-line header, comma-separated, one point per row. Floats
  are written with 17 significant digits so they read back exactly.
- binary-f64: magic bytes ``DRWC``, little-endian u64 n, u64 d, then n*d
  little-endian IEEE-754 doubles in row-major order.
"""

import csv
import math
import struct
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from src.core.errors import NonFiniteValueError, ParameterError, ParseError, RaggedRowError
from src.core.types import PointCloud

MAGIC = b"DRWC"
HEADER = struct.Struct("<4sQQ")
FORMATS = ("csv", "binary-f64")


def format_float(value: float) -> str:
    return format(float(value), ".17g")


class CloudIOUtility:
    """Utility for loading and saving point clouds."""

    def __init__(self):
        """Initialize the Cloud IO Utility."""
        pass

    def detect_format(self, path) -> str:
        """Binary when the file starts with the magic bytes, csv otherwise."""
        with open(path, "rb") as handle:
            return "binary-f64" if handle.read(len(MAGIC)) == MAGIC else "csv"

    def load_cloud(self, path, fmt: Optional[str] = None) -> PointCloud:
        """
        Load an (n, d) cloud.

        Args:
            path: File path
            fmt (str): "csv", "binary-f64" or None to detect

        Returns:
            (n, d) float64 array

        Raises:
            ParseError: On empty or malformed input (with line/column)
            NonFiniteValueError: On NaN or infinite entries
            RaggedRowError: When rows differ in length
        """
        path = Path(path)
        if not path.is_file():
            raise ParseError(f"File not found: {path}")
        fmt = fmt or self.detect_format(path)
        if fmt not in FORMATS:
            raise ParameterError(f"Unknown cloud format: {fmt}. Supported: {', '.join(FORMATS)}")
        if fmt == "binary-f64":
            return self._load_binary(path)
        return self._load_csv(path)

    def _load_csv(self, path: Path) -> PointCloud:
        rows = []
        width = None
        with open(path, newline="") as handle:
            for line_number, fields in enumerate(csv.reader(handle), start=1):
                if not fields or all(not f.strip() for f in fields):
                    continue
                try:
                    values = [float(f) for f in fields]
                except ValueError:
                    if line_number == 1 and not any(_is_float(f) for f in fields):
                        continue  # header
                    column = next(i for i, f in enumerate(fields, start=1) if not _is_float(f))
                    raise ParseError(f"Invalid number {fields[column - 1]!r}", line_number, column)
                for column, value in enumerate(values, start=1):
                    if not math.isfinite(value):
                        raise NonFiniteValueError("Non-finite value", line_number, column)
                if width is None:
                    width = len(values)
                elif len(values) != width:
                    raise RaggedRowError(f"Expected {width} fields, found {len(values)}", line_number)
                rows.append(values)
        if not rows:
            raise ParseError(f"No data rows in {path}")
        return np.array(rows, dtype=np.float64)

    def _load_binary(self, path: Path) -> PointCloud:
        data = path.read_bytes()
        if len(data) < HEADER.size:
            raise ParseError("Binary cloud file is truncated")
        magic, n, d = HEADER.unpack_from(data)
        if magic != MAGIC:
            raise ParseError("Missing DRWC magic bytes")
        if n == 0 or d == 0:
            raise ParseError("Binary cloud file holds no points")
        expected = HEADER.size + 8 * n * d
        if len(data) != expected:
            raise ParseError(f"Binary cloud file has {len(data)} bytes, expected {expected}")
        cloud = np.frombuffer(data, dtype="<f8", count=n * d, offset=HEADER.size).reshape(n, d)
        if not np.all(np.isfinite(cloud)):
            row, column = np.argwhere(~np.isfinite(cloud))[0]
            raise NonFiniteValueError("Non-finite value", int(row) + 1, int(column) + 1)
        return cloud.astype(np.float64)

    def save_cloud(self, cloud: PointCloud, path, fmt: str = "csv",
                   header: Optional[Sequence[str]] = None) -> Path:
        """Write an (n, d) cloud in ``fmt``; returns the path written."""
        cloud = np.asarray(cloud, dtype=np.float64)
        if cloud.ndim != 2:
            raise ParameterError("cloud must be a 2-D array")
        if fmt not in FORMATS:
            raise ParameterError(f"Unknown cloud format: {fmt}. Supported: {', '.join(FORMATS)}")
        path = Path(path)
        if fmt == "binary-f64":
            n, d = cloud.shape
            path.write_bytes(HEADER.pack(MAGIC, n, d) + cloud.astype("<f8").tobytes(order="C"))
            return path
        with open(path, "w", newline="") as handle:
            writer = csv.writer(handle, lineterminator="\n")
            if header:
                writer.writerow(header)
            writer.writerows([format_float(v) for v in row] for row in cloud)
        return path


def _is_float(text: str) -> bool:
    try:
        float(text)
    except ValueError:
        return False
    return True
