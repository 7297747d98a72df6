"""Point-cloud validation and CSV interchange.

A point cloud is an (n, d) float64 array: rows are samples, columns are
variables.  Validated clouds are frozen (read-only) so downstream code can
share them across threads without copying.
"""

import re

import numpy as np

from .errors import CsvParseError, InvalidArgumentError

_HEADER_RE = re.compile(r"^x\d+(,x\d+)*$")


def as_point_cloud(points) -> np.ndarray:
    """Validate coordinates and return a read-only float64 (n, d) array.

    1-D input is treated as a single-column cloud.  Raises
    InvalidArgumentError on empty or non-finite input.
    """
    arr = np.asarray(points)
    if arr.ndim == 1:
        arr = arr[:, None]
    if arr.ndim != 2:
        raise InvalidArgumentError(f"point cloud must be 2-D, got shape {arr.shape}")
    n, d = arr.shape
    if n < 1 or d < 1:
        raise InvalidArgumentError(f"point cloud must be non-empty, got shape {arr.shape}")
    if arr.dtype != np.float64 or not arr.flags.c_contiguous or arr.flags.writeable:
        # Copy so freezing never mutates the caller's buffer.
        arr = np.array(arr, dtype=np.float64, order="C")
    if not np.isfinite(arr).all():
        raise InvalidArgumentError("point cloud coordinates must all be finite")
    arr.setflags(write=False)
    return arr


def save_cloud_csv(points, path, header: bool = False) -> None:
    """Write a cloud as CSV with 17 significant digits per coordinate.

    The optional header line is ``x1,x2,...``; 17 digits round-trip float64
    exactly.
    """
    pts = as_point_cloud(points)
    head = ",".join(f"x{i + 1}" for i in range(pts.shape[1])) if header else ""
    np.savetxt(path, pts, fmt="%.17g", delimiter=",", header=head, comments="")


def load_cloud_csv(path) -> np.ndarray:
    """Parse a CSV cloud written by :func:`save_cloud_csv`.

    Accepts an optional single ``x1,x2,...`` header.  Raises CsvParseError
    with the offending line number on malformed input.
    """
    rows: list[list[float]] = []
    width = None
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line:
                continue
            if lineno == 1 and _HEADER_RE.match(line.replace(" ", "")):
                continue
            parts = line.split(",")
            try:
                vals = [float(p) for p in parts]
            except ValueError:
                raise CsvParseError(f"unparseable field in {line!r}", line=lineno) from None
            if width is None:
                width = len(vals)
            elif len(vals) != width:
                raise CsvParseError(
                    f"expected {width} columns, found {len(vals)}", line=lineno
                )
            if not all(np.isfinite(v) for v in vals):
                raise CsvParseError("non-finite coordinate", line=lineno)
            rows.append(vals)
    if not rows:
        raise CsvParseError("no data rows", line=1)
    return as_point_cloud(np.array(rows))
