"""CSV ingestion: header row required, numeric feature cells, optional label column."""

from __future__ import annotations

import csv
import math
from typing import Optional

import numpy as np

from .errors import ParseError
from .features import Dataset

__all__ = ["load_csv"]


def load_csv(path, label_column: Optional[str] = None) -> Dataset:
    """Read ``path`` into a :class:`Dataset`.

    Row numbers in errors are 1-based file lines (the header is line 1).
    The label column, if named, may hold arbitrary strings.
    """
    try:
        fh = open(path, newline="", encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot open {path}: {exc.strerror}") from None
    with fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise ParseError(f"{path} is empty; a header row is required") from None
        except (csv.Error, UnicodeDecodeError) as exc:
            raise ParseError(f"{path}: {exc}", row=1) from None
        header = [h.strip() for h in header]
        if not header or all(h == "" for h in header):
            raise ParseError(f"{path}: empty header row", row=1)
        if len(set(header)) != len(header):
            raise ParseError(f"{path}: duplicate column names in header", row=1)
        if label_column is not None and label_column not in header:
            raise ParseError(f"{path}: label column {label_column!r} not in header {header}")
        label_idx = header.index(label_column) if label_column is not None else None
        names = [h for i, h in enumerate(header) if i != label_idx]

        rows, labels = [], []
        try:
            for lineno, record in enumerate(reader, start=2):
                if not record or all(c.strip() == "" for c in record):
                    continue
                if len(record) != len(header):
                    raise ParseError(
                        f"{path}: expected {len(header)} fields, found {len(record)}", row=lineno
                    )
                values = []
                for i, cell in enumerate(record):
                    if i == label_idx:
                        labels.append(cell.strip())
                        continue
                    try:
                        x = float(cell)
                    except ValueError:
                        raise ParseError(f"{path}: non-numeric value {cell!r}", row=lineno, column=header[i]) from None
                    if not math.isfinite(x):
                        raise ParseError(f"{path}: non-finite value {cell!r}", row=lineno, column=header[i])
                    values.append(x)
                rows.append(values)
        except (csv.Error, UnicodeDecodeError) as exc:
            raise ParseError(f"{path}: {exc}") from None

    if len(rows) < 2:
        raise ParseError(f"{path}: need at least 2 data rows, found {len(rows)}")
    features = np.array(rows, dtype=np.float64).reshape(len(rows), len(names))
    return Dataset(features, names, np.array(labels) if label_idx is not None else None)
