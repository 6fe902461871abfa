"""CSV ingestion for labeled categorical datasets.

Expected layout: a UTF-8 CSV whose first row names the columns. One column
(chosen by name) holds the class label; every other column is a categorical
feature whose alphabet is collected in order of first appearance. Cells are
taken verbatim, so "0" and " 0" are distinct symbols.
"""

from __future__ import annotations

import csv
import io
from pathlib import Path

from .errors import DatasetFormatError
from .model import Alphabet, LabeledDataset, Pattern

__all__ = ["load_csv", "loads_csv", "save_csv", "dumps_csv"]


def loads_csv(text: str, label_column: str) -> LabeledDataset:
    """Parse CSV text into a dataset; errors carry the file row and column."""
    rows = list(csv.reader(io.StringIO(text)))
    if not rows:
        raise DatasetFormatError("empty input: no header row")
    header = rows[0]
    if len(set(header)) != len(header):
        dupes = sorted({c for c in header if header.count(c) > 1})
        raise DatasetFormatError(f"duplicate column names {dupes}", row=1)
    if label_column not in header:
        raise DatasetFormatError(
            f"label column {label_column!r} not in header {header}", row=1
        )
    label_idx = header.index(label_column)
    feature_names = tuple(c for i, c in enumerate(header) if i != label_idx)
    if not feature_names:
        raise DatasetFormatError("no feature columns besides the label", row=1)

    symbol_order: list[dict[str, int]] = [{} for _ in feature_names]
    patterns: list[tuple[int, ...]] = []
    labels: list[str] = []
    for file_row, row in enumerate(rows[1:], start=2):
        if not row:
            continue
        if len(row) != len(header):
            raise DatasetFormatError(
                f"expected {len(header)} cells, got {len(row)}", row=file_row
            )
        values = []
        feat = 0
        for col, cell in zip(header, row):
            if cell == "":
                raise DatasetFormatError("empty cell", row=file_row, column=col)
            if col == label_column:
                continue
            seen = symbol_order[feat]
            values.append(seen.setdefault(cell, len(seen)))
            feat += 1
        patterns.append(tuple(values))
        labels.append(row[label_idx])
    if not patterns:
        raise DatasetFormatError("no data rows after the header")

    alphabets = tuple(Alphabet(tuple(seen)) for seen in symbol_order)
    return LabeledDataset(
        feature_names,
        label_column,
        alphabets,
        tuple(Pattern(p) for p in patterns),
        tuple(labels),
    )


def load_csv(path, label_column: str) -> LabeledDataset:
    return loads_csv(Path(path).read_text(encoding="utf-8"), label_column)


def dumps_csv(dataset: LabeledDataset) -> str:
    """Inverse of loads_csv up to cell content (label column written last)."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(list(dataset.feature_names) + [dataset.label_name])
    for pattern, label in zip(dataset.patterns, dataset.labels):
        symbols = [
            alphabet.symbols[idx]
            for alphabet, idx in zip(dataset.alphabets, pattern.features)
        ]
        writer.writerow(symbols + [label])
    return buf.getvalue()


def save_csv(dataset: LabeledDataset, path) -> None:
    Path(path).write_text(dumps_csv(dataset), encoding="utf-8")
