"""Reading tables, group files and block files; the bundled meau fixture.

Formats
-------
table CSV
    UTF-8, comma separated, ``.`` decimal point. First row holds the column
    labels (its first cell names the label column and is ignored), first
    column holds the row labels.
group file
    ``row_label,group_label`` per line, optionally under that exact header.
block file
    ``block_label,row_count`` per line, in stacked order.
"""

from __future__ import annotations

import csv
import hashlib
import math
import os
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Optional

import numpy as np

from .errors import DuplicateLabel, FixtureMissing, InputError, NonNumericCell, ParseError
from .tabular import BlockDescriptor, DataTable, GroupAssignment

MEAU_ENV = "CUBECOUPLING_MEAU_DIR"


def _read_rows(path):
    path = Path(path)
    try:
        with open(path, newline="", encoding="utf-8") as fh:
            rows = list(csv.reader(fh))
    except UnicodeDecodeError as exc:
        raise ParseError(1, f"not valid UTF-8 ({exc.reason})", path) from None
    # drop blank lines but keep line numbers
    return [(i, row) for i, row in enumerate(rows, start=1) if any(cell.strip() for cell in row)]


def _parse_number(cell, line, path, label):
    text = cell.strip()
    if not text or text.upper() in {"NA", "NAN", "NULL"}:
        raise NonNumericCell(line, f"missing value in column {label!r}", path)
    try:
        value = float(text)
    except ValueError:
        raise NonNumericCell(line, f"non-numeric cell {text!r} in column {label!r}", path) from None
    if not math.isfinite(value):
        raise NonNumericCell(line, f"non-finite value {text!r} in column {label!r}", path)
    return value


def read_table(path) -> DataTable:
    """Parse a labeled numeric CSV into a :class:`DataTable`."""
    rows = _read_rows(path)
    if not rows:
        raise ParseError(1, "empty file", path)
    header_line, header = rows[0]
    cols = [c.strip() for c in header[1:]]
    if not cols:
        raise ParseError(header_line, "header has no variable columns", path)
    if len(rows) < 2:
        raise ParseError(header_line + 1, "no data rows", path)
    seen = set()
    for c in cols:
        if not c:
            raise ParseError(header_line, "empty column label", path)
        if c in seen:
            raise DuplicateLabel(c, "column")
        seen.add(c)
    labels, values, seen = [], [], set()
    for line, row in rows[1:]:
        if len(row) != len(cols) + 1:
            raise ParseError(line, f"expected {len(cols) + 1} fields, got {len(row)}", path)
        label = row[0].strip()
        if not label:
            raise ParseError(line, "empty row label", path)
        if label in seen:
            raise DuplicateLabel(label, "row")
        seen.add(label)
        labels.append(label)
        values.append([_parse_number(cell, line, path, c) for cell, c in zip(row[1:], cols)])
    return DataTable(np.array(values), tuple(labels), tuple(cols))


def read_groups(path, row_labels) -> GroupAssignment:
    """Group file aligned to ``row_labels``; groups ordered by first appearance."""
    rows = _read_rows(path)
    if not rows:
        raise ParseError(1, "empty file", path)
    if [c.strip().lower() for c in rows[0][1]] == ["row_label", "group_label"]:
        rows = rows[1:]
    mapping = {}
    for line, row in rows:
        if len(row) != 2:
            raise ParseError(line, f"expected 2 fields, got {len(row)}", path)
        label, group = row[0].strip(), row[1].strip()
        if not label or not group:
            raise ParseError(line, "empty row or group label", path)
        if label in mapping:
            raise DuplicateLabel(label, "row")
        mapping[label] = group
    missing = [r for r in row_labels if r not in mapping]
    if missing:
        raise InputError(f"{path}: no group for rows {', '.join(missing[:5])}")
    extra = set(mapping) - set(row_labels)
    if extra:
        raise InputError(f"{path}: unknown rows {', '.join(sorted(extra)[:5])}")
    return GroupAssignment.from_labels([mapping[r] for r in row_labels])


def read_blocks(path) -> BlockDescriptor:
    rows = _read_rows(path)
    if not rows:
        raise ParseError(1, "empty file", path)
    blocks = []
    for line, row in rows:
        if len(row) != 2:
            raise ParseError(line, f"expected 2 fields, got {len(row)}", path)
        name, count = row[0].strip(), row[1].strip()
        try:
            n = int(count)
        except ValueError:
            raise NonNumericCell(line, f"row count {count!r} is not an integer", path) from None
        if n <= 0:
            raise ParseError(line, f"row count must be positive, got {n}", path)
        blocks.append((name, n))
    names = [b[0] for b in blocks]
    if len(set(names)) != len(names):
        raise DuplicateLabel(next(n for n in names if names.count(n) > 1), "block")
    return BlockDescriptor(tuple(blocks))


def file_checksum(path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


@dataclass(frozen=True, eq=False)
class Dataset:
    x: DataTable
    y: Optional[DataTable] = None
    groups: Optional[GroupAssignment] = None
    blocks_x: Optional[BlockDescriptor] = None
    blocks_y: Optional[BlockDescriptor] = None


def load_dataset(table_x, table_y=None, groups=None, blocks_x=None, blocks_y=None) -> Dataset:
    """Read and cross-validate every input file of a run."""
    x = read_table(table_x)
    y = read_table(table_y) if table_y else None
    if y is not None and y.row_labels != x.row_labels:
        raise InputError("the two tables must have identical row labels in the same order")
    g = read_groups(groups, x.row_labels) if groups else None
    bx = read_blocks(blocks_x) if blocks_x else None
    by = read_blocks(blocks_y) if blocks_y else None
    return Dataset(x, y, g, bx, by)


# -- meau fixture -------------------------------------------------------------


def meau_dir() -> Path:
    override = os.environ.get(MEAU_ENV)
    if override:
        return Path(override)
    return Path(str(resources.files("cubecoupling") / "data" / "meau"))


def meau_paths() -> dict:
    d = meau_dir()
    return {
        "table_x": d / "env.csv",
        "table_y": d / "spe.csv",
        "groups": d / "sites.csv",
        "blocks_x": d / "blocks.txt",
    }


def load_meau() -> Dataset:
    """The Meaudret environment/mayfly data (24 rows, 4 seasons x 6 sites).

    Only the block layout ships with this package; the numeric tables come
    from R's ade4 package, see ``data/meau/README.md`` for the export.
    """
    paths = meau_paths()
    missing = [str(p) for p in paths.values() if not p.is_file()]
    if missing:
        raise FixtureMissing(
            "meau fixture incomplete, missing: " + ", ".join(missing)
            + f". Export it with data/meau/export_meau.R or set {MEAU_ENV}."
        )
    return load_dataset(**paths)
