"""Tables, weights, triplets, groupings and k-tables, plus preprocessing.

Everything here is immutable: arrays are copied on construction and flagged
read-only, and every transform returns a new object.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import (
    BlockSizeMismatch,
    ColumnMismatch,
    DimensionMismatch,
    DuplicateLabel,
    EmptyGroup,
    InputError,
    NegativeEntry,
    RowMismatch,
    ZeroVarianceColumn,
)

WEIGHT_SUM_TOL = 1e-12


def _frozen(a, dtype=float):
    arr = np.array(a, dtype=dtype, copy=True)
    arr.setflags(write=False)
    return arr


def _check_unique(labels, axis):
    seen = set()
    for lab in labels:
        if lab in seen:
            raise DuplicateLabel(lab, axis)
        seen.add(lab)


@dataclass(frozen=True, eq=False)
class DataTable:
    """Labeled real matrix, rows are samples and columns are variables."""

    values: np.ndarray
    row_labels: tuple
    col_labels: tuple

    def __post_init__(self):
        values = _frozen(self.values)
        if values.ndim != 2:
            raise DimensionMismatch(f"expected a 2-d matrix, got {values.ndim}-d")
        if not np.all(np.isfinite(values)):
            raise InputError("table contains missing or non-finite values")
        rows = tuple(str(r) for r in self.row_labels)
        cols = tuple(str(c) for c in self.col_labels)
        if len(rows) != values.shape[0]:
            raise RowMismatch(f"{len(rows)} row labels for {values.shape[0]} rows")
        if len(cols) != values.shape[1]:
            raise ColumnMismatch(f"{len(cols)} column labels for {values.shape[1]} columns")
        _check_unique(rows, "row")
        _check_unique(cols, "column")
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "row_labels", rows)
        object.__setattr__(self, "col_labels", cols)

    @classmethod
    def from_array(cls, values, row_labels=None, col_labels=None) -> "DataTable":
        values = np.asarray(values, dtype=float)
        if values.ndim == 1:
            values = values[:, None]
        n, p = values.shape
        if row_labels is None:
            row_labels = [f"R{i + 1}" for i in range(n)]
        if col_labels is None:
            col_labels = [f"V{j + 1}" for j in range(p)]
        return cls(values, tuple(row_labels), tuple(col_labels))

    @property
    def shape(self):
        return self.values.shape

    def with_values(self, values) -> "DataTable":
        return DataTable(values, self.row_labels, self.col_labels)


def uniform_weights(n: int) -> np.ndarray:
    return np.full(n, 1.0 / n)


@dataclass(frozen=True, eq=False)
class Triplet:
    """A table with a diagonal column metric and row weights.

    ``col_metric`` holds the diagonal of D_p and ``row_weights`` the diagonal
    of D_n. Row weights of data triplets sum to one; crossed triplets carry a
    column metric as their row weights, so the sum is not enforced here (see
    :func:`check_row_weights`).
    """

    table: DataTable
    col_metric: np.ndarray
    row_weights: np.ndarray

    def __post_init__(self):
        metric = _frozen(self.col_metric)
        weights = _frozen(self.row_weights)
        n, p = self.table.shape
        if metric.shape != (p,):
            raise DimensionMismatch(f"column metric has length {metric.size}, table has {p} columns")
        if weights.shape != (n,):
            raise DimensionMismatch(f"row weights have length {weights.size}, table has {n} rows")
        if not (np.all(np.isfinite(metric)) and np.all(metric > 0)):
            raise InputError("column metric entries must be positive and finite")
        if not (np.all(np.isfinite(weights)) and np.all(weights > 0)):
            raise InputError("row weights must be positive and finite")
        object.__setattr__(self, "col_metric", metric)
        object.__setattr__(self, "row_weights", weights)

    @classmethod
    def from_table(cls, table, col_metric=None, row_weights=None) -> "Triplet":
        if not isinstance(table, DataTable):
            table = DataTable.from_array(table)
        n, p = table.shape
        if col_metric is None:
            col_metric = np.ones(p)
        if row_weights is None:
            row_weights = uniform_weights(n)
        return cls(table, col_metric, row_weights)

    @property
    def X(self) -> np.ndarray:
        return self.table.values

    @property
    def shape(self):
        return self.table.shape

    @property
    def row_labels(self):
        return self.table.row_labels

    @property
    def col_labels(self):
        return self.table.col_labels

    def with_values(self, values) -> "Triplet":
        return Triplet(self.table.with_values(values), self.col_metric, self.row_weights)


def check_row_weights(w) -> None:
    """Raise unless ``w`` is a proper probability vector."""
    w = np.asarray(w, dtype=float)
    if np.any(w <= 0) or abs(w.sum() - 1.0) > WEIGHT_SUM_TOL:
        raise InputError("row weights must be positive and sum to 1")


@dataclass(frozen=True, eq=False)
class GroupAssignment:
    """Membership of each of n rows in one of g groups (0-based indices)."""

    group_of: np.ndarray
    group_labels: tuple

    def __post_init__(self):
        idx = _frozen(self.group_of, dtype=int)
        labels = tuple(str(g) for g in self.group_labels)
        _check_unique(labels, "group")
        if idx.ndim != 1:
            raise DimensionMismatch("group indices must be a vector")
        if idx.size and (idx.min() < 0 or idx.max() >= len(labels)):
            raise InputError("group index out of range")
        counts = np.bincount(idx, minlength=len(labels))
        empty = [labels[k] for k in np.flatnonzero(counts == 0)]
        if empty:
            raise EmptyGroup(f"groups with no rows: {', '.join(empty)}")
        object.__setattr__(self, "group_of", idx)
        object.__setattr__(self, "group_labels", labels)

    @classmethod
    def from_labels(cls, labels: Sequence) -> "GroupAssignment":
        """Groups ordered by first appearance."""
        order = {}
        for lab in labels:
            order.setdefault(str(lab), len(order))
        return cls(np.array([order[str(lab)] for lab in labels], dtype=int), tuple(order))

    @property
    def n(self) -> int:
        return self.group_of.size

    @property
    def g(self) -> int:
        return len(self.group_labels)

    @property
    def counts(self) -> np.ndarray:
        return np.bincount(self.group_of, minlength=self.g)

    def indicator(self) -> np.ndarray:
        """The n x g 0/1 class-indicator matrix."""
        B = np.zeros((self.n, self.g))
        B[np.arange(self.n), self.group_of] = 1.0
        return B


@dataclass(frozen=True)
class BlockDescriptor:
    """How the rows of a stacked table split into consecutive blocks."""

    blocks: tuple

    def __post_init__(self):
        blocks = tuple((str(name), int(count)) for name, count in self.blocks)
        if not blocks:
            raise BlockSizeMismatch("block descriptor is empty")
        if any(count <= 0 for _, count in blocks):
            raise BlockSizeMismatch("block row counts must be positive")
        _check_unique([name for name, _ in blocks], "block")
        object.__setattr__(self, "blocks", blocks)

    @property
    def names(self):
        return tuple(name for name, _ in self.blocks)

    @property
    def sizes(self):
        return tuple(count for _, count in self.blocks)

    @property
    def total(self) -> int:
        return sum(self.sizes)


@dataclass(frozen=True, eq=False)
class KTable:
    """An ordered sequence of triplets sharing columns and column metric."""

    tables: tuple
    names: tuple = field(default=())

    def __post_init__(self):
        tables = tuple(self.tables)
        if not tables:
            raise DimensionMismatch("a k-table needs at least one table")
        names = tuple(str(n) for n in self.names) or tuple(f"T{i + 1}" for i in range(len(tables)))
        if len(names) != len(tables):
            raise DimensionMismatch(f"{len(names)} names for {len(tables)} tables")
        _check_unique(names, "table")
        first = tables[0]
        for name, t in zip(names, tables):
            if t.col_labels != first.col_labels:
                raise ColumnMismatch(f"table {name!r} columns differ from table {names[0]!r}")
            if not np.array_equal(t.col_metric, first.col_metric):
                raise ColumnMismatch(f"table {name!r} column metric differs from table {names[0]!r}")
        object.__setattr__(self, "tables", tables)
        object.__setattr__(self, "names", names)

    @property
    def k(self) -> int:
        return len(self.tables)

    @property
    def col_labels(self):
        return self.tables[0].col_labels

    @property
    def col_metric(self):
        return self.tables[0].col_metric

    def __iter__(self):
        return iter(self.tables)

    def __len__(self):
        return len(self.tables)

    def __getitem__(self, i):
        return self.tables[i]

    def same_rows(self) -> bool:
        first = self.tables[0]
        return all(
            t.row_labels == first.row_labels and np.array_equal(t.row_weights, first.row_weights)
            for t in self.tables[1:]
        )

    def require_same_rows(self) -> None:
        first = self.tables[0]
        for name, t in zip(self.names, self.tables):
            if t.row_labels != first.row_labels:
                raise RowMismatch(f"table {name!r} rows differ from table {self.names[0]!r}")
            if not np.array_equal(t.row_weights, first.row_weights):
                raise RowMismatch(f"table {name!r} row weights differ from table {self.names[0]!r}")


@dataclass(frozen=True, eq=False)
class PairedKTables:
    """Environmental and species k-tables matched date by date."""

    env: KTable
    spe: KTable

    def __post_init__(self):
        if self.env.k != self.spe.k:
            raise DimensionMismatch(f"env has {self.env.k} tables, spe has {self.spe.k}")
        for name, x, y in zip(self.env.names, self.env.tables, self.spe.tables):
            if x.row_labels != y.row_labels:
                raise RowMismatch(f"table {name!r}: env and spe row labels differ")
            if not np.array_equal(x.row_weights, y.row_weights):
                raise RowMismatch(f"table {name!r}: env and spe row weights differ")

    @property
    def k(self) -> int:
        return self.env.k

    @property
    def names(self):
        return self.env.names


# -- preprocessing ---------------------------------------------------------


def weighted_mean(X, w) -> np.ndarray:
    w = np.asarray(w, dtype=float)
    return w @ np.asarray(X) / w.sum()


def weighted_var(X, w) -> np.ndarray:
    """Population-form weighted variance (divisor sum of weights)."""
    w = np.asarray(w, dtype=float)
    Xc = np.asarray(X) - weighted_mean(X, w)
    return w @ (Xc * Xc) / w.sum()


def is_centered(t: Triplet, tol: float = 1e-9) -> bool:
    X = t.X
    scale = max(1.0, float(np.abs(X).max(initial=0.0)))
    return bool(np.all(np.abs(weighted_mean(X, t.row_weights)) <= tol * scale))


def center_table(t: Triplet) -> Triplet:
    """Remove the weighted mean of every column.

    Columns that are constant up to rounding become exact zeros, so they
    carry no spurious inertia into later decompositions.
    """
    X = t.X
    Xc = X - weighted_mean(X, t.row_weights)
    scale = np.abs(X).max(axis=0, initial=0.0)
    flat = np.abs(Xc).max(axis=0, initial=0.0) <= 1e-12 * scale
    Xc[:, flat] = 0.0
    return t.with_values(Xc)


def _scale_columns(t: Triplet, block=None) -> Triplet:
    X = t.X
    mean = weighted_mean(X, t.row_weights)
    Xc = X - mean
    var = t.row_weights @ (Xc * Xc) / t.row_weights.sum()
    scale = np.maximum(np.abs(X).max(axis=0, initial=0.0), np.abs(mean))
    for j, v in enumerate(var):
        if not np.sqrt(v) > 1e-12 * scale[j]:
            raise ZeroVarianceColumn(t.col_labels[j], block)
    return t.with_values(Xc / np.sqrt(var))


def standardize_table(t: Triplet) -> Triplet:
    """Center and scale every column to unit weighted variance."""
    return _scale_columns(t)


def partial_standardize(kt: KTable) -> KTable:
    """Standardize each block of a k-table separately."""
    return KTable(tuple(_scale_columns(t, name) for name, t in zip(kt.names, kt.tables)), kt.names)


def partial_center(kt: KTable) -> KTable:
    """Center each block of a k-table separately."""
    return KTable(tuple(center_table(t) for t in kt.tables), kt.names)


def log1p_transform(t: DataTable) -> DataTable:
    if np.any(t.values < 0):
        i, j = np.argwhere(t.values < 0)[0]
        raise NegativeEntry(f"negative entry at ({t.row_labels[i]!r}, {t.col_labels[j]!r})")
    return t.with_values(np.log1p(t.values))


def group_means(t: Triplet, g: GroupAssignment):
    """Table of (weighted) group means and the group weights.

    Returns ``(means, weights)`` where ``means`` is a triplet whose rows are
    the groups and whose row weights are the group masses (n_k/n under
    uniform row weights), so they sum to the total row weight.
    """
    if g.n != t.shape[0]:
        raise RowMismatch(f"grouping covers {g.n} rows, table has {t.shape[0]}")
    B = g.indicator()
    mass = B.T @ t.row_weights
    if np.any(mass <= 0):
        raise EmptyGroup("group with zero total weight")
    means = (B * t.row_weights[:, None]).T @ t.X / mass[:, None]
    table = DataTable(means, g.group_labels, t.col_labels)
    weights = mass / t.row_weights.sum()
    return Triplet(table, t.col_metric, weights), weights


def split_blocks(t: Triplet, b: BlockDescriptor) -> KTable:
    """Cut a stacked table into consecutive blocks with uniform weights 1/n_t."""
    n = t.shape[0]
    if b.total != n:
        raise BlockSizeMismatch(f"blocks sum to {b.total} rows, table has {n}")
    tables = []
    start = 0
    for _, size in b.blocks:
        rows = slice(start, start + size)
        sub = DataTable(t.X[rows], t.row_labels[rows], t.col_labels)
        tables.append(Triplet(sub, t.col_metric, uniform_weights(size)))
        start += size
    return KTable(tuple(tables), b.names)


def stack_blocks(kt: KTable) -> DataTable:
    """Vertically concatenate the tables of a k-table."""
    values = np.vstack([t.X for t in kt.tables])
    rows = tuple(r for t in kt.tables for r in t.row_labels)
    return DataTable(values, rows, kt.col_labels)


def total_inertia(t: Triplet) -> float:
    """trace(X D_p X^T D_n)."""
    X = t.X
    return float(t.row_weights @ (X * X) @ t.col_metric)
