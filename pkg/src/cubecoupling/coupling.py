"""Between-group analysis and the three data-cube coupling methods.

* :func:`bgcoia` - co-inertia of the two tables of group means.
* :func:`statico` - partial triadic analysis of the per-date cross tables.
* :func:`costatis` - co-inertia of the two partial triadic compromises.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .coinertia import (
    CoInertiaResult,
    PermutationTestResult,
    coia,
    coia_permutation_test,
    cross_table,
    permutation_test,
)
from .eigen import Decomposition, gpca, project_rows
from .errors import InputError, RowMismatch
from .ktable import PTAResult, pta
from .tabular import GroupAssignment, KTable, PairedKTables, Triplet, group_means, is_centered, total_inertia


def barycenters(scores: np.ndarray, g: GroupAssignment) -> np.ndarray:
    """Unweighted per-group mean of score rows (the centre of each star)."""
    B = g.indicator()
    return B.T @ scores / g.counts[:, None]


# -- between-group analysis -------------------------------------------------


@dataclass(frozen=True, eq=False)
class BGAResult:
    groups: GroupAssignment
    means: Triplet
    group_weights: np.ndarray
    analysis: Decomposition
    row_scores: np.ndarray
    between_inertia: float
    total_inertia: float
    ratio: float


def _ratio(between: float, total: float) -> float:
    if total <= 0:
        return 0.0
    return float(min(1.0, max(0.0, between / total)))


def bga(t: Triplet, g: GroupAssignment, n_axes: int = 2) -> BGAResult:
    """gPCA of the table of group means; original rows projected afterwards."""
    if g.g < 2:
        raise InputError("between-group analysis needs at least two groups")
    if not is_centered(t):
        warnings.warn("between-group analysis of an uncentered table", stacklevel=2)
    means, weights = group_means(t, g)
    d = gpca(means, n_axes)
    between = total_inertia(means)
    total = total_inertia(t)
    return BGAResult(g, means, weights, d, project_rows(d, t), between, total, _ratio(between, total))


def bga_permutation_test(
    t: Triplet, g: GroupAssignment, n_perm: int = 999, *, seed: int, workers: int = 1
) -> PermutationTestResult:
    """Between/total inertia ratio against random reassignment of group labels."""
    if g.n != t.shape[0]:
        raise RowMismatch(f"grouping covers {g.n} rows, table has {t.shape[0]}")
    X = t.X
    w = t.row_weights
    total = total_inertia(t)
    labels = g.group_of
    Xw = X * w[:, None]

    def stat(perm):
        idx = labels[perm]
        mass = np.bincount(idx, weights=w, minlength=g.g)
        sums = np.zeros((g.g, X.shape[1]))
        np.add.at(sums, idx, Xw)
        means = sums / mass[:, None]
        between = float((mass / w.sum()) @ (means * means) @ t.col_metric)
        return _ratio(between, total)

    return permutation_test(stat, X.shape[0], n_perm, seed, workers, "between_total_ratio")


# -- BGCOIA -----------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class BGCOIAResult:
    groups: GroupAssignment
    env_means: Triplet
    spe_means: Triplet
    coia: CoInertiaResult
    env_rows: np.ndarray
    spe_rows: np.ndarray
    env_barycenters: np.ndarray
    spe_barycenters: np.ndarray


def bgcoia(tx: Triplet, ty: Triplet, g: GroupAssignment, n_axes: int = 2) -> BGCOIAResult:
    """Co-inertia analysis of the group-mean tables of two stacked cubes.

    Every original row of both cubes is then projected onto the co-inertia
    axes (env rows on the x axes, species rows on the y axes).
    """
    if tx.row_labels != ty.row_labels:
        raise RowMismatch("stacked tables have different row labels")
    mx, _ = group_means(tx, g)
    my, _ = group_means(ty, g)
    res = coia(mx, my, n_axes)
    env_rows = tx.X @ (res.x_axes * tx.col_metric[:, None])
    spe_rows = ty.X @ (res.y_axes * ty.col_metric[:, None])
    return BGCOIAResult(
        g, mx, my, res, env_rows, spe_rows, barycenters(env_rows, g), barycenters(spe_rows, g)
    )


# -- STATICO ----------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class STATICOResult:
    cross: KTable
    pta: PTAResult
    x_axes: np.ndarray
    y_axes: np.ndarray
    env_variables: tuple
    species: tuple
    env_sites: tuple
    spe_sites: tuple

    @property
    def names(self):
        return self.cross.names

    @property
    def eigenvalues(self):
        return self.pta.eigenvalues


def cross_ktable(pair: PairedKTables) -> KTable:
    """The k-table of per-date cross tables Z_k = Y_k^T D_{n_k} X_k."""
    tables = []
    for name, x, y in zip(pair.names, pair.env.tables, pair.spe.tables):
        try:
            tables.append(cross_table(x, y))
        except RowMismatch as exc:
            raise RowMismatch(f"date {name!r}: {exc}") from None
    return KTable(tuple(tables), pair.names)


def statico(pair: PairedKTables, mode: str = "cov", n_axes: int = 2) -> STATICOResult:
    """Partial triadic analysis of the cross tables of a paired k-table.

    The compromise rows are species and its columns environmental variables.
    Per date, species scores are the supplementary rows Z_k D_p U and
    environmental variable coordinates the supplementary columns; sites are
    placed with X_k D_p A (environment side) and Y_k D_q B (species side),
    where A are the compromise axes and B its normalised row scores.
    """
    kt = cross_ktable(pair)
    res = pta(kt, mode, n_axes)
    d = res.compromise.analysis
    A = d.axes
    B = d.components
    env_sites = tuple(x.X @ (A * x.col_metric[:, None]) for x in pair.env.tables)
    spe_sites = tuple(y.X @ (B * y.col_metric[:, None]) for y in pair.spe.tables)
    return STATICOResult(kt, res, A, B, res.cols, res.rows, env_sites, spe_sites)


# -- COSTATIS ---------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class COSTATISResult:
    env_pta: PTAResult
    spe_pta: PTAResult
    coia: CoInertiaResult
    test: Optional[PermutationTestResult]
    env_rows: tuple
    spe_rows: tuple
    env_cols: tuple
    spe_cols: tuple
    env_row_barycenters: np.ndarray
    spe_row_barycenters: np.ndarray

    @property
    def eigenvalues(self):
        return self.coia.eigenvalues


def costatis(
    env: KTable,
    spe: KTable,
    n_perm: int = 999,
    seed: Optional[int] = None,
    mode: str = "cov",
    n_axes: int = 2,
    workers: int = 1,
) -> COSTATISResult:
    """Co-inertia analysis of the compromises of two partial triadic analyses.

    All tables of both cubes must share rows; the number of tables may
    differ. Rows and columns of every original table are projected onto the
    co-inertia axes. ``n_perm=0`` skips the permutation test.
    """
    env.require_same_rows()
    spe.require_same_rows()
    x0, y0 = env.tables[0], spe.tables[0]
    if x0.row_labels != y0.row_labels or not np.array_equal(x0.row_weights, y0.row_weights):
        raise RowMismatch("environment and species tables have different rows")
    px = pta(env, mode, n_axes)
    py = pta(spe, mode, n_axes)
    xc = px.compromise.triplet
    yc = py.compromise.triplet
    res = coia(xc, yc, n_axes)
    test = coia_permutation_test(xc, yc, n_perm, seed=seed, workers=workers) if n_perm > 0 else None
    A, B = res.x_axes, res.y_axes
    w = xc.row_weights
    env_rows = tuple(x.X @ (A * x.col_metric[:, None]) for x in env.tables)
    spe_rows = tuple(y.X @ (B * y.col_metric[:, None]) for y in spe.tables)
    # columns: X_k^T D_n Y_c D_q B and Y_k^T D_n X_c D_p A; for the compromises
    # themselves these give A Lambda^{1/2} and B Lambda^{1/2}
    env_cols = tuple((x.X.T * w) @ res.y_scores for x in env.tables)
    spe_cols = tuple((y.X.T * w) @ res.x_scores for y in spe.tables)
    return COSTATISResult(
        px,
        py,
        res,
        test,
        env_rows,
        spe_rows,
        env_cols,
        spe_cols,
        np.mean(env_rows, axis=0),
        np.mean(spe_rows, axis=0),
    )
