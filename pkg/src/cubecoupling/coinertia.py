"""Co-inertia analysis of two tables sharing rows, RV and permutation test."""

from __future__ import annotations

import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .eigen import Decomposition, gpca
from .errors import RowMismatch, ZeroVarianceTable
from .tabular import DataTable, Triplet, is_centered, total_inertia

# relative slack when counting permuted statistics that reach the observed one
TIE_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class CoInertiaResult:
    """Axes, scores and per-axis statistics of a co-inertia analysis.

    ``eigenvalues`` is the full spectrum of the crossed triplet; the axis
    arrays hold the first ``nf`` axes only.
    """

    eigenvalues: np.ndarray
    rank: int
    x_axes: np.ndarray
    y_axes: np.ndarray
    x_scores: np.ndarray
    y_scores: np.ndarray
    covariance: np.ndarray
    correlation: np.ndarray
    x_variance: np.ndarray
    y_variance: np.ndarray
    total_coinertia: float
    rv: float
    cross: Decomposition
    tx: Triplet
    ty: Triplet

    @property
    def nf(self) -> int:
        return self.x_axes.shape[1]

    def axis_labels(self):
        return tuple(f"Axis{i + 1}" for i in range(self.nf))


@dataclass(frozen=True, eq=False)
class PermutationTestResult:
    observed: float
    permuted: np.ndarray
    p_value: float
    seed: int
    n_perm: int
    statistic: str = ""


def _require_same_rows(tx: Triplet, ty: Triplet) -> None:
    if tx.shape[0] != ty.shape[0]:
        raise RowMismatch(f"tables have {tx.shape[0]} and {ty.shape[0]} rows")
    if tx.row_labels != ty.row_labels:
        raise RowMismatch("tables have different row labels")
    if not np.array_equal(tx.row_weights, ty.row_weights):
        raise RowMismatch("tables have different row weights")


def cross_table(tx: Triplet, ty: Triplet) -> Triplet:
    """The crossed triplet (Y^T D_n X, D_p, D_q).

    Rows of the result are the columns of ``ty``, columns are those of
    ``tx``; the row weights are the column metric of ``ty``.
    """
    _require_same_rows(tx, ty)
    Z = (ty.X * ty.row_weights[:, None]).T @ tx.X
    return Triplet(DataTable(Z, ty.col_labels, tx.col_labels), tx.col_metric, ty.col_metric)


def total_coinertia(tx: Triplet, ty: Triplet) -> float:
    """trace(X D_p X^T D_n Y D_q Y^T D_n)."""
    return total_inertia(cross_table(tx, ty))


def rv_coefficient(tx: Triplet, ty: Triplet) -> float:
    """Escoufier's RV between the row configurations of two tables."""
    _require_same_rows(tx, ty)
    vx = total_coinertia(tx, tx)
    vy = total_coinertia(ty, ty)
    if vx <= 0 or vy <= 0:
        raise ZeroVarianceTable("RV is undefined for a table with zero inertia")
    return total_coinertia(tx, ty) / np.sqrt(vx * vy)


def coia(tx: Triplet, ty: Triplet, n_axes: int = 2) -> CoInertiaResult:
    """Co-inertia analysis: gPCA of the crossed triplet.

    The x axes are the principal axes of the crossed triplet; the y axes are
    its normalised row scores, which are D_q-orthonormal. With these, the
    weighted covariance of paired scores on axis i equals sqrt(lambda_i).
    """
    if not (is_centered(tx) and is_centered(ty)):
        warnings.warn("co-inertia on uncentered tables: scores are not covariances", stacklevel=2)
    cross = cross_table(tx, ty)
    d = gpca(cross, n_axes)
    A = d.axes
    B = d.components
    xs = tx.X @ (A * tx.col_metric[:, None])
    ys = ty.X @ (B * ty.col_metric[:, None])
    w = tx.row_weights
    cov = w @ (xs * ys)
    vx = w @ (xs * xs)
    vy = w @ (ys * ys)
    denom = np.sqrt(vx * vy)
    corr = np.divide(cov, denom, out=np.zeros_like(cov), where=denom > 0)
    total = total_inertia(cross)
    ix = total_coinertia(tx, tx)
    iy = total_coinertia(ty, ty)
    rv = total / np.sqrt(ix * iy) if ix > 0 and iy > 0 else 0.0
    return CoInertiaResult(
        eigenvalues=d.spectrum,
        rank=d.rank,
        x_axes=A,
        y_axes=B,
        x_scores=xs,
        y_scores=ys,
        covariance=cov,
        correlation=corr,
        x_variance=vx,
        y_variance=vy,
        total_coinertia=total,
        rv=float(rv),
        cross=d,
        tx=tx,
        ty=ty,
    )


def permutation_rng(seed: int, index: int) -> np.random.Generator:
    """Generator for permutation ``index``; depends only on (seed, index)."""
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(index,)))


def permutation_test(
    statistic: Callable[[np.ndarray], float],
    n: int,
    n_perm: int,
    seed: int,
    workers: int = 1,
    name: str = "",
) -> PermutationTestResult:
    """Generic one-sided test: permute n items ``n_perm`` times.

    ``statistic(perm)`` evaluates the criterion under the row order ``perm``;
    the observed value uses the identity order. p = (m + 1) / (n_perm + 1).
    """
    if n_perm < 1:
        raise ValueError("n_perm must be at least 1")
    if seed is None:
        raise ValueError("an explicit seed is required")
    seed = int(seed)
    observed = float(statistic(np.arange(n)))

    def one(i):
        return float(statistic(permutation_rng(seed, i).permutation(n)))

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            permuted = np.fromiter(pool.map(one, range(n_perm)), dtype=float, count=n_perm)
    else:
        permuted = np.array([one(i) for i in range(n_perm)])
    threshold = observed - TIE_TOL * abs(observed)
    m = int(np.count_nonzero(permuted >= threshold))
    permuted.setflags(write=False)
    return PermutationTestResult(observed, permuted, (m + 1) / (n_perm + 1), seed, n_perm, name)


def coia_permutation_test(
    tx: Triplet, ty: Triplet, n_perm: int = 999, *, seed: int, workers: int = 1
) -> PermutationTestResult:
    """Total co-inertia against random row permutations of X (Y fixed)."""
    _require_same_rows(tx, ty)
    Yw = ty.X * ty.row_weights[:, None]
    X = tx.X
    dp = tx.col_metric
    dq = ty.col_metric

    def stat(perm):
        Z = Yw.T @ X[perm]
        return float(dq @ (Z * Z) @ dp)

    return permutation_test(stat, X.shape[0], n_perm, seed, workers, "total_coinertia")
