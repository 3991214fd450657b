"""Generalized PCA of a triplet and supplementary projections."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ColumnMismatch, DimensionMismatch, NullEigenvalue, RowMismatch
from .tabular import Triplet

RANK_TOL = 1e-9


def orient_columns(U: np.ndarray) -> np.ndarray:
    """Flip each column so its largest-magnitude entry is positive.

    ``np.argmax`` returns the first maximum, which breaks ties by lowest index.
    """
    U = np.array(U, dtype=float, copy=True)
    if U.size == 0:
        return U
    idx = np.argmax(np.abs(U), axis=0)
    signs = np.where(U[idx, np.arange(U.shape[1])] < 0, -1.0, 1.0)
    return U * signs


def numerical_rank(spectrum: np.ndarray, tol: float = RANK_TOL) -> int:
    if spectrum.size == 0 or spectrum[0] <= 0:
        return 0
    return int(np.count_nonzero(spectrum > tol * spectrum[0]))


@dataclass(frozen=True, eq=False)
class Decomposition:
    """Result of :func:`gpca`.

    Attributes
    ----------
    spectrum : ndarray
        All ``min(n, p)`` eigenvalues, descending, clipped at zero.
    rank : int
        Number of eigenvalues above ``1e-9 * spectrum[0]``.
    axes : ndarray
        ``p x nf`` principal axes U, orthonormal for the column metric.
    row_scores : ndarray
        ``n x nf`` row scores ``X D_p U``.
    components : ndarray
        Row scores rescaled to unit weighted variance per axis.
    source : Triplet
        The analysed triplet.
    """

    spectrum: np.ndarray
    rank: int
    axes: np.ndarray
    row_scores: np.ndarray
    components: np.ndarray
    source: Triplet

    @property
    def eigenvalues(self) -> np.ndarray:
        return self.spectrum[: self.rank]

    @property
    def nf(self) -> int:
        return self.axes.shape[1]

    @property
    def kept_eigenvalues(self) -> np.ndarray:
        return self.spectrum[: self.nf]

    @property
    def discarded_inertia(self) -> float:
        return float(self.spectrum[self.rank:].sum())

    @property
    def col_coords(self) -> np.ndarray:
        """Column coordinates U Lambda^{1/2}."""
        return self.axes * np.sqrt(self.kept_eigenvalues)

    def axis_labels(self):
        return tuple(f"Axis{i + 1}" for i in range(self.nf))


def gpca(t: Triplet, n_axes: int = 2) -> Decomposition:
    """Spectral decomposition of X^T D_n X D_p.

    The symmetric matrix ``D_p^{1/2} X^T D_n X D_p^{1/2}`` is diagonalised and
    its eigenvectors mapped back by ``D_p^{-1/2}``, so the axes come out
    D_p-orthonormal. Eigenvalues below ``1e-9`` times the largest are null;
    at most ``min(n_axes, rank)`` axes are kept.
    """
    if n_axes < 1:
        raise DimensionMismatch("n_axes must be at least 1")
    X = t.X
    n, p = X.shape
    if n < 1 or p < 1:
        raise DimensionMismatch("cannot decompose an empty table")
    sq = np.sqrt(t.col_metric)
    Xs = X * sq
    S = Xs.T @ (Xs * t.row_weights[:, None])
    S = 0.5 * (S + S.T)
    vals, vecs = np.linalg.eigh(S)
    order = np.argsort(vals)[::-1][: min(n, p)]
    spectrum = np.clip(vals[order], 0.0, None)
    vecs = vecs[:, order]
    rank = numerical_rank(spectrum)
    nf = min(n_axes, rank)
    U = orient_columns(vecs[:, :nf] / sq[:, None])
    scores = X @ (U * t.col_metric[:, None])
    components = scores / np.sqrt(spectrum[:nf])
    for a in (spectrum, U, scores, components):
        a.setflags(write=False)
    return Decomposition(spectrum, rank, U, scores, components, t)


def project_rows(d: Decomposition, sup) -> np.ndarray:
    """Supplementary row scores ``X_sup D_p U``.

    ``sup`` may be a :class:`Triplet` (columns and metric are checked) or a
    bare matrix with the right number of columns.
    """
    src = d.source
    if isinstance(sup, Triplet):
        if sup.col_labels != src.col_labels:
            raise ColumnMismatch("supplementary rows have different column labels")
        if not np.allclose(sup.col_metric, src.col_metric, rtol=1e-12, atol=0):
            raise ColumnMismatch("supplementary rows have a different column metric")
        X = sup.X
    else:
        X = np.asarray(sup, dtype=float)
        if X.ndim == 1:
            X = X[None, :]
        if X.shape[1] != src.shape[1]:
            raise ColumnMismatch(f"expected {src.shape[1]} columns, got {X.shape[1]}")
    return X @ (d.axes * src.col_metric[:, None])


def project_cols(d: Decomposition, sup_cols, n_axes: int | None = None) -> np.ndarray:
    """Supplementary column coordinates ``X_sup^T D_n X D_p U Lambda^{-1/2}``.

    ``sup_cols`` is an ``n x m`` matrix whose m columns live on the rows of
    the decomposed table.
    """
    src = d.source
    Y = np.asarray(sup_cols.X if isinstance(sup_cols, Triplet) else sup_cols, dtype=float)
    if Y.ndim == 1:
        Y = Y[:, None]
    if Y.shape[0] != src.shape[0]:
        raise RowMismatch(f"expected {src.shape[0]} rows, got {Y.shape[0]}")
    nf = d.nf if n_axes is None else n_axes
    if nf > d.nf:
        raise NullEigenvalue(f"axis {d.nf + 1} was not kept (rank {d.rank}, {d.nf} axes retained)")
    lam = d.spectrum[:nf]
    if nf and lam[-1] <= RANK_TOL * d.spectrum[0]:
        raise NullEigenvalue("requested axis has a null eigenvalue")
    return (Y.T * src.row_weights) @ d.row_scores[:, :nf] / np.sqrt(lam)
