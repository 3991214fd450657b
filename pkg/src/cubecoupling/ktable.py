"""Partial triadic analysis of a k-table.

Three steps: the interstructure (table-by-table Covv or Rv matrix and its
dominant eigenvector), the compromise (alpha-weighted sum of the tables and
its gPCA), and the intrastructure (every table projected onto the compromise
axes as supplementary rows and columns).
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .eigen import Decomposition, gpca, project_cols, project_rows
from .errors import DimensionMismatch, InputError, MixedSignEigenvector, RowMismatch, ZeroVarianceTable
from .tabular import DataTable, KTable, Triplet

MODES = ("cov", "rv")
SIGN_TOL = 1e-9


def _require_compatible(a: Triplet, b: Triplet) -> None:
    if a.shape != b.shape:
        raise DimensionMismatch(f"tables have shapes {a.shape} and {b.shape}")
    if not np.array_equal(a.col_metric, b.col_metric):
        raise DimensionMismatch("tables have different column metrics")
    if not np.array_equal(a.row_weights, b.row_weights):
        raise DimensionMismatch("tables have different row weights")


def covv(a: Triplet, b: Triplet) -> float:
    """Vector covariance trace(X_a^T D_n X_b D_p)."""
    _require_compatible(a, b)
    return float(a.row_weights @ (a.X * b.X) @ a.col_metric)


def varv(a: Triplet) -> float:
    return covv(a, a)


def rv(a: Triplet, b: Triplet) -> float:
    va, vb = varv(a), varv(b)
    if va <= 0 or vb <= 0:
        raise ZeroVarianceTable("Rv is undefined for a table with zero vector variance")
    return covv(a, b) / np.sqrt(va * vb)


@dataclass(frozen=True, eq=False)
class Interstructure:
    matrix: np.ndarray
    alpha: np.ndarray
    first_eigenvalue: float
    eigenvalues: np.ndarray
    mode: str
    mixed_sign: bool = False


@dataclass(frozen=True, eq=False)
class Compromise:
    triplet: Triplet
    alpha: np.ndarray
    analysis: Decomposition

    @property
    def X(self):
        return self.triplet.X


@dataclass(frozen=True)
class TypologicalValue:
    name: str
    weight: float
    cos2: float
    inertia: float


@dataclass(frozen=True, eq=False)
class PTAResult:
    names: tuple
    interstructure: Interstructure
    compromise: Compromise
    rows: tuple
    cols: tuple
    typology: tuple

    @property
    def eigenvalues(self):
        return self.compromise.analysis.spectrum


def _weighted_vectors(kt: KTable) -> np.ndarray:
    """Each table flattened so that plain dot products are Covv values."""
    rows = []
    for t in kt.tables:
        rows.append((np.sqrt(t.row_weights)[:, None] * t.X * np.sqrt(t.col_metric)).ravel())
    return np.vstack(rows)


def covv_matrix(kt: KTable, mode: str = "cov") -> np.ndarray:
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    kt.require_same_rows()
    V = _weighted_vectors(kt)
    S = V @ V.T
    if mode == "rv":
        d = np.sqrt(np.diag(S))
        if np.any(d <= 0):
            bad = kt.names[int(np.flatnonzero(d <= 0)[0])]
            raise ZeroVarianceTable(f"table {bad!r} has zero vector variance")
        S = S / np.outer(d, d)
        np.fill_diagonal(S, 1.0)
    return 0.5 * (S + S.T)


def interstructure(kt: KTable, mode: str = "cov") -> Interstructure:
    """Similarity matrix between tables and the compromise weights alpha.

    alpha is the dominant unit eigenvector, oriented so its entries sum to a
    positive value. A :class:`MixedSignEigenvector` warning is emitted (and
    recorded on the result) when entries of both signs remain.
    """
    S = covv_matrix(kt, mode)
    k = S.shape[0]
    vals, vecs = np.linalg.eigh(S)
    vals = vals[::-1]
    if vals[0] <= 0:
        alpha = np.full(k, 1.0 / np.sqrt(k))
    else:
        alpha = vecs[:, -1]
        total = alpha.sum()
        if total < 0 or (total == 0 and alpha[np.argmax(np.abs(alpha))] < 0):
            alpha = -alpha
        alpha = alpha / np.linalg.norm(alpha)
    mixed = bool(np.any(alpha > SIGN_TOL) and np.any(alpha < -SIGN_TOL))
    if mixed:
        warnings.warn(
            MixedSignEigenvector(f"compromise weights have mixed signs: {np.round(alpha, 6).tolist()}"),
            stacklevel=2,
        )
    for a in (S, alpha, vals):
        a.setflags(write=False)
    return Interstructure(S, alpha, float(vals[0]), vals, mode, mixed)


def build_compromise(kt: KTable, alpha, n_axes: int = 2) -> Compromise:
    """X_c = sum_k alpha_k X_k and its gPCA."""
    alpha = np.asarray(alpha, dtype=float)
    if alpha.shape != (kt.k,):
        raise DimensionMismatch(f"{alpha.size} weights for {kt.k} tables")
    if abs(alpha @ alpha - 1.0) > 1e-9:
        raise InputError("compromise weights must have unit Euclidean norm")
    kt.require_same_rows()
    first = kt.tables[0]
    Xc = sum(a * t.X for a, t in zip(alpha, kt.tables))
    trip = Triplet(DataTable(Xc, first.row_labels, first.col_labels), first.col_metric, first.row_weights)
    alpha = alpha.copy()
    alpha.setflags(write=False)
    return Compromise(trip, alpha, gpca(trip, n_axes))


def intrastructure_rows(kt: KTable, compromise: Compromise) -> list:
    """R_k = X_k D_p U for every table."""
    return [project_rows(compromise.analysis, t) for t in kt.tables]


def intrastructure_cols(kt: KTable, compromise: Compromise) -> list:
    """C_k = X_k^T D_n X_c D_p U Lambda^{-1/2} for every table."""
    out = []
    w = compromise.triplet.row_weights
    for name, t in zip(kt.names, kt.tables):
        if t.shape[0] != w.size or not np.array_equal(t.row_weights, w):
            raise RowMismatch(f"table {name!r} rows do not match the compromise")
        out.append(project_cols(compromise.analysis, t.X))
    return out


def typological_values(kt: KTable, compromise: Compromise, strict: bool = True) -> list:
    """Per-table weight, squared Rv to the compromise, and vector variance.

    With ``strict=False`` a zero table (or zero compromise) gets cos2 = 0
    instead of raising :class:`ZeroVarianceTable`.
    """
    out = []
    comp_var = varv(compromise.triplet)
    for name, a, t in zip(kt.names, compromise.alpha, kt.tables):
        inertia = varv(t)
        if inertia <= 0 or comp_var <= 0:
            if strict:
                raise ZeroVarianceTable(f"table {name!r} or the compromise has zero vector variance")
            cos2 = 0.0
        else:
            r = covv(t, compromise.triplet) / np.sqrt(inertia * comp_var)
            cos2 = min(1.0, r * r)
        out.append(TypologicalValue(name, float(a), float(cos2), inertia))
    return out


def pta(kt: KTable, mode: str = "cov", n_axes: int = 2) -> PTAResult:
    """Interstructure, compromise and intrastructure in one pass."""
    inter = interstructure(kt, mode)
    comp = build_compromise(kt, inter.alpha, n_axes)
    rows = intrastructure_rows(kt, comp)
    cols = intrastructure_cols(kt, comp)
    typo = typological_values(kt, comp, strict=False)
    return PTAResult(kt.names, inter, comp, tuple(rows), tuple(cols), tuple(typo))
