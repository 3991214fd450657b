import numpy as np
import pytest

import oracles
from conftest import random_triplet, triplet
from cubecoupling.eigen import gpca, numerical_rank, orient_columns, project_cols, project_rows
from cubecoupling.errors import ColumnMismatch, NullEigenvalue, RowMismatch
from cubecoupling.tabular import total_inertia


def test_hand_2x2():
    d = gpca(triplet([[1, -1], [-1, 1]]))
    np.testing.assert_allclose(d.spectrum, [2.0, 0.0], atol=1e-15)
    assert d.rank == 1
    np.testing.assert_allclose(np.abs(d.axes[:, 0]), [1 / np.sqrt(2)] * 2)


def test_zero_table():
    d = gpca(triplet(np.zeros((3, 2))))
    np.testing.assert_array_equal(d.spectrum, 0.0)
    assert d.rank == 0 and d.nf == 0
    assert d.row_scores.shape == (3, 0)


def test_diagonal_closed_form():
    diag = np.array([3.0, -1.0, 2.0])
    d = gpca(triplet(np.diag(diag)), n_axes=3)
    np.testing.assert_allclose(d.spectrum, np.sort(diag**2 / 3)[::-1])


def test_sign_convention():
    U = orient_columns(np.array([[0.1, -0.5], [-0.9, 0.5]]))
    np.testing.assert_allclose(U, [[-0.1, 0.5], [0.9, -0.5]])


def test_numerical_rank():
    assert numerical_rank(np.array([1.0, 1e-10, 0.0])) == 1
    assert numerical_rank(np.zeros(3)) == 0


def test_against_oracle(rng):
    for _ in range(20):
        t = random_triplet(rng, 4, 3)
        d = gpca(t, n_axes=3)
        vals, vecs = oracles.gpca(t.X, t.col_metric, t.row_weights)
        np.testing.assert_allclose(d.spectrum, vals[:3], rtol=1e-10, atol=1e-12 * vals[0])
        assert oracles.same_up_to_sign(d.axes, vecs[:, : d.nf], 1e-8)


def test_decomposition_invariants(rng):
    t = random_triplet(rng, 6, 4)
    d = gpca(t, n_axes=4)
    U = d.axes
    np.testing.assert_allclose(U.T @ (U * t.col_metric[:, None]), np.eye(d.nf), atol=1e-10)
    var = t.row_weights @ d.row_scores**2
    np.testing.assert_allclose(var, d.eigenvalues[: d.nf], rtol=1e-10)
    assert d.spectrum.sum() == pytest.approx(total_inertia(t), rel=1e-12)
    np.testing.assert_allclose(t.row_weights @ d.components**2, 1.0)


def test_deterministic(rng):
    t = random_triplet(rng, 5, 3)
    a, b = gpca(t), gpca(t)
    np.testing.assert_array_equal(a.axes, b.axes)
    np.testing.assert_array_equal(a.row_scores, b.row_scores)


class TestProjectRows:
    def test_self(self, rng):
        t = random_triplet(rng, 5, 3)
        d = gpca(t)
        np.testing.assert_allclose(project_rows(d, t), d.row_scores, atol=1e-14)

    def test_zero_row(self, rng):
        d = gpca(random_triplet(rng, 5, 3))
        np.testing.assert_array_equal(project_rows(d, np.zeros(3)), 0.0)

    def test_column_mismatch(self, rng):
        d = gpca(random_triplet(rng, 5, 3))
        with pytest.raises(ColumnMismatch):
            project_rows(d, np.zeros((2, 4)))
        with pytest.raises(ColumnMismatch):
            project_rows(d, triplet(np.zeros((2, 3)), cols=["a", "b", "c"]))


class TestProjectCols:
    def test_identity_2x2(self):
        t = triplet([[2, 1], [0, 3]])
        d = gpca(t)
        # the table's own columns land on U Lambda^{1/2}
        np.testing.assert_allclose(project_cols(d, t.X), d.col_coords, atol=1e-14)
        np.testing.assert_allclose(d.spectrum, [5.302775637731995, 1.6972243622680057], rtol=1e-12)

    def test_identity_with_metric(self, rng):
        t = random_triplet(rng, 6, 3)
        d = gpca(t, 3)
        np.testing.assert_allclose(project_cols(d, t.X), d.col_coords, atol=1e-12)

    def test_zero_and_duplicate(self, rng):
        t = random_triplet(rng, 5, 3)
        d = gpca(t)
        sup = np.column_stack([np.zeros(5), t.X[:, 0], t.X[:, 0]])
        c = project_cols(d, sup)
        np.testing.assert_array_equal(c[0], 0.0)
        np.testing.assert_array_equal(c[1], c[2])

    def test_row_mismatch(self, rng):
        d = gpca(random_triplet(rng, 5, 3))
        with pytest.raises(RowMismatch):
            project_cols(d, np.zeros((4, 1)))

    def test_null_eigenvalue(self):
        d = gpca(triplet([[1, -1], [-1, 1]]))
        with pytest.raises(NullEigenvalue):
            project_cols(d, np.ones((2, 1)), n_axes=2)
