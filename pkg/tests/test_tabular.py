import numpy as np
import pytest

from conftest import ktable_from, triplet
from cubecoupling.errors import (
    BlockSizeMismatch,
    ColumnMismatch,
    DuplicateLabel,
    EmptyGroup,
    NegativeEntry,
    RowMismatch,
    ZeroVarianceColumn,
)
from cubecoupling.tabular import (
    BlockDescriptor,
    DataTable,
    GroupAssignment,
    KTable,
    PairedKTables,
    Triplet,
    center_table,
    check_row_weights,
    group_means,
    log1p_transform,
    partial_center,
    partial_standardize,
    split_blocks,
    stack_blocks,
    standardize_table,
    total_inertia,
    weighted_mean,
    weighted_var,
)


class TestDataTable:
    def test_labels_and_readonly(self):
        t = DataTable.from_array([[1, 2], [3, 4]])
        assert t.row_labels == ("R1", "R2")
        assert t.col_labels == ("V1", "V2")
        with pytest.raises(ValueError):
            t.values[0, 0] = 9

    def test_duplicate_labels(self):
        with pytest.raises(DuplicateLabel):
            DataTable(np.zeros((2, 1)), ("a", "a"), ("x",))

    def test_label_count(self):
        with pytest.raises(RowMismatch):
            DataTable(np.zeros((2, 1)), ("a",), ("x",))
        with pytest.raises(ColumnMismatch):
            DataTable(np.zeros((2, 1)), ("a", "b"), ("x", "y"))

    def test_nan_rejected(self):
        with pytest.raises(ValueError):
            DataTable.from_array([[1.0, np.nan]])


class TestTriplet:
    def test_defaults(self):
        t = triplet([[1, 2], [3, 4], [5, 6]])
        np.testing.assert_allclose(t.row_weights, [1 / 3] * 3)
        np.testing.assert_array_equal(t.col_metric, [1, 1])

    def test_bad_weights(self):
        with pytest.raises(ValueError):
            triplet([[1], [2]], dn=[0.5, -0.5])
        with pytest.raises(ValueError):
            triplet([[1], [2]], dn=[1.0])

    def test_probability_check(self):
        check_row_weights([0.25, 0.75])
        with pytest.raises(ValueError):
            check_row_weights([0.5, 0.6])


def test_weighted_stats():
    X = np.array([[1.0], [2.0], [6.0]])
    w = np.array([0.5, 0.25, 0.25])
    assert weighted_mean(X, w)[0] == pytest.approx(2.5)
    assert weighted_var(X, w)[0] == pytest.approx(0.5 * 2.25 + 0.25 * 0.25 + 0.25 * 12.25)


class TestCenter:
    def test_mean_removal(self):
        np.testing.assert_allclose(center_table(triplet([[1], [3]])).X, [[-1], [1]])

    def test_weighted(self):
        # hand-computed weighted mean 2.5
        t = center_table(triplet([[1], [2], [6]], dn=[0.5, 0.25, 0.25]))
        np.testing.assert_allclose(t.X.ravel(), [-1.5, -0.5, 3.5])

    def test_idempotent(self, rng):
        t = center_table(triplet(rng.normal(size=(5, 3))))
        np.testing.assert_allclose(center_table(t).X, t.X, atol=1e-15)

    def test_reduces_inertia(self, rng):
        t = triplet(rng.normal(size=(5, 3)) + 4)
        assert total_inertia(center_table(t)) < total_inertia(t)


class TestStandardize:
    def test_unit_variance_already(self):
        np.testing.assert_allclose(standardize_table(triplet([[1], [3]])).X, [[-1], [1]])

    def test_constant_column(self):
        t = triplet([[5, 1], [5, 2], [5, 4]], cols=["flat", "ok"])
        with pytest.raises(ZeroVarianceColumn) as exc:
            standardize_table(t)
        assert exc.value.label == "flat"

    def test_idempotent(self, rng):
        s = standardize_table(triplet(rng.normal(size=(6, 3)), dn=[0.1, 0.2, 0.1, 0.3, 0.2, 0.1]))
        np.testing.assert_allclose(standardize_table(s).X, s.X, atol=1e-12)
        np.testing.assert_allclose(weighted_var(s.X, s.row_weights), 1.0)


class TestPartial:
    def test_one_block_equals_global(self, rng):
        t = triplet(rng.normal(size=(5, 2)))
        kt = split_blocks(t, BlockDescriptor((("all", 5),)))
        np.testing.assert_allclose(partial_standardize(kt).tables[0].X, standardize_table(t).X)

    def test_identical_blocks(self, rng):
        X = rng.normal(size=(4, 3))
        kt = ktable_from([X, X, X])
        ref = standardize_table(triplet(X)).X
        for t in partial_standardize(kt).tables:
            np.testing.assert_allclose(t.X, ref)

    def test_block_means(self):
        kt = ktable_from([[[1, 0], [3, 2]], [[10, 5], [14, 9]]])
        for t in partial_center(kt).tables:
            np.testing.assert_allclose(t.X.mean(axis=0), 0, atol=1e-15)
        np.testing.assert_allclose(partial_center(kt).tables[1].X, [[-2, -2], [2, 2]])

    def test_block_name_in_error(self):
        kt = ktable_from([[[1.0], [2.0]], [[3.0], [3.0]]], names=["a", "b"])
        with pytest.raises(ZeroVarianceColumn) as exc:
            partial_standardize(kt)
        assert exc.value.block == "b"


class TestLog1p:
    def test_values(self):
        t = log1p_transform(DataTable.from_array([[0.0, np.e - 1]]))
        np.testing.assert_allclose(t.values, [[0.0, 1.0]])

    def test_zeros(self):
        np.testing.assert_array_equal(log1p_transform(DataTable.from_array(np.zeros((2, 2)))).values, 0)

    def test_negative(self):
        with pytest.raises(NegativeEntry):
            log1p_transform(DataTable.from_array([[1.0, -0.5]]))


class TestGroupMeans:
    def test_arithmetic(self):
        m, w = group_means(triplet([[1, 3], [3, 5], [10, 20]]), GroupAssignment.from_labels([1, 1, 2]))
        np.testing.assert_allclose(m.X, [[2, 4], [10, 20]])
        np.testing.assert_allclose(w, [2 / 3, 1 / 3])
        np.testing.assert_allclose(m.row_weights, w)

    def test_singletons(self, rng):
        X = rng.normal(size=(4, 2))
        m, w = group_means(triplet(X), GroupAssignment.from_labels("abcd"))
        np.testing.assert_allclose(m.X, X)
        np.testing.assert_allclose(w, 0.25)

    def test_one_group(self, rng):
        X = rng.normal(size=(4, 2))
        m, _ = group_means(triplet(X), GroupAssignment.from_labels("aaaa"))
        np.testing.assert_allclose(m.X, X.mean(axis=0, keepdims=True))

    def test_idempotent(self, rng):
        g = GroupAssignment.from_labels("aabbb")
        m, _ = group_means(triplet(rng.normal(size=(5, 2))), g)
        again, _ = group_means(m, GroupAssignment.from_labels("ab"))
        np.testing.assert_allclose(again.X, m.X)

    def test_empty_group(self):
        with pytest.raises(EmptyGroup):
            GroupAssignment(np.array([0, 0, 2]), ("a", "b", "c"))

    def test_size_mismatch(self):
        with pytest.raises(RowMismatch):
            group_means(triplet([[1], [2]]), GroupAssignment.from_labels("abc"))


class TestBlocks:
    def test_split_meau_layout(self, rng):
        t = triplet(rng.normal(size=(24, 3)))
        b = BlockDescriptor(tuple((s, 6) for s in ("Spring", "Summer", "Autumn", "Winter")))
        kt = split_blocks(t, b)
        assert kt.k == 4 and all(x.shape == (6, 3) for x in kt.tables)
        np.testing.assert_allclose(kt.tables[2].row_weights, 1 / 6)
        np.testing.assert_array_equal(stack_blocks(kt).values, t.X)

    def test_single_block(self, rng):
        t = triplet(rng.normal(size=(3, 2)))
        kt = split_blocks(t, BlockDescriptor((("x", 3),)))
        np.testing.assert_array_equal(kt.tables[0].X, t.X)

    def test_bad_total(self):
        with pytest.raises(BlockSizeMismatch):
            split_blocks(triplet(np.zeros((4, 1))), BlockDescriptor((("a", 2), ("b", 1))))

    def test_nonpositive(self):
        with pytest.raises(BlockSizeMismatch):
            BlockDescriptor((("a", 0),))


class TestKTable:
    def test_column_mismatch(self):
        with pytest.raises(ColumnMismatch):
            KTable((triplet([[1, 2]]), triplet([[1, 2]], cols=["a", "b"])))

    def test_same_rows(self):
        kt = KTable((triplet([[1], [2]]), triplet([[1], [2]], rows=["x", "y"])))
        assert not kt.same_rows()
        with pytest.raises(RowMismatch):
            kt.require_same_rows()

    def test_paired(self):
        env = ktable_from([[[1], [2]], [[3], [4]]])
        spe = ktable_from([[[1, 0], [2, 1]]])
        with pytest.raises(ValueError):
            PairedKTables(env, spe)


class TestInertia:
    def test_hand_case(self):
        assert total_inertia(triplet([[1, -1], [-1, 1]])) == pytest.approx(2.0)

    def test_standardized(self, rng):
        t = standardize_table(triplet(rng.normal(size=(7, 4))))
        assert total_inertia(t) == pytest.approx(4.0)

    def test_zero(self):
        assert total_inertia(triplet(np.zeros((3, 2)))) == 0.0

    def test_row_permutation(self, rng):
        X = rng.normal(size=(5, 3))
        w = np.array([0.1, 0.3, 0.2, 0.15, 0.25])
        perm = rng.permutation(5)
        a = total_inertia(triplet(X, dn=w))
        b = total_inertia(Triplet.from_table(DataTable.from_array(X[perm]), None, w[perm]))
        assert a == pytest.approx(b, rel=1e-14)
