import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cubecoupling.coinertia import PermutationTestResult
from cubecoupling.report import AnalysisReport, from_text, matrix_csv, round_sig, to_text, write_report


def sample_report():
    rep = AnalysisReport("coia", eigenvalues=[1 / 3, 2e-20, 0.0])
    rep.add_scalar("rv", 0.123456789012345678)
    rep.add_vector("alpha", [0.5, -0.0, 1e300], ["a", "b", "c"])
    rep.add_matrix("scores", [[1.0, -2.5], [np.pi, 1e-7]], ["r1", "r,2"], ["Axis1", "Axis2"])
    rep.add_test("total", PermutationTestResult(2.5, np.zeros(3), 0.25, 7, 3, "total_coinertia"))
    rep.warnings.append("something odd")
    rep.provenance = {"config_sha256": "ab" * 32, "inputs": {"x": "cd" * 32}}
    return rep


def test_round_sig():
    assert round_sig(1 / 3) == 0.333333333333
    assert repr(round_sig(-0.0)) == "0.0"
    assert round_sig(123456789.123456789) == 123456789.123


def test_roundtrip_bytes():
    text = to_text(sample_report())
    assert to_text(from_text(text)) == text


def test_numeric_lists_on_one_line():
    text = to_text(sample_report())
    assert '"values": [0.5, 0.0, 1e+300]' in text
    assert "[3.14159265359, 1e-07]" in text


def test_format_version():
    with pytest.raises(ValueError):
        from_text('{"format": 99}')


def test_label_checks():
    rep = AnalysisReport("pca")
    with pytest.raises(ValueError):
        rep.add_vector("v", [1, 2], ["a"])
    with pytest.raises(ValueError):
        rep.add_matrix("m", np.zeros((2, 2)), ["a"], ["x", "y"])


def test_sidecars(tmp_path):
    paths = write_report(sample_report(), tmp_path / "out")
    assert [p.name for p in paths] == ["report.txt", "scores.csv"]
    csv_text = (tmp_path / "out" / "scores.csv").read_text()
    assert csv_text.splitlines()[0] == ",Axis1,Axis2"
    assert '"r,2",3.14159265359,1e-07' in csv_text
    assert matrix_csv(sample_report().matrices["scores"]) == csv_text


finite = st.floats(allow_nan=False, allow_infinity=False, width=64)


@settings(max_examples=200, deadline=None)
@given(st.lists(finite, min_size=1, max_size=8), st.lists(finite, min_size=4, max_size=4))
def test_roundtrip_property(eig, mat):
    rep = AnalysisReport("pca", eigenvalues=eig)
    rep.add_matrix("m", np.array(mat).reshape(2, 2), ["a", "b"], ["x", "y"])
    text = to_text(rep)
    again = from_text(text)
    assert to_text(again) == text
    np.testing.assert_array_equal(again.matrix("m"), [[round_sig(v) for v in mat[:2]], [round_sig(v) for v in mat[2:]]])
