"""Analysis reports: a diffable JSON document plus one CSV per matrix.

Numbers are rounded to 12 significant digits before writing, so parsing a
report and writing it again reproduces the same bytes.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

SIG_DIGITS = 12
FORMAT_VERSION = 1


def round_sig(x: float) -> float:
    v = float(format(float(x), f".{SIG_DIGITS}g"))
    return v + 0.0  # no negative zero


@dataclass
class AnalysisReport:
    method: str
    eigenvalues: list = field(default_factory=list)
    scalars: dict = field(default_factory=dict)
    vectors: dict = field(default_factory=dict)
    matrices: dict = field(default_factory=dict)
    tests: dict = field(default_factory=dict)
    warnings: list = field(default_factory=list)
    provenance: dict = field(default_factory=dict)

    def add_scalar(self, name, value):
        self.scalars[name] = round_sig(value)

    def add_vector(self, name, values, labels):
        values = [round_sig(v) for v in np.asarray(values, dtype=float).ravel()]
        labels = [str(lab) for lab in labels]
        if len(labels) != len(values):
            raise ValueError(f"vector {name!r}: {len(labels)} labels for {len(values)} values")
        self.vectors[name] = {"labels": labels, "values": values}

    def add_matrix(self, name, values, rows, cols):
        values = np.asarray(values, dtype=float)
        if values.ndim == 1:
            values = values[:, None]
        rows = [str(r) for r in rows]
        cols = [str(c) for c in cols]
        if values.shape != (len(rows), len(cols)):
            raise ValueError(f"matrix {name!r}: shape {values.shape} vs labels {len(rows)}x{len(cols)}")
        self.matrices[name] = {
            "rows": rows,
            "cols": cols,
            "values": [[round_sig(v) for v in row] for row in values],
        }

    def add_test(self, name, result):
        self.tests[name] = {
            "statistic": result.statistic,
            "observed": round_sig(result.observed),
            "p_value": round_sig(result.p_value),
            "n_perm": int(result.n_perm),
            "seed": int(result.seed),
        }

    def matrix(self, name) -> np.ndarray:
        return np.array(self.matrices[name]["values"], dtype=float)


def _encode(obj, indent=0) -> str:
    pad = "  " * indent
    inner = "  " * (indent + 1)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{inner}{json.dumps(k)}: {_encode(v, indent + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, list):
        if not obj:
            return "[]"
        if all(not isinstance(v, (list, dict)) for v in obj):
            return "[" + ", ".join(_encode(v) for v in obj) + "]"
        items = [inner + _encode(v, indent + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + pad + "]"
    if isinstance(obj, float):
        return repr(round_sig(obj))
    return json.dumps(obj)


def to_text(report: AnalysisReport) -> str:
    doc = {
        "format": FORMAT_VERSION,
        "method": report.method,
        "eigenvalues": [round_sig(v) for v in report.eigenvalues],
        "scalars": report.scalars,
        "vectors": report.vectors,
        "tests": report.tests,
        "warnings": list(report.warnings),
        "provenance": report.provenance,
        "matrices": report.matrices,
    }
    return _encode(doc) + "\n"


def from_text(text: str) -> AnalysisReport:
    doc = json.loads(text)
    if doc.get("format") != FORMAT_VERSION:
        raise ValueError(f"unsupported report format {doc.get('format')!r}")
    return AnalysisReport(
        method=doc["method"],
        eigenvalues=doc["eigenvalues"],
        scalars=doc["scalars"],
        vectors=doc["vectors"],
        matrices=doc["matrices"],
        tests=doc["tests"],
        warnings=doc["warnings"],
        provenance=doc["provenance"],
    )


def matrix_csv(entry) -> str:
    out = io.StringIO()
    w = csv.writer(out, lineterminator="\n")
    w.writerow([""] + entry["cols"])
    for label, row in zip(entry["rows"], entry["values"]):
        w.writerow([label] + [repr(v) for v in row])
    return out.getvalue()


def write_report(report: AnalysisReport, outdir) -> list:
    """Write ``report.txt`` and ``<matrix>.csv`` sidecars; return the paths."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    written = []
    path = outdir / "report.txt"
    path.write_text(to_text(report), encoding="utf-8")
    written.append(path)
    for name, entry in report.matrices.items():
        p = outdir / f"{name}.csv"
        p.write_text(matrix_csv(entry), encoding="utf-8")
        written.append(p)
    return written
