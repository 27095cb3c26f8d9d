"""
Tests for design documents and report export.
"""
import io
import json
import math

import numpy as np
import pytest
from openpyxl import load_workbook

from Scripts import documentManager
from Scripts.documentManager import DesignDocument
from Scripts.IsoKin.errors import InvalidDocument, InvalidOrdering
from Scripts.IsoKin.geometry.planar_geometry import DIMENSIONLESS, PointSet
from Scripts.IsoKin.kinematics.chains import KinematicChain


def test_document_round_trip(tmp_path, rng):
    S = PointSet(rng.normal(size=(5, 2)) * 1e3, DIMENSIONLESS)
    doc = DesignDocument(
        point_set=S,
        orderings=[(0, 1, 2, 3, 4), (4, 2, 0, 1, 3)],
        chains=[KinematicChain(tuple(rng.uniform(0.1, 2.0, size=5)))],
        results=[{"kind": "conditioning", "lambda": 1.0 / 3.0}],
    )
    path = tmp_path / "design.json"
    documentManager.write_document(str(path), doc)
    back = documentManager.read_document(str(path))

    np.testing.assert_array_equal(back.point_set.coords, S.coords)
    assert back.point_set.unit == DIMENSIONLESS
    assert back.orderings == doc.orderings
    assert back.chains == doc.chains
    assert back.results == doc.results


def test_orderings_are_one_based_on_disk(half_square):
    data = documentManager.document_to_dict(DesignDocument(point_set=half_square,
                                                           orderings=[(0, 1, 3, 2)]))
    assert data["orderings"] == [[1, 2, 4, 3]]
    assert data["version"] == "1"


def test_unknown_version():
    with pytest.raises(InvalidDocument):
        documentManager.document_from_dict({"version": "2"})


@pytest.mark.parametrize("data", [
    [],
    {"version": "1", "point_set": {"points": [[0, 0, 0]]}},
    {"version": "1", "point_set": {"unit": "inch", "points": [[0, 0]]}},
    {"version": "1", "chains": [{"lengths": [1.0]}]},
    {"version": "1", "results": {"kind": "x"}},
    {"version": "1", "point_set": {"points": [[0, 0], [1, 0]]}, "orderings": [[1, 2, 3]]},
    {"version": "1", "point_set": [[0, 0], [1, 0]]},
    {"version": "1", "chains": [{"link_lengths": ["abc"]}]},
    {"version": "1", "orderings": 5},
])
def test_malformed_documents(data):
    with pytest.raises((InvalidDocument, InvalidOrdering)):
        documentManager.document_from_dict(data)


def test_arity_mismatch_between_set_and_chains():
    data = {"version": "1",
            "point_set": {"points": [[0, 0], [1, 0], [0, 1]]},
            "chains": [{"link_lengths": [1.0, 1.0]}]}
    with pytest.raises(InvalidDocument):
        documentManager.document_from_dict(data)


def test_invalid_json(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{not json", encoding="utf-8")
    with pytest.raises(InvalidDocument):
        documentManager.read_document(str(path))


def test_non_utf8_file(tmp_path):
    path = tmp_path / "latin.json"
    path.write_bytes(b"\xff\xfe{\"version\": \"1\"}")
    with pytest.raises(InvalidDocument):
        documentManager.read_document(str(path))


def test_dumps_rejects_nan():
    with pytest.raises(ValueError):
        documentManager.dumps({"value": math.nan})


def test_render_csv():
    rows = [{"ordering": "1,2", "link_lengths": [1.0, 0.5], "error": None}]
    text = documentManager.render_csv(rows, {"tol": 1e-9, "seed": 0})
    lines = text.splitlines()
    assert lines[0] == "# tol=1e-09 seed=0"
    assert lines[1] == "ordering,link_lengths,error"
    assert lines[2] == '"1,2",1.0;0.5,'


def test_render_xlsx():
    rows = [{"ordering": "1,2,3,4", "lambda": 2.0}, {"ordering": "1,2,4,3", "lambda": 2.0}]
    workbook = load_workbook(io.BytesIO(documentManager.render_xlsx(rows, {"tol": 1e-9})))
    report = workbook["Report"]
    assert [c.value for c in report[1]] == ["ordering", "lambda"]
    assert report.max_row == 3
    assert [c.value for c in workbook["Settings"][2]] == ["tol", 1e-9]


def test_write_report_formats(tmp_path):
    report = {"tolerances": {"tol": 1e-9}, "rows": 1}
    rows = [{"a": 1}]
    assert json.loads(documentManager.write_report(report, rows, "json")) == report
    assert documentManager.write_report(report, rows, "csv").startswith("# tol=1e-09\n")
    with pytest.raises(InvalidDocument):
        documentManager.write_report(report, rows, "xlsx")
    target = tmp_path / "report.xlsx"
    assert documentManager.write_report(report, rows, "xlsx", str(target)) is None
    assert target.stat().st_size > 0
    with pytest.raises(InvalidDocument):
        documentManager.write_report(report, rows, "yaml")
