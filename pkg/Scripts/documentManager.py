import csv
import io
import json
import logging
import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

from openpyxl import Workbook

from Scripts.IsoKin.errors import InvalidDocument, IsoKinError
from Scripts.IsoKin.geometry.planar_geometry import PointSet
from Scripts.IsoKin.kinematics.chains import KinematicChain
from Scripts.IsoKin.utils.helpers import FORMAT_VERSION, UNITS, atomic_write, check_ordering

logger = logging.getLogger("IsoKin.documents")

SUPPORTED_VERSIONS = {FORMAT_VERSION}


@dataclass
class DesignDocument:
    """
    A point set with optional orderings (0-based in memory, 1-based on disk),
    chains and result records.
    """
    point_set: Optional[PointSet] = None
    orderings: List[Tuple[int, ...]] = field(default_factory=list)
    chains: List[KinematicChain] = field(default_factory=list)
    results: List[Dict[str, Any]] = field(default_factory=list)
    version: str = FORMAT_VERSION


# ========== JSON documents ==========

def document_to_dict(doc: DesignDocument) -> Dict[str, Any]:
    data: Dict[str, Any] = {"version": doc.version}
    if doc.point_set is not None:
        data["point_set"] = {
            "unit": doc.point_set.unit,
            "points": [[float(x), float(y)] for x, y in doc.point_set.coords],
        }
    if doc.orderings:
        data["orderings"] = [[i + 1 for i in o] for o in doc.orderings]
    if doc.chains:
        data["chains"] = [{"link_lengths": list(c.link_lengths)} for c in doc.chains]
    if doc.results:
        data["results"] = doc.results
    return data


def document_from_dict(data: Any) -> DesignDocument:
    if not isinstance(data, dict):
        raise InvalidDocument("a design document must be a JSON object")
    version = str(data.get("version", ""))
    if version not in SUPPORTED_VERSIONS:
        raise InvalidDocument(f"unsupported document version {version!r}")

    point_set = None
    if "point_set" in data:
        raw = data["point_set"]
        if not isinstance(raw, dict):
            raise InvalidDocument("point_set must be an object with unit and points")
        try:
            unit = raw.get("unit", "length")
            if unit not in UNITS:
                raise InvalidDocument(f"unknown unit {unit!r}")
            points = [[float(x), float(y)] for x, y in raw["points"]]
            point_set = PointSet(points, unit) if points else PointSet([], unit)
        except (KeyError, TypeError, ValueError) as e:
            if isinstance(e, IsoKinError):
                raise
            raise InvalidDocument(f"malformed point_set: {e}")

    for section in ("orderings", "chains"):
        if not isinstance(data.get(section, []), list):
            raise InvalidDocument(f"{section} must be a list")

    orderings = []
    for raw in data.get("orderings", []):
        try:
            ordering = tuple(int(i) - 1 for i in raw)
        except (TypeError, ValueError):
            raise InvalidDocument(f"malformed ordering {raw!r}")
        n = point_set.n if point_set is not None else len(ordering)
        check_ordering(ordering, n)
        orderings.append(ordering)

    chains = []
    for raw in data.get("chains", []):
        try:
            chains.append(KinematicChain(tuple(float(a) for a in raw["link_lengths"])))
        except (KeyError, TypeError, ValueError) as e:
            if isinstance(e, IsoKinError):
                raise
            raise InvalidDocument(f"malformed chain: {e}")

    results = data.get("results", [])
    if not isinstance(results, list):
        raise InvalidDocument("results must be a list")

    arities = {len(o) for o in orderings} | {c.n for c in chains if point_set is not None}
    if point_set is not None and arities - {point_set.n}:
        raise InvalidDocument(f"orderings or chains do not match the {point_set.n}-point set")

    return DesignDocument(point_set, orderings, chains, results, version)


def dumps(data: Any) -> str:
    # repr-based floats are the shortest strings that read back exactly
    return json.dumps(data, indent=2, allow_nan=False) + "\n"


def read_document(path: str) -> DesignDocument:
    with open(path, "r", encoding="utf-8") as handle:
        try:
            data = json.load(handle)
        except json.JSONDecodeError as e:
            raise InvalidDocument(f"{path} is not valid JSON: {e}")
        except UnicodeDecodeError as e:
            raise InvalidDocument(f"{path} is not UTF-8 text: {e}")
    doc = document_from_dict(data)
    logger.debug(f"Read design document {path}")
    return doc


def write_document(path: str, doc: DesignDocument) -> None:
    atomic_write(path, dumps(document_to_dict(doc)))
    logger.info(f"Design document written to {path}")


# ========== Reports ==========

def _cell(value: Any) -> Any:
    if isinstance(value, (list, tuple)):
        return ";".join(str(_cell(v)) for v in value)
    if value is None:
        return ""
    if isinstance(value, float) and not math.isfinite(value):
        return str(value)
    return value


def render_csv(rows: Sequence[Dict[str, Any]], header: Dict[str, Any]) -> str:
    """CSV text; the first line is a '#' comment carrying the settings in effect."""
    buffer = io.StringIO()
    buffer.write("# " + " ".join(f"{k}={v}" for k, v in header.items()) + "\n")
    columns = list(rows[0].keys()) if rows else []
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_cell(row.get(c)) for c in columns])
    return buffer.getvalue()


def render_xlsx(rows: Sequence[Dict[str, Any]], header: Dict[str, Any]) -> bytes:
    workbook = Workbook()
    sheet = workbook.active
    sheet.title = "Report"
    columns = list(rows[0].keys()) if rows else []
    sheet.append(columns)
    for row in rows:
        sheet.append([_cell(row.get(c)) for c in columns])

    settings = workbook.create_sheet("Settings")
    settings.append(["setting", "value"])
    for key, value in header.items():
        settings.append([key, _cell(value)])

    buffer = io.BytesIO()
    workbook.save(buffer)
    return buffer.getvalue()


def write_report(report: Dict[str, Any], rows: Sequence[Dict[str, Any]], fmt: str,
                 path: Optional[str] = None) -> Optional[str]:
    """
    Emit a report as JSON, CSV or XLSX.

    Returns the text to print when no path was given (XLSX always needs one).
    """
    header = report.get("tolerances", {})
    if fmt == "json":
        text = dumps(report)
    elif fmt == "csv":
        text = render_csv(rows, header)
    elif fmt == "xlsx":
        if not path:
            raise InvalidDocument("xlsx reports need --out")
        atomic_write(path, render_xlsx(rows, header))
        logger.info(f"Spreadsheet '{path}' has been written.")
        return None
    else:
        raise InvalidDocument(f"unknown report format {fmt!r}")

    if path:
        atomic_write(path, text)
        logger.info(f"Report written to {path}")
        return None
    return text
