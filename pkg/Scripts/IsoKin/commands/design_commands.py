"""
Point-set design commands for IsoKin.

This module contains the subcommands that build and transform point sets:
regular polygons, unions, rotations, reflections and the isotropy check.
"""
import argparse
import logging
from typing import Any, Dict

from Scripts import documentManager

from ..errors import InvalidDocument, NotAModelSet
from ..geometry import isotropy
from ..geometry.planar_geometry import DIMENSIONLESS, LENGTH, PlanarPoint
from ..kinematics.jacobian_algebra import model_matrix
from ..utils import helpers

logger = logging.getLogger("IsoKin.commands")


def tolerances(args) -> Dict[str, Any]:
    """The reproducibility header carried by every report."""
    return {
        "tol": args.tol,
        "seed": args.seed,
        "format_version": helpers.FORMAT_VERSION,
    }


def emit(args, text: str) -> None:
    """Write text to --out, or print it."""
    if args.out:
        helpers.atomic_write(args.out, text)
        logger.info(f"Wrote {args.out}")
    else:
        print(text, end="")


def emit_document(args, doc: documentManager.DesignDocument) -> None:
    if args.out:
        documentManager.write_document(args.out, doc)
    else:
        print(documentManager.dumps(documentManager.document_to_dict(doc)), end="")


def load_set(path: str):
    doc = documentManager.read_document(path)
    if doc.point_set is None:
        raise InvalidDocument(f"{path} holds no point_set")
    return doc.point_set


def setup_design_commands(subparsers, common: argparse.ArgumentParser) -> None:
    """
    Register the point-set subcommands.

    Args:
        subparsers: The subparsers action of the main parser
        common: Parent parser carrying the global flags
    """

    polygon = subparsers.add_parser(
        "polygon", parents=[common],
        help="Vertices of a regular polygon (a trivial isotropic set)")
    polygon.add_argument("--n", type=int, required=True, help="number of vertices")
    polygon.add_argument("--radius", type=float, default=1.0, help="circumradius")
    polygon.add_argument("--phase", type=helpers.parse_angle, default=0.0,
                         help="angle of the first vertex, e.g. 45deg")
    polygon.add_argument("--center", type=helpers.parse_point, default=(0.0, 0.0),
                         help="center as x,y")
    polygon.add_argument("--unit", choices=[LENGTH, DIMENSIONLESS], default=LENGTH)
    polygon.set_defaults(handler=cmd_polygon)

    union = subparsers.add_parser(
        "union", parents=[common], help="Union of two sets sharing a centroid")
    union.add_argument("first")
    union.add_argument("second")
    union.set_defaults(handler=cmd_union)

    rotate = subparsers.add_parser(
        "rotate", parents=[common], help="Rotate a set about its centroid")
    rotate.add_argument("set_file")
    rotate.add_argument("--angle", type=helpers.parse_angle, required=True)
    rotate.set_defaults(handler=cmd_rotate)

    reflect = subparsers.add_parser(
        "reflect", parents=[common],
        help="Reflect a set about an axis through its centroid")
    reflect.add_argument("set_file")
    reflect.add_argument("--axis-angle", type=helpers.parse_angle, required=True)
    reflect.set_defaults(handler=cmd_reflect)

    check = subparsers.add_parser(
        "check-iso", parents=[common], help="Check whether a set is isotropic")
    check.add_argument("set_file")
    check.set_defaults(handler=cmd_check_iso)


def cmd_polygon(args) -> int:
    center = PlanarPoint(args.center[0], args.center[1], args.unit)
    S = isotropy.regular_polygon(args.n, args.radius, args.phase, center, unit=args.unit)
    emit_document(args, documentManager.DesignDocument(point_set=S))
    return 0


def cmd_union(args) -> int:
    S = isotropy.union_sets(load_set(args.first), load_set(args.second), args.tol)
    emit_document(args, documentManager.DesignDocument(point_set=S))
    return 0


def cmd_rotate(args) -> int:
    S = isotropy.rotate_set(load_set(args.set_file), args.angle)
    emit_document(args, documentManager.DesignDocument(point_set=S))
    return 0


def cmd_reflect(args) -> int:
    S = isotropy.reflect_set(load_set(args.set_file), args.axis_angle)
    emit_document(args, documentManager.DesignDocument(point_set=S))
    return 0


def cmd_check_iso(args) -> int:
    S = load_set(args.set_file)
    report = isotropy.check_isotropic_set(S, args.tol)
    model_failures = []
    try:
        model_matrix(S, args.tol)
    except NotAModelSet as e:
        model_failures = e.failures
    data = {
        "n": S.n,
        "unit": S.unit,
        "is_isotropic": report.is_isotropic,
        "sigma_squared": report.sigma_squared,
        "deviation": report.deviation,
        "inertia_deviation": report.inertia_deviation,
        "valid_model_set": not model_failures,
        "model_set_failures": model_failures,
        "tolerances": tolerances(args),
    }
    emit(args, documentManager.dumps(data))
    return 0
