"""
Manipulator analysis commands for IsoKin.

This module contains the subcommands that turn point sets into chains and
analyse them: chain enumeration, conditioning-length reports, the
characteristic-length search and SVG posture sheets.
"""
import argparse
import logging
from typing import Any, Dict, List, Optional

from Scripts import documentManager

from ..errors import InvalidDocument, IsoKinError, NothingToRender
from ..geometry.planar_geometry import PointSet
from ..kinematics import chains as chain_ops
from ..kinematics.conditioning import (
    SearchParams, characteristic_length, optimal_lambda, placement_model_set,
)
from ..kinematics.jacobian_algebra import (
    ModelMatrix, build_jacobian, model_matrix, normalize_jacobian,
)
from ..ui.svg_render import panel_from_configuration, render_svg
from ..utils import helpers
from .design_commands import emit, load_set, tolerances

logger = logging.getLogger("IsoKin.commands")

# Matrix-valued fields stay in JSON reports only
MATRIX_FIELDS = ("jacobian", "jbar")


def setup_analysis_commands(subparsers, common: argparse.ArgumentParser, settings) -> None:
    """
    Register the chain and analysis subcommands.

    Args:
        subparsers: The subparsers action of the main parser
        common: Parent parser carrying the global flags
        settings: Loaded Settings, for defaults
    """

    chains = subparsers.add_parser(
        "chains", parents=[common],
        help="Enumerate the n! chains of a set and group them up to rotation")
    chains.add_argument("set_file")
    chains.add_argument("--cap", type=int, default=settings.enum_cap,
                        help="largest n to enumerate")
    chains.set_defaults(handler=cmd_chains)

    analyze = subparsers.add_parser(
        "analyze", parents=[common],
        help="Jacobian, conditioning length and residual of chains of a set")
    analyze.add_argument("set_file")
    analyze.add_argument("--ordering", help="1-based ordering, e.g. 1,2,3,4")
    analyze.add_argument("--posture", type=helpers.parse_angles,
                         help="joint angles, e.g. 180deg,90deg,90deg,135deg")
    analyze.add_argument("--all-orderings", action="store_true",
                         help="analyse every ordering at its isotropic placement")
    analyze.add_argument("--cap", type=int, default=settings.enum_cap)
    _add_model_flags(analyze)
    analyze.set_defaults(handler=cmd_analyze)

    charlen = subparsers.add_parser(
        "charlen", parents=[common],
        help="Characteristic length: conditioning length at the posture closest to isotropy")
    charlen.add_argument("input_file", help="design document with a point_set or chains")
    charlen.add_argument("--ordering", help="1-based ordering of the point set")
    charlen.add_argument("--chain-index", type=int, default=1,
                         help="1-based chain of the document to use when no ordering is given")
    charlen.add_argument("--starts-per-dim", type=int, default=3)
    charlen.add_argument("--max-starts", type=int, default=243)
    charlen.add_argument("--gradient-tol", type=float, default=1e-6)
    charlen.add_argument("--max-evals", type=int, default=10_000)
    charlen.add_argument("--randomized", action="store_true",
                         help="random starts drawn with --seed instead of a grid")
    charlen.add_argument("--permute-columns", action="store_true",
                         help="also search over every column order of K")
    charlen.add_argument("--cap", type=int, default=settings.enum_cap,
                         help="largest n whose column orders may be permuted")
    _add_model_flags(charlen)
    charlen.set_defaults(handler=cmd_charlen)

    render = subparsers.add_parser(
        "render", parents=[common], help="SVG sheet of chain postures")
    render.add_argument("input_file")
    render.add_argument("--ordering", action="append", default=[],
                        help="1-based ordering to draw at its isotropic placement (repeatable)")
    render.add_argument("--classes", action="store_true",
                        help="draw one representative per rotation class")
    render.add_argument("--columns", type=int, default=None)
    render.add_argument("--cap", type=int, default=settings.enum_cap)
    render.set_defaults(handler=cmd_render)


def _add_model_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--model", help="design document holding the dimensionless model set")
    parser.add_argument("--unchecked-model", action="store_true",
                        help="accept a model set that is not isotropic or not scaled to k^2 = n")


def _explicit_model(args) -> Optional[ModelMatrix]:
    if not args.model:
        return None
    return model_matrix(load_set(args.model), args.tol, strict=not args.unchecked_model)


def _placement_model(args, S: PointSet, ordering) -> ModelMatrix:
    return model_matrix(placement_model_set(S, ordering), args.tol,
                        strict=not args.unchecked_model)


def _table_rows(rows: List[Dict[str, Any]]) -> List[Dict[str, Any]]:
    return [{k: v for k, v in row.items() if k not in MATRIX_FIELDS} for row in rows]


def _report(args, report: Dict[str, Any], rows: List[Dict[str, Any]]) -> None:
    text = documentManager.write_report(report, _table_rows(rows), args.format, args.out)
    if text is not None:
        print(text, end="")


# ========== chains ==========

def cmd_chains(args) -> int:
    S = load_set(args.set_file)
    enumerated = chain_ops.enumerate_chains(S, cap=args.cap)
    classes = chain_ops.dedup_orderings(S, [o for o, _ in enumerated], args.tol)
    class_of = {m: index + 1 for index, cls in enumerate(classes) for m in cls.members}

    rows = [{
        "ordering": helpers.format_ordering(ordering),
        "class": class_of[ordering],
        "representative": ordering == classes[class_of[ordering] - 1].representative,
        "link_lengths": list(chain.link_lengths),
    } for ordering, chain in enumerated]
    report = {
        "version": helpers.FORMAT_VERSION,
        "n": S.n,
        "chain_count": len(enumerated),
        "class_count": len(classes),
        "classes": [{"representative": helpers.format_ordering(c.representative),
                     "size": c.size,
                     "members": [helpers.format_ordering(m) for m in c.members]}
                    for c in classes],
        "chains": rows,
        "tolerances": tolerances(args),
    }
    logger.info(f"{len(enumerated)} chains in {len(classes)} rotation classes")
    _report(args, report, rows)
    return 0


# ========== analyze ==========

def _analysis_row(S: PointSet, ordering, posture_angles, model: Optional[ModelMatrix],
                  args) -> Dict[str, Any]:
    chain = chain_ops.chain_from_ordering(S, ordering)
    if posture_angles is None:
        posture = chain_ops.posture_from_placement(S, ordering)
    else:
        posture = chain_ops.Posture(posture_angles)
    config = chain_ops.forward_kinematics(chain, posture, base=S.coords[ordering[0]])
    K = model if model is not None else _placement_model(args, S, ordering)

    result = optimal_lambda(config, K)
    J = build_jacobian(config)
    Jbar = normalize_jacobian(J, result.conditioning_length)
    return {
        "ordering": helpers.format_ordering(ordering),
        "link_lengths": list(chain.link_lengths),
        "posture": list(posture.joint_angles),
        "lambda": result.lambda_,
        "conditioning_length": result.conditioning_length,
        "residual_distance": result.residual_distance,
        "objective_z": result.objective_z,
        "kappa_spectral": result.kappa_spectral,
        "jacobian": J.entries.tolist(),
        "jbar": Jbar.entries.tolist(),
    }


def cmd_analyze(args) -> int:
    S = load_set(args.set_file)
    model = _explicit_model(args)

    if args.all_orderings:
        enumerated = chain_ops.enumerate_chains(S, cap=args.cap)
        classes = chain_ops.dedup_orderings(S, [o for o, _ in enumerated], args.tol)
        class_of = {m: index + 1 for index, cls in enumerate(classes) for m in cls.members}
        rows = []
        for ordering, _ in enumerated:
            try:
                row = _analysis_row(S, ordering, None, model, args)
                row["error"] = None
            except IsoKinError as e:
                row = {"ordering": helpers.format_ordering(ordering), "error": e.name}
            row["class"] = class_of[ordering]
            rows.append(row)
        orderings = [o for o, _ in enumerated]
    else:
        ordering = helpers.parse_ordering(args.ordering, S.n) if args.ordering else tuple(range(S.n))
        rows = [_analysis_row(S, ordering, args.posture, model, args)]
        orderings = [ordering]

    report = documentManager.document_to_dict(
        documentManager.DesignDocument(point_set=S, orderings=orderings))
    report["results"] = [dict(row, kind="conditioning") for row in rows]
    report["tolerances"] = tolerances(args)
    _report(args, report, rows)
    return 0


# ========== charlen ==========

def _search_params(args) -> SearchParams:
    return SearchParams(
        starts_per_dim=args.starts_per_dim,
        max_starts=args.max_starts,
        gradient_tol=args.gradient_tol,
        max_evaluations=args.max_evals,
        randomized=args.randomized,
        seed=args.seed,
        permute_columns=args.permute_columns,
        column_cap=args.cap,
    )


def cmd_charlen(args) -> int:
    doc = documentManager.read_document(args.input_file)
    model = _explicit_model(args)

    if doc.point_set is not None and (args.ordering or not doc.chains):
        S = doc.point_set
        ordering = helpers.parse_ordering(args.ordering, S.n) if args.ordering else tuple(range(S.n))
        chain = chain_ops.chain_from_ordering(S, ordering)
        if model is None:
            model = _placement_model(args, S, ordering)
    elif doc.chains:
        if not 1 <= args.chain_index <= len(doc.chains):
            raise InvalidDocument(f"chain {args.chain_index} not in 1..{len(doc.chains)}")
        chain = doc.chains[args.chain_index - 1]
        if model is None:
            raise InvalidDocument("a chain document needs --model")
    else:
        raise InvalidDocument(f"{args.input_file} holds neither a point_set nor chains")

    result = characteristic_length(chain, model, _search_params(args))
    record = {
        "kind": "characteristic_length",
        "chain_index": 1,
        "characteristic_length": result.characteristic_length,
        "best_posture": list(result.best_posture.joint_angles),
        "best_distance": result.best_distance,
        "converged": result.converged,
        "attains_isotropy": result.attains_isotropy,
        "starts_used": result.starts_used,
        "evaluations": result.evaluations,
        "column_order": [i + 1 for i in result.column_order],
        "lambda": result.conditioning.lambda_,
        "kappa_spectral": result.conditioning.kappa_spectral,
    }
    report = documentManager.document_to_dict(documentManager.DesignDocument(chains=[chain]))
    report["results"] = [record]
    report["tolerances"] = dict(tolerances(args), gradient_tol=args.gradient_tol)
    _report(args, report, [{k: v for k, v in record.items() if k != "kind"}])
    return 0


# ========== render ==========

def cmd_render(args) -> int:
    doc = documentManager.read_document(args.input_file)
    panels = []

    if doc.point_set is not None:
        S = doc.point_set
        centroid = S.coords.mean(axis=0)
        if args.ordering:
            orderings = [helpers.parse_ordering(o, S.n) for o in args.ordering]
        elif args.classes:
            every = [o for o, _ in chain_ops.enumerate_chains(S, cap=args.cap)]
            orderings = [c.representative for c in chain_ops.dedup_orderings(S, every, args.tol)]
        else:
            orderings = doc.orderings
        for ordering in orderings:
            _, _, config = chain_ops.placement(S, ordering)
            panels.append(panel_from_configuration(
                config, helpers.format_ordering(ordering).replace(",", "-"), centroid))

    if not panels:
        for index, record in enumerate(doc.results):
            if "best_posture" not in record:
                continue
            chain = doc.chains[int(record.get("chain_index", index + 1)) - 1]
            config = chain_ops.forward_kinematics(chain, chain_ops.Posture(record["best_posture"]))
            title = f"chain {index + 1}, L = {record['characteristic_length']:.4g}"
            panels.append(panel_from_configuration(config, title))

    if not panels:
        raise NothingToRender(f"{args.input_file}: nothing selected to render")
    emit(args, render_svg(panels, args.columns))
    logger.info(f"Rendered {len(panels)} panels")
    return 0
