"""Command-line surface for scripted verification runs.

Subcommands: ``validate``, ``angles``, ``rigidity``, ``deform``,
``holonomy``, ``tracerank``.  Every run prints one deterministic JSON report
(floats at 17 significant digits, fixed key order) in which each numeric
verdict carries the tolerance it was judged against.

Exit codes: 0 success, 1 a check failed, 2 unreadable or invalid input,
3 no convergence, 4 convexity lost, 5 ball exit.  The environment variable
``STOKERLAB_TOL_SCALE`` multiplies every tolerance (default 1); randomness
enters only through the explicit ``--seed`` flag (NumPy PCG64).
"""

import argparse
import os
import sys

import numpy as np

from . import deform, formats, polyhedron, repvar, rigidity
from .config import DEFAULT, Tolerances
from .errors import (
    BallExit,
    ConvexityLost,
    NoConvergence,
    ParseError,
    StokerlabError,
)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_BAD_INPUT = 2
EXIT_NO_CONVERGENCE = 3
EXIT_CONVEXITY_LOST = 4
EXIT_BALL_EXIT = 5


def _tolerances():
    raw = os.environ.get("STOKERLAB_TOL_SCALE", "1")
    try:
        factor = float(raw)
    except ValueError:
        raise ParseError(f"STOKERLAB_TOL_SCALE={raw!r} is not a number")
    return DEFAULT.scaled(factor), factor


def _base_report(command, paths, config):
    return {
        "command": command,
        "inputs": [{"path": p, "sha256": formats.sha256_of_file(p)} for p in paths],
        "config": config,
        "results": {},
        "verdicts": [],
    }


def _verdict(report, name, passed, tolerance, value):
    report["verdicts"].append(
        {"name": name, "pass": bool(passed), "tolerance": float(tolerance), "value": value}
    )
    return passed


def cmd_validate(args, tol: Tolerances, config):
    poly = formats.load_polyhedron(args.path)
    report = _base_report("validate", [args.path], config)
    comb_report = polyhedron.validate_combinatorics(poly.combinatorics)
    report["results"]["counts"] = {
        "vertices": comb_report.vertex_count,
        "edges": comb_report.edge_count,
        "faces": comb_report.face_count,
        "euler_characteristic": comb_report.euler_characteristic,
    }
    report["results"]["combinatorics_issues"] = comb_report.issues
    ok = _verdict(report, "combinatorics_valid", comb_report.valid, 0.0,
                  len(comb_report.issues))
    if comb_report.valid:
        emb = polyhedron.validate_embedding(poly, tol)
        report["results"]["embedding"] = {
            "max_radius": emb.max_radius,
            "max_planarity_residual": emb.max_planarity_residual,
            "min_convexity_margin": emb.min_convexity_margin,
            "issues": emb.issues,
        }
        ok = _verdict(report, "embedding_planar", emb.max_planarity_residual <= tol.planar,
                      tol.planar, emb.max_planarity_residual) and ok
        ok = _verdict(report, "embedding_convex", emb.min_convexity_margin > tol.convex,
                      tol.convex, emb.min_convexity_margin) and ok
        ok = _verdict(report, "embedding_in_ball", emb.max_radius < 1.0 - tol.ball,
                      tol.ball, emb.max_radius) and ok
    return report, EXIT_OK if ok else EXIT_CHECK_FAILED


def _load_valid_polyhedron(path, tol):
    poly = formats.load_polyhedron(path)
    comb_report = polyhedron.validate_combinatorics(poly.combinatorics)
    if not comb_report.valid:
        raise ParseError(f"{path}: invalid combinatorics: " + "; ".join(comb_report.issues))
    return poly


def cmd_angles(args, tol: Tolerances, config):
    poly = _load_valid_polyhedron(args.path, tol)
    report = _base_report("angles", [args.path], config)
    angles = polyhedron.dihedral_angles(poly, tol)
    report["results"]["edges"] = [list(e) for e in poly.combinatorics.edges]
    report["results"]["angles"] = [float(a) for a in angles]
    ok = _verdict(report, "angles_in_range",
                  bool(np.all(angles > 0.0) and np.all(angles < np.pi)),
                  0.0, float(angles.min()))
    return report, EXIT_OK if ok else EXIT_CHECK_FAILED


def cmd_rigidity(args, tol: Tolerances, config):
    poly = _load_valid_polyhedron(args.path, tol)
    report = _base_report("rigidity", [args.path], config)
    rep = rigidity.rigidity_report(poly, tol)
    lead, trail = rep.spectral_gap
    report["results"]["rigidity"] = {
        "edge_count": rep.edge_count,
        "tangent_dim": rep.tangent_dim,
        "angle_rank": rep.angle_rank,
        "kernel_dim": rep.kernel_dim,
        "isometry_containment_residual": rep.isometry_containment_residual,
        "singular_values": [float(s) for s in rep.singular_values],
        "spectral_gap_lead": lead,
        "spectral_gap_trail": trail,
        "notes": rep.notes,
    }
    _verdict(report, "tangent_dim", rep.tangent_dim == rep.edge_count + 6, 0.0, rep.tangent_dim)
    _verdict(report, "angle_rank", rep.angle_rank == rep.edge_count, 0.0, rep.angle_rank)
    _verdict(report, "kernel_dim", rep.kernel_dim == 6, 0.0, rep.kernel_dim)
    _verdict(report, "kernel_matches_isometries",
             rep.isometry_containment_residual < tol.principal_angle,
             tol.principal_angle, rep.isometry_containment_residual)
    _verdict(report, "certified", rep.certified, 0.0, int(rep.certified))
    return report, EXIT_OK if rep.certified else EXIT_CHECK_FAILED


def cmd_deform(args, tol: Tolerances, config):
    poly = _load_valid_polyhedron(args.path, tol)
    comb = poly.combinatorics
    paths = [args.path] + ([args.target] if args.target else [])
    report = _base_report("deform", paths, config)
    current = polyhedron.dihedral_angles(poly, tol)
    if args.target:
        target = formats.load_angles(args.target, comb.edge_count)
    else:
        rng = np.random.default_rng(args.seed)
        target = current + args.perturb * rng.uniform(-1.0, 1.0, comb.edge_count)
    try:
        target = polyhedron.validate_angle_vector(target, comb.edge_count)
    except ValueError as exc:
        raise ParseError(f"infeasible target angles: {exc}") from exc

    opts = deform.DeformOptions(continuation_steps=args.steps)
    report["results"]["target"] = [float(a) for a in target]
    try:
        results = deform.continuation_path(poly, target, args.steps, opts, tol)
    except (NoConvergence, ConvexityLost, BallExit) as exc:
        report["results"]["error"] = type(exc).__name__
        report["results"]["failed_waypoint"] = exc.waypoint
        report["results"]["completed_waypoints"] = len(exc.results)
        _verdict(report, "deform_converged", False, opts.residual_tol, str(exc))
        code = {NoConvergence: EXIT_NO_CONVERGENCE, ConvexityLost: EXIT_CONVEXITY_LOST,
                BallExit: EXIT_BALL_EXIT}[type(exc)]
        return report, code

    final = results[-1]
    achieved = final.achieved_angles
    err = float(np.max(np.abs(achieved - target)))
    planar = polyhedron.planarity_residuals(final.final)
    max_planar = float(np.max(np.abs(planar))) if planar.size else 0.0
    margins = polyhedron.convexity_margins(final.final)
    report["results"]["iterations"] = [r.iterations_used for r in results]
    report["results"]["residual_history"] = [
        [float(v) for v in r.residual_history] for r in results
    ]
    report["results"]["achieved_angles"] = [float(a) for a in achieved]
    report["results"]["gauge"] = final.gauge
    report["results"]["final_polyhedron"] = formats.polyhedron_to_dict(final.final)
    _verdict(report, "angles_achieved", err <= 10 * opts.residual_tol,
             10 * opts.residual_tol, err)
    _verdict(report, "planarity_preserved", max_planar <= 10 * opts.residual_tol,
             10 * opts.residual_tol, max_planar)
    _verdict(report, "convexity_preserved", bool(margins.min() > 0.0), 0.0,
             float(margins.min()))
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(formats.dump_polyhedron(final.final))
    ok = all(v["pass"] for v in report["verdicts"])
    return report, EXIT_OK if ok else EXIT_CHECK_FAILED


def cmd_holonomy(args, tol: Tolerances, config):
    poly = _load_valid_polyhedron(args.path, tol)
    comb = poly.combinatorics
    report = _base_report("holonomy", [args.path], config)
    angles = polyhedron.dihedral_angles(poly, tol)
    edge_rows = []
    worst_trace = 0.0
    for k, e in enumerate(comb.edges):
        _, lift = repvar.meridian_holonomy(poly, e, tol)
        defect = abs(abs(np.trace(lift).real) - 2.0 * abs(np.cos(angles[k])))
        worst_trace = max(worst_trace, float(defect))
        edge_rows.append({
            "edge": list(e),
            "angle": float(angles[k]),
            "lift_trace_abs": float(abs(np.trace(lift))),
            "trace_identity_defect": float(defect),
        })
    vertex_rows = []
    worst_relation = 0.0
    all_irreducible = True
    for v in range(comb.vertex_count):
        link = repvar.link_representation(poly, v, tol)
        residual = link.relation_residual()
        worst_relation = max(worst_relation, residual)
        irr = repvar.irreducibility_check(link.representation(), tol)
        all_irreducible = all_irreducible and irr.irreducible
        vertex_rows.append({
            "vertex": v,
            "valence": len(link.edges),
            "relation_residual": residual,
            "irreducible": irr.irreducible,
            "irreducibility_residual": irr.residual,
        })
    report["results"]["edges"] = edge_rows
    report["results"]["vertices"] = vertex_rows
    ok = _verdict(report, "trace_identities", worst_trace < tol.trace_identity,
                  tol.trace_identity, worst_trace)
    ok = _verdict(report, "vertex_relations", worst_relation < tol.relator,
                  tol.relator, worst_relation) and ok
    ok = _verdict(report, "links_irreducible", all_irreducible, tol.irreducible,
                  int(all_irreducible)) and ok
    return report, EXIT_OK if ok else EXIT_CHECK_FAILED


def cmd_tracerank(args, tol: Tolerances, config):
    pres, loops = formats.load_presentation(args.presentation)
    paths = [args.presentation]
    expected = None
    if args.fixture_vertex:
        try:
            poly_path, vertex_text = args.fixture_vertex.rsplit(":", 1)
            vertex = int(vertex_text)
        except ValueError:
            raise ParseError("--fixture-vertex expects POLYHEDRON.json:VERTEX")
        paths.append(poly_path)
        poly = _load_valid_polyhedron(poly_path, tol)
        link = repvar.link_representation(poly, vertex, tol)
        rep = link.representation()
        d = len(link.edges)
        expected = {
            "valence": d,
            "h1_dim": 3 * d - 6 if args.unitary else 6 * d - 12,
            "rank": d if args.unitary else 2 * d,
        }
        if pres.generator_count != d:
            raise ParseError(
                f"presentation has {pres.generator_count} generators, link has {d}"
            )
    else:
        paths.append(args.matrices)
        rep = formats.load_matrices(args.matrices)
        if rep.generator_count != pres.generator_count:
            raise ParseError(
                f"presentation has {pres.generator_count} generators, "
                f"matrix file has {rep.generator_count}"
            )
    report = _base_report("tracerank", paths, config)
    det_defect, relator_data = repvar.representation_report(rep, pres, tol)
    if not loops:
        loops = [(g,) for g in range(1, pres.generator_count + 1)]
    rank_report = repvar.trace_rank(rep, pres, loops, args.unitary, tol)
    report["results"]["representation"] = {
        "det_defect": det_defect,
        "relator_residuals": [r for _, r in relator_data],
        "relator_signs": [s for s, _ in relator_data],
    }
    report["results"]["trace_rank"] = {
        "algebra": rank_report.algebra,
        "z1_dim": rank_report.z1_dim,
        "b1_dim": rank_report.b1_dim,
        "h1_dim": rank_report.h1_dim,
        "loop_count": rank_report.loop_count,
        "rank": rank_report.rank,
        "singular_values": [float(s) for s in rank_report.singular_values],
        "gap_ratio": rank_report.gap_ratio,
    }
    worst_rel = max((r for _, r in relator_data), default=0.0)
    ok = _verdict(report, "relators_hold", worst_rel < tol.relator, tol.relator, worst_rel)
    if expected is not None:
        report["results"]["expected"] = expected
        ok = _verdict(report, "h1_dim_expected", rank_report.h1_dim == expected["h1_dim"],
                      0.0, rank_report.h1_dim) and ok
        ok = _verdict(report, "rank_expected", rank_report.rank == expected["rank"],
                      0.0, rank_report.rank) and ok
    return report, EXIT_OK if ok else EXIT_CHECK_FAILED


def build_parser():
    parser = argparse.ArgumentParser(
        prog="stokerlab",
        description="Rigidity, deformation and holonomy checks for convex "
                    "hyperbolic polyhedra in the Klein ball.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="validate a polyhedron JSON file")
    p.add_argument("path")
    p = sub.add_parser("angles", help="dihedral angle table per edge")
    p.add_argument("path")
    p = sub.add_parser("rigidity", help="certify the angle-parameterization ranks")
    p.add_argument("path")

    p = sub.add_parser("deform", help="deform to a target angle vector")
    p.add_argument("path")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--target", help="JSON file with the target angles")
    group.add_argument("--perturb", type=float,
                       help="uniform perturbation amplitude applied to current angles")
    p.add_argument("--seed", type=int, default=0, help="seed for --perturb")
    p.add_argument("--steps", type=int, default=1, help="continuation waypoints")
    p.add_argument("--out", help="write the final polyhedron JSON here")

    p = sub.add_parser("holonomy", help="meridian traces, vertex relations, link checks")
    p.add_argument("path")

    p = sub.add_parser("tracerank", help="cocycle/trace-coordinate rank report")
    p.add_argument("presentation", help="presentation text file")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--fixture-vertex", help="POLYHEDRON.json:VERTEX link source")
    group.add_argument("--matrices", help="matrix JSON file source")
    p.add_argument("--unitary", action="store_true",
                   help="restrict to unitary deformations (su(2)-valued)")
    return parser


_COMMANDS = {
    "validate": cmd_validate,
    "angles": cmd_angles,
    "rigidity": cmd_rigidity,
    "deform": cmd_deform,
    "holonomy": cmd_holonomy,
    "tracerank": cmd_tracerank,
}


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        tol, factor = _tolerances()
        config = {"tol_scale": factor}
        for key in ("seed", "perturb", "steps", "unitary"):
            if hasattr(args, key) and getattr(args, key) is not None:
                config[key] = getattr(args, key)
        report, code = _COMMANDS[args.command](args, tol, config)
    except ParseError as exc:
        sys.stdout.write(formats.to_json({
            "command": args.command,
            "error": "ParseError",
            "message": str(exc),
            "line": exc.line,
            "column": exc.column,
        }) + "\n")
        return EXIT_BAD_INPUT
    except StokerlabError as exc:
        sys.stdout.write(formats.to_json({
            "command": args.command,
            "error": type(exc).__name__,
            "message": str(exc),
        }) + "\n")
        return EXIT_CHECK_FAILED
    sys.stdout.write(formats.to_json(report) + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
