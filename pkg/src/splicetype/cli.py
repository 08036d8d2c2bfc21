"""Command line front end.

JSON goes to stdout, log messages to stderr.  Exit status: 0 on success,
1 when the input is rejected or a check fails, 2 on usage errors.
"""
import argparse
import json
import logging
import sys
from fractions import Fraction

from .deform import (EnrichmentError, adapted_triple, deformed_from_dict, edge_deformation,
                     enrich, extended_weight_vector, ratio_interval, side_systems)
from .diagram import (DiagramError, linking_matrix, node_degree, parse_diagram, seifert_data)
from .polysys import (HammError, SpliceSystemError, hamm_check, homogeneous_degree,
                      initial_system, node_weight_vector, strict_splice_system, system_from_dict)
from .semigroup import validate_diagram
from .tropfan import (MonoidPresentation, deformation_fan, dual_complex, rounding_fiber_group,
                      surface_trop_fan)

log = logging.getLogger("splicetype")


class Failure(Exception):
    """Domain failure: reported as JSON with exit status 1."""


def _read(path):
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise Failure(f"cannot read {path}: {exc.strerror}") from None


def _load_diagram(path, check=True):
    return parse_diagram(_read(path), check=check)


def _emit(payload):
    sys.stdout.write(json.dumps(payload, indent=2) + "\n")


def _load_coefficients(path):
    if path is None:
        return None
    doc = json.loads(_read(path))
    return {v: [[Fraction(str(x)) for x in row] for row in rows] for v, rows in doc.items()}


def _edge(text, d):
    parts = text.split(",")
    if len(parts) != 2:
        raise Failure(f"--edge expects 'a,b', got {text!r}")
    return tuple(p.strip() for p in parts)


def _first_internal_edge(d):
    edges = d.internal_edges()
    if not edges:
        raise Failure("diagram has no internal edge")
    return edges[0]


def _rational_vector(text):
    try:
        return [Fraction(x.strip()) for x in text.split(",")]
    except ValueError:
        raise Failure(f"bad weight vector {text!r}") from None


# -- commands -----------------------------------------------------------------


def cmd_validate(args):
    d = _load_diagram(args.path, check=False)
    report = validate_diagram(d)
    _emit(report.to_dict())
    return 0 if report.ok else 1


def cmd_analyze(args):
    d = _load_diagram(args.path)
    nodes = []
    for v in d.nodes:
        nodes.append({"node": v, "degree": node_degree(d, v),
                      "weight_vector": list(node_weight_vector(d, v)),
                      "seifert_data": seifert_data(d, v)})
    payload = {"leaf_order": list(d.leaf_order), "nodes": nodes,
               "linking": linking_matrix(d)}
    if len(d.vertices) == 1:
        payload["linking"] = {}
    _emit(payload)
    return 0


def _build_system(args):
    d = _load_diagram(args.path)
    return strict_splice_system(d, _load_coefficients(args.coeffs), seed=args.seed)


def cmd_gen_system(args):
    _emit(_build_system(args).to_dict())
    return 0


def _enrichment(args, d):
    edge = _edge(args.edge, d) if args.edge else _first_internal_edge(d)
    policy = "explicit" if args.policy == "explicit" else "min-denominator"
    if policy == "min-denominator" and (args.ka is not None or args.kb is not None):
        raise Failure("--ka/--kb need --policy explicit")
    triple = adapted_triple(d, edge, policy, args.ka, args.kb, args.D)
    return enrich(d, edge, triple)


def cmd_deform(args):
    system = _build_system(args)
    ed = _enrichment(args, system.diagram)
    c = None
    if args.c:
        doc = json.loads(_read(args.c))
        c = {(item["node"], int(item["index"])): Fraction(str(item["c"])) for item in doc}
    ds = edge_deformation(system, ed, c)
    payload = ds.to_dict()
    lo, hi = ratio_interval(system.diagram, ed.edge)
    payload.update({"ka": ed.ka, "kb": ed.kb, "D": ed.D,
                    "interval": [str(lo), str(hi)]})
    left, right = side_systems(ds)
    payload["sides"] = {"a": list(left), "b": list(right)}
    _emit(payload)
    return 0


def cmd_trop_fan(args):
    d = _load_diagram(args.path)
    if args.deformation:
        ed = _enrichment(args, d)
        fan = deformation_fan(ed)
        dual = dual_complex(ed)
        if args.format == "dot":
            sys.stdout.write(dual.to_dot())
            return 0
        payload = fan.to_dict()
        payload["dual_complex"] = dual.to_dict()
        payload["extended_weights"] = {u: list(extended_weight_vector(ed, u))
                                       for u in ed.tilde.nodes}
        _emit(payload)
        return 0
    fan = surface_trop_fan(d)
    if args.format == "dot":
        sys.stdout.write(fan.to_dot())
        return 0
    _emit(fan.to_dict())
    return 0


def _load_system(path):
    doc = json.loads(_read(path))
    if doc.get("kind") == "deformed_system":
        return deformed_from_dict(doc)
    return system_from_dict(doc)


def _node_weight(system, v):
    if hasattr(system, "enriched"):
        return extended_weight_vector(system.enriched, v)
    return node_weight_vector(system.diagram, v)


def cmd_check(args):
    system = _load_system(args.path)
    payload = {}
    ok = True
    if args.homogeneity:
        degrees = {}
        for v, fs in system.equations.items():
            w = _node_weight(system, v)
            vals = {homogeneous_degree(f, w) for f in fs}
            deg = vals.pop() if len(vals) == 1 else None
            degrees[v] = deg
            ok &= deg is not None
        payload["homogeneity"] = degrees
    if args.hamm:
        matrices = system.base.matrices if hasattr(system, "base") else system.matrices
        verdicts = {}
        for v, mat in matrices.items():
            verdict = hamm_check(mat)
            verdicts[v] = {"ok": verdict.ok,
                           "failing_columns": list(verdict.failing_columns or [])}
            ok &= verdict.ok
        payload["hamm"] = verdicts
    if args.initial:
        if args.weight is None:
            raise Failure("--initial needs --weight")
        w = _rational_vector(args.weight)
        res = initial_system(system, w)
        names = list(system.variables)
        payload["initial"] = {"weight": [str(x) for x in w],
                              "forms": [f.format(names) for f in res.forms],
                              "generators_monomial_free": res.generators_monomial_free}
    _emit(payload)
    return 0 if ok else 1


def _parse_relations(text):
    rows = []
    for chunk in (text or "").split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        try:
            rows.append([int(x) for x in chunk.split(",")])
        except ValueError:
            raise Failure(f"bad relation {chunk!r}") from None
    return rows


def cmd_round_fiber(args):
    result = rounding_fiber_group(MonoidPresentation(args.generators,
                                                     _parse_relations(args.relations)))
    _emit(result.to_dict())
    return 0


# -- wiring -------------------------------------------------------------------


def _add_enrichment_flags(p):
    p.add_argument("--edge", help="internal edge as 'a,b' (default: first internal edge)")
    p.add_argument("--ka", type=int)
    p.add_argument("--kb", type=int)
    p.add_argument("--D", type=int, dest="D")
    p.add_argument("--policy", choices=["min", "explicit"], default="min")


def _add_system_flags(p):
    p.add_argument("--seed", type=int, default=0,
                   help="offset of the Vandermonde parameters (default 0)")
    p.add_argument("--coeffs", help="JSON file mapping node -> coefficient matrix")


def build_parser():
    parser = argparse.ArgumentParser(prog="splicetype", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="structural, determinant and semigroup checks")
    p.add_argument("path")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("analyze", help="degrees, linking numbers, weights, Seifert data")
    p.add_argument("path")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("gen-system", help="strict splice type system")
    p.add_argument("path")
    _add_system_flags(p)
    p.set_defaults(func=cmd_gen_system)

    p = sub.add_parser("deform", help="edge deformation of the splice type system")
    p.add_argument("path")
    _add_system_flags(p)
    _add_enrichment_flags(p)
    p.add_argument("--c", help="JSON list of {node, index, c} deformation coefficients")
    p.set_defaults(func=cmd_deform)

    p = sub.add_parser("trop-fan", help="tropicalizing fan of the surface or its deformation")
    p.add_argument("path")
    kind = p.add_mutually_exclusive_group()
    kind.add_argument("--surface", action="store_true", default=True)
    kind.add_argument("--deformation", action="store_true")
    p.add_argument("--format", choices=["json", "dot"], default="json")
    _add_enrichment_flags(p)
    p.set_defaults(func=cmd_trop_fan)

    p = sub.add_parser("check", help="homogeneity, Hamm and initial-form checks on a system file")
    p.add_argument("path")
    p.add_argument("--homogeneity", action="store_true")
    p.add_argument("--hamm", action="store_true")
    p.add_argument("--initial", action="store_true")
    p.add_argument("--weight", help="comma separated rational weight vector")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("round-fiber", help="rounding fibre group from a monoid presentation")
    p.add_argument("--generators", type=int, required=True)
    p.add_argument("--relations", default="",
                   help="relations as 'a,b,...;c,d,...' (rows of the relation matrix)")
    p.set_defaults(func=cmd_round_fiber)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        stream=sys.stderr, format="%(levelname)s: %(message)s")
    if args.command == "check" and not (args.homogeneity or args.hamm or args.initial):
        parser.error("check needs at least one of --homogeneity, --hamm, --initial")
    try:
        return args.func(args)
    except (Failure, DiagramError, EnrichmentError, HammError, SpliceSystemError,
            ValueError) as exc:
        log.error("%s", exc)
        _emit({"error": str(exc), "type": type(exc).__name__})
        return 1


if __name__ == "__main__":
    sys.exit(main())
