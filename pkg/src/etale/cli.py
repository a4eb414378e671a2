"""Command line interface: ``etale <command> ...``.

Reports are JSON on standard output.  Exit status is 0 for PASS, 1 for FAIL
(an axiom or isomorphism failure) and 2 for ERROR (bad input, unknown
family, size cap exceeded).
"""
from __future__ import annotations

import argparse
import json
import sys

from . import serialize
from .acceptance import run_corpus
from .actions import GroupoidAction, QuantaleModule, induced_module
from .correspondences import bisections, germ_groupoid, roundtrip_gi, roundtrip_ig
from .errors import (AxiomError, InvalidParams, NotIsomorphicError, ParseError, SchemaError,
                     SizeCapExceeded, StructureError, UnknownFamily)
from .families import generate_family
from .groupoids import TopGroupoid, classify_groupoid, groupoid_isomorphic
from .limits import using_limits
from .locales import is_sober, is_spatial, order_isomorphism, spectrum
from .order import SupLattice, frame_points
from .quantales import (Quantale, is_etale_groupoid_quantale, lvee, opens_quantale,
                        quantale_isomorphism, reconstruct_groupoid, theorem_lvee_check)
from .semigroups import (InvSemigroup, is_abstract_pseudogroup, is_complete, pseudogroup_of_space,
                         semigroup_isomorphism, semigroup_of_partial_bijections, vagner_preston,
                         vagner_preston_join_status)
from .topology import FinTopSpace, homeomorphism, is_t0

ERRORS = (ParseError, SchemaError, SizeCapExceeded, UnknownFamily, InvalidParams)

KIND_OF = [(Quantale, "quantale"), (SupLattice, "frame"), (FinTopSpace, "topspace"),
           (InvSemigroup, "invsemigroup"), (TopGroupoid, "groupoid"),
           (GroupoidAction, "action"), (QuantaleModule, "module")]


class Fail(Exception):
    """A well-formed negative answer; ``witness`` goes into the report."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


def kind_of(obj) -> str:
    for cls, kind in KIND_OF:
        if isinstance(obj, cls):
            return kind
    return type(obj).__name__


def load(path, *kinds):
    obj = serialize.read(path)
    if kinds and kind_of(obj) not in kinds:
        raise SchemaError(f"{path}: expected {' or '.join(kinds)}, got {kind_of(obj)}")
    return obj


def emit(obj, args):
    """Put a constructed structure in the report or write it to ``-o``."""
    if getattr(args, "output", None):
        serialize.write(obj, args.output)
        return {"written": args.output, "kind": kind_of(obj)}
    return serialize.to_document(obj)


# -- commands ------------------------------------------------------------------

def cmd_validate(args):
    obj = load(args.file)
    return {"kind": kind_of(obj), "name": getattr(obj, "name", "") or ""}


def cmd_classify(args):
    obj = load(args.file)
    kind = kind_of(obj)
    if kind == "groupoid":
        c = classify_groupoid(obj)
        return {"kind": c.kind, "open": c.open, "etale": c.etale,
                "all_maps_open": c.all_open,
                "all_maps_local_homeomorphisms": c.all_local_homeomorphisms,
                "equivalences_agree": c.equivalences_agree,
                "maps": dict(sorted(c.per_map.items()))}
    if kind == "topspace":
        return {"t0": is_t0(obj), "sober": is_sober(obj)}
    if kind == "frame":
        ok, witness = is_spatial(obj)
        return {"spatial": ok, "witness": witness, "points": [p.id for p in frame_points(obj)]}
    if kind == "invsemigroup":
        complete, missing = is_complete(obj)
        pseudo, reason = is_abstract_pseudogroup(obj)
        return {"size": len(obj), "idempotents": len(obj.idempotent_list),
                "complete": complete, "missing_join": missing,
                "abstract_pseudogroup": pseudo, "reason": reason}
    if kind == "quantale":
        cert = is_etale_groupoid_quantale(obj)
        return {"etale_groupoid_quantale": cert.ok, "reason": cert.reason}
    return {"kind": kind, "valid": True}


def _vagner_preston(S):
    rho = vagner_preston(S)
    image = semigroup_of_partial_bijections(rho.values(), name=f"VP({S.name})" if S.name else "")
    status = vagner_preston_join_status(S, rho)
    return image, {"representation": {s: rho[s].id for s in sorted(rho)},
                   "joins_preserved": status["preserved"],
                   "joins_not_preserved": [sorted(X) for X in status["not_preserved"]]}


CONSTRUCTIONS = {
    "bisections": (("groupoid",), bisections),
    "germs": (("invsemigroup",), germ_groupoid),
    "opens": (("groupoid",), opens_quantale),
    "reconstruct": (("quantale",), reconstruct_groupoid),
    "lvee": (("invsemigroup",), lvee),
    "spectrum": (("frame",), spectrum),
    "pseudogroup": (("topspace",), pseudogroup_of_space),
    "induced-module": (("action",), induced_module),
}


def cmd_construct(args):
    if args.what == "points":
        L = load(args.file, "frame")
        pts = frame_points(L)
        return {"points": [{"id": p.id, "true_on": sorted(p.truth)} for p in pts]}
    if args.what == "vagner-preston":
        image, info = _vagner_preston(load(args.file, "invsemigroup"))
        info["image"] = emit(image, args)
        return info
    kinds, build = CONSTRUCTIONS[args.what]
    return emit(build(load(args.file, *kinds)), args)


def cmd_roundtrip(args):
    if args.which == "gi":
        try:
            iso = roundtrip_gi(load(args.file, "groupoid"))
        except NotIsomorphicError as exc:
            raise Fail(str(exc)) from exc
        return {"iso": iso.as_dict()}
    if args.which == "ig":
        try:
            iso = roundtrip_ig(load(args.file, "invsemigroup"))
        except NotIsomorphicError as exc:
            raise Fail(str(exc)) from exc
        return {"iso": dict(sorted(iso.items()))}
    if args.which == "gq":
        G = load(args.file, "groupoid")
        iso = groupoid_isomorphic(reconstruct_groupoid(opens_quantale(G)), G)
        if not iso:
            raise Fail("G(O(G)) is not isomorphic to G", iso.reason)
        return {"iso": iso.as_dict()}
    if args.which == "qg":
        cert = is_etale_groupoid_quantale(load(args.file, "quantale"))
        if not cert:
            raise Fail(cert.reason, dict(sorted(cert.iso.items())) or None)
        return {"iso": dict(sorted(cert.iso.items())), "groupoid": serialize.to_document(cert.groupoid)}
    rep = theorem_lvee_check(load(args.file, "invsemigroup"))
    return {"size": rep.size, "frame": rep.frame, "spatial": rep.spatial,
            "groupoid_iso": rep.iso.as_dict()}


def cmd_iso(args):
    a, b = load(args.first), load(args.second)
    ka, kb = kind_of(a), kind_of(b)
    if ka != kb:
        raise SchemaError(f"cannot compare {ka} with {kb}")
    if ka == "groupoid":
        iso = groupoid_isomorphic(a, b)
        if not iso:
            raise Fail("not isomorphic", iso.reason)
        return {"iso": iso.as_dict()}
    search = {"invsemigroup": semigroup_isomorphism, "quantale": quantale_isomorphism,
              "frame": order_isomorphism, "topspace": homeomorphism}.get(ka)
    if search is None:
        raise SchemaError(f"no isomorphism search for {ka}")
    f = search(a, b)
    if f is None:
        raise Fail("not isomorphic")
    return {"iso": dict(sorted(f.items()))}


def cmd_gen(args):
    params = list(args.params)
    if args.family in ("unit", "unit_groupoid"):
        if not params:
            raise InvalidParams("unit groupoid needs a space family, e.g. 'gen unit sierpinski'")
        space = generate_family(params[0], *params[1:])
        if not isinstance(space, FinTopSpace):
            raise InvalidParams(f"{params[0]} is not a space family")
        obj = generate_family(args.family, space)
    else:
        obj = generate_family(args.family, *params)
    return emit(obj, args)


def cmd_corpus(args):
    report = run_corpus()
    if report["verdict"] != "PASS":
        failed = [c["id"] for c in report["criteria"] if not c["passed"]]
        raise Fail(f"criteria failed: {failed}", report)
    return report


# -- dispatch ------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="etale", description=__doc__.splitlines()[0])
    parser.add_argument("--max-subsets", type=int, help="cap on enumerated subsets (default 16384)")
    parser.add_argument("--max-arrows", type=int, help="cap on arrows for isomorphism search (default 24)")
    parser.add_argument("--max-frame", type=int, help="cap on frame size for point enumeration (default 20)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="parse and validate a structure document")
    p.add_argument("file")
    p.set_defaults(run=cmd_validate)

    p = sub.add_parser("classify", help="classify a structure (open/etale, spatial, complete, ...)")
    p.add_argument("file")
    p.set_defaults(run=cmd_classify)

    p = sub.add_parser("construct", help="build a derived structure")
    p.add_argument("what", choices=sorted(list(CONSTRUCTIONS) + ["points", "vagner-preston"]))
    p.add_argument("file")
    p.add_argument("-o", "--output")
    p.set_defaults(run=cmd_construct)

    p = sub.add_parser("roundtrip", help="run a round trip and verify the isomorphism")
    p.add_argument("which", choices=["gi", "ig", "qg", "gq", "theorem"])
    p.add_argument("file")
    p.set_defaults(run=cmd_roundtrip)

    p = sub.add_parser("iso", help="search for an isomorphism between two structures")
    p.add_argument("first")
    p.add_argument("second")
    p.set_defaults(run=cmd_iso)

    p = sub.add_parser("gen", help="generate a structure from a named family")
    p.add_argument("family")
    p.add_argument("params", nargs="*")
    p.add_argument("-o", "--output")
    p.set_defaults(run=cmd_gen)

    p = sub.add_parser("corpus", help="run the full acceptance suite")
    p.set_defaults(run=cmd_corpus)
    return parser


def run_command(argv):
    """Return ``(report, exit_code)``."""
    args = build_parser().parse_args(argv)
    caps = {k: v for k, v in (("max_subsets", args.max_subsets), ("max_arrows", args.max_arrows),
                               ("max_frame", args.max_frame)) if v is not None}
    report = {"command": list(argv)}
    try:
        with using_limits(**caps):
            report["result"] = args.run(args)
        report["verdict"], code = "PASS", 0
    except Fail as exc:
        report.update(verdict="FAIL", reason=str(exc), witness=exc.witness)
        code = 1
    except ERRORS + (OSError,) as exc:
        report.update(verdict="ERROR", reason=f"{type(exc).__name__}: {exc}")
        code = 2
    except AxiomError as exc:
        violations = [[v.axiom, v.witness] for v in exc.report] if exc.report is not None else []
        report.update(verdict="FAIL", reason=f"AxiomError: {exc}", witness=violations)
        code = 1
    except StructureError as exc:
        report.update(verdict="FAIL", reason=f"{type(exc).__name__}: {exc}")
        code = 1
    return report, code


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    report, code = run_command(argv)
    print(json.dumps(report, sort_keys=True, indent=1, default=str))
    return code


if __name__ == "__main__":
    sys.exit(main())
