"""Command-line front end.

Exit codes: 0 colorable or property holds, 2 not colorable or a valid
obstruction, 3 verification failed, 1 usage or input error.  Every command
prints one JSON document with sorted keys.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from .canvas import Subgraph, make_lists, validate_canvas
from .decide import Colorable, certify_by_governments, decide_with_certificate
from .errors import HarmonicaError, HypothesesViolated, InvalidCanvas, ConsistencyViolation
from .generators import PROFILES, random_canvas
from .governments import classify, find_confederacy, find_government
from .harmonicas import HarmonicaCertificate, verify_coloring_harmonica
from .plane_graph import PlaneGraph
from .reductions import democratic_reduction
from .solver import EdgeColoringSet, extension_set, is_proper_coloring
from .suite import run_property_suite

OK, OBSTRUCTED, BROKEN, USAGE = 0, 2, 3, 1


class _InputError(Exception):
    pass


def _ids(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from exc


def _load(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise _InputError(f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise _InputError(f"malformed JSON in {path}: {exc}") from exc


def _graph_and_lists(data: dict, palette: int | None):
    if "lists" not in data:
        raise _InputError("input has no \"lists\"")
    G = PlaneGraph.from_json(data)
    lists = make_lists({int(k): v for k, v in data["lists"].items()})
    missing = [v for v in G.vertices if v not in lists]
    if missing:
        raise _InputError(f"no list for vertices {missing}")
    if palette is not None:
        bad = sorted(v for v in G.vertices if any(not 1 <= c <= palette for c in lists[v]))
        if bad:
            raise _InputError(f"lists of {bad} leave the palette 1..{palette}")
    return G, lists


def _emit(payload: dict, out=None) -> None:
    text = json.dumps(payload, sort_keys=True)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    print(text)


def _cmd_decide(args) -> int:
    G, L = _graph_and_lists(_load(args.input), args.palette)
    route = certify_by_governments if args.route == "governments" else decide_with_certificate
    verdict = route(G, L, args.p1, args.p2)
    _emit(verdict.to_json(), getattr(args, "output", None))
    return OK if isinstance(verdict, Colorable) else OBSTRUCTED


def _cmd_verify(args) -> int:
    G, L = _graph_and_lists(_load(args.input), args.palette)
    data = _load(args.cert)
    if "coloring" in data:
        phi = {int(k): int(c) for k, c in data["coloring"].items()}
        ok = is_proper_coloring(G, L, phi)
        _emit({"kind": "coloring", "reason": "" if ok else "not a proper list coloring", "valid": ok})
        return OK if ok else BROKEN
    try:
        cert = HarmonicaCertificate.from_json(data.get("certificate", data))
    except (KeyError, TypeError, ValueError) as exc:
        raise _InputError(f"malformed certificate: {exc}") from exc
    origin = args.p1 if args.p1 is not None else None
    verdict = verify_coloring_harmonica(G, L, cert, origin, args.p2)
    _emit({"kind": "harmonica", "reason": verdict.reason, "valid": verdict.ok})
    return OBSTRUCTED if verdict.ok else BROKEN


class _View:
    def __init__(self, graph, lists):
        self.graph, self.lists = graph, lists


def _cmd_phi(args) -> int:
    G, L = _graph_and_lists(_load(args.input), args.palette)
    try:
        pairs = json.loads(args.colorings)
    except json.JSONDecodeError as exc:
        raise _InputError(f"--colorings is not JSON: {exc}") from exc
    if isinstance(pairs, dict):
        pairs = pairs.get("colorings", [])
    P, P2 = tuple(args.p), tuple(args.pprime)
    C = EdgeColoringSet.of(P, [tuple(pr) for pr in pairs])
    phi = extension_set(_View(G, L), P, C, P2)
    out = {"phi": phi.to_json(), "kind": "empty" if not phi else "single"}
    if len(phi) >= 2:
        out["kind"] = classify(phi).kind
    gov, conf = find_government(phi), find_confederacy(phi)
    out["government"] = gov.to_json() if gov else None
    out["confederacy"] = [conf.first.to_json(), conf.second.to_json()] if conf else None
    _emit(out)
    return OK


def _cmd_reduce(args) -> int:
    data = _load(args.input)
    G, L = _graph_and_lists(data, args.palette)
    T = validate_canvas(G, Subgraph.from_json(data.get("S", {})), L)
    R = democratic_reduction(T, args.path, args.l0, args.center)
    _emit({"reduced": R.reduced.to_json(), "report": R.report()})
    return OK


def _cmd_gen(args) -> int:
    inst = random_canvas(args.profile, f"{args.seed}:{args.profile}:0", args.palette)
    _emit(inst.to_json(), args.output)
    return OK


def _cmd_fuzz(args) -> int:
    report = run_property_suite([args.profile], args.trials, args.seed, args.palette)
    print(json.dumps(report.to_json(args.timing), sort_keys=True, indent=None if args.compact else 1))
    return OK if report.failures == 0 else BROKEN


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="harmonica", description="List coloring with certificates on plane graphs.")
    ap.add_argument("--palette", type=int, default=None, help="color universe 1..N for inputs and generators")
    sub = ap.add_subparsers(dest="command", required=True)

    def pair_flags(p):
        p.add_argument("-i", "--input", required=True)
        p.add_argument("--p1", type=int, required=True)
        p.add_argument("--p2", type=int, required=True)
        p.add_argument("--route", choices=("solver", "governments"), default="solver")

    p = sub.add_parser("decide", help="colorable or obstructed, with the witness")
    pair_flags(p)
    p.set_defaults(fn=_cmd_decide)

    p = sub.add_parser("certify", help="like decide, also writing the witness to a file")
    pair_flags(p)
    p.add_argument("-o", "--output")
    p.set_defaults(fn=_cmd_decide)

    p = sub.add_parser("verify-cert", help="check a coloring or harmonica certificate")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("-c", "--cert", required=True)
    p.add_argument("--p1", type=int)
    p.add_argument("--p2", type=int)
    p.set_defaults(fn=_cmd_verify)

    p = sub.add_parser("phi", help="extension set of colorings of one edge to another")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("--p", type=_ids, required=True)
    p.add_argument("--pprime", type=_ids, required=True)
    p.add_argument("--colorings", required=True, help="JSON list of color pairs along --p")
    p.set_defaults(fn=_cmd_phi)

    p = sub.add_parser("reduce", help="democratic reduction of a boundary path")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("--path", type=_ids, required=True)
    p.add_argument("--l0", type=_ids, required=True)
    p.add_argument("--center", type=int, required=True)
    p.set_defaults(fn=_cmd_reduce)

    p = sub.add_parser("gen", help="one random instance of a profile")
    p.add_argument("--profile", choices=sorted(PROFILES), required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("-o", "--output")
    p.set_defaults(fn=_cmd_gen)

    p = sub.add_parser("fuzz", help="run a property suite")
    p.add_argument("--profile", choices=sorted(PROFILES), required=True)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--timing", action="store_true", help="include wall-clock time in the report")
    p.add_argument("--compact", action="store_true")
    p.set_defaults(fn=_cmd_fuzz)
    return ap


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return OK if exc.code == 0 else USAGE
    if args.palette is not None and args.palette < 1:
        _emit({"error": "--palette must be positive"})
        return USAGE
    try:
        return args.fn(args)
    except HypothesesViolated as exc:
        _emit({"error": "hypotheses violated", "report": {k: [str(v) for v in vs] for k, vs in exc.report.items()}})
    except ConsistencyViolation as exc:
        _emit({"dump": exc.dump, "error": str(exc)})
        return BROKEN
    except InvalidCanvas as exc:
        _emit({"error": "invalid canvas", "violations": [[v.clause, str(v.vertex)] for v in exc.violations]})
    except HarmonicaError as exc:
        _emit({"clause": exc.clause, "error": str(exc)})
    except _InputError as exc:
        _emit({"error": str(exc)})
    except (KeyError, TypeError, ValueError) as exc:
        _emit({"error": f"bad input: {exc}"})
    return USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
