"""Command-line front end: check, represent, extract, verify over JSON files.

Exit codes: 0 = ok, 1 = a valid negative answer (not representable /
extraction mismatch), 2 = invalid input.  Documents are printed to stdout
with sorted keys; diagnostics go to stderr.
"""
from __future__ import annotations

import argparse
import json
import sys

from .betweenness import extract_betweenness_relation, pair_digraph, to_dot
from .errors import ConforkError, GroundSetTooLarge
from .relations import (
    FORKNESS_AXIOMS,
    full_axiom_report,
    parse_relation,
    quotient,
    relation_to_json,
    sharp,
)
from .solver import certificate_to_json, system_to_json
from .spaces import extract_fork_relation, parse_distribution
from .synthesis import NotRepresentable, fork_represent, representation_to_json

OK, NEGATIVE, INVALID = 0, 1, 2


def _load_json(path):
    with open(path, "r", encoding="utf-8") as handle:
        return json.load(handle)


def _load_relation(path):
    doc = _load_json(path)
    if isinstance(doc, dict) and "relation" in doc and "status" in doc:
        doc = doc["relation"]
    return parse_relation(doc)


def _load_distribution(path):
    doc = _load_json(path)
    if isinstance(doc, dict) and "distribution" in doc:
        doc = doc["distribution"]
    return parse_distribution(doc)


def _emit(doc: dict, out_path) -> None:
    text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    sys.stdout.write(text)
    if out_path:
        with open(out_path, "w", encoding="utf-8") as handle:
            handle.write(text)


def cmd_check(args) -> int:
    rel = _load_relation(args.relation)
    report = full_axiom_report(rel)
    is_forkness = all(report.holds[a] for a in FORKNESS_AXIOMS)
    is_regular = is_forkness and report.holds["regular"]
    doc = {
        "status": "ok",
        "axioms": dict(report.holds),
        "witnesses": {name: list(w) for name, w in report.witnesses.items()},
        "is_forkness": is_forkness,
        "is_regular_forkness": is_regular,
        "quotient": None,
        "partition": None,
    }
    if is_regular:
        qres = quotient(rel)
        doc["quotient"] = relation_to_json(qres.quotient)
        doc["partition"] = [
            {"label": label, "members": sorted(members)}
            for label, members in sorted(qres.classes.items())
        ]
    if args.dot:
        with open(args.dot, "w", encoding="utf-8") as handle:
            handle.write(to_dot(pair_digraph(sharp(rel))))
    _emit(doc, args.out)
    return OK


def cmd_represent(args) -> int:
    rel = _load_relation(args.relation)
    outcome = fork_represent(rel, max_ground_size=args.max_n)
    if isinstance(outcome, NotRepresentable):
        if outcome.report is not None:
            doc = {
                "status": "not-representable",
                "reason": "not-a-regular-forkness",
                "axioms": dict(outcome.report.holds),
                "witnesses": {n: list(w) for n, w in outcome.report.witnesses.items()},
            }
        else:
            doc = {
                "status": "not-representable",
                "reason": "unsolvable-quotient",
                "system": system_to_json(outcome.system),
                "certificate": certificate_to_json(outcome.certificate),
            }
        _emit(doc, args.out)
        print("not representable:", doc["reason"], file=sys.stderr)
        return NEGATIVE
    doc = {"status": "ok", **representation_to_json(outcome)}
    _emit(doc, args.out)
    return OK


def cmd_extract(args) -> int:
    ev = _load_distribution(args.distribution)
    if args.mode == "fork":
        rel = extract_fork_relation(ev)
    else:
        rel = extract_betweenness_relation(ev)
    _emit({"status": "ok", "relation": relation_to_json(rel)}, args.out)
    return OK


def cmd_verify(args) -> int:
    ev = _load_distribution(args.distribution)
    claimed = _load_relation(args.relation)
    if args.mode == "fork":
        extracted = extract_fork_relation(ev)
    else:
        extracted = extract_betweenness_relation(ev)
    same_ground = extracted.ground_set == claimed.ground_set
    missing = sorted(claimed.triples - extracted.triples)
    unexpected = sorted(extracted.triples - claimed.triples)
    equal = same_ground and not missing and not unexpected
    doc = {
        "status": "ok" if equal else "not-representable",
        "equal": equal,
        "same_ground_set": same_ground,
        "missing": [list(t) for t in missing],
        "unexpected": [list(t) for t in unexpected],
    }
    _emit(doc, args.out)
    if not equal:
        print(
            f"mismatch: {len(missing)} claimed triple(s) not extracted, "
            f"{len(unexpected)} extracted triple(s) not claimed",
            file=sys.stderr,
        )
        return NEGATIVE
    return OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="confork",
        description="Decide fork-representability of ternary relations and "
        "extract fork/betweenness patterns from finite distributions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_check = sub.add_parser("check", help="axiom report and quotient of a relation")
    p_check.add_argument("relation", help="relation JSON file")
    p_check.add_argument("--dot", help="write the pair digraph of the distinct part as DOT")
    p_check.add_argument("--out", help="also write the output document to this file")
    p_check.set_defaults(handler=cmd_check)

    p_rep = sub.add_parser("represent", help="decide representability and synthesize a witness")
    p_rep.add_argument("relation", help="relation JSON file")
    p_rep.add_argument("--max-n", type=int, default=20, help="ground set size cap (default 20)")
    p_rep.add_argument("--out", help="also write the output document to this file")
    p_rep.set_defaults(handler=cmd_represent)

    p_ext = sub.add_parser("extract", help="extract the fork or betweenness relation")
    p_ext.add_argument("distribution", help="distribution JSON file")
    p_ext.add_argument("--mode", choices=("fork", "betweenness"), required=True)
    p_ext.add_argument("--out", help="also write the output document to this file")
    p_ext.set_defaults(handler=cmd_extract)

    p_ver = sub.add_parser("verify", help="re-extract and compare against a claimed relation")
    p_ver.add_argument("distribution", help="distribution JSON file")
    p_ver.add_argument("relation", help="relation JSON file")
    p_ver.add_argument("--mode", choices=("fork", "betweenness"), default="fork")
    p_ver.add_argument("--out", help="also write the output document to this file")
    p_ver.set_defaults(handler=cmd_verify)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except GroundSetTooLarge as exc:
        _emit({"status": "invalid-input", "error": str(exc)}, getattr(args, "out", None))
        print(f"invalid input: {exc}", file=sys.stderr)
        return INVALID
    except (ConforkError, json.JSONDecodeError, OSError) as exc:
        _emit({"status": "invalid-input", "error": str(exc)}, None)
        print(f"invalid input: {exc}", file=sys.stderr)
        return INVALID


def run() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    run()
