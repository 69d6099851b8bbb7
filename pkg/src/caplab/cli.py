"""Batch command-line front end.

Every command writes a JSON document {"status", "payload"}, byte-identical
across repeated invocations with identical arguments (including seeds);
wall-clock timing goes to stderr so it never perturbs the output.  Exact
rationals appear as "num/den" strings alongside decimal "approx" fields.
Exit codes: 0 ok, 1 domain error, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction

from . import acceptance, constructions, randomlab
from .cantor import ClopenSet, PrunedTree, decode_code, encode_tree
from .capacity import (
    CapacityTable,
    capacity_bruteforce,
    capacity_clopen,
    capacity_table,
    choquet_invert,
    recover_mu_star,
    spec_oracle,
)
from .errors import CaplabError
from .measure import MeasureSpec, lebesgue, mu_code, mu_star_tree, validate_spec


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError("not a rational: %r" % text)


def _json_arg(text: str):
    if text.lstrip().startswith(("{", "[")):
        return json.loads(text)
    with open(text) as handle:
        return json.load(handle)


def _spec_arg(text: str) -> MeasureSpec:
    return MeasureSpec.from_json(_json_arg(text))


def _clopen_arg(text: str) -> ClopenSet:
    return ClopenSet.from_json(_json_arg(text))


def _tree_arg(text: str) -> PrunedTree:
    return PrunedTree.from_json(_json_arg(text))


def _rat_payload(value: Fraction) -> dict:
    return {"value": str(value), "approx": float(value)}


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="caplab",
        description="Exact capacities, measures and random closed sets "
        "on Cantor space.",
    )
    parser.add_argument("--out", help="write the result document to a file")
    parser.add_argument(
        "--format", choices=["json", "csv"], default="json", dest="fmt"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("capacity", help="exact capacity of a clopen set")
    p.add_argument("--spec", type=_spec_arg, required=True)
    p.add_argument("--clopen", type=_clopen_arg, required=True)

    p = sub.add_parser("capacity-brute", help="brute-force capacity oracle")
    p.add_argument("--spec", type=_spec_arg, required=True)
    p.add_argument("--clopen", type=_clopen_arg, required=True)
    p.add_argument("--depth", type=int, required=True)

    p = sub.add_parser("measure", help="measure of a code interval / tree; "
                       "or validate a spec")
    p.add_argument("--spec", type=_spec_arg, required=True)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--code", help="ternary code interval")
    group.add_argument("--tree", type=_tree_arg, help="pruned tree JSON")
    group.add_argument("--validate", action="store_true")

    p = sub.add_parser("lebesgue", help="fair-coin measure of a clopen set")
    p.add_argument("--clopen", type=_clopen_arg, required=True)

    p = sub.add_parser("encode", help="ternary code of a pruned tree")
    p.add_argument("--tree", type=_tree_arg, required=True)

    p = sub.add_parser("decode", help="pruned tree of a ternary code")
    p.add_argument("--code", required=True)
    p.add_argument("--height", type=int, required=True)

    p = sub.add_parser("pn", help="intersection probabilities p_0..p_n")
    p.add_argument("--b0", type=_rational, required=True)
    p.add_argument("--b1", type=_rational, required=True)
    p.add_argument("--n", type=int, required=True)

    p = sub.add_parser("classify", help="zero/positive capacity regime")
    p.add_argument("--b0", type=_rational, required=True)
    p.add_argument("--b1", type=_rational, required=True)

    p = sub.add_parser("mltest", help="ML-test index sequence m_0..m_R")
    p.add_argument("--b0", type=_rational, required=True)
    p.add_argument("--b1", type=_rational, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--cutoff", type=int, default=512)

    p = sub.add_parser("sample", help="sample a random closed set's tree")
    p.add_argument("--spec", type=_spec_arg, required=True)
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)

    p = sub.add_parser("mc-intersect", help="Monte Carlo check of p_depth")
    p.add_argument("--spec", type=_spec_arg, required=True)
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)

    p = sub.add_parser("mc-capacity", help="Monte Carlo check of a capacity")
    p.add_argument("--spec", type=_spec_arg, required=True)
    p.add_argument("--clopen", type=_clopen_arg, required=True)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)

    p = sub.add_parser("claim1", help="finite mass-bound analogue")
    p.add_argument("--spec", type=_spec_arg, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)

    p = sub.add_parser("choquet-invert", help="recover a branching table "
                       "from a capacity")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--spec", type=_spec_arg, help="uniform spec oracle")
    group.add_argument("--captable", type=_json_arg, help="capacity table JSON")
    p.add_argument("--depth", type=int, required=True)
    p.add_argument("--cross-check", action="store_true")

    p = sub.add_parser("recover-mustar", help="inclusion-exclusion recovery "
                       "of mu* from a capacity")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--spec", type=_spec_arg)
    group.add_argument("--captable", type=_json_arg)
    p.add_argument("--height", type=int, required=True)

    p = sub.add_parser("captable", help="tabulate capacities of all clopen "
                       "sets up to a depth")
    p.add_argument("--spec", type=_spec_arg, required=True)
    p.add_argument("--depth", type=int, required=True)

    p = sub.add_parser("construct-usc", help="nested clopen sets realizing "
                       "a decreasing capacity target list")
    p.add_argument("--b0", type=_rational, required=True)
    p.add_argument("--b1", type=_rational, required=True)
    p.add_argument("--targets", type=_json_arg, required=True)
    p.add_argument("--max-leaves", type=int, default=1 << 16)

    p = sub.add_parser("construct-t6", help="measure-zero positive-capacity "
                       "sparse construction")
    p.add_argument("--b", type=_rational, required=True)
    p.add_argument("--stages", type=int, required=True)
    p.add_argument("--cutoff", type=int, default=256)

    p = sub.add_parser("selftest", help="run the acceptance suite")
    p.add_argument("--criteria", help="comma-separated criterion numbers")

    return parser


def _oracle_from_args(args):
    if getattr(args, "spec", None) is not None:
        return spec_oracle(args.spec)
    return CapacityTable.from_json(args.captable).as_oracle()


def _run(args) -> tuple[dict, str | None]:
    """Returns (payload, csv_text or None)."""
    cmd = args.command
    if cmd == "capacity":
        return _rat_payload(capacity_clopen(args.spec, args.clopen)), None
    if cmd == "capacity-brute":
        return (
            _rat_payload(capacity_bruteforce(args.spec, args.clopen, args.depth)),
            None,
        )
    if cmd == "measure":
        if args.validate:
            return validate_spec(args.spec).to_json(), None
        if args.code is not None:
            return _rat_payload(mu_code(args.spec, args.code)), None
        return _rat_payload(mu_star_tree(args.spec, args.tree)), None
    if cmd == "lebesgue":
        return _rat_payload(lebesgue(args.clopen)), None
    if cmd == "encode":
        return {"code": encode_tree(args.tree)}, None
    if cmd == "decode":
        return decode_code(args.code, args.height).to_json(), None
    if cmd == "pn":
        seq = randomlab.pn_exact(args.b0, args.b1, args.n)
        return seq.to_json(), seq.to_csv()
    if cmd == "classify":
        return randomlab.classify_regime(args.b0, args.b1).to_json(), None
    if cmd == "mltest":
        ms = randomlab.ml_test_indices(args.b0, args.b1, args.r, args.cutoff)
        return {"indices": ms}, None
    if cmd == "sample":
        tree = randomlab.sample_tree(args.spec, args.depth, args.seed)
        return {"tree": tree.to_json(), "code": encode_tree(tree)}, None
    if cmd == "mc-intersect":
        rec = randomlab.mc_intersection(args.spec, args.depth, args.trials, args.seed)
        return rec.to_json(), None
    if cmd == "mc-capacity":
        rec = randomlab.mc_capacity(args.spec, args.clopen, args.trials, args.seed)
        return rec.to_json(), None
    if cmd == "claim1":
        return randomlab.claim1_check(args.spec, args.m, args.n).to_json(), None
    if cmd == "choquet-invert":
        table = choquet_invert(
            _oracle_from_args(args), args.depth, cross_check=args.cross_check
        )
        return table.to_json(), None
    if cmd == "recover-mustar":
        recovered = recover_mu_star(_oracle_from_args(args), args.height)
        payload = [
            {
                "code": encode_tree(tree),
                "value": str(mass),
                "approx": float(mass),
            }
            for tree, mass in sorted(
                recovered.items(), key=lambda kv: encode_tree(kv[0])
            )
        ]
        return {"height": args.height, "masses": payload}, None
    if cmd == "captable":
        return capacity_table(args.spec, args.depth).to_json(), None
    if cmd == "construct-usc":
        targets = [Fraction(t) for t in args.targets]
        trace = constructions.build_usc_capacity(
            args.b0, args.b1, targets, args.max_leaves
        )
        return trace.to_json(), trace.to_csv()
    if cmd == "construct-t6":
        result = constructions.build_measure_zero_positive_capacity(
            args.b, args.stages, args.cutoff
        )
        return result.to_json(), None
    raise AssertionError("unhandled command %r" % cmd)


def _emit(doc_text: str, out: str | None) -> None:
    if out:
        with open(out, "w") as handle:
            handle.write(doc_text)
    else:
        sys.stdout.write(doc_text)


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)

    if args.command == "selftest":
        numbers = None
        if args.criteria:
            numbers = [int(x) for x in args.criteria.split(",")]
        results = acceptance.run_all(numbers)
        for result in results:
            print(result.line())
        return 0 if all(r.ok for r in results) else 1

    start = time.perf_counter()
    try:
        payload, csv_text = _run(args)
    except CaplabError as exc:
        doc = {"status": "error", "kind": exc.kind, "message": str(exc)}
        _emit(json.dumps(doc, indent=2, sort_keys=True) + "\n", args.out)
        return 1
    ms = int((time.perf_counter() - start) * 1000)
    print("timing_ms: %d" % ms, file=sys.stderr)

    if args.fmt == "csv":
        if csv_text is None:
            parser.error("command %r has no CSV form" % args.command)
        _emit(csv_text, args.out)
        return 0
    doc = {"status": "ok", "payload": payload}
    _emit(json.dumps(doc, indent=2, sort_keys=True) + "\n", args.out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
