"""Command-line front end: JSON in, JSON reports out.

Exit codes: 0 when every asserted claim passes, 1 on a claim failure,
2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional

from . import etperm, fingroup, relations, scenarios, words
from .etperm import EventualPermutation
from .fingroup import FiniteGroup, GroupSubset, Subgroup
from .relations import GraphOpSpec, Relation

USAGE_ERROR = 2
CLAIM_FAILURE = 1


def _load_json(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise ValueError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ValueError(f"{path}:{exc.lineno}: invalid JSON: {exc.msg}") from exc


def _emit(obj: dict, out: Optional[str]) -> None:
    text = json.dumps(obj, indent=2)
    if out:
        with open(out, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _named_poset(name: str, n: Optional[int]) -> Relation:
    if name in ("fence", "crown"):
        if n is None:
            raise ValueError(f"--poset {name} needs --n")
        return relations.named_relation(name, n)
    if name == "k135":
        name = "k135_1"
    return relations.named_relation(name)


def _input_relation(args) -> Relation:
    if getattr(args, "poset", None):
        return _named_poset(args.poset, args.n)
    if getattr(args, "infile", None):
        return Relation.from_json(_load_json(args.infile))
    raise ValueError("provide --poset/--n or --in FILE")


def _input_relations(args) -> list[Relation]:
    data = _load_json(args.infile)
    if not isinstance(data, dict) or "relations" not in data:
        raise ValueError(f"{args.infile}: expected an object with a "
                         f"'relations' field")
    return [Relation.from_json(r) for r in data["relations"]]


def _input_group(args) -> FiniteGroup:
    if getattr(args, "infile", None):
        return FiniteGroup.from_json(_load_json(args.infile))
    if args.group is None:
        raise ValueError("provide --group KIND --n K or --in FILE")
    return fingroup.group_make(args.group, args.n or 1)


def _ids(text: str) -> list[int]:
    try:
        return [int(t) for t in text.replace(",", " ").split()]
    except ValueError as exc:
        raise ValueError(f"bad id list {text!r}: {exc}") from exc


def _report_exit(report: scenarios.ScenarioReport, out: Optional[str]) -> int:
    _emit(report.to_json(), out)
    return 0 if report.ok else CLAIM_FAILURE


# -- subcommand handlers ---------------------------------------------------------

def _cmd_compose(args) -> int:
    rels = _input_relations(args)
    if len(rels) < 2:
        raise ValueError("compose needs at least two relations")
    cur = rels[0]
    for r in rels[1:]:
        cur = cur.compose(r)
    _emit(cur.to_json(), args.out)
    return 0


def _cmd_chain(args) -> int:
    rho = _input_relation(args)
    result = relations.alternating_chain(rho, args.m, args.start)
    _emit(result.to_json(), args.out)
    return 0


def _cmd_minlen(args) -> int:
    rho = _input_relation(args)
    length = relations.min_length_to_total(rho, args.start)
    _emit({"start": args.start, "length": length}, args.out)
    return 0


def _cmd_classify(args) -> int:
    rho = _input_relation(args)
    _emit({"class": rho.classify()}, args.out)
    return 0


def _cmd_graphop(args) -> int:
    if args.graph:
        spec = relations.named_graph(args.graph)
    elif args.spec:
        spec = GraphOpSpec.from_json(_load_json(args.spec))
    else:
        raise ValueError("provide --graph NAME or --spec FILE")
    rels = _input_relations(args) if args.infile else []
    result = relations.graph_op_eval_sized(spec, rels, args.n) \
        if spec.arity == 0 and args.n else relations.graph_op_eval(spec, rels)
    _emit(result.to_json(), args.out)
    return 0


def _cmd_fence(args) -> int:
    return _report_exit(scenarios.fence_report(args.n_lo, args.n_hi), args.out)


def _cmd_asymmetry(args) -> int:
    return _report_exit(scenarios.asymmetry_report(args.n_lo, args.n_hi), args.out)


def _cmd_abc(args) -> int:
    return _report_exit(scenarios.abc_report(args.seed, args.trials), args.out)


def _cmd_layers(args) -> int:
    rho = _input_relation(args)
    return _report_exit(scenarios.layer_report(rho, args.seed, args.trials), args.out)


def _cmd_theorem_suite(args) -> int:
    return _report_exit(scenarios.theorem_suite(args.n_max, args.seed, args.trials),
                        args.out)


def _cmd_cayley(args) -> int:
    group = _input_group(args)
    subset = GroupSubset(group, _ids(args.subset))
    _emit(fingroup.cayley_embed(group, subset).to_json(), args.out)
    return 0


def _cmd_coset_embed(args) -> int:
    group = _input_group(args)
    subgroup = Subgroup(group, _ids(args.subgroup))
    subset = GroupSubset(group, _ids(args.subset))
    _emit(fingroup.coset_embed(group, subgroup, subset).to_json(), args.out)
    return 0


def _cmd_free_counterexample(args) -> int:
    report = words.verify_counterexample()
    _emit(report, args.out)
    return 0 if report["pass"] else CLAIM_FAILURE


def _cmd_perm(args) -> int:
    data = _load_json(args.infile)
    if args.action == "validate":
        perm = EventualPermutation(int(data["perm"]["n"]), data["perm"]["top"],
                                   data["perm"]["bottom"],
                                   {tuple(p): tuple(q)
                                    for p, q in data["perm"]["exceptions"]},
                                   check=False)
        reason = perm.invalidity_reason()
        _emit({"valid": reason is None, "reason": reason}, args.out)
        return 0
    if args.action == "apply":
        perm = EventualPermutation.from_json(data["perm"])
        i, k = data["point"]
        _emit({"point": list(perm.apply((int(i), int(k))))}, args.out)
        return 0
    if args.action == "compose":
        perms = [EventualPermutation.from_json(p) for p in data["perms"]]
        if len(perms) < 2:
            raise ValueError("perm compose needs at least two permutations")
        cur = perms[0]
        for p in perms[1:]:
            cur = cur.compose(p)
        _emit(cur.to_json(), args.out)
        return 0
    if args.action == "factorize":
        perm = EventualPermutation.from_json(data["perm"])
        rho = Relation.from_json(data["rho"])
        sigma = Relation.from_json(data["sigma"])
        g, h = etperm.factorize(perm, rho, sigma)
        _emit({"g": g.to_json(), "h": h.to_json()}, args.out)
        return 0
    raise ValueError(f"unknown perm action {args.action!r}")


# -- parser ------------------------------------------------------------------------

def _add_io(p, with_in: bool = True) -> None:
    if with_in:
        p.add_argument("--in", dest="infile", metavar="FILE",
                       help="input JSON file")
    p.add_argument("--out", metavar="FILE", help="write output here "
                   "instead of standard output")
    p.add_argument("--format", choices=["json"], default="json")


def _add_poset(p) -> None:
    p.add_argument("--poset", choices=["fence", "crown", "k135",
                                       "k135_1", "k135_3", "k135_5"])
    p.add_argument("--n", type=int)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="relmon",
        description="exact relation-algebra and permutation-group computations")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compose", help="compose a list of relations")
    _add_io(p)
    p.set_defaults(handler=_cmd_compose)

    p = sub.add_parser("chain", help="m-step alternating composite")
    _add_poset(p)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--start", choices=["forward", "converse"], default="forward")
    _add_io(p)
    p.set_defaults(handler=_cmd_chain)

    p = sub.add_parser("minlen", help="least chain length reaching the total relation")
    _add_poset(p)
    p.add_argument("--start", choices=["forward", "converse"], default="forward")
    _add_io(p)
    p.set_defaults(handler=_cmd_minlen)

    p = sub.add_parser("classify", help="reflexive / preorder / equivalence")
    _add_poset(p)
    _add_io(p)
    p.set_defaults(handler=_cmd_classify)

    p = sub.add_parser("graphop", help="evaluate a graph-defined operation")
    p.add_argument("--graph", choices=["intersect", "compose", "converse",
                                       "diagonal", "total", "diamond"])
    p.add_argument("--spec", metavar="FILE", help="graph spec JSON")
    p.add_argument("--n", type=int, help="index-set size for nullary ops")
    _add_io(p)
    p.set_defaults(handler=_cmd_graphop)

    p = sub.add_parser("fence", help="zigzag product-length report")
    p.add_argument("--n-lo", type=int, default=2)
    p.add_argument("--n-hi", type=int, default=8)
    _add_io(p, with_in=False)
    p.set_defaults(handler=_cmd_fence)

    p = sub.add_parser("asymmetry", help="forward/converse product-length report")
    p.add_argument("--n-lo", type=int, default=2)
    p.add_argument("--n-hi", type=int, default=8)
    _add_io(p, with_in=False)
    p.set_defaults(handler=_cmd_asymmetry)

    p = sub.add_parser("abc", help="three-orders composite report")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=5)
    _add_io(p, with_in=False)
    p.set_defaults(handler=_cmd_abc)

    p = sub.add_parser("layers", help="layer-decomposition report")
    _add_poset(p)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=50)
    _add_io(p)
    p.set_defaults(handler=_cmd_layers)

    p = sub.add_parser("theorem-suite", help="bulk embedding verification")
    p.add_argument("--n-max", type=int, default=4)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=20)
    _add_io(p, with_in=False)
    p.set_defaults(handler=_cmd_theorem_suite)

    p = sub.add_parser("cayley", help="embed a group subset as a relation")
    p.add_argument("--group", choices=["cyclic", "symmetric"])
    p.add_argument("--n", type=int)
    p.add_argument("--subset", required=True, metavar="IDS",
                   help="comma-separated element ids")
    _add_io(p)
    p.set_defaults(handler=_cmd_cayley)

    p = sub.add_parser("coset-embed",
                       help="embed a bi-invariant subset on a coset space")
    p.add_argument("--group", choices=["cyclic", "symmetric"])
    p.add_argument("--n", type=int)
    p.add_argument("--subgroup", required=True, metavar="IDS")
    p.add_argument("--subset", required=True, metavar="IDS")
    _add_io(p)
    p.set_defaults(handler=_cmd_coset_embed)

    p = sub.add_parser("free-counterexample",
                       help="double-coset intersection failure report")
    _add_io(p, with_in=False)
    p.set_defaults(handler=_cmd_free_counterexample)

    p = sub.add_parser("perm", help="operate on serialized permutations")
    p.add_argument("action", choices=["apply", "compose", "validate", "factorize"])
    _add_io(p)
    p.set_defaults(handler=_cmd_perm)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.handler(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except (KeyError, TypeError) as exc:
        print(f"error: malformed input ({exc})", file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
