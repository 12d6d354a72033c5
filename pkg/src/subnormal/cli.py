"""Batch command surface with stable, deterministic JSON documents.

Every subcommand prints one structured document to stdout; identical
configuration and inputs give byte-identical output.  Exit codes:
0 success, 1 verification or claim failure, 2 bound exceeded,
3 input error.
"""

import argparse
import json
import sys
from dataclasses import asdict, dataclass

from .arith import is_prime
from .chartab import (
    CLASS_COUNT_BOUND,
    character_table,
    load_table,
    table_document,
    verify_table,
)
from .conjecture import (
    check_conjecture,
    claim_ids,
    report_document,
    reproduce_all,
    reproduce_claim,
)
from .permgroup import (
    BoundExceeded,
    CONJUGATE_ORBIT_BOUND,
    ENUMERATION_BOUND,
    GroupError,
    conjugacy_classes,
    normalizer,
)
from .sylow import (
    BRUTEFORCE_BOUND,
    FUSION_SCAN_BOUND,
    p_class_representatives,
    picky_classes,
    subnormaliser,
    subnormaliser_bruteforce,
    subnormaliser_fusion,
    sylow,
)
from .zoo import resolve_group

SCHEMA_VERSION = 1
SUMMARY_CLASS_BOUND = 1_000_000


@dataclass(frozen=True)
class RunConfig:
    """Bounds and knobs shared by the commands; defaults match the
    values fixed in the owning modules."""

    enumeration_bound: int = ENUMERATION_BOUND
    bruteforce_bound: int = BRUTEFORCE_BOUND
    fusion_scan_bound: int = FUSION_SCAN_BOUND
    conjugate_bound: int = CONJUGATE_ORBIT_BOUND
    class_bound: int = CLASS_COUNT_BOUND
    seed: int = 0
    out_dir: str = None
    workers: int = 1


class UsageError(Exception):
    pass


class Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _emit(doc):
    json.dump(doc, sys.stdout, sort_keys=True, indent=1)
    sys.stdout.write("\n")


def _doc(kind, **fields):
    doc = {"schema_version": SCHEMA_VERSION, "kind": kind}
    doc.update(fields)
    return doc


def _resolve(label):
    try:
        return resolve_group(label)
    except GroupError as exc:
        raise UsageError(str(exc)) from None


def _check_prime(p):
    if not is_prime(p):
        raise UsageError(f"{p} is not a prime")
    return p


def _class_rep(G, p, class_id):
    reps = p_class_representatives(G, p)
    if not 0 <= class_id < len(reps):
        raise UsageError(
            f"class id {class_id} out of range: {len(reps)} classes of"
            f" nontrivial {p}-elements"
        )
    return reps[class_id]


# ---------------------------------------------------------------------------
# subcommands


def _cmd_group(args, config):
    G = _resolve(args.group)
    class_count = None
    if G.order <= SUMMARY_CLASS_BOUND:
        class_count = len(conjugacy_classes(G).classes)
    _emit(
        _doc(
            "group_summary",
            label=args.group,
            order=G.order,
            degree=G.degree,
            generator_count=len(G.gens),
            class_count=class_count,
        )
    )
    return 0


def _cmd_sylow(args, config):
    G = _resolve(args.group)
    p = _check_prime(args.p)
    P = sylow(G, p, bound=config.conjugate_bound)
    N = normalizer(G, P)
    _emit(
        _doc(
            "sylow_summary",
            label=args.group,
            prime=p,
            group_order=G.order,
            sylow_order=P.order,
            sylow_count=G.order // N.order,
            normalizer_order=N.order,
        )
    )
    return 0


def _cmd_picky(args, config):
    G = _resolve(args.group)
    p = _check_prime(args.p)
    rows = picky_classes(G, p)
    _emit(
        _doc(
            "picky_report",
            label=args.group,
            prime=p,
            group_order=G.order,
            class_count=len(rows),
            all_picky=all(r.picky for r in rows) if rows else True,
            exists_picky=any(r.picky for r in rows),
            methods_agree=all(r.methods_agree for r in rows),
            rows=[
                {
                    "class_id": i,
                    "element_order": r.element_order,
                    "class_size": r.class_size,
                    "centralizer_order": r.centralizer_order,
                    "subnormaliser_order": r.subnormaliser_order,
                    "picky": r.picky,
                    "methods": list(r.methods),
                    "methods_agree": r.methods_agree,
                }
                for i, r in enumerate(rows)
            ],
        )
    )
    return 0


_METHOD_RUNNERS = {
    "gen": lambda G, p, y, config: subnormaliser(
        G, p, y, bound=config.conjugate_bound
    ),
    "fusion": lambda G, p, y, config: subnormaliser_fusion(
        G, p, y, scan_bound=config.fusion_scan_bound
    ),
    "brute": lambda G, p, y, config: subnormaliser_bruteforce(
        G, p, y, bound=config.bruteforce_bound
    ),
}


def _cmd_subnorm(args, config):
    G = _resolve(args.group)
    p = _check_prime(args.p)
    cls, y = _class_rep(G, p, args.class_id)
    methods = ("gen", "fusion", "brute") if args.method == "all" else (args.method,)
    results = []
    for m in methods:
        r = _METHOD_RUNNERS[m](G, p, y, config)
        results.append(
            {
                "method": r.method,
                "subnormaliser_order": r.subgroup.order,
                "picky": r.is_picky,
                "count_containing": r.count_containing,
                "sylow_order": r.sylow.order,
                "sylow_normalizer_order": r.sylow_normalizer.order,
            }
        )
    orders = {r["subnormaliser_order"] for r in results}
    flags = {r["picky"] for r in results}
    _emit(
        _doc(
            "subnormaliser_report",
            label=args.group,
            prime=p,
            class_id=args.class_id,
            element_order=cls.rep_order,
            class_size=cls.size,
            centralizer_order=cls.centralizer_order,
            results=results,
            methods_agree=len(orders) == 1 and len(flags) == 1,
        )
    )
    return 0


def _cmd_chartab(args, config):
    if args.verify is not None:
        try:
            T = load_table(args.verify)
        except (OSError, ValueError) as exc:
            raise UsageError(f"cannot read table document: {exc}") from None
        report = verify_table(T)
        _emit(
            _doc(
                "table_verification",
                source=args.verify,
                ok=report.ok,
                failed_check=report.failed_check,
                detail=report.detail,
                checks=[list(c) for c in report.checks],
            )
        )
        return 0 if report.ok else 1
    G = _resolve(args.group)
    T = character_table(G, class_bound=config.class_bound)
    doc = table_document(T)
    if args.export is not None:
        with open(args.export, "w", encoding="utf-8") as fh:
            json.dump(doc, fh, sort_keys=True, indent=1)
            fh.write("\n")
        _emit(
            _doc(
                "table_export",
                label=args.group,
                path=args.export,
                order=T.order,
                class_count=T.class_count,
            )
        )
    else:
        _emit(doc)
    return 0


def _cmd_conjecture(args, config):
    G = _resolve(args.group)
    p = _check_prime(args.p)
    _, y = _class_rep(G, p, args.class_id)
    report = check_conjecture(G, p, y, level=args.level)
    doc = report_document(report)
    doc["label"] = args.group
    doc["class_id"] = args.class_id
    _emit(doc)
    return 0 if report.verdict else 1


def _cmd_reproduce(args, config):
    if args.claim is not None:
        results = [reproduce_claim(args.claim)]
    elif args.all:
        results = reproduce_all(workers=config.workers, out_dir=config.out_dir)
    else:
        raise UsageError("choose --claim <id> or --all")
    statuses = [r["status"] for r in results]
    _emit(
        _doc(
            "reproduce_run",
            results=results,
            counts={
                "pass": statuses.count("pass"),
                "fail": statuses.count("fail"),
                "skipped": sum(1 for s in statuses if s.startswith("skipped")),
            },
        )
    )
    if "fail" in statuses:
        return 1
    if any(s.startswith("skipped") for s in statuses):
        return 2
    return 0


# ---------------------------------------------------------------------------
# wiring


def _build_parser():
    parser = Parser(prog="subnormal", description=__doc__)
    parser.add_argument("--seed", type=int, default=0, help="RNG seed for sampling")
    parser.add_argument("--out-dir", default=None, help="directory for result documents")
    parser.add_argument("--workers", type=int, default=1, help="parallel claim workers")
    parser.add_argument("--bruteforce-bound", type=int, default=BRUTEFORCE_BOUND)
    parser.add_argument("--fusion-scan-bound", type=int, default=FUSION_SCAN_BOUND)
    parser.add_argument("--conjugate-bound", type=int, default=CONJUGATE_ORBIT_BOUND)
    parser.add_argument("--class-bound", type=int, default=CLASS_COUNT_BOUND)
    sub = parser.add_subparsers(dest="command", required=True)

    s = sub.add_parser("group", help="construct a group and summarize it")
    s.add_argument("group")
    s.set_defaults(run=_cmd_group)

    s = sub.add_parser("sylow", help="Sylow subgroup order, count, normalizer")
    s.add_argument("group")
    s.add_argument("-p", type=int, required=True)
    s.set_defaults(run=_cmd_sylow)

    s = sub.add_parser("picky", help="survey every class of nontrivial p-elements")
    s.add_argument("group")
    s.add_argument("-p", type=int, required=True)
    s.set_defaults(run=_cmd_picky)

    s = sub.add_parser("subnorm", help="subnormaliser of one class representative")
    s.add_argument("group")
    s.add_argument("-p", type=int, required=True)
    s.add_argument("--class", dest="class_id", type=int, required=True)
    s.add_argument(
        "--method", choices=("gen", "fusion", "brute", "all"), default="gen"
    )
    s.set_defaults(run=_cmd_subnorm)

    s = sub.add_parser("chartab", help="exact character table")
    s.add_argument("group", nargs="?")
    s.add_argument("--export", default=None, help="write the table document here")
    s.add_argument("--verify", default=None, help="verify a table document file")
    s.set_defaults(run=_cmd_chartab)

    s = sub.add_parser("conjecture", help="tag-multiset bijection check")
    s.add_argument("group")
    s.add_argument("-p", type=int, required=True)
    s.add_argument("--class", dest="class_id", type=int, required=True)
    s.add_argument("--level", choices=("basic", "plus"), default="plus")
    s.set_defaults(run=_cmd_conjecture)

    s = sub.add_parser("reproduce", help="run registry claims")
    s.add_argument("--claim", default=None, help="one claim id")
    s.add_argument("--all", action="store_true", help="every registered claim")
    s.add_argument("--list", action="store_true", help="list claim ids and exit")
    s.set_defaults(run=_cmd_reproduce)

    return parser


def main(argv=None):
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "chartab" and args.verify is None and args.group is None:
            raise UsageError("chartab needs a group label or --verify <file>")
        if args.command == "reproduce" and args.list:
            _emit(_doc("claim_listing", claims=list(claim_ids())))
            return 0
        config = RunConfig(
            bruteforce_bound=args.bruteforce_bound,
            fusion_scan_bound=args.fusion_scan_bound,
            conjugate_bound=args.conjugate_bound,
            class_bound=args.class_bound,
            seed=args.seed,
            out_dir=args.out_dir,
            workers=args.workers,
        )
        return args.run(args, config)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except BoundExceeded as exc:
        print(f"bound exceeded: {exc}", file=sys.stderr)
        return 2
    except GroupError as exc:
        print(f"verification failure: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
