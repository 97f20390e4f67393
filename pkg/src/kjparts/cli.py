"""Command-line front end.

Subcommands map one-to-one onto the library surfaces: `expand` prints
series coefficients or progression residues, `count` runs the enumeration
oracle, `verify` drives the congruence-claim registry, `identity` the
dissection registry, `nu` the exact-size counts, `bijection` the
marked-overpartition round trip, and `hook compare` the truncated
hook-length comparisons.

Exit codes: 0 all checks pass (conjecture counterexamples are reported as
FINDING blocks but do not fail the run), 1 a theorem-flagged check failed,
2 usage or resource error.  Output for a fixed command line is
deterministic and independent of --parallel.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from typing import Optional

from . import __version__
from .colored import (
    bijection_backward,
    bijection_forward,
    ckj_enumerate,
    ckj_listing,
    ckj_series,
    fn_polynomial,
    format_colored,
    iter_marked_overpartitions,
    kcolored_series,
    nu_count,
    nu_series,
    overpartition_series,
    partition_series,
)
from .congruence import (
    builtin_claims,
    claims_by_id,
    expand_expression,
    identities_by_id,
    verify_claim,
    verify_identity,
)
from .hooklen import compare_low_order
from .qpoly import QPoly
from .series import BudgetError


def _emit(payload: dict, fmt: str, rows: Optional[list[dict]] = None) -> None:
    if fmt == "json":
        print(json.dumps(payload, sort_keys=True, indent=2))
    elif fmt == "csv":
        rows = rows if rows is not None else payload.get("results", [])
        if rows:
            out = io.StringIO()
            keys = sorted({k for r in rows for k in r})
            writer = csv.DictWriter(out, fieldnames=keys)
            writer.writeheader()
            for r in rows:
                writer.writerow({k: r.get(k, "") for k in keys})
            sys.stdout.write(out.getvalue())
    else:
        raise ValueError(f"unknown format {fmt!r}")


def _report_payload(command: str, params: dict, results: list[dict]) -> dict:
    return {
        "tool_version": __version__,
        "command": command,
        "params": params,
        "results": results,
    }


def _family_series(args: argparse.Namespace, order: int):
    fam = args.family
    if fam == "ckj":
        if args.k is None or args.j is None:
            raise SystemExit2("--family ckj requires --k and --j")
        return ckj_series(args.k, args.j, order)
    if fam == "overpartition":
        return overpartition_series(order)
    if fam == "partition":
        return partition_series(order)
    if fam == "kcolored":
        if args.k is None:
            raise SystemExit2("--family kcolored requires --k")
        return kcolored_series(args.k, order)
    if fam == "nu":
        if args.i is None:
            raise SystemExit2("--family nu requires --i")
        from .series import INTEGER_RING, TruncatedSeries

        return TruncatedSeries(INTEGER_RING, nu_series(args.i, order), order)
    if fam == "series":
        if not args.expr:
            raise SystemExit2("--family series requires --expr")
        return expand_expression(args.expr, order)
    raise SystemExit2(f"unknown family {fam!r}")


class SystemExit2(Exception):
    """Usage error surfaced with exit status 2."""


def _cmd_expand(args) -> int:
    order = args.limit
    if order < 0:
        raise SystemExit2("--limit must be nonnegative")
    series = _family_series(args, order)
    params = {
        "family": args.family, "k": args.k, "j": args.j, "i": args.i,
        "expr": args.expr, "limit": order,
        "progression": args.progression, "mod": args.mod,
    }
    if args.progression:
        step, offset = args.progression
        values = series.extract(step, offset)
        rows = []
        for t, v in enumerate(values):
            row = {"n": step * t + offset, "value": v}
            if args.mod:
                row["residue"] = v % args.mod
            rows.append(row)
    else:
        rows = [{"n": n, "value": series.coeffs[n]} for n in range(order + 1)]
        if args.mod:
            for row in rows:
                row["residue"] = row["value"] % args.mod
    if args.format == "text":
        for row in rows:
            tail = f"  (mod {args.mod}: {row['residue']})" if args.mod else ""
            print(f"q^{row['n']}: {row['value']}{tail}")
    else:
        _emit(_report_payload("expand", params, rows), args.format, rows)
    return 0


def _cmd_count(args) -> int:
    if args.family != "ckj":
        raise SystemExit2("count supports --family ckj")
    if args.k is None or args.j is None or args.n is None:
        raise SystemExit2("count requires --n, --k and --j")
    count = ckj_enumerate(args.n, args.k, args.j, oracle_limit=args.oracle_limit)
    if args.list:
        listing = ckj_listing(args.n, args.k, args.j, oracle_limit=args.oracle_limit)
        if args.format == "text":
            for cp in listing:
                print(format_colored(cp))
            print(f"total: {count}")
        else:
            rows = [{"listing": format_colored(cp)} for cp in listing]
            payload = _report_payload(
                "count",
                {"family": "ckj", "n": args.n, "k": args.k, "j": args.j},
                rows + [{"total": count}],
            )
            _emit(payload, args.format)
        return 0
    if args.format == "text":
        print(count)
    else:
        payload = _report_payload(
            "count", {"family": "ckj", "n": args.n, "k": args.k, "j": args.j},
            [{"total": count}],
        )
        _emit(payload, args.format)
    return 0


def _select_claims(args) -> list:
    claims = list(builtin_claims())
    if args.claims:
        table = claims_by_id()
        missing = [cid for cid in args.claims if cid not in table]
        if missing:
            raise SystemExit2(f"unknown claim ids: {', '.join(missing)}")
        claims = [table[cid] for cid in args.claims]
    if args.tags:
        want_conj = "conjecture" in args.tags
        want_thm = "theorem" in args.tags
        claims = [
            c for c in claims
            if (c.conjecture and want_conj) or (not c.conjecture and want_thm)
        ]
    return claims


def _cmd_verify(args) -> int:
    if args.dump_registry:
        rows = [c.to_dict() for c in builtin_claims()]
        payload = _report_payload("verify", {"dump_registry": True}, rows)
        if args.format == "text":
            for c in builtin_claims():
                flag = " [conjecture]" if c.conjecture else ""
                print(f"{c.id}: {c.spec.describe()}({c.progression_text()}) "
                      f"= 0 mod {c.modulus}{flag}  <{c.source}>")
        else:
            _emit(payload, args.format, rows)
        return 0
    if args.bound is not None and args.bound < 1:
        raise SystemExit2("--bound must be a positive integer")
    claims = _select_claims(args)
    workers = max(args.parallel, 1)
    if workers == 1:
        reports = [verify_claim(c, args.bound) for c in claims]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            reports = list(pool.map(lambda c: verify_claim(c, args.bound), claims))
    reports.sort(key=lambda r: r.claim_id)
    rows = [r.to_dict() for r in reports]
    # parallelism degree is an execution detail: reports must be identical
    # for any --parallel value, so it is not echoed into the payload
    params = {
        "suite": args.suite, "bound": args.bound, "claims": args.claims,
        "tags": args.tags,
    }
    hard_failures = [r for r in reports if r.status == "fail" and not r.conjecture]
    findings = [r for r in reports if r.status == "fail" and r.conjecture]
    if args.format == "text":
        for r in reports:
            flag = " [conjecture]" if r.conjecture else ""
            extra = f" warning: {r.warning}" if r.warning else ""
            print(f"{r.claim_id}: {r.status.upper()} "
                  f"(checked {r.checked} indices <= {r.bound}){flag}{extra}")
            for ce in r.counterexamples[:5]:
                print(f"    counterexample n={ce['n']} residue={ce['residue']}")
    else:
        _emit(_report_payload("verify", params, rows), args.format,
              [_flatten_report(r) for r in rows])
    for r in findings:
        print()
        print("=" * 60)
        print(f"FINDING: conjecture {r.claim_id} has a counterexample!")
        for ce in r.counterexamples[:10]:
            print(f"    n={ce['n']} value={ce['value']} residue={ce['residue']}")
        print("=" * 60)
    return 1 if hard_failures else 0


def _flatten_report(r: dict) -> dict:
    flat = {
        "claim_id": r["claim_id"], "bound": r["bound"], "checked": r["checked"],
        "status": r["status"], "conjecture": r.get("conjecture", False),
        "counterexamples": len(r["counterexamples"]),
    }
    if r["counterexamples"]:
        flat["first_counterexample_n"] = r["counterexamples"][0]["n"]
    return flat


def _cmd_identity(args) -> int:
    if args.id:
        ids = [args.id]
    elif args.all:
        ids = sorted(identities_by_id())
    else:
        raise SystemExit2("identity requires --id or --all")
    table = identities_by_id()
    missing = [i for i in ids if i not in table]
    if missing:
        raise SystemExit2(f"unknown identity ids: {', '.join(missing)}")
    reports = [verify_identity(i, args.order) for i in ids]
    rows = [r.to_dict() for r in reports]
    if args.format == "text":
        for r in reports:
            print(f"{r.claim_id}: {r.status.upper()} (order {r.bound})")
    else:
        _emit(_report_payload("identity", {"ids": ids, "order": args.order}, rows),
              args.format, [_flatten_report(r) for r in rows])
    return 1 if any(r.status == "fail" for r in reports) else 0


def _cmd_nu(args) -> int:
    methods = [args.method] if args.method else ["enumerate", "andrews", "divisor_identity"]
    rows = []
    for method in methods:
        try:
            value = nu_count(args.i, args.n, method)
        except ValueError as exc:
            rows.append({"method": method, "error": str(exc)})
            continue
        rows.append({"method": method, "value": value})
    if args.format == "text":
        for row in rows:
            if "error" in row:
                print(f"{row['method']}: unavailable ({row['error']})")
            else:
                print(f"{row['method']}: {row['value']}")
    else:
        _emit(_report_payload("nu", {"i": args.i, "n": args.n}, rows), args.format, rows)
    values = {row["value"] for row in rows if "value" in row}
    return 0 if len(values) == 1 else 1


def _cmd_bijection(args) -> int:
    rows = []
    ok = True
    for n in range(args.max_n + 1):
        per_i: dict[int, int] = {}
        for m in iter_marked_overpartitions(n):
            c1, c2, i = bijection_backward(m)
            if bijection_forward(c1, c2, i) != m:
                ok = False
            per_i[i] = per_i.get(i, 0) + 1
        fn = fn_polynomial(n)
        counts_ok = all(
            per_i.get(i, 0) == fn.coeff(i) for i in range(fn.degree + 1)
        )
        ok = ok and counts_ok
        rows.append({
            "n": n,
            "round_trip": "pass",
            "image_counts": [per_i.get(i, 0) for i in range(fn.degree + 1)],
            "marked_polynomial": str(fn),
            "counts_match": counts_ok,
        })
    if args.format == "text":
        for row in rows:
            print(f"n={row['n']}: counts {row['image_counts']} "
                  f"{'match' if row['counts_match'] else 'MISMATCH'} {row['marked_polynomial']}")
    else:
        _emit(_report_payload("bijection", {"max_n": args.max_n}, rows), args.format, rows)
    return 0 if ok else 1


def _cmd_hook(args) -> int:
    if args.hook_command != "compare":
        raise SystemExit2("hook supports the `compare` subcommand")
    if args.max_n is not None:
        ns = list(range(args.max_n + 1))
    elif args.n is not None:
        ns = [args.n]
    else:
        raise SystemExit2("hook compare requires --n or --max-n")
    cutoff = args.cutoff
    rows = []
    divisor = QPoly((0, 0, 1)) * QPoly((1, -1))  # b^2 (1 - b)
    exit_code = 0
    for n in ns:
        cmp = compare_low_order(n, cutoff, args.correction)
        row = {
            "n": n, "cutoff": cutoff, "correction": args.correction,
            "matched_orders": cmp.matched_orders,
            "left": str(cmp.left), "right": str(cmp.right),
        }
        if args.correction == "lambda4":
            row["difference_divisible_by_b2_1mb"] = cmp.difference_divisible_by(divisor)
        rows.append(row)
    if args.format == "text":
        for row in rows:
            print(f"n={row['n']} cutoff={row['cutoff']} correction={row['correction']} "
                  f"matched_orders={row['matched_orders']}")
            print(f"    left:  {row['left']}")
            print(f"    right: {row['right']}")
            if "difference_divisible_by_b2_1mb" in row:
                print(f"    difference divisible by b^2*(1-b): "
                      f"{row['difference_divisible_by_b2_1mb']}")
    else:
        _emit(_report_payload(
            "hook compare",
            {"cutoff": cutoff, "correction": args.correction, "ns": list(ns)},
            rows), args.format, rows)
    return exit_code


def _progression(text: str) -> tuple[int, int]:
    try:
        a, b = text.split(",")
        step, offset = int(a), int(b)
    except ValueError:
        raise argparse.ArgumentTypeError("progression must look like A,B")
    if step < 1 or offset < 0:
        raise argparse.ArgumentTypeError("progression needs A >= 1 and B >= 0")
    return step, offset


def _cutoff(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("cutoff must be >= 1")
    return value


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="kjparts",
        description="Exact counting, congruence verification, and hook-length "
                    "comparisons for color-restricted partitions.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_format(p):
        p.add_argument("--format", choices=("text", "json", "csv"), default="text")

    p = sub.add_parser("expand", help="print series coefficients or progression residues")
    p.add_argument("--family", required=True,
                   choices=("ckj", "overpartition", "partition", "kcolored", "nu", "series"))
    p.add_argument("--k", type=int)
    p.add_argument("--j", type=int)
    p.add_argument("--i", type=int)
    p.add_argument("--expr", help="series expression, e.g. 'f3 / f1^3'")
    p.add_argument("--limit", type=int, required=True, help="truncation order")
    p.add_argument("--progression", type=_progression, help="A,B selects indices An+B")
    p.add_argument("--mod", type=int)
    add_format(p)
    p.set_defaults(fn=_cmd_expand)

    p = sub.add_parser("count", help="enumeration-oracle count (and listing)")
    p.add_argument("--family", default="ckj")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--j", type=int, required=True)
    p.add_argument("--list", action="store_true", help="print the canonical listing")
    p.add_argument("--oracle-limit", type=int, default=25)
    add_format(p)
    p.set_defaults(fn=_cmd_count)

    p = sub.add_parser("verify", help="run the congruence-claim registry")
    p.add_argument("--suite", default="paper", choices=("paper",))
    p.add_argument("--claims", type=lambda s: s.split(","), help="comma-separated claim ids")
    p.add_argument("--tags", type=lambda s: s.split(","),
                   help="filter: theorem, conjecture")
    p.add_argument("--bound", type=int, help="override every claim's default bound")
    p.add_argument("--parallel", type=int, default=1)
    p.add_argument("--dump-registry", action="store_true")
    add_format(p)
    p.set_defaults(fn=_cmd_verify)

    p = sub.add_parser("identity", help="check registered series identities")
    p.add_argument("--id")
    p.add_argument("--all", action="store_true")
    p.add_argument("--order", type=int)
    add_format(p)
    p.set_defaults(fn=_cmd_identity)

    p = sub.add_parser("nu", help="exact-size partition counts by all methods")
    p.add_argument("--i", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--method", choices=("enumerate", "andrews", "divisor_identity"))
    add_format(p)
    p.set_defaults(fn=_cmd_nu)

    p = sub.add_parser("bijection", help="round-trip the marked-overpartition bijection")
    p.add_argument("--max-n", type=int, default=10)
    add_format(p)
    p.set_defaults(fn=_cmd_bijection)

    p = sub.add_parser("hook", help="hook-length comparison lab")
    hook_sub = p.add_subparsers(dest="hook_command", required=True)
    hc = hook_sub.add_parser("compare", help="left/right polynomials and matched orders")
    hc.add_argument("--n", type=int)
    hc.add_argument("--max-n", type=int)
    hc.add_argument("--cutoff", type=_cutoff, default=2, help="hook cutoff m (>= 1)")
    hc.add_argument("--correction", choices=("none", "lambda4"), default="none")
    add_format(hc)
    hc.set_defaults(fn=_cmd_hook)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except SystemExit2 as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except BudgetError as exc:
        print(f"resource error: {exc}", file=sys.stderr)
        return 2
    except (ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
