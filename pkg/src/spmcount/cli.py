"""Command line front end.

Subcommands: compute (one quantity), table (sweep of the three headline
quantities), verify (cross-check suites), sample (seeded random matrices),
oracle (brute-force recounts). Exit codes: 0 success, 2 usage error,
3 resource guard, 4 verification failure.

Machine output: --format json emits one result record per computed value;
exact integers ride as decimal strings because they overflow 64-bit JSON
consumers. The record schema is RESULT_SCHEMA below and in the README.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from .engine import (
    agreement_layer_sum,
    count_disjoint,
    count_disjoint_pairs,
    disjoint_probability,
    render_ratio,
    resolve_workers,
    s_permutation_count,
)
from .errors import CheckpointError, GuardError, SPMCountError
from .matrices import is_disjoint_pairs, random_s_permutations, to_pair_matrix
from .oracle import agreement_histogram, brute_q, brute_xi, search_disjoint_family
from .profiles import GUARD_N
from .verify import run_checks

USAGE_EXIT = 2
GUARD_EXIT = 3
VERIFY_EXIT = 4

RESULT_SCHEMA = {
    "$schema": "http://json-schema.org/draft-07/schema#",
    "title": "spmcount result record",
    "type": "object",
    "required": ["n", "quantity", "k", "value", "value_ratio", "digits", "elapsed_ms", "workers"],
    "additionalProperties": False,
    "properties": {
        "n": {"type": "integer", "minimum": 1},
        "quantity": {"enum": ["xi", "eta", "p", "q", "sigma"]},
        "k": {"type": ["integer", "null"], "minimum": 0},
        "value": {"type": "string", "pattern": "^-?[0-9]+(\\.[0-9]+)?$"},
        "value_ratio": {"type": ["string", "null"], "pattern": "^[0-9]+/[0-9]+$"},
        "digits": {"type": ["integer", "null"], "minimum": 1},
        "elapsed_ms": {"type": "integer", "minimum": 0},
        "workers": {"type": "integer", "minimum": 1},
    },
}


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spmcount",
        description="Exact counts of disjoint pairs of block permutation matrices.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    compute = sub.add_parser("compute", help="compute one quantity for one n")
    compute.add_argument("--n", type=int, required=True, help="block size")
    compute.add_argument(
        "--quantity",
        required=True,
        choices=["xi", "eta", "p", "q", "sigma"],
        help="xi: disjoint from a fixed matrix; eta: unordered disjoint pairs; "
        "p: disjointness probability; q: agreement layer sum (needs --k); "
        "sigma: total matrix count",
    )
    compute.add_argument("--k", type=int, help="layer for --quantity q")
    compute.add_argument("--digits", type=int, default=16, help="significant digits for p")
    compute.add_argument("--workers", type=int, help="parallel workers (default $SPMCOUNT_WORKERS or 1)")
    compute.add_argument("--format", choices=["text", "json"], default="text")
    compute.add_argument("--checkpoint", metavar="PATH", help="resumable cursor file")
    compute.add_argument("--force", action="store_true", help="override the n guard")

    table = sub.add_parser("table", help="xi, eta, p for n = 2..max-n")
    table.add_argument("--max-n", type=int, default=4, dest="max_n")
    table.add_argument("--digits", type=int, default=16)
    table.add_argument("--workers", type=int)
    table.add_argument("--format", choices=["text", "json"], default="text")
    table.add_argument("--force", action="store_true")

    verify = sub.add_parser("verify", help="run the cross-check suites")
    verify.add_argument("--max-n", type=int, default=3, dest="max_n")
    verify.add_argument("--golden", metavar="PATH", help="alternate reference table")

    sample = sub.add_parser("sample", help="print seeded random matrices")
    sample.add_argument("--n", type=int, required=True)
    sample.add_argument("--count", type=int, default=1)
    sample.add_argument("--seed", type=int, default=0)
    sample.add_argument(
        "--check-disjoint",
        action="store_true",
        help="also print the disjoint fraction over consecutive pairs of distinct draws",
    )

    oracle = sub.add_parser("oracle", help="brute-force recounts (n <= 3)")
    oracle.add_argument("--n", type=int, required=True)
    oracle.add_argument(
        "--quantity",
        default="xi",
        choices=["xi", "q", "histogram", "family"],
        help="xi: brute disjoint count; q: brute layer sum (needs --k); "
        "histogram: agreement histogram; family: disjoint family search",
    )
    oracle.add_argument("--k", type=int)

    return parser


def _record(n, quantity, value, *, k=None, value_ratio=None, digits=None, start, workers):
    return {
        "n": n,
        "quantity": quantity,
        "k": k,
        "value": value,
        "value_ratio": value_ratio,
        "digits": digits,
        "elapsed_ms": int((time.perf_counter() - start) * 1000),
        "workers": workers,
    }


def _compute_record(n, quantity, k, digits, workers, checkpoint, force):
    resolved = resolve_workers(workers)
    start = time.perf_counter()
    if quantity == "xi":
        value = count_disjoint(n, workers=resolved, checkpoint=checkpoint, force=force)
        return _record(n, "xi", str(value), start=start, workers=resolved)
    if quantity == "eta":
        value = count_disjoint_pairs(n, workers=resolved, checkpoint=checkpoint, force=force)
        return _record(n, "eta", str(value), start=start, workers=resolved)
    if quantity == "sigma":
        return _record(n, "sigma", str(s_permutation_count(n)), start=start, workers=resolved)
    if quantity == "q":
        if k is None:
            raise _Usage("--quantity q needs --k")
        value = agreement_layer_sum(
            n, k, workers=resolved, checkpoint=checkpoint, force=force
        )
        return _record(n, "q", str(value), k=k, start=start, workers=resolved)
    exact = disjoint_probability(n, workers=resolved, checkpoint=checkpoint, force=force)
    return _record(
        n,
        "p",
        render_ratio(exact, digits),
        value_ratio=f"{exact.numerator}/{exact.denominator}",
        digits=digits,
        start=start,
        workers=resolved,
    )


class _Usage(Exception):
    pass


def _print_record(record, fmt):
    if fmt == "json":
        print(json.dumps(record, indent=2))
        return
    quantity = record["quantity"]
    label = (
        f"{quantity}({record['n']},{record['k']})"
        if quantity == "q"
        else f"{quantity}({record['n']})"
    )
    tail = f" (= {record['value_ratio']})" if record["value_ratio"] else ""
    print(f"{label} = {record['value']}{tail}")


def cmd_compute(ns) -> int:
    if ns.digits < 1:
        raise _Usage(f"--digits must be positive, got {ns.digits}")
    record = _compute_record(
        ns.n, ns.quantity, ns.k, ns.digits, ns.workers, ns.checkpoint, ns.force
    )
    _print_record(record, ns.format)
    return 0


def cmd_table(ns) -> int:
    if ns.max_n < 2:
        raise _Usage(f"--max-n must be at least 2, got {ns.max_n}")
    records = []
    for n in range(2, ns.max_n + 1):
        for quantity in ("xi", "eta", "p"):
            records.append(
                _compute_record(n, quantity, None, ns.digits, ns.workers, None, ns.force)
            )
    if ns.format == "json":
        print(json.dumps(records, indent=2))
        return 0
    by_n = {}
    for record in records:
        by_n.setdefault(record["n"], {})[record["quantity"]] = record["value"]
    width = max(len(row["xi"]) for row in by_n.values())
    ewidth = max(len(row["eta"]) for row in by_n.values())
    print(f"{'n':>2}  {'xi':>{width}}  {'eta':>{ewidth}}  p")
    for n in sorted(by_n):
        row = by_n[n]
        print(f"{n:>2}  {row['xi']:>{width}}  {row['eta']:>{ewidth}}  {row['p']}")
    return 0


def cmd_verify(ns) -> int:
    if ns.max_n < 2:
        raise _Usage(f"--max-n must be at least 2, got {ns.max_n}")
    results = run_checks(max_n=ns.max_n, golden_path=ns.golden)
    for result in results:
        mark = "PASS" if result.passed else "FAIL"
        print(f"{mark} {result.name}" + ("" if result.passed else f" ({result.detail})"))
    failures = [result for result in results if not result.passed]
    print(f"{len(results) - len(failures)}/{len(results)} checks passed")
    if failures:
        print(f"first failure: {failures[0].name}", file=sys.stderr)
        return VERIFY_EXIT
    return 0


def cmd_sample(ns) -> int:
    if ns.count < 1:
        raise _Usage(f"--count must be positive, got {ns.count}")
    stream = random_s_permutations(ns.n, ns.seed)
    drawn = [next(stream) for _ in range(ns.count)]
    for i, matrix in enumerate(drawn):
        if i:
            print()
        print(matrix.to_binary().to_text())
    if ns.check_disjoint:
        if ns.count < 2:
            print("\ndisjoint fraction: needs at least 2 matrices", file=sys.stderr)
            return 0
        # The estimated probability is over pairs of distinct matrices, so
        # pairs whose two draws coincide are left out of both counts.
        hits = kept = 0
        for i in range(ns.count // 2):
            left, right = drawn[2 * i], drawn[2 * i + 1]
            if left == right:
                continue
            kept += 1
            hits += is_disjoint_pairs(to_pair_matrix(left), to_pair_matrix(right))
        if kept == 0:
            print("\ndisjoint fraction: every pair drew the same matrix twice", file=sys.stderr)
        else:
            print(f"\ndisjoint fraction: {hits}/{kept} = {hits / kept:.4f}")
    return 0


def cmd_oracle(ns) -> int:
    if ns.quantity == "xi":
        print(f"brute xi({ns.n}) = {brute_xi(ns.n)}")
        return 0
    if ns.quantity == "q":
        if ns.k is None:
            raise _Usage("--quantity q needs --k")
        print(f"brute q({ns.n},{ns.k}) = {brute_q(ns.n, ns.k)}")
        return 0
    if ns.quantity == "histogram":
        for agreements, count in agreement_histogram(ns.n).items():
            print(f"{agreements} {count}")
        return 0
    family = search_disjoint_family(ns.n)
    for i, member in enumerate(family):
        if i:
            print()
        print(member.to_binary().to_text())
    return 0


_COMMANDS = {
    "compute": cmd_compute,
    "table": cmd_table,
    "verify": cmd_verify,
    "sample": cmd_sample,
    "oracle": cmd_oracle,
}


def run(argv=None) -> int:
    """Parse and dispatch; returns the process exit code."""
    parser = _parser()
    try:
        ns = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else USAGE_EXIT
    try:
        return _COMMANDS[ns.command](ns)
    except GuardError as exc:
        print(f"guard: {exc} (n={GUARD_N} is the default ceiling)", file=sys.stderr)
        return GUARD_EXIT
    except _Usage as exc:
        print(f"usage: {exc}", file=sys.stderr)
        return USAGE_EXIT
    except CheckpointError as exc:
        print(f"checkpoint: {exc}", file=sys.stderr)
        return USAGE_EXIT
    except (SPMCountError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_EXIT


def main() -> int:
    return run(sys.argv[1:])
