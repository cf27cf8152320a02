"""Exact counting of disjoint pairs of block permutation matrices.

All quantities reduce to sums over the canonical row-code classes of n x n
binary matrices. A class with codes (x_1 <= ... <= x_n) contributes

    multiplicity * prod_i (n - ones(x_i))! * prod_u (n - t_u)!

where t_u counts the codes with digit u set. The count of matrices disjoint
from a fixed one alternates the sign of this term with the total number of
ones and skips classes with fewer than two ones (their two layers cancel
exactly); the per-layer sums keep the term unsigned and restrict to one
total. Everything is big-integer exact: no floats, no rounding, and worker
subtotals add to the same value no matter how the stream is partitioned.

The hot path never materializes class objects. It walks prefixes (the first
n - 1 codes) with an odometer and closes each block of classes sharing a
prefix in one inner loop, using three lookup tables: the per-code row factor
(n - ones)!; the per-code digit spread into 4-bit lanes, so that a single
integer addition accumulates all column sums at once (safe for n <= 15); and
a map from packed column sums to the ready-made signed or layered column
product. Class multiplicities come from run-length bookkeeping kept
incrementally on the prefix.
"""

from __future__ import annotations

import itertools
import json
import os
import tempfile
import time
from dataclasses import dataclass
from decimal import ROUND_HALF_EVEN, Decimal, localcontext
from fractions import Fraction
from math import comb, factorial, prod
from multiprocessing import Pool

from .errors import CheckpointError, GuardError, InvariantError
from .profiles import (
    GUARD_N,
    CanonicalClass,
    Profile,
    _nd_rank,
    _nd_unrank,
    format_cursor,
    multiplicity,
    parse_cursor,
)

# prefixes per task; also the checkpoint cadence on long runs
CHUNK_PREFIXES = 1 << 17

WORKERS_ENV = "SPMCOUNT_WORKERS"


def _check_range(n: int, force: bool) -> None:
    if n < 2:
        raise ValueError(f"n must be at least 2, got {n}")
    if n > GUARD_N and not force:
        raise GuardError(
            f"n={n} exceeds the guard ({GUARD_N} by default); pass force to override"
        )


def resolve_workers(workers: int | None) -> int:
    """Explicit count, else the SPMCOUNT_WORKERS variable, else 1."""
    if workers is None:
        env = os.environ.get(WORKERS_ENV)
        workers = int(env) if env else 1
    if workers < 1:
        raise ValueError(f"workers must be positive, got {workers}")
    return workers


def s_permutation_count(n: int) -> int:
    """Total number of n^2 x n^2 block permutation matrices: (n!)^(2n)."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    return factorial(n) ** (2 * n)


def class_term(cls: CanonicalClass, prof: Profile) -> int:
    """Signed per-class term; prof must be the profile of cls.

    The factor for k-one rows and columns is (n - k)!, raised to the
    combined count psi[k]; indices k = n - 1 and n contribute factor 1 and
    are skipped. The sign alternates with the total number of ones. No
    small-count filter is applied here; the disjoint count drops classes
    with fewer than two ones itself.
    """
    n = cls.n
    value = multiplicity(cls)
    for i in range(n - 1):
        value *= factorial(n - i) ** prof.psi[i]
    return -value if prof.eps % 2 else value


# per-process caches; workers fill their own on first use
_TABLES: dict[int, tuple] = {}
_COLUMN_TABLES: dict[tuple[int, int | None], dict[int, int]] = {}


def _tables(n: int):
    try:
        return _TABLES[n]
    except KeyError:
        pass
    if n > 15:
        raise GuardError(f"packed column sums support n <= 15, got n={n}")
    m = 1 << n
    fact = [factorial(i) for i in range(n + 1)]
    row_factor = [fact[n - v.bit_count()] for v in range(m)]
    spread = [
        sum(((v >> u) & 1) << (4 * u) for u in range(n)) for v in range(m)
    ]
    # tails[lo] pairs (row factor, spread) for every code from lo upward
    tails = [tuple(zip(row_factor[lo:], spread[lo:])) for lo in range(m)]
    entry = (fact, row_factor, spread, tails)
    _TABLES[n] = entry
    return entry


def _column_table(n: int, layer: int | None) -> dict[int, int]:
    """Packed column sums -> finished column factor.

    layer None builds the signed table for the disjoint count: the product
    of (n - t_u)! carrying sign (-1)^(sum of sums), zeroed below two total
    ones. An integer layer builds the unsigned table that keeps only the
    requested total.
    """
    key = (n, layer)
    try:
        return _COLUMN_TABLES[key]
    except KeyError:
        pass
    fact = _tables(n)[0]
    table = {}
    for sums in itertools.product(range(n + 1), repeat=n):
        packed = 0
        for u, t in enumerate(sums):
            packed |= t << (4 * u)
        total = sum(sums)
        if layer is None:
            if total < 2:
                weight = 0
            else:
                weight = prod(fact[n - t] for t in sums)
                if total % 2:
                    weight = -weight
        else:
            weight = prod(fact[n - t] for t in sums) if total == layer else 0
        table[packed] = weight
    _COLUMN_TABLES[key] = table
    return table


def _prefix_count(n: int) -> int:
    return comb((1 << n) + n - 2, n - 1)


def _prefix_state(prefix, fact, row_factor, spread):
    """(packed column sums, row product, run divisor, trailing run length)."""
    sums = 0
    rows = 1
    for x in prefix:
        sums += spread[x]
        rows *= row_factor[x]
    divisor = 1
    run = 1
    for idx in range(1, len(prefix)):
        if prefix[idx] == prefix[idx - 1]:
            run += 1
        else:
            divisor *= fact[run]
            run = 1
    divisor *= fact[run]
    return sums, rows, divisor, run


def _range_sum(
    n: int,
    layer: int | None,
    start_rank: int,
    end_rank: int,
    first_value: int | None = None,
) -> int:
    """Sum of class terms over the prefix blocks [start_rank, end_rank).

    A block is the run of classes sharing their first n - 1 codes; blocks
    are addressed by the lexicographic rank of that prefix. first_value
    trims the first block to final codes >= first_value, which is how a
    resumed run re-enters mid-block.
    """
    fact, row_factor, spread, tails = _tables(n)
    weights = _column_table(n, layer)
    m = 1 << n
    nfact = fact[n]
    length = n - 1
    prefix = list(_nd_unrank(m, length, start_rank))
    sums, rows, divisor, run = _prefix_state(prefix, fact, row_factor, spread)
    total = 0
    rank = start_rank
    while rank < end_rank:
        last = prefix[-1]
        pairs = tails[last]
        if first_value is not None and rank == start_rank and first_value > last:
            # resuming inside the block: the repeated-code slot is done
            mult = nfact // divisor
            sub = 0
            for rf, b in pairs[first_value - last :]:
                sub += rf * weights[sums + b]
            total += rows * mult * sub
        else:
            # the final code equal to the prefix tail extends its run; any
            # larger code opens a fresh run of one
            mult_eq = nfact // (divisor * (run + 1))
            mult_gt = nfact // divisor
            rf0, b0 = pairs[0]
            head = mult_eq * rf0 * weights[sums + b0]
            sub = 0
            for rf, b in pairs[1:]:
                sub += rf * weights[sums + b]
            total += rows * (head + mult_gt * sub)
        rank += 1
        if rank == end_rank:
            break
        if last < m - 1:
            new = last + 1
            prefix[-1] = new
            sums += spread[new] - spread[last]
            rows = rows // row_factor[last] * row_factor[new]
            divisor //= run
            run = 1
        else:
            i = length - 1
            while i >= 0 and prefix[i] == m - 1:
                i -= 1
            if i < 0:
                break
            new = prefix[i] + 1
            for j in range(i, length):
                prefix[j] = new
            sums, rows, divisor, run = _prefix_state(
                prefix, fact, row_factor, spread
            )
    return total


def _range_task(args) -> int:
    return _range_sum(*args)


@dataclass(frozen=True)
class CheckpointState:
    """Loaded checkpoint: the next class to process and the sum so far."""

    cursor: tuple[int, ...] | None
    partial: int
    complete: bool


class _Checkpoint:
    """Atomic JSON cursor file keyed to one (n, quantity, k) run."""

    VERSION = 1

    def __init__(self, path, n: int, quantity: str, k: int | None):
        self.path = os.fspath(path)
        self.n = n
        self.quantity = quantity
        self.k = k

    def load(self) -> CheckpointState | None:
        if not os.path.exists(self.path):
            return None
        try:
            with open(self.path, "r", encoding="utf-8") as fh:
                data = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise CheckpointError(f"unreadable checkpoint {self.path}: {exc}") from None
        if not isinstance(data, dict) or data.get("version") != self.VERSION:
            raise CheckpointError(f"unsupported checkpoint version in {self.path}")
        for field, expected in (("n", self.n), ("quantity", self.quantity), ("k", self.k)):
            if data.get(field) != expected:
                raise CheckpointError(
                    f"checkpoint {self.path} was written for "
                    f"{field}={data.get(field)!r}, this run has {field}={expected!r}"
                )
        try:
            partial = int(data["partial"])
            complete = bool(data["complete"])
            cursor = None if complete else parse_cursor(data["cursor"], self.n)
        except (KeyError, TypeError, ValueError) as exc:
            raise CheckpointError(f"malformed checkpoint {self.path}: {exc}") from None
        return CheckpointState(cursor, partial, complete)

    def _write(self, cursor: tuple[int, ...] | None, partial: int, complete: bool):
        payload = {
            "version": self.VERSION,
            "n": self.n,
            "quantity": self.quantity,
            "k": self.k,
            "cursor": None if cursor is None else format_cursor(cursor),
            "partial": str(partial),
            "complete": complete,
        }
        directory = os.path.dirname(os.path.abspath(self.path)) or "."
        fd, tmp = tempfile.mkstemp(dir=directory, prefix=".ckpt-", suffix=".json")
        try:
            with os.fdopen(fd, "w", encoding="utf-8") as fh:
                json.dump(payload, fh)
                fh.flush()
                os.fsync(fh.fileno())
            os.replace(tmp, self.path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise

    def save(self, cursor: tuple[int, ...], partial: int):
        self._write(cursor, partial, False)

    def finish(self, total: int):
        self._write(None, total, True)


def _ranged_total(
    n: int,
    layer: int | None,
    workers: int,
    checkpoint_path,
) -> int:
    """Deterministic reduce of _range_sum over the whole class stream."""
    m = 1 << n
    prefixes = _prefix_count(n)
    start_rank = 0
    first_value = None
    total = 0
    checkpoint = None
    if checkpoint_path is not None:
        quantity = "xi" if layer is None else "q"
        checkpoint = _Checkpoint(checkpoint_path, n, quantity, layer)
        state = checkpoint.load()
        if state is not None:
            if state.complete:
                return state.partial
            start_rank = _nd_rank(m, state.cursor[:-1])
            first_value = state.cursor[-1]
            total = state.partial
    chunk = min(CHUNK_PREFIXES, max(1, -(-prefixes // (workers * 4))))
    tasks = []
    s = start_rank
    while s < prefixes:
        e = min(s + chunk, prefixes)
        tasks.append((n, layer, s, e, first_value if s == start_rank else None))
        s = e

    def fold(end_rank: int, subtotal: int, running: int) -> int:
        running += subtotal
        if checkpoint is not None and end_rank < prefixes:
            head = _nd_unrank(m, n - 1, end_rank)
            checkpoint.save(head + (head[-1],), running)
        return running

    if workers == 1:
        for task in tasks:
            total = fold(task[3], _range_sum(*task), total)
    else:
        with Pool(processes=workers) as pool:
            for task, subtotal in zip(tasks, pool.imap(_range_task, tasks)):
                total = fold(task[3], subtotal, total)
    if checkpoint is not None:
        checkpoint.finish(total)
    return total


def count_disjoint(
    n: int,
    *,
    workers: int | None = None,
    checkpoint=None,
    force: bool = False,
) -> int:
    """Number of block permutation matrices disjoint from a fixed one.

    The result does not depend on which matrix is fixed. CLI quantity
    token: xi.
    """
    _check_range(n, force)
    return _ranged_total(n, None, resolve_workers(workers), checkpoint)


def agreement_layer_sum(
    n: int,
    k: int,
    *,
    workers: int | None = None,
    checkpoint=None,
    force: bool = False,
) -> int:
    """Weighted count of matrices agreeing with a fixed one on a k-cell set.

    Sums, over all placements of k ones in an n x n grid, the number of
    block permutation matrices that match a fixed one at least on those
    cells. These are the inclusion-exclusion layers of the disjoint count.
    CLI quantity token: q.
    """
    _check_range(n, force)
    if not 0 <= k <= n * n:
        raise ValueError(f"k must lie in [0, {n * n}], got {k}")
    return _ranged_total(n, k, resolve_workers(workers), checkpoint)


def count_disjoint_pairs(
    n: int,
    *,
    workers: int | None = None,
    checkpoint=None,
    force: bool = False,
) -> int:
    """Number of unordered disjoint pairs: total/2 times the per-matrix count.

    CLI quantity token: eta.
    """
    disjoint = count_disjoint(n, workers=workers, checkpoint=checkpoint, force=force)
    product = s_permutation_count(n) * disjoint
    if product % 2:
        raise InvariantError(f"pair product {product} is odd; halving would truncate")
    return product // 2


def disjoint_probability(
    n: int,
    *,
    workers: int | None = None,
    checkpoint=None,
    force: bool = False,
) -> Fraction:
    """Chance that two uniform random block permutation matrices are disjoint.

    Exact ratio of the disjoint count to the number of partners (total - 1).
    CLI quantity token: p.
    """
    disjoint = count_disjoint(n, workers=workers, checkpoint=checkpoint, force=force)
    return Fraction(disjoint, s_permutation_count(n) - 1)


def render_ratio(value: Fraction, digits: int = 16) -> str:
    """Decimal string of an exact ratio, round-half-even significant digits."""
    if digits < 1:
        raise ValueError(f"digits must be positive, got {digits}")
    with localcontext() as ctx:
        ctx.prec = digits
        ctx.rounding = ROUND_HALF_EVEN
        quotient = Decimal(value.numerator) / Decimal(value.denominator)
    return format(quotient, "f")


def elapsed_ms(start: float) -> int:
    """Whole milliseconds since a time.perf_counter() mark."""
    return int((time.perf_counter() - start) * 1000)
