"""Brute-force ground truth for the counting engine, small n only.

Everything here counts by materializing matrices and comparing cells
position by position; none of it shares a code path with the class-sum
engine it cross-checks. Pool sizes grow as (n!)^(2n), so the oracles stop
at n = 3 (46 656 matrices).
"""

from __future__ import annotations

import itertools
from collections import Counter
from functools import lru_cache
from math import comb

from .errors import GuardError, InvariantError
from .matrices import (
    PairMatrix,
    SPermutationMatrix,
    agreement_count,
    from_pair_matrix,
    pair_matrix_from_permutations,
    s_permutations_disjoint,
)

POOL_GUARD_N = 3


def _check_pool_guard(n: int) -> None:
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    if n > POOL_GUARD_N:
        raise GuardError(
            f"brute force stops at n={POOL_GUARD_N}; n={n} would need "
            f"a pool far past desk scale"
        )


@lru_cache(maxsize=None)
def all_pair_matrices(n: int) -> tuple[PairMatrix, ...]:
    """Every pair matrix, built from all (2n)-tuples of permutations.

    Deduplicated by value; the construction is injective, so the result
    has exactly (n!)^(2n) members.
    """
    _check_pool_guard(n)
    perms = list(itertools.permutations(range(1, n + 1)))
    seen = {}
    for rows in itertools.product(perms, repeat=n):
        for cols in itertools.product(perms, repeat=n):
            built = pair_matrix_from_permutations(rows, cols)
            seen[built.cells] = built
    return tuple(seen.values())


def default_base(n: int) -> PairMatrix:
    """Fixed reference matrix: the one built from all identity permutations."""
    identity = tuple(range(1, n + 1))
    return pair_matrix_from_permutations([identity] * n, [identity] * n)


def brute_xi(n: int, base: PairMatrix | None = None) -> int:
    """Count pool members sharing no cell with the base, by direct scan."""
    if n < 2:
        raise ValueError(f"n must be at least 2, got {n}")
    _check_pool_guard(n)
    if base is None:
        base = default_base(n)
    return sum(
        1 for other in all_pair_matrices(n) if agreement_count(base, other) == 0
    )


def _agreement_masks(n: int, base: PairMatrix) -> Counter:
    """How many pool members produce each cell-agreement bitmask."""
    flat_base = tuple(cell for row in base.cells for cell in row)
    masks: Counter = Counter()
    for other in all_pair_matrices(n):
        mask = 0
        position = 0
        for row in other.cells:
            for cell in row:
                if cell == flat_base[position]:
                    mask |= 1 << position
                position += 1
        masks[mask] += 1
    return masks


def brute_q(n: int, k: int) -> int:
    """Sum over all k-cell sets of the members matching the base there.

    Counts by direct support filtering: for each placement of k marked
    cells, how many pool members agree with the base on every marked cell.
    Kept to n=2 (any k) and n=3 with k <= 3 for cost control.
    """
    if n < 2:
        raise ValueError(f"n must be at least 2, got {n}")
    _check_pool_guard(n)
    if not 0 <= k <= n * n:
        raise ValueError(f"k must lie in [0, {n * n}], got {k}")
    if n == 3 and k > 3:
        raise GuardError(f"n=3 supports stop at k=3 for cost control, got k={k}")
    masks = _agreement_masks(n, default_base(n))
    total = 0
    for support in itertools.combinations(range(n * n), k):
        bits = 0
        for cell in support:
            bits |= 1 << cell
        total += sum(
            count for mask, count in masks.items() if mask & bits == bits
        )
    return total


def agreement_histogram(n: int, base: PairMatrix | None = None) -> dict[int, int]:
    """Pool members by exact number of cells agreeing with the base.

    The zero bucket is the brute disjoint count; the buckets sum to the
    pool size; and sum_m C(m, k) * bucket(m) recovers the k-th layer sum.
    """
    _check_pool_guard(n)
    if base is None:
        base = default_base(n)
    histogram: dict[int, int] = {}
    for other in all_pair_matrices(n):
        agreements = agreement_count(base, other)
        histogram[agreements] = histogram.get(agreements, 0) + 1
    return dict(sorted(histogram.items()))


def histogram_layer_sum(histogram: dict[int, int], k: int) -> int:
    """k-th layer sum implied by an exact-agreement histogram."""
    return sum(comb(m, k) * count for m, count in histogram.items())


def search_disjoint_family(n: int) -> list[SPermutationMatrix]:
    """Exhaustive backtracking for n^2 pairwise disjoint matrices, n=2 only."""
    if n < 2:
        raise ValueError(f"n must be at least 2, got {n}")
    if n != 2:
        raise GuardError(f"family search is exhaustive and supports n=2 only, got {n}")
    pool = [from_pair_matrix(p) for p in all_pair_matrices(n)]
    want = n * n
    chosen: list[int] = []

    def extend(start: int) -> bool:
        if len(chosen) == want:
            return True
        for idx in range(start, len(pool)):
            if all(
                s_permutations_disjoint(pool[idx], pool[used]) for used in chosen
            ):
                chosen.append(idx)
                if extend(idx + 1):
                    return True
                chosen.pop()
        return False

    if not extend(0):
        raise InvariantError(f"no disjoint family of {want} found at n={n}")
    return [pool[idx] for idx in chosen]
