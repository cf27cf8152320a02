"""Exact counts of disjoint pairs of block permutation matrices.

A block permutation matrix is an n^2 x n^2 binary matrix with exactly one 1
in every row, column, and aligned n x n block; summing n^2 mutually disjoint
ones with weights 1..n^2 yields a Sudoku matrix. This package counts, in
exact big-integer arithmetic, how many such matrices are disjoint from a
fixed one, how many unordered disjoint pairs exist, and the probability
that two uniform random ones are disjoint, by inclusion-exclusion over
row-code classes of n x n binary matrices. A brute-force oracle layer
recounts everything on small instances.
"""

from .engine import (
    CheckpointState,
    agreement_layer_sum,
    class_term,
    count_disjoint,
    count_disjoint_pairs,
    disjoint_probability,
    render_ratio,
    resolve_workers,
    s_permutation_count,
)
from .errors import (
    CheckpointError,
    DimensionError,
    DisjointnessError,
    GuardError,
    InvariantError,
    ShapeError,
    SPMCountError,
)
from .matrices import (
    BinaryMatrix,
    PairMatrix,
    SPermutationMatrix,
    SudokuMatrix,
    agreement_count,
    compose_sudoku,
    decompose_sudoku,
    from_pair_matrix,
    is_disjoint_binary,
    is_disjoint_pairs,
    is_s_permutation,
    is_sudoku,
    pair_matrix_from_permutations,
    random_s_permutation,
    random_s_permutations,
    s_permutations_disjoint,
    to_pair_matrix,
)
from .oracle import (
    agreement_histogram,
    all_pair_matrices,
    brute_q,
    brute_xi,
    search_disjoint_family,
)
from .profiles import (
    GUARD_N,
    CanonicalClass,
    Profile,
    RowCode,
    bit,
    canonicalize,
    class_count,
    class_rank,
    class_unrank,
    decode_row_code,
    enumerate_classes,
    format_cursor,
    multiplicity,
    parse_cursor,
    profile,
    row_code,
)
from .rng import SplitMix64
from .verify import CheckResult, run_checks

__version__ = "0.1.0"

__all__ = [
    "BinaryMatrix",
    "CanonicalClass",
    "CheckResult",
    "CheckpointError",
    "CheckpointState",
    "DimensionError",
    "DisjointnessError",
    "GUARD_N",
    "GuardError",
    "InvariantError",
    "PairMatrix",
    "Profile",
    "RowCode",
    "SPMCountError",
    "SPermutationMatrix",
    "ShapeError",
    "SplitMix64",
    "SudokuMatrix",
    "agreement_count",
    "agreement_histogram",
    "agreement_layer_sum",
    "all_pair_matrices",
    "bit",
    "brute_q",
    "brute_xi",
    "canonicalize",
    "class_count",
    "class_rank",
    "class_term",
    "class_unrank",
    "compose_sudoku",
    "count_disjoint",
    "count_disjoint_pairs",
    "decode_row_code",
    "decompose_sudoku",
    "disjoint_probability",
    "enumerate_classes",
    "format_cursor",
    "from_pair_matrix",
    "is_disjoint_binary",
    "is_disjoint_pairs",
    "is_s_permutation",
    "is_sudoku",
    "multiplicity",
    "pair_matrix_from_permutations",
    "parse_cursor",
    "profile",
    "random_s_permutation",
    "random_s_permutations",
    "render_ratio",
    "resolve_workers",
    "row_code",
    "run_checks",
    "s_permutation_count",
    "s_permutations_disjoint",
    "search_disjoint_family",
    "to_pair_matrix",
]
