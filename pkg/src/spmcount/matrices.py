"""Matrix types for the disjoint-pair counting problem.

A block permutation matrix here is an n^2 x n^2 binary matrix with exactly
one 1 in every row, every column, and every aligned n x n block (an
"S-permutation" matrix). Such a matrix is fully described by the within-block
coordinates of the single 1 of each block, which gives an equivalent n x n
matrix of ordered pairs: first components form a permutation along every row,
second components along every column. Two matrices are disjoint when they
never place a 1 in the same cell; in pair form, when no cell holds the same
ordered pair in both.

Summing n^2 mutually disjoint block permutation matrices with weights
1..n^2 yields a Sudoku matrix, and every Sudoku matrix splits this way.

Indexing in documentation and error messages is 1-based.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Sequence

from .errors import DimensionError, DisjointnessError, InvariantError, ShapeError
from .rng import SplitMix64

Pair = tuple[int, int]


def _freeze_rows(rows) -> tuple[tuple, ...]:
    return tuple(tuple(row) for row in rows)


@dataclass(frozen=True)
class BinaryMatrix:
    """Square matrix over {0, 1}, stored as a tuple of row tuples."""

    cells: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "cells", _freeze_rows(self.cells))
        n = len(self.cells)
        if n < 1:
            raise InvariantError("matrix must have at least one row")
        for i, row in enumerate(self.cells, start=1):
            if len(row) != n:
                raise InvariantError(f"row {i} has {len(row)} cells, expected {n}")
            for j, cell in enumerate(row, start=1):
                if cell not in (0, 1):
                    raise InvariantError(f"cell ({i},{j}) is {cell!r}, expected 0 or 1")

    @property
    def n(self) -> int:
        return len(self.cells)

    def to_text(self) -> str:
        return "\n".join(" ".join(str(c) for c in row) for row in self.cells)

    @classmethod
    def from_text(cls, text: str) -> "BinaryMatrix":
        rows = [[int(tok) for tok in line.split()] for line in text.strip().splitlines()]
        return cls(_freeze_rows(rows))


@dataclass(frozen=True)
class PairMatrix:
    """n x n matrix of ordered pairs <a, b> with 1 <= a, b <= n.

    First components form a permutation of 1..n along every row, second
    components along every column.
    """

    cells: tuple[tuple[Pair, ...], ...]

    def __post_init__(self):
        object.__setattr__(
            self, "cells", tuple(tuple((p[0], p[1]) for p in row) for row in self.cells)
        )
        n = len(self.cells)
        if n < 1:
            raise InvariantError("matrix must have at least one row")
        full = frozenset(range(1, n + 1))
        for i, row in enumerate(self.cells, start=1):
            if len(row) != n:
                raise InvariantError(f"row {i} has {len(row)} cells, expected {n}")
            if frozenset(p[0] for p in row) != full:
                raise InvariantError(f"first components of row {i} are not a permutation of 1..{n}")
        for j in range(n):
            if frozenset(self.cells[i][j][1] for i in range(n)) != full:
                raise InvariantError(
                    f"second components of column {j + 1} are not a permutation of 1..{n}"
                )
        for i, row in enumerate(self.cells, start=1):
            for j, (a, b) in enumerate(row, start=1):
                if not (1 <= a <= n and 1 <= b <= n):
                    raise InvariantError(f"cell ({i},{j}) holds <{a},{b}>, outside 1..{n}")

    @property
    def n(self) -> int:
        return len(self.cells)

    def to_text(self) -> str:
        return "\n".join(" ".join(f"{a},{b}" for a, b in row) for row in self.cells)

    @classmethod
    def from_text(cls, text: str) -> "PairMatrix":
        rows = []
        for line in text.strip().splitlines():
            row = []
            for tok in line.split():
                a, b = tok.split(",")
                row.append((int(a), int(b)))
            rows.append(tuple(row))
        return cls(tuple(rows))


@dataclass(frozen=True)
class SPermutationMatrix:
    """Block permutation matrix in compact form.

    block_coords[k][l] is the (row, column) position, 1-based and local to the
    block, of the single 1 inside block (k+1, l+1). The compact form is O(n^2)
    while the dense matrix is O(n^4); the dense form is materialized on demand.
    """

    block_coords: tuple[tuple[Pair, ...], ...]

    def __post_init__(self):
        object.__setattr__(
            self,
            "block_coords",
            tuple(tuple((p[0], p[1]) for p in row) for row in self.block_coords),
        )
        n = len(self.block_coords)
        if n < 1:
            raise InvariantError("matrix must have at least one block row")
        full = frozenset(range(1, n + 1))
        for k, row in enumerate(self.block_coords, start=1):
            if len(row) != n:
                raise InvariantError(f"block row {k} has {len(row)} blocks, expected {n}")
            # one 1 per full row <=> local row coordinates across a block row
            # are a permutation; likewise for columns below
            if frozenset(p[0] for p in row) != full:
                raise InvariantError(f"block row {k} reuses a local row coordinate")
        for l in range(n):
            if frozenset(self.block_coords[k][l][1] for k in range(n)) != full:
                raise InvariantError(f"block column {l + 1} reuses a local column coordinate")

    @property
    def n(self) -> int:
        return len(self.block_coords)

    @property
    def side(self) -> int:
        return self.n * self.n

    def to_binary(self) -> BinaryMatrix:
        """Materialize the dense n^2 x n^2 binary matrix."""
        n = self.n
        side = n * n
        grid = [[0] * side for _ in range(side)]
        for k in range(n):
            for l in range(n):
                a, b = self.block_coords[k][l]
                grid[k * n + a - 1][l * n + b - 1] = 1
        return BinaryMatrix(_freeze_rows(grid))

    @classmethod
    def from_binary(cls, dense: BinaryMatrix) -> "SPermutationMatrix":
        """Read the compact form off a dense matrix; raises if it is not valid."""
        n = _block_side(dense.n)
        coords = []
        for k in range(n):
            row = []
            for l in range(n):
                found = None
                for a in range(1, n + 1):
                    for b in range(1, n + 1):
                        if dense.cells[k * n + a - 1][l * n + b - 1]:
                            if found is not None:
                                raise InvariantError(f"block ({k + 1},{l + 1}) contains more than one 1")
                            found = (a, b)
                if found is None:
                    raise InvariantError(f"block ({k + 1},{l + 1}) contains no 1")
                row.append(found)
            coords.append(tuple(row))
        return cls(tuple(coords))

    def to_text(self) -> str:
        return self.to_binary().to_text()


@dataclass(frozen=True)
class SudokuMatrix:
    """n^2 x n^2 matrix over 1..n^2 whose rows, columns, and blocks are permutations."""

    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "entries", _freeze_rows(self.entries))
        side = len(self.entries)
        n = _block_side(side)
        full = frozenset(range(1, side + 1))
        for i, row in enumerate(self.entries, start=1):
            if len(row) != side:
                raise InvariantError(f"row {i} has {len(row)} cells, expected {side}")
            if frozenset(row) != full:
                raise InvariantError(f"row {i} is not a permutation of 1..{side}")
        for j in range(side):
            if frozenset(self.entries[i][j] for i in range(side)) != full:
                raise InvariantError(f"column {j + 1} is not a permutation of 1..{side}")
        for k in range(n):
            for l in range(n):
                block = frozenset(
                    self.entries[k * n + a][l * n + b] for a in range(n) for b in range(n)
                )
                if block != full:
                    raise InvariantError(f"block ({k + 1},{l + 1}) is not a permutation of 1..{side}")

    @property
    def side(self) -> int:
        return len(self.entries)

    @property
    def n(self) -> int:
        return _block_side(self.side)

    def to_text(self) -> str:
        return "\n".join(" ".join(str(c) for c in row) for row in self.entries)


def _block_side(side: int) -> int:
    """Block size n for a given full side n^2; raises ShapeError otherwise."""
    n = math.isqrt(side)
    if n * n != side:
        raise ShapeError(f"side {side} is not a perfect square")
    return n


def is_disjoint_binary(a: BinaryMatrix, b: BinaryMatrix) -> bool:
    """True when no cell holds 1 in both matrices."""
    if a.n != b.n:
        raise DimensionError(f"sides differ: {a.n} vs {b.n}")
    return not any(
        x and y for ra, rb in zip(a.cells, b.cells) for x, y in zip(ra, rb)
    )


def is_s_permutation(a: BinaryMatrix) -> bool:
    """True when the matrix has exactly one 1 per row, column, and block."""
    n = _block_side(a.n)
    side = a.n
    for row in a.cells:
        if sum(row) != 1:
            return False
    for j in range(side):
        if sum(a.cells[i][j] for i in range(side)) != 1:
            return False
    for k in range(n):
        for l in range(n):
            ones = sum(
                a.cells[k * n + da][l * n + db] for da in range(n) for db in range(n)
            )
            if ones != 1:
                return False
    return True


def to_pair_matrix(a: SPermutationMatrix) -> PairMatrix:
    """Pair form of a block permutation matrix: cell (i,j) holds the local
    coordinates of the 1 in block (i,j)."""
    return PairMatrix(a.block_coords)


def from_pair_matrix(p: PairMatrix) -> SPermutationMatrix:
    """Inverse of to_pair_matrix: place one 1 per block at the given local spot."""
    return SPermutationMatrix(p.cells)


def pair_matrix_from_permutations(
    rows: Sequence[Sequence[int]], cols: Sequence[Sequence[int]]
) -> PairMatrix:
    """Build the pair matrix whose cell (i,j) is <rows[i](j), cols[j](i)>.

    rows and cols each hold n permutations of 1..n; distinct inputs give
    distinct matrices, and every pair matrix arises exactly once this way.
    """
    n = len(rows)
    if len(cols) != n:
        raise DimensionError(f"{len(rows)} row permutations but {len(cols)} column permutations")
    full = frozenset(range(1, n + 1))
    for label, group in (("row", rows), ("column", cols)):
        for idx, perm in enumerate(group, start=1):
            if len(perm) != n or frozenset(perm) != full:
                raise InvariantError(f"{label} input {idx} is not a permutation of 1..{n}")
    cells = tuple(
        tuple((rows[i][j], cols[j][i]) for j in range(n)) for i in range(n)
    )
    return PairMatrix(cells)


def agreement_count(p: PairMatrix, q: PairMatrix) -> int:
    """Number of cells holding the same ordered pair in both matrices."""
    if p.n != q.n:
        raise DimensionError(f"sides differ: {p.n} vs {q.n}")
    return sum(
        x == y for rp, rq in zip(p.cells, q.cells) for x, y in zip(rp, rq)
    )


def is_disjoint_pairs(p: PairMatrix, q: PairMatrix) -> bool:
    """True when the two pair matrices agree in no cell."""
    return agreement_count(p, q) == 0


def s_permutations_disjoint(a: SPermutationMatrix, b: SPermutationMatrix) -> bool:
    """Disjointness on compact forms: no block holds its 1 at the same spot."""
    if a.n != b.n:
        raise DimensionError(f"sides differ: {a.n} vs {b.n}")
    return not any(
        x == y for ra, rb in zip(a.block_coords, b.block_coords) for x, y in zip(ra, rb)
    )


def compose_sudoku(family: Sequence[SPermutationMatrix]) -> SudokuMatrix:
    """Weighted sum 1*A1 + 2*A2 + ... + n^2*An2 of a pairwise disjoint family.

    Raises DimensionError when the family does not have exactly n^2 members
    and DisjointnessError naming the first offending pair.
    """
    if not family:
        raise DimensionError("family is empty")
    n = family[0].n
    for idx, member in enumerate(family, start=1):
        if member.n != n:
            raise DimensionError(f"family member {idx} has block size {member.n}, expected {n}")
    if len(family) != n * n:
        raise DimensionError(f"family has {len(family)} members, expected {n * n}")
    for i in range(len(family)):
        for j in range(i + 1, len(family)):
            if not s_permutations_disjoint(family[i], family[j]):
                raise DisjointnessError(i + 1, j + 1)
    side = n * n
    grid = [[0] * side for _ in range(side)]
    for weight, member in enumerate(family, start=1):
        for k in range(n):
            for l in range(n):
                a, b = member.block_coords[k][l]
                grid[k * n + a - 1][l * n + b - 1] = weight
    return SudokuMatrix(_freeze_rows(grid))


def decompose_sudoku(m: SudokuMatrix) -> list[SPermutationMatrix]:
    """Split a Sudoku matrix into the indicator matrices of its symbols 1..n^2."""
    n = m.n
    out = []
    for symbol in range(1, m.side + 1):
        coords = []
        for k in range(n):
            row = []
            for l in range(n):
                spot = None
                for a in range(n):
                    for b in range(n):
                        if m.entries[k * n + a][l * n + b] == symbol:
                            spot = (a + 1, b + 1)
                row.append(spot)
            coords.append(tuple(row))
        out.append(SPermutationMatrix(tuple(coords)))
    return out


def is_sudoku(m) -> bool:
    """True when every row, column, and block is a permutation of 1..n^2.

    Accepts a SudokuMatrix or any square sequence of integer rows.
    """
    if isinstance(m, SudokuMatrix):
        return True
    rows = _freeze_rows(m)
    side = len(rows)
    n = _block_side(side)
    full = frozenset(range(1, side + 1))
    if any(len(row) != side for row in rows):
        return False
    if any(frozenset(row) != full for row in rows):
        return False
    for j in range(side):
        if frozenset(rows[i][j] for i in range(side)) != full:
            return False
    for k in range(n):
        for l in range(n):
            block = frozenset(rows[k * n + a][l * n + b] for a in range(n) for b in range(n))
            if block != full:
                return False
    return True


def random_s_permutations(n: int, seed: int) -> Iterator[SPermutationMatrix]:
    """Endless stream of uniform random block permutation matrices.

    Draws 2n permutations per matrix from one splitmix64 stream: the n row
    permutations first, then the n column permutations.
    """
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    gen = SplitMix64(seed)
    while True:
        rows = [gen.permutation(n) for _ in range(n)]
        cols = [gen.permutation(n) for _ in range(n)]
        yield from_pair_matrix(pair_matrix_from_permutations(rows, cols))


def random_s_permutation(n: int, seed: int) -> SPermutationMatrix:
    """First matrix of the seeded stream; same seed, same output."""
    return next(random_s_permutations(n, seed))
