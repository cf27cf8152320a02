"""Row-code encoding of binary matrices and enumeration of canonical classes.

Reading each row of an n x n binary matrix as a binary numeral (column j is
digit j-1, a frozen convention) turns the matrix into an n-tuple of integers
in [0, 2^n - 1]. Permuting rows permutes the tuple, so every class of
matrices equal up to row order has exactly one non-decreasing tuple as its
canonical representative. The counting engine walks these classes instead of
all 2^(n^2) matrices: a class whose distinct values repeat z_1, ..., z_s
times stands for n!/(z_1! ... z_s!) matrices, and there are
C(2^n + n - 1, n) classes in total.

Class streams run in lexicographic order, so a (start, count) window is a
contiguous slice and concatenating adjacent slices restores the full stream.
Cursors serialize as comma-separated decimal tuples for resumable runs.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb, factorial
from typing import Iterator

from .errors import GuardError, InvariantError
from .matrices import BinaryMatrix

GUARD_N = 6


def check_guard(n: int, force: bool = False) -> None:
    """Refuse n beyond the default guard unless explicitly overridden.

    The class count grows like C(2^n + n - 1, n): about 1.2e8 at n=6 but
    1.1e12 at n=7, far past desk scale.
    """
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    if n > GUARD_N and not force:
        raise GuardError(
            f"n={n} exceeds the guard ({GUARD_N} by default); pass force to override"
        )


@dataclass(frozen=True)
class RowCode:
    """n-tuple of row values, each the binary reading of one matrix row."""

    n: int
    codes: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "codes", tuple(self.codes))
        if self.n < 1:
            raise InvariantError(f"n must be positive, got {self.n}")
        if len(self.codes) != self.n:
            raise InvariantError(f"{len(self.codes)} codes for n={self.n}")
        top = (1 << self.n) - 1
        for i, code in enumerate(self.codes, start=1):
            if not 0 <= code <= top:
                raise InvariantError(f"code {i} is {code}, outside [0, {top}]")


@dataclass(frozen=True)
class CanonicalClass:
    """Sorted row-code tuple standing for all row orderings of one matrix.

    group_sizes are the run lengths of equal values; they drive the class
    multiplicity n!/(z_1! ... z_s!).
    """

    n: int
    codes: tuple[int, ...]
    group_sizes: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "codes", tuple(self.codes))
        object.__setattr__(self, "group_sizes", tuple(self.group_sizes))
        if self.n < 1:
            raise InvariantError(f"n must be positive, got {self.n}")
        if len(self.codes) != self.n:
            raise InvariantError(f"{len(self.codes)} codes for n={self.n}")
        top = (1 << self.n) - 1
        for i, code in enumerate(self.codes, start=1):
            if not 0 <= code <= top:
                raise InvariantError(f"code {i} is {code}, outside [0, {top}]")
        if any(a > b for a, b in zip(self.codes, self.codes[1:])):
            raise InvariantError(f"codes {self.codes} are not non-decreasing")
        if self.group_sizes != _run_lengths(self.codes):
            raise InvariantError(
                f"group sizes {self.group_sizes} do not match runs of {self.codes}"
            )


@dataclass(frozen=True)
class Profile:
    """Per-class counts: r[k] rows with k ones, c[k] columns with k ones,
    psi[k] = r[k] + c[k], eps = total ones."""

    r: tuple[int, ...]
    c: tuple[int, ...]
    psi: tuple[int, ...]
    eps: int

    def __post_init__(self):
        object.__setattr__(self, "r", tuple(self.r))
        object.__setattr__(self, "c", tuple(self.c))
        object.__setattr__(self, "psi", tuple(self.psi))
        n = len(self.r) - 1
        if n < 1 or len(self.c) != n + 1 or len(self.psi) != n + 1:
            raise InvariantError("count vectors must share length n + 1")
        if sum(self.r) != n or sum(self.c) != n:
            raise InvariantError("row and column counts must each sum to n")
        if any(p != a + b for p, a, b in zip(self.psi, self.r, self.c)):
            raise InvariantError("psi must equal r + c entrywise")
        ones_r = sum(k * v for k, v in enumerate(self.r))
        ones_c = sum(k * v for k, v in enumerate(self.c))
        if ones_r != self.eps or ones_c != self.eps:
            raise InvariantError(
                f"eps {self.eps} disagrees with weighted counts {ones_r}, {ones_c}"
            )


def _run_lengths(codes) -> tuple[int, ...]:
    runs = []
    length = 0
    for i, code in enumerate(codes):
        length += 1
        if i + 1 == len(codes) or codes[i + 1] != code:
            runs.append(length)
            length = 0
    return tuple(runs)


def bit(a: int, u: int) -> int:
    """Binary digit u of a; digit 0 is the least significant."""
    if a < 0:
        raise ValueError(f"value must be nonnegative, got {a}")
    if u < 0:
        raise ValueError(f"digit index must be nonnegative, got {u}")
    return (a >> u) & 1


def row_code(m: BinaryMatrix) -> RowCode:
    """Tuple of row readings: row cell in column j contributes 2^(j-1)."""
    return RowCode(
        m.n, tuple(sum(cell << u for u, cell in enumerate(row)) for row in m.cells)
    )


def decode_row_code(x: RowCode) -> BinaryMatrix:
    """Inverse of row_code under the fixed column-to-digit convention."""
    n = x.n
    return BinaryMatrix(
        tuple(tuple((code >> u) & 1 for u in range(n)) for code in x.codes)
    )


def canonicalize(x: RowCode) -> CanonicalClass:
    """Sort the codes; equal results mean equal matrices up to row order."""
    codes = tuple(sorted(x.codes))
    return CanonicalClass(x.n, codes, _run_lengths(codes))


def profile(x: RowCode | CanonicalClass) -> Profile:
    """Row, column, and total one-counts; invariant under row reordering."""
    n = x.n
    r = [0] * (n + 1)
    for code in x.codes:
        r[code.bit_count()] += 1
    c = [0] * (n + 1)
    for u in range(n):
        c[sum((code >> u) & 1 for code in x.codes)] += 1
    eps = sum(code.bit_count() for code in x.codes)
    psi = tuple(a + b for a, b in zip(r, c))
    return Profile(tuple(r), tuple(c), psi, eps)


def multiplicity(cls: CanonicalClass) -> int:
    """Number of matrices in the class: n! over the run-length factorials."""
    out = factorial(cls.n)
    for z in cls.group_sizes:
        out //= factorial(z)
    return out


def class_count(n: int) -> int:
    """Number of canonical classes: C(2^n + n - 1, n)."""
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    return comb((1 << n) + n - 1, n)


def _nd_rank(m: int, tup) -> int:
    """Lexicographic rank of a non-decreasing tuple over [0, m)."""
    rank = 0
    low = 0
    length = len(tup)
    for pos, v in enumerate(tup):
        rem = length - pos - 1
        for w in range(low, v):
            rank += comb(m - w + rem - 1, rem)
        low = v
    return rank


def _nd_unrank(m: int, length: int, rank: int) -> tuple[int, ...]:
    """Inverse of _nd_rank for tuples of the given length."""
    if rank < 0 or rank >= comb(m + length - 1, length):
        raise ValueError(f"rank {rank} out of range for length {length} over [0, {m})")
    out = []
    low = 0
    for pos in range(length):
        rem = length - pos - 1
        v = low
        while True:
            block = comb(m - v + rem - 1, rem)
            if rank < block:
                break
            rank -= block
            v += 1
        out.append(v)
        low = v
    return tuple(out)


def class_rank(n: int, codes) -> int:
    """Position of a class in the lexicographic stream, counting from 0."""
    cls = codes.codes if isinstance(codes, CanonicalClass) else tuple(codes)
    _validate_cursor(n, cls)
    return _nd_rank(1 << n, cls)


def class_unrank(n: int, rank: int) -> tuple[int, ...]:
    """Codes of the class at the given stream position."""
    return _nd_unrank(1 << n, n, rank)


def format_cursor(codes) -> str:
    """Serialize a class tuple as comma-separated decimals."""
    return ",".join(str(c) for c in codes)


def parse_cursor(text: str, n: int) -> tuple[int, ...]:
    """Parse and validate a serialized class tuple."""
    try:
        codes = tuple(int(tok) for tok in text.split(","))
    except ValueError as exc:
        raise ValueError(f"bad cursor {text!r}: {exc}") from None
    _validate_cursor(n, codes)
    return codes


def _validate_cursor(n: int, codes) -> None:
    if len(codes) != n:
        raise ValueError(f"cursor has {len(codes)} entries, expected {n}")
    top = (1 << n) - 1
    if any(not 0 <= c <= top for c in codes):
        raise ValueError(f"cursor {codes} has entries outside [0, {top}]")
    if any(a > b for a, b in zip(codes, codes[1:])):
        raise ValueError(f"cursor {codes} is not non-decreasing")


def enumerate_classes(
    n: int,
    *,
    start: tuple[int, ...] | None = None,
    count: int | None = None,
    force: bool = False,
) -> Iterator[CanonicalClass]:
    """Stream the canonical classes in lexicographic order.

    start names the first class to emit (default the all-zeros class) and
    count caps the number emitted, so contiguous sub-ranges can be walked
    independently. The guard on n needs force=True beyond GUARD_N.
    """
    check_guard(n, force)
    if start is not None:
        _validate_cursor(n, tuple(start))
    if count is not None and count < 0:
        raise ValueError(f"count must be nonnegative, got {count}")
    return _class_stream(n, start, count)


def _class_stream(n, start, count) -> Iterator[CanonicalClass]:
    top = (1 << n) - 1
    codes = list(start) if start is not None else [0] * n
    emitted = 0
    while count is None or emitted < count:
        snapshot = tuple(codes)
        yield CanonicalClass(n, snapshot, _run_lengths(snapshot))
        emitted += 1
        # odometer successor: bump the rightmost non-maximal position and
        # reset everything after it to the new value
        i = n - 1
        while i >= 0 and codes[i] == top:
            i -= 1
        if i < 0:
            return
        value = codes[i] + 1
        for j in range(i, n):
            codes[j] = value
