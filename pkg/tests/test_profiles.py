"""Row codes, canonical classes, profiles, and the class stream."""

import itertools
from math import comb

import pytest

from spmcount import (
    BinaryMatrix,
    CanonicalClass,
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
from spmcount.errors import GuardError, InvariantError


def all_binary_matrices(n):
    for bits in itertools.product((0, 1), repeat=n * n):
        yield BinaryMatrix(tuple(bits[i * n : (i + 1) * n] for i in range(n)))


def test_bit_extraction():
    assert bit(5, 0) == 1
    assert bit(5, 1) == 0
    assert bit(5, 2) == 1
    assert all(bit(0, u) == 0 for u in range(8))
    with pytest.raises(ValueError):
        bit(-1, 0)
    with pytest.raises(ValueError):
        bit(3, -1)


def test_row_code_fixed_convention():
    """Column j maps to binary digit j-1, so the 2x2 identity reads (1, 2)."""
    identity = BinaryMatrix(((1, 0), (0, 1)))
    assert row_code(identity).codes == (1, 2)
    zeros = BinaryMatrix(tuple((0,) * 3 for _ in range(3)))
    assert row_code(zeros).codes == (0, 0, 0)


@pytest.mark.parametrize("n", [2, 3])
def test_row_code_round_trip_exhaustive(n):
    seen = set()
    for matrix in all_binary_matrices(n):
        code = row_code(matrix)
        assert decode_row_code(code) == matrix
        seen.add(code.codes)
    assert len(seen) == 2 ** (n * n)


def test_row_code_validation():
    with pytest.raises(InvariantError):
        RowCode(2, (0, 4))
    with pytest.raises(InvariantError):
        RowCode(2, (0,))
    with pytest.raises(InvariantError):
        RowCode(2, (-1, 0))


def test_profile_examples():
    one = profile(RowCode(2, (0, 1)))
    assert one.r == (1, 1, 0)
    assert one.c == (1, 1, 0)
    assert one.psi == (2, 2, 0)
    assert one.eps == 1

    zero = profile(RowCode(2, (0, 0)))
    assert zero.psi[0] == 4
    assert zero.eps == 0

    full_row = profile(RowCode(3, (7, 0, 0)))
    assert full_row.r == (2, 0, 0, 1)
    assert full_row.c == (0, 3, 0, 0)
    assert full_row.eps == 3


def test_profile_invariant_under_row_order():
    for codes in itertools.product(range(8), repeat=3):
        assert profile(RowCode(3, codes)) == profile(canonicalize(RowCode(3, codes)))


def test_canonicalize():
    cls = canonicalize(RowCode(2, (2, 1)))
    assert cls.codes == (1, 2)
    assert cls.group_sizes == (1, 1)
    cls = canonicalize(RowCode(3, (3, 3, 5)))
    assert cls.codes == (3, 3, 5)
    assert cls.group_sizes == (2, 1)
    images = {canonicalize(RowCode(2, codes)).codes for codes in itertools.product(range(4), repeat=2)}
    assert len(images) == 10 == class_count(2)


def test_canonical_class_validation():
    with pytest.raises(InvariantError):
        CanonicalClass(2, (2, 1), (1, 1))  # not sorted
    with pytest.raises(InvariantError):
        CanonicalClass(2, (1, 1), (1, 1))  # wrong run lengths


def test_multiplicity():
    assert multiplicity(canonicalize(RowCode(3, (3, 3, 5)))) == 3
    assert multiplicity(canonicalize(RowCode(2, (0, 0)))) == 1
    assert multiplicity(canonicalize(RowCode(3, (1, 2, 4)))) == 6


@pytest.mark.parametrize("n,total", [(2, 16), (3, 512), (4, 65536)])
def test_multiplicities_cover_all_matrices(n, total):
    assert sum(multiplicity(cls) for cls in enumerate_classes(n)) == total


@pytest.mark.parametrize("n", [2, 3])
def test_multiplicities_by_ones_count(n):
    """Classes with eps = k cover the C(n^2, k) placements of k ones."""
    by_eps = {}
    for cls in enumerate_classes(n):
        eps = profile(cls).eps
        by_eps[eps] = by_eps.get(eps, 0) + multiplicity(cls)
    for k in range(n * n + 1):
        assert by_eps.get(k, 0) == comb(n * n, k)


def test_class_count_values():
    assert class_count(1) == 2
    assert class_count(2) == 10
    assert class_count(3) == 120
    assert class_count(4) == 3876
    assert class_count(5) == 376992
    assert class_count(6) == 119877472


def test_enumerate_classes_order_and_length():
    tiny = [cls.codes for cls in enumerate_classes(1)]
    assert tiny == [(0,), (1,)]
    stream = [cls.codes for cls in enumerate_classes(2)]
    assert len(stream) == 10
    assert stream == sorted(stream)
    assert len(set(stream)) == 10
    assert stream[0] == (0, 0)
    assert stream[-1] == (3, 3)


def test_enumerate_classes_emits_valid_groups():
    for cls in enumerate_classes(3):
        assert sum(cls.group_sizes) == 3
        assert len(cls.group_sizes) == len(set(cls.codes))


def test_enumerate_classes_split_is_contiguous():
    full = [cls.codes for cls in enumerate_classes(3)]
    pieces = []
    for start_rank in range(0, 120, 17):
        start = class_unrank(3, start_rank)
        pieces.extend(
            cls.codes for cls in enumerate_classes(3, start=start, count=17)
        )
    assert pieces == full


def test_enumerate_classes_start_count():
    got = [cls.codes for cls in enumerate_classes(2, start=(0, 1), count=3)]
    assert got == [(0, 1), (0, 2), (0, 3)]
    tail = [cls.codes for cls in enumerate_classes(2, start=(3, 3))]
    assert tail == [(3, 3)]


def test_guard_refuses_then_force_allows():
    with pytest.raises(GuardError):
        enumerate_classes(7)
    stream = enumerate_classes(7, force=True)
    first = [next(stream).codes for _ in range(3)]
    assert first == [(0,) * 7, (0,) * 6 + (1,), (0,) * 6 + (2,)]


def test_rank_unrank_round_trip():
    for rank in range(class_count(3)):
        codes = class_unrank(3, rank)
        assert class_rank(3, codes) == rank
    stream = [cls.codes for cls in enumerate_classes(3)]
    assert [class_unrank(3, r) for r in range(120)] == stream
    with pytest.raises(ValueError):
        class_unrank(3, 120)


def test_cursor_round_trip():
    codes = (0, 2, 5, 5)
    assert parse_cursor(format_cursor(codes), 4) == codes
    with pytest.raises(ValueError):
        parse_cursor("1,0", 2)  # decreasing
    with pytest.raises(ValueError):
        parse_cursor("0,1,2", 2)  # wrong length
    with pytest.raises(ValueError):
        parse_cursor("0,9", 2)  # out of range
    with pytest.raises(ValueError):
        parse_cursor("0,x", 2)
