"""Packed skew storage, matrix units, and exact matrix arithmetic."""

import random
from fractions import Fraction

import pytest

from skewlie.errors import DegenerateIndexError, NotSkewError, SchemaError
from skewlie.matrices import (
    SkewMatrix,
    SquareMatrix,
    identity_matrix,
    mat_add,
    mat_mul,
    mat_neg,
    mat_scale,
    mat_sub,
    mat_transpose,
    matrix_unit,
    packed_index,
    packed_size,
    pair_list,
    project_block,
    random_skew,
    random_square,
    s_unit,
    zero_skew,
    zero_square,
)
from skewlie.rings import PrimeField, Rationals

Q = Rationals()
G5 = PrimeField(5)


def test_packed_size():
    assert packed_size(2) == 1
    assert packed_size(3) == 3
    assert packed_size(4) == 6
    assert packed_size(8) == 28


def test_packed_index_enumerates_row_major():
    n = 5
    seen = [packed_index(n, i, j) for i, j in pair_list(n)]
    assert seen == list(range(packed_size(n)))
    assert pair_list(4) == ((1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4))


def test_skew_entry_signs():
    x = SkewMatrix(G5, 3, (1, 2, 3))
    assert x.entry(1, 2) == 1
    assert x.entry(2, 1) == 4  # -1 mod 5
    assert x.entry(1, 3) == 2
    assert x.entry(2, 3) == 3
    assert x.entry(1, 1) == 0
    assert x.entry(3, 3) == 0


def test_entry_index_out_of_range():
    x = zero_skew(Q, 3)
    with pytest.raises(IndexError):
        x.entry(0, 1)
    with pytest.raises(IndexError):
        x.entry(1, 4)


def test_to_square_from_square_round_trip():
    rng = random.Random(5)
    for n in (2, 3, 4, 6):
        x = random_skew(G5, n, rng)
        sq = x.to_square()
        for i in range(1, n + 1):
            assert sq.entry(i, i) == 0
            for j in range(1, n + 1):
                assert sq.entry(i, j) == G5.neg(sq.entry(j, i))
        assert SkewMatrix.from_square(sq) == x


def test_from_square_rejects_non_skew():
    sq = identity_matrix(Q, 3)
    with pytest.raises(NotSkewError):
        SkewMatrix.from_square(sq)
    bad = SquareMatrix(Q, 2, ((Fraction(0), Fraction(1)), (Fraction(1), Fraction(0))))
    with pytest.raises(NotSkewError):
        SkewMatrix.from_square(bad)


def test_skew_add_scale_neg():
    rng = random.Random(17)
    for _ in range(20):
        x = random_skew(Q, 4, rng)
        y = random_skew(Q, 4, rng)
        assert (x + y).to_square() == mat_add(x.to_square(), y.to_square())
        assert (x - y) == x + y.neg()
        assert x.scale(Fraction(3)).to_square() == mat_scale(Fraction(3), x.to_square())
        assert (x - x).is_zero()


def test_matrix_unit_multiplication_rule():
    # e_ij e_kl = e_il when j == k, else 0
    n = 4
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            for k in range(1, n + 1):
                for l in range(1, n + 1):
                    prod = mat_mul(matrix_unit(Q, n, i, j), matrix_unit(Q, n, k, l))
                    if j == k:
                        assert prod == matrix_unit(Q, n, i, l)
                    else:
                        assert prod == zero_square(Q, n)


def test_s_unit_shape():
    s = s_unit(Q, 3, 1, 2)
    assert s.entry(1, 2) == 1
    assert s.entry(2, 1) == -1
    # order of indices is canonicalized
    assert s_unit(Q, 3, 2, 1) == s.neg()
    with pytest.raises(DegenerateIndexError):
        s_unit(Q, 3, 2, 2)


def test_s_unit_product_frozen():
    # s_12 s_13 = -e_23 in dimension 3 (worked out by hand)
    s12 = s_unit(Q, 3, 1, 2).to_square()
    s13 = s_unit(Q, 3, 1, 3).to_square()
    assert mat_mul(s12, s13) == mat_neg(matrix_unit(Q, 3, 2, 3))


def naive_mul(x, y):
    ring, n = x.ring, x.n
    rows = []
    for i in range(1, n + 1):
        row = []
        for j in range(1, n + 1):
            acc = ring.zero()
            for k in range(1, n + 1):
                acc = ring.add(acc, ring.mul(x.entry(i, k), y.entry(k, j)))
            row.append(acc)
        rows.append(row)
    return SquareMatrix(ring, n, rows)


def test_mat_mul_matches_naive():
    """The sparse-aware product must agree with the textbook triple loop."""
    rng = random.Random(99)
    for ring in (Q, G5):
        for n in (2, 3, 5):
            for _ in range(10):
                x = random_square(ring, n, rng)
                y = random_square(ring, n, rng)
                assert mat_mul(x, y) == naive_mul(x, y)


def test_mat_mul_identity_and_zero():
    rng = random.Random(3)
    x = random_square(G5, 4, rng)
    eye = identity_matrix(G5, 4)
    assert mat_mul(x, eye) == x
    assert mat_mul(eye, x) == x
    assert mat_mul(x, zero_square(G5, 4)) == zero_square(G5, 4)


def test_transpose():
    rng = random.Random(11)
    x = random_square(Q, 4, rng)
    y = random_square(Q, 4, rng)
    assert mat_transpose(mat_transpose(x)) == x
    assert mat_transpose(mat_mul(x, y)) == mat_mul(mat_transpose(y), mat_transpose(x))
    s = random_skew(Q, 4, rng)
    assert mat_transpose(s.to_square()) == s.neg().to_square()


def test_project_block_skew():
    rng = random.Random(21)
    x = random_skew(G5, 5, rng)
    p = project_block(x, 2, 4)
    assert p.entry(2, 4) == x.entry(2, 4)
    assert p.entry(4, 2) == x.entry(4, 2)
    for i, j in pair_list(5):
        if {i, j} != {2, 4}:
            assert p.entry(i, j) == 0
    with pytest.raises(DegenerateIndexError):
        project_block(x, 3, 3)


def test_project_block_square():
    rng = random.Random(22)
    x = random_square(Q, 4, rng)
    p = project_block(x, 1, 3)
    assert p.entry(1, 3) == x.entry(1, 3)
    assert p.entry(3, 1) == x.entry(3, 1)
    assert p.entry(1, 1) == 0
    assert p.entry(2, 3) == 0


def test_square_json_round_trip():
    rng = random.Random(31)
    for ring in (Q, G5):
        x = random_square(ring, 3, rng)
        assert SquareMatrix.from_json(ring, x.to_json()) == x


def test_skew_json_round_trip():
    rng = random.Random(32)
    for ring in (Q, G5):
        x = random_skew(ring, 4, rng)
        obj = x.to_json()
        assert set(obj) == {"n", "upper"}
        assert len(obj["upper"]) == packed_size(4)
        assert SkewMatrix.from_json(ring, obj) == x


def test_skew_json_schema_errors():
    with pytest.raises(SchemaError):
        SkewMatrix.from_json(G5, {"n": 3})
    with pytest.raises(SchemaError):
        SkewMatrix.from_json(G5, {"n": 3, "upper": [1, 2]})  # wrong length
    with pytest.raises(SchemaError):
        SkewMatrix.from_json(G5, [1, 2, 3])
    with pytest.raises(SchemaError):
        SquareMatrix.from_json(G5, {"n": 2, "rows": [[1, 2]]})


def test_dimension_mismatch_rejected():
    from skewlie.errors import DimensionMismatchError

    x = zero_skew(Q, 3)
    y = zero_skew(Q, 4)
    with pytest.raises(DimensionMismatchError):
        x.add(y)
    with pytest.raises(DimensionMismatchError):
        mat_mul(zero_square(Q, 3), zero_square(Q, 4))


def test_ring_mismatch_rejected():
    from skewlie.errors import RingMismatchError

    with pytest.raises(RingMismatchError):
        zero_skew(Q, 3).add(zero_skew(G5, 3))
