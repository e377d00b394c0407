"""Packed circulant algebra against the dense numpy oracle."""

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from plotkin_pke import dense
from plotkin_pke.gf2 import (
    BitVector,
    BlockMatrix,
    CirculantBlock,
    NotInvertibleError,
    sample_fixed_weight,
)
from plotkin_pke.rng import RandomStream

ODD_R = [3, 5, 7, 9, 11, 13, 17, 19, 23, 29, 31]


@st.composite
def circulant_pair(draw):
    r = draw(st.sampled_from(ODD_R))
    a = draw(st.integers(0, (1 << r) - 1))
    b = draw(st.integers(0, (1 << r) - 1))
    return CirculantBlock(r, BitVector(r, a)), CirculantBlock(r, BitVector(r, b))


def random_block(rng: RandomStream, r: int) -> CirculantBlock:
    return CirculantBlock(r, BitVector(r, rng.take_bits(r)))


# --- BitVector ---------------------------------------------------------------


def test_bitvector_validation():
    with pytest.raises(ValueError):
        BitVector(3, 8)  # value needs 4 bits
    with pytest.raises(ValueError):
        BitVector(-1, 0)
    assert BitVector(0, 0).length == 0


def test_bitvector_support_roundtrip():
    v = BitVector.from_support(11, (0, 3, 10))
    assert v.support() == (0, 3, 10)
    assert v.weight == 3
    assert [v.bit(j) for j in range(11)] == [1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1]


def test_bitvector_bytes_roundtrip(rng):
    for length in (1, 7, 8, 9, 64, 523):
        v = BitVector(length, rng.take_bits(length))
        assert BitVector.from_bytes(v.to_bytes(), length) == v
        assert len(v.to_bytes()) == (length + 7) // 8


def test_bitvector_bit_order():
    # bit j lives at bit (j mod 8) of byte j // 8
    v = BitVector.from_support(16, (0, 9))
    assert v.to_bytes() == bytes([0x01, 0x02])


def test_bitvector_concat_slice_chunks(rng):
    a = BitVector(13, rng.take_bits(13))
    b = BitVector(13, rng.take_bits(13))
    joined = a.concat(b)
    assert joined.length == 26
    assert joined.slice(0, 13) == a
    assert joined.slice(13, 13) == b
    assert joined.chunks(13) == (a, b)


def test_bitvector_rotated_matches_roll(rng):
    v = BitVector(13, rng.take_bits(13))
    arr = dense.to_array(v)
    for shift in (0, 1, 5, 12, 13, 27):
        assert dense.to_array(v.rotated(shift)).tolist() == np.roll(arr, shift).tolist()


# --- CirculantBlock vs dense oracle ------------------------------------------


def test_block_rows_are_shifts(rng):
    block = random_block(rng, 13)
    mat = dense.expand_block(block)
    row0 = dense.to_array(block.row0)
    for i in range(13):
        assert mat[i].tolist() == np.roll(row0, i).tolist()
        assert block.row(i) == dense.from_array(mat[i])


@settings(max_examples=60, deadline=None)
@given(circulant_pair())
def test_block_mul_matches_dense(pair):
    a, b = pair
    got = dense.expand_block(a * b)
    want = dense.mat_mul(dense.expand_block(a), dense.expand_block(b))
    assert np.array_equal(got, want)


@settings(max_examples=60, deadline=None)
@given(circulant_pair())
def test_block_mul_commutes(pair):
    a, b = pair
    assert a * b == b * a


@settings(max_examples=60, deadline=None)
@given(circulant_pair())
def test_block_add_and_transpose_match_dense(pair):
    a, b = pair
    assert np.array_equal(
        dense.expand_block(a + b),
        dense.mat_add(dense.expand_block(a), dense.expand_block(b)),
    )
    assert np.array_equal(dense.expand_block(a.transpose()), dense.expand_block(a).T)
    assert a.transpose().transpose() == a


@settings(max_examples=40, deadline=None)
@given(circulant_pair())
def test_transpose_antihomomorphism(pair):
    a, b = pair
    assert (a * b).transpose() == b.transpose() * a.transpose()


def test_block_inverse_round_trip(rng):
    r = 19
    found = 0
    while found < 10:
        block = random_block(rng, r)
        try:
            inv = block.inverse()
        except NotInvertibleError:
            continue
        found += 1
        assert block * inv == CirculantBlock.identity(r)
        dense_inv = dense.inverse(dense.expand_block(block))
        assert np.array_equal(dense.expand_block(inv), dense_inv)


def test_even_weight_never_invertible(rng):
    # even-weight rows share the root x=1 with x^r - 1
    for _ in range(20):
        v = sample_fixed_weight(rng, 13, 4)
        with pytest.raises(NotInvertibleError):
            CirculantBlock(13, v).inverse()


def test_weight_one_blocks_invert(rng):
    for j in range(13):
        block = CirculantBlock.from_support(13, (j,))
        assert block * block.inverse() == CirculantBlock.identity(13)


@settings(max_examples=60, deadline=None)
@given(circulant_pair(), st.integers(0, (1 << 31) - 1))
def test_vec_mul_matches_dense(pair, raw):
    from plotkin_pke.gf2 import vec_mul

    a, _ = pair
    v = BitVector(a.r, raw & ((1 << a.r) - 1))
    got = dense.to_array(vec_mul(v, a))
    want = dense.vec_mat_mul(dense.to_array(v), dense.expand_block(a))
    assert got.tolist() == want.tolist()


# --- BlockMatrix --------------------------------------------------------------


def random_grid(rng, rows, cols, r):
    return BlockMatrix(
        tuple(tuple(random_block(rng, r) for _ in range(cols)) for _ in range(rows))
    )


def test_blockmatrix_matmul_matches_dense(rng):
    r = 11
    for _ in range(25):
        a = random_grid(rng, 2, 3, r)
        b = random_grid(rng, 3, 2, r)
        got = dense.expand_block_matrix(a @ b)
        want = dense.mat_mul(dense.expand_block_matrix(a), dense.expand_block_matrix(b))
        assert np.array_equal(got, want)


def test_blockmatrix_add_transpose_match_dense(rng):
    r = 11
    a = random_grid(rng, 2, 3, r)
    b = random_grid(rng, 2, 3, r)
    assert np.array_equal(
        dense.expand_block_matrix(a + b),
        dense.mat_add(dense.expand_block_matrix(a), dense.expand_block_matrix(b)),
    )
    assert np.array_equal(
        dense.expand_block_matrix(a.transpose()), dense.expand_block_matrix(a).T
    )


def test_blockmatrix_vec_mul_matches_dense(rng):
    r = 11
    a = random_grid(rng, 2, 3, r)
    v = BitVector(2 * r, rng.take_bits(2 * r))
    got = dense.to_array(a.vec_mul(v))
    want = dense.vec_mat_mul(dense.to_array(v), dense.expand_block_matrix(a))
    assert got.tolist() == want.tolist()


def test_blockmatrix_inverse_round_trip(rng):
    r = 11
    eye = BlockMatrix.identity(2, r)
    found = 0
    while found < 10:
        m = random_grid(rng, 2, 2, r)
        try:
            inv = m.inverse()
        except NotInvertibleError:
            continue
        found += 1
        assert m @ inv == eye
        assert inv @ m == eye
        assert np.array_equal(
            dense.expand_block_matrix(inv), dense.inverse(dense.expand_block_matrix(m))
        )


def test_blockmatrix_singular_raises():
    zero = CirculantBlock.zero(7)
    m = BlockMatrix(((zero, zero), (zero, zero)))
    with pytest.raises(NotInvertibleError):
        m.inverse()


# --- fixed-weight sampling ----------------------------------------------------


def test_sample_fixed_weight_basics(rng):
    for t in (0, 1, 5, 30):
        v = sample_fixed_weight(rng, 101, t)
        assert v.length == 101
        assert v.weight == t


def test_sample_fixed_weight_full_and_over(rng):
    assert sample_fixed_weight(rng, 9, 9).weight == 9
    with pytest.raises(ValueError):
        sample_fixed_weight(rng, 9, 10)


def test_sample_fixed_weight_deterministic():
    a = sample_fixed_weight(RandomStream(b"\x01" * 32), 523, 30)
    b = sample_fixed_weight(RandomStream(b"\x01" * 32), 523, 30)
    assert a == b
