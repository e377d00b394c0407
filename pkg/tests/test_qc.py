"""Quasi-cyclic code construction against the dense oracle."""

import numpy as np
import pytest

from plotkin_pke import dense
from plotkin_pke.gf2 import BitVector, sample_fixed_weight
from plotkin_pke.qc import (
    QcParams,
    QcParityCheck,
    derive_generator,
    encode,
    sample_parity_check,
    syndrome,
)


def test_params_validation():
    with pytest.raises(ValueError):
        QcParams(1, 13, 5, "mdpc")  # n0 too small
    with pytest.raises(ValueError):
        QcParams(2, 14, 5, "mdpc")  # r even
    with pytest.raises(ValueError):
        QcParams(2, 13, 1, "mdpc")  # below the mdpc density band
    with pytest.raises(ValueError):
        QcParams(2, 523, 40, "ldpc")  # ldpc rows stay sparse
    with pytest.raises(ValueError):
        QcParams(2, 13, 5, "turbo")
    p = QcParams(2, 13, 6, "mdpc")
    assert (p.n, p.k) == (26, 13)


def test_block_weight_split_examples():
    # two blocks of weight 3 each; an odd last block stays untouched
    assert QcParams(2, 13, 6, "ldpc").block_weights() == (3, 3)
    # base split (4, 4) would leave an even last block: shift one unit
    assert QcParams(2, 523, 8, "ldpc").block_weights() == (3, 5)
    # (3, 2, 2) has an even last block: one unit moves from block 0 to it
    assert QcParams(3, 13, 7, "ldpc").block_weights() == (2, 2, 3)
    assert sum(QcParams(3, 29, 10, "ldpc").block_weights()) == 10


def test_sampled_parity_check_structure(make_rng):
    params = QcParams(2, 13, 6, "ldpc")
    h = sample_parity_check(make_rng(1), params)
    assert len(h.blocks) == 2
    assert tuple(b.weight for b in h.blocks) == (3, 3)
    h.blocks[-1].inverse()  # last block must be invertible


def test_generator_orthogonal_to_parity(make_rng):
    for tag, (n0, r, w, flavor) in enumerate(
        [(2, 13, 6, "mdpc"), (2, 29, 8, "mdpc"), (3, 17, 9, "ldpc"), (2, 31, 4, "ldpc")]
    ):
        params = QcParams(n0, r, w, flavor)
        h = sample_parity_check(make_rng(tag), params)
        gen = derive_generator(h)
        g_dense = dense.expand_grid(
            [[*row] for row in _generator_grid(gen)]
        )
        h_dense = dense.expand_grid([list(h.blocks)])
        prod = dense.mat_mul(g_dense, h_dense.T)
        assert not prod.any()


def _generator_grid(gen):
    # [I_k | Q] written as an (n0-1) x n0 circulant grid
    from plotkin_pke.gf2 import CirculantBlock

    n0 = gen.params.n0
    r = gen.params.r
    eye = CirculantBlock.identity(r)
    zero = CirculantBlock.zero(r)
    rows = []
    for i in range(n0 - 1):
        row = [eye if j == i else zero for j in range(n0 - 1)]
        row.append(gen.right_blocks[i])
        rows.append(row)
    return rows


def test_encode_matches_dense(make_rng):
    rng = make_rng(2)
    params = QcParams(3, 13, 9, "ldpc")
    h = sample_parity_check(rng, params)
    gen = derive_generator(h)
    g_dense = dense.expand_grid(_generator_grid(gen))
    for _ in range(25):
        m = BitVector(params.k, rng.take_bits(params.k))
        got = dense.to_array(encode(gen, m))
        want = dense.vec_mat_mul(dense.to_array(m), g_dense)
        assert got.tolist() == want.tolist()


def test_encode_is_systematic(make_rng):
    rng = make_rng(3)
    params = QcParams(2, 29, 8, "mdpc")
    gen = derive_generator(sample_parity_check(rng, params))
    m = BitVector(params.k, rng.take_bits(params.k))
    assert encode(gen, m).slice(0, params.k) == m


def test_syndrome_matches_dense_and_vanishes_on_codewords(make_rng):
    rng = make_rng(4)
    params = QcParams(2, 17, 6, "ldpc")
    h = sample_parity_check(rng, params)
    gen = derive_generator(h)
    h_dense = dense.expand_grid([list(h.blocks)])
    for _ in range(25):
        y = BitVector(params.n, rng.take_bits(params.n))
        got = dense.to_array(syndrome(h, y))
        want = dense.vec_mat_mul(dense.to_array(y), h_dense.T)
        assert got.tolist() == want.tolist()

        m = BitVector(params.k, rng.take_bits(params.k))
        assert syndrome(h, encode(gen, m)).value == 0


def test_syndrome_of_error_equals_word_syndrome(make_rng):
    rng = make_rng(5)
    params = QcParams(2, 31, 8, "mdpc")
    h = sample_parity_check(rng, params)
    gen = derive_generator(h)
    m = BitVector(params.k, rng.take_bits(params.k))
    e = sample_fixed_weight(rng, params.n, 3)
    assert syndrome(h, encode(gen, m) ^ e) == syndrome(h, e)


def test_resampling_recovers_from_bad_last_block(make_rng):
    # weight 4 last blocks are even, hence never invertible; the sampler
    # must keep drawing until an odd-split flavor succeeds, so a params
    # set whose split puts an odd weight last always generates
    params = QcParams(2, 13, 7, "ldpc")  # split (4, 3), last odd
    for tag in range(10):
        h = sample_parity_check(make_rng(tag + 16), params)
        h.blocks[-1].inverse()
