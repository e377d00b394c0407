"""Quasi-cyclic code construction: parity checks, generators, syndromes.

A quasi-cyclic code here is an [n0*r, (n0-1)*r] code whose parity-check
matrix is a single row of n0 circulant blocks H = [H_0 | ... | H_{n0-1}]
with H_{n0-1} invertible.  The corresponding systematic generator is
G = [I_k | Q] with block column Q_i = (H_{n0-1}^{-1} H_i)^T, so that every
codeword is [message | parity] and H c^T = 0.

Two sparsity regimes are supported: "mdpc" rows (total weight on the order
of sqrt(n)) decode with bit-flipping at moderate error weights, and "ldpc"
rows (total weight <= 32) decode at much higher error weights but leak
structure; the public-key scheme uses one of each, and the attack lab
exploits the ldpc side.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .gf2 import (
    BitVector,
    CirculantBlock,
    NotInvertibleError,
    sample_fixed_weight,
    vec_mul,
)
from .rng import RandomStream

FLAVORS = ("mdpc", "ldpc")
LDPC_MAX_WEIGHT = 32
SAMPLE_ATTEMPTS = 100


class GenerationError(RuntimeError):
    """Raised when rejection sampling exhausts its attempt budget."""


@dataclass(frozen=True)
class QcParams:
    """Shape of one quasi-cyclic code: n0 blocks of size r, row weight w."""

    n0: int
    r: int
    w: int
    flavor: str

    def __post_init__(self):
        if self.n0 < 2:
            raise ValueError("n0 must be at least 2")
        if self.r < 1 or self.r % 2 == 0:
            raise ValueError("r must be odd and positive")
        if self.w < 1 or self.w > self.n0 * self.r:
            raise ValueError("row weight out of range")
        if self.flavor not in FLAVORS:
            raise ValueError(f"flavor must be one of {FLAVORS}")
        n = self.n0 * self.r
        if self.flavor == "mdpc":
            if not math.sqrt(n) / 2 <= self.w <= 4 * math.sqrt(n):
                raise ValueError("mdpc weight must be on the order of sqrt(n)")
        else:
            if self.w > LDPC_MAX_WEIGHT:
                raise ValueError(f"ldpc weight must be <= {LDPC_MAX_WEIGHT}")

    @property
    def n(self) -> int:
        return self.n0 * self.r

    @property
    def k(self) -> int:
        return (self.n0 - 1) * self.r

    def block_weights(self) -> tuple[int, ...]:
        """Per-block row weights: as even a split as possible, except that
        the last block must end up odd (an even row is never invertible).
        When the even split leaves the last share even, one unit moves from
        block 0 to the last block."""
        base, rem = divmod(self.w, self.n0)
        weights = [base + 1 if i < rem else base for i in range(self.n0)]
        if weights[-1] % 2 == 0:
            weights[0] -= 1
            weights[-1] += 1
        if weights[0] < 0:
            raise ValueError("row weight too small to keep the last block odd")
        return tuple(weights)


@dataclass(frozen=True)
class QcParityCheck:
    params: QcParams
    blocks: tuple[CirculantBlock, ...]

    def __post_init__(self):
        if len(self.blocks) != self.params.n0:
            raise ValueError("block count differs from n0")
        for b in self.blocks:
            if b.r != self.params.r:
                raise ValueError("block size differs from r")

    @property
    def block_weights(self) -> tuple[int, ...]:
        return tuple(b.weight for b in self.blocks)


@dataclass(frozen=True)
class QcGenerator:
    """Systematic generator [I_k | Q]; only the k0 blocks of Q are stored."""

    params: QcParams
    right_blocks: tuple[CirculantBlock, ...]

    def __post_init__(self):
        if len(self.right_blocks) != self.params.n0 - 1:
            raise ValueError("generator needs n0 - 1 right-hand blocks")


def sample_parity_check(rng: RandomStream, params: QcParams) -> QcParityCheck:
    """Sample block rows at the prescribed weights; the last block is
    resampled (up to a fixed attempt budget) until it inverts."""
    weights = params.block_weights()
    blocks = [
        CirculantBlock(params.r, sample_fixed_weight(rng, params.r, weights[i]))
        for i in range(params.n0 - 1)
    ]
    for _ in range(SAMPLE_ATTEMPTS):
        last = CirculantBlock(params.r, sample_fixed_weight(rng, params.r, weights[-1]))
        try:
            last.inverse()
        except NotInvertibleError:
            continue
        blocks.append(last)
        return QcParityCheck(params, tuple(blocks))
    raise GenerationError(
        f"no invertible final block after {SAMPLE_ATTEMPTS} attempts"
    )


def derive_generator(h: QcParityCheck) -> QcGenerator:
    inv = h.blocks[-1].inverse()
    right = tuple(
        (inv * h.blocks[i]).transpose() for i in range(h.params.n0 - 1)
    )
    return QcGenerator(h.params, right)


def encode(gen: QcGenerator, message: BitVector) -> BitVector:
    """Systematic encoding: [message | parity] with parity = sum m_i(x) q_i(x)."""
    params = gen.params
    if message.length != params.k:
        raise ValueError("message length differs from code dimension")
    parity = BitVector(params.r, 0)
    for part, block in zip(message.chunks(params.r), gen.right_blocks):
        parity = parity ^ vec_mul(part, block)
    return message.concat(parity)


def syndrome(h: QcParityCheck, word: BitVector) -> BitVector:
    """H x^T as a length-r vector; zero exactly on codewords."""
    params = h.params
    if word.length != params.n:
        raise ValueError("word length differs from code length")
    acc = BitVector(params.r, 0)
    for part, block in zip(word.chunks(params.r), h.blocks):
        acc = acc ^ vec_mul(part, block.transpose())
    return acc
