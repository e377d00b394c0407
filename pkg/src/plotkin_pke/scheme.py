"""Public-key encryption from a (U|U+V) pair of quasi-cyclic codes.

The cryptosystem concatenates two [n, k] quasi-cyclic codes through the
Plotkin construction.  With G1 the mdpc generator, G2 the ldpc generator
and S an invertible k x k block scrambler, the published generator is

    G' = [ S G1   S G1 ]
         [ 0      S G2 ]

stored as circulant first rows only.  Encryption of m = (m1 | m2) with
fixed-weight noise (z1, z2) produces

    c1 = m1 S G1 + z1
    c2 = m1 S G1 + m2 S G2 + z2 + mask(z1)

where mask(z1) is a SHAKE-256 stream derived from z1.  Whoever knows the
sparse parity checks decodes c1 (mdpc stage, backflip), strips the first
codeword and the mask from c2, decodes what is left (ldpc stage, classic
bit flipping), and unscrambles both halves with S^-1.  The mask forces the
second Plotkin coordinate to look like a random vector to anyone who only
managed to recover the ldpc structure; the attack demo in this package
shows exactly that failure mode.
"""

from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass

from .bitflip import DecoderConfig, backflip_config, classic_bf_config, decode
from .gf2 import (
    BitVector,
    BlockMatrix,
    CirculantBlock,
    NotInvertibleError,
    sample_fixed_weight,
)
from .qc import (
    GenerationError,
    QcParams,
    QcParityCheck,
    derive_generator,
    sample_parity_check,
)
from .rng import RandomStream

MASK_DOMAIN = b"\x48"  # domain prefix for the z1-derived masking stream
SCRAMBLER_ATTEMPTS = 100


@dataclass(frozen=True)
class SchemeParams:
    """Parameter set: block size r, n0 blocks per code, mdpc row weight w1
    and error budget t1, ldpc row weight w2 and error budget t2."""

    n0: int
    r: int
    w1: int
    w2: int
    t1: int
    t2: int
    security_level: int = 0

    def __post_init__(self):
        # Flavor-specific validation happens in the QcParams constructors.
        self.mdpc_params()
        self.ldpc_params()
        for t in (self.t1, self.t2):
            if not 0 <= t <= self.n:
                raise ValueError("error weight out of range")
        if self.security_level < 0:
            raise ValueError("security level must be nonnegative")

    def mdpc_params(self) -> QcParams:
        return QcParams(self.n0, self.r, self.w1, "mdpc")

    def ldpc_params(self) -> QcParams:
        return QcParams(self.n0, self.r, self.w2, "ldpc")

    @property
    def n(self) -> int:
        return self.n0 * self.r

    @property
    def k(self) -> int:
        return (self.n0 - 1) * self.r

    @property
    def k0(self) -> int:
        return self.n0 - 1

    @property
    def plaintext_bits(self) -> int:
        return 2 * self.k

    @property
    def ciphertext_bits(self) -> int:
        return 2 * self.n


def public_key_bits(params: SchemeParams) -> int:
    """Size of the compact public key: 2 (n0-1) n0 r bits of circulant rows."""
    return 2 * (params.n0 - 1) * params.n0 * params.r


def cca2_variant_public_bits(params: SchemeParams) -> int:
    """Size of the public key in the conversion-friendly variant that keeps
    only the non-systematic part: 2 (n0-1) r bits.  Reported for comparison;
    that variant is not implemented here."""
    return 2 * (params.n0 - 1) * params.r


@dataclass(frozen=True)
class PublicKey:
    params: SchemeParams
    sg1: BlockMatrix  # k0 x n0 blocks: [S | S A1]
    sg2: BlockMatrix  # k0 x n0 blocks: [S | S A2]


@dataclass(frozen=True)
class SecretKey:
    params: SchemeParams
    h1: QcParityCheck
    h2: QcParityCheck
    s: BlockMatrix
    s_inv: BlockMatrix


@dataclass(frozen=True)
class Ciphertext:
    params: SchemeParams
    c1: BitVector
    c2: BitVector

    def __post_init__(self):
        if self.c1.length != self.params.n or self.c2.length != self.params.n:
            raise ValueError("ciphertext halves must each be n bits")


class DecryptionFailure(Exception):
    """Decoding failed; ``stage`` is "mdpc" or "ldpc"."""

    def __init__(self, stage: str):
        super().__init__(f"decoding failed at the {stage} stage")
        self.stage = stage


def mdpc_decoder_config(params: SchemeParams) -> DecoderConfig:
    return backflip_config()


def ldpc_decoder_config(params: SchemeParams) -> DecoderConfig:
    return classic_bf_config(threshold="majority")


def _scrambler_band(weight: int, r: int) -> bool:
    # dense rows only: weight within [0.4 r, 0.6 r]
    return 2 * r <= 5 * weight <= 3 * r


def _sample_scrambler(rng: RandomStream, params: SchemeParams) -> tuple[BlockMatrix, BlockMatrix]:
    k0, r = params.k0, params.r
    for _ in range(SCRAMBLER_ATTEMPTS):
        blocks = tuple(
            tuple(
                CirculantBlock(r, BitVector(r, rng.take_bits(r)))
                for _ in range(k0)
            )
            for _ in range(k0)
        )
        if not all(_scrambler_band(b.weight, r) for row in blocks for b in row):
            continue
        s = BlockMatrix(blocks)
        try:
            return s, s.inverse()
        except NotInvertibleError:
            continue
    raise GenerationError(f"no invertible scrambler after {SCRAMBLER_ATTEMPTS} attempts")


def _scrambled_generator(s: BlockMatrix, right_blocks: tuple[CirculantBlock, ...]) -> BlockMatrix:
    """S [I_k | A] = [S | S A] as a k0 x n0 block matrix."""
    a_col = BlockMatrix(tuple((b,) for b in right_blocks))
    sa = s @ a_col
    rows = tuple(
        s.blocks[i] + (sa.blocks[i][0],) for i in range(s.block_rows)
    )
    return BlockMatrix(rows)


def keygen(params: SchemeParams, rng: RandomStream) -> tuple[PublicKey, SecretKey]:
    """Sample (H1, H2, S) and publish the scrambled generators."""
    h1 = sample_parity_check(rng, params.mdpc_params())
    h2 = sample_parity_check(rng, params.ldpc_params())
    g1 = derive_generator(h1)
    g2 = derive_generator(h2)
    s, s_inv = _sample_scrambler(rng, params)
    pk = PublicKey(
        params=params,
        sg1=_scrambled_generator(s, g1.right_blocks),
        sg2=_scrambled_generator(s, g2.right_blocks),
    )
    return pk, SecretKey(params=params, h1=h1, h2=h2, s=s, s_inv=s_inv)


def hash_mask(z1: BitVector, n: int) -> BitVector:
    """First n bits of SHAKE-256(0x48 || packed z1), read in packed bit order."""
    digest = hashlib.shake_256(MASK_DOMAIN + z1.to_bytes()).digest((n + 7) // 8)
    return BitVector(n, int.from_bytes(digest, "little") & ((1 << n) - 1))


def encrypt_with(pk: PublicKey, message: BitVector, z1: BitVector, z2: BitVector,
                 apply_mask: bool = True) -> Ciphertext:
    """Deterministic encryption core with caller-supplied noise.

    Mostly useful for tests and the attack lab; ``encrypt`` is the
    sampling front end.
    """
    params = pk.params
    if message.length != params.plaintext_bits:
        raise ValueError("plaintext must be exactly 2k bits")
    if z1.length != params.n or z2.length != params.n:
        raise ValueError("noise vectors must be n bits")
    m1 = message.slice(0, params.k)
    m2 = message.slice(params.k, params.k)
    u = pk.sg1.vec_mul(m1)
    v = pk.sg2.vec_mul(m2)
    c1 = u ^ z1
    c2 = u ^ v ^ z2
    if apply_mask:
        c2 = c2 ^ hash_mask(z1, params.n)
    return Ciphertext(params, c1, c2)


def encrypt(pk: PublicKey, message: BitVector, rng: RandomStream) -> Ciphertext:
    params = pk.params
    z1 = sample_fixed_weight(rng, params.n, params.t1)
    z2 = sample_fixed_weight(rng, params.n, params.t2)
    return encrypt_with(pk, message, z1, z2)


def decrypt(sk: SecretKey, ct: Ciphertext) -> BitVector:
    """Two-stage decode, then unscramble.  Raises DecryptionFailure."""
    params = sk.params
    out1 = decode(sk.h1, ct.c1, mdpc_decoder_config(params))
    if not out1.success:
        raise DecryptionFailure("mdpc")
    z1 = out1.error_vector
    inner = ct.c2 ^ out1.codeword ^ hash_mask(z1, params.n)
    out2 = decode(sk.h2, inner, ldpc_decoder_config(params))
    if not out2.success:
        raise DecryptionFailure("ldpc")
    # systematic codewords carry m S in their first k bits
    m1 = sk.s_inv.vec_mul(out1.codeword.slice(0, params.k))
    m2 = sk.s_inv.vec_mul(out2.codeword.slice(0, params.k))
    return m1.concat(m2)
