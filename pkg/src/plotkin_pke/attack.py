"""Weak-key attack lab: recover the ldpc structure, then watch it not matter.

The second Plotkin coordinate is protected by a code whose dual contains
r blockwise rotations of one sparse row, and sparse dual rows of an
[n, k] code are exactly what a Stern search finds at desk scale.  The
demo pipeline:

1. expand the public second-coordinate generator, put it in systematic
   form, and run ``stern_search`` on its dual for a row of weight <= w2;
2. expand the found row's blockwise rotations into a full circulant parity
   check H2' (an exact stand-in for the secret H2 up to row rotation);
3. attack a ciphertext with it, two ways: decode c2 directly, and decode
   c1 + c2 (which cancels the first-coordinate codeword).

Both decodes fail: c2 carries the first coordinate's codeword as "noise",
and c1 + c2 still carries z1 + z2 + mask(z1), a vector of weight about
n/2 by construction of the mask.  The report records the recovered row,
both decode outcomes, the residual weight, and whether any plaintext was
actually recovered (checked against the true plaintext, which the demo
receives as an oracle precisely to certify failure).
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from . import dense
from .gf2 import BitVector, CirculantBlock, _poly_gcd
from .qc import QcParams, QcParityCheck, syndrome
from .bitflip import decode
from .rng import RandomStream
from .scheme import Ciphertext, PublicKey, ldpc_decoder_config
from .stern import SternResult, stern_search


@dataclass(frozen=True)
class RecoveredDual:
    """Sparse dual row and its circulant expansion."""

    row: BitVector
    parity: QcParityCheck
    complete: bool  # blockwise rotations span the full r dimensions
    iterations: int  # Stern restarts spent


@dataclass(frozen=True)
class AttackReport:
    n0: int
    r: int
    w2: int
    row_found: bool
    recovered_row_weight: int | None
    orthogonal: bool
    rotations_complete: bool
    stern_iterations: int
    direct_decode_success: bool
    direct_decode_iterations: int
    combined_decode_success: bool
    combined_decode_iterations: int
    residual_weight: int | None
    attack_succeeded: bool

    def to_dict(self) -> dict:
        return {
            "n0": self.n0,
            "r": self.r,
            "w2": self.w2,
            "rowFound": self.row_found,
            "recoveredRowWeight": self.recovered_row_weight,
            "orthogonal": self.orthogonal,
            "rotationsComplete": self.rotations_complete,
            "sternIterations": self.stern_iterations,
            "directDecodeSuccess": self.direct_decode_success,
            "directDecodeIterations": self.direct_decode_iterations,
            "combinedDecodeSuccess": self.combined_decode_success,
            "combinedDecodeIterations": self.combined_decode_iterations,
            "residualWeight": self.residual_weight,
            "attackSucceeded": self.attack_succeeded,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))


def systematic_public_generator(pk: PublicKey, coordinate: int = 2):
    """Dense systematic form [I_k | A] of a published generator.

    This is the attacker's first move: the scrambler S disappears under
    row reduction, because row space is all a generator exposes.
    """
    grid = pk.sg1 if coordinate == 1 else pk.sg2
    return dense.systematic_form(dense.expand_block_matrix(grid))


def rotations_parity_check(pk_params, row: BitVector) -> QcParityCheck:
    """Stack the r blockwise rotations of a dual row into a parity check."""
    r, n0 = pk_params.r, pk_params.n0
    blocks = tuple(CirculantBlock(r, part) for part in row.chunks(r))
    qc_params = QcParams(n0, r, max(row.weight, 1), "ldpc")
    return QcParityCheck(qc_params, blocks)


def _rotations_complete(parity: QcParityCheck) -> bool:
    g = (1 << parity.params.r) | 1  # x^r - 1
    for block in parity.blocks:
        g = _poly_gcd(g, block.row0.value)
    return g == 1


def _orthogonal_to_public(parity: QcParityCheck, pk: PublicKey) -> bool:
    for block_row in pk.sg2.blocks:
        word = BitVector(0, 0)
        for block in block_row:
            word = word.concat(block.row0)
        if syndrome(parity, word).value != 0:
            return False
    return True


def recover_dual_structure(
    pk: PublicKey, rng: RandomStream, max_iterations: int = 500
) -> RecoveredDual | None:
    """Stern-search the public second coordinate for a weight-<=w2 dual row."""
    gen_sys = systematic_public_generator(pk, coordinate=2)
    result: SternResult = stern_search(
        gen_sys, pk.params.w2, rng, max_iterations=max_iterations
    )
    if result.found is None:
        return None
    parity = rotations_parity_check(pk.params, result.found)
    if not _orthogonal_to_public(parity, pk):  # would mean a Stern bug
        raise AssertionError("recovered row is not orthogonal to the public code")
    return RecoveredDual(
        row=result.found,
        parity=parity,
        complete=_rotations_complete(parity),
        iterations=result.iterations,
    )


def weak_key_attack_demo(
    pk: PublicKey,
    ct: Ciphertext,
    true_plaintext: BitVector,
    rng: RandomStream,
    recovered: RecoveredDual | None = None,
    max_iterations: int = 500,
) -> AttackReport:
    """Attack one ciphertext with the recovered ldpc structure.

    ``true_plaintext`` plays the role of a verification oracle: the report
    states whether anything the attack produced matches it.  Pass a
    previously recovered structure to amortize the Stern search across
    many ciphertexts.
    """
    params = pk.params
    if recovered is None:
        recovered = recover_dual_structure(pk, rng, max_iterations=max_iterations)
    if recovered is None:
        return AttackReport(
            n0=params.n0, r=params.r, w2=params.w2,
            row_found=False, recovered_row_weight=None,
            orthogonal=False, rotations_complete=False,
            stern_iterations=max_iterations,
            direct_decode_success=False, direct_decode_iterations=0,
            combined_decode_success=False, combined_decode_iterations=0,
            residual_weight=None, attack_succeeded=False,
        )

    cfg = ldpc_decoder_config(params)
    m2 = true_plaintext.slice(params.k, params.k)
    true_codeword = pk.sg2.vec_mul(m2)

    # (b) c2 alone: still carries the first coordinate's codeword as noise
    direct = decode(recovered.parity, ct.c2, cfg)
    # (c) c1 + c2: first coordinate cancels, z1 + z2 + mask(z1) remains
    combined_word = ct.c1 ^ ct.c2
    combined = decode(recovered.parity, combined_word, cfg)
    residual_weight = (combined_word ^ true_codeword).weight

    def recovers(outcome) -> bool:
        return bool(outcome.success and outcome.codeword == true_codeword)

    return AttackReport(
        n0=params.n0,
        r=params.r,
        w2=params.w2,
        row_found=True,
        recovered_row_weight=recovered.row.weight,
        orthogonal=True,
        rotations_complete=recovered.complete,
        stern_iterations=recovered.iterations,
        direct_decode_success=bool(direct.success),
        direct_decode_iterations=direct.iterations,
        combined_decode_success=bool(combined.success),
        combined_decode_iterations=combined.iterations,
        residual_weight=residual_weight,
        attack_succeeded=recovers(direct) or recovers(combined),
    )
