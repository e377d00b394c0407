"""Command-line front end.

Subcommands: keygen, encrypt, decrypt, dfr, estimate, attack-demo.
Results go to stdout as JSON, diagnostics to stderr.  Exit codes:

    0  success
    2  bad parameters, malformed files, usage errors
    3  generation gave up (no invertible block / scrambler within bounds)
    4  decryption failure (the failing stage is named on stderr)
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import tempfile

from . import wire
from .attack import recover_dual_structure, weak_key_attack_demo
from .bitflip import estimate_dfr, select_t_for_dfr
from .gf2 import BitVector, NotInvertibleError
from .isd import isd_cost, keyrec_workfactor, msgrec_workfactor
from .presets import PRESETS, preset
from .qc import GenerationError
from .rng import RandomStream, substream
from .scheme import (
    DecryptionFailure,
    SchemeParams,
    cca2_variant_public_bits,
    decrypt,
    encrypt,
    keygen,
    ldpc_decoder_config,
    mdpc_decoder_config,
    public_key_bits,
)

EXIT_OK = 0
EXIT_PARAMS = 2
EXIT_GENERATION = 3
EXIT_DECRYPT = 4


def _atomic_write(path: str, data: bytes) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=".part")
    try:
        with os.fdopen(fd, "wb") as handle:
            handle.write(data)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def _parse_seed(text: str | None) -> bytes:
    if text is None:
        return os.urandom(32)
    try:
        seed = bytes.fromhex(text)
    except ValueError:
        raise SystemExit2("--seed must be hex")
    if len(seed) != 32:
        raise SystemExit2("--seed must be 64 hex characters (32 bytes)")
    return seed


class SystemExit2(Exception):
    """Parameter-level error, mapped to exit code 2."""


def _params_from_args(args) -> SchemeParams:
    if args.preset is not None:
        explicit = [args.n0, args.r, args.w1, args.w2, args.t1, args.t2]
        if any(v is not None for v in explicit):
            raise SystemExit2("--preset and explicit parameters are exclusive")
        return preset(args.preset)
    explicit = {"--r": args.r, "--w1": args.w1, "--w2": args.w2,
                "--t1": args.t1, "--t2": args.t2}
    missing = [k for k, v in explicit.items() if v is None]
    if missing:
        raise SystemExit2(
            "give --preset or all of --r --w1 --w2 --t1 --t2 (missing: "
            + " ".join(missing) + ")"
        )
    return SchemeParams(
        n0=args.n0 if args.n0 is not None else 2,
        r=args.r, w1=args.w1, w2=args.w2, t1=args.t1, t2=args.t2,
    )


def _add_params_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--preset", choices=sorted(PRESETS), default=None)
    parser.add_argument("--n0", type=int, default=None)
    parser.add_argument("--r", type=int, default=None)
    parser.add_argument("--w1", type=int, default=None)
    parser.add_argument("--w2", type=int, default=None)
    parser.add_argument("--t1", type=int, default=None)
    parser.add_argument("--t2", type=int, default=None)


def _print(obj: dict) -> None:
    print(json.dumps(obj, indent=2))


def _cmd_keygen(args) -> int:
    params = _params_from_args(args)
    rng = RandomStream(_parse_seed(args.seed))
    pk, sk = keygen(params, rng)
    _atomic_write(args.pub, wire.serialize_public(pk))
    _atomic_write(args.sec, wire.serialize_secret(sk))
    _print({
        "preset": args.preset,
        "n0": params.n0,
        "r": params.r,
        "publicPayloadBits": public_key_bits(params),
        "publicPayloadFormula": "2*(n0-1)*n0*r",
        "cca2VariantPayloadBits": cca2_variant_public_bits(params),
        "publicFile": args.pub,
        "secretFile": args.sec,
    })
    return EXIT_OK


def _cmd_encrypt(args) -> int:
    pk = wire.deserialize_public(_read(args.pub))
    message = wire.unpack_plaintext(_read(args.input), pk.params)
    rng = RandomStream(_parse_seed(args.seed))
    ct = encrypt(pk, message, rng)
    _atomic_write(args.output, wire.serialize_ciphertext(ct))
    _print({
        "plaintextBits": pk.params.plaintext_bits,
        "ciphertextBits": pk.params.ciphertext_bits,
        "ciphertextFile": args.output,
    })
    return EXIT_OK


def _cmd_decrypt(args) -> int:
    sk = wire.deserialize_secret(_read(args.sec))
    ct = wire.deserialize_ciphertext(_read(args.input))
    if ct.params != sk.params:
        raise SystemExit2("ciphertext and secret key carry different parameters")
    message = decrypt(sk, ct)
    _atomic_write(args.output, wire.pack_plaintext(message))
    _print({
        "plaintextBits": sk.params.plaintext_bits,
        "plaintextFile": args.output,
    })
    return EXIT_OK


def _coordinate_setup(params: SchemeParams, which: int):
    if which == 1:
        return params.mdpc_params(), mdpc_decoder_config(params), params.t1
    return params.ldpc_params(), ldpc_decoder_config(params), params.t2


def _cmd_dfr(args) -> int:
    params = _params_from_args(args)
    qc_params, cfg, default_t = _coordinate_setup(params, args.coordinate)
    rng = RandomStream(_parse_seed(args.seed))
    if args.target is not None:
        if args.budget is None:
            raise SystemExit2("--target requires --budget")
        t = select_t_for_dfr(qc_params, args.target, args.budget, cfg, rng)
        _print({
            "coordinate": args.coordinate,
            "targetDfr": args.target,
            "budget": args.budget,
            "selectedT": t,
        })
        return EXIT_OK
    t = args.t if args.t is not None else default_t
    report = estimate_dfr(qc_params, t, cfg, args.trials, rng, workers=args.workers)
    _print(report.to_dict())
    return EXIT_OK


def _cmd_estimate(args) -> int:
    params = _params_from_args(args)
    n, k = params.n, params.k
    per_algorithm = {
        "keyRecovery": {
            alg: isd_cost(alg, n, k, params.w2).to_dict()
            for alg in ("prange", "stern", "bjmm2")
        },
        "messageRecovery": {
            alg: isd_cost(alg, n, k, params.t1).to_dict()
            for alg in ("prange", "stern", "bjmm2")
        },
    }
    keyrec = keyrec_workfactor(params)
    msgrec = msgrec_workfactor(params)
    _print({
        "preset": args.preset,
        "n": n,
        "k": k,
        "keyRecovery": keyrec.to_dict(),
        "messageRecovery": msgrec.to_dict(),
        "rawCosts": per_algorithm,
    })
    return EXIT_OK


def _cmd_attack_demo(args) -> int:
    params = SchemeParams(
        n0=2, r=args.r, w1=args.w1, w2=args.w2, t1=args.t1, t2=args.t2
    )
    rng = RandomStream(_parse_seed(args.seed))
    pk, _ = keygen(params, substream(rng.seed, 0))
    recovered = recover_dual_structure(
        pk, substream(rng.seed, 1), max_iterations=args.stern_iterations
    )
    reports = []
    sample_rng = substream(rng.seed, 2)
    for _ in range(args.samples):
        message = BitVector(params.plaintext_bits,
                            sample_rng.take_bits(params.plaintext_bits))
        ct = encrypt(pk, message, sample_rng)
        report = weak_key_attack_demo(
            pk, ct, message, sample_rng, recovered=recovered,
            max_iterations=args.stern_iterations,
        )
        reports.append(report.to_dict())
    _print({
        "r": params.r,
        "w2": params.w2,
        "rowFound": recovered is not None,
        "recoveredRowWeight": None if recovered is None else recovered.row.weight,
        "rotationsComplete": False if recovered is None else recovered.complete,
        "samples": reports,
        "anyPlaintextRecovered": any(rep["attackSucceeded"] for rep in reports),
    })
    return EXIT_OK


def _read(path: str) -> bytes:
    with open(path, "rb") as handle:
        return handle.read()


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="plotkin-pke",
        description="Plotkin-concatenated QC code PKE and analysis lab",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("keygen", help="generate a key pair")
    _add_params_options(p)
    p.add_argument("--pub", required=True, help="public key output path")
    p.add_argument("--sec", required=True, help="secret key output path")
    p.add_argument("--seed", default=None, help="64 hex chars; default random")
    p.set_defaults(func=_cmd_keygen)

    p = sub.add_parser("encrypt", help="encrypt a packed plaintext file")
    p.add_argument("--pub", required=True)
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out", dest="output", required=True)
    p.add_argument("--seed", default=None)
    p.set_defaults(func=_cmd_encrypt)

    p = sub.add_parser("decrypt", help="decrypt a ciphertext file")
    p.add_argument("--sec", required=True)
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out", dest="output", required=True)
    p.set_defaults(func=_cmd_decrypt)

    p = sub.add_parser("dfr", help="decoding failure rate: estimate or select t")
    _add_params_options(p)
    p.add_argument("--coordinate", type=int, choices=(1, 2), default=1)
    p.add_argument("--t", type=int, default=None, help="error weight to estimate at")
    p.add_argument("--trials", type=int, default=1000)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--target", type=float, default=None,
                   help="select the largest t meeting this DFR instead")
    p.add_argument("--budget", type=int, default=None,
                   help="trials per candidate t (selection mode)")
    p.add_argument("--seed", default=None)
    p.set_defaults(func=_cmd_dfr)

    p = sub.add_parser("estimate", help="ISD work factor estimates")
    _add_params_options(p)
    p.set_defaults(func=_cmd_estimate)

    p = sub.add_parser("attack-demo", help="structure recovery on a desk-size key")
    p.add_argument("--r", type=int, default=101)
    p.add_argument("--w1", type=int, default=14)
    p.add_argument("--w2", type=int, default=6)
    p.add_argument("--t1", type=int, default=4)
    p.add_argument("--t2", type=int, default=4)
    p.add_argument("--samples", type=int, default=3)
    p.add_argument("--stern-iterations", type=int, default=500)
    p.add_argument("--seed", default=None)
    p.set_defaults(func=_cmd_attack_demo)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except SystemExit2 as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARAMS
    except (wire.WireFormatError, ValueError, KeyError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARAMS
    except (GenerationError, NotInvertibleError) as exc:
        print(f"generation failed: {exc}", file=sys.stderr)
        return EXIT_GENERATION
    except DecryptionFailure as exc:
        print(f"decryption failed at stage: {exc.stage}", file=sys.stderr)
        return EXIT_DECRYPT


if __name__ == "__main__":
    sys.exit(main())
