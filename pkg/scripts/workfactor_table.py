#!/usr/bin/env python3
"""Print the attack work factors for every built-in parameter set.

Two columns matter: message recovery (the designed security level) and key
recovery against the ldpc dual (the structural weakness this package
demonstrates).  Values are log2 of element operations.
"""

import argparse
import json

from plotkin_pke import PRESETS, keyrec_workfactor, msgrec_workfactor, preset, public_key_bits


def rows():
    for name in sorted(PRESETS):
        params = preset(name)
        msg = msgrec_workfactor(params)
        key = keyrec_workfactor(params)
        yield {
            "preset": name,
            "n": params.n,
            "r": params.r,
            "w1": params.w1,
            "t1": params.t1,
            "w2": params.w2,
            "publicKeyBits": public_key_bits(params),
            "messageRecoveryBits": round(msg.log2_work_factor, 2),
            "messageRecoveryParams": msg.params,
            "keyRecoveryBits": round(key.log2_work_factor, 2),
            "keyRecoveryAlgorithm": key.algorithm,
        }


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--json", action="store_true", help="one JSON object per line")
    args = parser.parse_args()

    if args.json:
        for row in rows():
            print(json.dumps(row, separators=(",", ":")))
        return 0

    header = f"{'preset':8} {'n':>7} {'r':>7} {'w1':>4} {'t1':>4} {'w2':>3} {'pk bits':>8} {'msg WF':>8} {'key WF':>8}"
    print(header)
    print("-" * len(header))
    for row in rows():
        print(
            f"{row['preset']:8} {row['n']:>7} {row['r']:>7} {row['w1']:>4} "
            f"{row['t1']:>4} {row['w2']:>3} {row['publicKeyBits']:>8} "
            f"{row['messageRecoveryBits']:>8.2f} {row['keyRecoveryBits']:>8.2f}"
        )
    print()
    print("msg WF: bjmm2 cost / sqrt(r); key WF: best ISD cost / r (quasi-cyclic gains)")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
