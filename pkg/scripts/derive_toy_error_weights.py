#!/usr/bin/env python3
"""Regenerate the toy preset's error weights.

Selects, per coordinate, the largest error weight whose 95% Clopper-Pearson
DFR upper bound stays at or below the target after `budget` Monte Carlo
trials.  The resulting numbers are pinned in plotkin_pke.presets; rerunning
this script with the same seed must reproduce them exactly.
"""

import argparse
import json

from plotkin_pke.bitflip import backflip_config, classic_bf_config, select_t_for_dfr
from plotkin_pke.qc import QcParams
from plotkin_pke.rng import RandomStream, substream

TOY_R = 523
TOY_W1 = 30
TOY_W2 = 8
DEFAULT_SEED = "0a" * 32


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--target", type=float, default=1e-2)
    parser.add_argument("--budget", type=int, default=2000)
    parser.add_argument("--seed", default=DEFAULT_SEED, help="64 hex chars")
    args = parser.parse_args()

    seed = bytes.fromhex(args.seed)
    coordinates = [
        ("t1", QcParams(2, TOY_R, TOY_W1, "mdpc"), backflip_config(), 0),
        ("t2", QcParams(2, TOY_R, TOY_W2, "ldpc"), classic_bf_config(), 1),
    ]
    out = {"seed": args.seed, "target": args.target, "budget": args.budget}
    for name, params, cfg, index in coordinates:
        rng = substream(seed, index)
        out[name] = select_t_for_dfr(params, args.target, args.budget, cfg, rng)
    print(json.dumps(out, indent=2))


if __name__ == "__main__":
    main()
