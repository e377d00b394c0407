"""Named parameter sets.

The six full-size presets pair an mdpc block size r with the sparse row
weights and error weights sized for 128/192/256-bit security, in both a
one-shot (cpa) and a reusable-key (cca) flavor; the reusable-key rows use
a larger r so the decoder's failure rate drops below the reuse threshold.
Both coordinates are decoded independently, so the second error weight
defaults to the first.

The toy preset is for tests and demos: r=523 decodes in milliseconds.
Its error weights were derived by running ``select_t_for_dfr`` per
coordinate (target DFR 1e-2, budget 2000 trials) with the seed recorded
below, and are re-derivable via scripts/derive_toy_error_weights.py.
The one-step majority decoder is brittle on a column-weight-3 block,
so the ldpc coordinate only supports a single error at this size.
"""

from __future__ import annotations

from .scheme import SchemeParams

# seed bytes.fromhex("0a" * 32), target 1e-2, budget 2000:
#   mdpc coordinate (r=523, w=30, backflip)    -> t = 18
#   ldpc coordinate (r=523, w=8, classic-bf)   -> t = 1
TOY_SELECTION_SEED = "0a" * 32
TOY_T1 = 18
TOY_T2 = 1

PRESETS: dict[str, SchemeParams] = {
    "toy": SchemeParams(
        n0=2, r=523, w1=30, w2=8, t1=TOY_T1, t2=TOY_T2, security_level=0
    ),
    "cpa128": SchemeParams(
        n0=2, r=10163, w1=142, w2=14, t1=134, t2=134, security_level=128
    ),
    "cca128": SchemeParams(
        n0=2, r=11779, w1=142, w2=14, t1=134, t2=134, security_level=128
    ),
    "cpa192": SchemeParams(
        n0=2, r=19853, w1=206, w2=15, t1=199, t2=199, security_level=192
    ),
    "cca192": SchemeParams(
        n0=2, r=24821, w1=206, w2=15, t1=199, t2=199, security_level=192
    ),
    "cpa256": SchemeParams(
        n0=2, r=32749, w1=274, w2=15, t1=264, t2=264, security_level=256
    ),
    "cca256": SchemeParams(
        n0=2, r=40597, w1=274, w2=15, t1=264, t2=264, security_level=256
    ),
}


def preset(name: str) -> SchemeParams:
    try:
        return PRESETS[name]
    except KeyError:
        known = ", ".join(sorted(PRESETS))
        raise KeyError(f"unknown preset {name!r}; known presets: {known}") from None
