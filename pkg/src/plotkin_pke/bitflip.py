"""Bit-flipping decoders for quasi-cyclic codes, plus a DFR laboratory.

Decoding works on the unsatisfied-parity-check (upc) counts: for a received
word y with syndrome s = H y^T, bit j participates in colWeight checks and
upc[j] of them are currently unsatisfied.  Bits whose count clears a
threshold get flipped.  Two variants:

* ``classic-bf``: flip all selected bits simultaneously each iteration.
* ``backflip``:   same selection, but every flip carries a time-to-live;
                  when the ttl runs out while the bit's checks are still
                  partly unsatisfied, the flip is undone.  Bad flips thus
                  heal instead of cascading, which lets the decoder run many
                  more iterations productively.

Threshold rules: ``majority`` (ceil((colWeight+1)/2), per block),
``fixed`` (per-iteration schedule), and ``max-upc-delta`` (flip everything
within delta of the current maximum count).

Failure is reported in-band through ``DecodeOutcome.success``; decoding is
fully deterministic given (H, y, config).

The second half of the module estimates decoding failure rates (DFR) by
Monte Carlo: fresh code, fresh message, fresh weight-t error per trial,
with exact Clopper-Pearson 95% intervals, and a scan that picks the
largest error weight meeting a target DFR.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from concurrent.futures import ProcessPoolExecutor

import numpy as np
from scipy.stats import beta as _beta

from .gf2 import BitVector, sample_fixed_weight
from .gf2 import _mul_mod, _transpose_row  # packed polynomial kernels
from .qc import QcParams, QcParityCheck, derive_generator, encode, sample_parity_check
from .rng import RandomStream, derive_substream_seed, substream

VARIANTS = ("classic-bf", "backflip")
THRESHOLD_RULES = ("majority", "fixed", "max-upc-delta")


class SelectionError(ValueError):
    """No error weight t >= 1 meets the requested DFR target."""


@dataclass(frozen=True)
class DecoderConfig:
    variant: str = "classic-bf"
    threshold: str = "majority"
    max_iters: int = 50
    fixed_schedule: tuple[int, ...] = ()
    delta: int = 0
    # 8 rather than the conventional 5: with the majority threshold the
    # ttl slope saturation/colWeight needs the larger numerator, or expiry
    # churn swamps convergence right where the mdpc decoder has to work
    # (measured at r=523, w=30: t=18 fails 6.5% with 5, 0.1% with 8)
    ttl_saturation: int = 8

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise ValueError(f"variant must be one of {VARIANTS}")
        if self.threshold not in THRESHOLD_RULES:
            raise ValueError(f"threshold must be one of {THRESHOLD_RULES}")
        if self.max_iters < 1:
            raise ValueError("max_iters must be positive")
        if self.threshold == "fixed":
            if len(self.fixed_schedule) < self.max_iters:
                raise ValueError("fixed schedule shorter than max_iters")
            if any(th < 1 for th in self.fixed_schedule):
                raise ValueError("fixed thresholds must be positive")
        if self.delta < 0:
            raise ValueError("delta must be nonnegative")
        if self.ttl_saturation < 1:
            raise ValueError("ttl_saturation must be positive")


def classic_bf_config(threshold: str = "majority", max_iters: int = 50, **kw) -> DecoderConfig:
    return DecoderConfig(variant="classic-bf", threshold=threshold, max_iters=max_iters, **kw)


def backflip_config(threshold: str = "majority", max_iters: int = 100,
                    ttl_saturation: int = 8, **kw) -> DecoderConfig:
    return DecoderConfig(variant="backflip", threshold=threshold, max_iters=max_iters,
                         ttl_saturation=ttl_saturation, **kw)


@dataclass(frozen=True)
class DecodeOutcome:
    success: bool
    iterations: int
    codeword: BitVector | None
    error_vector: BitVector | None


def _syndrome_int(y_blocks: list[int], h_t_rows: list[int], r: int) -> int:
    s = 0
    for yb, ht in zip(y_blocks, h_t_rows):
        s ^= _mul_mod(yb, ht, r)
    return s


def _unpack_bits(value: int, r: int) -> np.ndarray:
    raw = np.frombuffer(value.to_bytes((r + 7) // 8, "little"), dtype=np.uint8)
    return np.unpackbits(raw, bitorder="little")[:r]


def _gather_indices(supports: list[np.ndarray], r: int) -> list[np.ndarray]:
    # upc of bit j in block i sums s over the support of column j, i.e.
    # positions (j - u) mod r for u in the block's row support
    return [(np.arange(r)[None, :] - supp[:, None]) % r for supp in supports]


def _upc_from_syndrome(s: int, gather: list[np.ndarray], r: int) -> np.ndarray:
    s_arr = _unpack_bits(s, r).astype(np.int32)
    return np.concatenate([s_arr[g].sum(axis=0, dtype=np.int32) for g in gather])


def upc_profile(h: QcParityCheck, word: BitVector) -> np.ndarray:
    """Unsatisfied-check count for every bit position, as an int array."""
    r = h.params.r
    if word.length != h.params.n:
        raise ValueError("word length differs from code length")
    y_blocks = [c.value for c in word.chunks(r)]
    h_t_rows = [_transpose_row(b.row0.value, r) for b in h.blocks]
    supports = [np.array(b.row0.support(), dtype=np.intp) for b in h.blocks]
    s = _syndrome_int(y_blocks, h_t_rows, r)
    return _upc_from_syndrome(s, _gather_indices(supports, r), r)


def decode(h: QcParityCheck, word: BitVector, cfg: DecoderConfig) -> DecodeOutcome:
    """Deterministic bit-flipping decode of ``word`` against parity check ``h``."""
    params = h.params
    r, n = params.r, params.n
    if word.length != n:
        raise ValueError("word length differs from code length")

    y_blocks = [c.value for c in word.chunks(r)]
    h_t_rows = [_transpose_row(b.row0.value, r) for b in h.blocks]
    supports = [np.array(b.row0.support(), dtype=np.intp) for b in h.blocks]
    gather = _gather_indices(supports, r)
    col_weights = np.repeat([len(sp) for sp in supports], r).astype(np.int32)
    majority = (col_weights + 2) // 2  # ceil((colWeight + 1) / 2)

    def apply_toggles(positions: np.ndarray) -> None:
        # batched XOR of all selected bits, then one syndrome recompute;
        # commutativity makes this identical to per-bit updates
        nonlocal s
        bitmap = np.zeros(n, dtype=np.uint8)
        bitmap[positions] = 1
        for i in range(len(y_blocks)):
            packed = np.packbits(bitmap[i * r:(i + 1) * r], bitorder="little")
            y_blocks[i] ^= int.from_bytes(packed.tobytes(), "little")
        s = _syndrome_int(y_blocks, h_t_rows, r)

    def finish(success: bool, iterations: int) -> DecodeOutcome:
        if not success:
            return DecodeOutcome(False, iterations, None, None)
        cw = BitVector(0, 0)
        for i, yb in enumerate(y_blocks):
            cw = cw.concat(BitVector(r, yb))
        return DecodeOutcome(True, iterations, cw, word ^ cw)

    s = _syndrome_int(y_blocks, h_t_rows, r)
    if s == 0:
        return finish(True, 0)

    backflip = cfg.variant == "backflip"
    ttl = np.zeros(n, dtype=np.int32) if backflip else None  # 0 = not pending
    for iteration in range(1, cfg.max_iters + 1):
        has_pending = backflip and bool(ttl.any())
        if has_pending:
            upc = _upc_from_syndrome(s, gather, r)
            active = ttl > 0
            ttl[active] -= 1
            expired = active & (ttl == 0)
            undo = np.nonzero(expired & (upc > 0))[0]  # support still unsatisfied
            if undo.size:
                apply_toggles(undo)
                if s == 0:
                    return finish(True, iteration)
            has_pending = bool(ttl.any())

        upc = _upc_from_syndrome(s, gather, r)
        if cfg.threshold == "majority":
            thresholds = majority
        elif cfg.threshold == "fixed":
            thresholds = cfg.fixed_schedule[iteration - 1]
        else:  # max-upc-delta; clamp so zero-count bits never qualify
            thresholds = max(int(upc.max()) - cfg.delta, 1)
        flips = np.nonzero(upc >= thresholds)[0]

        if flips.size == 0 and not has_pending:
            return finish(False, iteration)  # stalled: nothing can change

        if flips.size:
            if backflip:
                fresh = flips[ttl[flips] == 0]  # the rest: undo a pending flip early
                th = thresholds[fresh] if isinstance(thresholds, np.ndarray) else thresholds
                margin = upc[fresh] - th
                ttl[flips] = 0
                ttl[fresh] = np.minimum(
                    cfg.ttl_saturation,
                    1 + (margin * cfg.ttl_saturation) // col_weights[fresh],
                )
            apply_toggles(flips)
            if s == 0:
                return finish(True, iteration)

    return finish(False, cfg.max_iters)


# ---------------------------------------------------------------------------
# DFR estimation


def clopper_pearson(failures: int, trials: int, confidence: float = 0.95) -> tuple[float, float]:
    """Exact binomial confidence interval for a failure count."""
    if not 0 <= failures <= trials or trials < 1:
        raise ValueError("need 0 <= failures <= trials, trials >= 1")
    alpha = 1.0 - confidence
    lo = 0.0 if failures == 0 else float(_beta.ppf(alpha / 2, failures, trials - failures + 1))
    hi = 1.0 if failures == trials else float(_beta.ppf(1 - alpha / 2, failures + 1, trials - failures))
    return lo, hi


@dataclass(frozen=True)
class DfrReport:
    params: QcParams
    t: int
    variant: str
    trials: int
    failures: int
    dfr: float
    ci_low: float
    ci_high: float
    seed: str

    def to_dict(self) -> dict:
        return {
            "params": {
                "n0": self.params.n0,
                "r": self.params.r,
                "w": self.params.w,
                "flavor": self.params.flavor,
            },
            "t": self.t,
            "variant": self.variant,
            "trials": self.trials,
            "failures": self.failures,
            "dfr": self.dfr,
            "ciLow": self.ci_low,
            "ciHigh": self.ci_high,
            "seed": self.seed,
        }

    def to_json(self) -> str:
        """Single-line JSON record."""
        return json.dumps(self.to_dict(), separators=(",", ":"))


def _dfr_trial(params: QcParams, t: int, cfg: DecoderConfig, stream: RandomStream) -> bool:
    """One Monte-Carlo trial; True on decoding failure.

    A "failure" is anything other than recovering the transmitted codeword,
    so a miscorrection (valid but wrong codeword) also counts.
    """
    h = sample_parity_check(stream, params)
    gen = derive_generator(h)
    message = BitVector(params.k, stream.take_bits(params.k))
    codeword = encode(gen, message)
    error = sample_fixed_weight(stream, params.n, t)
    outcome = decode(h, codeword ^ error, cfg)
    return not (outcome.success and outcome.codeword == codeword)


def _dfr_range(params: QcParams, t: int, cfg: DecoderConfig, seed: bytes,
               lo: int, hi: int) -> int:
    failures = 0
    for i in range(lo, hi):
        failures += _dfr_trial(params, t, cfg, substream(seed, i))
    return failures


def estimate_dfr(params: QcParams, t: int, cfg: DecoderConfig, trials: int,
                 rng: RandomStream, workers: int = 1) -> DfrReport:
    """Monte-Carlo DFR estimate with a 95% Clopper-Pearson interval.

    Trial i draws everything from the independent substream
    derive(seed, i) of the master seed, so the report is bit-for-bit
    reproducible and does not depend on how trials are split across
    workers.  Worker results are merged in worker order.
    """
    if trials < 1:
        raise ValueError("trials must be positive")
    seed = rng.seed
    if workers <= 1:
        failures = _dfr_range(params, t, cfg, seed, 0, trials)
    else:
        bounds = [trials * i // workers for i in range(workers + 1)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            counts = list(
                pool.map(
                    _dfr_range,
                    [params] * workers,
                    [t] * workers,
                    [cfg] * workers,
                    [seed] * workers,
                    bounds[:-1],
                    bounds[1:],
                )
            )
        failures = sum(counts)
    ci_low, ci_high = clopper_pearson(failures, trials)
    return DfrReport(
        params=params,
        t=t,
        variant=cfg.variant,
        trials=trials,
        failures=failures,
        dfr=failures / trials,
        ci_low=ci_low,
        ci_high=ci_high,
        seed=seed.hex(),
    )


def select_t_for_dfr(params: QcParams, target_dfr: float, budget: int,
                     cfg: DecoderConfig, rng: RandomStream) -> int:
    """Largest error weight whose measured DFR upper bound meets the target.

    An error weight qualifies when the 95% Clopper-Pearson upper bound on
    its DFR over ``budget`` trials is <= target_dfr.  The scan doubles t
    upward until a weight disqualifies (the upper bracket), then walks down
    linearly and returns the first qualifying weight.  Measurements abort
    early once the accumulated failures already push the final upper bound
    past the target, which keeps clearly-bad weights cheap.

    Trials for weight t use substreams of derive(seed, t), so measurements
    for a given (seed, t, budget) are identical across calls; with a shared
    seed the returned weight is monotone in target_dfr.

    Raises SelectionError when not even t = 1 qualifies.
    """
    if not 0.0 < target_dfr <= 1.0:
        raise ValueError("target_dfr must lie in (0, 1]")
    if budget < 10.0 / target_dfr:
        raise ValueError("budget too small to resolve target_dfr (need >= 10/target)")
    seed = rng.seed
    cache: dict[int, bool] = {}

    def qualifies(t: int) -> bool:
        if t in cache:
            return cache[t]
        t_seed = derive_substream_seed(seed, t)
        failures = 0
        ok = True
        for i in range(budget):
            failures += _dfr_trial(params, t, cfg, substream(t_seed, i))
            if failures and clopper_pearson(failures, budget)[1] > target_dfr:
                ok = False
                break
        cache[t] = ok
        return ok

    n = params.n
    bracket = None
    t = 1
    while t <= n:
        if not qualifies(t):
            bracket = t
            break
        t *= 2
    start = n if bracket is None else bracket - 1
    for t in range(start, 0, -1):
        if qualifies(t):
            return t
    raise SelectionError(
        f"no error weight t >= 1 meets target {target_dfr:g} within {budget} trials")
