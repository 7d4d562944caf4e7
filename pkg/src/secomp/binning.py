"""Small-blocklength Monte Carlo checks of the random-binning achievability.

Two schemes are simulated with exact per-realization posteriors:

* plain random binning of the source block, decoded by Bob via exact maximum
  posterior within the announced bin (constant auxiliary variable, side
  information used uncoded), with the eavesdropper's equivocation computed
  from her exact bin-restricted posterior;
* the erasure transmit-the-gaps scheme, where the encoder knows Bob's
  observation and sends exactly the bits Bob is missing (the gap-filling
  auxiliary sequence), and the eavesdropper conditions her exact posterior
  on the filled positions and values.

Blocklengths stay desk-scale because both Bob's decoding and Eve's posterior
enumerate sequences exhaustively; that is the point, since exact posteriors
make the equivocation estimate unbiased with a reportable standard error.
Trial t draws from default_rng((seed, 1, t)), the bin table from
default_rng((seed, 0)); reports are reproducible bit for bit and the
per-trial records are aggregated in trial order.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .erasure import ErasureParams
from .probability import JointPMF, require_variables

# Exhaustive posterior enumeration must fit: |A|^n sequences.
_MAX_SEQUENCES = 2**20
# The gap-transmission posterior sums over erasure-pattern subsets; past this
# blocklength the candidate sets grow out of desk scale.
_MAX_GAP_SCHEME_N = 12

# Posterior ties are compared with this relative slack; for erasure-style
# conditionals the weights are exact dyadics and ties are exact anyway.
_TIE_REL_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class BinningCode:
    """Seeded random assignment of source sequences to bins.

    The table is materialized explicitly for exact reproducibility. When the
    bin count reaches the sequence count the assignment is the identity, so
    full-rate codes reveal the sequence and give zero equivocation exactly.
    """

    n: int
    rate: float
    n_bins: int
    bin_of: np.ndarray
    seed: int

    def __post_init__(self) -> None:
        arr = np.asarray(self.bin_of, dtype=np.int64)
        if arr.ndim != 1:
            raise ValueError("bin_of must be one-dimensional")
        if arr.size and (arr.min() < 0 or arr.max() >= self.n_bins):
            raise ValueError("bin index out of range")
        arr.flags.writeable = False
        object.__setattr__(self, "bin_of", arr)


@dataclass(frozen=True)
class SimReport:
    """Monte Carlo summary: error rate and per-symbol equivocation."""

    trials: int
    p_e_hat: float
    equiv_hat: float
    equiv_stderr: float
    seed: int

    def __post_init__(self) -> None:
        if not 0.0 <= self.p_e_hat <= 1.0:
            raise ValueError("p_e_hat must be in [0, 1]")
        if self.equiv_hat < 0.0:
            raise ValueError("equiv_hat must be nonnegative")


def exact_posterior_entropy(weights) -> float:
    """Shannon entropy in bits of the normalized weight vector."""
    w = np.asarray(weights, dtype=float).reshape(-1)
    if w.size == 0:
        raise ValueError("empty weight vector")
    if (w < 0.0).any():
        raise ValueError("weights must be nonnegative")
    total = w.sum()
    if total <= 0.0:
        raise ValueError("all weights are zero")
    p = w / total
    p = p[p > 0.0]
    return float(-(p * np.log2(p)).sum())


def make_binning_code(n: int, rate: float, alphabet_size: int, seed: int) -> BinningCode:
    """Assign every length-n sequence a bin; 2^ceil(n*rate) bins."""
    if n < 1:
        raise ValueError("blocklength must be positive")
    n_seq = alphabet_size**n
    if n_seq > _MAX_SEQUENCES:
        raise ValueError(
            f"{alphabet_size}^{n} sequences exceed the enumeration limit {_MAX_SEQUENCES}"
        )
    bits = max(math.ceil(n * rate - 1e-9), 0)
    n_bins = 2**bits
    if n_bins >= n_seq:
        table = np.arange(n_seq, dtype=np.int64)
    else:
        rng = np.random.default_rng((seed, 0))
        table = rng.integers(0, n_bins, size=n_seq, dtype=np.int64)
    return BinningCode(n=n, rate=rate, n_bins=n_bins, bin_of=table, seed=seed)


def _sequence_table(n_seq: int, n: int, alphabet_size: int) -> np.ndarray:
    """(n_seq, n) symbol-index table; position 0 is the most significant."""
    table = np.empty((n_seq, n), dtype=np.uint8)
    idx = np.arange(n_seq)
    for pos in range(n - 1, -1, -1):
        table[:, pos] = idx % alphabet_size
        idx //= alphabet_size
    return table


class _SwContext(NamedTuple):
    joint: JointPMF
    n: int
    code: BinningCode
    flat: np.ndarray
    cell_shape: tuple[int, int, int]
    radix: np.ndarray
    seq_table: np.ndarray
    p_a_given_b: np.ndarray
    p_a_given_e: np.ndarray
    members_order: np.ndarray
    members_start: np.ndarray
    members_end: np.ndarray


class _SwTrial(NamedTuple):
    error: bool
    tie: bool
    equiv: float
    seq_index: int
    bin_index: int
    decoded_index: int
    a: np.ndarray
    b: np.ndarray
    e: np.ndarray


def _sw_context(joint_abe: JointPMF, n: int, rate: float, seed: int) -> _SwContext:
    require_variables(joint_abe, ("A", "B", "E"))
    mass = np.moveaxis(joint_abe.mass, joint_abe.axes(("A", "B", "E")), (0, 1, 2))
    n_a, n_b, n_e = mass.shape
    if not 0.0 <= rate <= math.log2(n_a) + 1e-12:
        raise ValueError(f"rate must lie in [0, log2 {n_a}], got {rate}")
    code = make_binning_code(n, rate, n_a, seed)
    p_ab = mass.sum(axis=2)
    p_ae = mass.sum(axis=1)
    with np.errstate(invalid="ignore", divide="ignore"):
        p_a_given_b = np.where(p_ab.sum(axis=0) > 0.0, p_ab / p_ab.sum(axis=0), 1.0 / n_a)
        p_a_given_e = np.where(p_ae.sum(axis=0) > 0.0, p_ae / p_ae.sum(axis=0), 1.0 / n_a)
    order = np.argsort(code.bin_of, kind="stable")
    sorted_bins = code.bin_of[order]
    starts = np.searchsorted(sorted_bins, np.arange(code.n_bins), side="left")
    ends = np.searchsorted(sorted_bins, np.arange(code.n_bins), side="right")
    n_seq = n_a**n
    return _SwContext(
        joint=joint_abe,
        n=n,
        code=code,
        flat=mass.reshape(-1),
        cell_shape=(n_a, n_b, n_e),
        radix=(n_a ** np.arange(n - 1, -1, -1)).astype(np.int64),
        seq_table=_sequence_table(n_seq, n, n_a),
        p_a_given_b=p_a_given_b,
        p_a_given_e=p_a_given_e,
        members_order=order,
        members_start=starts,
        members_end=ends,
    )


def _sw_trial(ctx: _SwContext, rng: np.random.Generator) -> _SwTrial:
    cells = rng.choice(ctx.flat.size, size=ctx.n, p=ctx.flat)
    a_idx, b_idx, e_idx = np.unravel_index(cells, ctx.cell_shape)
    seq_index = int(a_idx @ ctx.radix)
    bin_index = int(ctx.code.bin_of[seq_index])
    members = ctx.members_order[
        ctx.members_start[bin_index] : ctx.members_end[bin_index]
    ]
    members = np.sort(members)
    symbols = ctx.seq_table[members]
    bob = ctx.p_a_given_b[symbols, b_idx[None, :]].prod(axis=1)
    true_pos = int(np.searchsorted(members, seq_index))
    if bob[true_pos] <= 0.0:
        raise ArithmeticError("sampled sequence has zero posterior at Bob")
    best = bob.max()
    winners = np.flatnonzero(bob >= best * (1.0 - _TIE_REL_TOL))
    decoded_index = int(members[winners[0]])
    tie = winners.size > 1
    error = tie or decoded_index != seq_index
    eve = ctx.p_a_given_e[symbols, e_idx[None, :]].prod(axis=1)
    if eve[true_pos] <= 0.0:
        raise ArithmeticError("sampled sequence has zero posterior at Eve")
    equiv = exact_posterior_entropy(eve) / ctx.n
    return _SwTrial(
        error=error,
        tie=tie,
        equiv=equiv,
        seq_index=seq_index,
        bin_index=bin_index,
        decoded_index=decoded_index,
        a=np.asarray(a_idx),
        b=np.asarray(b_idx),
        e=np.asarray(e_idx),
    )


def run_sw_binning(
    joint_abe: JointPMF, n: int, rate: float, trials: int, seed: int
) -> SimReport:
    """Simulate random binning with uncoded side information at Bob.

    Per trial: draw an i.i.d. block from the joint, announce the bin of the
    source block, decode at Bob by exact maximum posterior within the bin
    (any tie counts as an error), and score the eavesdropper's equivocation
    as the entropy of her exact posterior over the bin, per symbol.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    ctx = _sw_context(joint_abe, n, rate, seed)
    errors = np.zeros(trials, dtype=bool)
    equivs = np.zeros(trials)
    for t in range(trials):
        record = _sw_trial(ctx, np.random.default_rng((seed, 1, t)))
        errors[t] = record.error
        equivs[t] = record.equiv
    stderr = float(equivs.std(ddof=1) / math.sqrt(trials)) if trials > 1 else 0.0
    return SimReport(
        trials=trials,
        p_e_hat=float(errors.mean()),
        equiv_hat=float(equivs.mean()),
        equiv_stderr=stderr,
        seed=seed,
    )


class _GapTrial(NamedTuple):
    equiv: float
    message_length: int
    a: np.ndarray
    bob_erased: np.ndarray
    eve_erased: np.ndarray


def _gap_trial(params: ErasureParams, n: int, rng: np.random.Generator) -> _GapTrial:
    a = rng.integers(0, 2, size=n)
    bob_erased = rng.random(n) < params.p_b
    eve_erased = rng.random(n) < params.p_e
    # The gap-filling sequence is "the source bit where Bob is erased, a
    # constant elsewhere", so the transmission pins down both the filled
    # positions and their values for everyone listening.
    free = np.flatnonzero(eve_erased)
    n_candidates = 1 << free.size
    candidates = np.tile(a, (n_candidates, 1))
    if free.size:
        combos = (np.arange(n_candidates)[:, None] >> np.arange(free.size)[None, :]) & 1
        candidates[:, free] = combos
    match = (candidates[:, bob_erased] == a[bob_erased]).all(axis=1)
    equiv = exact_posterior_entropy(match.astype(float)) / n
    return _GapTrial(
        equiv=equiv,
        message_length=int(bob_erased.sum()),
        a=a,
        bob_erased=bob_erased,
        eve_erased=eve_erased,
    )


def run_erasure_encoder_scheme(
    params: ErasureParams, n: int, trials: int, seed: int
) -> SimReport:
    """Simulate the transmit-the-gaps scheme for erasure side information.

    The encoder sees Bob's observation and sends the source bits at Bob's
    erased positions in increasing index order, so Bob reconstructs exactly
    and the error probability is zero by construction. The transmission is
    the gap-filling auxiliary sequence itself, so the eavesdropper learns the
    filled positions along with their values; her exact posterior is uniform
    over the source blocks matching her own unerased symbols and the filled
    bits, leaving per-symbol equivocation p_e * (1 - p_b) in expectation at
    every blocklength.
    """
    if not 1 <= n <= _MAX_GAP_SCHEME_N:
        raise ValueError(f"blocklength must lie in [1, {_MAX_GAP_SCHEME_N}], got {n}")
    if trials < 1:
        raise ValueError("trials must be >= 1")
    equivs = np.zeros(trials)
    for t in range(trials):
        equivs[t] = _gap_trial(params, n, np.random.default_rng((seed, 1, t))).equiv
    stderr = float(equivs.std(ddof=1) / math.sqrt(trials)) if trials > 1 else 0.0
    return SimReport(
        trials=trials,
        p_e_hat=0.0,
        equiv_hat=float(equivs.mean()),
        equiv_stderr=stderr,
        seed=seed,
    )
