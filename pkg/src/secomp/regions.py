"""Compression-equivocation rate regions and auxiliary-channel search.

The secrecy objective I(A;B|U) - I(A;E|U) is maximized over conditional
channels p(u|.) whose conditioning set depends on which side-information
sequences the encoder sees. The objective is not concave in the channel, so
the search is a multi-start local ascent over the product of row simplexes:
each start draws every row from a symmetric Dirichlet(1), then sweeps row by
row doing golden-section line search along random in-simplex directions until
a full sweep improves the objective by less than ``tol``.

Two deterministic warm starts are always injected on top of the random ones:
the uniform (input-ignoring) channel, whose objective is the plain
Slepian-Wolf baseline I(A;B) - I(A;E), and any caller-supplied channels.
Reported values are therefore certified lower bounds on the true maximum,
never below the baseline; ``starts_agreeing`` is the convergence diagnostic.

All randomness derives from (seed, start index), so runs are reproducible
bit for bit and starts could execute concurrently without changing results.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .probability import (
    Alphabet,
    Channel,
    DistributionError,
    JointPMF,
    build_joint,
    entropy_of,
    mutual_information_of,
    require_variables,
)

# Objective magnitudes below numerical resolution are reported as exactly 0.
_SNAP_TOL = 1e-12

_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0
_GOLDEN_ITERS = 28
_DIRECTIONS_PER_ROW = 2


@dataclass(frozen=True)
class SwitchConfig:
    """Which side-information sequences the encoder observes.

    Closing a switch adds the corresponding variable to the conditioning set
    of the auxiliary channel: none -> {A}, S_B -> {A,B}, S_E -> {A,E},
    both -> {A,B,E}.
    """

    s_b: str = "open"
    s_e: str = "open"

    def __post_init__(self) -> None:
        for label, value in (("s_b", self.s_b), ("s_e", self.s_e)):
            if value not in ("open", "closed"):
                raise ValueError(f"{label} must be 'open' or 'closed', got {value!r}")

    @classmethod
    def from_name(cls, name: str) -> "SwitchConfig":
        table = {
            "none": ("open", "open"),
            "sb": ("closed", "open"),
            "se": ("open", "closed"),
            "both": ("closed", "closed"),
        }
        if name not in table:
            raise ValueError(f"unknown switch configuration {name!r}")
        return cls(*table[name])

    @property
    def name(self) -> str:
        return {
            ("open", "open"): "none",
            ("closed", "open"): "sb",
            ("open", "closed"): "se",
            ("closed", "closed"): "both",
        }[(self.s_b, self.s_e)]

    def conditioning_vars(self) -> tuple[str, ...]:
        cond: tuple[str, ...] = ("A",)
        if self.s_b == "closed":
            cond += ("B",)
        if self.s_e == "closed":
            cond += ("E",)
        return cond


@dataclass(frozen=True)
class RatePoint:
    """A (R_A, R_C, delta) triple in bits/symbol; R_C is None when uncoded."""

    r_a: float
    r_c: float | None
    delta: float

    def __post_init__(self) -> None:
        for label, value in (("r_a", self.r_a), ("r_c", self.r_c), ("delta", self.delta)):
            if value is None:
                continue
            if value < -_SNAP_TOL:
                raise ValueError(f"{label} must be nonnegative, got {value}")
            if value < 0.0:
                object.__setattr__(self, label, 0.0)


@dataclass(frozen=True)
class OptimizerConfig:
    starts: int = 64
    max_iters: int = 500
    tol: float = 1e-9
    seed: int = 0
    u_cardinality: int | None = None

    def __post_init__(self) -> None:
        if self.starts < 1:
            raise ValueError("starts must be >= 1")
        if self.max_iters < 1:
            raise ValueError("max_iters must be >= 1")
        if not self.tol > 0.0:
            raise ValueError("tol must be positive")
        if self.seed < 0:
            raise ValueError("seed must be nonnegative")
        if self.u_cardinality is not None and self.u_cardinality < 1:
            raise ValueError("u_cardinality must be >= 1")


@dataclass(frozen=True, eq=False)
class OptResult:
    """Outcome of one auxiliary-channel maximization.

    ``delta_star`` is max(0, best objective found); a code may always reveal
    everything, so equivocation 0 is trivially achievable and negative
    objectives are clamped. ``objective_trace`` holds each start's final
    value (random starts first, then injected ones); ``starts_agreeing``
    counts starts within ``tol`` of the best.
    """

    delta_star: float
    best_u: Channel
    objective_trace: tuple[float, ...]
    starts_agreeing: int


@dataclass(frozen=True, eq=False)
class CodedBoundResult:
    """Corner of the helper-quantized achievable region for one V channel.

    The certified achievable set is every (R_A', R_C', delta') with
    R_A' >= corner.r_a, R_C' >= corner.r_c, delta' <= delta_star and
    R_A' + delta' >= H(A|E). ``sum_ok`` records whether the corner itself
    already sits on or above that last floor.
    """

    corner: RatePoint
    delta_star: float
    sum_ok: bool
    opt: OptResult


def secrecy_objective(
    joint_abe: JointPMF, u_channel: Channel, switches: SwitchConfig
) -> float:
    """I(A;B|U) - I(A;E|U) for the given auxiliary channel; may be negative.

    The channel must condition on exactly the variables the switch
    configuration makes available to the encoder.
    """
    require_variables(joint_abe, ("A", "B", "E"))
    cond = switches.conditioning_vars()
    if set(u_channel.from_names) != set(cond):
        raise DistributionError(
            f"channel conditions on {u_channel.from_names}, but switches "
            f"{switches.name!r} require conditioning set {cond}"
        )
    joint_u = build_joint(joint_abe, u_channel)
    u_name = u_channel.to_var[0]
    return mutual_information_of(joint_u, "A", "B", (u_name,)) - mutual_information_of(
        joint_u, "A", "E", (u_name,)
    )


def closed_form_delta(joint_abe: JointPMF, mode: str) -> float:
    """Closed-form equivocation value, clamped at 0.

    ``less_noisy``: I(A;B) - I(A;E), valid when Bob's side information is
    less noisy than Eve's (the caller asserts the hypothesis; see the
    orderings module for checking it). ``se_closed``: I(A;B|E), the exact
    value when the encoder sees Eve's side information.
    """
    require_variables(joint_abe, ("A", "B", "E"))
    if mode == "less_noisy":
        value = mutual_information_of(joint_abe, "A", "B") - mutual_information_of(
            joint_abe, "A", "E"
        )
    elif mode == "se_closed":
        value = mutual_information_of(joint_abe, "A", "B", ("E",))
    else:
        raise ValueError(f"unknown mode {mode!r}; expected 'less_noisy' or 'se_closed'")
    return max(0.0, value)


def maximize_equivocation(
    joint_abe: JointPMF,
    switches: SwitchConfig,
    cfg: OptimizerConfig = OptimizerConfig(),
    extra_starts: Sequence[Channel] = (),
) -> OptResult:
    """Maximize I(A;B|U) - I(A;E|U) over channels p(u | conditioning set).

    ``extra_starts`` channels (conditioning set must match the switches) are
    ascended alongside the random starts; the uniform channel is always
    injected last. Results are deterministic for a fixed ``cfg.seed``.
    """
    require_variables(joint_abe, ("A", "B", "E"))
    return _maximize_secrecy(
        joint_abe,
        x_var="B",
        cond_vars=switches.conditioning_vars(),
        cfg=cfg,
        extra_starts=extra_starts,
    )


def coded_inner_bound_sample(
    joint_ace: JointPMF,
    v_channel: Channel,
    cfg: OptimizerConfig = OptimizerConfig(),
) -> CodedBoundResult:
    """Achievable corner for one helper quantizer V with V - C - (A,E).

    Returns the corner (R_A = H(A|V), R_C = I(C;V)) together with
    delta_star = max(0, max_U I(A;V|U) - I(A;E|U)) over p(u|a). The same
    (U, V) pair feeds all conditions, so the region certified by this corner
    is their intersection over that pair.
    """
    require_variables(joint_ace, ("A", "C", "E"))
    if v_channel.from_names != ("C",):
        raise DistributionError(
            f"helper quantizer must condition on C only, got {v_channel.from_names}"
        )
    v_name = v_channel.to_var[0]
    joint_v = build_joint(joint_ace, v_channel)
    r_a = entropy_of(joint_v, "A", (v_name,))
    r_c = mutual_information_of(joint_v, "C", v_name)
    opt = _maximize_secrecy(joint_v, x_var=v_name, cond_vars=("A",), cfg=cfg)
    h_a_e = entropy_of(joint_ace, "A", ("E",))
    sum_ok = bool(r_a + opt.delta_star >= h_a_e - 1e-9)
    corner = RatePoint(r_a=r_a, r_c=r_c, delta=opt.delta_star)
    return CodedBoundResult(corner=corner, delta_star=opt.delta_star, sum_ok=sum_ok, opt=opt)


def default_u_cardinality(joint: JointPMF, cond_vars: Sequence[str]) -> int:
    """|A|+1 when conditioning on A alone, else (product of sizes) + 1."""
    sizes = [joint.alphabet(v).size for v in cond_vars]
    if tuple(cond_vars) == ("A",):
        return joint.alphabet("A").size + 1
    return int(np.prod(sizes)) + 1


# ---------------------------------------------------------------------------
# internal optimizer machinery (shared with the orderings module)
# ---------------------------------------------------------------------------


def _entropy_bits_batch(m: np.ndarray) -> np.ndarray:
    """Shannon entropy in bits of each leading-axis slice of ``m``."""
    with np.errstate(divide="ignore", invalid="ignore"):
        t = m * np.log2(m)
    t = np.where(m > 0.0, t, 0.0)
    return -t.reshape(m.shape[0], -1).sum(axis=1)


def _entropy_term_objective(
    mass: np.ndarray,
    cond_axes: tuple[int, ...],
    terms: Sequence[tuple[tuple[int, ...], float]],
    const: float = 0.0,
) -> Callable[[np.ndarray], np.ndarray]:
    """Batched objective sum_i sign_i * H(marginal_i of mass x W) + const.

    ``W`` stacks row-major channel tables of shape (starts, rows, symbols);
    each term keeps the listed mass axes plus the attached output axis.
    """
    shape = mass.shape
    sizes = tuple(shape[i] for i in cond_axes)
    grids = np.indices(shape)
    cond_idx = np.ravel_multi_index(tuple(grids[i] for i in cond_axes), sizes)
    ndim = mass.ndim
    plans = []
    for keep, sign in terms:
        drop = tuple(1 + i for i in range(ndim) if i not in keep)
        plans.append((drop, float(sign)))
    base = mass[None, ..., None]

    def objective(w: np.ndarray) -> np.ndarray:
        q = base * w[:, cond_idx, :]
        value = np.full(w.shape[0], const)
        for drop, sign in plans:
            value = value + sign * _entropy_bits_batch(q.sum(axis=drop))
        return value

    return objective


def _golden_max(
    eval_t: Callable[[np.ndarray], np.ndarray], n_batch: int, iters: int
) -> tuple[np.ndarray, np.ndarray]:
    """Batched golden-section maximization over t in [0, 1]."""
    a = np.zeros(n_batch)
    b = np.ones(n_batch)
    x1 = b - _INVPHI * (b - a)
    x2 = a + _INVPHI * (b - a)
    f1 = eval_t(x1)
    f2 = eval_t(x2)
    for _ in range(iters):
        left = f1 >= f2
        a = np.where(left, a, x1)
        b = np.where(left, x2, b)
        old_x1, old_f1 = x1, f1
        old_x2, old_f2 = x2, f2
        x1 = np.where(left, b - _INVPHI * (b - a), old_x2)
        x2 = np.where(left, old_x1, a + _INVPHI * (b - a))
        f_new = eval_t(np.where(left, x1, x2))
        f1 = np.where(left, f_new, old_f2)
        f2 = np.where(left, old_f1, f_new)
    t = np.where(f1 >= f2, x1, x2)
    return t, np.maximum(f1, f2)


def _multistart_ascent(
    objective: Callable[[np.ndarray], np.ndarray],
    n_rows: int,
    n_symbols: int,
    cfg: OptimizerConfig,
    extra_rows: Sequence[np.ndarray] = (),
) -> tuple[np.ndarray, np.ndarray]:
    """Maximize ``objective`` over stacks of per-row simplex distributions.

    Start ``s`` draws from default_rng((seed, s)); random starts come first,
    then ``extra_rows``. Each sweep visits every row, first trying each
    one-hot vertex exactly (the interesting optima often sit at deterministic
    channels, and exact vertex moves both reach them and let the sweep
    improvement drop to zero so termination fires), then golden-section line
    searches toward random simplex points for interior refinement. A start
    freezes once a full sweep improves it by less than ``cfg.tol``.
    Returns (final per-start values, final tables).
    """
    n_starts = cfg.starts + len(extra_rows)
    rngs = [np.random.default_rng((cfg.seed, s)) for s in range(n_starts)]
    w = np.empty((n_starts, n_rows, n_symbols))
    ones = np.ones(n_symbols)
    for s in range(cfg.starts):
        w[s] = rngs[s].dirichlet(ones, size=n_rows)
    for i, rows in enumerate(extra_rows):
        w[cfg.starts + i] = rows
    f = objective(w)
    active = np.ones(n_starts, dtype=bool)
    t_one = np.ones(n_starts)
    for _ in range(cfg.max_iters):
        f_sweep = f.copy()
        for r in range(n_rows):
            for u in range(n_symbols):
                cand = w.copy()
                cand[:, r, :] = 0.0
                cand[:, r, u] = 1.0
                f_cand = objective(cand)
                take = active & (f_cand > f)
                if take.any():
                    w[take, r, :] = 0.0
                    w[take, r, u] = 1.0
                    f = np.where(take, f_cand, f)
            for _ in range(_DIRECTIONS_PER_ROW):
                z = np.stack([rng.dirichlet(ones) for rng in rngs])
                base = w[:, r, :].copy()
                delta = z - base

                def eval_t(t: np.ndarray) -> np.ndarray:
                    cand = w.copy()
                    cand[:, r, :] = base + t[:, None] * delta
                    return objective(cand)

                t_best, f_best = _golden_max(eval_t, n_starts, _GOLDEN_ITERS)
                f_vertex = eval_t(t_one)
                t_best = np.where(f_vertex > f_best, 1.0, t_best)
                f_best = np.maximum(f_vertex, f_best)
                take = active & (f_best > f)
                if take.any():
                    moved = base[take] + t_best[take, None] * delta[take]
                    w[take, r, :] = np.maximum(moved, 0.0)
                    f = np.where(take, f_best, f)
        active &= (f - f_sweep) >= cfg.tol
        if not active.any():
            break
    return f, w


def _rows_for_start(
    channel: Channel, joint: JointPMF, cond_vars: tuple[str, ...], n_symbols: int
) -> np.ndarray:
    """Reorder and zero-pad a channel into an optimizer start table."""
    if set(channel.from_names) != set(cond_vars):
        raise DistributionError(
            f"extra start conditions on {channel.from_names}, expected {cond_vars}"
        )
    aligned = channel.lift(tuple((v, joint.alphabet(v)) for v in cond_vars))
    k = aligned.rows.shape[-1]
    if k > n_symbols:
        raise DistributionError(
            f"extra start has {k} output symbols, exceeding the cardinality bound {n_symbols}"
        )
    rows = aligned.rows.reshape(-1, k)
    if k < n_symbols:
        rows = np.hstack([rows, np.zeros((rows.shape[0], n_symbols - k))])
    return rows


def _maximize_secrecy(
    joint: JointPMF,
    x_var: str,
    cond_vars: tuple[str, ...],
    cfg: OptimizerConfig,
    extra_starts: Sequence[Channel] = (),
) -> OptResult:
    """Shared core: maximize I(A;X|U) - I(A;E|U) over p(u | cond_vars)."""
    a_ax = joint.axis("A")
    x_ax = joint.axis(x_var)
    e_ax = joint.axis("E")
    cond_axes = tuple(joint.axis(v) for v in cond_vars)
    n_symbols = cfg.u_cardinality or default_u_cardinality(joint, cond_vars)
    sizes = tuple(joint.alphabet(v).size for v in cond_vars)
    n_rows = int(np.prod(sizes))
    # I(A;X|U) - I(A;E|U) = H(A|E,U) - H(A|X,U), written as joint entropies.
    objective = _entropy_term_objective(
        joint.mass,
        cond_axes,
        terms=[
            ((a_ax, e_ax), +1.0),
            ((e_ax,), -1.0),
            ((a_ax, x_ax), -1.0),
            ((x_ax,), +1.0),
        ],
    )
    cond_specs = tuple((v, joint.alphabet(v)) for v in cond_vars)
    injected = [_rows_for_start(ch, joint, cond_vars, n_symbols) for ch in extra_starts]
    injected.append(np.full((n_rows, n_symbols), 1.0 / n_symbols))
    f, w = _multistart_ascent(objective, n_rows, n_symbols, cfg, injected)
    best = int(np.argmax(f))
    best_value = float(f[best])
    delta_star = best_value if best_value >= _SNAP_TOL else 0.0
    u_alphabet = Alphabet("U", tuple(f"u{i}" for i in range(n_symbols)))
    best_u = Channel(cond_specs, ("U", u_alphabet), w[best].reshape(*sizes, n_symbols))
    trace = tuple(float(v) for v in f)
    agreeing = int(np.sum(f >= best_value - cfg.tol))
    return OptResult(
        delta_star=delta_star,
        best_u=best_u,
        objective_trace=trace,
        starts_agreeing=agreeing,
    )
