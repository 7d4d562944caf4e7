"""Command-line front end.

Subcommands: ``measures``, ``region uncoded``, ``region coded``, ``order``,
``simulate binning``, ``simulate erasure-scheme``, ``preset erasure``.
Distributions travel as a self-describing JSON file (variable names prevent
axis-order bugs); region sweeps emit CSV for plotting, everything else JSON.

Exit codes: 0 success, 1 malformed file or flags, 2 invariant breach (for
example a PMF that does not normalize). All numeric output is printed with
12 significant digits and all randomness flows from explicit --seed flags,
so repeated runs with identical arguments are byte-identical.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from .binning import run_erasure_encoder_scheme, run_sw_binning
from .erasure import ErasureParams, make_erasure_joint
from .orderings import check_stochastic_degradation, search_less_noisy_violation
from .probability import (
    Alphabet,
    Channel,
    DistributionError,
    JointPMF,
    entropy_of,
    mutual_information_of,
)
from .regions import (
    OptimizerConfig,
    SwitchConfig,
    coded_inner_bound_sample,
    maximize_equivocation,
)


class CliError(Exception):
    """Malformed input file or flag combination (exit code 1)."""


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # argparse defaults to exit code 2
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _round12(value: float) -> float:
    return float(f"{value:.12g}")


def _jsonable(obj):
    if isinstance(obj, float):
        return _round12(obj)
    if isinstance(obj, (np.floating,)):
        return _round12(float(obj))
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return obj


def _emit_json(obj, stream) -> None:
    json.dump(_jsonable(obj), stream, indent=2)
    stream.write("\n")


def channel_to_dict(channel: Channel) -> dict:
    rows = []
    shape = tuple(a.size for _, a in channel.from_vars)
    for idx in np.ndindex(*shape) if shape else [()]:
        given = {
            name: alph.symbols[i]
            for (name, alph), i in zip(channel.from_vars, idx)
        }
        rows.append({"given": given, "pmf": list(channel.rows[idx])})
    return {
        "conditioning": list(channel.from_names),
        "output": channel.to_var[0],
        "output_symbols": list(channel.to_var[1].symbols),
        "rows": rows,
    }


def load_distribution(path: str) -> JointPMF:
    """Read the JSON distribution format into a joint PMF."""
    try:
        data = json.loads(Path(path).read_text())
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise CliError(f"{path} is not valid JSON: {exc}") from exc
    if not isinstance(data, dict) or "alphabets" not in data or "pmf" not in data:
        raise CliError(f"{path} must be an object with 'alphabets' and 'pmf'")
    alphabets = data["alphabets"]
    if not isinstance(alphabets, dict) or not alphabets:
        raise CliError("'alphabets' must map variable names to symbol lists")
    variables = []
    for name, symbols in alphabets.items():
        if not isinstance(symbols, list) or not all(isinstance(s, str) for s in symbols):
            raise CliError(f"alphabet {name!r} must be a list of strings")
        variables.append((name, Alphabet(name, tuple(symbols))))
    shape = tuple(alph.size for _, alph in variables)
    mass = np.zeros(shape)
    records = data["pmf"]
    if not isinstance(records, list):
        raise CliError("'pmf' must be a list of records")
    for rec in records:
        if not isinstance(rec, dict) or "p" not in rec:
            raise CliError(f"pmf record {rec!r} needs a 'p' field")
        try:
            p = float(rec["p"])
        except (TypeError, ValueError):
            raise CliError(f"pmf record {rec!r} has a non-numeric 'p'") from None
        idx = []
        for name, alph in variables:
            if name not in rec:
                raise CliError(f"pmf record {rec!r} misses variable {name!r}")
            symbol = rec[name]
            if symbol not in alph.symbols:
                raise CliError(f"symbol {symbol!r} not in alphabet {name!r}")
            idx.append(alph.symbols.index(symbol))
        mass[tuple(idx)] += p
    return JointPMF(tuple(variables), mass)  # DistributionError -> exit 2


def distribution_to_dict(joint: JointPMF) -> dict:
    records = []
    for idx in np.ndindex(*joint.mass.shape):
        p = float(joint.mass[idx])
        if p == 0.0:
            continue
        rec = {
            name: alph.symbols[i] for (name, alph), i in zip(joint.variables, idx)
        }
        rec["p"] = p
        records.append(rec)
    return {
        "alphabets": {name: list(alph.symbols) for name, alph in joint.variables},
        "pmf": records,
    }


def _cmd_measures(args) -> int:
    joint = load_distribution(args.input)
    names = joint.var_names
    out = {
        "variables": list(names),
        "entropies": {x: entropy_of(joint, x) for x in names},
        "conditional_entropies": {
            f"{x}|{y}": entropy_of(joint, x, y) for x in names for y in names if x != y
        },
        "mutual_informations": {
            f"{x};{y}": mutual_information_of(joint, x, y)
            for i, x in enumerate(names)
            for y in names[i + 1 :]
        },
        "conditional_mutual_informations": {
            f"{x};{y}|{z}": mutual_information_of(joint, x, y, z)
            for i, x in enumerate(names)
            for y in names[i + 1 :]
            for z in names
            if z not in (x, y)
        },
    }
    _emit_json(out, sys.stdout)
    return 0


def _cmd_region_uncoded(args) -> int:
    joint = load_distribution(args.input)
    switches = SwitchConfig.from_name(args.switches)
    cfg = OptimizerConfig(starts=args.starts, seed=args.seed)
    result = maximize_equivocation(joint, switches, cfg)
    out = {
        "r_a_min": entropy_of(joint, "A", "B"),
        "delta_star": result.delta_star,
        "best_u": channel_to_dict(result.best_u),
        "starts_agreeing": result.starts_agreeing,
    }
    _emit_json(out, sys.stdout)
    return 0


def _sample_v_channels(alph_c: Alphabet, count: int, seed: int) -> list[Channel]:
    """Identity and constant corners, then seeded Dirichlet quantizers."""
    channels = [Channel.copy_of(("C", alph_c), "V")]
    if count >= 2:
        channels.append(
            Channel.uniform((("C", alph_c),), ("V", Alphabet("V", ("v0",))))
        )
    n_v = alph_c.size + 2
    v_alph = Alphabet("V", tuple(f"v{i}" for i in range(n_v)))
    for i in range(count - 2):
        rng = np.random.default_rng((seed, 2, i))
        rows = rng.dirichlet(np.ones(n_v), size=alph_c.size)
        channels.append(Channel((("C", alph_c),), ("V", v_alph), rows))
    return channels[:count]


def _cmd_region_coded(args) -> int:
    joint = load_distribution(args.input)
    cfg = OptimizerConfig(starts=args.starts, seed=args.seed)
    channels = _sample_v_channels(joint.alphabet("C"), args.v_grid, args.seed)
    sys.stdout.write("r_a,r_c,delta_star\n")
    for channel in channels:
        result = coded_inner_bound_sample(joint, channel, cfg)
        sys.stdout.write(
            f"{result.corner.r_a:.12g},{result.corner.r_c:.12g},{result.delta_star:.12g}\n"
        )
    return 0


def _cmd_order(args) -> int:
    joint = load_distribution(args.input)
    if args.check == "degraded-eb":
        verdict = check_stochastic_degradation(joint, "e_degraded_wrt_b")
    elif args.check == "degraded-be":
        verdict = check_stochastic_degradation(joint, "b_degraded_wrt_e")
    elif args.check == "less-noisy-eb":
        verdict = search_less_noisy_violation(
            joint, OptimizerConfig(starts=args.starts, seed=args.seed),
            direction="b_less_noisy_than_e",
        )
    else:  # less-noisy-be
        verdict = search_less_noisy_violation(
            joint, OptimizerConfig(starts=args.starts, seed=args.seed),
            direction="e_less_noisy_than_b",
        )
    out = {
        "check": args.check,
        "kind": verdict.kind,
        "certificate": channel_to_dict(verdict.certificate)
        if verdict.certificate
        else None,
        "witness": channel_to_dict(verdict.witness) if verdict.witness else None,
        "gap": verdict.gap,
        "budget_used": verdict.budget_used,
        "physically_degraded": verdict.physically_degraded,
    }
    _emit_json(out, sys.stdout)
    return 0


def _report_to_dict(report) -> dict:
    return {
        "trials": report.trials,
        "p_e_hat": report.p_e_hat,
        "equiv_hat": report.equiv_hat,
        "equiv_stderr": report.equiv_stderr,
        "seed": report.seed,
    }


def _cmd_simulate_binning(args) -> int:
    joint = load_distribution(args.input)
    report = run_sw_binning(joint, args.n, args.rate, args.trials, args.seed)
    _emit_json(_report_to_dict(report), sys.stdout)
    return 0


def _cmd_simulate_erasure_scheme(args) -> int:
    params = _erasure_params(args)
    report = run_erasure_encoder_scheme(params, args.n, args.trials, args.seed)
    _emit_json(_report_to_dict(report), sys.stdout)
    return 0


def _erasure_params(args) -> ErasureParams:
    try:
        return ErasureParams(p_b=args.pb, p_e=args.pe)
    except ValueError as exc:
        raise CliError(str(exc)) from exc


def _cmd_preset_erasure(args) -> int:
    params = _erasure_params(args)
    joint = make_erasure_joint(params)
    data = distribution_to_dict(joint)
    if args.output:
        with open(args.output, "w") as stream:
            _emit_json(data, stream)
    else:
        _emit_json(data, sys.stdout)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="secomp", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("measures", help="entropy and mutual-information table")
    p.add_argument("-i", "--input", required=True)
    p.set_defaults(func=_cmd_measures)

    region = sub.add_parser("region", help="rate-equivocation region values")
    region_sub = region.add_subparsers(dest="region_kind", required=True, parser_class=_Parser)

    p = region_sub.add_parser("uncoded", help="side information seen directly by Bob")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("--switches", choices=["none", "sb", "se", "both"], default="none")
    p.add_argument("--starts", type=int, default=OptimizerConfig().starts)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_region_uncoded)

    p = region_sub.add_parser("coded", help="helper-quantized side information sweep")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("--v-grid", type=int, default=16, help="number of sampled quantizers")
    p.add_argument("--starts", type=int, default=OptimizerConfig().starts)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_region_coded)

    p = sub.add_parser("order", help="degradation / less-noisy verdicts")
    p.add_argument("-i", "--input", required=True)
    p.add_argument(
        "--check",
        required=True,
        choices=["degraded-eb", "degraded-be", "less-noisy-eb", "less-noisy-be"],
    )
    p.add_argument("--starts", type=int, default=OptimizerConfig().starts)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_order)

    simulate = sub.add_parser("simulate", help="small-blocklength Monte Carlo")
    sim_sub = simulate.add_subparsers(dest="sim_kind", required=True, parser_class=_Parser)

    p = sim_sub.add_parser("binning", help="random binning with uncoded side information")
    p.add_argument("-i", "--input", required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--rate", type=float, required=True)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_simulate_binning)

    p = sim_sub.add_parser("erasure-scheme", help="transmit-the-gaps encoder scheme")
    p.add_argument("--pb", type=float, required=True)
    p.add_argument("--pe", type=float, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--trials", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_simulate_erasure_scheme)

    preset = sub.add_parser("preset", help="write a built-in distribution file")
    preset_sub = preset.add_subparsers(dest="preset_kind", required=True, parser_class=_Parser)

    p = preset_sub.add_parser("erasure", help="independent erasures of a fair bit")
    p.add_argument("--pb", type=float, required=True)
    p.add_argument("--pe", type=float, required=True)
    p.add_argument("-o", "--output")
    p.set_defaults(func=_cmd_preset_erasure)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except DistributionError as exc:
        print(f"invariant breach: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
