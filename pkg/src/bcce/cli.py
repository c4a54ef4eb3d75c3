"""Command-line entry point: analytics, simulation, optimization, figures.

Exit codes: 0 success, 2 invalid flags or config values, 3 when a requested
closed form needs a path-loss exponent of 4 and the config has another one,
4 when the output location cannot be written.  Every command is scriptable:
no prompts, machine-parseable output, seeds from ``--seed`` or ``BCCE_SEED``.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import analytics, asymptotics
from .experiments import (
    ExperimentSpec,
    FigureId,
    figure_recipe,
    run_experiment,
)
from .model import ClosedFormUnavailable, CollusionMode, load_config_file, validate_config
from .optimizer import xi_bar_finite, xi_bcce_opt

__all__ = ["main"]


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def _add_config_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", help="flat key/value config file; flags override it")
    parser.add_argument("--n", type=int, help="transmit antennas N")
    parser.add_argument("--k", type=int, help="users K (authoritative over --beta)")
    parser.add_argument("--beta", type=float, help="network load K/N")
    parser.add_argument("--snr-db", type=float, help="SNR in dB")
    parser.add_argument("--eta", type=float, help="path loss exponent (default 4)")
    parser.add_argument("--lambda-e", type=float, help="eavesdropper density per unit area")
    parser.add_argument("--xi", type=float, help="regularization parameter")
    parser.add_argument(
        "--mode",
        choices=[m.value for m in CollusionMode],
        help="collusion mode (default noncolluding)",
    )
    parser.add_argument("--seed", type=int, help="master seed (fallback: BCCE_SEED, then 0)")


def _collect_record(args: argparse.Namespace) -> dict:
    record: dict = {}
    if args.config:
        from .model import parse_config_text

        with open(args.config, "r", encoding="utf-8") as fh:
            record.update(parse_config_text(fh.read()))
    overrides = {
        "n_antennas": args.n,
        "n_users": args.k,
        "network_load": args.beta,
        "snr_db": args.snr_db,
        "path_loss_exponent": args.eta,
        "eavesdropper_density": getattr(args, "lambda_e", None),
        "regularization": args.xi,
        "collusion_mode": args.mode,
        "seed": args.seed,
    }
    record.update({k: v for k, v in overrides.items() if v is not None})
    if "seed" not in record:
        record["seed"] = int(os.environ.get("BCCE_SEED", "0"))
    return record


def _print_record(record: dict) -> None:
    for key, value in record.items():
        shown = "unavailable" if value is None else value
        print(f"{key} = {shown}")


def _maybe_write_json(path: str | None, record: dict) -> None:
    if not path:
        return
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        json.dump(record, fh, indent=2, sort_keys=True)
        fh.write("\n")


def _cmd_analytic(args: argparse.Namespace) -> int:
    record = _collect_record(args)
    beta = record.get("network_load")
    if beta is None and record.get("n_antennas") and record.get("n_users"):
        beta = float(record["n_users"]) / float(record["n_antennas"])
    if beta is None:
        raise ValueError("analytic needs --beta (or --n with --k)")
    beta = float(beta)
    if "snr_db" not in record:
        raise ValueError("analytic needs --snr-db")
    rho = 10.0 ** (float(record["snr_db"]) / 10.0)
    xi_bcc = asymptotics.xi_bcc_opt(beta, rho)
    xi = float(record.get("regularization", xi_bcc))
    gamma, gamma_m = asymptotics.gamma_ls(beta, rho, xi)
    out = {
        "network_load": beta,
        "snr_db": float(record["snr_db"]),
        "regularization": xi,
        "gamma_ls": gamma,
        "gamma_m_ls": gamma_m,
        "r_bcc_ls": asymptotics.r_bcc_ls(beta, rho, xi),
        "xi_bcc_opt": xi_bcc,
        "xi_bc_opt": asymptotics.xi_bc_opt(beta, rho),
    }

    if record.get("n_antennas") is not None:
        record.setdefault("regularization", xi)
        cfg = validate_config(record)
        mode = cfg.collusion_mode
        note = cfg.closed_form_note()
        if note and mode is not CollusionMode.NON_COLLUDING:
            raise ClosedFormUnavailable(note)
        if note:
            print(f"note: {note}", file=sys.stderr)
        out["n_antennas"] = cfg.n_antennas
        out["eavesdropper_density"] = cfg.eavesdropper_density
        out["collusion_mode"] = mode.value
        if mode is CollusionMode.NEAREST_ONLY:
            nearest = analytics.outage_nearest_ls(cfg)
            out["outage_ls"] = nearest.at_gamma
            out["outage_ls_verbatim"] = nearest.verbatim
            out["p_ls"] = None
            out["r_mean_ls"] = None
            out["delta_e_ub"] = None
        elif cfg.closed_forms_available:
            point = analytics.large_system_point(cfg)
            out["mu"] = point.mu
            out["outage_ls"] = point.outage_ls
            out["p_ls"] = point.p_ls
            out["r_mean_ls"] = point.r_mean_ls
            out["delta_e_ub"] = point.delta_ub
            out["nu"] = point.nu
        else:
            out["outage_ls"] = analytics.outage_noncolluding_ls(cfg)
            out["p_ls"] = None
            out["r_mean_ls"] = None
            out["delta_e_ub"] = None
    _print_record(out)
    _maybe_write_json(args.json, out)
    return 0


def _cmd_simulate(args: argparse.Namespace) -> int:
    record = _collect_record(args)
    if "regularization" not in record:
        beta = record.get("network_load")
        if beta is None and record.get("n_antennas") and record.get("n_users"):
            beta = float(record["n_users"]) / float(record["n_antennas"])
        if beta is not None and "snr_db" in record:
            record["regularization"] = asymptotics.xi_bcc_opt(
                float(beta), 10.0 ** (float(record["snr_db"]) / 10.0)
            )
    cfg = validate_config(record)
    spec = ExperimentSpec(
        FigureId.CUSTOM,
        (cfg,),
        n_trials=args.trials,
        n_field_draws_per_channel=args.fields_per_trial,
        output_path=args.out,
    )
    _, _, path, sha = run_experiment(spec, workers=args.workers)
    print(f"wrote {path} sha1 {sha}")
    return 0


def _cmd_optimize(args: argparse.Namespace) -> int:
    record = _collect_record(args)
    if "regularization" not in record:
        record["regularization"] = 1.0  # placeholder; the search ignores it
    cfg = validate_config(record)
    if args.what == "xi-bcce":
        result = xi_bcce_opt(cfg)
        label = "xi_bcce_ls"
    else:
        result = xi_bar_finite(cfg, args.trials, fields_per_trial=args.fields_per_trial)
        label = "xi_bar"
    out = {
        label: result.xi_star,
        "objective_at_star": result.objective_at_star,
        "bracket_lo": result.bracket[0],
        "bracket_hi": result.bracket[1],
        "evaluations": result.evaluations,
        "converged": result.converged,
        "degenerate": result.degenerate,
        "flat": result.flat,
    }
    _print_record(out)
    _maybe_write_json(args.out, out)
    return 0


def _cmd_reproduce(args: argparse.Namespace) -> int:
    figure = FigureId.parse(args.figure)
    seed = args.seed if args.seed is not None else int(os.environ.get("BCCE_SEED", "0"))
    out = args.out or f"{args.figure}.csv"
    spec = figure_recipe(
        figure, seed=seed, n_trials=args.trials, n_fields=args.fields_per_trial, output_path=out
    )
    _, _, path, sha = run_experiment(spec, workers=args.workers)
    print(f"wrote {path} sha1 {sha}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bcce",
        description="Secrecy rates under randomly located external eavesdroppers: "
        "closed forms, Monte Carlo, and regularization tuning.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_analytic = sub.add_parser("analytic", help="print the closed-form record for a config")
    _add_config_flags(p_analytic)
    p_analytic.add_argument("--json", help="also write the record as JSON")
    p_analytic.set_defaults(func=_cmd_analytic)

    p_sim = sub.add_parser("simulate", help="Monte Carlo rates and outage for one config")
    _add_config_flags(p_sim)
    p_sim.add_argument("--trials", type=_positive_int, default=2000)
    p_sim.add_argument("--fields-per-trial", type=_positive_int, default=16)
    p_sim.add_argument("--workers", type=_positive_int, default=os.cpu_count() or 1)
    p_sim.add_argument("--out", default="bcce_simulate.csv")
    p_sim.set_defaults(func=_cmd_simulate)

    p_opt = sub.add_parser("optimize", help="search the regularization parameter")
    p_opt.add_argument("what", choices=["xi-bcce", "xi-bar"])
    _add_config_flags(p_opt)
    p_opt.add_argument("--trials", type=_positive_int, default=200, help="xi-bar trial count")
    p_opt.add_argument("--fields-per-trial", type=_positive_int, default=4)
    p_opt.add_argument("--out", help="also write the result as JSON")
    p_opt.set_defaults(func=_cmd_optimize)

    p_rep = sub.add_parser("reproduce", help="run a figure pipeline, write CSV + manifest")
    p_rep.add_argument("figure", help="fig2..fig7 or a figure id like OutageVsN")
    p_rep.add_argument("--seed", type=int)
    p_rep.add_argument("--trials", type=_positive_int)
    p_rep.add_argument("--fields-per-trial", type=_positive_int)
    p_rep.add_argument("--workers", type=_positive_int, default=os.cpu_count() or 1)
    p_rep.add_argument("--out")
    p_rep.set_defaults(func=_cmd_reproduce)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ClosedFormUnavailable as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except OSError as exc:
        print(f"error: cannot write output: {exc}", file=sys.stderr)
        return 4
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
