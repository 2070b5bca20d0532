"""Command-line front end: rate, evaluate, sweep, fit, simulate, stats.

All commands read the football-data CSV layout and write machine-readable
JSON (default) or CSV to stdout.  Defaults reproduce the headline
configuration: sigma=600, normalized step 0.125, home advantage 0.3,
draw parameter 0.7, scored over the second half of the season.

Exit codes: 0 success, 2 usage error, 3 data error, 4 numeric error
(zero-probability outcome or non-convergence).
"""

from __future__ import annotations

import csv
import functools
import io
import json
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import click

from .data import Dataset, load_matches, odds_to_probs, serialize_matches
from .engine import EngineConfig, UpdateMode, batch_ml_fit, run_season
from .errors import ConvergenceError, RowError, SchemaError, ZeroProbabilityError
from .evaluation import (
    EvalReport,
    empirical_stats,
    evaluate_scores,
    log_score,
    score_games,
)
from .models import ModelFamily, ModelParams
from .sim import SimSpec, generate_season


@dataclass
class RunConfig:
    """One command invocation's parameters."""

    command: str
    input_path: str | None = None
    sigma: float = 600.0
    k_tilde: float = 0.125
    kappa: float = 0.7
    eta: float = 0.3
    check_kappa: float = 1.0
    v0: float = 0.0
    mode: UpdateMode = UpdateMode.KAPPA_ELO
    family: ModelFamily = ModelFamily.DAVIDSON
    output_format: str = "json"
    eval_window: str = "second-half"

    def model_params(self, eta: float | None = None, kappa: float | None = None) -> ModelParams:
        return ModelParams(
            sigma=self.sigma,
            kappa=self.kappa if kappa is None else kappa,
            eta=self.eta if eta is None else eta,
            v0=self.v0,
            family=self.family,
        )

    def engine_config(
        self,
        mode: UpdateMode | None = None,
        eta: float | None = None,
        kappa: float | None = None,
        check_kappa: float | None = None,
    ) -> EngineConfig:
        mode = self.mode if mode is None else mode
        update_kappa = self.kappa if kappa is None else kappa
        if mode is not UpdateMode.KAPPA_ELO:
            update_kappa = self.kappa  # update side ignores the grid kappa
        return EngineConfig(
            model=self.model_params(eta=eta, kappa=update_kappa),
            k_tilde=self.k_tilde,
            mode=mode,
            check_kappa=self.check_kappa if check_kappa is None else check_kappa,
        )


# ---------------------------------------------------------------------------
# Output helpers
# ---------------------------------------------------------------------------


def _round6(value):
    """Round floats to 6 significant digits, recursively; inf becomes 'inf'."""
    if isinstance(value, bool) or not isinstance(value, float):
        if isinstance(value, dict):
            return {k: _round6(v) for k, v in value.items()}
        if isinstance(value, (list, tuple)):
            return [_round6(v) for v in value]
        return value
    if math.isinf(value):
        return "inf"
    return float(f"{value:.6g}")


def _csv_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, float):
        return "inf" if math.isinf(value) else f"{value:.6g}"
    return str(value)


def _rows_to_csv(rows: list[dict], columns: list[str]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_csv_cell(row.get(c)) for c in columns])
    return buf.getvalue()


def _emit(payload: dict, rows: list[dict], columns: list[str], output_format: str):
    if output_format == "json":
        click.echo(json.dumps(_round6(payload), indent=2))
    else:
        click.echo(_rows_to_csv(rows, columns), nl=False)


def _handle_errors(f):
    @functools.wraps(f)
    def wrapper(*args, **kwargs):
        try:
            return f(*args, **kwargs)
        except (ZeroProbabilityError, ConvergenceError) as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(4)
        except (SchemaError, RowError, OSError, ValueError) as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(3)

    return wrapper


# ---------------------------------------------------------------------------
# Shared option groups
# ---------------------------------------------------------------------------

_MODEL_OPTIONS = [
    click.option("--sigma", type=float, default=600.0, show_default=True, help="Rating scale."),
    click.option("--k-step", "k_tilde", type=float, default=0.125, show_default=True,
                 help="Normalized update step; the absolute step is k-step * sigma."),
    click.option("--kappa", type=float, default=0.7, show_default=True, help="Draw parameter."),
    click.option("--eta", type=float, default=0.3, show_default=True,
                 help="Home advantage; the difference is shifted by eta * sigma."),
    click.option("--check-kappa", type=float, default=1.0, show_default=True,
                 help="Prediction-only draw parameter for --mode elo-check."),
    click.option("--v0", type=float, default=0.0, show_default=True,
                 help="Draw-band half width of the threshold family."),
    click.option("--mode", type=click.Choice([m.value for m in UpdateMode]),
                 default=UpdateMode.KAPPA_ELO.value, show_default=True,
                 help="Online update / prediction mode."),
    click.option("--family", type=click.Choice([f.value for f in ModelFamily]),
                 default=ModelFamily.DAVIDSON.value, show_default=True,
                 help="Probability model family (batch fitting and simulation)."),
    click.option("--output-format", "-f", "output_format",
                 type=click.Choice(["json", "csv"]), default="json", show_default=True),
]


def _model_options(f):
    for option in reversed(_MODEL_OPTIONS):
        f = option(f)
    return f


def _make_config(command: str, input_path: str | None, **kw) -> RunConfig:
    return RunConfig(
        command=command,
        input_path=input_path,
        sigma=kw["sigma"],
        k_tilde=kw["k_tilde"],
        kappa=kw["kappa"],
        eta=kw["eta"],
        check_kappa=kw["check_kappa"],
        v0=kw["v0"],
        mode=UpdateMode(kw["mode"]),
        family=ModelFamily(kw["family"]),
        output_format=kw["output_format"],
    )


def _config_payload(cfg: RunConfig) -> dict:
    return {
        "sigma": cfg.sigma,
        "k_tilde": cfg.k_tilde,
        "kappa": cfg.kappa,
        "eta": cfg.eta,
        "check_kappa": cfg.check_kappa,
        "v0": cfg.v0,
        "mode": cfg.mode.value,
        "family": cfg.family.value,
    }


# ---------------------------------------------------------------------------
# Command implementations (pure, testable)
# ---------------------------------------------------------------------------


def _evaluate_dataset(dataset: Dataset, config: EngineConfig, window: str) -> EvalReport:
    result = run_season(dataset.games, config, players=dataset.team_names)
    scores = score_games(result.predictions, dataset.games)
    return evaluate_scores(scores, window=window)


def _baseline_report(dataset: Dataset, window: tuple[int, int]) -> EvalReport:
    start, end = window
    missing = [i for i in range(start, end) if dataset.games[i].odds is None]
    if missing:
        raise ValueError(
            f"baseline requested but odds are missing on game(s) {missing}"
        )
    scores = [
        log_score(odds_to_probs(*g.odds), g.outcome)
        for g in dataset.games[start:end]
    ]
    return evaluate_scores(scores, window="full")


def run_rate(cfg: RunConfig, trajectory_path: str | None) -> dict:
    dataset = load_matches(cfg.input_path)
    result = run_season(dataset.games, cfg.engine_config(), players=dataset.team_names)
    ratings = sorted(result.state.ratings.items(), key=lambda kv: (-kv[1], kv[0]))
    if trajectory_path:
        with open(trajectory_path, "w", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(["game_index", "team", "rating"])
            for idx, snapshot in enumerate(result.trajectory, start=1):
                for team in dataset.team_names:
                    writer.writerow([idx, team, f"{snapshot[team]:.6g}"])
    return {
        "command": "rate",
        "input": cfg.input_path,
        "config": _config_payload(cfg),
        "n_games": dataset.n_games,
        "n_teams": dataset.n_teams,
        "ratings": [{"team": t, "rating": r} for t, r in ratings],
        "trajectory_file": trajectory_path,
    }


def run_evaluate(cfg: RunConfig, baseline: bool) -> dict:
    dataset = load_matches(cfg.input_path)
    report = _evaluate_dataset(dataset, cfg.engine_config(), cfg.eval_window)
    payload = {
        "command": "evaluate",
        "input": cfg.input_path,
        "config": _config_payload(cfg),
        "eval_window": cfg.eval_window,
        "n_games": dataset.n_games,
        "window_start": report.window[0],
        "window_end": report.window[1],
        "mean_ls": report.mean_ls,
        "interval_low": report.interval_low,
        "interval_high": report.interval_high,
        "baseline": None,
    }
    if baseline:
        bk = _baseline_report(dataset, report.window)
        payload["baseline"] = {
            "mean_ls": bk.mean_ls,
            "interval_low": bk.interval_low,
            "interval_high": bk.interval_high,
        }
    return payload


def _sweep_cell(cfg: RunConfig, dataset: Dataset, mode: UpdateMode, kappa: float, eta: float) -> dict:
    row = {
        "season": cfg.input_path,
        "mode": mode.value,
        "kappa": kappa,
        "eta": eta,
        "mean_ls": None,
        "interval_low": None,
        "interval_high": None,
        "error": None,
    }
    try:
        config = cfg.engine_config(mode=mode, eta=eta, kappa=kappa, check_kappa=kappa)
        report = _evaluate_dataset(dataset, config, cfg.eval_window)
        row.update(
            mean_ls=report.mean_ls,
            interval_low=report.interval_low,
            interval_high=report.interval_high,
        )
    except (ZeroProbabilityError, ConvergenceError, ValueError) as exc:
        row["error"] = str(exc)
    return row


def run_sweep(
    cfg: RunConfig, etas: list[float], kappas: list[float], modes: list[UpdateMode], jobs: int
) -> dict:
    dataset = load_matches(cfg.input_path)
    cells = [(mode, kappa, eta) for mode in modes for kappa in kappas for eta in etas]
    with ThreadPoolExecutor(max_workers=max(1, jobs)) as pool:
        rows = list(pool.map(lambda c: _sweep_cell(cfg, dataset, *c), cells))
    return {"command": "sweep", "input": cfg.input_path, "cells": rows}


def run_fit(cfg: RunConfig, step: float | None, max_iters: int, tol: float, ridge: float) -> dict:
    dataset = load_matches(cfg.input_path)
    model = cfg.model_params()
    result = batch_ml_fit(
        dataset.games, model, step=step, max_iters=max_iters, tol=tol, ridge=ridge
    )
    ratings = sorted(result.theta.items(), key=lambda kv: (-kv[1], kv[0]))
    return {
        "command": "fit",
        "input": cfg.input_path,
        "family": cfg.family.value,
        "n_games": dataset.n_games,
        "nll": result.nll,
        "grad_max_norm": result.grad_max_norm,
        "iterations": result.iterations,
        "converged": result.converged,
        "stop_reason": result.stop_reason,
        "ratings": [{"team": t, "rating": r} for t, r in ratings],
    }


def run_simulate(
    cfg: RunConfig, teams: int, spacing: float, rounds: int, seed: int,
    output: str, truth: str | None,
) -> dict:
    width = len(str(teams))
    theta_true = {
        f"T{i + 1:0{width}d}": ((teams - 1) / 2.0 - i) * spacing * cfg.sigma
        for i in range(teams)
    }
    spec = SimSpec(
        theta_true=theta_true, model=cfg.model_params(), rounds=rounds, seed=seed
    )
    dataset = generate_season(spec)
    with open(output, "w", newline="") as fh:
        fh.write(serialize_matches(dataset))
    truth_path = truth or output + ".truth.csv"
    with open(truth_path, "w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["team", "rating"])
        for name, value in theta_true.items():
            writer.writerow([name, f"{value:.6g}"])
    return {
        "command": "simulate",
        "output": output,
        "truth_file": truth_path,
        "n_games": dataset.n_games,
        "n_teams": dataset.n_teams,
        "rounds": rounds,
        "seed": seed,
        "config": _config_payload(cfg),
    }


def run_stats(cfg: RunConfig) -> dict:
    dataset = load_matches(cfg.input_path)
    stats = empirical_stats(dataset.games)
    return {
        "command": "stats",
        "input": cfg.input_path,
        "n_games": stats.n_games,
        "p_home_bar": stats.p_home_bar,
        "p_away_bar": stats.p_away_bar,
        "p_draw_bar": stats.p_draw_bar,
        "delta_bar": stats.delta_bar,
        "kappa_bar": stats.kappa_bar,
    }


# ---------------------------------------------------------------------------
# Click wiring
# ---------------------------------------------------------------------------


@click.group()
@click.version_option(package_name="drawelo")
def main():
    """Rating engine for win/draw/loss competitions."""


@main.command("rate")
@click.argument("input_path", type=click.Path())
@_model_options
@click.option("--trajectory", "trajectory_path", type=click.Path(), default=None,
              help="Write the per-game rating trajectory CSV here.")
@_handle_errors
def cmd_rate(input_path, trajectory_path, **kw):
    """Run the online ratings over a season and print the final table."""
    cfg = _make_config("rate", input_path, **kw)
    payload = run_rate(cfg, trajectory_path)
    if payload["n_games"] == 0:
        click.echo("warning: no games parsed from input", err=True)
    _emit(payload, payload["ratings"], ["team", "rating"], cfg.output_format)


@main.command("evaluate")
@click.argument("input_path", type=click.Path())
@_model_options
@click.option("--eval-window", type=click.Choice(["second-half", "full"]),
              default="second-half", show_default=True)
@click.option("--baseline", is_flag=True, default=False,
              help="Also score the bookmaker probabilities over the same window.")
@_handle_errors
def cmd_evaluate(input_path, eval_window, baseline, **kw):
    """Score a season's sequential predictions by mean logarithmic score."""
    cfg = _make_config("evaluate", input_path, **kw)
    cfg.eval_window = eval_window
    payload = run_evaluate(cfg, baseline)
    row = {
        "season": payload["input"],
        "mode": payload["config"]["mode"],
        "kappa": payload["config"]["kappa"],
        "eta": payload["config"]["eta"],
        "mean_ls": payload["mean_ls"],
        "interval_low": payload["interval_low"],
        "interval_high": payload["interval_high"],
        "baseline_mean_ls": payload["baseline"]["mean_ls"] if payload["baseline"] else None,
    }
    columns = ["season", "mode", "kappa", "eta", "mean_ls",
               "interval_low", "interval_high", "baseline_mean_ls"]
    _emit(payload, [row], columns, cfg.output_format)


@main.command("sweep")
@click.argument("input_path", type=click.Path())
@_model_options
@click.option("--eval-window", type=click.Choice(["second-half", "full"]),
              default="second-half", show_default=True)
@click.option("--eta-grid", default="0.3", show_default=True,
              help="Comma-separated home-advantage values.")
@click.option("--kappa-grid", default="0.7", show_default=True,
              help="Comma-separated draw-parameter values (sets check-kappa for elo-check cells).")
@click.option("--modes", default="kappa-elo", show_default=True,
              help="Comma-separated update modes.")
@click.option("--jobs", type=int, default=1, show_default=True,
              help="Concurrent sweep cells.")
@_handle_errors
def cmd_sweep(input_path, eval_window, eta_grid, kappa_grid, modes, jobs, **kw):
    """Evaluate a grid of (mode, kappa, eta) cells over one season."""
    cfg = _make_config("sweep", input_path, **kw)
    cfg.eval_window = eval_window
    try:
        etas = [float(x) for x in eta_grid.split(",") if x.strip() != ""]
        kappas = [float(x) for x in kappa_grid.split(",") if x.strip() != ""]
        mode_list = [UpdateMode(m.strip()) for m in modes.split(",") if m.strip() != ""]
    except ValueError as exc:
        raise click.UsageError(f"bad grid value: {exc}") from None
    if not (etas and kappas and mode_list):
        raise click.UsageError("grids must be non-empty")
    payload = run_sweep(cfg, etas, kappas, mode_list, jobs)
    columns = ["season", "mode", "kappa", "eta", "mean_ls",
               "interval_low", "interval_high", "error"]
    _emit(payload, payload["cells"], columns, cfg.output_format)


@main.command("fit")
@click.argument("input_path", type=click.Path())
@_model_options
@click.option("--step", type=float, default=None, help="Descent step (default 0.5*sigma'^2/N).")
@click.option("--max-iters", type=int, default=5000, show_default=True)
@click.option("--tol", type=float, default=1e-6, show_default=True,
              help="Convergence threshold on gradient max-norm, in units of 1/sigma'.")
@click.option("--ridge", type=float, default=0.0, show_default=True,
              help="Ridge penalty weight (0 disables).")
@_handle_errors
def cmd_fit(input_path, step, max_iters, tol, ridge, **kw):
    """Batch maximum-likelihood fit of the ratings on a full game list."""
    cfg = _make_config("fit", input_path, **kw)
    payload = run_fit(cfg, step, max_iters, tol, ridge)
    _emit(payload, payload["ratings"], ["team", "rating"], cfg.output_format)
    if not payload["converged"]:
        click.echo(
            f"error: fit did not converge ({payload['stop_reason']}; "
            f"gradient max-norm {payload['grad_max_norm']:.3g} "
            f"after {payload['iterations']} iterations)",
            err=True,
        )
        sys.exit(4)


@main.command("simulate")
@_model_options
@click.option("--teams", type=int, default=20, show_default=True)
@click.option("--spacing", type=float, default=0.1, show_default=True,
              help="True-rating gap between adjacent teams, in units of sigma.")
@click.option("--rounds", type=int, default=1, show_default=True)
@click.option("--seed", type=int, default=0, show_default=True)
@click.option("--output", "-o", type=click.Path(), required=True,
              help="Season CSV destination.")
@click.option("--truth", type=click.Path(), default=None,
              help="Ground-truth ratings CSV (default: OUTPUT.truth.csv).")
@_handle_errors
def cmd_simulate(teams, spacing, rounds, seed, output, truth, **kw):
    """Generate a synthetic season from evenly spaced true ratings."""
    cfg = _make_config("simulate", None, **kw)
    if teams < 2:
        raise click.UsageError("--teams must be at least 2")
    if rounds < 1:
        raise click.UsageError("--rounds must be at least 1")
    payload = run_simulate(cfg, teams, spacing, rounds, seed, output, truth)
    row = {k: payload[k] for k in ("output", "truth_file", "n_games", "n_teams", "seed")}
    _emit(payload, [row], list(row), cfg.output_format)


@main.command("stats")
@click.argument("input_path", type=click.Path())
@_model_options
@_handle_errors
def cmd_stats(input_path, **kw):
    """Outcome frequencies and the implied draw parameter for a season file."""
    cfg = _make_config("stats", input_path, **kw)
    payload = run_stats(cfg)
    columns = ["n_games", "p_home_bar", "p_away_bar", "p_draw_bar", "delta_bar", "kappa_bar"]
    _emit(payload, [{k: payload[k] for k in columns}], columns, cfg.output_format)


if __name__ == "__main__":
    main()
