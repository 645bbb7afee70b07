import functools
import json
import logging
from dataclasses import dataclass, field
from pathlib import Path

import click
import pandas as pd

from fracdrift import __version__
from fracdrift.apps import (
	DriftEstimate,
	estimate_drift_bs_from_path,
	estimate_rho,
	estimate_sigma,
	fsv_build_Z,
	read_paths,
	read_series,
	segment,
	write_paths,
)
from fracdrift.basis import TrigonometricBasis
from fracdrift.bench.experiment_config import ExperimentConfig, load_config, parse_dims, parse_overrides
from fracdrift.bench.report import aggregate, emit_outputs, ensure_output_dir, results_frame
from fracdrift.bench.runner import ExperimentReport, run_experiment
from fracdrift.config import get_setting
from fracdrift.core import MolchanPower, SamplePath, TimeGrid
from fracdrift.estimator import PenaltyConfig, select_model
from fracdrift.exceptions import FracDriftError, exit_code_for
from fracdrift.fracops import FunctionOnGrid, output_grid
from fracdrift.simulate import (
	BlackScholes,
	FracStochVol,
	MartingaleModel,
	simulate_black_scholes,
	simulate_ensemble,
	simulate_fsv,
	stream_for,
)


@dataclass
class CliState:
	seed: int | None = None
	threads: int = 1
	out: Path = Path("fracdrift-out")
	overrides: dict[str, str] = field(default_factory=dict)

	def config(self, path: str | Path | None = None) -> ExperimentConfig:
		"""Defaults <- config file <- --set overrides <- global flags"""
		flags = {"seed": self.seed, "threads": self.threads, "out": str(self.out)}
		return load_config(path, self.overrides, flags)

	def output_dir(self) -> Path:
		return ensure_output_dir(self.out)


def handle_errors(command):
	"""Report library errors on stderr and exit with their code instead of a traceback"""

	@functools.wraps(command)
	def wrapper(*args, **kwargs):
		try:
			return command(*args, **kwargs)
		except FracDriftError as e:
			click.secho(f"Error: {e}", fg="red", err=True)
			raise click.exceptions.Exit(exit_code_for(e))

	return wrapper


def penalty_options(command):
	options = [
		click.option("--dims", default="2..12", show_default=True, help="Candidate dimensions, 2..12 or 1,5,11"),
		click.option("--c-cal", type=float, default=2.0, show_default=True, help="Fixed or fallback penalty constant"),
		click.option("--calibration", type=click.Choice(["slope", "fixed"]), default="slope", show_default=True),
	]
	for option in reversed(options):
		command = option(command)
	return command


def _write_series(path: SamplePath, target: Path) -> None:
	frame = pd.DataFrame({"t": path.times, "value": path.values})
	frame.to_csv(target, index=False, float_format="%.17g", lineterminator="\n")


def _write_estimate(estimate: DriftEstimate, out: Path, name: str) -> None:
	estimate.curve().to_csv(out / f"{name}.csv")
	(out / "fit.json").write_text(json.dumps(estimate.to_dict(), sort_keys=True, indent=2) + "\n")
	click.secho(f"* Selected m={estimate.fit.m} with c_cal={estimate.fit.c_cal:.4g} ({estimate.fit.calibration})")


def _print_summary(report: ExperimentReport) -> None:
	cfg = report.config
	aggregates = aggregate(results_frame(report), cfg.mise_norm, cfg.N, cfg.scenario == "pure-noise")
	click.secho(f"* {cfg.scenario}: {len(report.outcomes)} repetitions, {len(report.failed)} failed")
	if cfg.scenario == "pure-noise":
		click.echo(f"{'m':>4} {'mean |J|^2':>14} {'std':>14} {'m/N':>10}")
		for m, row in aggregates["by_dimension"].items():
			click.echo(f"{m:>4} {row['mean']:>14.6g} {row['std']:>14.6g} {row['expected']:>10.4g}")
		return
	if aggregates["mean_mise"] is None:
		return
	click.echo(f"mean MISE ({cfg.mise_norm}) {aggregates['mean_mise']:.6g}  StD {aggregates['std_mise']:.6g}")
	click.echo(f"mean m_hat {aggregates['m_hat']['mean']:.4g}")
	if aggregates["sigma_hat"]["mean"] is not None:
		click.echo(f"mean sigma_hat {aggregates['sigma_hat']['mean']:.6g}")


@click.group()
@click.version_option(__version__, prog_name="fracdrift")
@click.option("--seed", type=int, default=None, help="Master seed, overrides the configuration")
@click.option("--threads", type=click.IntRange(min=1), default=1, show_default=True, help="Worker processes")
@click.option("--out", type=click.Path(file_okay=False, path_type=Path), default=Path("fracdrift-out"))
@click.option("--verbose", is_flag=True, help="Log fit and quadrature diagnostics")
@click.option("--set", "settings", multiple=True, metavar="KEY=VALUE", help="Override a configuration key")
@click.pass_context
def cli(ctx, seed, threads, out, verbose, settings):
	"""Drift estimation for fractional SDEs from copies of one observed path"""
	logging.basicConfig(
		level=logging.DEBUG if verbose else logging.INFO,
		format="%(asctime)s %(levelname)s %(name)s: %(message)s",
	)
	try:
		overrides = parse_overrides(settings)
	except FracDriftError as e:
		click.secho(f"Error: {e}", fg="red", err=True)
		ctx.exit(exit_code_for(e))
	ctx.obj = CliState(seed, threads, out, overrides)


@cli.command()
@click.argument("config", required=False, type=click.Path(exists=True, dir_okay=False))
@click.pass_obj
@handle_errors
def experiment(state: CliState, config):
	"""Monte-Carlo experiment described by CONFIG and --set overrides"""
	cfg = state.config(config)
	out = state.output_dir()
	report = run_experiment(cfg, state.threads)
	emit_outputs(report, out)
	_print_summary(report)


@cli.command()
@click.argument("config", required=False, type=click.Path(exists=True, dir_okay=False))
@click.pass_obj
@handle_errors
def simulate(state: CliState, config):
	"""Simulate the first repetition of a scenario and write its paths"""
	cfg = state.config(config)
	out = state.output_dir()
	if cfg.scenario in ("molchan-J", "pure-noise"):
		drift = cfg.truth if cfg.scenario == "molchan-J" else None
		model = MartingaleModel(drift, MolchanPower(cfg.hurst, cfg.horizon))
		ensemble = simulate_ensemble(model, TimeGrid(cfg.horizon, cfg.n, offset=True), cfg.N, cfg.seed)
		write_paths(ensemble, out / "paths.csv")
	elif cfg.scenario == "black-scholes":
		grid = TimeGrid(cfg.N * cfg.horizon, cfg.n)
		price = simulate_black_scholes(BlackScholes(cfg.s0, cfg.sigma, cfg.truth), grid, stream_for(cfg.seed, 0))
		_write_series(price, out / "prices.csv")
	else:
		gap = cfg.resolved_gap
		grid = TimeGrid(cfg.N * (cfg.horizon + gap), cfg.n)
		model = FracStochVol(cfg.s0, cfg.sigma0, cfg.upsilon, cfg.hurst, vol_drift=cfg.truth, gap=gap)
		price, sigma = simulate_fsv(model, grid, stream_for(cfg.seed, 0))
		_write_series(price, out / "prices.csv")
		_write_series(sigma, out / "volatility.csv")
	click.secho(f"* Simulated {cfg.scenario} into {out}")


@cli.command()
@click.argument("paths", type=click.Path(exists=True, dir_okay=False))
@click.option("--hurst", type=float, default=0.5, show_default=True)
@penalty_options
@click.pass_obj
@handle_errors
def fit(state: CliState, paths, hurst, dims, c_cal, calibration):
	"""Fit J_hat to the copies of Z in PATHS (columns t, path_0, ...)"""
	out = state.output_dir()
	ensemble = read_paths(paths)
	horizon = ensemble.grid.horizon
	family = TrigonometricBasis(horizon)
	penalty = PenaltyConfig(c_cal=c_cal, mode=calibration)
	fitted = select_model(ensemble, family, parse_dims(dims), MolchanPower(hurst, horizon), penalty)
	times = output_grid(horizon)
	FunctionOnGrid.from_callable(lambda t: fitted.evaluate(family, t), times).to_csv(out / "j_hat.csv")
	estimate = DriftEstimate(fitted, family, scale=1.0, hurst=hurst)
	if hurst > 0.5:
		estimate.curve(times).to_csv(out / "q_hat.csv")
	(out / "fit.json").write_text(json.dumps(estimate.to_dict(), sort_keys=True, indent=2) + "\n")
	click.secho(f"* Selected m={fitted.m} with c_cal={fitted.c_cal:.4g} ({fitted.calibration})")


@cli.command()
@click.argument("series", type=click.Path(exists=True, dir_okay=False))
@click.option("--copies", type=click.IntRange(min=1), required=True, help="Number N of copies")
@click.option("--horizon", type=float, default=1.0, show_default=True, help="Copy length T")
@click.option("--sigma", type=float, default=None, help="Known volatility; estimated from the path if unset")
@penalty_options
@click.pass_obj
@handle_errors
def bs(state: CliState, series, copies, horizon, sigma, dims, c_cal, calibration):
	"""Estimate the drift b0 of a Black-Scholes price SERIES (columns t, value)"""
	out = state.output_dir()
	family = TrigonometricBasis(horizon)
	penalty = PenaltyConfig(c_cal=c_cal, mode=calibration)
	path = read_series(series)
	estimate = estimate_drift_bs_from_path(path, copies, horizon, family, parse_dims(dims), penalty, sigma)
	if estimate.sigma_hat is not None:
		click.secho(f"* sigma_hat = {estimate.sigma_hat:.6g}")
	_write_estimate(estimate, out, "b_hat")


@cli.command()
@click.argument("series", type=click.Path(exists=True, dir_okay=False))
@click.option("--copies", type=click.IntRange(min=1), required=True, help="Number N of copies")
@click.option("--horizon", type=float, default=1.0, show_default=True, help="Copy length T")
@click.option("--gap", type=float, default=None, help="Separation between copies, 5 T by default")
@click.option("--upsilon", type=float, required=True, help="Volatility of volatility")
@click.option("--hurst", type=float, required=True)
@click.option("--stride", type=click.IntRange(min=1), default=1, show_default=True, help="Output node stride")
@penalty_options
@click.pass_obj
@handle_errors
def fsv(state: CliState, series, copies, horizon, gap, upsilon, hurst, stride, dims, c_cal, calibration):
	"""Estimate the volatility drift rho0 from a volatility SERIES (columns t, value)"""
	out = state.output_dir()
	gap = get_setting("fsv_gap_factor") * horizon if gap is None else gap
	sigma = segment(read_series(series), copies, horizon, gap).copies
	Z = fsv_build_Z(sigma, upsilon, hurst, stride)
	penalty = PenaltyConfig(c_cal=c_cal, mode=calibration)
	estimate = estimate_rho(Z, TrigonometricBasis(horizon), parse_dims(dims), upsilon, hurst, penalty)
	_write_estimate(estimate, out, "rho_hat")


@cli.command()
@click.argument("series", type=click.Path(exists=True, dir_okay=False))
@handle_errors
def sigma(series):
	"""Realised volatility of a price SERIES over its whole span"""
	click.echo(f"{estimate_sigma(read_series(series)):.17g}")
