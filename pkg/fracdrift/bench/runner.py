"""
Monte-Carlo orchestration: every repetition simulates, fits and scores on its own random
substreams, so results do not depend on the number of worker processes.
"""

import time
from collections.abc import Callable
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import repeat
from typing import Any

import numpy as np

from fracdrift import log_error, logger
from fracdrift.apps import estimate_drift_bs_from_path, estimate_rho, fsv_build_Z, segment
from fracdrift.bench.experiment_config import ExperimentConfig, zero
from fracdrift.config import get_setting
from fracdrift.core import Lebesgue, MolchanPower, QuadVarModel, TimeGrid
from fracdrift.estimator import FitResult, gram_matrix, mise, project_increments, select_model, solve_projection
from fracdrift.exceptions import FracDriftError
from fracdrift.simulate import (
	BlackScholes,
	FracStochVol,
	MartingaleModel,
	simulate_black_scholes,
	simulate_ensemble,
	simulate_fsv,
	simulate_Z,
	stream_for,
)
from fracdrift.utils import seconds_to_duration

Estimate = Callable[[np.ndarray], np.ndarray]


@dataclass
class RepetitionOutcome:
	rep: int
	rows: list[dict[str, Any]] = field(default_factory=list)
	curve: np.ndarray | None = None
	error: str | None = None


@dataclass
class ExperimentReport:
	config: ExperimentConfig
	outcomes: list[RepetitionOutcome]
	elapsed: float = 0.0

	@property
	def rows(self) -> list[dict[str, Any]]:
		return [row for outcome in self.outcomes for row in outcome.rows]

	@property
	def failed(self) -> list[int]:
		return [outcome.rep for outcome in self.outcomes if outcome.error]

	@property
	def partial(self) -> bool:
		return bool(self.failed)


def curve_times(horizon: float, points: int | None = None) -> np.ndarray:
	points = get_setting("curve_points", points)
	return np.linspace(horizon / points, horizon, points)


def _row(rep: int, m: int, errors: tuple[float, float], fitted: FitResult | None, sigma_hat=None) -> dict:
	return {
		"rep": rep,
		"m_hat": m,
		"mise_qv": errors[0],
		"mise_l2": errors[1],
		"c_cal": fitted.c_cal if fitted is not None else None,
		"sigma_hat": sigma_hat,
		"status": "ok",
	}


def _errors(estimate: Estimate, truth: Estimate, qv: QuadVarModel, lower: float) -> tuple[float, float]:
	return mise(estimate, truth, qv, "qv", lower), mise(estimate, truth, qv, "l2", lower)


def _molchan_repetition(cfg: ExperimentConfig, rep: int) -> RepetitionOutcome:
	qv = MolchanPower(cfg.hurst, cfg.horizon)
	family = cfg.family(qv)
	grid = TimeGrid(cfg.horizon, cfg.n, offset=True)
	ensemble = simulate_ensemble(MartingaleModel(cfg.truth, qv), grid, cfg.N, cfg.seed, rep)
	fitted = select_model(ensemble, family, cfg.dims, qv, cfg.penalty)

	def estimate(t):
		return fitted.evaluate(family, t)

	row = _row(rep, fitted.m, _errors(estimate, cfg.truth, qv, grid.estimation_start), fitted)
	return RepetitionOutcome(rep, [row], estimate(curve_times(cfg.horizon)))


def _pure_noise_repetition(cfg: ExperimentConfig, rep: int) -> RepetitionOutcome:
	"""Fixed dimensions on J0 = 0; the increments are summed copy by copy, never stored"""
	qv = MolchanPower(cfg.hurst, cfg.horizon)
	family = cfg.family(qv)
	grid = TimeGrid(cfg.horizon, cfg.n, offset=True)
	model = MartingaleModel(None, qv)
	summed = np.zeros(grid.n)
	for copy in range(cfg.N):
		summed += simulate_Z(model, grid, stream_for(cfg.seed, rep, copy, cfg.N)).increments

	top = max(cfg.dims)
	z = project_increments(summed, grid, family, top, cfg.N)
	gram = gram_matrix(family, top, qv, grid.estimation_start)
	rows, fitted = [], None
	for m in sorted(cfg.dims):
		fitted = solve_projection(z[:m], gram.leading(m), cfg.N)
		errors = _errors(lambda t, f=fitted: f.evaluate(family, t), zero, qv, grid.estimation_start)
		rows.append(_row(rep, m, errors, None))
	return RepetitionOutcome(rep, rows, fitted.evaluate(family, curve_times(cfg.horizon)))


def _black_scholes_repetition(cfg: ExperimentConfig, rep: int) -> RepetitionOutcome:
	"""One price path on [0, N T] with n steps, cut into N days"""
	grid = TimeGrid(cfg.N * cfg.horizon, cfg.n)
	model = BlackScholes(cfg.s0, cfg.sigma, cfg.truth)
	path = simulate_black_scholes(model, grid, stream_for(cfg.seed, rep))
	family = cfg.family(Lebesgue(cfg.horizon))
	estimate = estimate_drift_bs_from_path(
		path,
		cfg.N,
		cfg.horizon,
		family,
		cfg.dims,
		cfg.penalty,
		sigma=None if cfg.estimate_sigma else cfg.sigma,
	)
	errors = _errors(estimate, cfg.truth, Lebesgue(cfg.horizon), grid.step)
	row = _row(rep, estimate.fit.m, errors, estimate.fit, estimate.sigma_hat)
	return RepetitionOutcome(rep, [row], estimate(curve_times(cfg.horizon)))


def _fsv_repetition(cfg: ExperimentConfig, rep: int) -> RepetitionOutcome:
	"""One volatility path on [0, N (T + gap)] with n steps, cut into N separated copies"""
	gap = cfg.resolved_gap
	grid = TimeGrid(cfg.N * (cfg.horizon + gap), cfg.n)
	model = FracStochVol(cfg.s0, cfg.sigma0, cfg.upsilon, cfg.hurst, vol_drift=cfg.truth, gap=gap)
	_, sigma = simulate_fsv(model, grid, stream_for(cfg.seed, rep))
	Z = fsv_build_Z(segment(sigma, cfg.N, cfg.horizon, gap).copies, cfg.upsilon, cfg.hurst, cfg.stride)
	qv = MolchanPower(cfg.hurst, cfg.horizon)
	estimate = estimate_rho(Z, cfg.family(qv), cfg.dims, cfg.upsilon, cfg.hurst, cfg.penalty)
	row = _row(rep, estimate.fit.m, _errors(estimate, cfg.truth, qv, Z.grid.step), estimate.fit)
	return RepetitionOutcome(rep, [row], estimate(curve_times(cfg.horizon)))


SCENARIO_RUNNERS: dict[str, Callable[[ExperimentConfig, int], RepetitionOutcome]] = {
	"molchan-J": _molchan_repetition,
	"pure-noise": _pure_noise_repetition,
	"black-scholes": _black_scholes_repetition,
	"fsv": _fsv_repetition,
}


def run_repetition(cfg: ExperimentConfig, rep: int) -> RepetitionOutcome:
	"""Run one repetition; a failure is logged and recorded instead of aborting the experiment"""
	try:
		return SCENARIO_RUNNERS[cfg.scenario](cfg, rep)
	except (FracDriftError, np.linalg.LinAlgError) as e:
		message = f"{type(e).__name__}: {e}"
		log_error(message, title=f"{cfg.scenario} repetition {rep}")
		row = {"rep": rep, "m_hat": None, "mise_qv": None, "mise_l2": None, "c_cal": None, "sigma_hat": None}
		return RepetitionOutcome(rep, [{**row, "status": "failed"}], error=message)


def run_experiment(cfg: ExperimentConfig, threads: int | None = None) -> ExperimentReport:
	"""
	Run `cfg.repetitions` repetitions of the configured scenario

	Args:
		cfg: Resolved configuration; repetition r draws from substreams of index r (times N)
		threads: Worker processes, `cfg.threads` by default; outcomes keep repetition order

	Returns:
		The report, with failed repetitions marked.
	"""
	threads = threads or cfg.threads
	cfg.check_sampling()
	started = time.perf_counter()
	reps = range(cfg.repetitions)
	if threads > 1 and cfg.repetitions > 1:
		with ProcessPoolExecutor(max_workers=threads) as pool:
			outcomes = list(pool.map(run_repetition, repeat(cfg), reps))
	else:
		outcomes = [run_repetition(cfg, rep) for rep in reps]

	report = ExperimentReport(cfg, outcomes, elapsed=time.perf_counter() - started)
	logger("bench").info(
		"%s: %d repetitions (%d failed) in %s",
		cfg.scenario,
		cfg.repetitions,
		len(report.failed),
		seconds_to_duration(report.elapsed),
	)
	return report
