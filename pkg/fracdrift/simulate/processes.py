from functools import lru_cache

import numpy as np

from fracdrift import logger, throw
from fracdrift.config import get_setting
from fracdrift.core import Ensemble, Lebesgue, QuadVarModel, SamplePath, TimeGrid, integrate_cells
from fracdrift.exceptions import DomainError, ValidationError
from fracdrift.simulate.models import BlackScholes, FracStochVol, MartingaleModel, SdeConfig, TimeFunction
from fracdrift.simulate.noise import cumulate, fgn, simulate_martingale
from fracdrift.simulate.rng import RngStream, stream_for


@lru_cache(maxsize=32)
def drift_cells(drift: TimeFunction, qv: QuadVarModel, grid: TimeGrid) -> np.ndarray:
	"""int_{t_l}^{t_l+1} drift d<M> for every cell of the grid"""
	cells = integrate_cells(drift, qv, grid.times)
	cells.setflags(write=False)
	return cells


def simulate_Z(cfg: MartingaleModel, grid: TimeGrid, rng: RngStream) -> SamplePath:
	"""
	Observed process dZ = J0 d<M> + dM on the grid nodes

	The drift part of every increment is the quadrature of J0 over the cell, so the
	path carries no discretization bias; J0 = None or J0 = 0 returns M itself.
	"""
	noise = simulate_martingale(grid, cfg.qv, rng, scale=cfg.noise_scale)
	if cfg.drift is None:
		return noise
	cells = drift_cells(cfg.drift, cfg.qv, grid)
	return SamplePath(grid, noise.values + cumulate(cells))


def simulate_ensemble(
	cfg: MartingaleModel,
	grid: TimeGrid,
	n_copies: int,
	seed: int,
	repetition: int = 0,
) -> Ensemble:
	"""N independent copies of Z; copy i of repetition r draws from stream r * N + i"""
	if n_copies < 1:
		throw(f"An ensemble needs at least one copy, got N={n_copies}", ValidationError)
	paths = tuple(
		simulate_Z(cfg, grid, stream_for(seed, repetition, copy, n_copies)) for copy in range(n_copies)
	)
	return Ensemble(paths)


def _lebesgue_cells(function: TimeFunction | None, grid: TimeGrid) -> np.ndarray:
	if function is None:
		return np.zeros(grid.n)
	return drift_cells(function, Lebesgue(grid.horizon), grid)


def simulate_black_scholes(cfg: BlackScholes, grid: TimeGrid, rng: RngStream) -> SamplePath:
	"""
	Exact log-scheme for dS = S (b0(t) dt + sigma dW):
	S_l+1 = S_l exp(int b0 - sigma^2 step / 2 + sigma dW_l)
	"""
	generator = rng.generator()
	brownian = np.sqrt(grid.step) * generator.standard_normal(grid.n)
	log_increments = _lebesgue_cells(cfg.drift, grid) - 0.5 * cfg.sigma**2 * grid.step + cfg.sigma * brownian
	return SamplePath(grid, cfg.s0 * np.exp(cumulate(log_increments)))


def simulate_fsv(cfg: FracStochVol, grid: TimeGrid, rng: RngStream) -> tuple[SamplePath, SamplePath]:
	"""
	Price and volatility of the fractional stochastic volatility model.

	Args:
		cfg: Model, with `gap` the separation between the copies the path is later cut into
		grid: Grid over the whole observation span [0, N(T + gap)]
		rng: Stream for both drivers; the fBm is drawn first, then the Brownian motion

	Returns:
		(S, sigma). sigma_t = sigma0 exp(int rho0 + upsilon B_t), with the Ito correction
		-upsilon^2 t / 2 only for H = 1/2; S uses sigma frozen at the left node of each step.
	"""
	if grid.n > get_setting("fbm_max_steps"):
		throw(f"FSV simulation is limited to {get_setting('fbm_max_steps')} steps, got n={grid.n}", DomainError)
	generator = rng.generator()
	fbm = cumulate(fgn(grid.n, cfg.hurst, grid.step, generator))
	brownian = np.sqrt(grid.step) * generator.standard_normal(grid.n)

	log_sigma = np.log(cfg.sigma0) + cumulate(_lebesgue_cells(cfg.vol_drift, grid)) + cfg.upsilon * fbm
	if cfg.hurst == 0.5:
		log_sigma = log_sigma - 0.5 * cfg.upsilon**2 * grid.times
	sigma = np.exp(log_sigma)

	left = sigma[:-1]
	log_increments = _lebesgue_cells(cfg.drift, grid) - 0.5 * left**2 * grid.step + left * brownian
	price = cfg.s0 * np.exp(cumulate(log_increments))
	logger("simulate").debug("FSV path on [0, %g]: sigma in [%.3g, %.3g]", grid.horizon, sigma.min(), sigma.max())
	return SamplePath(grid, price), SamplePath(grid, sigma)


def simulate(cfg: SdeConfig, grid: TimeGrid, rng: RngStream) -> SamplePath | tuple[SamplePath, SamplePath]:
	"""Dispatch on the model type"""
	if isinstance(cfg, MartingaleModel):
		return simulate_Z(cfg, grid, rng)
	if isinstance(cfg, BlackScholes):
		return simulate_black_scholes(cfg, grid, rng)
	if isinstance(cfg, FracStochVol):
		return simulate_fsv(cfg, grid, rng)
	throw(f"Unknown model configuration {type(cfg).__name__}", ValidationError)
