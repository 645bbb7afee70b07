"""
Driving noises: martingales with deterministic quadratic variation and fractional
Brownian motion, both exact in distribution on the grid nodes.
"""

from functools import lru_cache

import numpy as np
import scipy.linalg

from fracdrift import logger, throw
from fracdrift.config import get_setting
from fracdrift.core import MolchanPower, QuadVarModel, SamplePath, TimeGrid
from fracdrift.exceptions import DecompositionError, DomainError, ValidationError
from fracdrift.simulate.models import check_hurst
from fracdrift.simulate.rng import RngStream

FBM_METHODS = ("auto", "cholesky", "davies-harte")


def gaussian_increments(variances: np.ndarray, generator: np.random.Generator) -> np.ndarray:
	return np.sqrt(variances) * generator.standard_normal(variances.size)


def cumulate(increments: np.ndarray) -> np.ndarray:
	return np.concatenate([[0.0], np.cumsum(increments)])


def simulate_martingale(
	grid: TimeGrid,
	qv: QuadVarModel,
	rng: RngStream,
	scale: float = 1.0,
) -> SamplePath:
	"""
	Continuous Gaussian martingale with deterministic <M>: independent centred increments
	of variance <M>_{t_l+1} - <M>_{t_l}, M_0 = 0
	"""
	if grid.horizon > qv.horizon * (1 + 1e-12):
		throw(f"Grid horizon {grid.horizon} exceeds the model horizon {qv.horizon}", DomainError)
	variances = np.diff(qv.quad_var(grid.times))
	increments = gaussian_increments(variances, rng.generator())
	if scale != 1.0:
		increments = scale * increments
	return SamplePath(grid, cumulate(increments))


def simulate_molchan_increments(grid: TimeGrid, hurst: float, rng: RngStream) -> SamplePath:
	"""Molchan martingale (2-2H)^(1/2) int_0^t s^(1/2-H) dW_s on the grid"""
	qv = MolchanPower(check_hurst(hurst), horizon=grid.horizon)
	return simulate_martingale(grid, qv, rng)


def fgn_autocovariance(n: int, hurst: float, step: float) -> np.ndarray:
	"""gamma(k) = step^(2H) (|k+1|^(2H) - 2|k|^(2H) + |k-1|^(2H)) / 2 for k = 0..n-1"""
	k = np.arange(n, dtype=float)
	two_h = 2.0 * hurst
	return 0.5 * step**two_h * (np.abs(k + 1) ** two_h - 2 * k**two_h + np.abs(k - 1) ** two_h)


@lru_cache(maxsize=8)
def _cholesky_factor(n: int, hurst: float, step: float) -> np.ndarray:
	covariance = scipy.linalg.toeplitz(fgn_autocovariance(n, hurst, step))
	try:
		factor = scipy.linalg.cholesky(covariance, lower=True)
	except np.linalg.LinAlgError:
		throw(f"fGn covariance is not positive definite for H={hurst}, n={n}", DecompositionError)
	factor.setflags(write=False)
	return factor


@lru_cache(maxsize=8)
def _circulant_eigenvalues(n: int, hurst: float, step: float) -> np.ndarray:
	gamma = fgn_autocovariance(n + 1, hurst, step)
	row = np.concatenate([gamma[:n], gamma[n : n + 1], gamma[n - 1 : 0 : -1]])
	eigenvalues = np.fft.fft(row).real
	floor = -1e-10 * eigenvalues.max()
	if eigenvalues.min() < floor:
		throw(
			f"Circulant embedding has negative eigenvalue {eigenvalues.min():.3g} for H={hurst}, n={n}",
			DecompositionError,
		)
	if eigenvalues.min() < 0:
		logger("simulate").warning("Clipping round-off negative circulant eigenvalues for H=%s, n=%d", hurst, n)
		eigenvalues = np.clip(eigenvalues, 0.0, None)
	eigenvalues.setflags(write=False)
	return eigenvalues


def fgn(
	n: int,
	hurst: float,
	step: float,
	generator: np.random.Generator,
	method: str = "auto",
) -> np.ndarray:
	"""n increments of an fBm over steps of length `step`"""
	if method not in FBM_METHODS:
		throw(f"Unknown fBm method '{method}', expected one of {FBM_METHODS}", ValidationError)
	if hurst == 0.5:
		return np.sqrt(step) * generator.standard_normal(n)
	if method == "auto":
		method = "cholesky" if n <= get_setting("fbm_cholesky_max") else "davies-harte"

	if method == "cholesky":
		return _cholesky_factor(n, hurst, step) @ generator.standard_normal(n)

	eigenvalues = _circulant_eigenvalues(n, hurst, step)
	size = eigenvalues.size
	noise = generator.standard_normal(size) + 1j * generator.standard_normal(size)
	return np.fft.fft(np.sqrt(eigenvalues / size) * noise).real[:n]


def simulate_fbm(grid: TimeGrid, hurst: float, rng: RngStream, method: str = "auto") -> SamplePath:
	"""
	Fractional Brownian motion with E[B_s B_t] = (s^2H + t^2H - |t-s|^2H) / 2 on the grid nodes

	Cholesky factorisation of the increment covariance; large grids use circulant
	embedding (Davies-Harte), which is exact in distribution as well.
	"""
	check_hurst(hurst)
	if grid.n > get_setting("fbm_max_steps"):
		throw(f"fBm simulation is limited to {get_setting('fbm_max_steps')} steps, got n={grid.n}", DomainError)
	increments = fgn(grid.n, hurst, grid.step, rng.generator(), method)
	return SamplePath(grid, cumulate(increments))
