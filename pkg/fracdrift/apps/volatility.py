"""
Fractional stochastic volatility: d sigma_t = sigma_t (rho0(t) dt + upsilon dB_t), B an fBm.

The volatility path is cut into copies separated by a gap, and
Z_t = (c_H / upsilon) int_0^t s^(1/2-H) (t-s)^(1/2-H) d sigma_s / sigma_s
has drift J(rho0 / upsilon) against the Molchan martingale, so rho0 = upsilon J_bar(J_hat).
"""

from collections.abc import Sequence

import numpy as np
from scipy import special

from fracdrift import logger, throw
from fracdrift.apps.drift import DriftEstimate
from fracdrift.basis import BasisFamily
from fracdrift.core import Ensemble, MolchanPower, TimeGrid
from fracdrift.estimator import PenaltyConfig, select_model
from fracdrift.exceptions import DomainError, ValidationError
from fracdrift.fracops import HurstConstants
from fracdrift.simulate import check_hurst

ROWS_PER_CHUNK = 256


def _cell_mean(t: np.ndarray, a: np.ndarray, b: np.ndarray, alpha: float) -> np.ndarray:
	"""(1/(b-a)) int_a^b s^alpha (t-s)^alpha ds, exact through the incomplete Beta function"""
	p = alpha + 1.0
	mass = special.betainc(p, p, b / t) - special.betainc(p, p, a / t)
	return t ** (2 * alpha + 1) * special.beta(p, p) * mass / (b - a)


def fsv_weights(grid: TimeGrid, hurst: float, indices=None) -> np.ndarray:
	"""
	Kernel weights w[k, l] of the increment on [t_l, t_l+1] in Z at the output node t_k

	Interior cells take s^a (t_k - s)^a at the cell midpoint, a = 1/2 - H; the two cells touching
	the singular ends 0 and t_k take the exact cell mean. Rows follow `indices` (all nodes by
	default) and columns the n cells; w vanishes for l >= k and is identically 1 below it for H = 1/2.
	"""
	check_hurst(hurst)
	k = np.arange(grid.n + 1) if indices is None else np.asarray(indices, dtype=int)
	if k.ndim != 1 or np.any((k < 0) | (k > grid.n)):
		throw(f"Output node indices must lie in 0..{grid.n}", ValidationError)
	cells = np.arange(grid.n)
	inside = cells[None, :] < k[:, None]
	if hurst == 0.5:
		return inside.astype(float)

	alpha = 0.5 - hurst
	step = grid.step
	t = k[:, None] * step
	mid = (cells[None, :] + 0.5) * step
	gap = np.where(inside, t - mid, 1.0)
	weights = np.where(inside, mid**alpha * gap**alpha, 0.0)

	rows = np.flatnonzero(k >= 1)
	ends = t[rows, 0]
	weights[rows, 0] = _cell_mean(ends, np.zeros_like(ends), np.full_like(ends, step), alpha)
	rows = np.flatnonzero(k >= 2)
	ends = t[rows, 0]
	weights[rows, k[rows] - 1] = _cell_mean(ends, ends - step, ends, alpha)
	return weights


def fsv_build_Z(sigma: Ensemble, upsilon: float, hurst: float, stride: int = 1) -> Ensemble:
	"""
	Z^i on every `stride`-th node of the copy grid from the relative volatility increments

	Each output node sums over all finer cells before it, O(n^2 / stride) work per copy.
	"""
	check_hurst(hurst)
	if not np.isfinite(upsilon) or upsilon <= 0:
		throw(f"upsilon must be positive, got {upsilon}", DomainError)
	grid = sigma.grid
	if stride < 1 or grid.n % stride:
		throw(f"Output stride {stride} does not divide the n={grid.n} steps of each copy", ValidationError)
	values = sigma.values
	if np.any(values <= 0):
		throw(f"Volatility must be positive, found a minimum of {values.min():g}", DomainError)

	relative = np.diff(values, axis=1) / values[:, :-1]
	indices = np.arange(0, grid.n + 1, stride)
	Z = np.empty((sigma.N, indices.size))
	for start in range(0, indices.size, ROWS_PER_CHUNK):
		block = indices[start : start + ROWS_PER_CHUNK]
		Z[:, start : start + block.size] = relative @ fsv_weights(grid, hurst, block).T
	Z *= HurstConstants(hurst).c / upsilon

	logger("apps").debug("Built Z for %d volatility copies on %d output nodes", sigma.N, indices.size)
	return Ensemble.from_matrix(TimeGrid(grid.horizon, grid.n // stride), Z)


def estimate_rho(
	Z: Ensemble,
	family: BasisFamily,
	dims: Sequence[int],
	upsilon: float,
	hurst: float,
	cfg: PenaltyConfig | None = None,
) -> DriftEstimate:
	"""
	rho_hat = upsilon J_bar(J_hat), J_hat fitted against <M>_t = t^(2-2H)

	The basis functions are taken to lie in the range of J; that is not checked.
	"""
	fitted = select_model(Z, family, dims, MolchanPower(hurst, Z.grid.horizon), cfg)
	return DriftEstimate(fitted, family, scale=upsilon, hurst=hurst)
