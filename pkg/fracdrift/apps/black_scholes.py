"""
Non-autonomous Black-Scholes: dS_t = S_t (b0(t) dt + sigma dW_t) with T-periodic b0.

One long price path is cut into N copies of length T (no gap). Z = (1/sigma) int dS/S then
satisfies dZ = (b0/sigma) dt + dW, so b0 = sigma J0 is estimated with <M>_t = t.
"""

import dataclasses
from collections.abc import Sequence

import numpy as np

from fracdrift import logger, throw
from fracdrift.apps.drift import DriftEstimate
from fracdrift.apps.segmentation import segment
from fracdrift.basis import BasisFamily
from fracdrift.core import Ensemble, Lebesgue, SamplePath
from fracdrift.estimator import PenaltyConfig, select_model
from fracdrift.exceptions import DomainError
from fracdrift.simulate.noise import cumulate


def _check_prices(values: np.ndarray) -> None:
	if np.any(values <= 0):
		throw(f"Prices must be positive, found a minimum of {values.min():g}", DomainError)


def bs_build_Z(copies: Ensemble, sigma: float) -> Ensemble:
	"""Z^i with left-point increments (S_l+1 - S_l) / (sigma S_l)"""
	if not np.isfinite(sigma) or sigma <= 0:
		throw(f"sigma must be positive, got {sigma}", DomainError)
	values = copies.values
	_check_prices(values)
	returns = np.diff(values, axis=1) / (sigma * values[:, :-1])
	return Ensemble.from_matrix(copies.grid, np.vstack([cumulate(row) for row in returns]))


def estimate_drift_bs(
	Z: Ensemble,
	family: BasisFamily,
	dims: Sequence[int],
	sigma: float,
	cfg: PenaltyConfig | None = None,
) -> DriftEstimate:
	"""b_hat = sigma J_hat at the selected dimension; b0 is assumed T-periodic"""
	fitted = select_model(Z, family, dims, Lebesgue(Z.grid.horizon), cfg)
	return DriftEstimate(fitted, family, scale=sigma)


def estimate_sigma(path: SamplePath) -> float:
	"""Realised volatility sqrt(sum (d log S)^2 / span) over the whole observed span"""
	_check_prices(path.values)
	log_returns = np.diff(np.log(path.values))
	return float(np.sqrt(np.sum(log_returns**2) / path.grid.horizon))


def estimate_drift_bs_from_path(
	path: SamplePath,
	n_copies: int,
	horizon: float,
	family: BasisFamily,
	dims: Sequence[int],
	cfg: PenaltyConfig | None = None,
	sigma: float | None = None,
) -> DriftEstimate:
	"""
	Segment one price path and estimate b0

	With `sigma` unset, Z is built with the realised volatility of the whole path and the
	estimate is scaled by it; the estimate then records it as `sigma_hat`.
	"""
	copies = segment(path, n_copies, horizon).copies
	sigma_hat = None
	if sigma is None:
		sigma = sigma_hat = estimate_sigma(path)
		logger("apps").info("Estimated sigma=%.6g from %d log-returns", sigma_hat, path.grid.n)
	estimate = estimate_drift_bs(bs_build_Z(copies, sigma), family, dims, sigma, cfg)
	return dataclasses.replace(estimate, sigma_hat=sigma_hat)
