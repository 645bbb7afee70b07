"""
Projection least squares on nested spaces S_m and penalised choice of the dimension.

For every m the estimator minimises gamma_N(J) = ||J||^2_<M> - 2/N sum_i int J dZ^i over
S_m; its coefficients solve Psi_m theta = z_m and the minimum is gamma_N = -z_m' theta.
"""

import json
from collections.abc import Sequence
from dataclasses import dataclass, field
from typing import Any, Literal

import numpy as np
import scipy.stats

from fracdrift import logger, throw
from fracdrift.basis import BasisFamily
from fracdrift.core import Ensemble, QuadVarModel
from fracdrift.estimator.gram import GramMatrix, gram_matrix
from fracdrift.estimator.projection import check_dimension, project_data
from fracdrift.exceptions import DimensionError, ValidationError

CalibrationMode = Literal["fixed", "slope"]


@dataclass(frozen=True)
class PenaltyConfig:
	"""pen(m) = c_cal m / N, c_cal fixed or calibrated by the slope heuristic"""

	c_cal: float = 2.0
	mode: CalibrationMode = "slope"
	window: float = 0.5

	def __post_init__(self):
		if not np.isfinite(self.c_cal) or self.c_cal <= 0:
			throw(f"Penalty constant must be positive, got c_cal={self.c_cal}", ValidationError)
		if self.mode not in ("fixed", "slope"):
			throw(f"Unknown calibration mode '{self.mode}', expected 'fixed' or 'slope'", ValidationError)
		if not 0 < self.window <= 1:
			throw(f"Slope window must be a fraction in (0, 1], got {self.window}", ValidationError)


@dataclass
class FitResult:
	m: int
	coefficients: np.ndarray
	objective: float
	N: int
	trace: list[dict[str, float]] = field(default_factory=list)
	selected: bool = False
	c_cal: float | None = None
	calibration: str | None = None

	def evaluate(self, family: BasisFamily, t) -> np.ndarray:
		"""J(t) = sum_j theta_j phi_j(t)"""
		return family.combine(self.coefficients, t)

	def to_dict(self) -> dict[str, Any]:
		return {
			"m": self.m,
			"coefficients": np.asarray(self.coefficients).tolist(),
			"objective": self.objective,
			"N": self.N,
			"trace": self.trace,
			"selected": self.selected,
			"c_cal": self.c_cal,
			"calibration": self.calibration,
		}

	def to_json(self) -> str:
		return json.dumps(self.to_dict(), sort_keys=True)

	@classmethod
	def from_dict(cls, data: dict[str, Any]) -> "FitResult":
		return cls(**{**data, "coefficients": np.asarray(data["coefficients"], dtype=float)})


def solve_projection(z: np.ndarray, gram: GramMatrix, N: int) -> FitResult:
	"""theta = Psi_m^-1 z by Cholesky, gamma_N = -z' theta"""
	z = np.asarray(z, dtype=float)[: gram.m]
	theta = gram.solve(z)
	return FitResult(m=gram.m, coefficients=theta, objective=-float(z @ theta), N=N)


def fit(ensemble: Ensemble, family: BasisFamily, m: int, qv: QuadVarModel) -> FitResult:
	"""Projection least squares estimator on S_m"""
	check_dimension(m, ensemble.N)
	gram = gram_matrix(family, m, qv, ensemble.grid.estimation_start)
	return solve_projection(project_data(ensemble, family, m), gram, ensemble.N)


def penalty(m: int, N: int, cfg: PenaltyConfig, c_cal: float | None = None) -> float:
	"""c_cal m / N, with `c_cal` overriding the configured constant"""
	if m < 0 or N < 1:
		throw(f"Penalty needs m >= 0 and N >= 1, got m={m}, N={N}", ValidationError)
	return (cfg.c_cal if c_cal is None else c_cal) * m / N


def slope_heuristic(dims: Sequence[int], contrasts: Sequence[float], N: int, window: float = 0.5) -> float | None:
	"""
	2 x the slope of -gamma_N(J_m) against m/N over the largest dimensions, floored at 1e-6

	Returns None when the window holds fewer than two dimensions.
	"""
	dims = np.asarray(dims, dtype=float)
	contrasts = np.asarray(contrasts, dtype=float)
	count = int(np.ceil(window * dims.size))
	if count < 2:
		return None
	order = np.argsort(dims)[-count:]
	slope = scipy.stats.linregress(dims[order] / N, -contrasts[order]).slope
	return max(2.0 * float(slope), 1e-6)


def contrast_path(z: np.ndarray, gram: GramMatrix, dims: Sequence[int], N: int) -> dict[int, FitResult]:
	"""Fits on every S_m, m in dims, from the projection and Gramian of the largest dimension"""
	return {m: solve_projection(z[:m], gram.leading(m), N) for m in dims}


def select_from_path(
	fits: dict[int, FitResult],
	N: int,
	cfg: PenaltyConfig,
) -> FitResult:
	dims = sorted(fits)
	contrasts = [fits[m].objective for m in dims]
	c_cal, calibration = cfg.c_cal, "fixed"
	if cfg.mode == "slope":
		calibrated = slope_heuristic(dims, contrasts, N, cfg.window)
		if calibrated is None:
			logger("estimator").warning(
				"Slope heuristic needs two dimensions in its window, using c_cal=%g", cfg.c_cal
			)
		else:
			c_cal, calibration = calibrated, "slope"

	trace = []
	best = None
	best_criterion = np.inf
	for m in dims:
		pen = penalty(m, N, cfg, c_cal)
		criterion = fits[m].objective + pen
		trace.append({"m": m, "contrast": fits[m].objective, "penalty": pen, "criterion": criterion})
		# strict comparison: ties go to the smallest m
		if criterion < best_criterion:
			best, best_criterion = m, criterion

	chosen = fits[best]
	logger("estimator").debug("Selected m=%d with c_cal=%.4g (%s)", best, c_cal, calibration)
	return FitResult(
		m=chosen.m,
		coefficients=chosen.coefficients,
		objective=chosen.objective,
		N=N,
		trace=trace,
		selected=True,
		c_cal=c_cal,
		calibration=calibration,
	)


def select_model(
	ensemble: Ensemble,
	family: BasisFamily,
	dims: Sequence[int],
	qv: QuadVarModel,
	cfg: PenaltyConfig | None = None,
) -> FitResult:
	"""
	Penalised selection m_hat = argmin_{m in dims} gamma_N(J_m) + pen(m)

	Args:
		ensemble: N copies of Z on one grid
		family: Nested basis
		dims: Candidate dimensions, each in 1..N
		qv: Quadratic variation of the driving martingale
		cfg: Penalty configuration, slope heuristic by default

	Returns:
		The fit at m_hat with the per-dimension criterion trace.
	"""
	dims = sorted({int(m) for m in dims})
	if not dims or dims[0] < 1:
		throw(f"Candidate dimensions must be a non-empty set of positive integers, got {dims}", DimensionError)
	check_dimension(dims[-1], ensemble.N)
	gram = gram_matrix(family, dims[-1], qv, ensemble.grid.estimation_start)
	z = project_data(ensemble, family, dims[-1])
	return select_from_path(contrast_path(z, gram, dims, ensemble.N), ensemble.N, cfg or PenaltyConfig())
