from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from fracdrift import logger, throw
from fracdrift.basis.base import BasisFamily
from fracdrift.basis.trigonometric import TrigonometricBasis
from fracdrift.config import get_setting
from fracdrift.core import QuadVarModel, quadrature_rule
from fracdrift.exceptions import IllConditionedBasisError


def _weighted_raw(qv: QuadVarModel, t: np.ndarray, m: int) -> np.ndarray:
	"""mu(t)^(-1/2) times the first m trigonometric functions"""
	with np.errstate(divide="ignore"):
		weight = 1.0 / np.sqrt(qv.density(t))
	return weight[None, :] * TrigonometricBasis(qv.horizon)._compute_matrix(t, m, False)


def _inverse_cholesky(gram: np.ndarray, m: int) -> np.ndarray:
	try:
		factor = scipy.linalg.cholesky(gram, lower=True)
	except np.linalg.LinAlgError:
		throw(f"Gramian of the weighted functions is not positive definite at m={m}", IllConditionedBasisError)
	return scipy.linalg.solve_triangular(factor, np.eye(m), lower=True)


@dataclass(frozen=True, eq=False)
class MuWeightedBasis(BasisFamily):
	"""
	Gram-Schmidt orthonormalisation in L2(dt) of mu^(-1/2) phi_j, phi_j trigonometric.

	`coefficients` is lower triangular, so the first m functions only involve the first
	m raw ones and the family is nested. No derivatives.
	"""

	qv: QuadVarModel
	coefficients: np.ndarray = field(repr=False)

	@property
	def max_dim(self) -> int:
		return self.coefficients.shape[0]

	@property
	def horizon(self) -> float:
		return self.qv.horizon

	def _compute_matrix(self, t, m, derivative):
		return self.coefficients[:m, :m] @ _weighted_raw(self.qv, t, m)

	def __repr__(self) -> str:
		return f"MuWeightedBasis(qv={self.qv!r}, m={self.max_dim})"


def mu_weighted_basis(qv: QuadVarModel, m: int, panels: int | None = None) -> BasisFamily:
	"""
	Orthonormal family of the weighted functions mu^(-1/2) phi_j in L2([0, T], dt)

	Gramians use the d<M> quadrature of the model (so the t^(1-2H) behaviour at 0 is
	integrated exactly), followed by one re-orthogonalisation pass.

	:param qv: Quadratic variation model supplying mu
	:param m: Number of functions
	:param panels: Quadrature panels, 32 * m by default
	:return: `TrigonometricBasis` when mu = 1, otherwise a `MuWeightedBasis`
	"""
	if qv.is_lebesgue:
		return TrigonometricBasis(qv.horizon)
	m = TrigonometricBasis(qv.horizon).check_dimension(m)
	panels = panels or max(get_setting("quadrature_panels"), 32 * m)

	s, w = quadrature_rule(qv, 0.0, qv.horizon, panels=panels)
	# int g dt = int g / mu d<M>
	dt_weights = w / qv.density(s)
	raw = _weighted_raw(qv, s, m)
	gram = (raw * dt_weights) @ raw.T

	condition = np.linalg.cond(gram)
	if condition > get_setting("condition_limit"):
		throw(f"Weighted Gramian has condition {condition:.3g} > limit at m={m}", IllConditionedBasisError)

	coefficients = _inverse_cholesky(gram, m)
	again = coefficients @ gram @ coefficients.T
	coefficients = _inverse_cholesky(again, m) @ coefficients
	logger("basis").debug("mu-weighted basis m=%d, Gramian condition %.3g", m, condition)
	coefficients.setflags(write=False)
	return MuWeightedBasis(qv, coefficients)
