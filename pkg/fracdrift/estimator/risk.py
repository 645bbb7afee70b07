from collections.abc import Callable
from typing import Literal

import numpy as np

from fracdrift import throw
from fracdrift.basis import BasisFamily
from fracdrift.core import Lebesgue, QuadVarModel, integrate_dqv
from fracdrift.estimator.gram import gram_matrix
from fracdrift.exceptions import ValidationError

Norm = Literal["qv", "l2"]
NORMS = ("qv", "l2")


def norm_model(qv: QuadVarModel, norm: Norm) -> QuadVarModel:
	if norm not in NORMS:
		throw(f"Unknown norm '{norm}', expected one of {NORMS}", ValidationError)
	return qv if norm == "qv" else Lebesgue(qv.horizon)


def mise(
	estimate: Callable[[np.ndarray], np.ndarray],
	truth: Callable[[np.ndarray], np.ndarray],
	qv: QuadVarModel,
	norm: Norm = "l2",
	lower: float = 0.0,
) -> float:
	"""
	Integrated squared error int_lower^T (J_hat - J0)^2 dnu, nu = d<M> ("qv") or dt ("l2")

	Averaged over repetitions this is the MISE; experiments integrate from T/n.
	"""
	model = norm_model(qv, norm)
	return integrate_dqv(lambda t: (estimate(t) - truth(t)) ** 2, model, lower, qv.horizon)


def oracle_bias(
	truth: Callable[[np.ndarray], np.ndarray],
	family: BasisFamily,
	m: int,
	qv: QuadVarModel,
	lower: float = 0.0,
) -> tuple[float, np.ndarray]:
	"""
	min over S_m of ||J - J0||^2_<M> on [lower, T], and the coefficients of the minimiser

	The minimiser solves Psi_m theta = (int phi_j J0 d<M>)_j.
	"""
	gram = gram_matrix(family, m, qv, lower)
	moments = np.array(
		[integrate_dqv(lambda t, j=j: family.evaluate(t, m)[j] * truth(t), qv, lower, qv.horizon) for j in range(m)]
	)
	theta = gram.solve(moments)
	bias = integrate_dqv(lambda t: (family.combine(theta, t) - truth(t)) ** 2, qv, lower, qv.horizon)
	return bias, theta
