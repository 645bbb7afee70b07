from dataclasses import dataclass
from functools import lru_cache

import numpy as np
import scipy.linalg

from fracdrift import logger, throw
from fracdrift.basis import BasisFamily
from fracdrift.config import get_setting
from fracdrift.core import QuadVarModel, quadrature_rule
from fracdrift.exceptions import DomainError, SingularDesignError


@dataclass(frozen=True, eq=False)
class GramMatrix:
	"""Psi_m = (int phi_j phi_k d<M>)_{j,k}, with its lower Cholesky factor"""

	matrix: np.ndarray
	factor: np.ndarray
	condition: float

	@property
	def m(self) -> int:
		return self.matrix.shape[0]

	def leading(self, m: int) -> "GramMatrix":
		"""Gramian of the first m functions; the leading block of the factor is its Cholesky factor"""
		if m == self.m:
			return self
		block = self.matrix[:m, :m]
		return GramMatrix(block, self.factor[:m, :m], float(np.linalg.cond(block)))

	def solve(self, z: np.ndarray) -> np.ndarray:
		return scipy.linalg.cho_solve((self.factor, True), np.asarray(z, dtype=float)[: self.m])


def _entries(family: BasisFamily, m: int, qv: QuadVarModel, lower: float, panels: int) -> np.ndarray:
	s, w = quadrature_rule(qv, lower, qv.horizon, panels=panels)
	values = family.evaluate(s, m)
	return (values * w) @ values.T


@lru_cache(maxsize=64)
def gram_matrix(family: BasisFamily, m: int, qv: QuadVarModel, lower: float = 0.0) -> GramMatrix:
	"""
	Gramian of the first m functions of `family` in L2(d<M>) over [lower, T]

	Panels are doubled until every entry is stable to the quadrature tolerance.

	:raises SingularDesignError: Cholesky fails or the condition exceeds the configured limit
	"""
	m = family.check_dimension(m)
	if abs(family.horizon - qv.horizon) > 1e-12 * qv.horizon:
		throw(f"Basis horizon {family.horizon} differs from the model horizon {qv.horizon}", DomainError)

	rtol = get_setting("quadrature_rtol")
	panels = max(get_setting("quadrature_panels"), 2 * m)
	matrix = _entries(family, m, qv, lower, panels)
	while panels < get_setting("quadrature_max_panels"):
		panels *= 2
		refined = _entries(family, m, qv, lower, panels)
		change = np.max(np.abs(refined - matrix))
		matrix = refined
		if change <= rtol * np.max(np.abs(matrix)):
			break
	matrix = 0.5 * (matrix + matrix.T)
	matrix.setflags(write=False)

	condition = float(np.linalg.cond(matrix))
	if not np.isfinite(condition) or condition > get_setting("condition_limit"):
		throw(f"Gramian is singular at m={m}: condition estimate {condition:.3g}", SingularDesignError)
	try:
		factor = scipy.linalg.cholesky(matrix, lower=True)
	except np.linalg.LinAlgError:
		throw(
			f"Cholesky factorisation of the Gramian failed at m={m}, condition {condition:.3g}",
			SingularDesignError,
		)
	factor.setflags(write=False)
	logger("estimator").debug(
		"Gramian %s m=%d on [%g, %g]: %d panels, cond %.3g", family, m, lower, qv.horizon, panels, condition
	)
	return GramMatrix(matrix, factor, condition)
