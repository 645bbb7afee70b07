from abc import ABC, abstractmethod
from collections.abc import Callable

import numpy as np

from fracdrift import throw
from fracdrift.core import Lebesgue, quadrature_rule
from fracdrift.core.quadrature import evaluate as evaluate_integrand
from fracdrift.exceptions import CapabilityError, DimensionError, DomainError


class BasisFamily(ABC):
	"""
	Nested family phi_1, phi_2, ... on [0, T]; S_m is the span of the first m functions.

	Subclasses implement `_compute_matrix`, returning the first m functions (or their
	derivatives) as rows evaluated at the given points.
	"""

	horizon: float
	max_dim: int | None = None

	@abstractmethod
	def _compute_matrix(self, t: np.ndarray, m: int, derivative: bool) -> np.ndarray: ...

	@property
	def has_derivative(self) -> bool:
		return False

	@property
	def name(self) -> str:
		return type(self).__name__

	def check_dimension(self, m: int) -> int:
		if int(m) != m or m < 1:
			throw(f"Basis dimension must be a positive integer, got m={m}", DimensionError)
		if self.max_dim is not None and m > self.max_dim:
			throw(f"{self.name} holds {self.max_dim} functions, m={m} requested", DimensionError)
		return int(m)

	def evaluate(self, t, m: int, derivative: bool = False) -> np.ndarray:
		"""
		Array [phi_j(t)] of shape (m, *t.shape)

		:param t: Evaluation points in [0, T]
		:param m: Number of leading functions
		:param derivative: Evaluate phi_j' instead
		"""
		m = self.check_dimension(m)
		t = np.atleast_1d(np.asarray(t, dtype=float))
		shape = t.shape
		if np.any(t < 0) or np.any(t > self.horizon * (1 + 1e-12)):
			throw(f"Basis evaluation points must lie in [0, {self.horizon}]", DomainError)
		if derivative and not self.has_derivative:
			throw(f"{self.name} does not provide derivatives", CapabilityError)
		return self._compute_matrix(t.ravel(), m, derivative).reshape((m, *shape))

	def combine(self, coefficients, t) -> np.ndarray:
		"""sum_j theta_j phi_j(t)"""
		coefficients = np.asarray(coefficients, dtype=float)
		return np.tensordot(coefficients, self.evaluate(t, coefficients.size), axes=1)

	def expand(self, f: Callable[[np.ndarray], np.ndarray], m: int, panels: int | None = None) -> np.ndarray:
		"""L2(dt) coefficients int_0^T f phi_j dt, j = 1..m"""
		m = self.check_dimension(m)
		panels = panels or max(16, 4 * m)
		s, w = quadrature_rule(Lebesgue(self.horizon), 0.0, self.horizon, panels=panels)
		return self.evaluate(s, m) @ (w * evaluate_integrand(f, s))

	def __repr__(self) -> str:
		return f"{self.name}(T={self.horizon})"
