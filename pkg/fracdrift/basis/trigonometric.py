from dataclasses import dataclass

import numpy as np

from fracdrift import throw
from fracdrift.basis.base import BasisFamily
from fracdrift.exceptions import CapabilityError, DimensionError, DomainError


def trig_eval(j: int, t, horizon: float = 1.0):
	"""
	phi_1 = 1/sqrt(T), phi_2k = sqrt(2/T) cos(2 pi k t/T), phi_2k+1 = sqrt(2/T) sin(2 pi k t/T)

	>>> trig_eval(3, 0.25)
	1.4142135623730951
	"""
	if int(j) != j or j < 1:
		throw(f"Trigonometric index must be a positive integer, got j={j}", DimensionError)
	value = TrigonometricBasis(horizon).evaluate(t, int(j))[-1]
	return float(value[0]) if np.ndim(t) == 0 else value


@dataclass(frozen=True)
class TrigonometricBasis(BasisFamily):
	"""Orthonormal trigonometric basis of L2([0, T], dt), with derivatives"""

	horizon: float = 1.0

	def __post_init__(self):
		if not np.isfinite(self.horizon) or self.horizon <= 0:
			throw(f"Basis horizon must be positive, got T={self.horizon}", DomainError)

	@property
	def has_derivative(self) -> bool:
		return True

	def _compute_matrix(self, t, m, derivative):
		matrix = np.empty((m, t.size))
		matrix[0] = 0.0 if derivative else 1.0 / np.sqrt(self.horizon)
		if m == 1:
			return matrix

		j = np.arange(2, m + 1)
		omega = (2.0 * np.pi / self.horizon) * (j // 2)
		angle = np.outer(omega, t)
		even = (j % 2 == 0)[:, None]
		if derivative:
			rows = omega[:, None] * np.where(even, -np.sin(angle), np.cos(angle))
		else:
			rows = np.where(even, np.cos(angle), np.sin(angle))
		matrix[1:] = np.sqrt(2.0 / self.horizon) * rows
		return matrix


def basis_sup_deriv_sq(family: BasisFamily, m: int) -> float:
	"""
	R(m) = sup_t sum_{j<=m} phi_j'(t)^2

	Every (cos, sin) pair contributes the constant 8 pi^2 k^2 / T^3, and a trailing
	cosine reaches the same value where its sine vanishes, so
	R(m) = 8 pi^2 / T^3 * sum_{k<=m//2} k^2.
	"""
	if not isinstance(family, TrigonometricBasis):
		throw(f"R(m) is only available for the trigonometric basis, not {family.name}", CapabilityError)
	m = family.check_dimension(m)
	k = m // 2
	return 8.0 * np.pi**2 / family.horizon**3 * k * (k + 1) * (2 * k + 1) / 6.0


def sup_deriv_sq_on_grid(family: BasisFamily, m: int, points: int = 4097) -> float:
	"""Grid maximisation of sum_j phi_j'(t)^2, the numerical counterpart of `basis_sup_deriv_sq`"""
	t = np.linspace(0.0, family.horizon, points)
	derivatives = family.evaluate(t, m, derivative=True)
	return float(np.max(np.sum(derivatives**2, axis=0)))
