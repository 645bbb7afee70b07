from abc import ABC, abstractmethod
from dataclasses import dataclass

import numpy as np

from fracdrift import throw
from fracdrift.exceptions import DomainError, ValidationError


class QuadVarModel(ABC):
	"""
	Deterministic quadratic variation <M>_t = int_0^t mu(s) ds on [0, T]

	Quadrature against d<M> runs in a variable u = u(s) in which the measure is
	weight(s) du; models with a closed-form <M> use u = <M>_s and weight 1.
	"""

	horizon: float

	@abstractmethod
	def quad_var(self, t: np.ndarray) -> np.ndarray: ...

	@abstractmethod
	def density(self, t: np.ndarray) -> np.ndarray: ...

	def to_measure_variable(self, s: np.ndarray) -> np.ndarray:
		return np.asarray(s, dtype=float)

	def from_measure_variable(self, u: np.ndarray) -> np.ndarray:
		return np.asarray(u, dtype=float)

	def measure_weight(self, s: np.ndarray) -> np.ndarray:
		return np.ones_like(np.asarray(s, dtype=float))

	@property
	def is_lebesgue(self) -> bool:
		return False


@dataclass(frozen=True)
class Lebesgue(QuadVarModel):
	"""mu = 1, the Brownian case"""

	horizon: float = 1.0

	def quad_var(self, t):
		return np.asarray(t, dtype=float) * 1.0

	def density(self, t):
		return np.ones_like(np.asarray(t, dtype=float))

	@property
	def is_lebesgue(self) -> bool:
		return True


@dataclass(frozen=True)
class MolchanPower(QuadVarModel):
	"""<M>_t = t^(2-2H), mu(t) = (2-2H) t^(1-2H): the Molchan martingale of an fBm"""

	hurst: float
	horizon: float = 1.0

	def __post_init__(self):
		if not 0.5 <= self.hurst < 1.0:
			throw(f"Hurst parameter must lie in [1/2, 1), got H={self.hurst}", DomainError)

	@property
	def exponent(self) -> float:
		return 2.0 - 2.0 * self.hurst

	@property
	def is_lebesgue(self) -> bool:
		return self.hurst == 0.5

	def quad_var(self, t):
		t = np.asarray(t, dtype=float)
		if self.is_lebesgue:
			return t * 1.0
		return np.power(t, self.exponent)

	def density(self, t):
		t = np.asarray(t, dtype=float)
		if self.is_lebesgue:
			return np.ones_like(t)
		with np.errstate(divide="ignore"):
			return self.exponent * np.power(t, 1.0 - 2.0 * self.hurst)

	def to_measure_variable(self, s):
		return self.quad_var(s)

	def from_measure_variable(self, u):
		u = np.asarray(u, dtype=float)
		if self.is_lebesgue:
			return u * 1.0
		return np.power(u, 1.0 / self.exponent)


@dataclass(frozen=True, eq=False)
class Tabulated(QuadVarModel):
	"""mu given on increasing nodes, linearly interpolated; <M> integrates the interpolant exactly"""

	nodes: np.ndarray
	values: np.ndarray

	def __post_init__(self):
		nodes = np.asarray(self.nodes, dtype=float)
		values = np.asarray(self.values, dtype=float)
		if nodes.ndim != 1 or nodes.shape != values.shape or nodes.size < 2:
			throw("Tabulated density needs matching node and value arrays of length >= 2", ValidationError)
		if nodes[0] != 0.0 or np.any(np.diff(nodes) <= 0):
			throw("Tabulated density nodes must start at 0 and increase strictly", ValidationError)
		if np.any(values[1:] <= 0) or not np.all(np.isfinite(values)):
			throw("Tabulated density must be finite and positive on (0, T]", DomainError)
		object.__setattr__(self, "nodes", nodes)
		object.__setattr__(self, "values", values)
		widths = np.diff(nodes)
		cumulative = np.concatenate([[0.0], np.cumsum(0.5 * (values[1:] + values[:-1]) * widths)])
		object.__setattr__(self, "_cumulative", cumulative)

	@property
	def horizon(self) -> float:
		return float(self.nodes[-1])

	def density(self, t):
		return np.interp(np.asarray(t, dtype=float), self.nodes, self.values)

	def quad_var(self, t):
		t = np.asarray(t, dtype=float)
		k = np.clip(np.searchsorted(self.nodes, t, side="right") - 1, 0, self.nodes.size - 2)
		left = self.nodes[k]
		width = self.nodes[k + 1] - left
		slope = (self.values[k + 1] - self.values[k]) / width
		dt = t - left
		return self._cumulative[k] + self.values[k] * dt + 0.5 * slope * dt * dt

	def measure_weight(self, s):
		return self.density(s)


def check_time(model: QuadVarModel, t, name: str = "t") -> np.ndarray:
	t = np.asarray(t, dtype=float)
	horizon = model.horizon * (1 + 1e-12)
	if np.any(~np.isfinite(t)) or np.any(t < 0) or np.any(t > horizon):
		throw(f"{name} must lie in [0, {model.horizon}], got {t}", DomainError)
	return t


def quad_var(model: QuadVarModel, t):
	"""<M>_t, exact for the Lebesgue and Molchan models"""
	t = check_time(model, t)
	value = model.quad_var(t)
	return float(value) if value.ndim == 0 else value
