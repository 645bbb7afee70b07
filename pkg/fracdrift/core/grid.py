from dataclasses import dataclass
from functools import cached_property

import numpy as np

from fracdrift import throw
from fracdrift.exceptions import DomainError, ValidationError


@dataclass(frozen=True)
class TimeGrid:
	"""
	Uniform dissection t_l = lT/n of [0, T]

	With `offset` set, estimation only uses the nodes t_1, ..., t_n, so nothing
	singular at 0 is ever evaluated.
	"""

	horizon: float
	n: int
	offset: bool = False

	def __post_init__(self):
		if not np.isfinite(self.horizon) or self.horizon <= 0:
			throw(f"Grid horizon must be positive, got T={self.horizon}", DomainError)
		if int(self.n) != self.n or self.n < 1:
			throw(f"Grid step count must be a positive integer, got n={self.n}", DomainError)
		object.__setattr__(self, "n", int(self.n))
		object.__setattr__(self, "horizon", float(self.horizon))

	@property
	def step(self) -> float:
		return self.horizon / self.n

	@property
	def times(self) -> np.ndarray:
		return (np.arange(self.n + 1) * self.horizon) / self.n

	@property
	def start_index(self) -> int:
		return 1 if self.offset else 0

	@property
	def estimation_start(self) -> float:
		return self.start_index * self.horizon / self.n

	def with_offset(self, offset: bool = True) -> "TimeGrid":
		return TimeGrid(self.horizon, self.n, offset)

	def refine(self, factor: int) -> "TimeGrid":
		return TimeGrid(self.horizon, self.n * factor, self.offset)


@dataclass(frozen=True, eq=False)
class SamplePath:
	grid: TimeGrid
	values: np.ndarray

	def __post_init__(self):
		values = np.array(self.values, dtype=float)
		if values.shape != (self.grid.n + 1,):
			throw(
				f"Path has {values.size} values but the grid has {self.grid.n + 1} nodes",
				ValidationError,
			)
		if not np.all(np.isfinite(values)):
			throw("Path contains non-finite values", ValidationError)
		values.setflags(write=False)
		object.__setattr__(self, "values", values)

	@property
	def times(self) -> np.ndarray:
		return self.grid.times

	@property
	def increments(self) -> np.ndarray:
		return np.diff(self.values)


@dataclass(frozen=True, eq=False)
class Ensemble:
	"""N sample paths observed on one shared grid"""

	copies: tuple[SamplePath, ...]

	def __post_init__(self):
		copies = tuple(self.copies)
		if not copies:
			throw("An ensemble needs at least one path", ValidationError)
		grid = copies[0].grid
		for i, path in enumerate(copies):
			if path.grid != grid:
				throw(f"Path {i} is not on the shared grid {grid}", ValidationError)
		object.__setattr__(self, "copies", copies)

	@classmethod
	def from_matrix(cls, grid: TimeGrid, matrix: np.ndarray) -> "Ensemble":
		matrix = np.atleast_2d(np.asarray(matrix, dtype=float))
		return cls(tuple(SamplePath(grid, row) for row in matrix))

	@property
	def N(self) -> int:
		return len(self.copies)

	@property
	def grid(self) -> TimeGrid:
		return self.copies[0].grid

	@cached_property
	def values(self) -> np.ndarray:
		return np.vstack([path.values for path in self.copies])

	@property
	def increments(self) -> np.ndarray:
		return np.diff(self.values, axis=1)

	def summed_increments(self) -> np.ndarray:
		"""Sum over copies of each increment, copies added in ascending index order"""
		total = np.zeros(self.grid.n)
		for path in self.copies:
			total += path.increments
		return total
