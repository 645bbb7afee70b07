from collections.abc import Callable
from dataclasses import dataclass
from pathlib import Path

import numpy as np
import pandas as pd

from fracdrift import throw
from fracdrift.exceptions import ValidationError


@dataclass(frozen=True, eq=False)
class FunctionOnGrid:
	"""Values on increasing nodes, piecewise linear in between and constant beyond the ends"""

	times: np.ndarray
	values: np.ndarray

	def __post_init__(self):
		times = np.array(self.times, dtype=float)
		values = np.array(self.values, dtype=float)
		if times.ndim != 1 or times.shape != values.shape or times.size < 2:
			throw("A function on a grid needs matching node and value arrays of length >= 2", ValidationError)
		if np.any(np.diff(times) <= 0):
			throw("Function grid nodes must increase strictly", ValidationError)
		if not np.all(np.isfinite(values[times > 0])):
			throw("Function values must be finite on (0, T]", ValidationError)
		times.setflags(write=False)
		values.setflags(write=False)
		object.__setattr__(self, "times", times)
		object.__setattr__(self, "values", values)

	@classmethod
	def from_callable(cls, f: Callable[[np.ndarray], np.ndarray], times) -> "FunctionOnGrid":
		times = np.asarray(times, dtype=float)
		return cls(times, np.broadcast_to(np.asarray(f(times), dtype=float), times.shape))

	def __call__(self, t) -> np.ndarray:
		return np.interp(np.asarray(t, dtype=float), self.times, self.values)

	def sup_distance(self, other: Callable[[np.ndarray], np.ndarray]) -> float:
		return float(np.max(np.abs(self.values - other(self.times))))

	def to_frame(self) -> pd.DataFrame:
		return pd.DataFrame({"t": self.times, "value": self.values})

	def to_csv(self, path: str | Path) -> None:
		self.to_frame().to_csv(path, index=False, float_format="%.17g", lineterminator="\n")

	@classmethod
	def read_csv(cls, path: str | Path) -> "FunctionOnGrid":
		frame = pd.read_csv(path)
		if list(frame.columns[:2]) != ["t", "value"]:
			throw(f"{path} must have the columns t, value", ValidationError)
		return cls(frame["t"].to_numpy(), frame["value"].to_numpy())


def as_callable(function) -> Callable[[np.ndarray], np.ndarray]:
	"""A FunctionOnGrid or any vectorised callable of t"""
	if callable(function):
		return function
	throw(f"Expected a function or a FunctionOnGrid, got {type(function).__name__}", ValidationError)
