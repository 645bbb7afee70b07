from dataclasses import dataclass
from pathlib import Path

import numpy as np
import pandas as pd

from fracdrift import logger, throw
from fracdrift.core import Ensemble, SamplePath, TimeGrid
from fracdrift.exceptions import DomainError, ValidationError


def _whole_steps(length: float, step: float, name: str) -> int:
	steps = length / step
	rounded = int(round(steps))
	if abs(steps - rounded) > 1e-9 * max(1.0, steps):
		throw(f"{name} {length} is not a whole number of grid steps of {step}", ValidationError)
	return rounded


@dataclass(frozen=True, eq=False)
class SegmentedSeries:
	"""
	One long path cut into N copies S^i_t = S_{T_i + t}, t in [0, T], T_i = (i-1)(T + gap).
	Copy nodes coincide with source nodes.
	"""

	source: SamplePath
	n_copies: int
	horizon: float
	gap: float = 0.0

	def __post_init__(self):
		if self.n_copies < 1:
			throw(f"Number of copies must be positive, got N={self.n_copies}", ValidationError)
		if self.horizon <= 0 or self.gap < 0:
			throw(
				f"Copy horizon must be positive and gap non-negative, got T={self.horizon}, gap={self.gap}",
				DomainError,
			)
		step = self.source.grid.step
		steps = _whole_steps(self.horizon, step, "Copy horizon")
		stride = _whole_steps(self.horizon + self.gap, step, "Copy spacing")
		last = (self.n_copies - 1) * stride + steps
		if last > self.source.grid.n:
			throw(
				f"{self.n_copies} copies of length {self.horizon} with gap {self.gap} need {last} steps, "
				f"the source has {self.source.grid.n}",
				ValidationError,
			)
		object.__setattr__(self, "_steps", steps)
		object.__setattr__(self, "_stride", stride)

	@property
	def offsets(self) -> np.ndarray:
		"""T_i(gap) for i = 1..N"""
		return np.arange(self.n_copies) * (self.horizon + self.gap)

	@property
	def grid(self) -> TimeGrid:
		return TimeGrid(self.horizon, self._steps)

	@property
	def copies(self) -> Ensemble:
		values = self.source.values
		rows = [values[i * self._stride : i * self._stride + self._steps + 1] for i in range(self.n_copies)]
		return Ensemble.from_matrix(self.grid, rows)


def segment(path: SamplePath, n_copies: int, horizon: float, gap: float = 0.0) -> SegmentedSeries:
	return SegmentedSeries(path, n_copies, horizon, gap)


def read_series(path: str | Path, value_column: str = "value") -> SamplePath:
	"""
	Observed series from a CSV file with a `t` column and a value column

	Times must be uniformly spaced; they are shifted to start at 0.
	"""
	frame = pd.read_csv(path)
	for column in ("t", value_column):
		if column not in frame.columns:
			throw(f"{path} has no '{column}' column", ValidationError)
	frame = frame.sort_values("t")
	times = frame["t"].to_numpy(dtype=float)
	values = frame[value_column].to_numpy(dtype=float)
	if times.size < 2:
		throw(f"{path} needs at least two observations", ValidationError)
	spacing = np.diff(times)
	if np.max(np.abs(spacing - spacing.mean())) > 1e-9 * spacing.mean():
		throw(f"{path} is not uniformly sampled", ValidationError)
	logger("apps").info("Read %d observations over [%g, %g] from %s", times.size, times[0], times[-1], path)
	return SamplePath(TimeGrid(times[-1] - times[0], times.size - 1), values)


def write_paths(ensemble: Ensemble, path: str | Path) -> None:
	"""Copies as columns path_0, path_1, ... next to the shared `t` column"""
	columns = {"t": ensemble.grid.times}
	columns.update({f"path_{i}": copy.values for i, copy in enumerate(ensemble.copies)})
	pd.DataFrame(columns).to_csv(path, index=False, float_format="%.17g", lineterminator="\n")


def read_paths(path: str | Path) -> Ensemble:
	"""N copies of Z on a shared uniform grid starting at 0, one column per copy"""
	frame = pd.read_csv(path)
	if "t" not in frame.columns or len(frame.columns) < 2:
		throw(f"{path} needs a 't' column and at least one path column", ValidationError)
	times = frame["t"].to_numpy(dtype=float)
	if times.size < 2 or times[0] != 0:
		throw(f"{path} must start at t=0 with at least two nodes", ValidationError)
	grid = TimeGrid(times[-1], times.size - 1)
	if np.max(np.abs(times - grid.times)) > 1e-9 * grid.horizon:
		throw(f"{path} is not uniformly sampled", ValidationError)
	return Ensemble.from_matrix(grid, frame.drop(columns="t").to_numpy(dtype=float).T)
