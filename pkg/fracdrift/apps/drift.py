from dataclasses import dataclass
from typing import Any

import numpy as np

from fracdrift.basis import BasisFamily
from fracdrift.estimator import FitResult
from fracdrift.fracops import FunctionOnGrid, jbar_values, output_grid


@dataclass(frozen=True)
class DriftEstimate:
	"""
	A drift recovered from a fitted J_hat: scale * J_hat for H = 1/2, scale * J_bar(J_hat) otherwise
	(sigma J_hat for prices, upsilon Q_hat for volatility)
	"""

	fit: FitResult
	family: BasisFamily
	scale: float
	hurst: float = 0.5
	sigma_hat: float | None = None

	def __call__(self, t) -> np.ndarray:
		t = np.asarray(t, dtype=float)
		if self.hurst == 0.5:
			return self.scale * self.fit.evaluate(self.family, t)
		return self.scale * jbar_values(self.fitted, self.hurst, t)

	def fitted(self, t) -> np.ndarray:
		"""J_hat(t)"""
		return self.fit.evaluate(self.family, t)

	def curve(self, times=None) -> FunctionOnGrid:
		times = output_grid(self.family.horizon) if times is None else np.asarray(times, dtype=float)
		return FunctionOnGrid(times, self(times))

	def to_dict(self) -> dict[str, Any]:
		return {
			"fit": self.fit.to_dict(),
			"family": self.family.name,
			"horizon": self.family.horizon,
			"scale": self.scale,
			"hurst": self.hurst,
			"sigma_hat": self.sigma_hat,
		}
