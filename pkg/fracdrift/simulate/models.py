from collections.abc import Callable
from dataclasses import dataclass

import numpy as np

from fracdrift import throw
from fracdrift.core import QuadVarModel
from fracdrift.exceptions import DomainError

TimeFunction = Callable[[np.ndarray], np.ndarray]


def check_hurst(hurst: float) -> float:
	if not 0.5 <= hurst < 1.0:
		throw(f"Hurst parameter must lie in [1/2, 1), got H={hurst}", DomainError)
	return float(hurst)


def _check_positive(**values: float) -> None:
	for name, value in values.items():
		if not np.isfinite(value) or value <= 0:
			throw(f"{name} must be positive, got {value}", DomainError)


@dataclass(frozen=True)
class MartingaleModel:
	"""dZ_t = J0(t) d<M>_t + dM_t; `noise_scale` 0 gives the noiseless path"""

	drift: TimeFunction | None
	qv: QuadVarModel
	noise_scale: float = 1.0

	def __post_init__(self):
		if self.noise_scale < 0:
			throw(f"noise_scale must be non-negative, got {self.noise_scale}", DomainError)


@dataclass(frozen=True)
class BlackScholes:
	"""dS_t = S_t (b0(t) dt + sigma dW_t)"""

	s0: float
	sigma: float
	drift: TimeFunction | None = None

	def __post_init__(self):
		_check_positive(s0=self.s0)
		if not np.isfinite(self.sigma) or self.sigma < 0:
			throw(f"sigma must be non-negative, got {self.sigma}", DomainError)


@dataclass(frozen=True)
class FracStochVol:
	"""
	dS_t = S_t (b(t) dt + sigma_t dW_t), d sigma_t = sigma_t (rho0(t) dt + upsilon dB_t),
	B an fBm of Hurst index H independent of W; copies are cut with a gap `gap` between them
	"""

	s0: float
	sigma0: float
	upsilon: float
	hurst: float
	drift: TimeFunction | None = None
	vol_drift: TimeFunction | None = None
	gap: float = 0.0

	def __post_init__(self):
		_check_positive(s0=self.s0, sigma0=self.sigma0)
		if not np.isfinite(self.upsilon) or self.upsilon < 0:
			throw(f"upsilon must be non-negative, got {self.upsilon}", DomainError)
		if self.gap < 0:
			throw(f"Gap between copies must be non-negative, got {self.gap}", DomainError)
		check_hurst(self.hurst)


SdeConfig = MartingaleModel | BlackScholes | FracStochVol
