from dataclasses import dataclass
from functools import cached_property

import numpy as np
from scipy import special

from fracdrift import throw
from fracdrift.exceptions import CapabilityError
from fracdrift.simulate import check_hurst


@dataclass(frozen=True)
class HurstConstants:
	"""
	Normalising constants of the Molchan kernel and of its inverse operator:
	c_H = (G(3-2H) / (2H G(3/2-H)^3 G(H+1/2)))^(1/2), c_bar_H = (2-2H) / (c_H G(3/2-H) G(H-1/2))
	"""

	hurst: float

	def __post_init__(self):
		check_hurst(self.hurst)

	@property
	def alpha(self) -> float:
		"""Kernel exponent 1/2 - H"""
		return 0.5 - self.hurst

	@cached_property
	def c(self) -> float:
		h = self.hurst
		log_value = (
			special.gammaln(3 - 2 * h) - np.log(2 * h) - 3 * special.gammaln(1.5 - h) - special.gammaln(h + 0.5)
		)
		return float(np.exp(0.5 * log_value))

	@cached_property
	def c_bar(self) -> float:
		h = self.hurst
		if h == 0.5:
			throw("The inverse kernel constant is only defined for H > 1/2", CapabilityError)
		return float((2 - 2 * h) / (self.c * special.gamma(1.5 - h) * special.gamma(h - 0.5)))

	@property
	def forward_beta(self) -> float:
		"""B(3/2-H, 3/2-H): j(1)(t) = c_H B t^(2-2H)"""
		return float(special.beta(1.5 - self.hurst, 1.5 - self.hurst))

	@property
	def inverse_beta(self) -> float:
		"""B(2-2H, H-1/2): inverse operator applied to the constant 1"""
		return float(special.beta(2 - 2 * self.hurst, self.hurst - 0.5))

	def identity_residual(self) -> float:
		"""c_H B(3/2-H, 3/2-H) c_bar_H B(2-2H, H-1/2) - 1, zero up to round-off"""
		return self.c * self.forward_beta * self.c_bar * self.inverse_beta - 1.0
