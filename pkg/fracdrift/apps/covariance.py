import numpy as np

from fracdrift import throw
from fracdrift.exceptions import DomainError, ValidationError
from fracdrift.simulate import check_hurst


def _block_arguments(hurst: float, horizon: float, gap: float, s: float, t: float, i: int, k: int) -> float:
	check_hurst(hurst)
	if horizon <= 0 or gap < 0:
		throw(f"Copy horizon must be positive and gap non-negative, got T={horizon}, gap={gap}", DomainError)
	if not i < k:
		throw(f"Copy indices must satisfy i < k, got i={i}, k={k}", ValidationError)
	if not 0 <= s < t <= horizon:
		throw(f"Times must satisfy 0 <= s < t <= T, got s={s}, t={t}, T={horizon}", DomainError)
	return (k - i) * (horizon + gap)


def block_covariance_decay(hurst: float, horizon: float, gap: float, s: float, t: float, i: int, k: int) -> float:
	"""
	E[B^i_s B^k_t] for the fBm increments B^i_u = B_{T_i + u} - B_{T_i} of two copies, with
	D = T_k - T_i = (k - i)(T + gap):
	1/2 [(D + t)^2H + (D - s)^2H - (D + t - s)^2H - D^2H]

	Written as D^2H / 2 [(1+x)^2H + (1-y)^2H - (1+x-y)^2H - 1] with x = t/D, y = s/D and
	evaluated through expm1/log1p, so large gaps keep their digits.
	"""
	distance = _block_arguments(hurst, horizon, gap, s, t, i, k)
	if hurst == 0.5 or s == 0:
		return 0.0
	h2 = 2 * hurst
	x, y = t / distance, s / distance

	def power(u):
		return np.expm1(h2 * np.log1p(u))

	return float(0.5 * distance**h2 * (power(x) + power(-y) - power(x - y)))


def block_covariance_asymptote(
	hurst: float, horizon: float, gap: float, s: float, t: float, i: int, k: int
) -> float:
	"""H(2H-1) s t (k-i)^(2H-2) (T + gap)^(2H-2), the large-gap equivalent of the covariance"""
	distance = _block_arguments(hurst, horizon, gap, s, t, i, k)
	return float(hurst * (2 * hurst - 1) * s * t * distance ** (2 * hurst - 2))
