"""
The Molchan kernel l(t, s) = c_H s^(1/2-H) (t-s)^(1/2-H), the forward transform
J(Q)(t) = t^(2H-1) j(Q)'(t) / (2-2H) with j(Q)(t) = int_0^t l(t, s) Q(s) ds, and its inverse
J_bar(i)(t) = c_bar_H t^(H-1/2) int_0^t (t-s)^(H-3/2) s^(1-2H) i(s) ds.

Both weakly singular integrals are mapped to [-1, 1] and integrated by Gauss-Jacobi rules
carrying the exact endpoint exponents.
"""

from collections.abc import Callable
from functools import lru_cache

import numpy as np
from scipy import special

from fracdrift import throw
from fracdrift.basis import BasisFamily
from fracdrift.config import get_setting
from fracdrift.estimator import FitResult
from fracdrift.exceptions import CapabilityError, ValidationError
from fracdrift.fracops.constants import HurstConstants
from fracdrift.fracops.function_on_grid import FunctionOnGrid, as_callable

GridFunction = FunctionOnGrid | Callable[[np.ndarray], np.ndarray]


@lru_cache(maxsize=32)
def jacobi_rule(order: int, a: float, b: float) -> tuple[np.ndarray, np.ndarray]:
	"""Nodes and weights for int_-1^1 (1-x)^a (1+x)^b f(x) dx"""
	nodes, weights = special.roots_jacobi(order, a, b)
	nodes.setflags(write=False)
	weights.setflags(write=False)
	return nodes, weights


def output_grid(horizon: float, start_fraction: float | None = None, points: int | None = None) -> np.ndarray:
	"""Evaluation points of Q_hat, from a fraction of T up to T"""
	start_fraction = get_setting("output_start_fraction", start_fraction)
	points = get_setting("output_points", points)
	return np.linspace(start_fraction * horizon, horizon, points)


def _output_times(function: GridFunction, times) -> np.ndarray:
	if times is None:
		if not isinstance(function, FunctionOnGrid):
			throw("Output times are required when the input is not a FunctionOnGrid", ValidationError)
		times = function.times[function.times > 0]
	times = np.asarray(times, dtype=float)
	if times.ndim != 1 or times.size < 2 or np.any(times <= 0):
		throw("Output times must be a 1-D array of at least two positive points", ValidationError)
	return times


def molchan_kernel(t, s, hurst: float) -> np.ndarray | float:
	"""l(t, s) on 0 < s < t, zero elsewhere"""
	t, s = np.broadcast_arrays(np.asarray(t, dtype=float), np.asarray(s, dtype=float))
	constants = HurstConstants(hurst)
	inside = (s > 0) & (s < t)
	kernel = np.zeros(t.shape)
	kernel[inside] = constants.c * (s[inside] * (t[inside] - s[inside])) ** constants.alpha
	return float(kernel) if kernel.ndim == 0 else kernel


def _scaled_average(q: Callable, t: np.ndarray, alpha: float, order: int) -> np.ndarray:
	"""g(t) = int_0^1 u^a (1-u)^a Q(tu) du"""
	x, w = jacobi_rule(order, alpha, alpha)
	u = 0.5 * (1.0 + x)
	values = np.asarray(q(t[:, None] * u[None, :]), dtype=float)
	return 2.0 ** (-2.0 * alpha - 1.0) * (values @ w)


def forward_J(
	function: GridFunction,
	hurst: float,
	times=None,
	order: int | None = None,
	step: float | None = None,
) -> FunctionOnGrid:
	"""
	J(Q) on the positive output times (the nodes of Q by default)

	With s = tu, j(Q)(t) = c_H t^(2-2H) g(t), g(t) = int_0^1 u^a (1-u)^a Q(tu) du, so
	J(Q)(t) = c_H (g(t) + t g'(t) / (2-2H)). g' is a central difference of step T/2048,
	one-sided next to 0 and T. For H = 1/2, J is the identity.
	"""
	q = as_callable(function)
	times = _output_times(function, times)
	if hurst == 0.5:
		return FunctionOnGrid.from_callable(q, times)

	constants = HurstConstants(hurst)
	order = get_setting("jacobi_order", order)
	horizon = times[-1]
	h = step or horizon / get_setting("derivative_divisions")

	def g(t):
		return _scaled_average(q, t, constants.alpha, order)

	centre = g(times)
	slope = np.empty_like(times)
	central = (times >= h) & (times + h <= horizon * (1 + 1e-12))
	forward = times < h
	backward = ~central & ~forward
	if central.any():
		t = times[central]
		slope[central] = (g(t + h) - g(t - h)) / (2 * h)
	if forward.any():
		t = times[forward]
		slope[forward] = (-3 * centre[forward] + 4 * g(t + h) - g(t + 2 * h)) / (2 * h)
	if backward.any():
		t = times[backward]
		slope[backward] = (3 * centre[backward] - 4 * g(t - h) + g(t - 2 * h)) / (2 * h)

	values = constants.c * (centre + times * slope / (2 - 2 * hurst))
	return FunctionOnGrid(times, values)


def inverse_Jbar(function: GridFunction, hurst: float, times=None, order: int | None = None) -> FunctionOnGrid:
	"""
	J_bar(i) at the output times

	With s = t(1+x)/2 the prefactor t^(H-1/2) cancels:
	J_bar(i)(t) = c_bar_H 2^(H-1/2) int_-1^1 (1-x)^(H-3/2) (1+x)^(1-2H) i(t(1+x)/2) dx.

	:raises CapabilityError: for H = 1/2, where the identity applies instead
	"""
	times = _output_times(function, times)
	return FunctionOnGrid(times, jbar_values(as_callable(function), hurst, times, order))


def jbar_values(iota: Callable, hurst: float, t, order: int | None = None) -> np.ndarray:
	"""J_bar(iota) at positive points t of any shape"""
	if hurst == 0.5:
		throw("The inverse operator is the identity for H = 1/2; use the estimate directly", CapabilityError)
	constants = HurstConstants(hurst)
	t = np.asarray(t, dtype=float)
	if np.any(t <= 0):
		throw("The inverse operator is evaluated at positive times only", ValidationError)
	x, w = jacobi_rule(get_setting("jacobi_order", order), hurst - 1.5, 1 - 2 * hurst)
	values = np.asarray(iota(t[..., None] * (0.5 * (1.0 + x))), dtype=float)
	return constants.c_bar * 2.0 ** (hurst - 0.5) * (values @ w)


def estimate_Q(fit: FitResult, family: BasisFamily, hurst: float, times=None) -> FunctionOnGrid:
	"""
	Q_hat = J_bar(J_hat) on `times`, by default from T/50 to T

	For H = 1/2 the fitted J_hat itself is returned.
	"""
	if times is None:
		times = output_grid(family.horizon)

	def fitted(t):
		return fit.evaluate(family, t)

	if hurst == 0.5:
		return FunctionOnGrid.from_callable(fitted, times)
	return inverse_Jbar(fitted, hurst, times)
