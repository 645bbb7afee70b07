"""
Composite Gauss-Legendre quadrature against d<M>_t.

Integrals run in the measure variable of the model (u = t^(2-2H) for the Molchan
martingale), which removes the endpoint singularity of mu at 0. A panel touching
u = 0 is additionally graded geometrically, so integrands with an integrable
singularity at 0 (logarithmic or power-type) still converge.
"""

from collections.abc import Callable
from functools import lru_cache

import numpy as np

from fracdrift import logger, throw
from fracdrift.config import get_setting
from fracdrift.core.quad_var import QuadVarModel, check_time
from fracdrift.exceptions import NumericError, ValidationError

Integrand = Callable[[np.ndarray], np.ndarray | float]


@lru_cache(maxsize=32)
def gauss_legendre(order: int) -> tuple[np.ndarray, np.ndarray]:
	nodes, weights = np.polynomial.legendre.leggauss(order)
	nodes.setflags(write=False)
	weights.setflags(write=False)
	return nodes, weights


def evaluate(f: Integrand, s: np.ndarray) -> np.ndarray:
	"""Evaluate `f` on an array, broadcasting constant results"""
	value = np.asarray(f(s), dtype=float)
	if value.shape != s.shape:
		value = np.broadcast_to(value, s.shape)
	return value


def panel_edges(lo: float, hi: float, panels: int, graded: bool) -> np.ndarray:
	edges = np.linspace(lo, hi, panels + 1)
	if not graded:
		return edges
	ratio = get_setting("grading_ratio")
	levels = get_setting("grading_levels")
	first = edges[1]
	grading = first * ratio ** np.arange(levels, 0, -1)
	return np.concatenate([[lo], grading, edges[1:]])


def quadrature_rule(
	model: QuadVarModel,
	a: float,
	b: float,
	panels: int | None = None,
	order: int | None = None,
) -> tuple[np.ndarray, np.ndarray]:
	"""
	Nodes and weights with sum(w * f(s)) ~ int_a^b f(s) d<M>_s

	:param model: Quadratic variation model
	:param a: Lower limit, 0 allowed
	:param b: Upper limit
	:param panels: Number of uniform panels in the measure variable
	:param order: Gauss-Legendre order per panel
	:return: (nodes in time, weights)
	"""
	panels = get_setting("quadrature_panels", panels)
	order = get_setting("quadrature_order", order)
	lo = float(model.to_measure_variable(a))
	hi = float(model.to_measure_variable(b))
	edges = panel_edges(lo, hi, panels, graded=(a == 0.0))

	x, w = gauss_legendre(order)
	half = 0.5 * np.diff(edges)[:, None]
	mid = 0.5 * (edges[1:] + edges[:-1])[:, None]
	u = (mid + half * x[None, :]).ravel()
	weights = (half * w[None, :]).ravel()

	s = model.from_measure_variable(u)
	return s, weights * model.measure_weight(s)


def integrate_dqv(
	f: Integrand,
	model: QuadVarModel,
	a: float,
	b: float,
	rtol: float | None = None,
	order: int | None = None,
) -> float:
	"""
	int_a^b f(s) d<M>_s by panel doubling until two successive estimates agree to `rtol`
	"""
	if a > b:
		throw(f"Integration limits must satisfy a <= b, got a={a}, b={b}", ValidationError)
	check_time(model, [a, b], "integration limit")
	if a == b:
		return 0.0

	rtol = get_setting("quadrature_rtol", rtol)
	max_panels = get_setting("quadrature_max_panels")
	panels = get_setting("quadrature_panels")

	previous = None
	while True:
		s, w = quadrature_rule(model, a, b, panels=panels, order=order)
		values = evaluate(f, s)
		if not np.all(np.isfinite(values)):
			bad = s[~np.isfinite(values)]
			throw(f"Integrand is not finite at t={bad[:3]} on [{a}, {b}]", NumericError)
		estimate = float(np.dot(w, values))
		magnitude = float(np.dot(np.abs(w), np.abs(values)))
		if previous is not None and abs(estimate - previous) <= rtol * magnitude:
			return estimate
		if panels >= max_panels:
			logger("core").warning(
				"Quadrature on [%g, %g] stopped at %d panels, last change %.3g",
				a,
				b,
				panels,
				abs(estimate - previous),
			)
			return estimate
		previous = estimate
		panels *= 2


def integrate_cells(
	f: Integrand,
	model: QuadVarModel,
	edges: np.ndarray,
	rtol: float | None = None,
	order: int | None = None,
) -> np.ndarray:
	"""
	int over every cell [e_k, e_k+1] of f d<M>, vectorised over cells

	A first cell starting at 0 goes through the graded scalar rule.
	"""
	edges = check_time(model, edges, "cell edge")
	if edges.ndim != 1 or edges.size < 2 or np.any(np.diff(edges) < 0):
		throw("Cell edges must be a non-decreasing array of length >= 2", ValidationError)
	rtol = get_setting("quadrature_rtol", rtol)
	order = get_setting("quadrature_order", order)

	result = np.empty(edges.size - 1)
	first = 0
	if edges[0] == 0.0:
		result[0] = integrate_dqv(f, model, 0.0, float(edges[1]), rtol=rtol, order=order)
		first = 1
	if first == result.size:
		return result

	u = model.to_measure_variable(edges[first:])
	lo, hi = u[:-1], u[1:]
	x, w = gauss_legendre(order)

	previous = None
	splits = 1
	while True:
		sub = lo[:, None] + (hi - lo)[:, None] * (np.arange(splits + 1) / splits)[None, :]
		half = 0.5 * np.diff(sub, axis=1)
		mid = 0.5 * (sub[:, 1:] + sub[:, :-1])
		nodes = mid[:, :, None] + half[:, :, None] * x[None, None, :]
		s = model.from_measure_variable(nodes)
		values = evaluate(f, s) * model.measure_weight(s)
		if not np.all(np.isfinite(values)):
			throw(f"Integrand is not finite on cells starting at t={edges[first]}", NumericError)
		weights = half[:, :, None] * w[None, None, :]
		estimate = np.sum(values * weights, axis=(1, 2))
		if previous is not None:
			change = np.abs(estimate - previous)
			scale = np.sum(np.abs(values) * np.abs(weights), axis=(1, 2))
			if np.all(change <= rtol * scale) or splits >= 64:
				if splits >= 64 and not np.all(change <= rtol * scale):
					logger("core").warning("Cell quadrature stopped at 64 splits, worst change %.3g", change.max())
				result[first:] = estimate
				return result
		previous = estimate
		splits *= 2
