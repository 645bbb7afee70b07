import unittest

import numpy as np
from hypothesis import given
from hypothesis import strategies as st

from fracdrift.core import Lebesgue, MolchanPower, Tabulated, integrate_cells, integrate_dqv, quad_var
from fracdrift.exceptions import DomainError, NumericError


class TestQuadVar(unittest.TestCase):
	def test_brownian_case_is_identity(self):
		self.assertAlmostEqual(quad_var(MolchanPower(0.5), 0.7), 0.7, places=15)

	def test_molchan_power(self):
		self.assertAlmostEqual(quad_var(MolchanPower(0.6), 1.0), 1.0, places=15)
		self.assertAlmostEqual(quad_var(MolchanPower(0.6), 0.5), 0.5**0.8, places=15)

	def test_outside_horizon_is_domain_error(self):
		with self.assertRaises(DomainError):
			quad_var(MolchanPower(0.6), 1.5)
		with self.assertRaises(DomainError):
			quad_var(Lebesgue(), -0.1)

	def test_hurst_range(self):
		for hurst in (0.3, 1.0):
			with self.assertRaises(DomainError):
				MolchanPower(hurst)

	def test_tabulated_matches_closed_form_for_linear_density(self):
		nodes = np.linspace(0.0, 1.0, 11)
		model = Tabulated(nodes, 1.0 + nodes)
		t = np.array([0.0, 0.25, 0.5, 1.0])
		np.testing.assert_allclose(quad_var(model, t), t + t**2 / 2, rtol=1e-14)
		self.assertAlmostEqual(integrate_dqv(lambda s: 1.0, model, 0.0, 1.0), 1.5, places=12)


class TestIntegrateDqv(unittest.TestCase):
	def test_constant_against_molchan(self):
		self.assertAlmostEqual(integrate_dqv(lambda s: 1.0, MolchanPower(0.6), 0.0, 1.0), 1.0, places=13)

	def test_linear_against_lebesgue(self):
		self.assertAlmostEqual(integrate_dqv(lambda s: s, Lebesgue(), 0.0, 1.0), 0.5, places=13)

	def test_linear_against_molchan(self):
		hurst = 0.6
		expected = (2 - 2 * hurst) / (3 - 2 * hurst)
		value = integrate_dqv(lambda s: s, MolchanPower(hurst), 0.0, 1.0)
		self.assertAlmostEqual(value / expected, 1.0, places=10)

	def test_constant_reproduces_quad_var_on_grid(self):
		for hurst in (0.55, 0.6, 0.75, 0.9):
			model = MolchanPower(hurst)
			for t in np.linspace(0.02, 1.0, 50):
				value = integrate_dqv(lambda s: 1.0, model, 0.0, t)
				self.assertLess(abs(value / model.quad_var(t) - 1.0), 1e-12)

	def test_lebesgue_agrees_with_refined_trapezoid(self):
		def f(s):
			return np.exp(-s) * np.cos(3 * s)

		grid = np.linspace(0.0, 1.0, 200001)
		trapezoid = np.trapezoid(f(grid), grid) if hasattr(np, "trapezoid") else np.trapz(f(grid), grid)
		self.assertLess(abs(integrate_dqv(f, Lebesgue(), 0.0, 1.0) - trapezoid), 1e-8)

	def test_singular_integrands(self):
		hurst = 0.6
		model = MolchanPower(hurst)
		# -int log(t) d<M>_t = 1 / (2 - 2H)
		value = integrate_dqv(lambda s: -np.log(s), model, 0.0, 1.0)
		self.assertAlmostEqual(value, 1 / (2 - 2 * hurst), places=8)
		# int t^(-2a) d<M>_t = (1 - H) / (1 - a - H)
		alpha = 0.05
		value = integrate_dqv(lambda s: s ** (-2 * alpha), model, 0.0, 1.0)
		self.assertAlmostEqual(value, (1 - hurst) / (1 - alpha - hurst), places=8)

	def test_non_finite_integrand(self):
		with self.assertRaises(NumericError):
			integrate_dqv(lambda s: np.where(s > 0.5, np.nan, 1.0), Lebesgue(), 0.0, 1.0)

	@given(
		st.sampled_from([0.5, 0.6, 0.75, 0.9]),
		st.one_of(st.just(0.0), st.floats(0.01, 0.3)),
		st.floats(0.35, 0.65),
		st.floats(0.7, 1.0),
	)
	def test_additivity(self, hurst, a, b, c):
		model = MolchanPower(hurst)

		def f(s):
			return 1.0 + s**2 + np.sin(5 * s)

		whole = integrate_dqv(f, model, a, c)
		parts = integrate_dqv(f, model, a, b) + integrate_dqv(f, model, b, c)
		self.assertLess(abs(whole - parts), 1e-12 * abs(whole))


class TestIntegrateCells(unittest.TestCase):
	def test_cells_sum_to_whole_integral(self):
		model = MolchanPower(0.9)
		edges = np.linspace(0.0, 1.0, 101)

		def f(s):
			return 10 * s**2

		cells = integrate_cells(f, model, edges)
		self.assertEqual(cells.shape, (100,))
		self.assertAlmostEqual(cells.sum(), 10 * 0.2 / 2.2, places=10)

	def test_cells_of_log_singular_drift(self):
		model = MolchanPower(0.6)
		edges = np.linspace(0.0, 1.0, 21)
		cells = integrate_cells(lambda s: -np.log(s), model, edges)
		self.assertAlmostEqual(cells.sum(), 1 / 0.8, places=8)
