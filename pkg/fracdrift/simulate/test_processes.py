import unittest

import numpy as np

from fracdrift.core import Lebesgue, MolchanPower, TimeGrid
from fracdrift.exceptions import DomainError
from fracdrift.simulate import (
	BlackScholes,
	FracStochVol,
	MartingaleModel,
	RngStream,
	simulate,
	simulate_black_scholes,
	simulate_ensemble,
	simulate_fsv,
	simulate_molchan_increments,
	simulate_Z,
)


def seasonal(t):
	return np.sin(2 * np.pi * t) + np.cos(2 * np.pi * t)


def seasonal_integral(t):
	return (1 - np.cos(2 * np.pi * t)) / (2 * np.pi) + np.sin(2 * np.pi * t) / (2 * np.pi)


def zero(t):
	return np.zeros_like(t)


DRAWS = 20000


class TestSimulateZ(unittest.TestCase):
	def test_zero_drift_is_the_martingale(self):
		grid = TimeGrid(1.0, 200)
		martingale = simulate_molchan_increments(grid, 0.6, RngStream(17, 4))
		for drift in (None, zero):
			cfg = MartingaleModel(drift, MolchanPower(0.6))
			path = simulate_Z(cfg, grid, RngStream(17, 4))
			np.testing.assert_array_equal(path.values, martingale.values)

	def test_noiseless_power_drift(self):
		# int_0^1 10 t^2 d(t^0.8) = 10 * 0.8 / 2.8
		cfg = MartingaleModel(lambda t: 10 * t**2, MolchanPower(0.6), noise_scale=0.0)
		path = simulate_Z(cfg, TimeGrid(1.0, 100), RngStream(1))
		self.assertAlmostEqual(path.values[-1], 10 * 0.8 / 2.8, places=9)

	def test_noiseless_constant_drift_brownian(self):
		cfg = MartingaleModel(lambda t: 3.0, Lebesgue(2.0), noise_scale=0.0)
		path = simulate_Z(cfg, TimeGrid(2.0, 50), RngStream(1))
		np.testing.assert_allclose(path.values, 3.0 * path.times, atol=1e-12)

	def test_singular_drift_mean(self):
		hurst = 0.6
		cfg = MartingaleModel(lambda t: 20 * t**-0.05, MolchanPower(hurst))
		grid = TimeGrid(1.0, 10)
		terminal = np.array([simulate_Z(cfg, grid, RngStream(5, i)).values[-1] for i in range(4000)])
		expected = 20 * (1 - hurst) / (1 - 0.05 - hurst)
		self.assertLess(abs(terminal.mean() - expected), 4 / np.sqrt(4000))

	def test_ensemble_streams(self):
		cfg = MartingaleModel(lambda t: 10 * t**2, MolchanPower(0.6))
		grid = TimeGrid(1.0, 20)
		ensemble = simulate_ensemble(cfg, grid, n_copies=3, seed=42, repetition=2)
		self.assertEqual(ensemble.N, 3)
		np.testing.assert_array_equal(ensemble.copies[1].values, simulate_Z(cfg, grid, RngStream(42, 7)).values)
		again = simulate_ensemble(cfg, grid, n_copies=3, seed=42, repetition=2)
		np.testing.assert_array_equal(ensemble.values, again.values)
		self.assertFalse(np.array_equal(ensemble.copies[0].values, ensemble.copies[1].values))


class TestBlackScholes(unittest.TestCase):
	def test_degenerate_paths(self):
		grid = TimeGrid(5.0, 50)
		flat = simulate_black_scholes(BlackScholes(10.0, 0.0), grid, RngStream(1))
		np.testing.assert_array_equal(flat.values, np.full(51, 10.0))
		growth = simulate_black_scholes(BlackScholes(10.0, 0.0, lambda t: 0.03), grid, RngStream(1))
		np.testing.assert_allclose(growth.values, 10.0 * np.exp(0.03 * grid.times), rtol=1e-12)

	def test_seasonal_drift_against_antiderivative(self):
		grid = TimeGrid(3.0, 300)
		path = simulate_black_scholes(BlackScholes(10.0, 0.0, seasonal), grid, RngStream(1))
		np.testing.assert_allclose(np.log(path.values / 10.0), seasonal_integral(grid.times), atol=1e-10)

	def test_log_return_variance(self):
		sigma = 0.2
		grid = TimeGrid(100.0, 10000)
		path = simulate_black_scholes(BlackScholes(10.0, sigma), grid, RngStream(3))
		returns = np.diff(np.log(path.values))
		expected = sigma**2 * grid.step
		self.assertLess(abs(returns.var() - expected), 4 * expected * np.sqrt(2 / grid.n))

	def test_invalid(self):
		with self.assertRaises(DomainError):
			BlackScholes(0.0, 0.2)
		with self.assertRaises(DomainError):
			BlackScholes(10.0, -0.2)


class TestFracStochVol(unittest.TestCase):
	def test_constant_volatility(self):
		cfg = FracStochVol(s0=10.0, sigma0=0.3, upsilon=0.0, hurst=0.75)
		price, sigma = simulate_fsv(cfg, TimeGrid(4.0, 64), RngStream(2))
		np.testing.assert_allclose(sigma.values, 0.3, rtol=1e-15)
		self.assertTrue(np.all(price.values > 0))

	def test_brownian_volatility_is_martingale(self):
		cfg = FracStochVol(s0=1.0, sigma0=0.5, upsilon=0.4, hurst=0.5)
		grid = TimeGrid(1.0, 4)
		terminal = np.array([simulate_fsv(cfg, grid, RngStream(6, i))[1].values[-1] for i in range(DRAWS)])
		self.assertLess(abs(terminal.mean() - 0.5), 4 * terminal.std() / np.sqrt(DRAWS))

	def test_fractional_volatility_lognormal_mean(self):
		upsilon, hurst = 0.4, 0.75
		cfg = FracStochVol(s0=1.0, sigma0=0.5, upsilon=upsilon, hurst=hurst)
		grid = TimeGrid(2.0, 8)
		terminal = np.array([simulate_fsv(cfg, grid, RngStream(8, i))[1].values[-1] for i in range(DRAWS)])
		expected = 0.5 * np.exp(0.5 * upsilon**2 * 2.0 ** (2 * hurst))
		self.assertLess(abs(terminal.mean() - expected), 4 * terminal.std() / np.sqrt(DRAWS))

	def test_volatility_drift_enters_exponent(self):
		cfg = FracStochVol(s0=1.0, sigma0=0.2, upsilon=0.0, hurst=0.6, vol_drift=seasonal)
		grid = TimeGrid(2.0, 100)
		_, sigma = simulate(cfg, grid, RngStream(1))
		np.testing.assert_allclose(sigma.values, 0.2 * np.exp(seasonal_integral(grid.times)), rtol=1e-10)

	def test_invalid(self):
		with self.assertRaises(DomainError):
			FracStochVol(s0=1.0, sigma0=0.2, upsilon=0.1, hurst=1.2)
		with self.assertRaises(DomainError):
			FracStochVol(s0=1.0, sigma0=0.2, upsilon=0.1, hurst=0.7, gap=-1.0)

