import unittest

import numpy as np

from fracdrift.config import get_setting, merge_settings
from fracdrift.exceptions import ConfigError
from fracdrift.utils import compile_function, get_context, safe_eval, seconds_to_duration


class TestUtils(unittest.TestCase):
	def test_seconds_to_duration(self):
		self.assertEqual(seconds_to_duration(3725.4), "1h 2m 5s")
		self.assertEqual(seconds_to_duration(60), "1m")
		self.assertEqual(seconds_to_duration(0.25), "0.25s")
		self.assertEqual(seconds_to_duration(None), "0s")

	def test_safe_eval(self):
		self.assertEqual(safe_eval("2*x + 1", get_context(x=3)), 7)
		for expression in ("t.__class__", "__import__('os')", "[t for t in x]", "open('f')", "1 +"):
			with self.assertRaises(ConfigError, msg=expression):
				safe_eval(expression, get_context(t=1.0, x=[1]))

	def test_compile_function_broadcasts(self):
		function = compile_function("where(t < 0.5, 0, 1)")
		np.testing.assert_array_equal(function(np.array([0.1, 0.9])), [0.0, 1.0])
		self.assertEqual(function.__name__, "expr[where(t < 0.5, 0, 1)]")


class TestSettings(unittest.TestCase):
	def test_merge_skips_none(self):
		merged = merge_settings({"N": 100, "n": 5000}, None, {"n": 10000, "seed": None})
		self.assertEqual(merged, {"N": 100, "n": 10000})

	def test_override(self):
		self.assertEqual(get_setting("quadrature_order"), 16)
		self.assertEqual(get_setting("quadrature_order", 8), 8)
