import unittest

import numpy as np

from fracdrift.core import Ensemble, SamplePath, TimeGrid
from fracdrift.exceptions import DomainError, ValidationError


class TestTimeGrid(unittest.TestCase):
	def test_nodes(self):
		grid = TimeGrid(1.0, 5000)
		times = grid.times
		self.assertEqual(times[0], 0.0)
		self.assertEqual(times[-1], 1.0)
		self.assertTrue(np.all(np.diff(times) > 0))
		np.testing.assert_allclose(np.diff(times), 1 / 5000, rtol=1e-9)

	def test_offset_starts_at_first_step(self):
		grid = TimeGrid(2.0, 4, offset=True)
		self.assertEqual(grid.start_index, 1)
		self.assertEqual(grid.estimation_start, 0.5)
		self.assertEqual(TimeGrid(2.0, 4).estimation_start, 0.0)

	def test_invalid(self):
		with self.assertRaises(DomainError):
			TimeGrid(0.0, 10)
		with self.assertRaises(DomainError):
			TimeGrid(1.0, 0)


class TestEnsemble(unittest.TestCase):
	def test_paths_must_share_grid(self):
		a = SamplePath(TimeGrid(1.0, 4), np.zeros(5))
		b = SamplePath(TimeGrid(1.0, 5), np.zeros(6))
		with self.assertRaises(ValidationError):
			Ensemble((a, b))

	def test_path_length_and_finiteness(self):
		with self.assertRaises(ValidationError):
			SamplePath(TimeGrid(1.0, 4), np.zeros(4))
		with self.assertRaises(ValidationError):
			SamplePath(TimeGrid(1.0, 2), np.array([0.0, np.inf, 1.0]))

	def test_summed_increments(self):
		grid = TimeGrid(1.0, 3)
		ensemble = Ensemble.from_matrix(grid, [[0, 1, 3, 6], [0, -1, -1, 0]])
		self.assertEqual(ensemble.N, 2)
		np.testing.assert_array_equal(ensemble.summed_increments(), [0.0, 2.0, 4.0])
		np.testing.assert_array_equal(ensemble.increments.sum(axis=0), [0.0, 2.0, 4.0])
