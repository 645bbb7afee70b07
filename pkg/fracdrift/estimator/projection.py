import numpy as np

from fracdrift import throw
from fracdrift.basis import BasisFamily
from fracdrift.core import Ensemble, TimeGrid
from fracdrift.estimator.gram import GramMatrix
from fracdrift.exceptions import DimensionError, ValidationError
from fracdrift.simulate import RngStream


def check_dimension(m: int, N: int) -> None:
	if m > N:
		throw(f"Projection dimension m={m} exceeds the number of copies N={N}", DimensionError)


def project_increments(
	summed: np.ndarray,
	grid: TimeGrid,
	family: BasisFamily,
	m: int,
	N: int,
) -> np.ndarray:
	"""
	z_j = (1/N) sum_l phi_j(t_l) (sum_i Z^i_{t_l+1} - Z^i_{t_l}), left point, l >= grid.start_index

	:param summed: Increments summed over the N copies, one per grid cell
	:param grid: Observation grid
	:param family: Basis
	:param m: Dimension
	:param N: Number of copies that went into `summed`
	"""
	check_dimension(m, N)
	summed = np.asarray(summed, dtype=float)
	if summed.shape != (grid.n,):
		throw(f"Expected {grid.n} summed increments, got shape {summed.shape}", ValidationError)
	start = grid.start_index
	left = grid.times[start:-1]
	return family.evaluate(left, m) @ summed[start:] / N


def project_data(ensemble: Ensemble, family: BasisFamily, m: int) -> np.ndarray:
	"""Left-point projection z_{m,N,n} of the observed increments on the first m basis functions"""
	return project_increments(ensemble.summed_increments(), ensemble.grid, family, m, ensemble.N)


def sample_noise_projection(gram: GramMatrix, N: int, rng: RngStream) -> np.ndarray:
	"""
	Exact continuous-time noise part of z for a zero drift: (1/N) sum_i int phi_j dM^i is
	Gaussian with covariance Psi_m / N
	"""
	xi = rng.generator().standard_normal(gram.m)
	return gram.factor @ xi / np.sqrt(N)
