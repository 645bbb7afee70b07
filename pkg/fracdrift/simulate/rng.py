from dataclasses import dataclass

import numpy as np

from fracdrift import throw
from fracdrift.exceptions import ValidationError


@dataclass(frozen=True)
class RngStream:
	"""
	One reproducible random substream: (seed, index) always yields the same draws,
	distinct indices yield independent streams
	"""

	seed: int
	index: int = 0

	def __post_init__(self):
		if not 0 <= int(self.seed) < 2**64:
			throw(f"Master seed must be a 64-bit unsigned integer, got {self.seed}", ValidationError)
		if int(self.index) < 0:
			throw(f"Stream index must be non-negative, got {self.index}", ValidationError)

	def generator(self) -> np.random.Generator:
		sequence = np.random.SeedSequence(entropy=int(self.seed), spawn_key=(int(self.index),))
		return np.random.Generator(np.random.PCG64(sequence))


def stream_index(repetition: int, copy: int, n_copies: int) -> int:
	return repetition * n_copies + copy


def stream_for(seed: int, repetition: int, copy: int = 0, n_copies: int = 1) -> RngStream:
	return RngStream(seed, stream_index(repetition, copy, n_copies))
