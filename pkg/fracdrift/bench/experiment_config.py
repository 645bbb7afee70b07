"""
Experiment configuration: a flat `key = value` text file, `#` comments, CLI overrides on top.

	scenario = molchan-J
	hurst = 0.6
	N = 100
	n = 5000
	dims = 2..12
	drift = J01            # or expr:10*t**2
"""

import dataclasses
from collections.abc import Callable
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Any

import numpy as np

from fracdrift import logger, throw
from fracdrift.basis import BasisFamily, TrigonometricBasis, mu_weighted_basis
from fracdrift.config import get_setting, merge_settings
from fracdrift.core import QuadVarModel
from fracdrift.estimator import PenaltyConfig
from fracdrift.estimator.risk import NORMS
from fracdrift.exceptions import ConfigError, FracDriftError
from fracdrift.simulate import check_hurst
from fracdrift.utils import compile_function

SCENARIOS = ("molchan-J", "black-scholes", "fsv", "pure-noise")
BASES = ("trigonometric", "mu-weighted")

# keys that steer a run without changing its results; never written to report files
RUNTIME_KEYS = ("out", "threads")


def j01(t):
	return 10 * np.asarray(t, dtype=float) ** 2


def j02(t):
	t = np.asarray(t, dtype=float)
	with np.errstate(divide="ignore"):
		return 10 * np.sqrt(np.maximum(-np.log(t), 0.0))


def j03(t):
	t = np.asarray(t, dtype=float)
	with np.errstate(divide="ignore"):
		return 20 * t**-0.05


def seasonal(t):
	t = np.asarray(t, dtype=float)
	return np.sin(2 * np.pi * t) + np.cos(2 * np.pi * t)


def zero(t):
	return np.zeros_like(np.asarray(t, dtype=float))


BUILTIN_FUNCTIONS: dict[str, Callable[[np.ndarray], np.ndarray]] = {
	"J01": j01,
	"J02": j02,
	"J03": j03,
	"seasonal": seasonal,
	"zero": zero,
}


@lru_cache(maxsize=64)
def resolve_function(selector: str) -> Callable[[np.ndarray], np.ndarray]:
	"""A builtin name or `expr:<expression in t>`; one function object per selector and process"""
	if selector in BUILTIN_FUNCTIONS:
		return BUILTIN_FUNCTIONS[selector]
	if selector.startswith("expr:"):
		return compile_function(selector.removeprefix("expr:"))
	known = ", ".join(sorted(BUILTIN_FUNCTIONS))
	throw(f"Unknown function '{selector}', expected one of {known} or expr:<expression>", ConfigError)


def parse_dims(value: str | Any) -> tuple[int, ...]:
	"""Candidate dimensions written as a range like 2..12 or a list like 1,5,11"""
	if not isinstance(value, str):
		return tuple(int(m) for m in value)
	text = value.replace(" ", "")
	try:
		if ".." in text:
			low, high = text.split("..")
			return tuple(range(int(low), int(high) + 1))
		return tuple(int(m) for m in text.split(",") if m)
	except ValueError:
		throw(f"Dimensions must look like 2..12 or 1,5,11, got '{value}'", ConfigError)


def parse_bool(value: str | bool) -> bool:
	if isinstance(value, bool):
		return value
	lowered = value.strip().lower()
	if lowered in ("1", "true", "yes", "on"):
		return True
	if lowered in ("0", "false", "no", "off"):
		return False
	throw(f"Expected a boolean, got '{value}'", ConfigError)


def parse_optional_float(value: str | float | None) -> float | None:
	if value is None or (isinstance(value, str) and value.strip().lower() in ("", "none")):
		return None
	return float(value)


@dataclass(frozen=True)
class ExperimentConfig:
	scenario: str = "molchan-J"
	hurst: float = 0.6
	horizon: float = 1.0
	N: int = 100
	n: int = 5000
	dims: tuple[int, ...] = tuple(range(2, 13))
	basis: str = "trigonometric"
	c_cal: float = 2.0
	calibration: str = "slope"
	slope_window: float = 0.5
	repetitions: int = 100
	seed: int = 0
	# J0 for molchan-J, b0 for black-scholes, rho0 for fsv
	drift: str = "J01"
	mise_norm: str = "l2"
	s0: float = 10.0
	sigma: float = 0.2
	estimate_sigma: bool = False
	sigma0: float = 0.2
	upsilon: float = 0.3
	gap: float | None = None
	stride: int = 1
	out: str | None = None
	threads: int = 1

	def __post_init__(self):
		if self.scenario not in SCENARIOS:
			throw(f"Unknown scenario '{self.scenario}', expected one of {SCENARIOS}", ConfigError)
		if self.basis not in BASES:
			throw(f"Unknown basis '{self.basis}', expected one of {BASES}", ConfigError)
		if self.mise_norm not in NORMS:
			throw(f"Unknown MISE norm '{self.mise_norm}', expected one of {NORMS}", ConfigError)
		if self.repetitions < 1 or self.N < 1 or self.n < 1:
			throw(
				f"Repetitions, copies and steps must be positive, got R={self.repetitions}, "
				f"N={self.N}, n={self.n}",
				ConfigError,
			)
		if not self.dims or min(self.dims) < 1 or max(self.dims) > self.N:
			throw(f"Dimensions must lie in 1..N={self.N}, got {list(self.dims)}", ConfigError)
		if self.horizon <= 0 or self.threads < 1 or self.stride < 1:
			throw("Horizon, threads and stride must be positive", ConfigError)
		try:
			check_hurst(self.hurst)
			_ = self.penalty
			resolve_function(self.drift)
		except FracDriftError as e:
			raise ConfigError(str(e))

	@classmethod
	def from_settings(cls, settings: dict[str, Any]) -> "ExperimentConfig":
		"""Build from raw (string or typed) values, rejecting unknown keys"""
		unknown = sorted(set(settings) - set(FIELD_PARSERS))
		if unknown:
			throw(f"Unknown configuration keys: {', '.join(unknown)}", ConfigError)
		values = {}
		for key, raw in settings.items():
			try:
				values[key] = FIELD_PARSERS[key](raw)
			except (TypeError, ValueError):
				throw(f"Invalid value '{raw}' for '{key}'", ConfigError)
		return cls(**values)

	@property
	def penalty(self) -> PenaltyConfig:
		return PenaltyConfig(c_cal=self.c_cal, mode=self.calibration, window=self.slope_window)

	@property
	def resolved_gap(self) -> float:
		"""Separation between FSV copies, a multiple of T unless set"""
		return get_setting("fsv_gap_factor") * self.horizon if self.gap is None else self.gap

	@property
	def truth(self) -> Callable[[np.ndarray], np.ndarray]:
		return resolve_function(self.drift)

	def family(self, qv: QuadVarModel) -> BasisFamily:
		if self.basis == "mu-weighted":
			return mu_weighted_basis(qv, max(self.dims))
		return TrigonometricBasis(self.horizon)

	def to_dict(self) -> dict[str, Any]:
		"""The resolved configuration as echoed in reports"""
		echo = dataclasses.asdict(self)
		for key in RUNTIME_KEYS:
			echo.pop(key)
		echo["dims"] = list(self.dims)
		return echo

	def check_sampling(self) -> None:
		"""n is meant to be of order N^2"""
		if not self.N**2 / 10 <= self.n <= 10 * self.N**2:
			logger("bench").warning(
				"n=%d is far from N^2=%d; the risk bound assumes n of order N^2", self.n, self.N**2
			)


FIELD_PARSERS: dict[str, Callable[[Any], Any]] = {
	"scenario": str,
	"hurst": float,
	"horizon": float,
	"N": int,
	"n": int,
	"dims": parse_dims,
	"basis": str,
	"c_cal": float,
	"calibration": str,
	"slope_window": float,
	"repetitions": int,
	"seed": int,
	"drift": str,
	"mise_norm": str,
	"s0": float,
	"sigma": float,
	"estimate_sigma": parse_bool,
	"sigma0": float,
	"upsilon": float,
	"gap": parse_optional_float,
	"stride": int,
	"out": str,
	"threads": int,
}


def parse_config_text(text: str, source: str = "<config>") -> dict[str, str]:
	settings = {}
	for number, line in enumerate(text.splitlines(), start=1):
		line = line.split("#", 1)[0].strip()
		if not line:
			continue
		key, sep, value = line.partition("=")
		if not sep or not key.strip():
			throw(f"{source}:{number}: expected 'key = value', got '{line}'", ConfigError)
		settings[key.strip()] = value.strip()
	return settings


def parse_overrides(pairs: tuple[str, ...] | list[str]) -> dict[str, str]:
	"""`--set key=value` pairs"""
	return parse_config_text("\n".join(pairs), "--set")


def load_config(path: str | Path | None = None, *layers: dict[str, Any] | None) -> ExperimentConfig:
	"""Defaults, then the config file, then each override layer in turn"""
	file_settings = None
	if path is not None:
		try:
			text = Path(path).read_text()
		except OSError as e:
			throw(f"Cannot read configuration {path}: {e}", ConfigError)
		file_settings = parse_config_text(text, str(path))
	return ExperimentConfig.from_settings(merge_settings(file_settings, *layers))
