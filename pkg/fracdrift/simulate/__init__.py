from fracdrift.simulate.models import BlackScholes, FracStochVol, MartingaleModel, SdeConfig, check_hurst
from fracdrift.simulate.noise import simulate_fbm, simulate_martingale, simulate_molchan_increments
from fracdrift.simulate.processes import (
	simulate,
	simulate_black_scholes,
	simulate_ensemble,
	simulate_fsv,
	simulate_Z,
)
from fracdrift.simulate.rng import RngStream, stream_for, stream_index

__all__ = [
	"BlackScholes",
	"FracStochVol",
	"MartingaleModel",
	"RngStream",
	"SdeConfig",
	"check_hurst",
	"simulate",
	"simulate_Z",
	"simulate_black_scholes",
	"simulate_ensemble",
	"simulate_fbm",
	"simulate_fsv",
	"simulate_martingale",
	"simulate_molchan_increments",
	"stream_for",
	"stream_index",
]
