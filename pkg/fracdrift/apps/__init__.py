from fracdrift.apps.black_scholes import bs_build_Z, estimate_drift_bs, estimate_drift_bs_from_path, estimate_sigma
from fracdrift.apps.covariance import block_covariance_asymptote, block_covariance_decay
from fracdrift.apps.drift import DriftEstimate
from fracdrift.apps.segmentation import SegmentedSeries, read_paths, read_series, segment, write_paths
from fracdrift.apps.volatility import estimate_rho, fsv_build_Z, fsv_weights

__all__ = [
	"DriftEstimate",
	"SegmentedSeries",
	"block_covariance_asymptote",
	"block_covariance_decay",
	"bs_build_Z",
	"estimate_drift_bs",
	"estimate_drift_bs_from_path",
	"estimate_rho",
	"estimate_sigma",
	"fsv_build_Z",
	"fsv_weights",
	"read_paths",
	"read_series",
	"segment",
	"write_paths",
]
