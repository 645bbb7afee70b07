from typing import Any

# Numerical knobs shared by every module. Override per call or through an experiment config.
DEFAULTS: dict[str, Any] = {
	# composite Gauss-Legendre against d<M>
	"quadrature_order": 16,
	"quadrature_panels": 8,
	"quadrature_max_panels": 4096,
	"quadrature_rtol": 1e-10,
	# geometric grading of the panel touching 0: ratio and number of levels
	"grading_ratio": 0.5,
	"grading_levels": 48,
	# linear algebra
	"condition_limit": 1e12,
	# fractional operators
	"jacobi_order": 64,
	"derivative_divisions": 2048,
	"output_start_fraction": 1 / 50,
	"output_points": 197,
	# simulation
	"fbm_cholesky_max": 2048,
	"fbm_max_steps": 2**16,
	"fsv_gap_factor": 5.0,
	# reports
	"curve_points": 100,
	"curve_repetitions": 10,
	"report_format_version": 1,
}


def get_setting(key: str, override: Any = None) -> Any:
	"""Value of `key`, with an explicit `override` taking precedence over the default"""
	if override is not None:
		return override
	return DEFAULTS[key]


def merge_settings(*layers: dict[str, Any] | None) -> dict[str, Any]:
	"""Merge flat settings layers, later layers win; `None` values never overwrite.
	>>> merge_settings({"N": 100, "n": 5000}, {"n": 10000, "seed": None})
	... {'N': 100, 'n': 10000}
	"""
	merged: dict[str, Any] = {}
	for layer in layers:
		if not layer:
			continue
		merged.update({k: v for k, v in layer.items() if v is not None})
	return merged
