from fracdrift.estimator.gram import GramMatrix, gram_matrix
from fracdrift.estimator.projection import project_data, project_increments, sample_noise_projection
from fracdrift.estimator.risk import mise, oracle_bias
from fracdrift.estimator.selection import (
	FitResult,
	PenaltyConfig,
	contrast_path,
	fit,
	penalty,
	select_from_path,
	select_model,
	slope_heuristic,
	solve_projection,
)

__all__ = [
	"FitResult",
	"GramMatrix",
	"PenaltyConfig",
	"contrast_path",
	"fit",
	"gram_matrix",
	"mise",
	"oracle_bias",
	"penalty",
	"project_data",
	"project_increments",
	"sample_noise_projection",
	"select_from_path",
	"select_model",
	"slope_heuristic",
	"solve_projection",
]
