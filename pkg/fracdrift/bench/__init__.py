from fracdrift.bench.experiment_config import ExperimentConfig, load_config, resolve_function
from fracdrift.bench.report import emit_outputs, ensure_output_dir, load_report
from fracdrift.bench.runner import ExperimentReport, RepetitionOutcome, run_experiment, run_repetition

__all__ = [
	"ExperimentConfig",
	"ExperimentReport",
	"RepetitionOutcome",
	"emit_outputs",
	"ensure_output_dir",
	"load_config",
	"load_report",
	"resolve_function",
	"run_experiment",
	"run_repetition",
]
