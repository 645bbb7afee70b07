"""
Report files of an experiment:

	results.csv   one row per repetition (per repetition and dimension for pure-noise runs)
	summary.json  resolved configuration and aggregates
	curves.csv    t, the true function and the estimates of the first repetitions

Wall-clock, thread count and output directory stay out of the files, so a fixed seed
gives byte-identical reports.
"""

import json
import os
from pathlib import Path
from typing import Any

import numpy as np
import pandas as pd

from fracdrift import __version__, logger, throw
from fracdrift.bench.runner import ExperimentReport, curve_times
from fracdrift.config import get_setting
from fracdrift.exceptions import OutputError, ReportIntegrityError

RESULT_COLUMNS = ["rep", "m_hat", "mise_qv", "mise_l2", "c_cal", "sigma_hat", "status"]
RESULTS_FILE = "results.csv"
SUMMARY_FILE = "summary.json"
CURVES_FILE = "curves.csv"
FLOAT_FORMAT = "%.17g"


def ensure_output_dir(path: str | Path) -> Path:
	"""Create the output directory and check it is writable, before any computation starts"""
	path = Path(path)
	try:
		path.mkdir(parents=True, exist_ok=True)
	except OSError as e:
		throw(f"Cannot create output directory {path}: {e}", OutputError)
	if not path.is_dir() or not os.access(path, os.W_OK):
		throw(f"Output directory {path} is not writable", OutputError)
	return path


def _moments(values: pd.Series) -> dict[str, float | None]:
	values = values.dropna().to_numpy(dtype=float)
	if values.size == 0:
		return {"mean": None, "std": None}
	std = float(np.std(values, ddof=1)) if values.size > 1 else 0.0
	return {"mean": float(np.mean(values)), "std": std}


def aggregate(results: pd.DataFrame, mise_norm: str, N: int, by_dimension: bool = False) -> dict[str, Any]:
	"""
	Mean and standard deviation (ddof 1) over the successful rows

	With `by_dimension`, the moments are also given per dimension next to the pure-noise value m / N.
	"""
	ok = results[results["status"] == "ok"]
	aggregates = {
		"mise_qv": _moments(ok["mise_qv"]),
		"mise_l2": _moments(ok["mise_l2"]),
		"m_hat": _moments(ok["m_hat"]),
		"sigma_hat": _moments(ok["sigma_hat"]),
	}
	headline = aggregates[f"mise_{mise_norm}"]
	aggregates["mean_mise"] = headline["mean"]
	aggregates["std_mise"] = headline["std"]
	if by_dimension:
		aggregates["by_dimension"] = {
			str(int(m)): {**_moments(group["mise_qv"]), "expected": int(m) / N}
			for m, group in ok.groupby("m_hat", sort=True)
		}
	return aggregates


def results_frame(report: ExperimentReport) -> pd.DataFrame:
	return pd.DataFrame(report.rows, columns=RESULT_COLUMNS)


def curves_frame(report: ExperimentReport) -> pd.DataFrame:
	cfg = report.config
	times = curve_times(cfg.horizon)
	truth = np.zeros_like(times) if cfg.scenario == "pure-noise" else cfg.truth(times)
	columns = {"t": times, "truth": truth}
	kept = [outcome for outcome in report.outcomes if outcome.curve is not None]
	for outcome in kept[: get_setting("curve_repetitions")]:
		columns[f"estimate_{outcome.rep}"] = outcome.curve
	return pd.DataFrame(columns)


def summary(report: ExperimentReport) -> dict[str, Any]:
	cfg = report.config
	results = results_frame(report)
	return {
		"format_version": get_setting("report_format_version"),
		"fracdrift_version": __version__,
		"config": cfg.to_dict(),
		"repetitions": len(report.outcomes),
		"failed": report.failed,
		"partial": report.partial,
		"aggregates": aggregate(results, cfg.mise_norm, cfg.N, cfg.scenario == "pure-noise"),
	}


def _write_csv(frame: pd.DataFrame, path: Path) -> None:
	frame.to_csv(path, index=False, float_format=FLOAT_FORMAT, lineterminator="\n")


def emit_outputs(report: ExperimentReport, out: str | Path) -> dict[str, Path]:
	"""Write results.csv, summary.json and curves.csv to `out`"""
	out = ensure_output_dir(out)
	paths = {name: out / name for name in (RESULTS_FILE, SUMMARY_FILE, CURVES_FILE)}
	_write_csv(results_frame(report), paths[RESULTS_FILE])
	_write_csv(curves_frame(report), paths[CURVES_FILE])
	text = json.dumps(summary(report), sort_keys=True, indent=2, ensure_ascii=False)
	paths[SUMMARY_FILE].write_text(text + "\n", encoding="utf-8")
	logger("bench").info("Wrote %s", ", ".join(str(path) for path in paths.values()))
	return paths


def _same(a: Any, b: Any) -> bool:
	if isinstance(a, dict) and isinstance(b, dict):
		return a.keys() == b.keys() and all(_same(a[key], b[key]) for key in a)
	if a is None or b is None:
		return a is None and b is None
	if isinstance(a, int | float) and isinstance(b, int | float):
		return abs(a - b) <= 1e-12 * max(1.0, abs(a), abs(b))
	return a == b


def load_report(out: str | Path) -> tuple[pd.DataFrame, dict[str, Any]]:
	"""
	Read results.csv and summary.json back and recompute the aggregates

	:raises ReportIntegrityError: when the stored aggregates differ from the rows by more than 1e-12
	"""
	out = Path(out)
	try:
		results = pd.read_csv(out / RESULTS_FILE, dtype={"status": str})
		stored = json.loads((out / SUMMARY_FILE).read_text(encoding="utf-8"))
	except (OSError, ValueError) as e:
		throw(f"Cannot read the report in {out}: {e}", ReportIntegrityError)

	cfg = stored.get("config", {})
	scenario = cfg.get("scenario")
	recomputed = aggregate(results, cfg.get("mise_norm", "l2"), cfg.get("N", 1), scenario == "pure-noise")
	if not _same(recomputed, stored.get("aggregates")):
		throw(f"Aggregates in {out / SUMMARY_FILE} do not match {out / RESULTS_FILE}", ReportIntegrityError)
	return results, stored
