import json
import tempfile
import unittest
from pathlib import Path

import numpy as np
import pandas as pd
from click.testing import CliRunner

from fracdrift.bench.commands import cli
from fracdrift.exceptions import (
	ConfigError,
	DecompositionError,
	FracDriftError,
	ReportIntegrityError,
	SingularDesignError,
	exit_code_for,
)

MOLCHAN = ["--set", "N=20", "--set", "n=400", "--set", "dims=2..6", "--set", "repetitions=2"]


class TestCommands(unittest.TestCase):
	def setUp(self):
		self.runner = CliRunner()
		self.directory = tempfile.TemporaryDirectory()
		self.out = Path(self.directory.name)

	def tearDown(self):
		self.directory.cleanup()

	def invoke(self, *args):
		return self.runner.invoke(cli, ["--out", str(self.out), *args])

	def test_experiment(self):
		result = self.invoke("--seed", "3", *MOLCHAN, "experiment")
		self.assertEqual(result.exit_code, 0, result.output)
		self.assertIn("mean MISE (l2)", result.output)
		stored = json.loads((self.out / "summary.json").read_text())
		self.assertEqual(stored["config"]["seed"], 3)
		self.assertEqual(stored["config"]["N"], 20)
		self.assertTrue((self.out / "curves.csv").exists())

	def test_experiment_config_file(self):
		config = self.out / "run.cfg"
		config.write_text("scenario = pure-noise\nN = 30\nn = 300\ndims = 1,3\nrepetitions = 1\n")
		result = self.invoke("--set", "hurst=0.9", "experiment", str(config))
		self.assertEqual(result.exit_code, 0, result.output)
		self.assertIn("m/N", result.output)
		stored = json.loads((self.out / "summary.json").read_text())
		self.assertEqual(stored["config"]["hurst"], 0.9)

	def test_config_errors_exit_with_2(self):
		self.assertEqual(self.invoke("--set", "hurts=0.6", "experiment").exit_code, 2)
		self.assertEqual(self.invoke("--set", "hurst", "experiment").exit_code, 2)
		self.assertEqual(self.invoke("--set", "N=5", "experiment").exit_code, 2)

	def test_unwritable_output_exits_before_running(self):
		blocker = self.out / "file"
		blocker.write_text("")
		result = self.runner.invoke(cli, ["--out", str(blocker / "out"), *MOLCHAN, "experiment"])
		self.assertEqual(result.exit_code, 2)

	def test_simulate_and_fit(self):
		result = self.invoke("--set", "N=20", "--set", "n=400", "--set", "hurst=0.7", "simulate")
		self.assertEqual(result.exit_code, 0, result.output)
		paths = pd.read_csv(self.out / "paths.csv")
		self.assertEqual(paths.shape, (401, 21))

		result = self.invoke("fit", str(self.out / "paths.csv"), "--hurst", "0.7", "--dims", "2..6")
		self.assertEqual(result.exit_code, 0, result.output)
		self.assertIn("Selected m=", result.output)
		for name in ("j_hat.csv", "q_hat.csv", "fit.json"):
			self.assertTrue((self.out / name).exists(), name)
		self.assertEqual(json.loads((self.out / "fit.json").read_text())["hurst"], 0.7)

	def test_black_scholes(self):
		settings = ["--set", "scenario=black-scholes", "--set", "N=10", "--set", "n=1000", "--set", "drift=seasonal"]
		self.assertEqual(self.invoke(*settings, "simulate").exit_code, 0)
		prices = self.out / "prices.csv"

		result = self.invoke("bs", str(prices), "--copies", "10", "--dims", "2..5")
		self.assertEqual(result.exit_code, 0, result.output)
		self.assertIn("sigma_hat", result.output)
		self.assertEqual(len(pd.read_csv(self.out / "b_hat.csv")), 197)

		result = self.invoke("sigma", str(prices))
		self.assertEqual(result.exit_code, 0, result.output)
		self.assertAlmostEqual(float(result.stdout.strip().splitlines()[-1]), np.sqrt(0.05), delta=0.02)

		self.assertEqual(self.invoke("bs", str(prices), "--copies", "11").exit_code, 2)

	def test_fsv(self):
		settings = ["--set", "scenario=fsv", "--set", "N=5", "--set", "n=1000", "--set", "gap=1", "--set", "hurst=0.7"]
		self.assertEqual(self.invoke(*settings, "simulate").exit_code, 0)
		volatility = str(self.out / "volatility.csv")
		args = ["--copies", "5", "--gap", "1", "--upsilon", "0.3", "--hurst", "0.7", "--dims", "1..3"]
		result = self.invoke("fsv", volatility, *args, "--stride", "2")
		self.assertEqual(result.exit_code, 0, result.output)
		rho = pd.read_csv(self.out / "rho_hat.csv")
		self.assertEqual(list(rho.columns), ["t", "value"])
		self.assertTrue(np.all(np.isfinite(rho["value"])))


class TestExitCodes(unittest.TestCase):
	def test_mapping(self):
		self.assertEqual(exit_code_for(SingularDesignError("x")), 3)
		self.assertEqual(exit_code_for(DecompositionError("x")), 3)
		self.assertEqual(exit_code_for(ReportIntegrityError("x")), 3)
		self.assertEqual(exit_code_for(ConfigError("x")), 2)
		self.assertEqual(exit_code_for(FracDriftError("x")), 1)
