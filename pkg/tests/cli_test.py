import io
import json
import tempfile
import unittest
from contextlib import redirect_stderr, redirect_stdout
from pathlib import Path
from unittest import mock

import pandas as pd

from src.data.replays import read_replay
from src.main import EXIT_OK, EXIT_USAGE, main

TRAIN_CONFIG = """\
model_kind=vanilla
total_steps=30
batch_size=4
warmup=8
buffer_capacity=64
eval_every=15
eval_games=2
checkpoint_every=15
max_steps=30
seed=3
"""

def run(*argv: str) -> tuple[int, str]:
	"""Runs the CLI and returns its exit code and standard output."""
	out = io.StringIO()
	with redirect_stdout(out), redirect_stderr(io.StringIO()):
		code = main(list(argv))
	return code, out.getvalue()

class TestCli(unittest.TestCase):

	def setUp(self):
		self.tmp = tempfile.TemporaryDirectory()
		self.dir = Path(self.tmp.name)

	def tearDown(self):
		self.tmp.cleanup()

	def test_usage_errors(self):
		self.assertEqual(run("eval", "--bogus")[0], EXIT_USAGE)
		self.assertEqual(run("fly")[0], EXIT_USAGE)
		self.assertEqual(run("eval", "--models", str(self.dir / "none.npz"), "--games", "2", "--seed", "0")[0], EXIT_USAGE)
		self.assertEqual(run("eval", "--models", "greedy", "--games", "0", "--seed", "0")[0], EXIT_USAGE)
		self.assertEqual(run("train", str(self.dir / "missing.env"))[0], EXIT_USAGE)

	def test_help(self):
		self.assertEqual(run("--help")[0], EXIT_OK)

	def test_dotenv_loads_before_logging_is_configured(self):
		calls = []
		with mock.patch("src.main.load_dotenv", side_effect=lambda: calls.append("dotenv")), \
			mock.patch("src.main.setup_logging", side_effect=lambda: calls.append("logging")):
			self.assertEqual(run("--help")[0], EXIT_OK)
		self.assertEqual(calls, ["dotenv", "logging"])

	def test_bench_env(self):
		code, out = run("bench-env", "--steps", "200", "--seed", "1")
		self.assertEqual(code, EXIT_OK)
		frame = pd.read_csv(io.StringIO(out))
		self.assertEqual(list(frame.columns), ["steps", "seconds", "steps_per_second"])
		self.assertEqual(int(frame["steps"][0]), 200)
		self.assertGreater(float(frame["steps_per_second"][0]), 0)

	def test_eval_builtin_agents(self):
		results = self.dir / "games.jsonl"
		code, out = run("eval", "--models", "random", "greedy", "greedy", "greedy", "--games", "4", "--seed", "2", "--out", str(results))
		self.assertEqual(code, EXIT_OK)
		frame = pd.read_csv(io.StringIO(out))
		self.assertEqual(list(frame.columns), ["agent", "win_rate", "ci_low", "ci_high", "mean_score", "max_score", "elo"])
		self.assertEqual(list(frame["agent"]), ["random", "greedy", "greedy#2", "greedy#3"])
		self.assertAlmostEqual(frame["elo"].sum(), 4000.0, places=4)
		self.assertEqual(len(results.read_text(encoding="utf-8").splitlines()), 4)

	def test_eval_is_reproducible(self):
		argv = ("eval", "--models", "random", "greedy", "--games", "5", "--seed", "11")
		self.assertEqual(run(*argv), run(*argv))

	def test_train_then_eval_and_export(self):
		config = self.dir / "run.env"
		config.write_text(TRAIN_CONFIG, encoding="utf-8")
		out_dir = self.dir / "run"
		code, out = run("train", str(config), "--out-dir", str(out_dir))
		self.assertEqual(code, EXIT_OK)
		summary = json.loads(out)
		self.assertEqual(summary["steps"], 30)
		checkpoint = summary["checkpoints"][-1]
		self.assertTrue(checkpoint.endswith("step_000030.npz"))
		self.assertEqual(len(pd.read_csv(out_dir / "metrics.csv")), 2)

		code, out = run("eval", "--models", checkpoint, "greedy", "greedy", "greedy", "--games", "2", "--seed", "0")
		self.assertEqual(code, EXIT_OK)
		self.assertEqual(pd.read_csv(io.StringIO(out))["agent"][0], "step_000030")

		replay = self.dir / "replay.jsonl"
		code, out = run("export-replay", "--checkpoint", checkpoint, "--out", str(replay), "--opponents", "greedy")
		self.assertEqual(code, EXIT_OK)
		lines = read_replay(replay)
		self.assertEqual(lines[0].step, 0)
		self.assertEqual(lines[-1].step, json.loads(out)["steps"])

	def test_export_replay_rejects_large_roster(self):
		code, _ = run("export-replay", "--checkpoint", "x.npz", "--out", str(self.dir / "r.jsonl"), "--opponents", "greedy,greedy,greedy,greedy")
		self.assertEqual(code, EXIT_USAGE)

if __name__ == "__main__":
	unittest.main()
