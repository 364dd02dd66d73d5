import tempfile
import unittest
from pathlib import Path
from unittest import mock

from src.core.env import step
from src.core.errors import TrainingDiverged
from src.core.replay import ReplayBuffer
from src.core.training import run_training
from src.data.checkpoints import load_checkpoint
from src.data.metrics import METRICS_COLUMNS
from src.models.config import TrainConfig


def small_config(out_dir: Path, **overrides) -> TrainConfig:
	values = dict(
		model_kind="vanilla",
		total_steps=40,
		batch_size=4,
		warmup=8,
		buffer_capacity=64,
		sync_period=5,
		eval_every=20,
		eval_games=2,
		checkpoint_every=20,
		max_steps=30,
		seed=9,
		out_dir=str(out_dir),
	)
	values.update(overrides)
	return TrainConfig(**values)

class TestRunTraining(unittest.TestCase):

	def setUp(self):
		self.tmp = tempfile.TemporaryDirectory()
		self.dir = Path(self.tmp.name)

	def tearDown(self):
		self.tmp.cleanup()

	def test_zero_steps_writes_header_and_initial_checkpoint(self):
		result = run_training(small_config(self.dir, total_steps=0))
		self.assertEqual(result.steps, 0)
		self.assertEqual(
			(self.dir / "metrics.csv").read_text(encoding="utf-8").strip(),
			",".join(METRICS_COLUMNS)
		)
		self.assertEqual(result.checkpoints, [self.dir / "step_000000.npz"])
		self.assertTrue((self.dir / "run.json").is_file())
		self.assertEqual(load_checkpoint(result.checkpoints[0]).header["step"], 0)

	def test_schedule(self):
		result = run_training(small_config(self.dir))
		self.assertEqual(result.steps, 40)
		frame = result.metrics.frame()
		self.assertEqual(list(frame.columns), METRICS_COLUMNS)
		self.assertEqual(list(frame["step"]), [20, 40])
		self.assertTrue(frame["loss"].notna().all())
		self.assertEqual(
			[p.name for p in result.checkpoints],
			["step_000000.npz", "step_000020.npz", "step_000040.npz"]
		)
		self.assertEqual(len(result.food_per_episode), result.episodes)
		self.assertEqual(len(result.losses), 40 - 8 + 1)

	def test_final_checkpoint_off_cadence(self):
		result = run_training(small_config(self.dir, total_steps=25))
		self.assertEqual(result.checkpoints[-1].name, "step_000025.npz")
		self.assertEqual(load_checkpoint(result.checkpoints[-1]).optim_state.step, 25 - 8 + 1)

	def test_identical_configs_give_identical_files(self):
		a = run_training(small_config(self.dir / "a", model_kind="double"))
		b = run_training(small_config(self.dir / "b", model_kind="double"))
		self.assertEqual(a.metrics.path.read_bytes(), b.metrics.path.read_bytes())
		self.assertEqual(len(a.checkpoints), len(b.checkpoints))
		for x, y in zip(a.checkpoints, b.checkpoints):
			self.assertEqual(x.name, y.name)
			self.assertEqual(x.read_bytes(), y.read_bytes())

	def test_solo_run(self):
		result = run_training(small_config(self.dir, num_geese=1, shaper_kind="manhattan"))
		self.assertEqual(result.steps, 40)
		self.assertEqual(list(result.metrics.frame()["win_rate"]), [1.0, 1.0])

	def test_one_transition_per_learner_step(self):
		learner_steps = []
		terminals = []
		real_push = ReplayBuffer.push

		def recording_step(state, actions):
			outcome = step(state, actions)
			ended = outcome.done or not outcome.next.geese[0].body
			learner_steps.append((bool(state.geese[0].body), ended))
			return outcome

		def recording_push(buffer, transition):
			terminals.append(transition.terminal)
			real_push(buffer, transition)

		with mock.patch("src.core.training.step", side_effect=recording_step), \
			mock.patch.object(ReplayBuffer, "push", autospec=True, side_effect=recording_push):
			result = run_training(small_config(
				self.dir, total_steps=150, max_steps=40, eval_every=1000, checkpoint_every=1000
			))

		self.assertEqual(len(terminals), 150)
		self.assertTrue(all(alive for alive, _ in learner_steps))
		self.assertEqual(terminals, [ended for _, ended in learner_steps])
		# every finished episode closes with exactly one terminal transition
		self.assertIn(sum(terminals), (result.episodes - 1, result.episodes))
		self.assertGreater(result.episodes, 1)

	def test_divergence_guard(self):
		with mock.patch("src.core.training.train_step", return_value=float("nan")):
			with self.assertRaises(TrainingDiverged):
				run_training(small_config(self.dir))

if __name__ == "__main__":
	unittest.main()
