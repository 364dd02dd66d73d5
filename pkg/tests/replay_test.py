import unittest

import numpy as np
from scipy.stats import chisquare

from src.core.errors import ContractViolation, NotReady
from src.core.replay import EpsilonSchedule, ReplayBuffer, Transition


def transition(i: int) -> Transition:
	"""A (1, 2, 2) state whose first cell stores `i` (mod 256) for identification."""
	s = np.zeros((1, 2, 2))
	s[0, 0, 0] = i % 256
	return Transition(s, i % 4, float(i), s, i % 2 == 0)

class TestReplayBuffer(unittest.TestCase):

	def test_push_grows_to_capacity(self):
		buf = ReplayBuffer(3)
		buf.push(transition(0))
		self.assertEqual(len(buf), 1)
		for i in range(1, 10):
			buf.push(transition(i))
		self.assertEqual(len(buf), 3)
		self.assertEqual(buf.inserted, 10)

	def test_fifo_eviction(self):
		buf = ReplayBuffer(3)
		for i in range(4):
			buf.push(transition(i))
		rewards = {t.r for t in buf.sample(200, np.random.default_rng(0))}
		self.assertEqual(rewards, {1.0, 2.0, 3.0})

	def test_large_stream_keeps_capacity(self):
		buf = ReplayBuffer(10_000)
		t = transition(1)
		for _ in range(1_000_000):
			buf.push(t)
		self.assertEqual(len(buf), 10_000)

	def test_single_item(self):
		buf = ReplayBuffer(5)
		buf.push(transition(7))
		(only,) = buf.sample(1, np.random.default_rng(0))
		self.assertEqual((only.a, only.r, only.terminal), (3, 7.0, False))
		self.assertEqual(only.s[0, 0, 0], 7)

	def test_underfull_is_not_ready(self):
		buf = ReplayBuffer(5)
		buf.push(transition(0))
		with self.assertRaises(NotReady):
			buf.sample(2, np.random.default_rng(0))
		with self.assertRaises(NotReady):
			buf.sample_batch(2, np.random.default_rng(0))

	def test_shape_mismatch(self):
		buf = ReplayBuffer(5)
		buf.push(transition(0))
		with self.assertRaises(ContractViolation):
			buf.push(Transition(np.zeros((3, 7, 11)), 0, 0.0, np.zeros((3, 7, 11)), False))

	def test_uniform_sampling(self):
		buf = ReplayBuffer(100)
		for i in range(100):
			buf.push(transition(i))
		batch = buf.sample_batch(100_000, np.random.default_rng(3))
		counts = np.bincount(batch.rewards.astype(int), minlength=100)
		self.assertGreater(chisquare(counts).pvalue, 0.01)

	def test_batch_columns(self):
		buf = ReplayBuffer(4)
		for i in range(4):
			buf.push(transition(i))
		batch = buf.sample_batch(8, np.random.default_rng(1))
		self.assertEqual(batch.states.shape, (8, 1, 2, 2))
		self.assertEqual(batch.states.dtype, np.float64)
		np.testing.assert_array_equal(batch.states[:, 0, 0, 0], batch.rewards)
		np.testing.assert_array_equal(batch.terminals, batch.rewards % 2 == 0)

class TestEpsilonSchedule(unittest.TestCase):

	def test_linear_then_flat(self):
		schedule = EpsilonSchedule(1.0, 0.05, 100)
		self.assertEqual(schedule(0), 1.0)
		self.assertAlmostEqual(schedule(50), 0.525)
		self.assertAlmostEqual(schedule(100), 0.05)
		self.assertAlmostEqual(schedule(10_000), 0.05)

	def test_no_decay(self):
		self.assertEqual(EpsilonSchedule(1.0, 0.1, 0)(0), 0.1)

	def test_invalid_range(self):
		with self.assertRaises(ContractViolation):
			EpsilonSchedule(0.1, 0.5, 10)

if __name__ == "__main__":
	unittest.main()
