import unittest

import numpy as np

from src.core.errors import ConfigurationError, ContractViolation
from src.nn import layers as L
from src.nn.functional import mse_loss
from src.nn.optim import OptimState, Optimizer, adam_step
from src.nn.tensor import Tensor


class TestShapes(unittest.TestCase):

	def test_conv_shape_algebra(self):
		self.assertEqual(L.output_shape(L.conv(17, 128, (3, 5)), (17, 7, 11)), (128, 5, 7))
		self.assertEqual(L.output_shape(L.conv(3, 32, (3, 3), "circular"), (3, 7, 11)), (32, 7, 11))
		specs = [
			L.conv(17, 128, (3, 5)), L.batchnorm(128), L.leaky(),
			L.conv(128, 256, (3, 3)), L.batchnorm(256), L.leaky(),
			L.conv(256, 128, (3, 3)), L.batchnorm(128), L.leaky(),
			L.flat(),
		]
		self.assertEqual(L.chain_shape(specs, (17, 7, 11)), (384,))

	def test_mismatches_are_rejected(self):
		with self.assertRaises(ContractViolation):
			L.output_shape(L.conv(3, 8, (3, 3)), (4, 7, 11))
		with self.assertRaises(ContractViolation):
			L.output_shape(L.conv(3, 8, (9, 3)), (3, 7, 11))
		with self.assertRaises(ContractViolation):
			L.output_shape(L.dense(10, 4), (12,))
		with self.assertRaises(ContractViolation):
			L.Sequential([L.flat(), L.dense(10, 4)], (3, 7, 11), np.random.default_rng(0))

	def test_sequential_forward_checks_input(self):
		net = L.Sequential([L.flat(), L.dense(6, 2)], (2, 3), np.random.default_rng(0))
		self.assertEqual(net.forward(Tensor(np.ones((5, 2, 3))), training=False).shape, (5, 2))
		with self.assertRaises(ContractViolation):
			net.forward(Tensor(np.ones((5, 3, 2))), training=False)

	def test_named_parameters_and_buffers(self):
		net = L.Sequential([L.conv(2, 4, (3, 3)), L.batchnorm(4), L.leaky(), L.flat()], (2, 5, 5), np.random.default_rng(0))
		self.assertEqual(
			sorted(net.named_parameters("trunk")),
			["trunk.0.bias", "trunk.0.weight", "trunk.1.beta", "trunk.1.gamma"]
		)
		self.assertEqual(sorted(net.named_buffers("trunk")), ["trunk.1.running_mean", "trunk.1.running_var"])

	def test_same_seed_same_weights(self):
		a = L.Sequential([L.dense(4, 3)], (4,), np.random.default_rng(9))
		b = L.Sequential([L.dense(4, 3)], (4,), np.random.default_rng(9))
		np.testing.assert_array_equal(a.layers[0].weight.data, b.layers[0].weight.data)

	def test_batchnorm_running_statistics(self):
		layer = L.BatchNorm2d(L.batchnorm(2))
		x = Tensor(np.random.default_rng(0).normal(3.0, 2.0, size=(8, 2, 3, 3)))
		out = layer.forward(x, training=True).data
		np.testing.assert_allclose(out.mean(axis=(0, 2, 3)), 0.0, atol=1e-12)
		self.assertTrue((layer.stats.mean > 0).all())
		before = layer.stats.mean.copy()
		layer.forward(x, training=False)
		np.testing.assert_array_equal(layer.stats.mean, before)

class TestOptimizers(unittest.TestCase):

	def test_adam_converges_on_quadratic(self):
		w = Tensor(np.array([3.0, -2.0, 0.5]), requires_grad=True)
		optim = Optimizer({"w": w}, "adam", lr=0.05)
		for _ in range(1000):
			optim.zero_grad()
			mse_loss(w, np.zeros(3)).backward()
			optim.step()
		self.assertLess(np.abs(w.data).max(), 1e-2)
		self.assertEqual(optim.state.step, 1000)

	def test_adam_first_step_moves_by_lr(self):
		value = np.array([1.0, -1.0])
		state = OptimState(lr=0.1)
		adam_step({"p": value}, {"p": np.array([4.0, -0.5])}, state)
		np.testing.assert_allclose(value, [0.9, -0.9], atol=1e-6)

	def test_sgd(self):
		w = Tensor(np.array([1.0]), requires_grad=True)
		optim = Optimizer({"w": w}, "sgd", lr=0.25)
		optim.zero_grad()
		mse_loss(w, np.zeros(1)).backward()
		optim.step()
		np.testing.assert_allclose(w.data, [0.5])

	def test_unknown_optimizer(self):
		with self.assertRaises(ConfigurationError):
			Optimizer({}, "rmsprop")

if __name__ == "__main__":
	unittest.main()
