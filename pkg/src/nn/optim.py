# nn/optim.py

import numpy as np

from src.config.settings import settings
from src.core.errors import ConfigurationError
from src.models.kinds import OptimizerKind
from src.nn.tensor import Tensor


class OptimState:
	"""Adaptive-moment state: first/second moments shaped like their parameters."""

	def __init__(
		self,
		lr: float = settings.LEARNING_RATE,
		betas: tuple[float, float] = settings.ADAM_BETAS,
		eps: float = settings.ADAM_EPSILON
	):
		self.lr = lr
		self.betas = tuple(betas)
		self.eps = eps
		self.step = 0
		self.m: dict[str, np.ndarray] = {}
		self.v: dict[str, np.ndarray] = {}

def adam_step(
	params: dict[str, np.ndarray],
	grads: dict[str, np.ndarray | None],
	state: OptimState
) -> None:
	"""One bias-corrected Adam update, applied in place."""
	state.step += 1
	beta1, beta2 = state.betas
	correction1 = 1.0 - beta1 ** state.step
	correction2 = 1.0 - beta2 ** state.step
	for name, value in params.items():
		grad = grads.get(name)
		if grad is None:
			grad = np.zeros_like(value)
		m = state.m.get(name)
		if m is None:
			m = state.m[name] = np.zeros_like(value)
			state.v[name] = np.zeros_like(value)
		v = state.v[name]
		m *= beta1
		m += (1.0 - beta1) * grad
		v *= beta2
		v += (1.0 - beta2) * grad * grad
		value -= state.lr * (m / correction1) / (np.sqrt(v / correction2) + state.eps)

def sgd_step(
	params: dict[str, np.ndarray],
	grads: dict[str, np.ndarray | None],
	state: OptimState
) -> None:
	"""Plain gradient descent."""
	state.step += 1
	for name, value in params.items():
		grad = grads.get(name)
		if grad is not None:
			value -= state.lr * grad

class Optimizer:
	"""Applies an update rule to a named set of Tensors."""

	def __init__(self, params: dict[str, Tensor], kind: OptimizerKind | str = OptimizerKind.ADAM, lr: float = settings.LEARNING_RATE):
		try:
			self.kind = OptimizerKind(kind)
		except ValueError as e:
			raise ConfigurationError(f"Unknown optimizer '{kind}'") from e
		self.params = params
		self.state = OptimState(lr=lr)
		self._rule = adam_step if self.kind is OptimizerKind.ADAM else sgd_step

	def zero_grad(self) -> None:
		for tensor in self.params.values():
			tensor.zero_grad()

	def step(self) -> None:
		self._rule(
			{name: t.data for name, t in self.params.items()},
			{name: t.grad for name, t in self.params.items()},
			self.state
		)
