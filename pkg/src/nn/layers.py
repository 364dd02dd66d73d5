# nn/layers.py
"""
Layer descriptors and the parameterised layers built from them.

A `LayerSpec` is plain data (it goes into checkpoint headers); `build_layer`
turns it into a layer holding its parameters. `Sequential` chains layers and
checks at construction that every output shape feeds the next input shape.
"""

from typing import Literal

import numpy as np
from pydantic import BaseModel, ConfigDict

from src.config.settings import settings
from src.core.errors import ConfigurationError, ContractViolation
from src.nn import functional as F
from src.nn.tensor import Tensor

LayerKind = Literal["conv2d", "batchnorm2d", "leaky_relu", "linear", "flatten"]

class LayerSpec(BaseModel):
	"""Architecture descriptor of one layer; only the fields of its kind are used."""
	model_config = ConfigDict(frozen=True)

	kind: LayerKind
	in_channels: int | None = None
	out_channels: int | None = None
	kernel: tuple[int, int] | None = None
	padding: str = "valid"
	num_features: int | None = None
	eps: float = settings.BN_EPSILON
	momentum: float = settings.BN_MOMENTUM
	negative_slope: float = settings.LEAKY_SLOPE
	in_features: int | None = None
	out_features: int | None = None

def conv(c_in: int, c_out: int, kernel: tuple[int, int], padding: str = "valid") -> LayerSpec:
	return LayerSpec(kind="conv2d", in_channels=c_in, out_channels=c_out, kernel=kernel, padding=padding)

def batchnorm(channels: int) -> LayerSpec:
	return LayerSpec(kind="batchnorm2d", num_features=channels)

def leaky(slope: float = settings.LEAKY_SLOPE) -> LayerSpec:
	return LayerSpec(kind="leaky_relu", negative_slope=slope)

def dense(f_in: int, f_out: int) -> LayerSpec:
	return LayerSpec(kind="linear", in_features=f_in, out_features=f_out)

def flat() -> LayerSpec:
	return LayerSpec(kind="flatten")

def output_shape(spec: LayerSpec, shape: tuple[int, ...]) -> tuple[int, ...]:
	"""Shape algebra for one layer, excluding the batch axis."""
	if spec.kind == "conv2d":
		c, h, w = shape
		if c != spec.in_channels:
			raise ContractViolation(f"conv2d expects {spec.in_channels} channels, got {c}")
		kh, kw = spec.kernel
		if spec.padding == "circular":
			return (spec.out_channels, h, w)
		if h < kh or w < kw:
			raise ContractViolation(f"Kernel {spec.kernel} does not fit spatial size {(h, w)}")
		return (spec.out_channels, h - kh + 1, w - kw + 1)
	if spec.kind == "batchnorm2d":
		if shape[0] != spec.num_features:
			raise ContractViolation(f"batchnorm2d expects {spec.num_features} channels, got {shape[0]}")
		return shape
	if spec.kind == "leaky_relu":
		return shape
	if spec.kind == "flatten":
		return (int(np.prod(shape)),)
	if spec.kind == "linear":
		if shape != (spec.in_features,):
			raise ContractViolation(f"linear expects ({spec.in_features},) features, got {shape}")
		return (spec.out_features,)
	raise ConfigurationError(f"Unknown layer kind '{spec.kind}'")

def chain_shape(specs: list[LayerSpec], shape: tuple[int, ...]) -> tuple[int, ...]:
	for spec in specs:
		shape = output_shape(spec, shape)
	return shape

class Layer:
	"""Base layer: no parameters, no buffers."""

	def __init__(self, spec: LayerSpec):
		self.spec = spec

	def parameters(self) -> dict[str, Tensor]:
		return {}

	def buffers(self) -> dict[str, np.ndarray]:
		return {}

	def load_buffers(self, buffers: dict[str, np.ndarray]) -> None:
		pass

	def forward(self, x: Tensor, training: bool) -> Tensor:
		raise NotImplementedError

def _fan_in_uniform(rng: np.random.Generator, shape: tuple[int, ...], fan_in: int) -> Tensor:
	bound = 1.0 / np.sqrt(fan_in)
	return Tensor(rng.uniform(-bound, bound, size=shape), requires_grad=True)

class Conv2d(Layer):
	def __init__(self, spec: LayerSpec, rng: np.random.Generator):
		super().__init__(spec)
		kh, kw = spec.kernel
		fan_in = spec.in_channels * kh * kw
		self.weight = _fan_in_uniform(rng, (spec.out_channels, spec.in_channels, kh, kw), fan_in)
		self.bias = _fan_in_uniform(rng, (spec.out_channels,), fan_in)

	def parameters(self) -> dict[str, Tensor]:
		return {"weight": self.weight, "bias": self.bias}

	def forward(self, x: Tensor, training: bool) -> Tensor:
		return F.conv2d(x, self.weight, self.bias, self.spec.padding)

class BatchNorm2d(Layer):
	def __init__(self, spec: LayerSpec, rng: np.random.Generator | None = None):
		super().__init__(spec)
		self.gamma = Tensor(np.ones(spec.num_features), requires_grad=True)
		self.beta = Tensor(np.zeros(spec.num_features), requires_grad=True)
		self.stats = F.BatchNormStats(spec.num_features, spec.momentum, spec.eps)

	def parameters(self) -> dict[str, Tensor]:
		return {"gamma": self.gamma, "beta": self.beta}

	def buffers(self) -> dict[str, np.ndarray]:
		return {"running_mean": self.stats.mean, "running_var": self.stats.var}

	def load_buffers(self, buffers: dict[str, np.ndarray]) -> None:
		self.stats.mean = np.array(buffers["running_mean"], dtype=np.float64)
		self.stats.var = np.array(buffers["running_var"], dtype=np.float64)

	def forward(self, x: Tensor, training: bool) -> Tensor:
		return F.batchnorm2d(x, self.gamma, self.beta, self.stats, training)

class LeakyReLU(Layer):
	def forward(self, x: Tensor, training: bool) -> Tensor:
		return F.leaky_relu(x, self.spec.negative_slope)

class Linear(Layer):
	def __init__(self, spec: LayerSpec, rng: np.random.Generator):
		super().__init__(spec)
		self.weight = _fan_in_uniform(rng, (spec.out_features, spec.in_features), spec.in_features)
		self.bias = _fan_in_uniform(rng, (spec.out_features,), spec.in_features)

	def parameters(self) -> dict[str, Tensor]:
		return {"weight": self.weight, "bias": self.bias}

	def forward(self, x: Tensor, training: bool) -> Tensor:
		return F.linear(x, self.weight, self.bias)

class Flatten(Layer):
	def forward(self, x: Tensor, training: bool) -> Tensor:
		return F.flatten(x)

def build_layer(spec: LayerSpec, rng: np.random.Generator) -> Layer:
	if spec.kind == "conv2d":
		return Conv2d(spec, rng)
	if spec.kind == "batchnorm2d":
		return BatchNorm2d(spec)
	if spec.kind == "leaky_relu":
		return LeakyReLU(spec)
	if spec.kind == "linear":
		return Linear(spec, rng)
	if spec.kind == "flatten":
		return Flatten(spec)
	raise ConfigurationError(f"Unknown layer kind '{spec.kind}'")

class Sequential:
	"""A shape-checked chain of layers."""

	def __init__(self, specs: list[LayerSpec], input_shape: tuple[int, ...], rng: np.random.Generator):
		self.specs = list(specs)
		self.input_shape = tuple(input_shape)
		self.output_shape = chain_shape(self.specs, self.input_shape)
		self.layers = [build_layer(spec, rng) for spec in self.specs]

	def forward(self, x: Tensor, training: bool) -> Tensor:
		if tuple(x.shape[1:]) != self.input_shape:
			raise ContractViolation(f"Expected input (B, {self.input_shape}), got {x.shape}")
		for layer in self.layers:
			x = layer.forward(x, training)
		return x

	def named_parameters(self, prefix: str) -> dict[str, Tensor]:
		return {
			f"{prefix}.{i}.{name}": tensor
			for i, layer in enumerate(self.layers)
			for name, tensor in layer.parameters().items()
		}

	def named_buffers(self, prefix: str) -> dict[str, np.ndarray]:
		return {
			f"{prefix}.{i}.{name}": array
			for i, layer in enumerate(self.layers)
			for name, array in layer.buffers().items()
		}

	def load_named_buffers(self, prefix: str, buffers: dict[str, np.ndarray]) -> None:
		for i, layer in enumerate(self.layers):
			own = {
				key.rsplit(".", 1)[1]: value
				for key, value in buffers.items()
				if key.startswith(f"{prefix}.{i}.")
			}
			if own:
				layer.load_buffers(own)
