# networks/qnetwork.py
"""
The three Q-value architectures.

## Layouts
	vanilla   conv 3→32 (3x3, wrap) → conv 32→64 (3x3, wrap) → flatten 4928
	          → 4928→128 → 128→4, leaky ReLU between layers
	double    conv C→128 (3,5) → conv 128→256 (3,3) → conv 256→128 (3,3),
	          each + batch norm + leaky ReLU, flatten 384 → 384→64 → 64→4
	dueling   the double trunk, then value 384→128→1 and advantage
	          384→128→4 streams combined by mean-advantage subtraction
"""

import numpy as np

from src.config.settings import settings
from src.core.errors import ConfigurationError, ContractViolation
from src.models.kinds import EncoderKind, ModelKind
from src.nn import layers as L
from src.nn.functional import dueling_aggregate
from src.nn.tensor import Tensor

GRID = (settings.ROWS, settings.COLUMNS)
NUM_ACTIONS = settings.NUM_ACTIONS

def default_encoder(kind: ModelKind) -> EncoderKind:
	return EncoderKind.SLIM3 if kind is ModelKind.VANILLA else EncoderKind.FULL17

def vanilla_specs(in_channels: int, slope: float) -> tuple[list[L.LayerSpec], dict[str, list[L.LayerSpec]]]:
	trunk = [
		L.conv(in_channels, 32, (3, 3), padding="circular"), L.leaky(slope),
		L.conv(32, 64, (3, 3), padding="circular"), L.leaky(slope),
		L.flat(),
	]
	features = 64 * GRID[0] * GRID[1]
	return trunk, {"head": [L.dense(features, 128), L.leaky(slope), L.dense(128, NUM_ACTIONS)]}

def conv_trunk_specs(in_channels: int, slope: float) -> list[L.LayerSpec]:
	return [
		L.conv(in_channels, 128, (3, 5)), L.batchnorm(128), L.leaky(slope),
		L.conv(128, 256, (3, 3)), L.batchnorm(256), L.leaky(slope),
		L.conv(256, 128, (3, 3)), L.batchnorm(128), L.leaky(slope),
		L.flat(),
	]

def double_specs(in_channels: int, slope: float) -> tuple[list[L.LayerSpec], dict[str, list[L.LayerSpec]]]:
	return conv_trunk_specs(in_channels, slope), {
		"head": [L.dense(384, 64), L.leaky(slope), L.dense(64, NUM_ACTIONS)]
	}

def dueling_specs(in_channels: int, slope: float) -> tuple[list[L.LayerSpec], dict[str, list[L.LayerSpec]]]:
	return conv_trunk_specs(in_channels, slope), {
		"value": [L.dense(384, 128), L.leaky(slope), L.dense(128, 1)],
		"advantage": [L.dense(384, 128), L.leaky(slope), L.dense(128, NUM_ACTIONS)],
	}

_SPECS = {
	ModelKind.VANILLA: vanilla_specs,
	ModelKind.DOUBLE: double_specs,
	ModelKind.DUELING: dueling_specs,
}

class QNetwork:
	"""A convolutional trunk plus one head (or value/advantage streams) producing (B, 4) Q-values."""

	def __init__(self, kind: ModelKind, in_channels: int, leaky_slope: float, seed: int):
		self.kind = kind
		self.in_channels = in_channels
		self.leaky_slope = leaky_slope
		self.seed = seed
		trunk_specs, head_specs = _SPECS[kind](in_channels, leaky_slope)
		rng = np.random.default_rng(seed)
		self.trunk = L.Sequential(trunk_specs, (in_channels,) + GRID, rng)
		self.heads = {
			name: L.Sequential(specs, self.trunk.output_shape, rng)
			for name, specs in head_specs.items()
		}
		for name, head in self.heads.items():
			expected = (1,) if name == "value" else (NUM_ACTIONS,)
			if head.output_shape != expected:
				raise ContractViolation(f"Head '{name}' produces {head.output_shape}, expected {expected}")

	@property
	def feature_size(self) -> int:
		return self.trunk.output_shape[0]

	def forward(self, x: Tensor | np.ndarray, training: bool = False) -> Tensor:
		if not isinstance(x, Tensor):
			x = Tensor(x)
		features = self.trunk.forward(x, training)
		if self.kind is ModelKind.DUELING:
			value, advantage = self._streams(features, training)
			return dueling_aggregate(value, advantage)
		return self.heads["head"].forward(features, training)

	def streams(self, x: Tensor | np.ndarray, training: bool = False) -> tuple[Tensor, Tensor]:
		"""Value (B, 1) and advantage (B, 4) outputs of a dueling network."""
		if self.kind is not ModelKind.DUELING:
			raise ContractViolation(f"{self.kind.value} networks have no value/advantage streams")
		if not isinstance(x, Tensor):
			x = Tensor(x)
		return self._streams(self.trunk.forward(x, training), training)

	def _streams(self, features: Tensor, training: bool) -> tuple[Tensor, Tensor]:
		return (
			self.heads["value"].forward(features, training),
			self.heads["advantage"].forward(features, training),
		)

	def q_values(self, states: np.ndarray) -> np.ndarray:
		"""Inference-mode Q-values as a plain array."""
		states = np.asarray(states, dtype=np.float64)
		if states.ndim == 3:
			states = states[None]
		return self.forward(Tensor(states), training=False).data

	def named_parameters(self) -> dict[str, Tensor]:
		params = self.trunk.named_parameters("trunk")
		for name, head in self.heads.items():
			params.update(head.named_parameters(name))
		return params

	def named_buffers(self) -> dict[str, np.ndarray]:
		buffers = self.trunk.named_buffers("trunk")
		for name, head in self.heads.items():
			buffers.update(head.named_buffers(name))
		return buffers

	def state_arrays(self) -> dict[str, np.ndarray]:
		"""Copies of every parameter and buffer, keyed by qualified name."""
		arrays = {f"param/{k}": v.data.copy() for k, v in self.named_parameters().items()}
		arrays.update({f"buffer/{k}": v.copy() for k, v in self.named_buffers().items()})
		return arrays

	def load_state_arrays(self, arrays: dict[str, np.ndarray]) -> None:
		params = self.named_parameters()
		expected = set(params) | set(self.named_buffers())
		given = {k.split("/", 1)[1] for k in arrays if k.startswith(("param/", "buffer/"))}
		if given != expected:
			missing = sorted(expected - given)
			extra = sorted(given - expected)
			raise ContractViolation(f"State mismatch: missing {missing[:5]}, unexpected {extra[:5]}")
		for name, tensor in params.items():
			value = np.asarray(arrays[f"param/{name}"], dtype=np.float64)
			if value.shape != tensor.shape:
				raise ContractViolation(f"Parameter {name} has shape {value.shape}, expected {tensor.shape}")
			tensor.data = value.copy()
		buffers = {k.split("/", 1)[1]: v for k, v in arrays.items() if k.startswith("buffer/")}
		self.trunk.load_named_buffers("trunk", buffers)
		for name, head in self.heads.items():
			head.load_named_buffers(name, buffers)

	def copy_from(self, other: "QNetwork") -> None:
		"""Makes every parameter and buffer bit-identical to `other`."""
		if self.architecture() != other.architecture():
			raise ContractViolation("Cannot copy between networks of different architectures")
		self.load_state_arrays(other.state_arrays())

	def clone(self) -> "QNetwork":
		twin = QNetwork(self.kind, self.in_channels, self.leaky_slope, self.seed)
		twin.copy_from(self)
		return twin

	def architecture(self) -> dict:
		return {
			"kind": self.kind.value,
			"in_channels": self.in_channels,
			"leaky_slope": self.leaky_slope,
			"trunk": [s.model_dump() for s in self.trunk.specs],
			"heads": {name: [s.model_dump() for s in head.specs] for name, head in self.heads.items()},
		}

def build(
	kind: ModelKind | str,
	seed: int,
	*,
	encoder: EncoderKind | str | None = None,
	leaky_slope: float = settings.LEAKY_SLOPE
) -> QNetwork:
	"""Builds a freshly initialised network; the encoder decides the input channels."""
	try:
		kind = ModelKind(kind)
		encoder = default_encoder(kind) if encoder is None else EncoderKind(encoder)
	except ValueError as e:
		raise ConfigurationError(str(e)) from e
	return QNetwork(kind, encoder.channels, leaky_slope, seed)
