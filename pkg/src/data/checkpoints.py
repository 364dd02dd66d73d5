# data/checkpoints.py
"""
Checkpoint files.

A checkpoint is an `.npz` archive readable with `numpy.load`:
	header          JSON (uint8 bytes): format version, model kind, encoder,
	                centring, architecture descriptor, seeds, optimiser
	                hyper-parameters and step, training step
	param/<name>    parameters, little-endian float64
	buffer/<name>   batch-norm running statistics
	adam_m/<name>   optimiser first moments (when saved with an optimiser)
	adam_v/<name>   optimiser second moments

Archive members carry a fixed timestamp so identical runs write identical bytes.
"""

import io
import json
import zipfile
from pathlib import Path
from typing import Any

import numpy as np

from src.config.settings import settings
from src.core.errors import CheckpointError
from src.models.kinds import EncoderKind, ModelKind
from src.networks.qnetwork import QNetwork
from src.nn.optim import OptimState
from src.utils.logger import logger

_FIXED_DATE = (1980, 1, 1, 0, 0, 0)

class Checkpoint:
	"""A loaded checkpoint: the network, optional optimiser state and header."""

	def __init__(self, network: QNetwork, header: dict[str, Any], optim_state: OptimState | None):
		self.network = network
		self.header = header
		self.optim_state = optim_state

	@property
	def encoder(self) -> EncoderKind:
		return EncoderKind(self.header["encoder"])

	@property
	def center(self) -> tuple[int, int] | None:
		center = self.header.get("center")
		return tuple(center) if center is not None else None

def _array_bytes(array: np.ndarray) -> bytes:
	buffer = io.BytesIO()
	np.lib.format.write_array(buffer, np.ascontiguousarray(array), allow_pickle=False)
	return buffer.getvalue()

def save_checkpoint(
	path: str | Path,
	network: QNetwork,
	*,
	encoder: EncoderKind | str,
	center: tuple[int, int] | None = None,
	optim_state: OptimState | None = None,
	extra: dict[str, Any] | None = None
) -> Path:
	"""Writes `network` (and optionally the optimiser state) to `path`."""
	path = Path(path)
	path.parent.mkdir(parents=True, exist_ok=True)
	header: dict[str, Any] = {
		"format_version": settings.CHECKPOINT_VERSION,
		"model_kind": network.kind.value,
		"encoder": EncoderKind(encoder).value,
		"center": list(center) if center is not None else None,
		"seed": network.seed,
		"architecture": network.architecture(),
		"optimizer": None,
	}
	arrays = {k: v.astype("<f8") for k, v in network.state_arrays().items()}
	if optim_state is not None:
		header["optimizer"] = {
			"lr": optim_state.lr,
			"betas": list(optim_state.betas),
			"eps": optim_state.eps,
			"step": optim_state.step,
		}
		arrays.update({f"adam_m/{k}": v.astype("<f8") for k, v in optim_state.m.items()})
		arrays.update({f"adam_v/{k}": v.astype("<f8") for k, v in optim_state.v.items()})
	if extra:
		header.update(extra)
	header_bytes = json.dumps(header, sort_keys=True).encode("utf-8")
	arrays["header"] = np.frombuffer(header_bytes, dtype=np.uint8)

	with zipfile.ZipFile(path, "w", compression=zipfile.ZIP_STORED) as archive:
		for name in sorted(arrays):
			info = zipfile.ZipInfo(f"{name}.npy", date_time=_FIXED_DATE)
			archive.writestr(info, _array_bytes(arrays[name]))
	logger(tag="checkpoint").debug(f"Saved {path}")
	return path

def load_checkpoint(path: str | Path) -> Checkpoint:
	"""Reads a checkpoint written by `save_checkpoint`."""
	path = Path(path)
	if not path.is_file():
		raise CheckpointError(f"Checkpoint '{path}' does not exist")
	try:
		with np.load(path, allow_pickle=False) as archive:
			arrays = {name: archive[name] for name in archive.files}
	except Exception as e:
		logger(tag="checkpoint").error(f"Failed to read {path}: {e}")
		raise CheckpointError(f"Checkpoint '{path}' is unreadable: {e}") from e

	if "header" not in arrays:
		raise CheckpointError(f"Checkpoint '{path}' has no header")
	header = json.loads(arrays.pop("header").tobytes().decode("utf-8"))
	if header.get("format_version") != settings.CHECKPOINT_VERSION:
		raise CheckpointError(f"Unsupported checkpoint version {header.get('format_version')}")

	architecture = header["architecture"]
	network = QNetwork(
		ModelKind(header["model_kind"]),
		int(architecture["in_channels"]),
		float(architecture["leaky_slope"]),
		int(header["seed"]),
	)
	if network.architecture() != _normalise(architecture):
		raise CheckpointError(f"Checkpoint '{path}' architecture does not match its model kind")
	network.load_state_arrays({k: v for k, v in arrays.items() if k.startswith(("param/", "buffer/"))})

	optim_state = None
	if header.get("optimizer"):
		opt = header["optimizer"]
		optim_state = OptimState(lr=opt["lr"], betas=tuple(opt["betas"]), eps=opt["eps"])
		optim_state.step = int(opt["step"])
		optim_state.m = {k.split("/", 1)[1]: v.copy() for k, v in arrays.items() if k.startswith("adam_m/")}
		optim_state.v = {k.split("/", 1)[1]: v.copy() for k, v in arrays.items() if k.startswith("adam_v/")}
	return Checkpoint(network, header, optim_state)

def _normalise(architecture: dict) -> dict:
	"""JSON turns tuples into lists; rebuild the descriptor through the layer models."""
	from src.nn.layers import LayerSpec
	return {
		**architecture,
		"trunk": [LayerSpec(**s).model_dump() for s in architecture["trunk"]],
		"heads": {
			name: [LayerSpec(**s).model_dump() for s in specs]
			for name, specs in architecture["heads"].items()
		},
	}

def load_policy(path: str | Path, name: str | None = None):
	"""Greedy policy playing the network stored at `path`."""
	from src.core.policies import QPolicy
	checkpoint = load_checkpoint(path)
	return QPolicy(
		checkpoint.network,
		checkpoint.encoder,
		checkpoint.center,
		name=name or Path(path).stem
	)
