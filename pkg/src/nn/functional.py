# nn/functional.py
"""
Differentiable operations used by the value networks.

Each function takes and returns `Tensor`s and registers its own backward
rule; the formulas follow the usual forward/backward layer pairs
(affine, batch norm, convolution by sliding windows).
"""

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view

from src.core.errors import ConfigurationError, ContractViolation
from src.nn.tensor import Tensor, as_tensor

PADDING_MODES = ("valid", "circular")

def circular_pad(x: Tensor, pad_h: int, pad_w: int) -> Tensor:
	"""Wraps the last two axes around by (pad_h, pad_w) cells on each side."""
	if pad_h == 0 and pad_w == 0:
		return x
	_, _, height, width = x.shape
	rows = (np.arange(height + 2 * pad_h) - pad_h) % height
	cols = (np.arange(width + 2 * pad_w) - pad_w) % width
	out = x.data[:, :, rows][:, :, :, cols]

	def backward(g):
		folded_rows = np.zeros(g.shape[:3] + (width,), dtype=g.dtype)
		for j, col in enumerate(cols):
			folded_rows[..., col] += g[..., j]
		dx = np.zeros(x.shape, dtype=g.dtype)
		for i, row in enumerate(rows):
			dx[:, :, row] += folded_rows[:, :, i]
		return (dx,)

	return Tensor.from_op(out, (x,), backward)

def conv2d(x: Tensor, w: Tensor, b: Tensor, padding: str = "valid") -> Tensor:
	"""
	Stride-1 cross-correlation.

	x: (B, Cin, H, W), w: (Cout, Cin, kh, kw), b: (Cout,).
	'valid' gives (B, Cout, H-kh+1, W-kw+1); 'circular' wraps the input so the
	spatial size is kept (odd kernels).
	"""
	if padding not in PADDING_MODES:
		raise ConfigurationError(f"Unknown padding mode '{padding}'")
	if x.data.ndim != 4 or w.data.ndim != 4:
		raise ContractViolation(f"conv2d expects 4-d input and weight, got {x.shape} and {w.shape}")
	c_out, c_in, kh, kw = w.shape
	if x.shape[1] != c_in or b.shape != (c_out,):
		raise ContractViolation(f"conv2d shape mismatch: input {x.shape}, weight {w.shape}, bias {b.shape}")
	if padding == "circular":
		x = circular_pad(x, kh // 2, kw // 2)
	if x.shape[2] < kh or x.shape[3] < kw:
		raise ContractViolation(f"Kernel {(kh, kw)} larger than input {x.shape[2:]}")

	# windows: (B, Cin, H', W', kh, kw)
	windows = sliding_window_view(x.data, (kh, kw), axis=(2, 3))
	out = np.tensordot(windows, w.data, axes=([1, 4, 5], [1, 2, 3])).transpose(0, 3, 1, 2)
	out = out + b.data[None, :, None, None]
	out_h, out_w = out.shape[2], out.shape[3]

	def backward(g):
		dw = np.tensordot(g, windows, axes=([0, 2, 3], [0, 2, 3]))
		db = g.sum(axis=(0, 2, 3))
		dx = np.zeros(x.shape, dtype=g.dtype)
		for i in range(kh):
			for j in range(kw):
				dx[:, :, i:i + out_h, j:j + out_w] += np.tensordot(g, w.data[:, :, i, j], axes=([1], [0])).transpose(0, 3, 1, 2)
		return dx, dw, db

	return Tensor.from_op(np.ascontiguousarray(out), (x, w, b), backward)

class BatchNormStats:
	"""Running mean/variance of one batch-norm layer."""
	__slots__ = ("mean", "var", "momentum", "eps")

	def __init__(self, channels: int, momentum: float, eps: float):
		self.mean = np.zeros(channels, dtype=np.float64)
		self.var = np.ones(channels, dtype=np.float64)
		self.momentum = momentum
		self.eps = eps

def batchnorm2d(x: Tensor, gamma: Tensor, beta: Tensor, stats: BatchNormStats, training: bool) -> Tensor:
	"""
	Per-channel normalisation of a (B, C, H, W) tensor.

	Training mode normalises with the batch statistics and folds them into the
	running statistics; inference mode uses the running statistics.
	"""
	channels = x.shape[1]
	if gamma.shape != (channels,) or beta.shape != (channels,):
		raise ContractViolation(f"batchnorm2d expects {channels} channel parameters, got {gamma.shape}")
	axes = (0, 2, 3)
	shape = (1, channels, 1, 1)
	if training:
		mean = x.data.mean(axis=axes)
		var = x.data.var(axis=axes)
		count = x.data.size // channels
		m = stats.momentum
		stats.mean = (1 - m) * stats.mean + m * mean
		unbiased = var * count / (count - 1) if count > 1 else var
		stats.var = (1 - m) * stats.var + m * unbiased
	else:
		mean, var = stats.mean, stats.var
	inv_std = 1.0 / np.sqrt(var + stats.eps)
	x_hat = (x.data - mean.reshape(shape)) * inv_std.reshape(shape)
	out = gamma.data.reshape(shape) * x_hat + beta.data.reshape(shape)

	def backward(g):
		dgamma = (g * x_hat).sum(axis=axes)
		dbeta = g.sum(axis=axes)
		dx_hat = g * gamma.data.reshape(shape)
		if not training:
			return dx_hat * inv_std.reshape(shape), dgamma, dbeta
		n = x.data.size // channels
		dx = (
			n * dx_hat
			- dx_hat.sum(axis=axes, keepdims=True)
			- x_hat * (dx_hat * x_hat).sum(axis=axes, keepdims=True)
		) * (inv_std.reshape(shape) / n)
		return dx, dgamma, dbeta

	return Tensor.from_op(out, (x, gamma, beta), backward)

def leaky_relu(x: Tensor, negative_slope: float = 0.01) -> Tensor:
	slope = np.where(x.data > 0, 1.0, negative_slope)
	return Tensor.from_op(x.data * slope, (x,), lambda g: (g * slope,))

def linear(x: Tensor, w: Tensor, b: Tensor) -> Tensor:
	"""Affine map x·wᵀ + b for x: (B, F), w: (O, F), b: (O,)."""
	if x.data.ndim != 2 or w.data.ndim != 2 or x.shape[1] != w.shape[1] or b.shape != (w.shape[0],):
		raise ContractViolation(f"linear shape mismatch: input {x.shape}, weight {w.shape}, bias {b.shape}")
	out = x.data @ w.data.T + b.data
	return Tensor.from_op(out, (x, w, b), lambda g: (g @ w.data, g.T @ x.data, g.sum(axis=0)))

def flatten(x: Tensor) -> Tensor:
	"""Flattens everything but the batch axis."""
	return x.reshape(x.shape[0], -1)

def gather_actions(q: Tensor, actions: np.ndarray) -> Tensor:
	"""Picks q[i, actions[i]] for every row."""
	rows = np.arange(q.shape[0])
	actions = np.asarray(actions, dtype=np.int64)

	def backward(g):
		dq = np.zeros(q.shape, dtype=g.dtype)
		dq[rows, actions] = g
		return (dq,)

	return Tensor.from_op(q.data[rows, actions], (q,), backward)

def dueling_aggregate(v: Tensor, a: Tensor) -> Tensor:
	"""Q = V + (A - mean over actions of A), V: (B, 1), A: (B, n_actions)."""
	if v.data.ndim != 2 or v.shape[1] != 1 or a.data.ndim != 2 or a.shape[0] != v.shape[0]:
		raise ContractViolation(f"dueling_aggregate expects (B,1) and (B,A), got {v.shape} and {a.shape}")
	return v + (a - a.mean(axis=1, keepdims=True))

def mse_loss(pred: Tensor, target) -> Tensor:
	target = as_tensor(target)
	if pred.shape != target.shape:
		raise ContractViolation(f"mse_loss shape mismatch: {pred.shape} vs {target.shape}")
	diff = pred.data - target.data
	n = diff.size
	return Tensor.from_op(
		np.asarray(np.mean(diff ** 2)),
		(pred, target),
		lambda g: (g * 2.0 * diff / n, -g * 2.0 * diff / n)
	)

def huber_loss(pred: Tensor, target, delta: float = 1.0) -> Tensor:
	"""Smooth L1: ½x² inside |x| ≤ δ, δ(|x| − ½δ) outside; mean-reduced."""
	if delta <= 0:
		raise ConfigurationError(f"Huber delta must be positive, got {delta}")
	target = as_tensor(target)
	if pred.shape != target.shape:
		raise ContractViolation(f"huber_loss shape mismatch: {pred.shape} vs {target.shape}")
	diff = pred.data - target.data
	magnitude = np.abs(diff)
	inside = magnitude <= delta
	per_element = np.where(inside, 0.5 * diff ** 2, delta * (magnitude - 0.5 * delta))
	slope = np.where(inside, diff, delta * np.sign(diff)) / diff.size
	return Tensor.from_op(
		np.asarray(per_element.mean()),
		(pred, target),
		lambda g: (g * slope, -g * slope)
	)
