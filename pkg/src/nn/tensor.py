# nn/tensor.py
"""
Dense float64 tensors with reverse-mode differentiation.

Every operation that produces a Tensor records its parents and a backward
function mapping the output gradient to one gradient per parent. Calling
`backward()` on a scalar walks the recorded graph in reverse topological
order and accumulates `.grad` on every tensor that requires it.
"""

from collections.abc import Callable, Sequence

import numpy as np

from src.core.errors import ContractViolation

BackwardFn = Callable[[np.ndarray], Sequence[np.ndarray | None]]

class Tensor:
	__slots__ = ("data", "grad", "requires_grad", "_parents", "_backward")

	def __init__(self, data, requires_grad: bool = False):
		self.data = np.asarray(data, dtype=np.float64)
		self.grad: np.ndarray | None = None
		self.requires_grad = requires_grad
		self._parents: tuple["Tensor", ...] = ()
		self._backward: BackwardFn | None = None

	@classmethod
	def from_op(cls, data: np.ndarray, parents: Sequence["Tensor"], backward: BackwardFn) -> "Tensor":
		"""Creates the output of an operation; the graph is kept only if a parent needs gradients."""
		out = cls(data)
		if any(p.requires_grad for p in parents):
			out.requires_grad = True
			out._parents = tuple(parents)
			out._backward = backward
		return out

	@property
	def shape(self) -> tuple[int, ...]:
		return self.data.shape

	@property
	def size(self) -> int:
		return int(self.data.size)

	def item(self) -> float:
		return float(self.data)

	def numpy(self) -> np.ndarray:
		return self.data

	def detach(self) -> "Tensor":
		return Tensor(self.data)

	def zero_grad(self) -> None:
		self.grad = None

	def __repr__(self) -> str:
		return f"Tensor(shape={self.shape}, requires_grad={self.requires_grad})"

	def backward(self, grad: np.ndarray | None = None) -> None:
		"""Back-propagates from this tensor (a scalar unless `grad` is given)."""
		if grad is None:
			if self.data.size != 1:
				raise ContractViolation(f"backward() without a gradient needs a scalar, got shape {self.shape}")
			grad = np.ones_like(self.data)

		order: list[Tensor] = []
		seen: set[int] = set()
		stack: list[tuple[Tensor, bool]] = [(self, False)]
		while stack:
			node, expanded = stack.pop()
			if expanded:
				order.append(node)
				continue
			if id(node) in seen:
				continue
			seen.add(id(node))
			stack.append((node, True))
			for parent in node._parents:
				if parent.requires_grad and id(parent) not in seen:
					stack.append((parent, False))

		grads: dict[int, np.ndarray] = {id(self): np.asarray(grad, dtype=np.float64)}
		for node in reversed(order):
			g = grads.pop(id(node), None)
			if g is None:
				continue
			if node._backward is None:
				node.grad = g if node.grad is None else node.grad + g
				continue
			for parent, pg in zip(node._parents, node._backward(g)):
				if pg is None or not parent.requires_grad:
					continue
				key = id(parent)
				grads[key] = pg if key not in grads else grads[key] + pg

	# Elementwise arithmetic with numpy broadcasting

	def __add__(self, other) -> "Tensor":
		other = _lift(other)
		return Tensor.from_op(
			self.data + other.data,
			(self, other),
			lambda g: (_unbroadcast(g, self.shape), _unbroadcast(g, other.shape))
		)

	__radd__ = __add__

	def __neg__(self) -> "Tensor":
		return Tensor.from_op(-self.data, (self,), lambda g: (-g,))

	def __sub__(self, other) -> "Tensor":
		return self + (-_lift(other))

	def __rsub__(self, other) -> "Tensor":
		return _lift(other) + (-self)

	def __mul__(self, other) -> "Tensor":
		other = _lift(other)
		return Tensor.from_op(
			self.data * other.data,
			(self, other),
			lambda g: (_unbroadcast(g * other.data, self.shape), _unbroadcast(g * self.data, other.shape))
		)

	__rmul__ = __mul__

	def sum(self, axis=None, keepdims: bool = False) -> "Tensor":
		def backward(g):
			if axis is not None and not keepdims:
				g = np.expand_dims(g, axis)
			return (np.broadcast_to(g, self.shape).copy(),)
		return Tensor.from_op(self.data.sum(axis=axis, keepdims=keepdims), (self,), backward)

	def mean(self, axis=None, keepdims: bool = False) -> "Tensor":
		count = self.data.size if axis is None else np.prod([self.shape[a] for a in np.atleast_1d(axis)])
		return self.sum(axis=axis, keepdims=keepdims) * (1.0 / float(count))

	def reshape(self, *shape) -> "Tensor":
		if len(shape) == 1 and isinstance(shape[0], (tuple, list)):
			shape = tuple(shape[0])
		return Tensor.from_op(self.data.reshape(shape), (self,), lambda g: (g.reshape(self.shape),))

def _lift(value) -> Tensor:
	return value if isinstance(value, Tensor) else Tensor(value)

def _unbroadcast(g: np.ndarray, shape: tuple[int, ...]) -> np.ndarray:
	"""Sums a broadcast gradient back down to `shape`."""
	while g.ndim > len(shape):
		g = g.sum(axis=0)
	for axis, extent in enumerate(shape):
		if extent == 1 and g.shape[axis] != 1:
			g = g.sum(axis=axis, keepdims=True)
	return g

def as_tensor(value) -> Tensor:
	return _lift(value)
