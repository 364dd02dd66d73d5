# nn/gradcheck.py

from collections.abc import Callable, Sequence

import numpy as np

from src.nn.tensor import Tensor


def grad_check(
	f: Callable[[], Tensor],
	inputs: Sequence[Tensor],
	*,
	h: float = 1e-5,
	samples: int | None = None,
	seed: int = 0
) -> float:
	"""
	Compares reverse-mode gradients of the scalar `f()` with central differences.

	`f` must rebuild its graph from `inputs` on every call. With `samples`
	set, only that many randomly chosen coordinates of each input are probed.
	Gradients smaller than 1e-6·max(1, |f|) are compared on that absolute
	scale, since central differences cannot resolve them any better.

	Returns the maximum relative error over every probed coordinate.
	"""
	for tensor in inputs:
		tensor.data = np.ascontiguousarray(tensor.data)
		tensor.zero_grad()
	out = f()
	out.backward()
	analytic = [
		np.zeros_like(t.data) if t.grad is None else t.grad.copy()
		for t in inputs
	]
	floor = 1e-6 * max(1.0, abs(out.item()))

	rng = np.random.default_rng(seed)
	worst = 0.0
	for tensor, grad in zip(inputs, analytic):
		flat = tensor.data.reshape(-1)
		if samples is None or samples >= flat.size:
			coords = range(flat.size)
		else:
			coords = rng.choice(flat.size, size=samples, replace=False)
		for k in coords:
			original = flat[k]
			flat[k] = original + h
			plus = f().item()
			flat[k] = original - h
			minus = f().item()
			flat[k] = original
			numeric = (plus - minus) / (2.0 * h)
			exact = grad.reshape(-1)[k]
			scale = max(abs(numeric), abs(exact), floor)
			worst = max(worst, abs(numeric - exact) / scale)
	return worst
