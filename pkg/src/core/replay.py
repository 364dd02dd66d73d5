# core/replay.py

import numpy as np

from src.core.errors import ContractViolation, NotReady
from src.networks.targets import Batch


class Transition:
	"""(s, a, r, s', terminal) as stored by the learner."""
	__slots__ = ("s", "a", "r", "s_next", "terminal")

	def __init__(self, s: np.ndarray, a: int, r: float, s_next: np.ndarray, terminal: bool):
		self.s = s
		self.a = int(a)
		self.r = float(r)
		self.s_next = s_next
		self.terminal = bool(terminal)

class ReplayBuffer:
	"""
	Fixed-capacity FIFO store of transitions, sampled uniformly with replacement.

	Encodings are binary, so states are kept as uint8 and widened back to
	float64 when a batch is drawn.
	"""

	def __init__(self, capacity: int):
		if capacity < 1:
			raise ContractViolation(f"Replay capacity must be positive, got {capacity}")
		self.capacity = capacity
		self.inserted = 0
		self._states: np.ndarray | None = None
		self._next_states: np.ndarray | None = None
		self._actions = np.zeros(capacity, dtype=np.int64)
		self._rewards = np.zeros(capacity, dtype=np.float64)
		self._terminals = np.zeros(capacity, dtype=bool)

	def __len__(self) -> int:
		return min(self.inserted, self.capacity)

	def push(self, t: Transition) -> None:
		if self._states is None:
			shape = (self.capacity,) + tuple(t.s.shape)
			self._states = np.zeros(shape, dtype=np.uint8)
			self._next_states = np.zeros(shape, dtype=np.uint8)
		if t.s.shape != self._states.shape[1:] or t.s_next.shape != self._states.shape[1:]:
			raise ContractViolation(f"Transition shape {t.s.shape} does not match buffer {self._states.shape[1:]}")
		slot = self.inserted % self.capacity
		self._states[slot] = t.s
		self._next_states[slot] = t.s_next
		self._actions[slot] = t.a
		self._rewards[slot] = t.r
		self._terminals[slot] = t.terminal
		self.inserted += 1

	def _indices(self, batch_size: int, rng: np.random.Generator) -> np.ndarray:
		if len(self) < batch_size or batch_size < 1:
			raise NotReady(f"Buffer holds {len(self)} transitions, {batch_size} requested")
		return rng.integers(0, len(self), size=batch_size)

	def sample(self, batch_size: int, rng: np.random.Generator) -> list[Transition]:
		return [
			Transition(
				self._states[i].astype(np.float64),
				self._actions[i],
				self._rewards[i],
				self._next_states[i].astype(np.float64),
				self._terminals[i],
			)
			for i in self._indices(batch_size, rng)
		]

	def sample_batch(self, batch_size: int, rng: np.random.Generator) -> Batch:
		idx = self._indices(batch_size, rng)
		return Batch(
			self._states[idx],
			self._actions[idx],
			self._rewards[idx],
			self._next_states[idx],
			self._terminals[idx],
		)

class EpsilonSchedule:
	"""Linear decay from eps_start to eps_end over decay_steps, then flat."""

	def __init__(self, eps_start: float, eps_end: float, decay_steps: int):
		if not (0.0 <= eps_end <= eps_start <= 1.0):
			raise ContractViolation(f"Invalid epsilon range [{eps_end}, {eps_start}]")
		self.eps_start = eps_start
		self.eps_end = eps_end
		self.decay_steps = decay_steps

	def __call__(self, t: int) -> float:
		if self.decay_steps <= 0:
			return self.eps_end
		fraction = min(1.0, t / self.decay_steps)
		return self.eps_start + (self.eps_end - self.eps_start) * fraction
