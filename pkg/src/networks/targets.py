# networks/targets.py
"""
TD targets, the online/target network pair and one gradient step.

Targets are computed on plain arrays from inference-mode forward passes, so
no gradient ever reaches the target network.
"""

from typing import Protocol

import numpy as np

from src.core.errors import ConfigurationError, ContractViolation
from src.models.kinds import LossKind, ModelKind
from src.networks.qnetwork import QNetwork
from src.nn.functional import gather_actions, huber_loss, mse_loss
from src.nn.optim import Optimizer
from src.nn.tensor import Tensor


class QFunction(Protocol):
	def q_values(self, states: np.ndarray) -> np.ndarray: ...

class Batch:
	"""Column-wise view of sampled transitions."""
	__slots__ = ("states", "actions", "rewards", "next_states", "terminals")

	def __init__(self, states, actions, rewards, next_states, terminals):
		self.states = np.asarray(states, dtype=np.float64)
		self.actions = np.asarray(actions, dtype=np.int64)
		self.rewards = np.asarray(rewards, dtype=np.float64)
		self.next_states = np.asarray(next_states, dtype=np.float64)
		self.terminals = np.asarray(terminals, dtype=bool)

	def __len__(self) -> int:
		return int(self.actions.shape[0])

	@classmethod
	def from_transitions(cls, transitions) -> "Batch":
		return cls(
			np.stack([t.s for t in transitions]),
			[int(t.a) for t in transitions],
			[t.r for t in transitions],
			np.stack([t.s_next for t in transitions]),
			[t.terminal for t in transitions],
		)

def td_target_vanilla(batch: Batch, net: QFunction, gamma: float) -> np.ndarray:
	"""r + γ·max_a' Q(s', a'); r alone for terminal transitions."""
	if not 0.0 <= gamma <= 1.0:
		raise ConfigurationError(f"gamma must be in [0, 1], got {gamma}")
	bootstrap = net.q_values(batch.next_states).max(axis=1)
	return batch.rewards + gamma * np.where(batch.terminals, 0.0, bootstrap)

def td_target_double(
	batch: Batch,
	online: QFunction,
	target: QFunction,
	gamma: float,
	*,
	select_on_next: bool = True
) -> np.ndarray:
	"""
	r + γ·Q_target(s', argmax_a Q_online(·, a)).

	The argmax is taken on s' unless `select_on_next` is False, in which case
	it is taken on s.
	"""
	if not 0.0 <= gamma <= 1.0:
		raise ConfigurationError(f"gamma must be in [0, 1], got {gamma}")
	selector = batch.next_states if select_on_next else batch.states
	chosen = online.q_values(selector).argmax(axis=1)
	evaluated = target.q_values(batch.next_states)[np.arange(len(batch)), chosen]
	return batch.rewards + gamma * np.where(batch.terminals, 0.0, evaluated)

class TargetPair:
	"""Gradient-updated online network and its periodically synchronised frozen copy."""

	def __init__(self, online: QNetwork, sync_period: int, target: QNetwork | None = None):
		if sync_period < 1:
			raise ConfigurationError(f"sync_period must be at least 1, got {sync_period}")
		self.online = online
		self.target = target if target is not None else online.clone()
		if self.target.architecture() != online.architecture():
			raise ContractViolation("Online and target networks must share one architecture")
		self.sync_period = sync_period
		self.steps_since_sync = 0
		self.syncs = 0

	def sync(self) -> None:
		self.target.copy_from(self.online)
		self.steps_since_sync = 0
		self.syncs += 1

def resolve_loss(loss: LossKind | str, kind: ModelKind) -> LossKind:
	"""`auto` means MSE for the vanilla network and Huber otherwise."""
	try:
		loss = LossKind(loss)
	except ValueError as e:
		raise ConfigurationError(f"Unknown loss '{loss}'") from e
	if loss is LossKind.AUTO:
		return LossKind.MSE if kind is ModelKind.VANILLA else LossKind.HUBER
	return loss

def compute_targets(
	pair: TargetPair,
	batch: Batch,
	gamma: float,
	*,
	select_on_next: bool = True,
	vanilla_uses_target: bool = False
) -> np.ndarray:
	"""
	TD targets for `batch`. The vanilla network bootstraps from itself unless
	`vanilla_uses_target` is set; double and dueling networks use the pair.
	"""
	if pair.online.kind is ModelKind.VANILLA:
		bootstrap = pair.target if vanilla_uses_target else pair.online
		return td_target_vanilla(batch, bootstrap, gamma)
	return td_target_double(batch, pair.online, pair.target, gamma, select_on_next=select_on_next)

def train_step(
	pair: TargetPair,
	batch: Batch,
	loss: LossKind | str,
	optim: Optimizer,
	*,
	gamma: float,
	huber_delta: float = 1.0,
	select_on_next: bool = True,
	vanilla_uses_target: bool = False
) -> float:
	"""One optimiser step of the online network on `batch`; returns the loss."""
	if len(batch) == 0:
		raise ContractViolation("train_step needs a non-empty batch")
	loss = resolve_loss(loss, pair.online.kind)
	targets = compute_targets(
		pair, batch, gamma, select_on_next=select_on_next, vanilla_uses_target=vanilla_uses_target
	)

	optim.zero_grad()
	q = pair.online.forward(Tensor(batch.states), training=True)
	q_taken = gather_actions(q, batch.actions)
	if loss is LossKind.HUBER:
		value = huber_loss(q_taken, targets, huber_delta)
	else:
		value = mse_loss(q_taken, targets)
	value.backward()
	optim.step()

	pair.steps_since_sync += 1
	if pair.steps_since_sync >= pair.sync_period:
		pair.sync()
	return value.item()
