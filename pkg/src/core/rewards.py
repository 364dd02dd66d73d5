# core/rewards.py
"""
Per-step reward shapers.

	vanilla     change in the environment's cumulative reward (step + length)
	dqn         event reward: eat, death, win, step milestone, survival
	manhattan   death penalty, eat bonus and a food-approach term
"""

from src.core.env import GameState
from src.core.errors import ConfigurationError
from src.core.geometry import nearest_distance
from src.models.config import ShaperParams
from src.models.kinds import ShaperKind

class StepContext:
	"""A state, its successor and the goose whose reward is being shaped."""
	__slots__ = ("prev", "next", "player", "env_reward_delta")

	def __init__(self, prev: GameState, next: GameState, player: int, env_reward_delta: int | None = None):
		self.prev = prev
		self.next = next
		self.player = player
		if env_reward_delta is None:
			env_reward_delta = next.rewards[player] - prev.rewards[player]
		self.env_reward_delta = env_reward_delta

	@property
	def was_alive(self) -> bool:
		return bool(self.prev.geese[self.player].body)

	@property
	def is_alive(self) -> bool:
		return bool(self.next.geese[self.player].body)

	@property
	def died(self) -> bool:
		return self.was_alive and not self.is_alive

	@property
	def ate(self) -> bool:
		return self.is_alive and self.next.geese[self.player].length > self.prev.geese[self.player].length

	def enemies_alive(self, s: GameState) -> int:
		return sum(1 for g, goose in enumerate(s.geese) if g != self.player and goose.body)

def vanilla_delta(ctx: StepContext, params: ShaperParams | None = None) -> float:
	return float(ctx.env_reward_delta)

def dqn_training_reward(ctx: StepContext, params: ShaperParams) -> float:
	"""
	Sum of the events that fired this step. The milestone-or-survival term is
	added on every step the goose started alive, the step it dies on included.
	"""
	if not ctx.was_alive:
		return 0.0
	reward = 0.0
	if ctx.died:
		reward -= params.death_penalty
	if ctx.ate:
		reward += params.eat_bonus
	if ctx.is_alive and ctx.enemies_alive(ctx.prev) > 0 and ctx.enemies_alive(ctx.next) == 0:
		reward += params.win_bonus
	if ctx.next.step > 0 and ctx.next.step % params.milestone_period == 0:
		reward += params.milestone_bonus
	else:
		reward += params.survive_bonus
	return reward

def manhattan_reward(ctx: StepContext, params: ShaperParams) -> float:
	if not ctx.was_alive:
		return 0.0
	if ctx.died:
		return -params.death_penalty
	reward = 0.0
	if ctx.ate:
		reward += params.approach_eat_bonus
	before = nearest_distance(ctx.prev.geese[ctx.player].head, ctx.prev.food)
	after = nearest_distance(ctx.next.geese[ctx.player].head, ctx.next.food)
	closer = after > before if params.manhattan_inverted_approach else after < before
	if closer:
		reward += (params.max_food_distance - after) ** 2
	else:
		reward -= params.max_food_distance - after
	return float(reward)

_SHAPERS = {
	ShaperKind.VANILLA_DELTA: vanilla_delta,
	ShaperKind.DQN_TRAINING: dqn_training_reward,
	ShaperKind.MANHATTAN: manhattan_reward,
}

def shape(kind: ShaperKind | str, ctx: StepContext, params: ShaperParams | None = None) -> float:
	"""Dispatches to the shaper named by `kind`."""
	try:
		shaper = _SHAPERS[ShaperKind(kind)]
	except ValueError as e:
		raise ConfigurationError(f"Unknown reward shaper '{kind}'") from e
	return shaper(ctx, params if params is not None else ShaperParams())
