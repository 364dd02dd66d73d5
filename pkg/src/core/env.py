# core/env.py
"""
Deterministic Hungry Geese simulator.

A game always carries four goose records; geese that are not playing (or have
died) have an empty body. All randomness comes from the generator stored on
the state, so a trajectory is a pure function of (seed, actions).

## Step resolution
	1. every live goose moves its head one cell (a reversal kills it outright)
	2. a head landing on food grows the goose, otherwise the tail is popped
	3. heads sharing a cell with any remaining body cell die (head-to-head
	   collisions kill every goose involved); dead bodies leave the board
	4. every `hunger_rate` steps each survivor loses its tail cell
	5. food is topped up to `food_count` on uniformly drawn free cells
	6. cumulative reward of a live goose = step + length, frozen at death
"""

import time
from collections.abc import Sequence

import numpy as np

from src.core.errors import ConfigurationError, ContractViolation
from src.core.geometry import (ACTIONS, LEGAL_AFTER, NEIGHBOURS, NUM_CELLS,
                                OPPOSITE, Action)
from src.models.game import GameRules


class Goose:
	"""A goose body (head first) and the last action it took."""
	__slots__ = ("body", "last_action")

	def __init__(self, body: list[int] | None = None, last_action: Action | None = None):
		self.body: list[int] = body if body is not None else []
		self.last_action = last_action

	@property
	def alive(self) -> bool:
		return bool(self.body)

	@property
	def length(self) -> int:
		return len(self.body)

	@property
	def head(self) -> int:
		return self.body[0]

	@property
	def tail(self) -> int:
		return self.body[-1]

	def __repr__(self) -> str:
		return f"Goose(body={self.body}, last_action={self.last_action!r})"

class GameState:
	"""
	Full simulator snapshot.

	States are treated as values: `step()` never mutates its input and the
	generator is cloned before it is advanced.
	"""
	__slots__ = ("step", "geese", "food", "rewards", "rng", "rules")

	def __init__(
		self,
		step: int,
		geese: list[Goose],
		food: list[int],
		rewards: list[int],
		rng: np.random.Generator,
		rules: GameRules
	):
		self.step = step
		self.geese = geese
		self.food = food
		self.rewards = rewards
		self.rng = rng
		self.rules = rules

	@property
	def alive_count(self) -> int:
		return len([goose for goose in self.geese if goose.body])

	def occupied(self) -> set[int]:
		return {cell for goose in self.geese for cell in goose.body}

	def same_board(self, other: "GameState") -> bool:
		"""Compares everything except the generator."""
		return (
			self.step == other.step
			and self.food == other.food
			and self.rewards == other.rewards
			and [g.body for g in self.geese] == [g.body for g in other.geese]
			and [g.last_action for g in self.geese] == [g.last_action for g in other.geese]
		)

class StepOutcome:
	"""Result of one simultaneous move."""
	__slots__ = ("next", "env_reward", "newly_dead", "done")

	def __init__(self, next: GameState, env_reward: list[int], newly_dead: list[bool], done: bool):
		self.next = next
		self.env_reward = env_reward
		self.newly_dead = newly_dead
		self.done = done

def new_game(
	seed: int,
	num_geese: int = 4,
	food_count: int = 2,
	*,
	hunger_rate: int | None = None,
	max_steps: int | None = None
) -> GameState:
	"""Places single-cell geese and food on distinct uniformly drawn cells."""
	if not 1 <= num_geese <= 4:
		raise ConfigurationError(f"num_geese must be in [1, 4], got {num_geese}")
	if food_count < 1:
		raise ConfigurationError(f"food_count must be at least 1, got {food_count}")
	if num_geese + food_count > NUM_CELLS:
		raise ConfigurationError(
			f"{num_geese} geese and {food_count} food items do not fit on {NUM_CELLS} cells"
		)
	extra = {}
	if hunger_rate is not None:
		extra["hunger_rate"] = hunger_rate
	if max_steps is not None:
		extra["max_steps"] = max_steps
	rules = GameRules(num_geese=num_geese, food_count=food_count, **extra)

	rng = np.random.default_rng(seed)
	heads = rng.choice(NUM_CELLS, size=num_geese, replace=False)
	geese = [Goose([int(h)]) for h in heads]
	geese += [Goose() for _ in range(4 - num_geese)]

	taken = {int(h) for h in heads}
	free = [c for c in range(NUM_CELLS) if c not in taken]
	picks = rng.choice(len(free), size=food_count, replace=False)
	food = sorted(free[int(p)] for p in picks)
	return GameState(0, geese, food, [0, 0, 0, 0], rng, rules)

def legal_actions(s: GameState, g: int) -> tuple[Action, ...]:
	"""All moves except the reversal of the goose's previous move."""
	goose = s.geese[g]
	if not goose.body:
		raise ContractViolation(f"Goose {g} is dead and has no legal actions")
	if goose.last_action is None:
		return ACTIONS
	return LEGAL_AFTER[goose.last_action]

def _finished(step_count: int, alive: int, rules: GameRules) -> bool:
	if step_count >= rules.max_steps or alive == 0:
		return True
	return rules.num_geese > 1 and alive <= 1

def is_done(s: GameState) -> bool:
	return _finished(s.step, s.alive_count, s.rules)

def clone_rng(rng: np.random.Generator) -> np.random.Generator:
	"""An independent generator in exactly the state of `rng`."""
	bit_generator = type(rng.bit_generator)(0)
	bit_generator.state = rng.bit_generator.state
	return np.random.Generator(bit_generator)

def step(s: GameState, actions: Sequence[Action | None]) -> StepOutcome:
	"""Resolves one simultaneous move of every live goose."""
	if len(actions) != 4:
		raise ContractViolation(f"Expected 4 action slots, got {len(actions)}")

	new_step = s.step + 1
	food = s.food
	bodies: list[list[int]] = []
	moves: list[Action | None] = []
	eaten: list[int] = []

	for g, goose in enumerate(s.geese):
		action = actions[g]
		body = goose.body
		if not body:
			if action is not None:
				raise ContractViolation(f"Action supplied for dead goose {g}")
			bodies.append(body)
			moves.append(None)
			continue
		if action is None:
			raise ContractViolation(f"Missing action for live goose {g}")
		if not 0 <= action <= 3:
			raise ContractViolation(f"Goose {g} got unknown action {action!r}")
		action = ACTIONS[action]
		moves.append(action)
		last = goose.last_action
		if last is not None and action is OPPOSITE[last]:
			bodies.append([])
			continue
		head = NEIGHBOURS[body[0]][action]
		if head in food:
			eaten.append(head)
			bodies.append([head, *body])
		else:
			bodies.append([head, *body[:-1]])

	cells = [cell for body in bodies for cell in body]
	for g, body in enumerate(bodies):
		if body and cells.count(body[0]) > 1:
			bodies[g] = []

	rules = s.rules
	if new_step % rules.hunger_rate == 0:
		for body in bodies:
			if body:
				body.pop()

	rng = s.rng
	if eaten:
		food = [f for f in food if f not in eaten]
	needed = rules.food_count - len(food)
	if needed > 0:
		blocked = {cell for body in bodies for cell in body}
		blocked.update(food)
		free = [c for c in range(NUM_CELLS) if c not in blocked]
		if free:
			rng = clone_rng(rng)
			picks = rng.choice(len(free), size=min(needed, len(free)), replace=False)
			food = sorted([*food, *(free[int(p)] for p in picks)])

	geese = []
	rewards = []
	newly_dead = []
	previous = s.rewards
	alive = 0
	for g, body in enumerate(bodies):
		if body:
			alive += 1
			geese.append(Goose(body, moves[g]))
			rewards.append(new_step + len(body))
			newly_dead.append(False)
		else:
			geese.append(Goose())
			rewards.append(previous[g])
			newly_dead.append(bool(s.geese[g].body))

	nxt = GameState(new_step, geese, list(food), rewards, rng, rules)
	return StepOutcome(nxt, list(rewards), newly_dead, _finished(new_step, alive, rules))

def _uniforms(rng: np.random.Generator, block: int = 1 << 14):
	while True:
		yield from rng.random(block).tolist()

def benchmark(steps: int, seed: int = 0) -> tuple[int, int, float]:
	"""
	Plays uniformly random legal moves in fresh four-goose games until `steps`
	steps have been taken. Returns (steps, games, seconds).
	"""
	if steps < 1:
		raise ContractViolation(f"steps must be at least 1, got {steps}")
	start = time.perf_counter()
	rng = np.random.default_rng(seed)
	draws = _uniforms(rng)
	done = 0
	games = 0
	while done < steps:
		state = new_game(int(rng.integers(2**31)))
		games += 1
		finished = is_done(state)
		while done < steps and not finished:
			actions: list[Action | None] = [None, None, None, None]
			for g, goose in enumerate(state.geese):
				if goose.body:
					last = goose.last_action
					legal = ACTIONS if last is None else LEGAL_AFTER[last]
					actions[g] = legal[int(next(draws) * len(legal))]
			outcome = step(state, actions)
			state, finished = outcome.next, outcome.done
			done += 1
	return done, games, time.perf_counter() - start
