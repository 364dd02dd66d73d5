# core/policies.py
"""
Behaviour policies: the rule-based greedy agent, uniform random play,
epsilon-greedy action selection and greedy play from a Q-network.
"""

from abc import ABC, abstractmethod
from collections.abc import Sequence

import numpy as np

from src.core.encoding import encode
from src.core.env import GameState, legal_actions
from src.core.errors import ConfigurationError
from src.core.geometry import DISTANCES, NEIGHBOURS, Action
from src.models.kinds import EncoderKind, ExploreSource
from src.networks.qnetwork import QNetwork, default_encoder


def greedy_agent(s: GameState, g: int) -> Action:
	"""
	Heads for the nearest food among the moves that do not land on a body cell
	still present after tails move; ties go to the first of N, E, S, W.
	"""
	legal = legal_actions(s, g)
	blocked = {cell for goose in s.geese for cell in goose.body[:-1]}
	head = s.geese[g].head
	best: Action | None = None
	best_distance = None
	for action in legal:
		target = NEIGHBOURS[head][action]
		if target in blocked:
			continue
		distance = int(DISTANCES[target, s.food].min()) if s.food else 0
		if best_distance is None or distance < best_distance:
			best, best_distance = action, distance
	return best if best is not None else legal[0]

def masked_argmax(q: np.ndarray, legal: Sequence[Action]) -> Action:
	"""Highest-valued legal action; illegal actions count as -inf."""
	masked = np.full(q.shape[-1], -np.inf)
	indices = [int(a) for a in legal]
	masked[indices] = q.reshape(-1)[indices]
	return Action(int(np.argmax(masked)))

def epsilon_greedy(
	q: QNetwork,
	s: np.ndarray,
	legal: Sequence[Action],
	eps: float,
	rng: np.random.Generator,
	explore_source: ExploreSource | str = ExploreSource.RANDOM,
	*,
	game: GameState | None = None,
	goose: int = 0
) -> Action:
	"""
	Greedy masked action with probability 1-eps, otherwise an exploratory one:
	uniform over legal moves, or the greedy agent's move for `rule-based`.
	"""
	legal = tuple(legal)
	if rng.random() < eps:
		if ExploreSource(explore_source) is ExploreSource.RULE_BASED:
			if game is None:
				raise ConfigurationError("Rule-based exploration needs the game state")
			return greedy_agent(game, goose)
		return legal[int(rng.integers(len(legal)))]
	return masked_argmax(q.q_values(s)[0], legal)

class Policy(ABC):
	"""Something that picks an action for goose `g` in state `s`."""
	name: str = "policy"

	def reset(self, seed: int) -> None:
		"""Called before every game with a game-specific seed."""

	@abstractmethod
	def act(self, s: GameState, prev: GameState | None, g: int) -> Action:
		...

class GreedyPolicy(Policy):
	name = "greedy"

	def act(self, s: GameState, prev: GameState | None, g: int) -> Action:
		return greedy_agent(s, g)

class RandomPolicy(Policy):
	name = "random"

	def __init__(self, seed: int = 0):
		self.rng = np.random.default_rng(seed)

	def reset(self, seed: int) -> None:
		self.rng = np.random.default_rng(seed)

	def act(self, s: GameState, prev: GameState | None, g: int) -> Action:
		legal = legal_actions(s, g)
		return legal[int(self.rng.integers(len(legal)))]

class QPolicy(Policy):
	"""Greedy, legality-masked play from a network in inference mode."""

	def __init__(
		self,
		network: QNetwork,
		encoder: EncoderKind | str | None = None,
		center: tuple[int, int] | None = None,
		name: str = "dqn"
	):
		self.network = network
		self.encoder = default_encoder(network.kind) if encoder is None else EncoderKind(encoder)
		self.center = center
		self.name = name

	def act(self, s: GameState, prev: GameState | None, g: int) -> Action:
		t = encode(self.encoder, s, prev, g, center=self.center)
		return masked_argmax(self.network.q_values(t)[0], legal_actions(s, g))

def make_policy(spec: str, *, seed: int = 0) -> Policy:
	"""Resolves `greedy`, `random` or a checkpoint path into a policy."""
	if spec == "greedy":
		return GreedyPolicy()
	if spec == "random":
		return RandomPolicy(seed)
	from src.data.checkpoints import load_policy
	return load_policy(spec)
