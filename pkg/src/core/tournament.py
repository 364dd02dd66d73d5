# core/tournament.py

from collections.abc import Sequence

import numpy as np
from scipy.stats import binomtest

from src.core.elo import EloTable, elo_update
from src.core.env import GameState, is_done, new_game, step
from src.core.errors import ContractViolation
from src.core.geometry import Action
from src.core.policies import Policy
from src.data.replays import replay_line
from src.models.game import GameRules, ReplayLine
from src.models.results import AgentSummary, MatchResult, TournamentSummary
from src.utils.logger import logger
from src.utils.seeding import derive_seeds


def seat_names(policies: Sequence[Policy]) -> list[str]:
	"""Policy names made unique per seat (`greedy`, `greedy#2`, ...)."""
	names: list[str] = []
	for policy in policies:
		name = policy.name
		count = sum(1 for n in names if n == name or n.startswith(f"{name}#"))
		names.append(name if count == 0 else f"{name}#{count + 1}")
	return names

def play_match(
	policies: Sequence[Policy],
	seed: int,
	rules: GameRules | None = None,
	*,
	names: list[str] | None = None,
	record: bool = False
) -> tuple[MatchResult, list[ReplayLine]]:
	"""Plays one game to the end; goose i is driven by policies[i]."""
	rules = rules or GameRules(num_geese=len(policies))
	if len(policies) != rules.num_geese:
		raise ContractViolation(f"{len(policies)} policies for {rules.num_geese} geese")
	game_seed, *policy_seeds = derive_seeds(seed, 1 + len(policies))
	for policy, policy_seed in zip(policies, policy_seeds):
		policy.reset(policy_seed)

	state = new_game(
		game_seed,
		rules.num_geese,
		rules.food_count,
		hunger_rate=rules.hunger_rate,
		max_steps=rules.max_steps
	)
	prev: GameState | None = None
	lines = [replay_line(state)] if record else []
	while not is_done(state):
		actions: list[Action | None] = [None] * 4
		for g, policy in enumerate(policies):
			if state.geese[g].body:
				actions[g] = policy.act(state, prev, g)
		outcome = step(state, actions)
		prev, state = state, outcome.next
		if record:
			lines.append(replay_line(state, actions))

	names = names or seat_names(policies)
	scores = state.rewards[:len(policies)]
	return MatchResult.from_scores(names, scores, seed=seed, steps=state.step), lines

def tournament(
	agents: Sequence[Policy],
	n_games: int,
	seed: int,
	rules: GameRules | None = None,
	*,
	elo: EloTable | None = None
) -> TournamentSummary:
	"""
	Plays `n_games` seeded games between the same seats.

	Game seeds are split from `seed`, so the outcome is reproducible for
	deterministic policies. When an Elo table is given it is updated game by game.
	"""
	if n_games < 1:
		raise ContractViolation(f"n_games must be at least 1, got {n_games}")
	names = seat_names(agents)
	if elo is not None:
		for name in names:
			elo.add(name)

	results = []
	for game_seed in derive_seeds(seed, n_games):
		result, _ = play_match(agents, game_seed, rules, names=names)
		results.append(result)
		if elo is not None:
			elo_update(elo, result)

	summaries = []
	for seat, name in enumerate(names):
		wins = sum(1 for r in results if r.winner == seat)
		scores = np.array([r.scores[seat] for r in results])
		interval = binomtest(wins, n_games).proportion_ci(confidence_level=0.95, method="exact")
		summaries.append(AgentSummary(
			name=name,
			games=n_games,
			wins=wins,
			win_rate=wins / n_games,
			ci_low=float(interval.low),
			ci_high=float(interval.high),
			mean_score=float(scores.mean()),
			max_score=int(scores.max()),
			elo=elo[name] if elo is not None else None,
		))
	logger(tag="tournament").info(
		f"{n_games} games: " + ", ".join(f"{s.name}={s.win_rate:.3f}" for s in summaries)
	)
	return TournamentSummary(agents=summaries, results=results)
