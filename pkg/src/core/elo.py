# core/elo.py
"""
Elo ratings for multi-goose games.

A game is split into one pairwise outcome per pair of geese, decided by their
ranks (better rank wins, equal rank draws). All pairwise deltas are computed
from the ratings before the game and applied together, so every update is
zero-sum and independent of pair order.
"""

from itertools import combinations

from src.config.settings import settings
from src.core.errors import ContractViolation
from src.models.results import MatchResult


def expected_score(rating_a: float, rating_b: float) -> float:
	"""Logistic probability that a beats b."""
	return 1.0 / (1.0 + 10.0 ** ((rating_b - rating_a) / 400.0))

class EloTable:
	"""Ratings and game counts per agent name."""

	def __init__(self, k: float = settings.ELO_K, base: float = settings.ELO_BASE):
		self.k = k
		self.base = base
		self.ratings: dict[str, float] = {}
		self.games: dict[str, int] = {}

	def add(self, name: str, rating: float | None = None) -> None:
		if name not in self.ratings:
			self.ratings[name] = self.base if rating is None else rating
			self.games[name] = 0

	def __getitem__(self, name: str) -> float:
		return self.ratings[name]

	def __contains__(self, name: str) -> bool:
		return name in self.ratings

def elo_update(table: EloTable, result: MatchResult) -> EloTable:
	"""Applies one game's pairwise outcomes to `table` (in place) and returns it."""
	unknown = [name for name in result.names if name not in table]
	if unknown:
		raise ContractViolation(f"Unknown agents in Elo update: {unknown}")

	deltas = dict.fromkeys(result.names, 0.0)
	for i, j in combinations(range(len(result.names)), 2):
		a, b = result.names[i], result.names[j]
		if result.ranking[i] < result.ranking[j]:
			actual = 1.0
		elif result.ranking[i] > result.ranking[j]:
			actual = 0.0
		else:
			actual = 0.5
		change = table.k * (actual - expected_score(table.ratings[a], table.ratings[b]))
		deltas[a] += change
		deltas[b] -= change

	for name, delta in deltas.items():
		table.ratings[name] += delta
		table.games[name] += 1
	return table
