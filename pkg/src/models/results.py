# models/results.py

from pydantic import BaseModel, Field


class MatchResult(BaseModel):
	"""Outcome of one game: final cumulative rewards, competition ranking and winner."""
	names: list[str]
	scores: list[int]
	ranking: list[int]
	winner: int | None = None
	seed: int = 0
	steps: int = 0

	@classmethod
	def from_scores(cls, names: list[str], scores: list[int], **kwargs) -> "MatchResult":
		"""Ranks by score descending; tied geese share the better rank."""
		ranking = [1 + sum(1 for other in scores if other > score) for score in scores]
		leaders = [i for i, rank in enumerate(ranking) if rank == 1]
		winner = leaders[0] if len(leaders) == 1 else None
		return cls(names=names, scores=scores, ranking=ranking, winner=winner, **kwargs)

class AgentSummary(BaseModel):
	name: str
	games: int
	wins: int
	win_rate: float
	ci_low: float
	ci_high: float
	mean_score: float
	max_score: int
	elo: float | None = None

class TournamentSummary(BaseModel):
	agents: list[AgentSummary]
	results: list[MatchResult] = Field(default_factory=list)

	def agent(self, name: str) -> AgentSummary:
		for summary in self.agents:
			if summary.name == name:
				return summary
		raise KeyError(name)
