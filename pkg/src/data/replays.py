# data/replays.py
"""
Replay export: one game per file, one JSON object per line.

## Fields
	step: step counter of the state
	geese: four bodies, head first (empty when dead)
	food: food cells
	actions: moves that led into this state ("NONE" for step 0 and dead geese)
	rewards: cumulative environment rewards
"""

from collections.abc import Iterable, Sequence
from pathlib import Path

from src.core.env import GameState
from src.core.geometry import Action
from src.models.game import ReplayLine


def replay_line(s: GameState, actions: Sequence[Action | None] | None = None) -> ReplayLine:
	actions = actions if actions is not None else [None] * len(s.geese)
	return ReplayLine(
		step=s.step,
		geese=[list(goose.body) for goose in s.geese],
		food=list(s.food),
		actions=[a.name if a is not None else "NONE" for a in actions],
		rewards=list(s.rewards),
	)

def write_replay(path: str | Path, lines: Iterable[ReplayLine]) -> Path:
	path = Path(path)
	path.parent.mkdir(parents=True, exist_ok=True)
	with open(path, "w", encoding="utf-8") as f:
		for line in lines:
			f.write(line.model_dump_json() + "\n")
	return path

def read_replay(path: str | Path) -> list[ReplayLine]:
	with open(path, "r", encoding="utf-8") as f:
		return [ReplayLine.model_validate_json(raw) for raw in f if raw.strip()]
