# data/metrics.py
"""
Training metrics, appended as CSV rows.

## Columns
	step: environment steps taken so far
	loss: mean training loss since the previous row (empty before training starts)
	win_rate: learner wins / evaluation games
	mean_score: learner's mean final cumulative reward
	elo: learner rating after the evaluation block
	epsilon: exploration rate at `step`
"""

from pathlib import Path

import pandas as pd
from pydantic import BaseModel

from src.config.settings import settings

METRICS_COLUMNS = list(settings.METRICS_HEADER)

class MetricsRow(BaseModel):
	step: int
	loss: float | None
	win_rate: float
	mean_score: float
	elo: float
	epsilon: float

class MetricsLog:
	"""A CSV file that gains one row per evaluation block."""

	def __init__(self, path: str | Path):
		self.path = Path(path)
		self.path.parent.mkdir(parents=True, exist_ok=True)
		pd.DataFrame(columns=METRICS_COLUMNS).to_csv(self.path, index=False)
		self.rows: list[MetricsRow] = []

	def append(self, row: MetricsRow) -> None:
		self.rows.append(row)
		pd.DataFrame([row.model_dump()], columns=METRICS_COLUMNS).to_csv(
			self.path, mode="a", header=False, index=False, float_format="%.10g"
		)

	def frame(self) -> pd.DataFrame:
		return pd.read_csv(self.path)
