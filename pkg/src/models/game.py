# models/game.py

from pydantic import BaseModel, ConfigDict, Field

from src.config.settings import settings


class GameRules(BaseModel):
	"""Rule parameters shared by every state of one game."""
	model_config = ConfigDict(frozen=True)

	num_geese: int = Field(default=settings.MAX_GEESE, ge=1, le=settings.MAX_GEESE)
	food_count: int = Field(default=settings.FOOD_COUNT, ge=1)
	hunger_rate: int = Field(default=settings.HUNGER_RATE, ge=1)
	max_steps: int = Field(default=settings.MAX_STEPS, ge=1)

class ReplayLine(BaseModel):
	"""One line of an exported replay file."""
	step: int
	geese: list[list[int]]
	food: list[int]
	actions: list[str]
	rewards: list[int]
