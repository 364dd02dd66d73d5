# models/config.py

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from src.config.settings import settings
from src.core.geometry import MAX_DISTANCE
from src.models.kinds import (EncoderKind, ExploreSource, LossKind, ModelKind,
                              OptimizerKind, ShaperKind)

ROSTER_NAMES = ("greedy", "random", "self")

class ShaperParams(BaseModel):
	"""Constants of the reward shapers."""
	model_config = ConfigDict(frozen=True)

	eat_bonus: float = Field(default=50.0, ge=0)
	death_penalty: float = Field(default=1000.0, ge=0)
	win_bonus: float = Field(default=1000.0, ge=0)
	milestone_bonus: float = Field(default=50.0, ge=0)
	milestone_period: int = Field(default=100, ge=1)
	survive_bonus: float = Field(default=10.0, ge=0)
	approach_eat_bonus: float = Field(default=500.0, ge=0)
	max_food_distance: int = Field(default=MAX_DISTANCE, ge=1)
	manhattan_inverted_approach: bool = False

class TrainConfig(BaseModel):
	"""
	Every tunable of a training run.

	Read from a flat `key=value` file; keys are exactly the field names.
	`encoder_kind`, `warmup`, `eps_decay_steps`, `opponents` and `loss_kind=auto` are
	resolved from the other fields when left unset.
	"""
	model_config = ConfigDict(extra="forbid", use_enum_values=False)

	# Model
	model_kind: ModelKind = ModelKind.VANILLA
	encoder_kind: EncoderKind | None = None
	center_player: bool = False
	center_row: int = Field(default=settings.CENTER_ROW, ge=0, lt=settings.ROWS)
	center_col: int = Field(default=settings.CENTER_COL, ge=0, lt=settings.COLUMNS)
	leaky_slope: float = Field(default=settings.LEAKY_SLOPE, ge=0)
	loss_kind: LossKind = LossKind.AUTO
	huber_delta: float = Field(default=settings.HUBER_DELTA, gt=0)
	double_select_on_next: bool = True
	vanilla_uses_target: bool = False

	# Reward shaping
	shaper_kind: ShaperKind = ShaperKind.DQN_TRAINING
	eat_bonus: float = Field(default=50.0, ge=0)
	death_penalty: float = Field(default=1000.0, ge=0)
	win_bonus: float = Field(default=1000.0, ge=0)
	milestone_bonus: float = Field(default=50.0, ge=0)
	milestone_period: int = Field(default=100, ge=1)
	survive_bonus: float = Field(default=10.0, ge=0)
	approach_eat_bonus: float = Field(default=500.0, ge=0)
	max_food_distance: int = Field(default=MAX_DISTANCE, ge=1)
	manhattan_inverted_approach: bool = False

	# Optimisation
	gamma: float = Field(default=settings.GAMMA, ge=0, le=1)
	lr: float = Field(default=settings.LEARNING_RATE, gt=0)
	optimizer: OptimizerKind = OptimizerKind.ADAM
	batch_size: int = Field(default=settings.BATCH_SIZE, ge=1)
	buffer_capacity: int = Field(default=settings.BUFFER_CAPACITY, ge=1)
	sync_period: int = Field(default=settings.SYNC_PERIOD, ge=1)
	warmup: int | None = Field(default=None, ge=1)

	# Exploration
	eps_start: float = Field(default=settings.EPS_START, ge=0, le=1)
	eps_end: float = Field(default=settings.EPS_END, ge=0, le=1)
	eps_decay_steps: int | None = Field(default=None, ge=0)
	explore_source: ExploreSource = ExploreSource.RANDOM

	# Schedule
	total_steps: int = Field(default=50_000, ge=0)
	eval_every: int = Field(default=5_000, ge=1)
	eval_games: int = Field(default=50, ge=1)
	checkpoint_every: int = Field(default=10_000, ge=1)

	# Game
	num_geese: int = Field(default=settings.MAX_GEESE, ge=1, le=settings.MAX_GEESE)
	food_count: int = Field(default=settings.FOOD_COUNT, ge=1)
	hunger_rate: int = Field(default=settings.HUNGER_RATE, ge=1)
	max_steps: int = Field(default=settings.MAX_STEPS, ge=1)
	opponents: list[str] | None = None

	# Reproducibility and output
	seed: int = 0
	eval_seed: int = 12345
	out_dir: str = "runs/default"

	@field_validator("opponents", mode="before")
	@classmethod
	def _split_roster(cls, value):
		if isinstance(value, str):
			return [name.strip() for name in value.split(",") if name.strip()]
		return value

	@model_validator(mode="after")
	def _resolve(self) -> "TrainConfig":
		if self.encoder_kind is None:
			self.encoder_kind = EncoderKind.SLIM3 if self.model_kind is ModelKind.VANILLA else EncoderKind.FULL17
		if self.warmup is None:
			self.warmup = self.batch_size * settings.WARMUP_FACTOR
		if self.eps_decay_steps is None:
			self.eps_decay_steps = int(self.total_steps * settings.EPS_DECAY_FRACTION)
		if self.loss_kind is LossKind.AUTO:
			self.loss_kind = LossKind.MSE if self.model_kind is ModelKind.VANILLA else LossKind.HUBER
		if self.opponents is None:
			self.opponents = ["greedy"] * (self.num_geese - 1)
		if self.eps_end > self.eps_start:
			raise ValueError("eps_end must not exceed eps_start")
		if len(self.opponents) != self.num_geese - 1:
			raise ValueError(
				f"opponents lists {len(self.opponents)} entries but num_geese={self.num_geese} needs {self.num_geese - 1}"
			)
		for name in self.opponents:
			if name not in ROSTER_NAMES and not name.endswith(".npz"):
				raise ValueError(f"Unknown opponent '{name}' (use {', '.join(ROSTER_NAMES)} or a .npz checkpoint)")
		return self

	@property
	def center(self) -> tuple[int, int] | None:
		return (self.center_row, self.center_col) if self.center_player else None

	def shaper_params(self) -> ShaperParams:
		return ShaperParams(**{name: getattr(self, name) for name in ShaperParams.model_fields})
