# config/settings.py

class Settings:
	"""Application-wide settings."""
	# Board geometry
	ROWS: int = 7
	COLUMNS: int = 11
	NUM_ACTIONS: int = 4
	MAX_GEESE: int = 4

	# Game rules
	HUNGER_RATE: int = 40
	MAX_STEPS: int = 200
	FOOD_COUNT: int = 2

	# Encoding
	CENTER_ROW: int = 3
	CENTER_COL: int = 5

	# Networks
	LEAKY_SLOPE: float = 0.01
	BN_EPSILON: float = 1e-5
	BN_MOMENTUM: float = 0.1
	HUBER_DELTA: float = 1.0

	# Training
	GAMMA: float = 0.99
	LEARNING_RATE: float = 1e-4
	ADAM_BETAS: tuple[float, float] = (0.9, 0.999)
	ADAM_EPSILON: float = 1e-8
	BATCH_SIZE: int = 64
	BUFFER_CAPACITY: int = 50_000
	SYNC_PERIOD: int = 100
	WARMUP_FACTOR: int = 10
	EPS_START: float = 1.0
	EPS_END: float = 0.05
	EPS_DECAY_FRACTION: float = 0.3
	LOSS_GUARD: float = 1e9

	# Evaluation
	ELO_BASE: float = 1000.0
	ELO_K: float = 32.0

	# Files
	CHECKPOINT_VERSION: int = 1
	METRICS_HEADER: tuple[str, ...] = ("step", "loss", "win_rate", "mean_score", "elo", "epsilon")

	@property
	def NUM_CELLS(self) -> int:
		return self.ROWS * self.COLUMNS

# Create singleton instance
settings = Settings()
