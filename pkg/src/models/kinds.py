# models/kinds.py

from enum import Enum


class ModelKind(str, Enum):
	VANILLA = "vanilla"
	DOUBLE = "double"
	DUELING = "dueling"

class EncoderKind(str, Enum):
	FULL17 = "full17"
	SLIM3 = "slim3"

	@property
	def channels(self) -> int:
		return 17 if self is EncoderKind.FULL17 else 3

class ShaperKind(str, Enum):
	VANILLA_DELTA = "vanilla"
	DQN_TRAINING = "dqn"
	MANHATTAN = "manhattan"

class LossKind(str, Enum):
	AUTO = "auto"
	MSE = "mse"
	HUBER = "huber"

class OptimizerKind(str, Enum):
	ADAM = "adam"
	SGD = "sgd"

class ExploreSource(str, Enum):
	RANDOM = "random"
	RULE_BASED = "rule-based"
