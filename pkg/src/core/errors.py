# core/errors.py

class GeeseError(Exception):
	"""Base class for every error raised by the package."""

class ContractViolation(GeeseError):
	"""Raised when an operation is called with arguments outside its contract."""

class ConfigurationError(GeeseError):
	"""Raised when a configuration value or file is invalid."""

class NotReady(GeeseError):
	"""Raised when the replay buffer holds fewer transitions than requested."""

class TrainingDiverged(GeeseError):
	"""Raised when the training loss becomes non-finite or explodes."""

class CheckpointError(GeeseError):
	"""Raised when a checkpoint file cannot be read or does not match."""
