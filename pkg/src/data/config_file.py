# data/config_file.py

from pathlib import Path

from dotenv import dotenv_values
from pydantic import ValidationError

from src.core.errors import ConfigurationError
from src.models.config import TrainConfig
from src.utils.logger import logger


def load_train_config(path: str | Path, **overrides) -> TrainConfig:
	"""
	Reads a flat `key=value` file into a TrainConfig.

	Keys must be TrainConfig field names; blank values fall back to the defaults.
	Keyword overrides win over the file.
	"""
	path = Path(path)
	if not path.is_file():
		raise ConfigurationError(f"Config file '{path}' does not exist")
	values = {k: v for k, v in dotenv_values(path).items() if v not in (None, "")}
	values.update(overrides)
	try:
		return TrainConfig(**values)
	except ValidationError as e:
		fields = ", ".join(".".join(str(p) for p in err["loc"]) or "config" for err in e.errors())
		logger(tag="config").error(f"Invalid config {path}: {fields}")
		raise ConfigurationError(f"Invalid config '{path}' ({fields}): {e}") from e
