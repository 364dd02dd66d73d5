# utils/logger.py

import inspect
import logging
import os
import sys

# Module name plus an optional tag, e.g. [src.core.training:train].
_DEFAULT_FORMAT = "%(asctime)s — %(levelname)s  \t[%(name)s%(tag)s]  \t%(message)s"
_DEFAULT_DATE_FORMAT = "%Y-%m-%d %H:%M:%S"

class TaggedFormatter(logging.Formatter):
	"""
	Formatter that fills in an empty 'tag' when a record was not produced
	through the adapter returned by `logger()`.
	"""
	def __init__(
		self,
		fmt=_DEFAULT_FORMAT,
		datefmt=_DEFAULT_DATE_FORMAT,
		**kwargs
	):
		super().__init__(fmt, datefmt, **kwargs)

	def format(self, record: logging.LogRecord) -> str:
		if not hasattr(record, "tag"):
			record.tag = ""
		return super().format(record)

def level_from_env(default: int = logging.INFO) -> int:
	"""Reads LOG_LEVEL (name or number) from the environment."""
	raw = os.getenv("LOG_LEVEL")
	if not raw:
		return default
	if raw.isdigit():
		return int(raw)
	level = logging.getLevelName(raw.strip().upper())
	return level if isinstance(level, int) else default

def setup_logging(
	level: int | None = None,
	stream=sys.stderr
) -> None:
	"""
	Configures the root logger for the command line tools.

	Should be called once at start-up. Logs are written to standard error so
	that standard output stays reserved for CSV and JSON-lines data.

	Args:
		level: The minimum logging level. Defaults to LOG_LEVEL or INFO.
		stream: The stream where logs will be written.
	"""
	root_logger = logging.getLogger()

	# Avoid adding duplicate handlers if this function is called multiple times.
	if root_logger.handlers:
		return

	handler = logging.StreamHandler(stream=stream)
	handler.setFormatter(TaggedFormatter())
	root_logger.addHandler(handler)
	root_logger.setLevel(level if level is not None else level_from_env())
	root_logger.debug("Logger set up")

def logger(
	tag: str | None = None,
	*,
	name: str | None = None
) -> logging.LoggerAdapter:
	"""
	Returns a logger that injects a tag into the LogRecord's context.

	If 'name' is not provided, it defaults to the name of the calling module.

	Example:
	```
		# In src/core/training.py
		logger(tag="train").info("Evaluation finished")
		# 2026-03-02 10:15:30 — INFO  	[src.core.training:train]  	Evaluation finished
	```
	"""
	logger_name = name
	if logger_name is None:
		frame = inspect.currentframe()
		caller = frame.f_back if frame is not None else None
		logger_name = caller.f_globals.get("__name__", "unknown_module") if caller else "unknown_module"
	return logging.LoggerAdapter(
		logging.getLogger(logger_name),
		{"tag": f":{tag}" if tag is not None else ""}
	)
