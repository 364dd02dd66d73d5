# utils/seeding.py

import os
import platform
import sys
from typing import Any

import numpy as np


def derive_seeds(master: int, count: int) -> list[int]:
	"""Splits one master seed into `count` independent 63-bit seeds."""
	children = np.random.SeedSequence(master).spawn(count)
	return [int(child.generate_state(1, dtype=np.uint64)[0] >> np.uint64(1)) for child in children]

def derive_seed(master: int, index: int) -> int:
	"""The `index`-th seed of the stream rooted at `master`."""
	child = np.random.SeedSequence(master, spawn_key=(index,))
	return int(child.generate_state(1, dtype=np.uint64)[0] >> np.uint64(1))

def run_metadata() -> dict[str, Any]:
	"""Host and library facts recorded next to a run's data files."""
	meta: dict[str, Any] = {
		"python": sys.version.split()[0],
		"numpy": np.__version__,
		"platform": platform.platform(),
		"threads": {
			var: os.getenv(var)
			for var in ("OMP_NUM_THREADS", "OPENBLAS_NUM_THREADS", "MKL_NUM_THREADS")
		},
	}
	try:
		import psutil
		meta["cpu_count"] = psutil.cpu_count(logical=True)
		meta["ram_total_gb"] = round(psutil.virtual_memory().total / 2**30, 2)
	except ImportError:
		meta["cpu_count"] = os.cpu_count()
	return meta
