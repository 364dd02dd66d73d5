# core/geometry.py
"""
Cell arithmetic for the toroidal Hungry Geese board.

Cells are addressed by a flat index `row * COLUMNS + col`. Both axes wrap, so
every cell has exactly four neighbours and distances are measured the short
way round the torus.
"""

from enum import IntEnum
from typing import NamedTuple

import numpy as np

from src.config.settings import settings
from src.core.errors import ContractViolation

ROWS = settings.ROWS
COLUMNS = settings.COLUMNS
NUM_CELLS = ROWS * COLUMNS

class GridCoord(NamedTuple):
	row: int
	col: int

class Action(IntEnum):
	"""The four moves, in the fixed order used for network outputs and tie-breaks."""
	NORTH = 0
	EAST = 1
	SOUTH = 2
	WEST = 3

	@property
	def delta(self) -> tuple[int, int]:
		return _DELTAS[self]

	@property
	def opposite(self) -> "Action":
		return OPPOSITE[self]

_DELTAS = {
	Action.NORTH: (-1, 0),
	Action.EAST: (0, 1),
	Action.SOUTH: (1, 0),
	Action.WEST: (0, -1),
}

ACTIONS: tuple[Action, ...] = tuple(Action)

# OPPOSITE[a] is the reversal of a; LEGAL_AFTER[a] every move except that reversal
OPPOSITE: tuple[Action, ...] = tuple(ACTIONS[(a + 2) % 4] for a in ACTIONS)
LEGAL_AFTER: tuple[tuple[Action, ...], ...] = tuple(
	tuple(b for b in ACTIONS if b is not OPPOSITE[a]) for a in ACTIONS
)

def _check_index(i: int) -> None:
	if not 0 <= i < NUM_CELLS:
		raise ContractViolation(f"Cell index {i} outside [0, {NUM_CELLS - 1}]")

def index_to_coord(i: int) -> GridCoord:
	"""Splits a flat cell index into (row, col)."""
	_check_index(i)
	return GridCoord(i // COLUMNS, i % COLUMNS)

def coord_to_index(c: GridCoord | tuple[int, int]) -> int:
	"""Flattens a (row, col) pair into a cell index."""
	row, col = c
	if not (0 <= row < ROWS and 0 <= col < COLUMNS):
		raise ContractViolation(f"Coordinate {tuple(c)} outside the {ROWS}x{COLUMNS} grid")
	return row * COLUMNS + col

def translate(i: int, action: Action) -> int:
	"""Moves one cell in the given direction, wrapping at the edges."""
	return NEIGHBOURS[i][action]

def _build_neighbours() -> tuple[tuple[int, ...], ...]:
	table = []
	for i in range(NUM_CELLS):
		row, col = divmod(i, COLUMNS)
		table.append(tuple(
			((row + dr) % ROWS) * COLUMNS + (col + dc) % COLUMNS
			for dr, dc in (_DELTAS[a] for a in ACTIONS)
		))
	return tuple(table)

def _build_distances() -> np.ndarray:
	rows, cols = np.divmod(np.arange(NUM_CELLS), COLUMNS)
	dr = np.abs(rows[:, None] - rows[None, :])
	dc = np.abs(cols[:, None] - cols[None, :])
	return np.minimum(dr, ROWS - dr) + np.minimum(dc, COLUMNS - dc)

# NEIGHBOURS[cell][action] -> destination cell
NEIGHBOURS = _build_neighbours()
DISTANCES = _build_distances()
MAX_DISTANCE = int(DISTANCES.max())

def toroidal_distance(a: int, b: int) -> int:
	"""Manhattan distance between two cells on the wrapped board."""
	_check_index(a)
	_check_index(b)
	return int(DISTANCES[a, b])

def nearest_distance(cell: int, targets) -> int:
	"""Smallest toroidal distance from `cell` to any of `targets`."""
	targets = list(targets)
	if not targets:
		raise ContractViolation("nearest_distance needs at least one target cell")
	return int(DISTANCES[cell, targets].min())
