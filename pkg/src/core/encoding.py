# core/encoding.py
"""
One-hot grid encodings of a game state from one goose's point of view.

## Full (17 channels)
	0      player head            1-3    enemy heads
	4      player tail cell       5-7    enemy tail cells
	8      player body            9-11   enemy bodies
	12     player previous head   13-15  enemy previous heads
	16     food
Enemies fill their channels in ascending goose index, skipping the player.
Dead geese leave their channels empty.

## Slim (3 channels)
	0 player body, 1 every enemy body, 2 food
"""

import numpy as np

from src.config.settings import settings
from src.core.env import GameState
from src.core.errors import ConfigurationError, ContractViolation
from src.core.geometry import COLUMNS, NUM_CELLS, ROWS
from src.models.kinds import EncoderKind

CENTER = (settings.CENTER_ROW, settings.CENTER_COL)

def _check_player(s: GameState, player: int) -> None:
	if not 0 <= player < len(s.geese):
		raise ContractViolation(f"Player index {player} outside [0, {len(s.geese) - 1}]")

def _enemies(player: int, count: int) -> list[int]:
	return [g for g in range(count) if g != player]

def encode_full(s: GameState, prev: GameState | None, player: int) -> np.ndarray:
	"""Encodes the 17-channel tensor, shape (17, ROWS, COLUMNS)."""
	_check_player(s, player)
	planes = np.zeros((17, NUM_CELLS), dtype=np.float64)
	order = [player] + _enemies(player, len(s.geese))
	for slot, g in enumerate(order):
		body = s.geese[g].body
		if body:
			planes[slot, body[0]] = 1.0
			planes[4 + slot, body[-1]] = 1.0
			planes[8 + slot, body] = 1.0
		if prev is not None and prev.geese[g].body:
			planes[12 + slot, prev.geese[g].body[0]] = 1.0
	planes[16, s.food] = 1.0
	return planes.reshape(17, ROWS, COLUMNS)

def encode_slim(s: GameState, player: int) -> np.ndarray:
	"""Encodes the 3-channel tensor, shape (3, ROWS, COLUMNS)."""
	_check_player(s, player)
	planes = np.zeros((3, NUM_CELLS), dtype=np.float64)
	planes[0, s.geese[player].body] = 1.0
	for g in _enemies(player, len(s.geese)):
		planes[1, s.geese[g].body] = 1.0
	planes[2, s.food] = 1.0
	return planes.reshape(3, ROWS, COLUMNS)

def translate_tensor(t: np.ndarray, d_row: int, d_col: int) -> np.ndarray:
	"""Toroidal shift of every channel by (d_row, d_col)."""
	return np.roll(t, shift=(d_row, d_col), axis=(-2, -1))

def center_on_player(
	t: np.ndarray,
	head: int,
	center: tuple[int, int] = CENTER
) -> np.ndarray:
	"""Shifts the tensor so that `head` lands on `center`."""
	if not 0 <= head < NUM_CELLS:
		raise ContractViolation(f"Head cell {head} outside the board")
	row, col = divmod(head, COLUMNS)
	return translate_tensor(t, center[0] - row, center[1] - col)

def uncenter(
	t: np.ndarray,
	head: int,
	center: tuple[int, int] = CENTER
) -> np.ndarray:
	"""Inverse of `center_on_player`."""
	row, col = divmod(head, COLUMNS)
	return translate_tensor(t, row - center[0], col - center[1])

def encode(
	kind: EncoderKind | str,
	s: GameState,
	prev: GameState | None,
	player: int,
	*,
	center: tuple[int, int] | None = None
) -> np.ndarray:
	"""Encodes with the chosen variant, optionally centred on the player's head."""
	try:
		kind = EncoderKind(kind)
	except ValueError as e:
		raise ConfigurationError(f"Unknown encoder kind '{kind}'") from e
	t = encode_full(s, prev, player) if kind is EncoderKind.FULL17 else encode_slim(s, player)
	body = s.geese[player].body
	if center is not None and body:
		t = center_on_player(t, body[0], center)
	return t
