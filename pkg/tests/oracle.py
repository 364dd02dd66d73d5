# tests/oracle.py
"""
Naive rules oracle for the simulator.

Written independently of `src.core.env`: bodies are lists of (row, col)
pairs, every rule is applied by brute force and the game mutates in place.
It draws from one generator in the same order as the simulator (starting
heads, starting food, then one draw per top-up), so trajectories can be
compared state for state.
"""

import numpy as np

ROWS, COLS = 7, 11
MOVES = {0: (-1, 0), 1: (0, 1), 2: (1, 0), 3: (0, -1)}

def cell(rc):
	return rc[0] * COLS + rc[1]

def coord(i):
	return (i // COLS, i % COLS)

class OracleGame:
	def __init__(self, seed, num_geese=4, food_count=2, hunger_rate=40, max_steps=200):
		self.rng = np.random.default_rng(seed)
		self.num_geese = num_geese
		self.food_count = food_count
		self.hunger_rate = hunger_rate
		self.max_steps = max_steps
		self.step_count = 0
		heads = self.rng.choice(ROWS * COLS, size=num_geese, replace=False)
		self.bodies = [[coord(int(h))] for h in heads] + [[] for _ in range(4 - num_geese)]
		self.last = [None] * 4
		self.rewards = [0, 0, 0, 0]
		free = [c for c in range(ROWS * COLS) if c not in {int(h) for h in heads}]
		picks = self.rng.choice(len(free), size=food_count, replace=False)
		self.food = [coord(free[int(p)]) for p in picks]

	def done(self):
		alive = sum(1 for b in self.bodies if b)
		if self.step_count >= self.max_steps or alive == 0:
			return True
		return self.num_geese > 1 and alive <= 1

	def legal(self, g):
		if self.last[g] is None:
			return [0, 1, 2, 3]
		return [a for a in range(4) if a != (self.last[g] + 2) % 4]

	def step(self, actions):
		self.step_count += 1
		new_bodies = []
		eaten = []
		for g in range(4):
			body = self.bodies[g]
			if not body:
				new_bodies.append([])
				continue
			a = actions[g]
			if self.last[g] is not None and a == (self.last[g] + 2) % 4:
				new_bodies.append([])
				continue
			dr, dc = MOVES[a]
			head = ((body[0][0] + dr) % ROWS, (body[0][1] + dc) % COLS)
			if head in self.food:
				eaten.append(head)
				new_bodies.append([head] + list(body))
			else:
				new_bodies.append([head] + list(body[:-1]))

		dead = set()
		for g in range(4):
			if not new_bodies[g]:
				continue
			head = new_bodies[g][0]
			hits = 0
			for h in range(4):
				hits += sum(1 for part in new_bodies[h] if part == head)
			if hits > 1:
				dead.add(g)
		for g in dead:
			new_bodies[g] = []

		if self.step_count % self.hunger_rate == 0:
			for g in range(4):
				if new_bodies[g]:
					new_bodies[g] = new_bodies[g][:-1]

		self.food = [f for f in self.food if f not in eaten]
		missing = self.food_count - len(self.food)
		if missing > 0:
			free = []
			for r in range(ROWS):
				for c in range(COLS):
					if (r, c) in self.food:
						continue
					if any((r, c) in b for b in new_bodies):
						continue
					free.append((r, c))
			if free:
				picks = self.rng.choice(len(free), size=min(missing, len(free)), replace=False)
				self.food += [free[int(p)] for p in picks]

		for g in range(4):
			if new_bodies[g]:
				self.last[g] = actions[g]
				self.rewards[g] = self.step_count + len(new_bodies[g])
			else:
				self.last[g] = None
		self.bodies = new_bodies

	def snapshot(self):
		"""(step, bodies as cell indices, sorted food cells, rewards)."""
		return (
			self.step_count,
			[[cell(p) for p in b] for b in self.bodies],
			sorted(cell(f) for f in self.food),
			list(self.rewards),
		)
