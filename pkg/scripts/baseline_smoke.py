# baseline_smoke.py
### --- Desk-scale checks: trained networks against the random baseline ---
# Run from the project root: python -m scripts.baseline_smoke [solo|greedy|all]

import sys

import numpy as np

from src.core.env import is_done, new_game, step
from src.core.policies import GreedyPolicy, Policy, QPolicy, RandomPolicy
from src.core.tournament import tournament
from src.core.training import run_training
from src.data.checkpoints import load_checkpoint
from src.models.config import TrainConfig
from src.models.game import GameRules
from src.utils.logger import setup_logging
from src.utils.seeding import derive_seeds

EVAL_SEED = 2024

def food_per_episode(policy: Policy, seeds: list[int]) -> float:
	"""Mean number of food items a solo goose eats per game."""
	eaten = []
	for seed in seeds:
		policy.reset(seed)
		state, prev, count = new_game(seed, num_geese=1), None, 0
		while not is_done(state):
			nxt = step(state, [policy.act(state, prev, 0), None, None, None]).next
			if nxt.geese[0].body and nxt.geese[0].length > state.geese[0].length:
				count += 1
			prev, state = state, nxt
		eaten.append(count)
	return float(np.mean(eaten))

def solo_manhattan() -> bool:
	print("⏳ Solo goose, Manhattan-shaped reward, 20k transitions...")
	cfg = TrainConfig(
		model_kind="vanilla",
		shaper_kind="manhattan",
		num_geese=1,
		total_steps=20_000,
		eval_every=5_000,
		eval_games=20,
		checkpoint_every=20_000,
		out_dir="runs/smoke_solo",
	)
	result = run_training(cfg)
	seeds = derive_seeds(EVAL_SEED, 200)
	learned = food_per_episode(QPolicy(load_checkpoint(result.checkpoints[-1]).network, cfg.encoder_kind, cfg.center), seeds)
	baseline = food_per_episode(RandomPolicy(), seeds)
	print(f"🍏 food per episode: learned={learned:.2f} random={baseline:.2f}")
	return learned >= 3 * baseline

def vanilla_vs_greedy() -> bool:
	print("⏳ Vanilla DQN against three greedy geese, 50k transitions...")
	cfg = TrainConfig(model_kind="vanilla", total_steps=50_000, out_dir="runs/smoke_greedy")
	result = run_training(cfg)
	rules = GameRules()
	learner = QPolicy(load_checkpoint(result.checkpoints[-1]).network, cfg.encoder_kind, cfg.center, name="learned")
	opponents = [GreedyPolicy(), GreedyPolicy(), GreedyPolicy()]
	learned = tournament([learner, *opponents], 500, EVAL_SEED, rules).agent("learned")
	baseline = tournament([RandomPolicy(), *opponents], 500, EVAL_SEED, rules).agent("random")
	print(f"🏆 learned {learned.win_rate:.3f} [{learned.ci_low:.3f}, {learned.ci_high:.3f}]")
	print(f"🎲 random  {baseline.win_rate:.3f} [{baseline.ci_low:.3f}, {baseline.ci_high:.3f}]")
	return learned.win_rate > baseline.win_rate and learned.ci_low > baseline.ci_high

if __name__ == "__main__":
	setup_logging()
	which = sys.argv[1] if len(sys.argv) > 1 else "all"
	checks = {"solo": solo_manhattan, "greedy": vanilla_vs_greedy}
	selected = checks.values() if which == "all" else [checks[which]]
	passed = [check() for check in selected]
	print("✅ all checks passed" if all(passed) else "❌ some checks failed")
	sys.exit(0 if all(passed) else 1)
