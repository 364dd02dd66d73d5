# core/training.py
"""
Self-play training loop.

The learner always plays goose 0 against the configured roster. Every
environment step pushes one transition and, once the buffer is warm, runs one
gradient step. Evaluation blocks play a seeded tournament with the current
online network and append a row to `metrics.csv`; checkpoints are written on
their own cadence as `step_<n>.npz`.
"""

import json
import math
from pathlib import Path

import numpy as np

from src.config.settings import settings
from src.core.elo import EloTable
from src.core.encoding import encode
from src.core.env import GameState, legal_actions, new_game, step
from src.core.errors import NotReady, TrainingDiverged
from src.core.geometry import Action
from src.core.policies import Policy, QPolicy, epsilon_greedy, make_policy
from src.core.replay import EpsilonSchedule, ReplayBuffer, Transition
from src.core.rewards import StepContext, shape
from src.core.tournament import tournament
from src.data.checkpoints import save_checkpoint
from src.data.metrics import MetricsLog, MetricsRow
from src.models.config import TrainConfig
from src.models.game import GameRules
from src.networks.qnetwork import build
from src.networks.targets import TargetPair, train_step
from src.nn.optim import Optimizer
from src.utils.logger import logger
from src.utils.seeding import derive_seed, derive_seeds, run_metadata

LEARNER = 0
LEARNER_NAME = "learner"

class TrainingResult:
	"""What a finished run leaves behind."""

	def __init__(self, metrics: MetricsLog, checkpoints: list[Path], elo: EloTable):
		self.metrics = metrics
		self.checkpoints = checkpoints
		self.elo = elo
		self.steps = 0
		self.episodes = 0
		self.food_per_episode: list[int] = []
		self.losses: list[float] = []

	@property
	def mean_food(self) -> float:
		return float(np.mean(self.food_per_episode)) if self.food_per_episode else 0.0

def _roster(cfg: TrainConfig, pair: TargetPair) -> list[Policy]:
	"""Opponent policies; `self` plays the target network, refreshed at every sync."""
	policies: list[Policy] = []
	for i, name in enumerate(cfg.opponents):
		if name == "self":
			policies.append(QPolicy(pair.target, cfg.encoder_kind, cfg.center, name="self"))
		else:
			policies.append(make_policy(name, seed=derive_seed(cfg.seed, 100 + i)))
	return policies

def _checkpoint(out_dir: Path, step_count: int, pair: TargetPair, optim: Optimizer, cfg: TrainConfig) -> Path:
	return save_checkpoint(
		out_dir / f"step_{step_count:06d}.npz",
		pair.online,
		encoder=cfg.encoder_kind,
		center=cfg.center,
		optim_state=optim.state,
		extra={"step": step_count, "train_seed": cfg.seed},
	)

def _write_run_metadata(out_dir: Path, cfg: TrainConfig, seeds: dict[str, int]) -> None:
	meta = {"config": cfg.model_dump(mode="json"), "seeds": seeds, "host": run_metadata()}
	(out_dir / "run.json").write_text(json.dumps(meta, indent=2, sort_keys=True), encoding="utf-8")

def _guard(loss: float, step_count: int) -> None:
	if not math.isfinite(loss) or loss > settings.LOSS_GUARD:
		logger(tag="train").error(f"Loss {loss} at step {step_count} exceeds the divergence guard")
		raise TrainingDiverged(f"Training diverged at step {step_count}: loss={loss}")

def run_training(cfg: TrainConfig) -> TrainingResult:
	"""
	Trains one network from `cfg` and returns the metrics and checkpoints.

	Identical configs give identical metrics files and checkpoint bytes.
	"""
	log = logger(tag="train")
	out_dir = Path(cfg.out_dir)
	out_dir.mkdir(parents=True, exist_ok=True)

	init_seed, action_seed, sample_seed, game_stream = derive_seeds(cfg.seed, 4)
	_write_run_metadata(out_dir, cfg, {
		"init": init_seed, "action": action_seed, "sample": sample_seed,
		"games": game_stream, "eval": cfg.eval_seed,
	})

	online = build(cfg.model_kind, init_seed, encoder=cfg.encoder_kind, leaky_slope=cfg.leaky_slope)
	pair = TargetPair(online, cfg.sync_period)
	optim = Optimizer(online.named_parameters(), cfg.optimizer, cfg.lr)
	buffer = ReplayBuffer(cfg.buffer_capacity)
	schedule = EpsilonSchedule(cfg.eps_start, cfg.eps_end, cfg.eps_decay_steps)
	action_rng = np.random.default_rng(action_seed)
	sample_rng = np.random.default_rng(sample_seed)
	params = cfg.shaper_params()
	rules = GameRules(
		num_geese=cfg.num_geese,
		food_count=cfg.food_count,
		hunger_rate=cfg.hunger_rate,
		max_steps=cfg.max_steps
	)
	opponents = _roster(cfg, pair)
	learner = QPolicy(online, cfg.encoder_kind, cfg.center, name=LEARNER_NAME)

	elo = EloTable()
	metrics = MetricsLog(out_dir / "metrics.csv")
	result = TrainingResult(metrics, [_checkpoint(out_dir, 0, pair, optim, cfg)], elo)
	log.info(
		f"Training {cfg.model_kind.value} ({cfg.encoder_kind.value}) for {cfg.total_steps} steps "
		f"against {', '.join(cfg.opponents) or 'nobody'}"
	)

	pending_losses: list[float] = []
	step_count = 0
	while step_count < cfg.total_steps:
		game_seed, *policy_seeds = derive_seeds(derive_seed(game_stream, result.episodes), cfg.num_geese)
		for policy, policy_seed in zip(opponents, policy_seeds):
			policy.reset(policy_seed)
		state = new_game(
			game_seed,
			cfg.num_geese,
			cfg.food_count,
			hunger_rate=cfg.hunger_rate,
			max_steps=cfg.max_steps
		)
		prev: GameState | None = None
		encoded = encode(cfg.encoder_kind, state, prev, LEARNER, center=cfg.center)
		food_eaten = 0

		while step_count < cfg.total_steps:
			eps = schedule(step_count)
			action = epsilon_greedy(
				online, encoded, legal_actions(state, LEARNER), eps, action_rng,
				cfg.explore_source, game=state, goose=LEARNER
			)
			actions: list[Action | None] = [action, None, None, None]
			for g, policy in enumerate(opponents, start=1):
				if state.geese[g].body:
					actions[g] = policy.act(state, prev, g)
			outcome = step(state, actions)

			ctx = StepContext(state, outcome.next, LEARNER)
			reward = shape(cfg.shaper_kind, ctx, params)
			food_eaten += int(ctx.ate)
			encoded_next = encode(cfg.encoder_kind, outcome.next, state, LEARNER, center=cfg.center)
			terminal = outcome.done or not ctx.is_alive
			buffer.push(Transition(encoded, int(action), reward, encoded_next, terminal))
			step_count += 1

			if len(buffer) >= cfg.warmup:
				try:
					batch = buffer.sample_batch(cfg.batch_size, sample_rng)
				except NotReady:
					batch = None
				if batch is not None:
					loss = train_step(
						pair, batch, cfg.loss_kind, optim,
						gamma=cfg.gamma,
						huber_delta=cfg.huber_delta,
						select_on_next=cfg.double_select_on_next,
						vanilla_uses_target=cfg.vanilla_uses_target
					)
					_guard(loss, step_count)
					pending_losses.append(loss)
					result.losses.append(loss)

			if step_count % cfg.eval_every == 0:
				summary = tournament([learner, *opponents], cfg.eval_games, cfg.eval_seed, rules, elo=elo)
				mine = summary.agent(LEARNER_NAME)
				row = MetricsRow(
					step=step_count,
					loss=float(np.mean(pending_losses)) if pending_losses else None,
					win_rate=mine.win_rate,
					mean_score=mine.mean_score,
					elo=mine.elo,
					epsilon=schedule(step_count),
				)
				metrics.append(row)
				pending_losses = []
				log.info(
					f"step={step_count} loss={row.loss} win_rate={row.win_rate:.3f} "
					f"mean_score={row.mean_score:.1f} elo={row.elo:.1f} eps={row.epsilon:.3f}"
				)
			if step_count % cfg.checkpoint_every == 0:
				result.checkpoints.append(_checkpoint(out_dir, step_count, pair, optim, cfg))

			if terminal:
				break
			prev, state, encoded = state, outcome.next, encoded_next

		result.episodes += 1
		result.food_per_episode.append(food_eaten)

	if step_count > 0 and step_count % cfg.checkpoint_every != 0:
		result.checkpoints.append(_checkpoint(out_dir, step_count, pair, optim, cfg))
	result.steps = step_count
	log.info(f"Finished after {step_count} steps and {result.episodes} episodes")
	return result
