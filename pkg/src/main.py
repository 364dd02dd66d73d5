# main.py
# Run via: python -m src.main <command> [options]

import argparse
import json
import sys
from collections.abc import Sequence
from pathlib import Path

import pandas as pd
from dotenv import load_dotenv
from rich.console import Console
from rich.table import Table

from src.core.elo import EloTable
from src.core.env import benchmark
from src.core.errors import ConfigurationError, ContractViolation
from src.core.policies import Policy, make_policy
from src.core.tournament import play_match, tournament
from src.data.replays import write_replay
from src.models.game import GameRules
from src.models.results import TournamentSummary
from src.utils.logger import logger, setup_logging

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_RUNTIME = 2

SUMMARY_COLUMNS = ["agent", "win_rate", "ci_low", "ci_high", "mean_score", "max_score", "elo"]

class UsageError(Exception):
	"""Bad command line or missing input file."""

class CliParser(argparse.ArgumentParser):
	"""ArgumentParser whose errors become exit code 1 instead of 2."""

	def error(self, message: str):
		self.print_usage(sys.stderr)
		raise UsageError(message)

def build_parser() -> CliParser:
	parser = CliParser(prog="geese", description="Hungry Geese value-learning lab")
	commands = parser.add_subparsers(dest="command", required=True)

	train = commands.add_parser("train", help="train a Q-network from a config file")
	train.add_argument("config", type=Path)
	train.add_argument("--out-dir", default=None, help="overrides out_dir from the config")

	evaluate = commands.add_parser("eval", help="play a seeded tournament")
	evaluate.add_argument("--models", nargs="+", required=True, help="greedy, random or .npz checkpoints, one per goose")
	evaluate.add_argument("--games", type=int, required=True)
	evaluate.add_argument("--seed", type=int, required=True)
	evaluate.add_argument("--out", type=Path, default=None, help="per-game results as JSON lines")

	export = commands.add_parser("export-replay", help="record one game as JSON lines")
	export.add_argument("--checkpoint", type=Path, required=True)
	export.add_argument("--out", type=Path, required=True)
	export.add_argument("--seed", type=int, default=0)
	export.add_argument("--opponents", default="greedy,greedy,greedy")

	bench = commands.add_parser("bench-env", help="measure simulator throughput")
	bench.add_argument("--steps", type=int, required=True)
	bench.add_argument("--seed", type=int, default=0)
	return parser

def _load_policies(specs: Sequence[str], seed: int) -> list[Policy]:
	missing = [s for s in specs if s not in ("greedy", "random") and not Path(s).is_file()]
	if missing:
		raise UsageError(f"Checkpoint not found: {', '.join(missing)}")
	return [make_policy(spec, seed=seed) for spec in specs]

def _summary_frame(summary: TournamentSummary) -> pd.DataFrame:
	return pd.DataFrame(
		[[a.name, a.win_rate, a.ci_low, a.ci_high, a.mean_score, a.max_score, a.elo] for a in summary.agents],
		columns=SUMMARY_COLUMNS
	)

def _print_table(title: str, frame: pd.DataFrame) -> None:
	table = Table(title=title)
	for column in frame.columns:
		table.add_column(str(column))
	for row in frame.itertuples(index=False):
		table.add_row(*[f"{v:.4g}" if isinstance(v, float) else str(v) for v in row])
	Console(stderr=True).print(table)

def cmd_train(args: argparse.Namespace) -> int:
	from src.core.training import run_training
	from src.data.config_file import load_train_config

	overrides = {"out_dir": args.out_dir} if args.out_dir else {}
	cfg = load_train_config(args.config, **overrides)
	result = run_training(cfg)
	print(json.dumps({
		"out_dir": cfg.out_dir,
		"steps": result.steps,
		"episodes": result.episodes,
		"metrics": str(result.metrics.path),
		"checkpoints": [str(p) for p in result.checkpoints],
	}))
	frame = result.metrics.frame()
	if len(frame):
		_print_table(f"Training {cfg.model_kind.value}", frame)
	return EXIT_OK

def cmd_eval(args: argparse.Namespace) -> int:
	if args.games < 1:
		raise UsageError("--games must be at least 1")
	if not 1 <= len(args.models) <= 4:
		raise UsageError("--models takes between one and four agents")
	policies = _load_policies(args.models, args.seed)
	summary = tournament(policies, args.games, args.seed, GameRules(num_geese=len(policies)), elo=EloTable())

	if args.out is not None:
		args.out.parent.mkdir(parents=True, exist_ok=True)
		with open(args.out, "w", encoding="utf-8") as f:
			for match in summary.results:
				f.write(match.model_dump_json() + "\n")
	frame = _summary_frame(summary)
	frame.to_csv(sys.stdout, index=False, float_format="%.10g")
	_print_table(f"{args.games} games, seed {args.seed}", frame)
	return EXIT_OK

def cmd_export_replay(args: argparse.Namespace) -> int:
	opponents = [name.strip() for name in args.opponents.split(",") if name.strip()]
	if len(opponents) > 3:
		raise UsageError("--opponents takes at most three agents")
	if not args.checkpoint.is_file():
		raise UsageError(f"Checkpoint not found: {args.checkpoint}")
	policies = _load_policies([str(args.checkpoint), *opponents], args.seed)
	match, lines = play_match(policies, args.seed, GameRules(num_geese=len(policies)), record=True)
	write_replay(args.out, lines)
	print(match.model_dump_json())
	logger(tag="replay").info(f"Wrote {len(lines)} states to {args.out}")
	return EXIT_OK

def cmd_bench_env(args: argparse.Namespace) -> int:
	if args.steps < 1:
		raise UsageError("--steps must be at least 1")
	steps_done, games, seconds = benchmark(args.steps, args.seed)
	frame = pd.DataFrame([[steps_done, seconds, steps_done / seconds]], columns=["steps", "seconds", "steps_per_second"])
	frame.to_csv(sys.stdout, index=False, float_format="%.6g")
	_print_table(f"bench-env ({games} games)", frame)
	return EXIT_OK

COMMANDS = {
	"train": cmd_train,
	"eval": cmd_eval,
	"export-replay": cmd_export_replay,
	"bench-env": cmd_bench_env,
}

def main(argv: Sequence[str] | None = None) -> int:
	# LOG_LEVEL may come from .env
	load_dotenv()
	setup_logging()

	try:
		args = build_parser().parse_args(argv)
		return COMMANDS[args.command](args)
	except SystemExit as e:
		# --help exits through argparse
		return int(e.code or 0)
	except (UsageError, ConfigurationError, ContractViolation) as e:
		logger(tag="cli").error(str(e))
		return EXIT_USAGE
	except Exception as e:
		logger(tag="cli").exception(f"Command failed: {e}")
		return EXIT_RUNTIME

if __name__ == "__main__":
	sys.exit(main())
