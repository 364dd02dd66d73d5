import tempfile
import unittest
from pathlib import Path

from src.core.elo import EloTable
from src.core.errors import ContractViolation
from src.core.policies import GreedyPolicy, RandomPolicy
from src.core.tournament import play_match, seat_names, tournament
from src.data.replays import read_replay, write_replay
from src.models.game import GameRules


def random_vs_greedy():
	return [RandomPolicy(), GreedyPolicy(), GreedyPolicy(), GreedyPolicy()]

class TestTournament(unittest.TestCase):

	def test_seat_names_are_unique(self):
		self.assertEqual(
			seat_names([GreedyPolicy(), RandomPolicy(), GreedyPolicy(), GreedyPolicy()]),
			["greedy", "random", "greedy#2", "greedy#3"]
		)

	def test_win_rates_are_probabilities(self):
		summary = tournament(random_vs_greedy(), 20, seed=1)
		self.assertLessEqual(sum(a.win_rate for a in summary.agents), 1.0 + 1e-12)
		for agent in summary.agents:
			self.assertLessEqual(agent.ci_low, agent.win_rate)
			self.assertGreaterEqual(agent.ci_high, agent.win_rate)
			self.assertIsNone(agent.elo)
		self.assertEqual(len(summary.results), 20)

	def test_same_seed_same_aggregates(self):
		a = tournament(random_vs_greedy(), 15, seed=42)
		b = tournament(random_vs_greedy(), 15, seed=42)
		self.assertEqual(a.agents, b.agents)
		self.assertEqual([r.scores for r in a.results], [r.scores for r in b.results])

	def test_greedy_beats_random(self):
		summary = tournament(random_vs_greedy(), 40, seed=7)
		greedy = sum(a.win_rate for a in summary.agents if a.name.startswith("greedy"))
		self.assertGreater(greedy, summary.agent("random").win_rate)

	def test_elo_table_is_updated(self):
		elo = EloTable()
		summary = tournament(random_vs_greedy(), 10, seed=3, elo=elo)
		self.assertEqual(set(elo.ratings), {"random", "greedy", "greedy#2", "greedy#3"})
		self.assertAlmostEqual(sum(elo.ratings.values()), 4000.0, places=6)
		self.assertEqual(summary.agent("greedy").elo, elo["greedy"])

	def test_needs_one_game(self):
		with self.assertRaises(ContractViolation):
			tournament(random_vs_greedy(), 0, seed=0)

	def test_seat_count_must_match_rules(self):
		with self.assertRaises(ContractViolation):
			play_match(random_vs_greedy(), 0, GameRules(num_geese=2))

class TestRecordedMatch(unittest.TestCase):

	def test_replay_survives_a_file_round_trip(self):
		result, lines = play_match([GreedyPolicy(), GreedyPolicy()], seed=5, record=True)
		self.assertEqual(lines[0].step, 0)
		self.assertEqual(lines[0].actions, ["NONE"] * 4)
		self.assertEqual(lines[-1].step, result.steps)
		self.assertEqual(lines[-1].rewards[:2], result.scores)
		with tempfile.TemporaryDirectory() as tmp:
			path = write_replay(Path(tmp) / "game.jsonl", lines)
			self.assertEqual(read_replay(path), lines)

	def test_unrecorded_match_has_no_lines(self):
		_, lines = play_match([GreedyPolicy()], seed=5)
		self.assertEqual(lines, [])

if __name__ == "__main__":
	unittest.main()
