import unittest

from hypothesis import given, settings as hsettings
from hypothesis import strategies as st

from src.core.elo import EloTable, elo_update, expected_score
from src.core.errors import ContractViolation
from src.models.results import MatchResult


def table(*names: str, **ratings: float) -> EloTable:
	elo = EloTable(k=32.0, base=1000.0)
	for name in names:
		elo.add(name, ratings.get(name))
	return elo

class TestElo(unittest.TestCase):

	def test_expected_score(self):
		self.assertEqual(expected_score(1000, 1000), 0.5)
		self.assertAlmostEqual(expected_score(1400, 1000), 10 / 11)

	def test_equal_ratings_move_by_half_k(self):
		elo = table("a", "b")
		elo_update(elo, MatchResult.from_scores(["a", "b"], [12, 4]))
		self.assertAlmostEqual(elo["a"], 1016.0)
		self.assertAlmostEqual(elo["b"], 984.0)
		self.assertEqual(elo.games, {"a": 1, "b": 1})

	def test_draw_between_equals_changes_nothing(self):
		elo = table("a", "b")
		elo_update(elo, MatchResult.from_scores(["a", "b"], [7, 7]))
		self.assertEqual((elo["a"], elo["b"]), (1000.0, 1000.0))

	def test_four_player_game(self):
		elo = table("a", "b", "c", "d")
		elo_update(elo, MatchResult.from_scores(["a", "b", "c", "d"], [30, 20, 20, 1]))
		# three pairwise wins for a, a win and a draw for b and c, three losses for d
		self.assertAlmostEqual(elo["a"], 1048.0)
		self.assertAlmostEqual(elo["b"], 1000.0)
		self.assertAlmostEqual(elo["c"], 1000.0)
		self.assertAlmostEqual(elo["d"], 952.0)

	def test_unknown_agent(self):
		elo = table("a")
		with self.assertRaises(ContractViolation):
			elo_update(elo, MatchResult.from_scores(["a", "z"], [1, 0]))

	@hsettings(max_examples=200, deadline=None)
	@given(
		st.lists(st.floats(min_value=0, max_value=3000), min_size=2, max_size=4),
		st.lists(st.integers(min_value=0, max_value=300), min_size=4, max_size=4),
	)
	def test_rating_sum_is_conserved(self, ratings, scores):
		names = [f"p{i}" for i in range(len(ratings))]
		elo = table(*names, **dict(zip(names, ratings)))
		before = sum(elo.ratings.values())
		elo_update(elo, MatchResult.from_scores(names, scores[:len(names)]))
		self.assertAlmostEqual(sum(elo.ratings.values()), before, places=6)

if __name__ == "__main__":
	unittest.main()
