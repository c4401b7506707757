import pytest

from conftest import make_matrix
from xdalign.aligner import Strategy, align
from xdalign.corpus import GoldSet
from xdalign.tuner import precision_recall_f1, sweep_grid, sweep_threshold


def gold(*pairs):
    return GoldSet(pairs=frozenset(pairs))


class TestPrecisionRecallF1:
    def test_perfect_prediction(self):
        g = gold(("a", "x"), ("b", "y"))
        m = precision_recall_f1({("a", "x"), ("b", "y")}, g)
        assert (m.precision, m.recall, m.f1) == (1.0, 1.0, 1.0)

    def test_disjoint_prediction(self):
        m = precision_recall_f1({("a", "q")}, gold(("a", "x")))
        assert (m.precision, m.recall, m.f1) == (0.0, 0.0, 0.0)

    def test_half_right(self):
        m = precision_recall_f1(
            {("a", "x"), ("b", "y")}, gold(("a", "x"), ("c", "z"))
        )
        assert m.precision == pytest.approx(0.5)
        assert m.recall == pytest.approx(0.5)
        assert m.f1 == pytest.approx(0.5)
        assert m.true_positives == 1

    def test_empty_prediction_yields_zero_not_error(self):
        m = precision_recall_f1(set(), gold(("a", "x")))
        assert (m.precision, m.recall, m.f1) == (0.0, 0.0, 0.0)

    def test_scores_ignored(self):
        ps = align(make_matrix([[90.0]]), 0, Strategy.INTERSECTION)
        m = precision_recall_f1(ps, gold(("d1", "f1")))
        assert m.f1 == 1.0

    def test_order_invariance(self):
        g = gold(("a", "x"), ("b", "y"), ("c", "z"))
        p1 = [("a", "x"), ("c", "z")]
        assert precision_recall_f1(p1, g) == precision_recall_f1(reversed(p1), g)


class TestSweep:
    def test_grid_is_201_points(self):
        grid = sweep_grid()
        assert len(grid) == 201
        assert grid[0] == 0.0
        assert grid[-1] == 100.0
        assert grid[1] == 0.5

    def test_fixture_sweep_tie_breaks_high(self):
        matrix = make_matrix([[90, 10], [10, 80]])
        result = sweep_threshold(
            [matrix], gold(("d1", "f1"), ("d2", "f2")), Strategy.INTERSECTION
        )
        assert result.best_f1 == 1.0
        assert result.best_threshold == 80.0
        assert len(result.curve) == 201

    def test_unreachable_gold_returns_highest_theta(self):
        matrix = make_matrix([[90, 10], [10, 80]])
        result = sweep_threshold([matrix], gold(("d1", "f2")), Strategy.INTERSECTION)
        assert result.best_f1 == 0.0
        assert result.best_threshold == 100.0

    def test_curve_maximum_is_best_f1(self):
        matrix = make_matrix([[60, 50, 10], [20, 70, 30]])
        result = sweep_threshold(
            [matrix], gold(("d1", "f1"), ("d2", "f2")), Strategy.UNION
        )
        assert result.best_f1 == max(m.f1 for _, m in result.curve)
        at_best = [m.f1 for t, m in result.curve if t == result.best_threshold]
        assert at_best == [result.best_f1]

    def test_empty_gold_is_an_error(self):
        with pytest.raises(ValueError, match="gold"):
            sweep_threshold([make_matrix([[50]])], gold(), Strategy.INTERSECTION)

    def test_pools_across_matrices(self):
        m1 = make_matrix([[90]])
        m2 = make_matrix([[80]])
        # same ids on two dates; both pairs pool into one prediction set
        result = sweep_threshold(
            [m1, m2], gold(("d1", "f1")), Strategy.INTERSECTION
        )
        assert result.best_f1 == 1.0
