"""Smoke tests for the python bindings."""

from fractions import Fraction

import pytest

import rategraph as rg


def test_combinatorics():
    assert rg.binomial(4, 2) == 6
    assert rg.binomial(3, 5) == 0
    assert rg.multinomial(3, [1, 2]) == 3
    tables = rg.stirling_tables(5)
    assert tables["s"][5] == [0, 24, -50, 35, -10, 1]
    assert tables["tau"][4] == [0, 6, -5, 1]
    assert tables["lambda"][5] == [-6, -6, 18, -8, 1]


def test_forest_expectations():
    assert rg.unit_forest_length(3) == Fraction(7, 6)
    assert rg.unit_forest_time(3) == Fraction(5, 6)
    g = rg.CompleteRateGraph(3)
    assert rg.forest_length(g, 1) == Fraction(7, 6)
    weighted = rg.CompleteRateGraph(3, [1, 2, 3])
    assert rg.forest_time(weighted, 1) == Fraction(9, 20)
    assert rg.oracle_forest_time(weighted, 1) == Fraction(9, 20)


def test_rates_accept_fractions_and_strings():
    g = rg.CompleteRateGraph(3, [Fraction(1, 2), "3/2", 1.25])
    assert g.rate(0, 1) == Fraction(1, 2)
    assert g.rate(0, 2) == Fraction(3, 2)
    assert g.rate(1, 2) == Fraction(5, 4)
    assert g.total_rate() == Fraction(13, 4)


def test_assignment_expectations():
    board = rg.BipartiteRateGraph(2, 2)
    assert rg.assignment_time(board, 2) == Fraction(11, 12)
    assert rg.oracle_assignment_time(board, 2) == Fraction(11, 12)
    v1, v2 = rg.assignment_length2(board)
    assert v1 == v2 == Fraction(5, 4)
    assert rg.tabloid_count(2, 2, 2) == 9
    assert rg.shape_numerator(2, 2, [0, 0], 2) == 1
    assert rg.shape_numerator(2, 2, [1, 0], 2) == -1


def test_errors():
    board = rg.BipartiteRateGraph(2, 2)
    with pytest.raises(ValueError):
        rg.assignment_time(board, 3)
    with pytest.raises(ValueError):
        rg.CompleteRateGraph(3, [1, 2])
    with pytest.raises(RuntimeError):
        rg.forest_time(rg.CompleteRateGraph(13), 1)


def test_monte_carlo_reproducible():
    g = rg.CompleteRateGraph(3)
    first = rg.monte_carlo(g, "forest-length", 1, trials=20000, seed=9)
    second = rg.monte_carlo(g, "forest-length", 1, trials=20000, seed=9)
    assert first == second
    assert abs(first["mean"] - 7 / 6) < 4 * first["std_error"]
