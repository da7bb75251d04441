import csv
import itertools
from math import comb

import pytest

from softgrip import CapacityError, DomainError
from softgrip.statespace import (
    arrangement_space, count_states, count_transitions, enumerate_space, read_table_csv,
    table, weak_compositions, write_table_csv,
)


def naive_space(b):
    """Brute force over the full product grid, independent of weak_compositions."""
    states = [s for s in itertools.product(range(b + 1), repeat=b) if sum(s) == b]
    moves = 0
    for s in states:
        for i, k in enumerate(s):
            if k:
                moves += (i > 0) + (i < b - 1)
    return len(states), moves


def test_small_counts():
    assert count_states(1) == 1
    assert count_states(2) == 3
    assert count_transitions(2) == 4
    assert (count_states(8), count_transitions(8)) == (6435, 48048)
    with pytest.raises(DomainError):
        count_transitions(1)
    with pytest.raises(DomainError):
        count_states(0)


def test_b128_orders():
    sp = arrangement_space(128)
    assert len(str(sp.state_count)) == 76
    assert sp.state_count == comb(255, 127)
    assert 74 <= sp.log10_states <= 76
    assert 76 <= sp.log10_transitions <= 78


@pytest.mark.parametrize("b", range(1, 7))
def test_enumeration_equals_closed_forms(b):
    states, edges = enumerate_space(b)
    assert len(states) == count_states(b) == naive_space(b)[0]
    if b >= 2:
        assert len(edges) == count_transitions(b) == naive_space(b)[1]
    assert len(set(states)) == len(states)
    es = set(edges)
    for s, t in edges:
        assert s != t and sum(t) == b and min(t) >= 0
        assert (t, s) in es


def test_enumeration_examples():
    states, edges = enumerate_space(2)
    assert sorted(states) == [(0, 2), (1, 1), (2, 0)] and len(edges) == 4
    states, edges = enumerate_space(3)
    assert len(states) == 10 and len(edges) == 24


def test_enumeration_guard():
    with pytest.raises(CapacityError) as err:
        enumerate_space(7)
    assert err.value.size == 7


def test_weak_compositions_zero_parts():
    assert list(weak_compositions(0, 3)) == [(0, 0, 0)]
    assert len(list(weak_compositions(4, 3))) == comb(6, 2)


def test_table_csv_round_trip(tmp_path):
    path = tmp_path / "t.csv"
    write_table_csv(10, range(2, 8), path)
    rows = read_table_csv(path)
    assert [r["S"] for r in rows] == list(range(2, 8))
    assert [r["state_count"] for r in rows] == [t.state_count for t in table(10, range(2, 8))]
    s7 = rows[-1]
    assert (s7["B"], s7["state_count"], s7["transition_count"]) == (8, 6435, 48048)
    with open(path, newline="") as fh:
        header = next(csv.reader(fh))
    assert header == ["S", "B", "state_count", "transition_count", "log10_states", "log10_transitions"]


def test_huge_log10_does_not_overflow():
    sp = arrangement_space(1024)
    assert 600 < sp.log10_states < 620
