import random
from fractions import Fraction as F

import pytest

from phragmen.model import parse_profile
from phragmen.seq import seq_phragmen, seq_score

from helpers import load, random_profile, seq_literal


def test_score_formula():
    assert seq_score((0, 0, 0), {0, 1, 2}) == F(1, 3)
    assert seq_score((0,) * 8, set(range(8))) == F(1, 8)
    # a's supporters after b is elected in the five-voter profile
    assert seq_score((0, F(1, 3), F(1, 3), F(1, 3), 0), {0, 3}) == F(2, 3)
    with pytest.raises(ValueError):
        seq_score((0, 0), set())


def test_five_voter_trace_scores():
    p = load("example2")
    trace = seq_phragmen(p, 3).certificates[frozenset("abc")]
    assert [r.chosen for r in trace.rounds] == ["b", "a", "c"]
    assert trace.rounds[0].scores == {"a": F(1, 2), "b": F(1, 3), "c": F(1, 2), "d": 1}
    assert trace.rounds[1].scores == {"a": F(2, 3), "c": F(5, 6), "d": 1}
    assert trace.rounds[2].scores == {"c": 1, "d": 1}
    assert trace.rounds[2].tied == ("c", "d")


def test_explore_all_reports_both_committees():
    p = load("example2")
    out = seq_phragmen(p, 3, ties="all")
    assert out.committees == (frozenset("abc"), frozenset("abd"))
    assert out.certificates[frozenset("abd")].order == ("b", "a", "d")


def test_alphabetical_order_and_loads():
    p = load("example5")
    trace = seq_phragmen(p, 4).certificates[frozenset("abef")]
    assert trace.order == ("e", "f", "a", "b")
    h, q = F(1, 2), F(3, 4)
    assert trace.loads == (q, q, 0, 0, q, q, h, h)


def test_single_candidate():
    p = parse_profile("candidates: a\n3: a")
    out = seq_phragmen(p, 1)
    assert out.committees == (frozenset("a"),)
    assert out.certificates[frozenset("a")].loads == (F(1, 3),) * 3


def test_k_out_of_range():
    p = load("example1")
    for k in (0, 4):
        with pytest.raises(ValueError):
            seq_phragmen(p, k)
    with pytest.raises(ValueError):
        seq_phragmen(p, 1, ties="random")


def test_explore_all_dedupes_by_committee():
    # a and b tie in round 1 and both orders end in {a, b}
    p = parse_profile("candidates: a b c\n1: a\n1: b\n1: c")
    out = seq_phragmen(p, 2, ties="all")
    assert out.committees == (frozenset("ab"), frozenset("ac"), frozenset("bc"))


def test_matches_literal_simulation():
    rng = random.Random(11)
    for _ in range(200):
        p = random_profile(rng, n_max=9, m_max=6)
        k = rng.randint(1, p.m)
        order, loads, table = seq_literal(p, k)
        trace = seq_phragmen(p, k).certificates[frozenset(order)]
        assert list(trace.order) == order
        assert trace.loads == loads
        assert [r.scores for r in trace.rounds] == table


def test_canonical_is_among_explore_all():
    rng = random.Random(12)
    for _ in range(100):
        p = random_profile(rng, n_max=7, m_max=6, p=0.5)
        k = rng.randint(1, p.m)
        canon = seq_phragmen(p, k).committee
        assert canon in seq_phragmen(p, k, ties="all").committees


def test_clone_collapse_representatives():
    p = parse_profile("candidates: a1 a2 a3 b1 b2 b3\n3: a1 a2 a3\n2: b1 b2 b3")
    full = seq_phragmen(p, 3, ties="all")
    collapsed = seq_phragmen(p, 3, ties="all", collapse_clones=True)
    assert set(collapsed.committees) <= set(full.committees)

    def shape(s):
        return (len(s & {"a1", "a2", "a3"}), len(s & {"b1", "b2", "b3"}))

    assert {shape(s) for s in collapsed.committees} == {shape(s) for s in full.committees}


def test_trace_invariants_small():
    rng = random.Random(13)
    for _ in range(100):
        p = random_profile(rng, n_max=10, m_max=7)
        k = rng.randint(1, p.m)
        trace = seq_phragmen(p, k).certificates[seq_phragmen(p, k).committee]
        prev = (F(0),) * p.n
        prev_max = F(0)
        for j, r in enumerate(trace.rounds, start=1):
            assert sum(r.loads) == j
            assert all(a >= b for a, b in zip(r.loads, prev))
            assert r.max_load >= prev_max
            assert r.max_load == max(r.loads) == min(r.scores.values())
            assert trace.committee_after(j) >= trace.committee_after(j - 1)
            prev, prev_max = r.loads, r.max_load
