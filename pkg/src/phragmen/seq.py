"""Sequential Phragmén: greedy load balancing with exact rationals."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .model import ApprovalProfile, RuleOutcome

__all__ = ["SeqRound", "SeqTrace", "seq_score", "seq_phragmen", "TIE_MODES"]

TIE_MODES = ("canonical", "all")


@dataclass(frozen=True)
class SeqRound:
    index: int  # 1-based round number
    scores: dict  # candidate -> Fraction, for every candidate still unelected
    chosen: str
    tied: tuple  # candidates at the minimum, roster order
    loads: tuple  # voter loads after this round
    max_load: Fraction


@dataclass(frozen=True)
class SeqTrace:
    rounds: tuple

    @property
    def order(self) -> tuple:
        return tuple(r.chosen for r in self.rounds)

    @property
    def loads(self) -> tuple:
        return self.rounds[-1].loads if self.rounds else ()

    def committee_after(self, j: int) -> frozenset:
        return frozenset(r.chosen for r in self.rounds[:j])


def seq_score(loads, supporters) -> Fraction:
    """Max load after pouring one unit of load evenly over ``supporters``.

    With a strict subset of a candidate's supporters this gives the
    restricted score used when reasoning about cohesive groups.
    """
    supporters = list(supporters)
    if not supporters:
        raise ValueError("supporter set must be non-empty")
    return (1 + sum((loads[i] for i in supporters), Fraction(0))) / len(supporters)


def _round(profile, loads, elected, j):
    scores = {}
    for c in profile.candidates:
        if c in elected:
            continue
        scores[c] = seq_score(loads, profile.supporters[c])
    best = min(scores.values())
    tied = tuple(c for c in profile.candidates if c in scores and scores[c] == best)
    return scores, best, tied


def _elect(profile, loads, c, score):
    new = list(loads)
    for i in profile.supporters[c]:
        new[i] = score
    return tuple(new)


def _clone_representatives(profile, tied):
    """Drop tied candidates whose supporter set repeats an earlier one."""
    seen = set()
    out = []
    for c in tied:
        key = profile.supporters[c]
        if key not in seen:
            seen.add(key)
            out.append(c)
    return tuple(out)


def seq_phragmen(profile: ApprovalProfile, k: int, ties: str = "canonical",
                 collapse_clones: bool = False) -> RuleOutcome:
    """Run seq-Phragmén for ``k`` rounds.

    ``ties="canonical"`` breaks ties by roster order and yields one committee.
    ``ties="all"`` follows every tied branch and returns all reachable final
    committees (deduplicated), each with the trace of the first branch, in
    canonical order, that reached it. ``collapse_clones`` restricts branching
    to one candidate per distinct supporter set; the outcome then lists one
    representative per class of committees that differ only by swapping
    candidates with identical supporters.
    """
    profile.check_k(k)
    if ties not in TIE_MODES:
        raise ValueError(f"unknown tie mode {ties!r}")
    zero = tuple(Fraction(0) for _ in range(profile.n))

    if ties == "canonical":
        loads, elected, rounds = zero, frozenset(), []
        for j in range(1, k + 1):
            scores, best, tied = _round(profile, loads, elected, j)
            chosen = tied[0]
            loads = _elect(profile, loads, chosen, best)
            elected = elected | {chosen}
            rounds.append(SeqRound(j, scores, chosen, tied, loads, max(loads)))
        committee = frozenset(elected)
        return RuleOutcome("seq", k, (committee,), {committee: SeqTrace(tuple(rounds))})

    found = {}
    visited = set()

    def explore(loads, elected, rounds):
        j = len(rounds) + 1
        if j > k:
            found.setdefault(elected, SeqTrace(tuple(rounds)))
            return
        state = (elected, loads)
        if state in visited:
            return
        visited.add(state)
        scores, best, tied = _round(profile, loads, elected, j)
        branches = _clone_representatives(profile, tied) if collapse_clones else tied
        for chosen in branches:
            new_loads = _elect(profile, loads, chosen, best)
            rnd = SeqRound(j, scores, chosen, tied, new_loads, max(new_loads))
            explore(new_loads, elected | {chosen}, rounds + [rnd])

    explore(zero, frozenset(), [])
    committees = profile.sort_committees(found)
    return RuleOutcome("seq", k, committees, {s: found[s] for s in committees})
