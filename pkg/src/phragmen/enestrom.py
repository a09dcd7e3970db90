"""Eneström-Phragmén: weighted approval counting with quota-based weight reduction."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .model import ApprovalProfile, RuleOutcome

__all__ = ["EnestromRound", "EnestromTrace", "quota_value", "enestrom_phragmen"]

QUOTAS = ("hare", "droop")


@dataclass(frozen=True)
class EnestromRound:
    index: int
    scores: dict  # candidate -> weighted approval score
    chosen: str
    tied: tuple
    factor: Fraction  # multiplier applied to the winner's supporters
    weights: tuple  # voter weights after the round


@dataclass(frozen=True)
class EnestromTrace:
    quota: Fraction
    rounds: tuple

    @property
    def order(self) -> tuple:
        return tuple(r.chosen for r in self.rounds)


def quota_value(n: int, k: int, quota: str = "hare") -> Fraction:
    if quota == "hare":
        return Fraction(n, k)
    if quota == "droop":
        return Fraction(n, k + 1)
    raise ValueError(f"unknown quota {quota!r}")


def _scores(profile, weights, elected):
    return {
        c: sum((weights[i] for i in profile.supporters[c]), Fraction(0))
        for c in profile.candidates if c not in elected
    }


def _reweigh(profile, weights, c, v, q):
    factor = (v - q) / v if v > q else Fraction(0)
    new = list(weights)
    for i in profile.supporters[c]:
        new[i] = new[i] * factor
    return factor, tuple(new)


def enestrom_phragmen(profile: ApprovalProfile, k: int, quota: str = "hare",
                      ties: str = "canonical", collapse_clones: bool = False) -> RuleOutcome:
    """Elect ``k`` candidates by maximum weighted approval score.

    When the winning score ``v`` exceeds the quota ``q`` the winner's supporters
    keep a fraction ``(v - q) / v`` of their weight, otherwise they drop to 0.
    Tie handling mirrors :func:`phragmen.seq.seq_phragmen`.
    """
    profile.check_k(k)
    q = quota_value(profile.n, k, quota)
    ones = tuple(Fraction(1) for _ in range(profile.n))
    rule = f"enestrom-{quota}"

    def step(weights, elected, j):
        scores = _scores(profile, weights, elected)
        best = max(scores.values())
        tied = tuple(c for c in profile.candidates if c in scores and scores[c] == best)
        return scores, best, tied

    if ties == "canonical":
        weights, elected, rounds = ones, frozenset(), []
        for j in range(1, k + 1):
            scores, best, tied = step(weights, elected, j)
            chosen = tied[0]
            factor, weights = _reweigh(profile, weights, chosen, best, q)
            elected = elected | {chosen}
            rounds.append(EnestromRound(j, scores, chosen, tied, factor, weights))
        committee = frozenset(elected)
        return RuleOutcome(rule, k, (committee,), {committee: EnestromTrace(q, tuple(rounds))})
    if ties != "all":
        raise ValueError(f"unknown tie mode {ties!r}")

    found = {}
    visited = set()

    def explore(weights, elected, rounds):
        j = len(rounds) + 1
        if j > k:
            found.setdefault(elected, EnestromTrace(q, tuple(rounds)))
            return
        if (elected, weights) in visited:
            return
        visited.add((elected, weights))
        scores, best, tied = step(weights, elected, j)
        branches = tied
        if collapse_clones:
            seen, branches = set(), []
            for c in tied:
                if profile.supporters[c] not in seen:
                    seen.add(profile.supporters[c])
                    branches.append(c)
        for chosen in branches:
            factor, new_weights = _reweigh(profile, weights, chosen, best, q)
            rnd = EnestromRound(j, scores, chosen, tied, factor, new_weights)
            explore(new_weights, elected | {chosen}, rounds + [rnd])

    explore(ones, frozenset(), [])
    committees = profile.sort_committees(found)
    return RuleOutcome(rule, k, committees, {s: found[s] for s in committees})
