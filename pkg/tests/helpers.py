"""Random instance generators and brute-force oracles shared by the tests.

The oracles deliberately avoid the library's algorithms: they evaluate the
definitions directly by enumeration (voter subsets, assignments, Hall-type
conditions) so that agreement is meaningful.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction
from pathlib import Path

from phragmen.model import ApprovalProfile, LoadDistribution, parse_profile

DATA = Path(__file__).resolve().parents[1] / "src" / "phragmen" / "data"
LETTERS = "abcdefghijklmnopqrstuvwxyz"


def load(name):
    return parse_profile((DATA / f"{name}.txt").read_text(encoding="utf-8"))


def random_profile(rng: random.Random, n_max=12, m_max=8, n_min=1, m_min=1, p=None):
    """Random approval profile; every ballot non-empty, every candidate approved."""
    while True:
        n = rng.randint(n_min, n_max)
        m = rng.randint(m_min, m_max)
        prob = p if p is not None else rng.uniform(0.3, 0.7)
        cands = tuple(LETTERS[:m])
        voters = []
        for _ in range(n):
            a = frozenset(c for c in cands if rng.random() < prob)
            voters.append(a or frozenset({rng.choice(cands)}))
        if set().union(*voters) == set(cands):
            return ApprovalProfile.from_voters(cands, voters)


def random_committee(rng, profile, k):
    return frozenset(rng.sample(profile.candidates, k))


# -- loads -------------------------------------------------------------------

def covered(profile, T):
    out = set()
    for c in T:
        out |= profile.supporters[c]
    return frozenset(out)


def subsets(items, nonempty=True):
    items = list(items)
    for r in range(1 if nonempty else 0, len(items) + 1):
        yield from itertools.combinations(items, r)


def max_ratio(profile, S):
    """max over non-empty T of |T| / |N(T)| by full enumeration."""
    return max(Fraction(len(T), len(covered(profile, T))) for T in subsets(S))


def peel_oracle(profile, S):
    """Voter-side recursion: repeatedly take the largest T at maximum ratio.

    Works on explicit candidate subsets and explicit voter sets (no bitmasks,
    no flow) and returns the voter-load vector.
    """
    loads = [Fraction(0)] * profile.n
    remaining = set(S)
    removed = set()
    while remaining:
        best, best_T = None, None
        for T in subsets(sorted(remaining)):
            N = covered(profile, T) - removed
            r = Fraction(len(T), len(N))
            if best is None or r > best or (r == best and len(T) > len(best_T)):
                best, best_T = r, T
        N = covered(profile, best_T) - removed
        for i in N:
            loads[i] = best
        removed |= N
        remaining -= set(best_T)
    return tuple(loads)


def feasible_vector(profile, S, xbar):
    """Can the committee's unit loads be spread so voter i gets exactly xbar[i]?

    Supply/demand version of Hall's condition: every T ⊆ S needs
    |T| <= sum of xbar over N(T), every voter outside N(S) carries 0, and the
    total equals |S|.
    """
    if sum(xbar) != len(S):
        return False
    NS = covered(profile, S)
    if any(xbar[i] != 0 for i in range(profile.n) if i not in NS):
        return False
    if any(v < 0 for v in xbar):
        return False
    return all(len(T) <= sum(xbar[i] for i in covered(profile, T)) for T in subsets(S))


def random_distribution(rng, profile, S):
    """A random valid distribution on S: random positive rational weights per column."""
    entries = {}
    for c in S:
        sup = sorted(profile.supporters[c])
        chosen = [i for i in sup if rng.random() < 0.7] or [rng.choice(sup)]
        weights = [rng.randint(1, 6) for _ in chosen]
        total = sum(weights)
        for i, w in zip(chosen, weights):
            entries[(i, c)] = Fraction(w, total)
    return LoadDistribution(profile.n, len(S), entries)


# -- rules, literally ---------------------------------------------------------

def seq_literal(profile, k):
    """seq-Phragmén straight from the score formula, roster-order ties."""
    loads = [Fraction(0)] * profile.n
    chosen = []
    table = []
    for _ in range(k):
        scores = {}
        for c in profile.candidates:
            if c in chosen:
                continue
            sup = [i for i in range(profile.n) if c in profile.voters[i]]
            scores[c] = (1 + sum(loads[i] for i in sup)) / Fraction(len(sup))
        best = min(scores.values())
        c = next(c for c in profile.candidates if c in scores and scores[c] == best)
        for i in range(profile.n):
            if c in profile.voters[i]:
                loads[i] = best
        chosen.append(c)
        table.append(scores)
    return chosen, tuple(loads), table


def enestrom_literal(profile, k, q):
    w = [Fraction(1)] * profile.n
    chosen = []
    log = []
    for _ in range(k):
        scores = {c: sum((w[i] for i in range(profile.n) if c in profile.voters[i]), Fraction(0))
                  for c in profile.candidates if c not in chosen}
        v = max(scores.values())
        c = next(c for c in profile.candidates if c in scores and scores[c] == v)
        factor = (v - q) / v if v > q else Fraction(0)
        for i in range(profile.n):
            if c in profile.voters[i]:
                w[i] *= factor
        chosen.append(c)
        log.append((scores, c, factor, tuple(w)))
    return chosen, log


# -- axioms by voter-subset enumeration -------------------------------------

def axiom_oracle(profile, k, S, axiom):
    """Literal Definition check over all voter groups; returns True iff satisfied."""
    n = profile.n
    S = frozenset(S)
    for r in range(1, n + 1):
        for group in itertools.combinations(range(n), r):
            ballots = [profile.voters[i] for i in group]
            common = frozenset.intersection(*ballots)
            for ell in range(1, k + 1):
                if k * r < ell * n or len(common) < ell:
                    continue
                if axiom == "jr" and ell == 1 and all(not (a & S) for a in ballots):
                    return False
                if axiom == "pjr" and len(S & frozenset().union(*ballots)) < ell:
                    return False
                if axiom == "ejr" and all(len(a & S) < ell for a in ballots):
                    return False
    return True


def pr_oracle(profile, k, S):
    """Perfect representation by enumerating voter-to-member assignments."""
    if profile.n % k:
        return None
    share = profile.n // k
    members = sorted(S)
    options = [[c for c in members if c in profile.voters[i]] for i in range(profile.n)]
    for pick in itertools.product(*options):
        if all(pick.count(c) == share for c in members):
            return True
    return False


# -- P(y) brute force --------------------------------------------------------

def step_oracle(xbar, y, k):
    """Optimal eps of P(y) for fixed voter loads by enumerating binaries e, s, t.

    Literal reading of the constraints: e assigns voters injectively to
    positions other than t, the rest have s_i = 1; the big-M rows then reduce
    to xbar_i <= y_j on assigned pairs and eps <= y_t - xbar_i on s-voters.
    """
    n = len(y)
    y = sorted(y, reverse=True)
    best = None
    for t in range(n):
        for assign in _injective(n, [j for j in range(n) if j != t]):
            if all(xbar[i] <= y[j] for i, j in enumerate(assign) if j is not None):
                group = [i for i, j in enumerate(assign) if j is None]
                if not group:
                    continue
                eps = min(Fraction(k), min(y[t] - xbar[i] for i in group))
                if eps >= 0 and (best is None or eps > best):
                    best = eps
    return best


def _injective(n, positions):
    """Maps voter -> position or None, injective on positions."""
    out = [((), frozenset())]
    for i in range(n):
        nxt = []
        for assign, used in out:
            nxt.append((assign + (None,), used))
            for j in positions:
                if j not in used:
                    nxt.append((assign + (j,), used | {j}))
        out = nxt
    return [a for a, _ in out]


# -- apportionment by definition ---------------------------------------------

def compositions(k, p):
    for cuts in itertools.combinations(range(k + p - 1), p - 1):
        prev, z = -1, []
        for c in cuts + (k + p - 1,):
            z.append(c - prev - 1)
            prev = c
        yield tuple(z)


def divisor_oracle(votes, k, d):
    """All z with min over seated parties of v/d(z-1) >= max over parties of v/d(z)."""
    out = set()
    for z in compositions(k, len(votes)):
        low = min((Fraction(v) / d(zj - 1) for v, zj in zip(votes, z) if zj > 0), default=None)
        high = max(Fraction(v) / d(zj) for v, zj in zip(votes, z))
        if low is None or low >= high:
            out.add(z)
    return out
