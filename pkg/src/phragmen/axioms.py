"""Verifiers for JR, PJR, EJR and perfect representation.

Every check returns an :class:`AxiomReport`. Violation witnesses carry the
group size parameter ``ell``, the cohesive voter group (0-based indices) and
the commonly approved candidate set, so they can be re-checked directly
against the axiom definitions. Group-size thresholds are compared as exact
integers (``k * |N'|`` against ``ell * n``).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .flow import FlowNetwork
from .model import ApprovalProfile, LoadDistribution, voter_loads

__all__ = [
    "PROVIDES", "VIOLATES", "NOT_APPLICABLE",
    "AxiomReport", "Witness", "EnumerationCapExceeded",
    "check_jr", "check_pjr", "check_ejr", "check_pr_membership", "exists_pr",
    "check_perfect_load", "check_axiom", "witness_holds",
]

PROVIDES = "provides"
VIOLATES = "violates"
NOT_APPLICABLE = "not-applicable"

DEFAULT_SEARCH_CAP = 5_000_000


class EnumerationCapExceeded(RuntimeError):
    pass


@dataclass(frozen=True)
class Witness:
    ell: int
    voters: frozenset
    candidates: frozenset


@dataclass(frozen=True)
class AxiomReport:
    axiom: str
    verdict: str
    witness: Witness | None = None
    partition: dict | None = field(default=None)  # PR: committee member -> voter set
    detail: dict | None = field(default=None)

    @property
    def ok(self) -> bool:
        return self.verdict == PROVIDES


def _group_large_enough(size, ell, n, k, threshold):
    if threshold == "hare":
        return k * size >= ell * n
    if threshold == "droop-strict":
        return (k + 1) * size > ell * n
    raise ValueError(f"unknown threshold {threshold!r}")


def witness_holds(profile, k, committee, axiom, w: Witness, threshold="hare") -> bool:
    """Re-check a violation witness literally against the axiom definition."""
    voters = [profile.voters[i] for i in w.voters]
    if not voters or not _group_large_enough(len(voters), w.ell, profile.n, k, threshold):
        return False
    common = frozenset.intersection(*voters)
    if not w.candidates <= common or len(w.candidates) < w.ell:
        return False
    if axiom == "jr":
        return w.ell == 1 and all(not (a & committee) for a in voters)
    if axiom == "pjr":
        return len(committee & frozenset().union(*voters)) < w.ell
    if axiom == "ejr":
        return all(len(a & committee) < w.ell for a in voters)
    raise ValueError(axiom)


def check_jr(profile: ApprovalProfile, k: int, committee) -> AxiomReport:
    committee = profile.check_committee(committee, k)
    unrep = [i for i, a in enumerate(profile.voters) if not a & committee]
    for c in profile.candidates:
        group = frozenset(i for i in unrep if c in profile.voters[i])
        if group and k * len(group) >= profile.n:
            return AxiomReport("jr", VIOLATES, Witness(1, group, frozenset({c})))
    return AxiomReport("jr", PROVIDES)


def _spend(budget):
    budget[0] -= 1
    if budget[0] < 0:
        raise EnumerationCapExceeded("witness search exceeded its cap")


def _cohesive_sets(profile, voters, ell, need, budget):
    """Yield ell-subsets T of candidates approved by >= ``need`` of ``voters``."""
    popular = [c for c in profile.candidates
               if sum(1 for i in voters if c in profile.voters[i]) >= need]
    for T in itertools.combinations(popular, ell):
        _spend(budget)
        Tset = frozenset(T)
        group = frozenset(i for i in voters if Tset <= profile.voters[i])
        if len(group) >= need:
            yield Tset, group


def _min_group(n, k, ell, threshold):
    """Smallest integer group size meeting the threshold for ``ell``."""
    if threshold == "hare":
        return -(-ell * n // k)
    return ell * n // (k + 1) + 1


def check_pjr(profile: ApprovalProfile, k: int, committee, threshold: str = "hare",
              cap: int = DEFAULT_SEARCH_CAP) -> AxiomReport:
    """Search (ell, T, W) for a PJR violation.

    For a violating group N* with parameter ell, W = S ∩ (∪ A_i) has fewer than
    ell members and T ⊆ ∩ A_i has ell members, so N* lies inside
    N' = {i : T ⊆ A_i, A_i ∩ S ⊆ W}, which violates PJR as well. Enlarging W
    only enlarges N', so W of size exactly ell - 1 suffices.

    ``threshold="droop-strict"`` replaces ``|N*| >= ell n / k`` with
    ``|N*| > ell n / (k + 1)``.
    """
    committee = profile.check_committee(committee, k)
    members = profile.sort_candidates(committee)
    n = profile.n
    budget = [cap]
    for ell in range(1, k + 1):
        need = _min_group(n, k, ell, threshold)
        if need > n:
            break
        for W in itertools.combinations(members, ell - 1):
            _spend(budget)
            Wset = frozenset(W)
            pool = [i for i, a in enumerate(profile.voters) if a & committee <= Wset]
            if len(pool) < need:
                continue
            for T, group in _cohesive_sets(profile, pool, ell, need, budget):
                return AxiomReport("pjr", VIOLATES, Witness(ell, group, T))
    return AxiomReport("pjr", PROVIDES)


def check_ejr(profile: ApprovalProfile, k: int, committee,
              cap: int = DEFAULT_SEARCH_CAP) -> AxiomReport:
    committee = profile.check_committee(committee, k)
    n = profile.n
    budget = [cap]
    for ell in range(1, k + 1):
        need = _min_group(n, k, ell, "hare")
        if need > n:
            break
        pool = [i for i, a in enumerate(profile.voters) if len(a & committee) < ell]
        if len(pool) < need:
            continue
        for T, group in _cohesive_sets(profile, pool, ell, need, budget):
            return AxiomReport("ejr", VIOLATES, Witness(ell, group, T))
    return AxiomReport("ejr", PROVIDES)


def _pr_partition(profile, committee, share):
    net = FlowNetwork()
    src, snk = ("src",), ("snk",)
    for c in profile.sort_candidates(committee):
        net.add_edge(src, ("c", c), share)
        for i in sorted(profile.supporters[c]):
            net.add_edge(("c", c), ("v", i), 1)
    for i in range(profile.n):
        net.add_edge(("v", i), snk, 1)
    value, flow = net.max_flow(src, snk)
    if value != profile.n:
        return None
    parts = {c: set() for c in committee}
    for (u, v), f in flow.items():
        if u[0] == "c" and v[0] == "v" and f == 1:
            parts[u[1]].add(v[1])
    return {c: frozenset(s) for c, s in parts.items()}


def check_pr_membership(profile: ApprovalProfile, k: int, committee) -> AxiomReport:
    """Does the committee admit a perfect-representation partition of the voters?"""
    committee = profile.check_committee(committee, k)
    if profile.n % k:
        return AxiomReport("pr", NOT_APPLICABLE)
    partition = _pr_partition(profile, committee, profile.n // k)
    if partition is None:
        return AxiomReport("pr", VIOLATES)
    return AxiomReport("pr", PROVIDES, partition=partition)


def exists_pr(profile: ApprovalProfile, k: int, cap: int = 10**6):
    """All committees providing perfect representation, or None when k does not divide n."""
    profile.check_k(k)
    if profile.n % k:
        return None
    from math import comb
    if comb(profile.m, k) > cap:
        raise EnumerationCapExceeded(f"C({profile.m},{k}) committees exceed cap {cap}")
    out = []
    for combo in itertools.combinations(profile.candidates, k):
        if check_pr_membership(profile, k, combo).verdict == PROVIDES:
            out.append(frozenset(combo))
    return profile.sort_committees(out)


def check_perfect_load(profile: ApprovalProfile, k: int, x: LoadDistribution) -> bool:
    target = Fraction(k, profile.n)
    return all(v == target for v in voter_loads(x))


def check_axiom(axiom, profile, k, committee, **kw) -> AxiomReport:
    funcs = {"jr": check_jr, "pjr": check_pjr, "ejr": check_ejr, "pr": check_pr_membership}
    try:
        fn = funcs[axiom]
    except KeyError:
        raise ValueError(f"unknown axiom {axiom!r}") from None
    return fn(profile, k, committee, **kw)
