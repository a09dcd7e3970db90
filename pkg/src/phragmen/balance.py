"""Optimally balanced loads for a fixed committee.

For a fixed committee the achievable voter-load vectors form the base
polytope of the coverage function on voters. Its most balanced base is both
leximax-minimal and minimises the sum of squared loads, and it is obtained
by repeatedly peeling off the densest candidate subset ``T`` (maximising
``|T| / |N(T)|``), fixing its supporters at that ratio, and recursing on the
rest with supporter sets restricted to the remaining voters.

Subset enumeration is exponential in the committee size only.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .flow import FlowNetwork
from .model import ApprovalProfile, LoadDistribution, validate_load_distribution

__all__ = ["PeelingLevel", "BalanceCertificate", "balanced_loads", "load_vector", "min_max_load",
           "peel"]


@dataclass(frozen=True)
class PeelingLevel:
    candidates: frozenset
    voters: frozenset  # 0-based voter indices
    level: Fraction


@dataclass(frozen=True)
class BalanceCertificate:
    committee: frozenset
    loads: tuple
    distribution: LoadDistribution
    levels: tuple


def _bits(mask):
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def _densest(cands, masks):
    """Union of all subsets T of ``cands`` maximising |T| / |N(T)|.

    ``masks`` maps candidate -> supporter bitmask restricted to live voters.
    """
    cands = list(cands)
    size = len(cands)
    best = None
    union_t = 0
    # cover[t] = supporter union of subset t, built incrementally
    cover = [0] * (1 << size)
    for t in range(1, 1 << size):
        low = t & -t
        idx = low.bit_length() - 1
        cover[t] = cover[t ^ low] | masks[cands[idx]]
        ratio = Fraction(t.bit_count(), cover[t].bit_count())
        if best is None or ratio > best:
            best = ratio
            union_t = t
        elif ratio == best:
            union_t |= t
    chosen = frozenset(cands[i] for i in _bits(union_t))
    return chosen, cover[union_t], best


def peel(profile: ApprovalProfile, committee) -> tuple:
    """Return the peeling levels for ``committee`` in decreasing level order."""
    remaining = set(committee)
    live = (1 << profile.n) - 1
    levels = []
    while remaining:
        masks = {c: profile.supporter_masks[c] & live for c in remaining}
        for c, mask in masks.items():
            if not mask:
                raise AssertionError(f"candidate {c} has no remaining supporters")
        ordered = profile.sort_candidates(remaining)
        top, voters_mask, level = _densest(ordered, masks)
        levels.append(PeelingLevel(top, frozenset(_bits(voters_mask)), level))
        remaining -= top
        live &= ~voters_mask
    return tuple(levels)


def _level_witness(profile, level):
    """Spread each candidate's unit load so every level voter gets ``level.level``."""
    net = FlowNetwork()
    src, snk = ("src",), ("snk",)
    for c in profile.sort_candidates(level.candidates):
        net.add_edge(src, ("c", c), Fraction(1))
        for i in sorted(profile.supporters[c] & level.voters):
            net.add_edge(("c", c), ("v", i))
    for i in sorted(level.voters):
        net.add_edge(("v", i), snk, level.level)
    value, flow = net.max_flow(src, snk)
    if value != len(level.candidates):
        raise AssertionError("peeling level is not saturable")
    entries = {}
    for (u, v), f in flow.items():
        if u[0] == "c" and v[0] == "v":
            entries[(v[1], u[1])] = f
    return entries


def balanced_loads(profile: ApprovalProfile, committee) -> BalanceCertificate:
    """Optimally balanced voter loads for a fixed committee, with a witness distribution."""
    committee = profile.check_committee(committee)
    levels = peel(profile, committee)
    loads = [Fraction(0)] * profile.n
    entries = {}
    for lvl in levels:
        for i in lvl.voters:
            loads[i] = lvl.level
        entries.update(_level_witness(profile, lvl))
    dist = LoadDistribution(profile.n, len(committee), entries)
    assert validate_load_distribution(profile, dist) == committee
    return BalanceCertificate(committee, tuple(loads), dist, levels)


def load_vector(profile: ApprovalProfile, committee) -> tuple:
    """Balanced voter loads only; skips the witness distribution."""
    committee = profile.check_committee(committee)
    loads = [Fraction(0)] * profile.n
    for lvl in peel(profile, committee):
        for i in lvl.voters:
            loads[i] = lvl.level
    return tuple(loads)


def min_max_load(profile: ApprovalProfile, committee) -> Fraction:
    committee = profile.check_committee(committee)
    if not committee:
        return Fraction(0)
    return peel(profile, committee)[0].level
