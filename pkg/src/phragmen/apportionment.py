"""Party-list profiles and the apportionment methods induced by Phragmén's rules.

Seat distributions are tuples of ints, one per party. Every method returns
a frozenset holding all distributions compatible with its tie structure.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .axioms import AxiomReport, PROVIDES, VIOLATES
from .model import ApprovalProfile, ProfileError

__all__ = [
    "parse_votes", "party_list_profile", "detect_party_list",
    "dhondt", "sainte_lague", "largest_remainder", "divisor_method",
    "induced_apportionment", "check_lower_quota", "seat_counts", "INDUCED_RULES",
]

INDUCED_RULES = ("seq", "leximax", "var", "enestrom-hare", "enestrom-droop")


def parse_votes(text: str) -> tuple:
    """Parse ``67,12,11,10`` or a ``votes: 67 12 11 10`` line."""
    body = text.strip()
    for line in body.splitlines():
        line = line.split("#", 1)[0].strip()
        if line.startswith("votes:"):
            body = line[len("votes:"):]
            break
    parts = [p for p in body.replace(",", " ").split() if p]
    if not parts:
        raise ProfileError("empty vote vector")
    try:
        votes = tuple(int(p) for p in parts)
    except ValueError:
        raise ProfileError(f"vote counts must be integers: {body.strip()!r}") from None
    if any(v < 1 for v in votes):
        raise ProfileError("vote counts must be >= 1")
    return votes


def _check_votes(votes):
    votes = tuple(int(v) for v in votes)
    if not votes or any(v < 1 for v in votes):
        raise ValueError("vote vector entries must be positive integers")
    return votes


def party_list_profile(votes, k: int) -> tuple:
    """Canonical party-list profile: party j gets k candidates ``p{j}_1..p{j}_k``.

    Returns ``(profile, parties)`` with parties as tuples of candidate ids.
    """
    votes = _check_votes(votes)
    parties = tuple(tuple(f"p{j + 1}_{r + 1}" for r in range(k)) for j in range(len(votes)))
    candidates = tuple(c for party in parties for c in party)
    ballots = tuple((v, frozenset(party)) for v, party in zip(votes, parties))
    return ApprovalProfile(candidates, ballots), parties


def detect_party_list(profile: ApprovalProfile, k: int):
    """Return ``(parties, votes)`` if the profile is a party-list profile for k, else None.

    Parties are listed in order of their first roster member.
    """
    blocks = {}
    for approved in profile.voters:
        blocks[approved] = blocks.get(approved, 0) + 1
    seen = set()
    for block in blocks:
        if block & seen:
            return None
        seen |= block
        if len(block) < k:
            return None
    if seen != set(profile.candidates):
        return None
    order = sorted(blocks, key=lambda b: min(profile.rank[c] for c in b))
    parties = tuple(profile.sort_candidates(b) for b in order)
    return parties, tuple(blocks[b] for b in order)


def _distribute_ties(base, tied, remaining):
    out = set()
    for chosen in itertools.combinations(tied, remaining):
        z = list(base)
        for j in chosen:
            z[j] += 1
        out.add(tuple(z))
    return out


def divisor_method(votes, k: int, divisor) -> frozenset:
    """Highest-averages method: seats go to the k largest quotients v_j / divisor(t)."""
    votes = _check_votes(votes)
    if k < 0:
        raise ValueError("k must be non-negative")
    if k == 0:
        return frozenset({(0,) * len(votes)})
    quotients = []
    for j, v in enumerate(votes):
        for t in range(k):
            quotients.append((Fraction(v) / divisor(t), j))
    quotients.sort(key=lambda q: q[0], reverse=True)
    cutoff = quotients[k - 1][0]
    base = [0] * len(votes)
    for q, j in quotients:
        if q > cutoff:
            base[j] += 1
    # each party has at most one quotient equal to the cutoff
    tied = [j for q, j in quotients if q == cutoff]
    return frozenset(_distribute_ties(base, tied, k - sum(base)))


def dhondt(votes, k: int) -> frozenset:
    return divisor_method(votes, k, lambda t: t + 1)


def sainte_lague(votes, k: int) -> frozenset:
    return divisor_method(votes, k, lambda t: 2 * t + 1)


def largest_remainder(votes, k: int, quota: str = "hare") -> frozenset:
    """Quota floors plus one extra seat for each of the largest remainders.

    With the Droop quota floors can over-allocate; this raises ``ValueError``.
    """
    votes = _check_votes(votes)
    if k < 0:
        raise ValueError("k must be non-negative")
    n = sum(votes)
    if quota == "hare":
        q = Fraction(n, k) if k else None
    elif quota == "droop":
        q = Fraction(n, k + 1)
    else:
        raise ValueError(f"unknown quota {quota!r}")
    if k == 0:
        return frozenset({(0,) * len(votes)})
    shares = [Fraction(v) / q for v in votes]
    base = [int(s) for s in shares]  # floor for non-negative fractions
    remaining = k - sum(base)
    if remaining < 0:
        raise ValueError("quota floors exceed the house size")
    rem = [s - b for s, b in zip(shares, base)]
    if remaining == 0:
        return frozenset({tuple(base)})
    order = sorted(range(len(votes)), key=lambda j: rem[j], reverse=True)
    cutoff = rem[order[remaining - 1]]
    sure = [j for j in range(len(votes)) if rem[j] > cutoff]
    tied = [j for j in range(len(votes)) if rem[j] == cutoff]
    for j in sure:
        base[j] += 1
    return frozenset(_distribute_ties(base, tied, remaining - len(sure)))


def seat_counts(committee, parties) -> tuple:
    return tuple(len(set(party) & set(committee)) for party in parties)


def _representative_committees(parties, k):
    """One committee per seat distribution (first z_j candidates of each party)."""
    p = len(parties)
    for cuts in itertools.combinations(range(k + p - 1), p - 1):
        prev, z = -1, []
        for c in cuts + (k + p - 1,):
            z.append(c - prev - 1)
            prev = c
        yield frozenset(c for party, zj in zip(parties, z) for c in party[:zj])


def induced_apportionment(rule: str, votes, k: int, cap=None) -> frozenset:
    """Seat distributions of the committees the rule selects on the party-list profile.

    Candidates of one party are clones, so the rules only need to be run on one
    representative per seat distribution.
    """
    from .enestrom import enestrom_phragmen
    from .optrules import leximax_phragmen, var_phragmen
    from .seq import seq_phragmen

    if rule not in INDUCED_RULES:
        raise ValueError(f"unknown rule {rule!r}; expected one of {', '.join(INDUCED_RULES)}")
    if k < 1:
        raise ValueError("k must be >= 1")
    profile, parties = party_list_profile(votes, k)
    if rule == "seq":
        outcome = seq_phragmen(profile, k, ties="all", collapse_clones=True)
    elif rule.startswith("enestrom"):
        outcome = enestrom_phragmen(profile, k, quota=rule.split("-")[1], ties="all",
                                    collapse_clones=True)
    else:
        fn = leximax_phragmen if rule == "leximax" else var_phragmen
        outcome = fn(profile, k, committees=list(_representative_committees(parties, k)))
    return frozenset(seat_counts(s, parties) for s in outcome.committees)


def check_lower_quota(votes, k: int, seats) -> AxiomReport:
    """Does every party get at least floor(k * v_j / n) seats?"""
    votes = _check_votes(votes)
    seats = tuple(seats)
    if len(seats) != len(votes):
        raise ValueError("seat distribution and vote vector differ in length")
    n = sum(votes)
    for j, (v, z) in enumerate(zip(votes, seats)):
        floor = k * v // n
        if z < floor:
            return AxiomReport("lower-quota", VIOLATES,
                               detail={"party": j + 1, "seats": z, "lower_quota": floor})
    return AxiomReport("lower-quota", PROVIDES)
