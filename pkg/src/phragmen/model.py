"""Core data model: approval profiles, load distributions and voter-load vectors.

All rule computations use :class:`fractions.Fraction`; floats never enter a
comparison. Voters are indexed from 0 internally and rendered 1-based.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, Sequence

Rational = Fraction

__all__ = [
    "Rational",
    "ProfileError",
    "LoadDistributionError",
    "ApprovalProfile",
    "LoadDistribution",
    "RuleOutcome",
    "Order",
    "parse_rational",
    "format_rational",
    "parse_profile",
    "format_profile",
    "profile_stats",
    "validate_load_distribution",
    "voter_loads",
    "leximax_compare",
    "sum_squares",
    "parse_load_distribution",
    "format_load_distribution",
    "parse_committee",
]


class ProfileError(ValueError):
    """Raised for malformed or semantically invalid profile input."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)


class LoadDistributionError(ValueError):
    """A load distribution breaks one of the four validity constraints.

    ``constraint`` names the broken rule: ``"bounds"`` (entries in [0, 1]),
    ``"approval"`` (load only on approved candidates), ``"total"`` (entries sum
    to k) or ``"column"`` (each candidate's column sums to 0 or 1). ``voter``
    and ``candidate`` locate the offending entry where that makes sense.
    """

    def __init__(self, constraint, message, voter=None, candidate=None):
        self.constraint = constraint
        self.voter = voter
        self.candidate = candidate
        super().__init__(f"{constraint} constraint violated: {message}")


def parse_rational(text: str) -> Fraction:
    """Parse ``p``, ``p/q`` or a terminating decimal into an exact Fraction."""
    text = text.strip()
    if not text:
        raise ValueError("empty rational")
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"not a rational number: {text!r}") from exc


def format_rational(value: Fraction) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


@dataclass(frozen=True)
class ApprovalProfile:
    """Candidates in roster order plus grouped ballots.

    ``ballots`` holds ``(multiplicity, approval_set)`` pairs exactly as read;
    every rule works on the expanded per-voter view :attr:`voters`.
    """

    candidates: tuple
    ballots: tuple

    def __post_init__(self):
        candidates = tuple(self.candidates)
        if len(set(candidates)) != len(candidates):
            raise ProfileError("duplicate candidate in roster")
        if not candidates:
            raise ProfileError("empty candidate roster")
        ballots = tuple((int(mult), frozenset(approved)) for mult, approved in self.ballots)
        known = set(candidates)
        for mult, approved in ballots:
            if mult < 1:
                raise ProfileError(f"multiplicity must be positive, got {mult}")
            if not approved:
                raise ProfileError("empty ballot")
            unknown = approved - known
            if unknown:
                raise ProfileError(f"unknown candidate {sorted(unknown)[0]!r}")
        approved_any = set().union(*(a for _, a in ballots)) if ballots else set()
        for cand in candidates:
            if cand not in approved_any:
                raise ProfileError(f"candidate {cand} has no approvers")
        object.__setattr__(self, "candidates", candidates)
        object.__setattr__(self, "ballots", ballots)

    @classmethod
    def from_voters(cls, candidates, voters):
        """Build a profile from one approval set per voter (multiplicity 1 each)."""
        return cls(tuple(candidates), tuple((1, frozenset(a)) for a in voters))

    @cached_property
    def voters(self) -> tuple:
        out = []
        for mult, approved in self.ballots:
            out.extend([approved] * mult)
        return tuple(out)

    @property
    def n(self) -> int:
        return len(self.voters)

    @property
    def m(self) -> int:
        return len(self.candidates)

    @cached_property
    def rank(self) -> dict:
        return {c: pos for pos, c in enumerate(self.candidates)}

    @cached_property
    def supporters(self) -> dict:
        """Map candidate -> frozenset of (0-based) voter indices approving it."""
        sup = {c: set() for c in self.candidates}
        for i, approved in enumerate(self.voters):
            for c in approved:
                sup[c].add(i)
        return {c: frozenset(s) for c, s in sup.items()}

    @cached_property
    def supporter_masks(self) -> dict:
        """Same as :attr:`supporters`, as integer bitmasks over voters."""
        masks = {}
        for c, sup in self.supporters.items():
            mask = 0
            for i in sup:
                mask |= 1 << i
            masks[c] = mask
        return masks

    def sort_candidates(self, cands: Iterable) -> tuple:
        return tuple(sorted(cands, key=self.rank.__getitem__))

    def sort_committees(self, committees: Iterable) -> tuple:
        return tuple(sorted(
            (frozenset(s) for s in committees),
            key=lambda s: sorted(self.rank[c] for c in s),
        ))

    def check_committee(self, committee, k=None) -> frozenset:
        committee = frozenset(committee)
        unknown = committee - set(self.candidates)
        if unknown:
            raise ValueError(f"unknown candidate {sorted(unknown)[0]!r} in committee")
        if k is not None and len(committee) != k:
            raise ValueError(f"committee has {len(committee)} members, expected {k}")
        return committee

    def check_k(self, k: int):
        if not isinstance(k, int) or not 1 <= k <= self.m:
            raise ValueError(f"committee size k={k} outside 1..{self.m}")


_IDENT = re.compile(r"\S+")


def _tokens(line):
    return [(m.group(0), m.start() + 1) for m in _IDENT.finditer(line)]


def parse_profile(text: str) -> ApprovalProfile:
    """Parse the line-oriented profile format.

    ::

        # comment
        candidates: a b c
        2: a
        1: b c
    """
    candidates = None
    ballots = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        if ":" not in line:
            raise ProfileError("expected '<header>:' or '<multiplicity>:'", lineno, 1)
        head, _, rest = line.partition(":")
        head_stripped = head.strip()
        rest_col = len(head) + 2
        toks = [(t, col + rest_col - 1) for t, col in _tokens(rest)]
        if head_stripped == "candidates":
            if candidates is not None:
                raise ProfileError("duplicate candidates header", lineno, 1)
            if ballots:
                raise ProfileError("candidates header must precede ballots", lineno, 1)
            names = [t for t, _ in toks]
            seen = set()
            for t, col in toks:
                if t in seen:
                    raise ProfileError(f"duplicate candidate {t!r}", lineno, col)
                seen.add(t)
            if not names:
                raise ProfileError("empty candidate roster", lineno, rest_col)
            candidates = names
            continue
        if head_stripped == "votes":
            raise ProfileError(
                "this is a party-list vote vector; use the apportion command", lineno, 1)
        if candidates is None:
            raise ProfileError("ballot before candidates header", lineno, 1)
        try:
            mult = int(head_stripped)
        except ValueError:
            col = len(head) - len(head.lstrip()) + 1
            raise ProfileError(f"invalid multiplicity {head_stripped!r}", lineno, col) from None
        if mult < 1:
            raise ProfileError(f"multiplicity must be >= 1, got {mult}", lineno, 1)
        if not toks:
            raise ProfileError("empty ballot", lineno, rest_col)
        known = set(candidates)
        for t, col in toks:
            if t not in known:
                raise ProfileError(f"unknown candidate {t!r}", lineno, col)
        ballots.append((mult, frozenset(t for t, _ in toks)))
    if candidates is None:
        raise ProfileError("missing 'candidates:' header")
    if not ballots:
        raise ProfileError("profile has no ballots")
    return ApprovalProfile(tuple(candidates), tuple(ballots))


def format_profile(profile: ApprovalProfile) -> str:
    lines = ["candidates: " + " ".join(profile.candidates)]
    for mult, approved in profile.ballots:
        lines.append(f"{mult}: " + " ".join(profile.sort_candidates(approved)))
    return "\n".join(lines) + "\n"


def profile_stats(profile: ApprovalProfile) -> tuple:
    """Return ``(s, d)``: largest ballot size and largest supporter count."""
    s = max(len(a) for a in profile.voters)
    d = max(len(v) for v in profile.supporters.values())
    return s, d


def parse_committee(text: str) -> frozenset:
    parts = [p.strip() for p in re.split(r"[,\s]+", text.strip()) if p.strip()]
    return frozenset(parts)


@dataclass(frozen=True)
class LoadDistribution:
    """Sparse voter x candidate load matrix; absent entries are zero."""

    n: int
    k: int
    entries: Mapping = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for (i, c), v in dict(self.entries).items():
            v = Fraction(v)
            if v != 0:
                clean[(int(i), c)] = v
        object.__setattr__(self, "entries", clean)

    def get(self, i, c) -> Fraction:
        return self.entries.get((i, c), Fraction(0))

    def column_sums(self) -> dict:
        sums = {}
        for (_, c), v in self.entries.items():
            sums[c] = sums.get(c, Fraction(0)) + v
        return sums


def validate_load_distribution(profile: ApprovalProfile, x: LoadDistribution) -> frozenset:
    """Check the four load-distribution constraints; return the induced committee."""
    if x.n != profile.n:
        raise LoadDistributionError("total", f"distribution has {x.n} voters, profile has {profile.n}")
    known = set(profile.candidates)
    for (i, c), v in sorted(x.entries.items(), key=lambda kv: (kv[0][0], profile.rank.get(kv[0][1], -1))):
        if c not in known:
            raise LoadDistributionError("approval", f"unknown candidate {c!r}", i, c)
        if not 0 <= i < profile.n:
            raise LoadDistributionError("bounds", f"voter index {i + 1} out of range", i, c)
        if v < 0 or v > 1:
            raise LoadDistributionError(
                "bounds", f"x[{i + 1},{c}] = {format_rational(v)} not in [0, 1]", i, c)
        if c not in profile.voters[i]:
            raise LoadDistributionError(
                "approval", f"voter {i + 1} does not approve {c} but carries {format_rational(v)}", i, c)
    total = sum(x.entries.values(), Fraction(0))
    if total != x.k:
        raise LoadDistributionError("total", f"total load {format_rational(total)} != k = {x.k}")
    committee = set()
    sums = x.column_sums()
    for c in profile.candidates:
        s = sums.get(c, Fraction(0))
        if s == 1:
            committee.add(c)
        elif s != 0:
            raise LoadDistributionError(
                "column", f"column {c} sums to {format_rational(s)}, not 0 or 1", candidate=c)
    return frozenset(committee)


def voter_loads(x: LoadDistribution) -> tuple:
    loads = [Fraction(0)] * x.n
    for (i, _), v in x.entries.items():
        loads[i] += v
    return tuple(loads)


class Order(enum.Enum):
    LESS = -1
    EQUAL = 0  # equal as multisets
    GREATER = 1


def _sorted_desc(vec):
    return sorted((Fraction(v) for v in vec), reverse=True)


def leximax_compare(y: Sequence, z: Sequence) -> Order:
    """Compare two load vectors under the leximax order."""
    if len(y) != len(z):
        raise ValueError(f"length mismatch: {len(y)} vs {len(z)}")
    for a, b in zip(_sorted_desc(y), _sorted_desc(z)):
        if a < b:
            return Order.LESS
        if a > b:
            return Order.GREATER
    return Order.EQUAL


def leximax_key(y: Sequence) -> tuple:
    """Sort key realising the leximax order (smaller key = leximax-smaller)."""
    return tuple(_sorted_desc(y))


def sum_squares(y: Sequence) -> Fraction:
    return sum((Fraction(v) * Fraction(v) for v in y), Fraction(0))


def parse_load_distribution(text: str, profile: ApprovalProfile, k: int) -> LoadDistribution:
    """Read ``<voter-index> <candidate> <num>/<den>`` triples (voters 1-based)."""
    entries = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 3:
            raise ProfileError("expected '<voter> <candidate> <load>'", lineno, 1)
        try:
            i = int(parts[0]) - 1
            value = parse_rational(parts[2])
        except ValueError as exc:
            raise ProfileError(str(exc), lineno, 1) from None
        key = (i, parts[1])
        if key in entries:
            raise ProfileError(f"duplicate entry for voter {i + 1}, {parts[1]}", lineno, 1)
        entries[key] = value
    return LoadDistribution(profile.n, k, entries)


def format_load_distribution(x: LoadDistribution, profile: ApprovalProfile | None = None) -> str:
    def order(item):
        (i, c), _ = item
        return (i, profile.rank[c] if profile else c)

    lines = [f"{i + 1} {c} {format_rational(v)}" for (i, c), v in sorted(x.entries.items(), key=order)]
    return "\n".join(lines) + ("\n" if lines else "")


@dataclass(frozen=True)
class RuleOutcome:
    """Winning committees (canonical order) with a certificate per committee."""

    rule: str
    k: int
    committees: tuple
    certificates: Mapping = field(default_factory=dict)

    @property
    def committee(self) -> frozenset:
        """The first winner in canonical order (the resolute answer)."""
        return self.committees[0]
