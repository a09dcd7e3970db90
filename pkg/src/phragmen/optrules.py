"""leximax-Phragmén and var-Phragmén.

Exact winners come from enumerating every size-k committee and comparing the
optimally balanced load vectors. The mixed-integer models that a solver would
use instead are available as :class:`SolverModel` objects; see
:mod:`phragmen.lpformat` for writing them to disk and :func:`algorithm1_driver`
for the iterative leximax procedure with a pluggable step solver.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Callable

from .balance import balanced_loads, load_vector
from .model import ApprovalProfile, LoadDistribution, RuleOutcome, leximax_key, sum_squares, \
    validate_load_distribution, voter_loads

__all__ = [
    "DEFAULT_ENUM_CAP", "EnumerationCapExceeded", "SolverContractError",
    "Variable", "LinearConstraint", "SolverModel",
    "enumeration_cap", "leximax_phragmen", "var_phragmen",
    "emit_milp_step", "emit_miqp", "step_epsilon", "reference_step_solver",
    "algorithm1_driver", "DriverLog", "StepSolver",
]

DEFAULT_ENUM_CAP = 10**6
ENUM_CAP_ENV = "PHRAGMEN_ENUM_CAP"


class EnumerationCapExceeded(RuntimeError):
    pass


class SolverContractError(RuntimeError):
    pass


def enumeration_cap(cap=None) -> int:
    if cap is not None:
        return int(cap)
    env = os.environ.get(ENUM_CAP_ENV)
    return int(env) if env else DEFAULT_ENUM_CAP


def _committees(profile, k, cap, committees):
    if committees is not None:
        return [profile.check_committee(s, k) for s in committees]
    total = comb(profile.m, k)
    if total > enumeration_cap(cap):
        raise EnumerationCapExceeded(
            f"C({profile.m},{k}) = {total} committees exceeds the enumeration cap; "
            "raise the cap or export a solver model instead")
    return [frozenset(s) for s in itertools.combinations(profile.candidates, k)]


def _optimize(profile, k, key, rule, cap, committees):
    profile.check_k(k)
    best_key, winners = None, []
    for s in _committees(profile, k, cap, committees):
        kv = key(load_vector(profile, s))
        if best_key is None or kv < best_key:
            best_key, winners = kv, [s]
        elif kv == best_key:
            winners.append(s)
    ordered = profile.sort_committees(winners)
    return RuleOutcome(rule, k, ordered, {s: balanced_loads(profile, s) for s in ordered})


def leximax_phragmen(profile: ApprovalProfile, k: int, cap=None, committees=None) -> RuleOutcome:
    """All committees whose balanced load vector is leximax-minimal.

    ``committees`` restricts the search to the given candidate committees
    (used when symmetry makes the full enumeration redundant).
    """
    return _optimize(profile, k, leximax_key, "leximax", cap, committees)


def var_phragmen(profile: ApprovalProfile, k: int, cap=None, committees=None) -> RuleOutcome:
    """All committees minimising the exact sum of squared voter loads."""
    return _optimize(profile, k, sum_squares, "var", cap, committees)


# -- solver models ---------------------------------------------------------

@dataclass(frozen=True)
class Variable:
    name: str
    lower: Fraction
    upper: Fraction
    kind: str = "continuous"  # or "binary"


@dataclass(frozen=True)
class LinearConstraint:
    name: str
    family: str  # constraint family, e.g. "slot-cap"
    coefficients: tuple  # ((variable name, Fraction), ...)
    sense: str  # "<=", "=", ">="
    rhs: Fraction


@dataclass(frozen=True)
class SolverModel:
    kind: str  # "milp-leximax-step" or "miqp-variance"
    variables: tuple
    constraints: tuple
    objective_sense: str
    linear_objective: tuple = ()  # ((name, coef), ...)
    quadratic_objective: tuple = ()  # ((name1, name2, coef), ...)
    y: tuple = ()
    k: int = 0
    voters: int = 0
    candidates: tuple = ()
    meta: dict = field(default_factory=dict)

    def variables_with_prefix(self, prefix):
        return [v for v in self.variables if v.name.startswith(prefix)]

    def constraint_counts(self) -> dict:
        counts = {}
        for c in self.constraints:
            counts[c.family] = counts.get(c.family, 0) + 1
        return counts


def xname(i, c):
    return f"x_{i + 1}_{c}"


def _load_distribution_part(profile, k):
    """Variables x, selection indicators w, and the load-distribution constraints."""
    n = profile.n
    zero, one = Fraction(0), Fraction(1)
    variables = [Variable(xname(i, c), zero, one) for i in range(n) for c in profile.candidates]
    variables += [Variable(f"w_{c}", zero, one, "binary") for c in profile.candidates]
    cons = []
    for i in range(n):
        for c in profile.candidates:
            if c not in profile.voters[i]:
                cons.append(LinearConstraint(f"appr_{i + 1}_{c}", "approval", ((xname(i, c), one),), "=", zero))
    cons.append(LinearConstraint(
        "total", "total", tuple((xname(i, c), one) for i in range(n) for c in profile.candidates),
        "=", Fraction(k)))
    for c in profile.candidates:
        coeffs = tuple((xname(i, c), one) for i in range(n)) + ((f"w_{c}", -one),)
        cons.append(LinearConstraint(f"col_{c}", "column", coeffs, "=", zero))
    return variables, cons


def _row(profile, i, coef=Fraction(1)):
    return tuple((xname(i, c), coef) for c in profile.candidates)


def emit_milp_step(profile: ApprovalProfile, k: int, y) -> SolverModel:
    """Model P(y): maximise eps over load distributions leximax-improving on ``y``."""
    n = profile.n
    if len(y) != n:
        raise ValueError(f"y has {len(y)} entries, profile has {n} voters")
    y = tuple(sorted((Fraction(v) for v in y), reverse=True))
    K = Fraction(k)
    zero, one = Fraction(0), Fraction(1)
    variables, cons = _load_distribution_part(profile, k)
    N = range(n)
    variables += [Variable(f"e_{i + 1}_{j + 1}", zero, one, "binary") for i in N for j in N]
    variables += [Variable(f"s_{i + 1}", zero, one, "binary") for i in N]
    variables += [Variable(f"t_{j + 1}", zero, one, "binary") for j in N]
    variables.append(Variable("eps", zero, K))
    for i in N:
        coeffs = ((f"s_{i + 1}", one),) + tuple((f"e_{i + 1}_{j + 1}", one) for j in N)
        cons.append(LinearConstraint(f"voter_{i + 1}", "voter-slot", coeffs, "=", one))
    for j in N:
        coeffs = ((f"t_{j + 1}", one),) + tuple((f"e_{i + 1}_{j + 1}", one) for i in N)
        cons.append(LinearConstraint(f"slot_{j + 1}", "slot-use", coeffs, "<=", one))
    cons.append(LinearConstraint("improve", "improve-index", tuple((f"t_{j + 1}", one) for j in N), "=", one))
    # matched voters stay within their slot: xbar_i - k (1 - e_ij) <= y_j
    for i in N:
        for j in N:
            coeffs = _row(profile, i) + ((f"e_{i + 1}_{j + 1}", K),)
            cons.append(LinearConstraint(f"cap_{i + 1}_{j + 1}", "slot-cap", coeffs, "<=", y[j] + K))
    # unmatched voters sit eps below the improved slot: xbar_i - k (2 - s_i - t_j) <= y_j - eps
    for i in N:
        for j in N:
            coeffs = _row(profile, i) + ((f"s_{i + 1}", K), (f"t_{j + 1}", K), ("eps", one))
            cons.append(LinearConstraint(f"gain_{i + 1}_{j + 1}", "improve-cap", coeffs, "<=", y[j] + 2 * K))
    return SolverModel(
        "milp-leximax-step", tuple(variables), tuple(cons), "max",
        linear_objective=(("eps", one),), y=y, k=k, voters=n, candidates=profile.candidates)


def emit_miqp(profile: ApprovalProfile, k: int) -> SolverModel:
    """Quadratic model whose optima are var-Phragmén load distributions."""
    profile.check_k(k)
    variables, cons = _load_distribution_part(profile, k)
    quad = []
    for i in range(profile.n):
        names = [xname(i, c) for c in profile.candidates]
        for a, b in itertools.combinations_with_replacement(range(len(names)), 2):
            quad.append((names[a], names[b], Fraction(1 if a == b else 2)))
    return SolverModel(
        "miqp-variance", tuple(variables), tuple(cons), "min",
        quadratic_objective=tuple(quad), k=k, voters=profile.n, candidates=profile.candidates)


# -- iterative leximax driver -----------------------------------------------------------

StepSolver = Callable[[SolverModel], tuple]


def _fits(xs, caps):
    return all(x <= c for x, c in zip(xs, sorted(caps, reverse=True)))


def step_epsilon(loads, y):
    """Largest eps for which the voter loads ``loads`` are feasible in P(y).

    A solution of P(y) picks an improvement index t, a non-empty voter set
    capped at ``y_t - eps`` and an injective assignment of the other voters to
    indices j != t, each capped at ``y_j``. Leaving the smallest y-entries
    unassigned is optimal, so for every t and group size the caps are fixed up
    to the level L = y_t - eps, and the least feasible L is one of the loads.
    Returns None when no eps in [0, k] is feasible.
    """
    xs = sorted(loads, reverse=True)
    ys = sorted(y, reverse=True)
    n = len(ys)
    levels = sorted(set(xs))
    best = None
    for t in range(n):
        others = [ys[j] for j in range(n) if j != t]
        for size in range(1, n + 1):
            fixed = others[:n - size]
            for level in levels:
                if level > ys[t]:
                    break
                if _fits(xs, fixed + [level] * size):
                    eps = ys[t] - level
                    if best is None or eps > best:
                        best = eps
                    break
    return best


def reference_step_solver(profile: ApprovalProfile, cap=None) -> StepSolver:
    """Exact step solver by committee enumeration over balanced load vectors.

    For each committee only the optimally balanced distribution is scored.
    Within the iterative driver every y handed over agrees with the leximax optimum on
    the positions that matter, and there the balanced vector of a leximax
    winner attains the optimal eps. Among eps-optimal solutions the
    leximax-smallest is returned.
    """
    def solve(model: SolverModel):
        if model.kind != "milp-leximax-step":
            raise ValueError(f"reference solver handles milp-leximax-step, got {model.kind}")
        best = None
        for s in _committees(profile, model.k, cap, None):
            cert = balanced_loads(profile, s)
            eps = step_epsilon(cert.loads, model.y)
            if eps is None:
                continue
            rank = (-eps, leximax_key(cert.loads))
            if best is None or rank < best[0]:
                best = (rank, cert.distribution, eps)
        if best is None:
            raise SolverContractError("P(y) infeasible")
        return best[1], min(best[2], Fraction(model.k))

    return solve


@dataclass
class DriverLog:
    solves: list = field(default_factory=list)  # (y, eps) per solve


def algorithm1_driver(profile: ApprovalProfile, k: int, solver: StepSolver,
                      log: DriverLog | None = None) -> RuleOutcome:
    """Iterative leximax computation via repeated P(y) solves.

    Starts from y = (k, 0, ..., 0); after step ell the largest ell loads are
    optimal and are asserted never to change afterwards.
    """
    profile.check_k(k)
    n = profile.n
    log = log if log is not None else DriverLog()

    def call(y):
        x, eps = solver(emit_milp_step(profile, k, y))
        if not isinstance(x, LoadDistribution):
            raise SolverContractError("step solver must return a LoadDistribution")
        eps = Fraction(eps)
        if eps < 0:
            raise SolverContractError(f"step solver returned eps = {eps} < 0")
        validate_load_distribution(profile, x)
        log.solves.append((tuple(y), eps))
        return x, eps

    y = (Fraction(k),) + (Fraction(0),) * (n - 1)
    fixed = ()
    x = None
    for ell in range(1, n + 1):
        x, eps = call(y)
        xbar = sorted(voter_loads(x), reverse=True)
        if tuple(xbar[:len(fixed)]) != fixed:
            raise AssertionError(f"optimal prefix changed at step {ell}: {fixed} -> {xbar[:len(fixed)]}")
        fixed = tuple(xbar[:ell])
        if eps == 0:
            _, eps2 = call(tuple(xbar))
            if eps2 == 0:
                break
        y = tuple(xbar[:ell + 1]) + (Fraction(0),) * (n - ell - 1)
    committee = validate_load_distribution(profile, x)
    return RuleOutcome("leximax-milp", k, (committee,), {committee: x})
