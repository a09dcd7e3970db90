"""Bundled worked examples and a runner that checks them against frozen values.

Expected values live in ``data/expected.json`` as exact rational strings; the
seq score table for the 24-voter instance lives in ``data/seq_score_table.tsv`` exactly
as printed (3 decimals, ``–`` for already elected candidates). Pointing
``corpus_dir`` at a modified copy of the data directory is how the negative
control is run.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from decimal import Decimal
from pathlib import Path

from .apportionment import check_lower_quota, induced_apportionment
from .axioms import check_axiom, exists_pr, witness_holds
from .balance import balanced_loads, min_max_load
from .enestrom import enestrom_phragmen
from .model import parse_profile, parse_rational, sum_squares
from .optrules import leximax_phragmen, var_phragmen
from .report import round_half_up
from .seq import seq_phragmen

__all__ = ["DATA_DIR", "CheckResult", "load_corpus", "load_profile", "run_examples",
           "read_score_table", "case_ids"]

DATA_DIR = Path(__file__).with_name("data")
DASH = "–"


@dataclass(frozen=True)
class CheckResult:
    case: str
    check: str
    passed: bool
    detail: str = ""


def load_corpus(corpus_dir=None) -> dict:
    base = Path(corpus_dir) if corpus_dir else DATA_DIR
    return json.loads((base / "expected.json").read_text(encoding="utf-8"))


def load_profile(name, corpus_dir=None):
    base = Path(corpus_dir) if corpus_dir else DATA_DIR
    if not name.endswith(".txt"):
        name += ".txt"
    return parse_profile((base / name).read_text(encoding="utf-8"))


def case_ids(corpus_dir=None) -> list:
    return [c["id"] for c in load_corpus(corpus_dir)["cases"]]


def read_score_table(path) -> dict:
    """``{candidate: [cell per round]}`` with cells as printed."""
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    table = {}
    for line in lines[1:]:
        if line.strip():
            cells = line.split("\t")
            table[cells[0]] = cells[1:]
    return table


def _run_rule(profile, rule, k, ties):
    if rule == "seq":
        return seq_phragmen(profile, k, ties=ties)
    if rule == "leximax":
        return leximax_phragmen(profile, k)
    if rule == "var":
        return var_phragmen(profile, k)
    if rule.startswith("enestrom-"):
        return enestrom_phragmen(profile, k, quota=rule.split("-", 1)[1], ties=ties)
    raise ValueError(f"unknown rule {rule!r}")


def _q(text):
    return parse_rational(str(text))


def _loads_of(outcome, committee, profile):
    cert = outcome.certificates.get(committee)
    loads = getattr(cert, "loads", None)
    return loads if loads is not None else balanced_loads(profile, committee).loads


def _check_rule(profile, chk):
    k = chk["k"]
    out = _run_rule(profile, chk["rule"], k, chk.get("ties", "canonical"))
    want = {frozenset(c) for c in chk["committees"]}
    got = set(out.committees)
    if got != want:
        return False, f"committees {sorted(map(sorted, got))} != {sorted(map(sorted, want))}"
    if len(out.committees) == 1:
        s = out.committees[0]
        loads = _loads_of(out, s, profile)
        if "loads" in chk and tuple(loads) != tuple(_q(v) for v in chk["loads"]):
            return False, f"loads {loads}"
        if "max_load" in chk and max(loads) != _q(chk["max_load"]):
            return False, f"max load {max(loads)}"
        if "sum_squares" in chk and sum_squares(loads) != _q(chk["sum_squares"]):
            return False, f"sum of squares {sum_squares(loads)}"
    return True, ""


def _check_seq_scores(profile, chk):
    out = seq_phragmen(profile, chk["k"])
    trace = out.certificates[out.committee]
    if "order" in chk and list(trace.order) != chk["order"]:
        return False, f"order {trace.order}"
    for j, want in enumerate(chk.get("rounds", [])):
        got = trace.rounds[j].scores
        if {c: v for c, v in got.items()} != {c: _q(v) for c, v in want.items()}:
            return False, f"round {j + 1} scores {got}"
    if "loads" in chk and tuple(trace.loads) != tuple(_q(v) for v in chk["loads"]):
        return False, f"loads {trace.loads}"
    return True, ""


def _check_enestrom(profile, chk):
    out = enestrom_phragmen(profile, chk["k"], quota=chk["quota"])
    trace = out.certificates[out.committee]
    if trace.quota != _q(chk["quota_value"]):
        return False, f"quota {trace.quota}"
    if list(trace.order) != chk["order"]:
        return False, f"order {trace.order}"
    for j, want in enumerate(chk["rounds"]):
        rnd = trace.rounds[j]
        for c, v in want["scores"].items():
            if rnd.scores.get(c) != _q(v):
                return False, f"round {j + 1} score of {c} = {rnd.scores.get(c)}"
        if "factor" in want and rnd.factor != _q(want["factor"]):
            return False, f"round {j + 1} factor {rnd.factor}"
    return True, ""


def _check_axiom(profile, chk):
    k = chk["k"]
    committee = frozenset(chk["committee"])
    rep = check_axiom(chk["axiom"], profile, k, committee)
    if rep.verdict != chk["verdict"]:
        return False, f"verdict {rep.verdict}"
    w = rep.witness
    if "ell" in chk:
        if w is None or w.ell != chk["ell"]:
            return False, f"witness {w}"
        if w.candidates != frozenset(chk["candidates"]):
            return False, f"witness candidates {sorted(w.candidates)}"
        if "voters" in chk and w.voters != frozenset(i - 1 for i in chk["voters"]):
            return False, f"witness voters {sorted(i + 1 for i in w.voters)}"
        if not witness_holds(profile, k, committee, chk["axiom"], w):
            return False, "witness does not re-validate"
    return True, ""


def _check_table(profile, chk, base):
    table = read_score_table(base / chk["file"])
    out = seq_phragmen(profile, chk["k"])
    trace = out.certificates[out.committee]
    for c, cells in table.items():
        if c not in profile.rank:
            return False, f"unknown candidate {c} in table"
        if len(cells) != len(trace.rounds):
            return False, f"row {c} has {len(cells)} cells"
        for rnd, cell in zip(trace.rounds, cells):
            if cell == DASH:
                if c in rnd.scores:
                    return False, f"{c} round {rnd.index}: expected elected, score {rnd.scores[c]}"
                continue
            if c not in rnd.scores:
                return False, f"{c} round {rnd.index}: already elected, table shows {cell}"
            got = round_half_up(rnd.scores[c])
            if Decimal(got) != Decimal(cell):
                return False, f"{c} round {rnd.index}: {rnd.scores[c]} -> {got}, table {cell}"
    # the candidate elected in each round is the one whose row turns into a dash next
    for rnd in trace.rounds:
        if min(rnd.scores.values()) != rnd.scores[rnd.chosen]:
            return False, f"round {rnd.index}: chosen candidate not minimal"
    return True, ""


def _check_induced(chk):
    for rule, want in chk["seats"].items():
        got = induced_apportionment(rule, chk["votes"], chk["k"])
        if got != {tuple(z) for z in want}:
            return False, f"{rule}: {sorted(got)}"
    return True, ""


def _run_check(profile, chk, base):
    op = chk["op"]
    if op == "rule":
        return _check_rule(profile, chk)
    if op == "seq-scores":
        return _check_seq_scores(profile, chk)
    if op == "enestrom":
        return _check_enestrom(profile, chk)
    if op == "axiom":
        return _check_axiom(profile, chk)
    if op == "table":
        return _check_table(profile, chk, base)
    if op == "min-max-load":
        vals = {c: min_max_load(profile, frozenset(c)) for c in map(tuple, chk["committees"])}
        bad = {c: v for c, v in vals.items() if v != _q(chk["value"])}
        return not bad, f"{bad}" if bad else ""
    if op == "exists-pr":
        got = exists_pr(profile, chk["k"])
        want = [frozenset(c) for c in chk["committees"]]
        return got is not None and set(got) == set(want), f"{got}"
    if op == "induced":
        return _check_induced(chk)
    if op == "lower-quota":
        rep = check_lower_quota(chk["votes"], chk["k"], chk["seats"])
        return rep.verdict == chk["verdict"], rep.verdict
    raise ValueError(f"unknown check op {op!r}")


def _label(chk):
    parts = [chk["op"]]
    for key in ("rule", "axiom", "quota"):
        if key in chk:
            parts.append(str(chk[key]))
    if "k" in chk:
        parts.append(f"k={chk['k']}")
    return " ".join(parts)


def run_examples(only=None, corpus_dir=None) -> list:
    """Run every bundled check; ``only`` restricts to case ids."""
    base = Path(corpus_dir) if corpus_dir else DATA_DIR
    corpus = load_corpus(base)
    wanted = set(only) if only else None
    if wanted:
        unknown = wanted - {c["id"] for c in corpus["cases"]}
        if unknown:
            raise ValueError(f"unknown example(s): {', '.join(sorted(unknown))}")
    results = []
    for case in corpus["cases"]:
        if wanted and case["id"] not in wanted:
            continue
        profile = load_profile(case["profile"], base)
        for chk in case["checks"]:
            try:
                ok, detail = _run_check(profile, chk, base)
            except Exception as exc:  # a crashing check is a failing check
                ok, detail = False, f"{type(exc).__name__}: {exc}"
            results.append(CheckResult(case["id"], _label(chk), bool(ok), "" if ok else detail))
    return results
