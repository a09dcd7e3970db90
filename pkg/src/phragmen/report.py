"""Text and line-delimited JSON rendering of outcomes, traces and axiom reports.

Rounding happens only here. Rationals print as ``p/q``. Score cells of trace
tables default to a 3-decimal form rounded half up, exactly, from the rational
value; ``exact=True`` prints them as ``p/q`` too.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .axioms import AxiomReport
from .balance import BalanceCertificate
from .enestrom import EnestromTrace
from .model import LoadDistribution, RuleOutcome, format_load_distribution, format_rational, \
    sum_squares, voter_loads
from .seq import SeqTrace

__all__ = ["round_half_up", "fmt", "render_report", "render_seq_table", "records", "dump_records"]

DASH = "–"


def round_half_up(value: Fraction, places: int = 3) -> str:
    value = Fraction(value)
    scale = 10**places
    scaled = abs(value) * scale
    q, r = divmod(scaled.numerator, scaled.denominator)
    if 2 * r >= scaled.denominator:
        q += 1
    sign = "-" if value < 0 and q else ""
    text = str(q).rjust(places + 1, "0")
    return f"{sign}{text[:-places]}.{text[-places:]}" if places else f"{sign}{text}"


def fmt(value, exact: bool = True) -> str:
    return format_rational(value) if exact else round_half_up(value)


def _committee(profile, s):
    return "{" + ", ".join(profile.sort_candidates(s)) + "}"


def _loads_line(loads, exact):
    return "(" + ", ".join(fmt(v, exact) for v in loads) + ")"


def _table(header, rows):
    widths = [max(len(str(r[i])) for r in [header] + rows) for i in range(len(header))]
    lines = ["  ".join(str(h).ljust(w) for h, w in zip(header, widths)).rstrip()]
    lines.append("  ".join("-" * w for w in widths))
    for r in rows:
        lines.append("  ".join(str(c).ljust(w) for c, w in zip(r, widths)).rstrip())
    return lines


def render_seq_table(trace: SeqTrace, profile, exact: bool = False) -> str:
    """Candidates as rows, rounds as columns; ``*`` marks the elected candidate."""
    header = ["c"] + [f"s^({r.index})" for r in trace.rounds]
    rows = []
    for c in profile.candidates:
        row = [c]
        for r in trace.rounds:
            if c not in r.scores:
                row.append(DASH)
            else:
                cell = fmt(r.scores[c], exact)
                row.append(cell + ("*" if c == r.chosen else ""))
        rows.append(row)
    return "\n".join(_table(header, rows))


def _render_seq_trace(trace, profile, exact):
    lines = ["selection order: " + ", ".join(trace.order)]
    for r in trace.rounds:
        tie = f" (tied: {', '.join(r.tied)})" if len(r.tied) > 1 else ""
        lines.append(f"round {r.index}: elect {r.chosen} at {fmt(r.max_load)}{tie}; "
                     f"loads {_loads_line(r.loads, True)}")
    lines.append("")
    lines.append(render_seq_table(trace, profile, exact=exact))
    return "\n".join(lines)


def _render_enestrom_trace(trace, profile, exact):
    lines = [f"quota: {fmt(trace.quota)}", "selection order: " + ", ".join(trace.order)]
    for r in trace.rounds:
        scores = ", ".join(f"{c}={fmt(v, exact)}" for c, v in r.scores.items())
        tie = f" (tied: {', '.join(r.tied)})" if len(r.tied) > 1 else ""
        lines.append(f"round {r.index}: scores {scores}; elect {r.chosen}{tie}; "
                     f"factor {fmt(r.factor)}; weights {_loads_line(r.weights, True)}")
    return "\n".join(lines)


def _render_balance(cert, profile, exact):
    lines = [f"committee: {_committee(profile, cert.committee)}",
             f"voter loads: {_loads_line(cert.loads, True)}",
             f"max load: {fmt(max(cert.loads) if cert.loads else 0)}",
             f"sum of squares: {fmt(sum_squares(cert.loads))}",
             "peeling levels:"]
    for lvl in cert.levels:
        voters = ",".join(str(i + 1) for i in sorted(lvl.voters))
        lines.append(f"  {fmt(lvl.level)}  candidates {_committee(profile, lvl.candidates)}"
                     f"  voters {{{voters}}}")
    lines.append("witness distribution (voter candidate load):")
    lines.append(format_load_distribution(cert.distribution, profile).rstrip())
    return "\n".join(lines)


def _render_axiom(rep, profile):
    lines = [f"{rep.axiom}: {rep.verdict}"]
    if rep.witness is not None:
        w = rep.witness
        voters = ",".join(str(i + 1) for i in sorted(w.voters))
        cands = _committee(profile, w.candidates) if profile else sorted(w.candidates)
        lines.append(f"witness: ell={w.ell} T={cands} N*={{{voters}}} |N*|={len(w.voters)}")
    if rep.partition is not None:
        for c in (profile.sort_candidates(rep.partition) if profile else sorted(rep.partition)):
            voters = ",".join(str(i + 1) for i in sorted(rep.partition[c]))
            lines.append(f"  {c}: {{{voters}}}")
    if rep.detail:
        lines.append("detail: " + ", ".join(f"{k}={v}" for k, v in rep.detail.items()))
    return "\n".join(lines)


def render_report(obj, profile=None, exact: bool = False, trace: bool = False) -> str:
    """Deterministic text rendering of any result object.

    ``exact`` switches trace score cells from 3 decimals to ``p/q``.
    """
    if isinstance(obj, RuleOutcome):
        lines = [f"rule: {obj.rule}  k: {obj.k}  winners: {len(obj.committees)}"]
        for s in obj.committees:
            lines.append(f"committee: {_committee(profile, s)}")
            cert = obj.certificates.get(s)
            if isinstance(cert, BalanceCertificate):
                lines.append(f"  voter loads: {_loads_line(cert.loads, True)}")
                lines.append(f"  max load: {fmt(max(cert.loads))}"
                             f"  sum of squares: {fmt(sum_squares(cert.loads))}")
            elif isinstance(cert, SeqTrace):
                lines.append(f"  order: {', '.join(cert.order)}")
                lines.append(f"  voter loads: {_loads_line(cert.loads, True)}")
                if trace:
                    lines.append(_indent(_render_seq_trace(cert, profile, exact)))
            elif isinstance(cert, EnestromTrace):
                lines.append(f"  order: {', '.join(cert.order)}")
                if trace:
                    lines.append(_indent(_render_enestrom_trace(cert, profile, exact)))
            elif isinstance(cert, LoadDistribution):
                lines.append(f"  voter loads: {_loads_line(voter_loads(cert), True)}")
        return "\n".join(lines)
    if isinstance(obj, SeqTrace):
        return _render_seq_trace(obj, profile, exact)
    if isinstance(obj, EnestromTrace):
        return _render_enestrom_trace(obj, profile, exact)
    if isinstance(obj, BalanceCertificate):
        return _render_balance(obj, profile, exact)
    if isinstance(obj, AxiomReport):
        return _render_axiom(obj, profile)
    raise TypeError(f"cannot render {type(obj).__name__}")


def _indent(text, pad="  "):
    return "\n".join(pad + line if line else line for line in text.splitlines())


# -- structured records ----------------------------------------------------

def _q(v):
    return format_rational(v)


def records(obj, profile=None) -> list:
    """Flat dict records with stable field names (one JSON object per line)."""
    out = []
    if isinstance(obj, RuleOutcome):
        for rank, s in enumerate(obj.committees, start=1):
            rec = {"type": "committee", "rule": obj.rule, "k": obj.k, "rank": rank,
                   "committee": list(profile.sort_candidates(s))}
            cert = obj.certificates.get(s)
            loads = None
            if isinstance(cert, BalanceCertificate):
                loads = cert.loads
            elif isinstance(cert, SeqTrace):
                loads = cert.loads
                rec["order"] = list(cert.order)
            elif isinstance(cert, EnestromTrace):
                rec["order"] = list(cert.order)
                rec["quota"] = _q(cert.quota)
            elif isinstance(cert, LoadDistribution):
                loads = voter_loads(cert)
            if loads is not None:
                rec["loads"] = [_q(v) for v in loads]
                rec["max_load"] = _q(max(loads))
                rec["sum_squares"] = _q(sum_squares(loads))
            out.append(rec)
            if isinstance(cert, SeqTrace):
                out.extend(records(cert, profile))
            elif isinstance(cert, EnestromTrace):
                out.extend(records(cert, profile))
    elif isinstance(obj, SeqTrace):
        for r in obj.rounds:
            for c, v in r.scores.items():
                out.append({"type": "seq-score", "round": r.index, "candidate": c,
                            "score": _q(v), "rounded": round_half_up(v),
                            "chosen": c == r.chosen})
    elif isinstance(obj, EnestromTrace):
        for r in obj.rounds:
            out.append({"type": "enestrom-round", "round": r.index, "chosen": r.chosen,
                        "scores": {c: _q(v) for c, v in r.scores.items()},
                        "factor": _q(r.factor), "weights": [_q(v) for v in r.weights]})
    elif isinstance(obj, BalanceCertificate):
        out.append({"type": "balance", "committee": list(profile.sort_candidates(obj.committee)),
                    "loads": [_q(v) for v in obj.loads],
                    "levels": [{"level": _q(l.level),
                                "candidates": list(profile.sort_candidates(l.candidates)),
                                "voters": sorted(i + 1 for i in l.voters)} for l in obj.levels]})
        for (i, c), v in sorted(obj.distribution.entries.items(),
                                key=lambda kv: (kv[0][0], profile.rank[kv[0][1]])):
            out.append({"type": "load", "voter": i + 1, "candidate": c, "load": _q(v)})
    elif isinstance(obj, AxiomReport):
        rec = {"type": "axiom", "axiom": obj.axiom, "verdict": obj.verdict}
        if obj.witness is not None:
            cands = obj.witness.candidates
            rec["witness"] = {"ell": obj.witness.ell,
                              "voters": sorted(i + 1 for i in obj.witness.voters),
                              "candidates": list(profile.sort_candidates(cands)) if profile
                              else sorted(cands)}
        if obj.partition is not None:
            rec["partition"] = {c: sorted(i + 1 for i in v) for c, v in obj.partition.items()}
        if obj.detail:
            rec["detail"] = obj.detail
        out.append(rec)
    else:
        raise TypeError(f"cannot render {type(obj).__name__}")
    return out


def dump_records(recs) -> str:
    return "".join(json.dumps(r, sort_keys=True, ensure_ascii=False) + "\n" for r in recs)
