"""Write :class:`~phragmen.optrules.SolverModel` objects as LP-format text.

Coefficients are written as exact decimals when the rational terminates.
Otherwise the main file carries a 15-significant-digit rendering under a
warning banner and the exact ``p/q`` values go to a sidecar file, one
``<row> <column> <p/q>`` triple per line (``rhs`` and ``bound`` rows too).
Names an LP reader could misparse (candidate ids are arbitrary tokens) are
replaced by ``v_<n>``/``r_<n>`` aliases listed in the header comments.
"""

from __future__ import annotations

import re
from decimal import Decimal, localcontext
from fractions import Fraction

from .model import format_rational

__all__ = ["exact_decimal", "render_lp"]


def exact_decimal(value: Fraction) -> str | None:
    """Exact decimal string of ``value`` or None if its expansion does not terminate."""
    value = Fraction(value)
    den = value.denominator
    twos = fives = 0
    while den % 2 == 0:
        den //= 2
        twos += 1
    while den % 5 == 0:
        den //= 5
        fives += 1
    if den != 1:
        return None
    digits = max(twos, fives)
    scaled = value * 10**digits
    assert scaled.denominator == 1
    text = str(abs(scaled.numerator)).rjust(digits + 1, "0")
    if digits:
        text = text[:-digits] + "." + text[-digits:]
    return ("-" if value < 0 else "") + text


_SAFE = re.compile(r"[A-Za-z_][A-Za-z0-9_.]{0,254}")


def _aliases(names, prefix):
    """Map names that LP readers could misparse to ``<prefix><n>``."""
    out = {}
    for name in names:
        if not _SAFE.fullmatch(name):
            out[name] = f"{prefix}{len(out) + 1}"
    return out


def _approx(value: Fraction) -> str:
    with localcontext() as ctx:
        ctx.prec = 15
        return format(Decimal(value.numerator) / Decimal(value.denominator), "g")


class _Writer:
    def __init__(self):
        self.inexact = []  # (row, column, value)

    def num(self, value, row, column):
        value = Fraction(value)
        text = exact_decimal(value)
        if text is None:
            self.inexact.append((row, column, value))
            text = _approx(value)
        return text

    def term(self, coef, name, row, first):
        coef = Fraction(coef)
        sign = "-" if coef < 0 else ("" if first else "+")
        mag = abs(coef)
        body = name if mag == 1 else f"{self.num(mag, row, name)} {name}"
        return f"{sign} {body}".strip() if sign else body


def _wrap(head, terms, tail="", width=78):
    lines, cur = [], head
    for t in terms:
        if len(cur) + 1 + len(t) > width and cur.strip():
            lines.append(cur)
            cur = "   "
        cur += " " + t
    cur += tail
    lines.append(cur)
    return lines


def render_lp(model) -> tuple:
    """Return ``(lp_text, sidecar_text_or_None)``."""
    w = _Writer()
    var_alias = _aliases((v.name for v in model.variables), "v_")
    row_alias = _aliases((c.name for c in model.constraints), "r_")

    def vn(name):
        return var_alias.get(name, name)

    body = []
    body.append("Maximize" if model.objective_sense == "max" else "Minimize")
    if model.quadratic_objective:
        terms = []
        for a, b, coef in model.quadratic_objective:
            doubled = 2 * Fraction(coef)
            prod = f"{vn(a)} ^ 2" if a == b else f"{vn(a)} * {vn(b)}"
            t = w.term(doubled, prod, "obj", not terms)
            terms.append(t)
        body += _wrap(" obj: [", terms, " ] / 2")
    else:
        terms = [w.term(c, vn(name), "obj", i == 0)
                 for i, (name, c) in enumerate(model.linear_objective)]
        body += _wrap(" obj:", terms)
    body.append("Subject To")
    for con in model.constraints:
        row = row_alias.get(con.name, con.name)
        terms = [w.term(c, vn(name), row, i == 0) for i, (name, c) in enumerate(con.coefficients)]
        rhs = w.num(con.rhs, row, "rhs")
        body += _wrap(f" {row}:", terms, f" {con.sense} {rhs}")
    body.append("Bounds")
    binaries = []
    for v in model.variables:
        if v.kind == "binary":
            binaries.append(vn(v.name))
            continue
        lo = w.num(v.lower, "bound", vn(v.name))
        hi = w.num(v.upper, "bound", vn(v.name))
        body.append(f" {lo} <= {vn(v.name)} <= {hi}")
    if binaries:
        body.append("Binaries")
        body += _wrap("", binaries)
    body.append("End")

    header = [f"\\ model kind: {model.kind}",
              f"\\ voters: {model.voters}  candidates: {len(model.candidates)}  k: {model.k}"]
    if model.y:
        header.append("\\ y: " + " ".join(format_rational(v) for v in model.y))
    for name, alias in list(var_alias.items()) + list(row_alias.items()):
        header.append(f"\\ alias: {alias} = {name}")
    sidecar = None
    if w.inexact:
        header.insert(0, "\\ WARNING: some coefficients are non-terminating rationals shown "
                         "to 15 significant digits;")
        header.insert(1, "\\ WARNING: exact p/q values are in the companion .exact file.")
        sidecar = "".join(f"{row} {col} {format_rational(v)}\n" for row, col, v in w.inexact)
    return "\n".join(header + body) + "\n", sidecar
