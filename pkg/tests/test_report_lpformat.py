import json
from fractions import Fraction as F

import pytest

from phragmen.axioms import check_pjr
from phragmen.balance import balanced_loads
from phragmen.model import parse_profile
from phragmen.lpformat import exact_decimal, render_lp
from phragmen.optrules import emit_milp_step, emit_miqp, var_phragmen
from phragmen.report import dump_records, records, render_report, render_seq_table, round_half_up
from phragmen.seq import seq_phragmen

from helpers import load


@pytest.mark.parametrize("value, text", [
    (F(2375, 10000), "0.238"), (F(1, 3), "0.333"), (F(2, 3), "0.667"), (F(1, 2000), "0.001"),
    (F(1, 2001), "0.000"), (F(7), "7.000"), (F(-1, 8), "-0.125"), (F(-1, 3000), "0.000"),
])
def test_round_half_up(value, text):
    assert round_half_up(value) == text


@pytest.mark.parametrize("value, text", [
    (F(1, 8), "0.125"), (F(3), "3"), (F(-9, 4), "-2.25"), (F(1, 20), "0.05"), (F(1, 3), None),
])
def test_exact_decimal(value, text):
    assert exact_decimal(value) == text


def test_lp_text_is_exact_when_possible():
    p = load("example2")
    text, sidecar = render_lp(emit_milp_step(p, 3, (3, 0, 0, 0, 0)))
    assert sidecar is None
    assert "WARNING" not in text
    assert text.startswith("\\ model kind:")
    assert "Maximize" in text and "Subject To" in text and text.endswith("End\n")
    assert " 0 <= eps <= 3" in text
    assert " total:" in text and "Binaries" in text


def test_lp_sidecar_for_repeating_fractions():
    p = load("example2")
    y = (F(1, 3), F(1, 3), F(1, 3), F(1, 3), F(5, 3))
    text, sidecar = render_lp(emit_milp_step(p, 3, y))
    assert text.startswith("\\ WARNING")
    assert sidecar
    for line in sidecar.splitlines():
        row, col, val = line.split()
        assert "/" in val and F(val).denominator % 3 == 0


def test_miqp_text():
    text, sidecar = render_lp(emit_miqp(load("example2"), 3))
    assert sidecar is None
    assert "Minimize" in text and "] / 2" in text and "^ 2" in text


def test_report_for_optimization_rule():
    p = load("example2")
    text = render_report(var_phragmen(p, 3), p)
    assert "committee: {a, b, d}" in text
    assert "voter loads: (1/2, 1/2, 1/2, 1/2, 1)" in text
    assert "sum of squares: 2" in text


def test_seq_table_rounding_and_exact_switch():
    p = load("example2")
    trace = seq_phragmen(p, 3).certificates[frozenset("abc")]
    rounded = render_seq_table(trace, p)
    exact = render_seq_table(trace, p, exact=True)
    assert "0.333*" in rounded and "0.833" in rounded
    assert "1/3*" in exact and "5/6" in exact
    assert render_report(trace, p) == render_report(trace, p)


def test_balance_and_axiom_reports():
    p = load("example2")
    text = render_report(balanced_loads(p, "abd"), p)
    assert "{d}" in text and "{a, b}" in text
    q = load("example7")
    rep_text = render_report(check_pjr(q, 6, "abcefg"), q)
    assert "violates" in rep_text
    with pytest.raises(TypeError):
        render_report(object())


def test_records_are_json_lines():
    p = load("example2")
    out = seq_phragmen(p, 3)
    recs = records(out, p)
    assert recs[0]["type"] == "committee" and recs[0]["order"] == ["b", "a", "c"]
    assert recs[0]["max_load"] == "1"
    scores = [r for r in recs if r["type"] == "seq-score"]
    assert {r["candidate"] for r in scores if r["chosen"]} == {"a", "b", "c"}
    lines = dump_records(recs).splitlines()
    assert [json.loads(line) for line in lines] == recs
    bal = records(balanced_loads(p, "abd"), p)
    assert bal[0]["loads"] == ["1/2", "1/2", "1/2", "1/2", "1"]
    assert sum(F(r["load"]) for r in bal if r["type"] == "load") == 3


def test_unsafe_candidate_ids_get_aliases():
    p = parse_profile("candidates: a:b +c 1d\n2: a:b +c\n1: 1d")
    text, _ = render_lp(emit_milp_step(p, 2, (2, 0, 0)))
    body = [line for line in text.splitlines() if not line.startswith("\\")]
    assert not any(tok in line for line in body for tok in ("a:b", "+c"))
    assert " appr_1_1d: x_1_1d = 0" in body
    aliases = dict(line[len("\\ alias: "):].split(" = ") for line in text.splitlines()
                   if line.startswith("\\ alias: "))
    assert aliases["v_1"] == "x_1_a:b"
    assert any(name.startswith("appr_") for name in aliases.values())
    used = {tok.rstrip(":") for line in body for tok in line.split()}
    assert set(aliases) <= used
    safe, _ = render_lp(emit_milp_step(load("example2"), 3, (3, 0, 0, 0, 0)))
    assert "alias" not in safe
