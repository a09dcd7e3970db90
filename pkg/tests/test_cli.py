import json
import os
import shutil
import subprocess
import sys

import pytest

from phragmen.cli import main
from phragmen.corpus import DATA_DIR

EX2 = str(DATA_DIR / "example2.txt")
EX5 = str(DATA_DIR / "example5.txt")
EX7 = str(DATA_DIR / "example7.txt")


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_compute_var(capsys):
    code, out, _ = run(capsys, "compute", "--rule", "var", "--k", "3", "--profile", EX2)
    assert code == 0
    assert "committee: {a, b, d}" in out and "sum of squares: 2" in out


def test_compute_seq_trace_rounded_and_exact(capsys):
    _, rounded, _ = run(capsys, "compute", "--rule", "seq", "--k", "3", "--profile", EX2,
                        "--trace")
    _, exact, _ = run(capsys, "compute", "--rule", "seq", "--k", "3", "--profile", EX2,
                      "--trace", "--exact")
    assert "0.833" in rounded and "5/6" not in rounded
    assert "5/6" in exact


def test_compute_jsonl(capsys):
    code, out, _ = run(capsys, "compute", "--rule", "leximax", "--k", "3", "--profile", EX2,
                       "--format", "jsonl")
    assert code == 0
    recs = [json.loads(line) for line in out.splitlines()]
    assert recs[0]["committee"] == ["a", "b", "c"] and recs[0]["max_load"] == "3/4"


def test_compute_driver(capsys):
    code, out, _ = run(capsys, "compute", "--rule", "leximax", "--driver", "--k", "3",
                       "--profile", EX2)
    assert code == 0 and "{a, b, c}" in out
    code, _, err = run(capsys, "compute", "--rule", "var", "--driver", "--k", "3",
                       "--profile", EX2)
    assert code == 64 and "driver" in err


def test_compute_figures(capsys, tmp_path):
    code, _, _ = run(capsys, "compute", "--rule", "seq", "--k", "3", "--profile", EX2,
                     "--figures", str(tmp_path))
    assert code == 0
    names = sorted(f.name for f in tmp_path.iterdir())
    assert names == ["seq-k3-1-loads.png", "seq-k3-1-trace.png"]
    assert all(f.stat().st_size > 1000 for f in tmp_path.iterdir())


def test_verify_exit_codes(capsys):
    assert run(capsys, "verify", "--axiom", "pjr", "--k", "6", "--profile", EX7,
               "--committee", "a,b,c,e,f,g")[0] == 1
    code, out, _ = run(capsys, "verify", "--axiom", "pjr", "--k", "6", "--profile", EX7,
                       "--committee", "a,b,c,e,f,g", "--witness")
    assert code == 1
    assert "witness: ell=4 T={a, b, c, d}" in out and "|N*|=67" in out
    assert run(capsys, "verify", "--axiom", "pr", "--k", "4", "--profile", EX5,
               "--committee", "a,b,c,d")[0] == 0
    assert run(capsys, "verify", "--axiom", "pr", "--k", "3", "--profile", EX2,
               "--committee", "a,b,c")[0] == 2


def test_verify_list_pr(capsys):
    code, out, _ = run(capsys, "verify", "--axiom", "pr", "--k", "4", "--profile", EX5,
                       "--committee", "e,f,a,b", "--list-pr")
    assert code == 1
    assert "PR committees: {a, b, c, d}" in out


def test_usage_and_data_errors(capsys, tmp_path):
    with pytest.raises(SystemExit) as exc:
        main(["compute", "--rule", "stv", "--k", "2", "--profile", EX2])
    assert exc.value.code == 64
    capsys.readouterr()
    assert run(capsys, "compute", "--rule", "seq", "--k", "9", "--profile", EX2)[0] == 65
    assert run(capsys, "balance", "--profile", EX2, "--committee", "a,z")[0] == 65
    assert run(capsys, "compute", "--rule", "seq", "--k", "1",
               "--profile", str(tmp_path / "missing.txt"))[0] == 65
    bad = tmp_path / "bad.txt"
    bad.write_text("candidates: a b\n1: a q\n", encoding="utf-8")
    assert run(capsys, "compute", "--rule", "seq", "--k", "1", "--profile", str(bad))[0] == 65


def test_enumeration_cap_maps_to_data_error(capsys, monkeypatch):
    monkeypatch.setenv("PHRAGMEN_ENUM_CAP", "2")
    code, _, err = run(capsys, "compute", "--rule", "var", "--k", "3", "--profile", EX2)
    assert code == 65 and "cap" in err


def test_balance_text_and_jsonl(capsys):
    code, out, _ = run(capsys, "balance", "--profile", EX2, "--committee", "a,b,d")
    assert code == 0 and "1/2" in out
    _, out, _ = run(capsys, "balance", "--profile", EX2, "--committee", "a,b,d",
                    "--format", "jsonl")
    assert json.loads(out.splitlines()[0])["type"] == "balance"


def test_export_lp_and_sidecar_lifecycle(capsys, tmp_path):
    target = tmp_path / "step.lp"
    side = tmp_path / "step.lp.exact"
    code, out, _ = run(capsys, "export", "--format", "lp", "--k", "3", "--profile", EX2,
                       "--y", "1/3,1/3,1/3,1/3,5/3", "--out", str(target))
    assert code == 0 and side.exists() and "exact values" in out
    code, out, _ = run(capsys, "export", "--format", "lp", "--k", "3", "--profile", EX2,
                       "--out", str(target))
    assert code == 0 and not side.exists()
    assert "(60 variables" in out
    code, _, _ = run(capsys, "export", "--format", "qp", "--k", "3", "--profile", EX2,
                     "--out", str(tmp_path / "m.lp"))
    assert code == 0 and "Minimize" in (tmp_path / "m.lp").read_text()
    assert run(capsys, "export", "--format", "lp", "--k", "3", "--profile", EX2,
               "--y", "1,2", "--out", str(target))[0] == 65


def test_apportion(capsys):
    code, out, _ = run(capsys, "apportion", "--method", "sainte-lague", "--seats", "6",
                       "--votes", "67,12,11,10")
    assert code == 0
    assert "(3, 1, 1, 1)  lower quota: violates" in out
    _, out, _ = run(capsys, "apportion", "--induced", "seq", "--seats", "6",
                    "--votes", "67,12,11,10", "--format", "jsonl")
    rec = json.loads(out)
    assert rec["distribution"] == [5, 1, 0, 0] and rec["lower_quota"] == "provides"
    assert run(capsys, "apportion", "--method", "dhondt", "--seats", "2",
               "--votes", "1,x")[0] == 65


def test_examples_command(capsys):
    code, out, _ = run(capsys, "examples")
    assert code == 0
    assert out.strip().splitlines()[-1].endswith("checks passed")
    code, out, _ = run(capsys, "examples", "--only", "example6")
    assert code == 0
    assert all(line.startswith("example6") for line in out.strip().splitlines()[:-1])


def test_examples_negative_control(capsys, tmp_path):
    corpus = tmp_path / "corpus"
    shutil.copytree(DATA_DIR, corpus)
    table = corpus / "seq_score_table.tsv"
    text = table.read_text(encoding="utf-8")
    assert "0.163" in text
    table.write_text(text.replace("0.163", "0.164", 1), encoding="utf-8")
    code, out, _ = run(capsys, "examples", "--corpus", str(corpus))
    assert code == 1
    failing = [line for line in out.splitlines() if "FAIL" in line]
    assert len(failing) == 1 and failing[0].startswith("example6")


def test_output_is_deterministic_across_hash_seeds():
    outs = set()
    for seed in ("1", "2", "3"):
        env = dict(os.environ, PYTHONHASHSEED=seed)
        res = subprocess.run([sys.executable, "-m", "phragmen", "compute", "--rule", "var",
                              "--k", "6", "--profile", EX7, "--format", "jsonl"],
                             capture_output=True, text=True, env=env, check=True)
        outs.add(res.stdout)
    assert len(outs) == 1
