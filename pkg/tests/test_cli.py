import csv
import io
import json
import subprocess
import sys

import jsonschema
import pytest

from dyckhankel.cli import CASE_CSV_HEADER, CASE_SCHEMA, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_count(capsys):
    assert run(capsys, "count", "--n", "4", "--set", "finite:") == (0, "14\n", "")
    code, out, _ = run(capsys, "count", "--n", "4", "--set", "periodic:m=2,V=1")
    assert (code, out) == (0, "3\n")


def test_count_dumps_paths(capsys, tmp_path):
    f = tmp_path / "paths.txt"
    run(capsys, "count", "--n", "3", "--set", "finite:1", "--dump-paths", str(f))
    assert f.read_text().split() == ["UUUDDD", "UUDUDD"]


@pytest.mark.parametrize("argv, code", [
    (["count", "--n", "4", "--set", "bogus"], 2),
    (["count", "--n", "15", "--set", "finite:"], 3),
    (["count", "--set", "finite:"], 2),
    (["tau", "--m", "1", "--r", "1"], 2),
    (["tau", "--m", "3", "--r", "4"], 2),
    (["tau", "--m", "17", "--r", "1"], 3),
    (["hankel", "--series", "fmr:m=2,r=1", "--n", "30", "--order", "20"], 3),
    (["hankel", "--series", "nope", "--n", "3"], 2),
    (["verify", "--scope", "theorem", "--m-min", "1", "--m-max", "2"], 2),
    (["frobnicate"], 2),
])
def test_exit_codes(capsys, argv, code):
    try:
        got = main(argv)
    except SystemExit as e:
        got = e.code
    assert got == code
    assert capsys.readouterr().err


def test_hankel_plain(capsys):
    code, out, _ = run(capsys, "hankel", "--series", "fmr:m=5,r=5", "--n", "12")
    lines = out.splitlines()
    assert code == 0
    assert lines[0] == "1 0 0 0 1 1 1 0 0 0 1 1"
    assert "period=6" in lines[1] and "(1,0,0,0,1,1)*" in lines[1]


def test_hankel_csv(capsys):
    code, out, _ = run(capsys, "hankel", "--series", "fmr:m=2,r=1", "--n", "6", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["series", "k", "n", "value"]
    assert [r[3] for r in rows[1:]] == ["1", "0", "-1", "-1", "0", "1"]


def test_hankel_json_and_sets(capsys):
    code, out, _ = run(capsys, "hankel", "--series", "set:periodic:m=5,V=2,4,5", "--k", "1",
                       "--n", "10", "--format", "json")
    rec = json.loads(out)
    assert rec["values"] == ["1", "1", "0", "-1", "-1", "-1", "-1", "0", "1", "1"]
    code, out, _ = run(capsys, "hankel", "--series", "catalan", "--n", "5")
    assert out.splitlines()[0] == "1 1 1 1 1"


def test_tau_plain(capsys):
    code, out, _ = run(capsys, "tau", "--m", "3", "--r", "1")
    assert code == 0
    assert out.splitlines()[-1] == "3 steps, cycle at F1, delta=4, sigma=-1"


def test_tau_json(capsys):
    code, out, _ = run(capsys, "tau", "--m", "5", "--r", "3", "--format", "json")
    rec = json.loads(out)
    assert rec["cycle"]["delta"] == 6 and len(rec["steps"]) == 5
    assert {"d", "k", "u", "v", "relation"} <= set(rec["steps"][0])


def test_verify_json_schema(capsys):
    code, out, _ = run(capsys, "verify", "--scope", "theorem", "--m-max", "4", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert len(doc["cases"]) == 9
    for case in doc["cases"]:
        jsonschema.validate(case, CASE_SCHEMA)


def test_verify_csv_header(capsys):
    code, out, _ = run(capsys, "verify", "--scope", "theorem", "--m-max", "3", "--mode", "direct",
                       "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == CASE_CSV_HEADER and len(rows) == 6


def test_verify_output_is_deterministic(tmp_path, monkeypatch, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    assert main(["verify", "--scope", "theorem", "--m-max", "4", "--format", "json",
                 "--output", str(a), "--jobs", "1"]) == 0
    monkeypatch.setenv("DYCKHANKEL_JOBS", "2")
    assert main(["verify", "--scope", "theorem", "--m-max", "4", "--format", "json",
                 "--output", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_failures_listed_first(monkeypatch, capsys):
    import dyckhankel.cli as cli
    real = cli.verify_theorem

    def broken(ms, mode, jobs):
        recs = real(ms, mode, jobs)
        recs[-1]["status"] = "fail"
        recs[-1]["problems"] = ["injected"]
        return recs

    monkeypatch.setattr(cli, "verify_theorem", broken)
    code, out, _ = run(capsys, "verify", "--scope", "theorem", "--m-max", "3", "--mode", "direct")
    assert code == 1
    assert out.splitlines()[0].startswith("m=3 r=3: FAIL")


def test_console_entry_point():
    res = subprocess.run([sys.executable, "-m", "dyckhankel.cli", "count", "--n", "3", "--set", "finite:"],
                         capture_output=True, text=True)
    assert res.returncode == 0 and res.stdout.strip() == "5"
