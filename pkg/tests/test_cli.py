import json
import os

import pytest

from kw1.cli import RunConfig, main, run
from kw1.errors import DuplicateLabel, JacobiError, ParseError
from kw1.registry import (
    builtin_examples,
    get_example,
    parse_document,
    parse_input,
    render_document,
)
from kw1.reports import to_csv, to_json, to_markdown


def test_round_trip_all_builtins():
    for name, pres in builtin_examples().items():
        doc = render_document(pres)
        again = parse_document(doc)
        assert again == pres, name


def test_remark_parametric_constants():
    pres = get_example("remark:2:3")
    assert pres.labels == ("h", "x", "y")
    assert pres.constants[(0, 1)] == {1: 2}
    assert pres.constants[(0, 2)] == {2: 3}
    assert (1, 2) not in pres.constants


def test_parse_undeclared_label():
    doc = {
        "name": "bad",
        "basis": ["a", "b"],
        "brackets": [{"left": "a", "right": "w", "result": {"b": "1"}}],
    }
    with pytest.raises(ParseError):
        parse_document(doc)


def test_parse_duplicate_label():
    with pytest.raises(DuplicateLabel):
        parse_document({"name": "dup", "basis": ["a", "a"], "brackets": []})


def test_parse_bad_rational():
    doc = {
        "name": "bad",
        "basis": ["a", "b"],
        "brackets": [{"left": "a", "right": "b", "result": {"b": "1.5"}}],
    }
    with pytest.raises(ParseError):
        parse_document(doc)


def test_parse_jacobi_error():
    doc = {
        "name": "bad",
        "basis": ["x", "y", "z"],
        "brackets": [
            {"left": "x", "right": "y", "result": {"z": "1"}},
            {"left": "x", "right": "z", "result": {"x": "1"}},
        ],
    }
    with pytest.raises(JacobiError):
        parse_document(doc)


def test_parse_input_from_file(tmp_path):
    pres = get_example("sl2")
    path = tmp_path / "sl2.json"
    path.write_text(json.dumps(render_document(pres)))
    assert parse_input(str(path)) == pres
    assert parse_input(json.dumps(render_document(pres))) == pres


def test_run_exit_codes():
    config = RunConfig(primes=(3,), degree_bound=4, seed=0)
    reports, code = run(config, get_example("remark:1:1"))
    assert code == 0 and reports[0].verdict == "verified"
    config_low = RunConfig(primes=(3,), degree_bound=1, seed=0)
    reports, code = run(config_low, get_example("remark:1:1"))
    assert code == 2 and reports[0].verdict == "inconclusive"


def test_run_report_order_follows_primes():
    config = RunConfig(primes=(5, 3), degree_bound=4, seed=0)
    reports, _ = run(config, get_example("heisenberg"))
    assert [r.p for r in reports] == [5, 3]


def test_json_determinism():
    config = RunConfig(primes=(3,), seed=0, with_oracle=True, samples=4)
    a = to_json(run(config, get_example("remark:1:1"))[0])
    b = to_json(run(config, get_example("remark:1:1"))[0])
    assert a == b


def test_report_formats():
    config = RunConfig(primes=(3,), seed=0)
    reports, _ = run(config, get_example("heisenberg"))
    blob = json.loads(to_json(reports))
    assert blob["tool"] == "kw1"
    assert blob["reports"][0]["algebraName"] == "heisenberg"
    md = to_markdown(reports)
    assert "| rankZoverZp | 3 |" in md
    csv_text = to_csv(reports)
    assert csv_text.splitlines()[0].startswith("algebraName,p,e,")
    assert "heisenberg" in csv_text


def test_cli_check_exit_codes(capsys):
    assert main(
        ["check", "--example", "remark:1:1", "--primes", "3", "--degree-bound", "4"]
    ) == 0
    capsys.readouterr()
    assert main(
        ["check", "--example", "remark:1:1", "--primes", "3", "--degree-bound", "1"]
    ) == 2
    capsys.readouterr()
    assert main(["check", "--example", "nosuch", "--primes", "3"]) == 1
    assert main(["check", "--example", "sl2", "--primes", "4"]) == 1
    assert main(["nosuchcommand"]) == 1


def test_cli_check_output_file(tmp_path, capsys):
    out = tmp_path / "report.json"
    code = main(
        [
            "check",
            "--example",
            "sl2",
            "--primes",
            "3",
            "--seed",
            "0",
            "--out",
            str(out),
        ]
    )
    assert code == 0
    blob = json.loads(out.read_text())
    assert blob["reports"][0]["verdict"] == "verified"
    assert blob["reports"][0]["mUpper"] == 3


def test_cli_center_prints_remark_basis(capsys):
    code = main(
        [
            "center",
            "--example",
            "remark:1:1",
            "--prime",
            "3",
            "--degree-bound",
            "4",
        ]
    )
    assert code == 0
    out = capsys.readouterr().out
    assert "x*y^2" in out
    assert "x^2*y" in out
    assert len(out.strip().splitlines()) == 7  # header + 6 elements


def test_cli_index_and_pmap(capsys):
    assert main(["index", "--example", "gl2", "--prime", "5"]) == 0
    blob = json.loads(capsys.readouterr().out)
    assert blob["index"] == 2
    assert main(["index", "--example", "gl2"]) == 0
    blob = json.loads(capsys.readouterr().out)
    assert blob["index"] == 2 and blob["field"] == "QQ"
    assert main(["pmap", "--example", "sl2", "--prime", "5"]) == 0
    blob = json.loads(capsys.readouterr().out)
    assert blob["pMap"] == {"h": "h", "e": "0", "f": "0"}


def test_cli_rank_and_oracle(capsys):
    assert main(
        ["rank", "--example", "heisenberg", "--prime", "3", "--degree-bound", "4"]
    ) == 0
    blob = json.loads(capsys.readouterr().out)
    assert blob["rankZoverZp"] == 3
    assert main(
        ["oracle", "--example", "nonabelian2", "--prime", "3", "--samples", "5"]
    ) == 0
    blob = json.loads(capsys.readouterr().out)
    assert blob["M"] == 3


def test_cli_lemma1(capsys):
    assert main(
        ["lemma1", "--nvars", "2", "--prime", "3", "--gens", "x1"]
    ) == 0
    blob = json.loads(capsys.readouterr().out)
    assert blob["rankOverBAp"] == 3
    assert main(["lemma1", "--nvars", "2", "--prime", "3"]) == 0
    blob = json.loads(capsys.readouterr().out)
    assert blob["rankOverBAp"] == 9
    assert main(
        ["lemma1", "--nvars", "2", "--prime", "3", "--gens", "x1,x2"]
    ) == 0
    blob = json.loads(capsys.readouterr().out)
    assert blob["rankOverBAp"] == 1


def test_cli_examples_listing(capsys):
    assert main(["examples"]) == 0
    blob = json.loads(capsys.readouterr().out)
    assert "sl2" in blob and "remark:N:M" in blob


def test_cli_check_md_and_csv(capsys):
    assert main(
        ["check", "--example", "heisenberg", "--primes", "3", "--format", "md"]
    ) == 0
    out = capsys.readouterr().out
    assert out.startswith("# kw1") and "| verdict | verified |" in out
    assert main(
        ["check", "--example", "heisenberg", "--primes", "3", "--format", "csv"]
    ) == 0
    out = capsys.readouterr().out
    assert "verified" in out and out.count("\n") == 2


def test_cli_check_forced_extension(capsys):
    assert main(
        ["check", "--example", "heisenberg", "--primes", "3", "--ext", "3"]
    ) == 0
    blob = json.loads(capsys.readouterr().out)
    assert blob["reports"][0]["e"] >= 3
    assert blob["reports"][0]["verdict"] == "verified"


def test_pmap_override_document_flow(tmp_path, capsys):
    doc = {
        "name": "torus1",
        "basis": ["t"],
        "brackets": [],
        "pmapOverride": {"t": {"t": "1"}},
    }
    path = tmp_path / "torus.json"
    path.write_text(json.dumps(doc))
    assert main(["pmap", "--input", str(path), "--prime", "3"]) == 0
    blob = json.loads(capsys.readouterr().out)
    assert blob["pMap"] == {"t": "t"}
    # with the torus p-map the center k[t] has rank p over Z_p = k[t^p - t]
    assert main(["check", "--input", str(path), "--primes", "3"]) == 0
    blob = json.loads(capsys.readouterr().out)
    rep = blob["reports"][0]
    assert rep["verdict"] == "verified"
    assert rep["rankZoverZp"] == 3 and rep["ind"] == 1 and rep["mUpper"] == 1


def test_cli_oracle_dimension_cap_is_input_error(capsys):
    assert main(["oracle", "--example", "gl2", "--prime", "7"]) == 1


def test_cross_process_byte_determinism(tmp_path):
    import subprocess
    import sys

    cmd = [
        sys.executable,
        "-m",
        "kw1.cli",
        "check",
        "--example",
        "remark:1:1",
        "--primes",
        "3",
        "--oracle",
        "--samples",
        "4",
        "--seed",
        "0",
    ]
    first = subprocess.run(cmd, capture_output=True, text=True)
    second = subprocess.run(cmd, capture_output=True, text=True)
    assert first.returncode == 0 and second.returncode == 0
    assert first.stdout == second.stdout


def test_cache_dir_memo_spill(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("KW1_CACHE_DIR", str(tmp_path))
    assert main(
        ["check", "--example", "heisenberg", "--primes", "3", "--seed", "0"]
    ) == 0
    first = capsys.readouterr().out
    files = os.listdir(tmp_path)
    assert len(files) == 1 and files[0].endswith(".pkl")
    # second run loads the memo and must produce identical bytes
    assert main(
        ["check", "--example", "heisenberg", "--primes", "3", "--seed", "0"]
    ) == 0
    second = capsys.readouterr().out
    assert first == second
