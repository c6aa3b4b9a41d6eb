"""Exercising the command line front end in process through main()."""

import json

import pytest

from schemeforge.cli import main


def run(argv, capsys):
    code = main(argv)
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_params_json(tmp_path, capsys):
    out = tmp_path / "params.json"
    code, _, _ = run(["params", "--t", "3", "--format", "json",
                      "--out", str(out)], capsys)
    assert code == 0
    data = json.loads(out.read_text())
    assert data["valencies"] == ["1", "20", "10", "36", "45"]
    assert data["multiplicities"] == ["1", "20", "70", "20", "1"]


def test_params_markdown_to_stdout(capsys):
    code, out, _ = run(["params", "--t", "3", "--format", "md"], capsys)
    assert code == 0
    assert "Valencies" in out
    assert "| 49 |" in out


def test_params_rejects_even_t(capsys):
    code, _, err = run(["params", "--t", "4"], capsys)
    assert code == 1
    assert err.strip()


def test_params_from_krein_matches_t(tmp_path, capsys):
    by_t = tmp_path / "t.json"
    by_k = tmp_path / "k.json"
    run(["params", "--t", "3", "--format", "json", "--out", str(by_t)],
        capsys)
    code, _, _ = run(["params", "--krein", "20,49/3,14/3,1;1,14/3,49/3,20",
                      "--format", "json", "--out", str(by_k)], capsys)
    assert code == 0
    assert json.loads(by_t.read_text()) == json.loads(by_k.read_text())


def test_params_needs_exactly_one_source(capsys):
    assert run(["params"], capsys)[0] == 1
    assert run(["params", "--t", "3",
                "--krein", "20,49/3,14/3,1;1,14/3,49/3,20"],
               capsys)[0] == 1


def test_triple_forced_values(tmp_path, capsys):
    out = tmp_path / "triple.json"
    code, _, _ = run(["triple", "--t", "7", "--abc", "2,2,2",
                      "--out", str(out)], capsys)
    assert code == 0
    data = json.loads(out.read_text())
    assert data["vacuous"] is False
    assert data["forced"]["[2,2,2]"] == "1"
    assert data["forced"]["[2,2,1]"] == "0"
    assert data["free"] == []


def test_triple_vacuous_exits_zero(tmp_path, capsys):
    out = tmp_path / "triple.json"
    code, _, _ = run(["triple", "--t", "3", "--abc", "2,2,2",
                      "--out", str(out)], capsys)
    assert code == 0
    assert json.loads(out.read_text())["vacuous"] is True


def test_triple_rejects_bad_classes(capsys):
    assert run(["triple", "--t", "7", "--abc", "2,2"], capsys)[0] == 1
    assert run(["triple", "--t", "7", "--abc", "0,1,9"], capsys)[0] == 1


def test_file_chain(tmp_path, capsys):
    gq = tmp_path / "gq.json"
    hemi = tmp_path / "hemi.json"
    scheme = tmp_path / "scheme.json"
    recon = tmp_path / "recon.json"

    assert run(["build-gq", "--out", str(gq)], capsys)[0] == 0
    data = json.loads(gq.read_text())
    assert data["points"] == 280 and len(data["lines"]) == 112

    assert run(["hemisystem", "--in", str(gq), "--out", str(hemi)],
               capsys)[0] == 0
    assert len(json.loads(hemi.read_text())["lines"]) == 56

    assert run(["scheme", "--in", str(gq), str(hemi),
                "--out", str(scheme)], capsys)[0] == 0
    assert json.loads(scheme.read_text())["classes"] == 5

    assert run(["reconstruct", "--in", str(scheme),
                "--out", str(recon)], capsys)[0] == 0
    data = json.loads(recon.read_text())
    assert data["dual_order"] == [3, 9]
    assert len(data["U"]) == 56


def test_scheme_needs_two_inputs(tmp_path, capsys):
    gq = tmp_path / "gq.json"
    run(["build-gq", "--out", str(gq)], capsys)
    assert run(["scheme", "--in", str(gq)], capsys)[0] == 1


def test_reconstruct_rejects_corrupt_scheme(tmp_path, capsys):
    gq = tmp_path / "gq.json"
    hemi = tmp_path / "hemi.json"
    scheme = tmp_path / "scheme.json"
    run(["build-gq", "--out", str(gq)], capsys)
    run(["hemisystem", "--in", str(gq), "--out", str(hemi)], capsys)
    run(["scheme", "--in", str(gq), str(hemi), "--out", str(scheme)],
        capsys)

    data = json.loads(scheme.read_text())
    data["rel"][0][1] = data["rel"][1][0] = 4
    scheme.write_text(json.dumps(data))

    code, _, err = run(["reconstruct", "--in", str(scheme)], capsys)
    assert code == 2
    assert err.strip()


def test_pipeline_all_stages_pass(capsys):
    code, out, _ = run(["pipeline", "--t", "3"], capsys)
    assert code == 0
    lines = [l for l in out.splitlines() if ": PASS" in l]
    assert len(lines) == 7


def test_pipeline_rejects_other_t(capsys):
    assert run(["pipeline", "--t", "5"], capsys)[0] == 1


def test_unknown_command(capsys):
    assert run(["frobnicate"], capsys)[0] == 1
