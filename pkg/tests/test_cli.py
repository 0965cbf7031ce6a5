"""Command line behavior: contracts, artifacts, exit codes."""

import json
import math

import pytest

from jonescope.borromean import habiro_borromean
from jonescope.cli import main
from jonescope.corpus import jones
from jonescope.hypervol import V8, lobachevsky
from jonescope.qholo import format_recurrence, sharpness_example


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    return code, json.loads(out), err


# contracts ----------------------------------------------------------------


def test_jones_unknot_contract(capsys):
    code, doc, _ = run_json(capsys, "jones", "--knot", "unknot", "--n", "5")
    assert code == 0
    assert doc["result"]["terms"] == [[0, "1"]]
    assert doc["config"]["command"] == "jones"
    assert doc["version"]


def test_jones_fields(capsys):
    code, doc, _ = run_json(capsys, "jones", "--knot", "3_1", "--n", "2")
    assert code == 0
    result = doc["result"]
    assert result["terms"] == jones("3_1", 2).to_json_obj()["terms"]
    assert result["crossings"] == 3
    assert result["writhe"] == 3
    assert result["states_visited"] > 0


def test_jones_text_mode(capsys):
    code, out, _ = run(capsys, "jones", "--knot", "3_1", "--n", "2", "--out", "text")
    assert code == 0
    assert "-q^-4 + q^-3 + q^-1" in out


def test_corpus_table_stable(capsys):
    code, first, _ = run(capsys, "corpus")
    assert code == 0
    _, second, _ = run(capsys, "corpus")
    assert first == second
    lines = first.splitlines()
    assert any("3_1" in line and " 3" in line for line in lines)
    assert any(line.startswith("0_1") and " 0" in line for line in lines)


def test_corpus_json(capsys):
    code, doc, _ = run_json(capsys, "corpus", "--out", "json")
    assert code == 0
    rows = doc["result"]["knots"]
    assert [row["name"] for row in rows] == ["0_1", "3_1", "4_1", "5_2", "6_1"]


# per-module commands ------------------------------------------------------


def test_cyclotomic_verify(capsys):
    code, doc, _ = run_json(
        capsys, "cyclotomic", "--knot", "4_1", "--max-k", "5", "--verify"
    )
    assert code == 0
    result = doc["result"]
    assert result["verify"] == {
        "integral": True,
        "reconstructed_colors": 6,
        "reconstructed": True,
    }
    # the figure-eight expansion is flat
    assert all(h["terms"] == [[0, "1"]] for h in result["H"])


def test_mmr_command(capsys):
    code, doc, _ = run_json(capsys, "mmr", "--knot", "3_1", "--order", "8")
    assert code == 0
    assert doc["result"]["ok"] is True
    assert doc["result"]["mismatches"] == []


def test_loop_command(capsys):
    code, doc, _ = run_json(capsys, "loop", "--knot", "4_1", "--p", "1", "--verify")
    assert code == 0
    assert set(doc["result"]["coeffs"]) == {"0"}
    assert doc["result"]["verify"]["ok"] is True


def test_scan_near1_artifacts(capsys, tmp_path):
    target = tmp_path / "near1.csv"
    code, doc, _ = run_json(
        capsys,
        "scan-near1", "--knot", "3_1", "--m", "2", "--N", "12", "--csv", str(target),
    )
    assert code == 0
    assert doc["result"]["ok"] is True
    lines = target.read_text().splitlines()
    assert lines[0].startswith("# jonescope ")
    assert lines[1].startswith("# config ")
    assert lines[2] == "n,value_re,value_im,envelope"
    assert len(lines) == 3 + 12
    assert (tmp_path / "near1.png").exists()


def test_scan_near2_bounded(capsys):
    code, doc, _ = run_json(
        capsys, "scan-near2", "--knot", "3_1", "--p", "9", "--m", "10", "--N", "4"
    )
    assert code == 0
    assert doc["result"]["ok"] is True
    assert len(doc["result"]["rows"]) == 4


def test_bound_check_envelopes(capsys):
    code, doc, _ = run_json(capsys, "bound-check", "--knot", "3_1", "--N", "5")
    assert code == 0
    assert doc["result"]["l1_ok"] and doc["result"]["deg_ok"]
    assert len(doc["result"]["rows"]) == 5


def test_bound_check_alpha(capsys):
    code, doc, _ = run_json(
        capsys, "bound-check", "--knot", "3_1", "--alpha", "2pii", "--N", "8"
    )
    assert code == 0
    assert doc["result"]["ok"] is True
    assert doc["result"]["alpha"] == [0.0, 2 * math.pi]


def test_lob_value(capsys):
    code, doc, _ = run_json(capsys, "lob", "--theta", "0.25")
    assert code == 0
    assert doc["result"]["value"] == lobachevsky(0.25)


def test_rmax_single(capsys):
    code, doc, _ = run_json(capsys, "rmax", "--n", "30", "--brute")
    assert code == 0
    assert doc["result"]["matches"] is True
    assert doc["result"]["argmax"] == [22, 7, 15]


def test_rmax_scan_artifacts(capsys, tmp_path):
    target = tmp_path / "rmax.csv"
    code, doc, _ = run_json(
        capsys, "rmax", "--scan", "100,200", "--csv", str(target)
    )
    assert code == 0
    assert doc["result"]["decreasing"] is True
    assert target.exists() and (tmp_path / "rmax.png").exists()


def test_octa_central_triple(capsys):
    code, doc, _ = run_json(
        capsys, "octa", "--alpha", "0.75", "--beta", "0.25", "--kappa", "0.5"
    )
    assert code == 0
    assert abs(doc["result"]["volume"] - V8) < 1e-12
    assert abs(doc["result"]["difference"]) < 1e-9


def test_borromean_exact(capsys):
    code, doc, _ = run_json(capsys, "borromean", "--exact", "4", "--json")
    assert code == 0
    assert doc["result"]["terms"] == habiro_borromean(4).to_json_obj()["terms"]
    assert doc["result"]["normalized"] > 0


def test_borromean_scan_monotone(capsys, tmp_path):
    target = tmp_path / "bor.csv"
    code, doc, _ = run_json(
        capsys, "borromean", "--scan", "250,500", "--csv", str(target)
    )
    assert code == 0
    assert doc["result"]["decreasing"] is True
    rows = [line.split(",") for line in target.read_text().splitlines()[3:]]
    residuals = [abs(float(row[2])) for row in rows]
    assert residuals == sorted(residuals, reverse=True)


def test_qholo_files(capsys, tmp_path):
    eq, initials = sharpness_example()
    eq_file = tmp_path / "sharp.rec"
    eq_file.write_text(format_recurrence(eq))
    init_file = tmp_path / "init.json"
    init_file.write_text(json.dumps([p.to_json_obj() for p in initials]))
    code, doc, _ = run_json(
        capsys,
        "qholo", "--eq", str(eq_file), "--init", str(init_file),
        "--N", "10", "--verify",
    )
    assert code == 0
    result = doc["result"]
    assert result["constants"] == {"Cprime": 3, "C": 2}
    assert result["verify"] == {"ok": True, "checked": 11}
    assert result["profile"][-1] == [10, "55", "1024"]


def test_qholo_knot_experiment(capsys, tmp_path):
    # a recurrence that is wrong for the trefoil: reported, not asserted
    eq, initials = sharpness_example()
    eq_file = tmp_path / "sharp.rec"
    eq_file.write_text(format_recurrence(eq))
    init_file = tmp_path / "init.json"
    init_file.write_text(json.dumps([p.to_json_obj() for p in initials]))
    code, doc, _ = run_json(
        capsys,
        "qholo", "--eq", str(eq_file), "--init", str(init_file),
        "--N", "3", "--knot", "3_1",
    )
    assert code == 0
    experiment = doc["result"]["knot_experiment"]
    assert experiment["matches"][0] == [1, True]
    assert experiment["agreed"] == 1


# verify and plumbing ------------------------------------------------------


def test_verify_one_suite(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "lobachevsky")
    assert code == 0
    assert out.startswith("PASS lobachevsky")


def test_verify_focused_mmr(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "mmr", "--knot", "3_1", "--order", "8")
    assert code == 0
    assert "PASS mmr 3_1 order 8" in out


def test_verify_focus_rejected_elsewhere(capsys):
    code, _, err = run(capsys, "verify", "--suite", "lobachevsky", "--knot", "3_1")
    assert code == 2
    assert "only supported" in err


def test_verify_json_report(capsys, tmp_path):
    target = tmp_path / "report.json"
    code, _, _ = run(
        capsys, "verify", "--suite", "qfactorial", "--json", str(target)
    )
    assert code == 0
    doc = json.loads(target.read_text())
    assert doc["result"]["ok"] is True
    assert doc["result"]["criteria"][0]["name"] == "qfactorial"


def test_unknown_suite_rejected(capsys):
    with pytest.raises(SystemExit):
        main(["verify", "--suite", "nonsense"])


def test_inadmissible_octa_diagnostic(capsys):
    code, _, err = run(capsys, "octa", "--alpha", "0.2", "--beta", "0.5", "--kappa", "0.4")
    assert code == 2
    assert json.loads(err)["error"]["type"] == "ValueError"


def test_unknown_knot_diagnostic(capsys):
    code, _, err = run(capsys, "jones", "--knot", "9_99", "--n", "2")
    assert code == 2
    assert "9_99" in json.loads(err)["error"]["message"]


def test_precision_env(capsys, monkeypatch, tmp_path):
    monkeypatch.setenv("JONESCOPE_PRECISION", "5")
    target = tmp_path / "rmax.csv"
    code, doc, _ = run_json(capsys, "rmax", "--scan", "100,200", "--csv", str(target))
    assert code == 0
    assert doc["config"]["precision"] == 5
    rate_cell = target.read_text().splitlines()[3].split(",")[1]
    assert len(rate_cell.replace(".", "").lstrip("0")) <= 5


def test_precision_flag_beats_env(capsys, monkeypatch):
    monkeypatch.setenv("JONESCOPE_PRECISION", "5")
    code, doc, _ = run_json(capsys, "--precision", "12", "lob", "--theta", "0.5")
    assert code == 0
    assert doc["config"]["precision"] == 12


def test_output_to_file(capsys, tmp_path):
    target = tmp_path / "out.json"
    code, out, _ = run(
        capsys, "jones", "--knot", "unknot", "--n", "3", "--path", str(target)
    )
    assert code == 0
    assert out == ""
    doc = json.loads(target.read_text())
    assert doc["result"]["terms"] == [[0, "1"]]
