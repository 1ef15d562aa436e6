import json
import subprocess
import sys

import pytest

from dnfuchs import __version__
from dnfuchs.cli import RunConfig, main
from dnfuchs.dn import DNMatrix, irregular_example
from dnfuchs.verify import corrupted_symmetry_fixture, run_verification

SYMMETRY_THEOREM_CHECKS = {
    "symmetry.symmetric_implies_coefficient_symmetry",
    "symmetry.symmetric_implies_adjointness",
    "symmetry.symmetric_implies_w_chart_adjointness",
}


# ---------------------------------------------------------------- verify suites


def test_default_verification_passes():
    summary = run_verification(seed=0)
    assert summary.passed, summary.failed()
    assert all(r.cases > 0 for r in summary.results)


def test_corrupted_fixture_fails_exactly_symmetry_checks():
    fixture = corrupted_symmetry_fixture()
    assert not fixture.is_symmetric()
    summary = run_verification(seed=0, fixtures=[fixture])
    assert set(summary.failed()) == SYMMETRY_THEOREM_CHECKS


def test_verification_is_reproducible():
    a = run_verification(seed=3, sizes=(1, 2), suites=["weyl", "detright", "symmetry"])
    b = run_verification(seed=3, sizes=(1, 2), suites=["weyl", "detright", "symmetry"])
    assert a.to_json() == b.to_json()


# ---------------------------------------------------------------- CLI


def write(tmp_path, name, obj):
    p = tmp_path / name
    p.write_text(json.dumps(obj))
    return str(p)


def run(argv, capsys):
    code = main(argv)
    out = capsys.readouterr().out
    return code, json.loads(out)


def test_construct_example(tmp_path, capsys):
    path = write(tmp_path, "a.json", irregular_example(1).to_json())
    code, rep = run(["construct", path], capsys)
    assert code == 0
    assert rep["operator"]["text"] == "t^3*D^2 + 3*t^2*D + t - 1"
    assert all(rep["verdicts"].values())
    assert rep["config"]["seed"] == 0 and rep["config"]["version"] == __version__
    assert rep["config"]["tol_spectral"] > 0


def test_construct_zero_and_non_symmetric(tmp_path, capsys):
    code, rep = run(["construct", write(tmp_path, "z.json", {"n": 0, "entries": {"0,0": "7/2"}})], capsys)
    assert code == 0 and rep["operator"]["text"] == "t - 7/2"
    bad = DNMatrix.from_rows([[1, 2], [1, 3]]).to_json()
    code, rep = run(["construct", write(tmp_path, "b.json", bad)], capsys)
    assert code == 0
    assert rep["verdicts"]["coefficient_symmetry"] is False
    assert rep["verdicts"]["adjoint"] is False


@pytest.mark.parametrize("matrix", [irregular_example(2).to_json(), {"n": 0, "entries": {"0,0": "5"}},
                                    {"n": 1, "entries": {"0,0": "1", "0,1": "-2/3", "1,1": "4"}}])
def test_construct_reconstruct_roundtrip(tmp_path, capsys, matrix):
    code, built = run(["construct", write(tmp_path, "m.json", matrix)], capsys)
    assert code == 0
    code, back = run(["reconstruct", write(tmp_path, "op.json", built)], capsys)
    assert code == 0
    assert DNMatrix.from_json(back["matrix"]) == DNMatrix.from_json(matrix)
    operator_only = {"terms": built["operator"]["terms"]}
    code, back2 = run(["reconstruct", write(tmp_path, "op2.json", operator_only)], capsys)
    assert code == 0 and back2["matrix"] == back["matrix"]


def test_analyze_reports_degeneracy_as_field(tmp_path, capsys):
    code, rep = run(["analyze", write(tmp_path, "a.json", irregular_example(1).to_json())], capsys)
    assert code == 0
    assert rep["fuchs"]["points"][0]["classification"] == "irregular"
    assert rep["spectrum"]["error"] == "DegenerateSpectrum"
    assert rep["residues"]["error"] == "RepeatedSingularity"
    assert rep["infinity"]["nilpotency_index"] == 3


def test_analyze_first_order_example(tmp_path, capsys):
    A = DNMatrix.from_rows([[0, 1], [1, 0]]).to_json()
    code, rep = run(["analyze", write(tmp_path, "a.json", A)], capsys)
    assert code == 0
    assert [round(r["trace"][0], 12) for r in rep["spectrum"]["residue_matrices"]] == [-0.5, -0.5]
    assert [r["residue"] for r in rep["residues"]["finite"]] == ["1/2", "1/2"]


def test_monodromy_command(tmp_path, capsys):
    A = DNMatrix.from_rows([[0, 1], [1, 0]]).to_json()
    code, rep = run(["monodromy", write(tmp_path, "a.json", A)], capsys)
    assert code == 0
    mono = rep["monodromy"]
    assert [[round(x[0], 9) for x in R[0]] for R in mono["reduced"]] == [[-1.0], [-1.0]]
    assert mono["polarization"]["symmetry"] == "symmetric"
    code, rep = run(["monodromy", write(tmp_path, "d.json", irregular_example(1).to_json())], capsys)
    assert code == 3 and rep["error"] == "DegenerateSpectrum"


def test_input_errors_exit_2(tmp_path, capsys):
    assert run(["construct", write(tmp_path, "x.json", {"n": 1, "entries": {"0,0": "abc"}})], capsys)[0] == 2
    assert run(["construct", str(tmp_path / "missing.json")], capsys)[0] == 2
    good = write(tmp_path, "g.json", irregular_example(1).to_json())
    assert run(["construct", good, "--n", "3"], capsys)[0] == 2
    (tmp_path / "broken.json").write_text("{not json")
    assert run(["analyze", str(tmp_path / "broken.json")], capsys)[0] == 2
    inexact = write(tmp_path, "f.json", {"n": 0, "entries": {"0,0": 0.5}})
    assert run(["construct", inexact], capsys)[0] == 2


def test_verify_exit_codes(capsys):
    code, rep = run(["verify", "--suites", "weyl", "symmetry", "--n", "1", "2"], capsys)
    assert code == 0 and rep["passed"]
    code, rep = run(["verify", "--suites", "symmetry", "--fixture", "corrupted-symmetry"], capsys)
    assert code == 1
    assert set(rep["failed"]) == SYMMETRY_THEOREM_CHECKS


def test_output_is_byte_identical(tmp_path):
    path = write(tmp_path, "a.json", DNMatrix.from_rows([[1, 2], [1, -1]]).to_json())
    outs = []
    for k in range(2):
        out = tmp_path / f"out{k}.json"
        assert main(["analyze", path, "--out", str(out)]) == 0
        outs.append(json.loads(out.read_text()))
    outs[0]["config"].pop("output")
    outs[1]["config"].pop("output")
    assert json.dumps(outs[0], sort_keys=True) == json.dumps(outs[1], sort_keys=True)
    a = main(["verify", "--suites", "weyl", "--out", str(tmp_path / "v.json")])
    first = (tmp_path / "v.json").read_bytes()
    b = main(["verify", "--suites", "weyl", "--out", str(tmp_path / "v.json")])
    assert a == b == 0 and (tmp_path / "v.json").read_bytes() == first


def test_run_config_rejects_nonpositive_tolerance():
    with pytest.raises(ValueError):
        RunConfig("analyze", None, None, None, 0.0, 1e-12, 1e-6, None, 0)


def test_module_entry_point(tmp_path):
    path = write(tmp_path, "a.json", irregular_example(0).to_json())
    proc = subprocess.run([sys.executable, "-m", "dnfuchs", "construct", path], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["operator"]["text"] == "t^3*D^2 + 3*t^2*D + t"
