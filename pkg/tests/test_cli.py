import json
import math

import numpy as np
import pytest

import qilab as q
from qilab.cli import main
from qilab.serialize import (
    FormatError,
    matrix_from_json,
    matrix_to_json,
    state_from_json,
    state_to_json,
)


def write_density(tmp_path, rho, name="state.json"):
    path = tmp_path / name
    path.write_text(json.dumps(matrix_to_json(rho.mat, rho.dims)))
    return str(path)


def write_pure(tmp_path, psi, name="pure.json"):
    path = tmp_path / name
    path.write_text(json.dumps(state_to_json(psi)))
    return str(path)


def run(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out
    return code, json.loads(out) if out.strip().startswith("{") else out


def test_serialize_roundtrips():
    m = np.array([[1, 2j], [-2j, 0.5]])
    obj = matrix_to_json(m, (2,))
    back, dims = matrix_from_json(obj)
    assert np.allclose(back, m)
    assert dims == (2,)
    psi = q.phi_plus()
    assert np.allclose(state_from_json(state_to_json(psi)).amps, psi.amps)
    with pytest.raises(FormatError):
        matrix_from_json({"rows": 2, "cols": 2, "re": [1], "im": [0]})


def test_cli_ppt_and_exit_codes(tmp_path, capsys):
    path = write_density(tmp_path, q.phi_plus().density())
    code, rep = run(capsys, ["ppt", "--state", path])
    assert code == 0
    assert rep["results"]["is_ppt"] is False
    assert rep["results"]["min_eig"] == pytest.approx(-0.5, abs=1e-9)


def test_cli_witness(tmp_path, capsys):
    path = write_density(tmp_path, q.phi_plus().density())
    code, rep = run(capsys, ["witness", "--state", path, "--witness", "chsh"])
    assert code == 0
    assert rep["results"]["value"] == pytest.approx(-1 / math.sqrt(2), abs=1e-9)
    assert rep["results"]["detects"] is True


def test_cli_extend_infeasible_exit_code(tmp_path, capsys):
    path = write_density(tmp_path, q.phi_plus().density())
    code, rep = run(capsys, ["extend", "--state", path, "--k", "2"])
    assert code == 2
    assert rep["results"]["status"] == "InfeasibleEvidence"
    assert rep["results"]["residual"] >= 0.05


def test_cli_classify_and_marginal(tmp_path, capsys):
    path = write_pure(tmp_path, q.ghz_state())
    code, rep = run(capsys, ["classify3q", "--state", path])
    assert code == 0
    assert rep["results"]["class"] == "GHZ"
    code, rep = run(capsys, ["marginal3q", "--a", "0.7", "--b", "0.65", "--c", "0.8"])
    assert code == 0
    assert rep["results"]["compatible"] is True
    code, rep = run(capsys, ["marginal3q", "--a", "0.9", "--b", "0.9", "--c", "0.5"])
    assert code == 0
    assert rep["results"]["compatible"] is False


def test_cli_teleport_deterministic(capsys):
    code, rep1 = run(capsys, ["teleport"])
    assert code == 0
    assert rep1["results"]["fidelity"] == pytest.approx(1.0, abs=1e-9)
    code, rep2 = run(capsys, ["teleport"])
    assert rep1 == rep2  # default seed, byte-identical report


def test_cli_compress(capsys):
    code, rep = run(capsys, ["compress", "--p0", "0.11", "--rate", "0.6",
                             "--n", "300", "--trials", "50"])
    assert code == 0
    assert rep["results"]["success_rate"] >= 0.9


def test_cli_entropy(tmp_path, capsys):
    path = write_density(tmp_path, q.phi_plus().density())
    code, rep = run(capsys, ["entropy", "--state", path])
    assert code == 0
    assert rep["results"]["I_AB"] == pytest.approx(2.0, abs=1e-9)


def test_cli_definetti_spectrum_datahiding_motzkin(capsys):
    code, rep = run(capsys, ["definetti", "--d", "2", "--n", "100", "--k", "5"])
    assert code == 0
    assert rep["results"]["overlap"] >= rep["results"]["overlap_lower_bound"]
    code, rep = run(capsys, ["spectrum", "--r", "0.25", "--n", "4"])
    assert code == 0
    assert sum(rep["results"]["probs"].values()) == pytest.approx(1.0, abs=1e-9)
    assert set(rep["results"]["probs"]) == {"2", "1", "0"}
    code, rep = run(capsys, ["datahiding", "--d", "2"])
    assert code == 0
    assert rep["results"]["ppt_bias_bound"] == pytest.approx(1 / 3, abs=1e-9)
    code, rep = run(capsys, ["motzkin", "--n", "3", "--edges", "0-1,1-2,0-2"])
    assert code == 0
    assert rep["results"]["clique_number"] == 3


def test_cli_chsh_deterministic(capsys):
    code1, rep1 = run(capsys, ["chsh"])
    code2, rep2 = run(capsys, ["chsh"])
    assert code1 == code2 == 0
    assert rep1 == rep2
    assert rep1["results"]["classical"] == 0.75
    assert rep1["results"]["quantum"] == pytest.approx(q.QUANTUM_OPTIMUM, abs=1e-6)


def test_cli_input_errors(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["ppt", "--state", str(bad)]) == 1
    assert main(["marginal3q", "--a", "0.3", "--b", "0.6", "--c", "0.6"]) == 1
    missing = tmp_path / "missing.json"
    assert main(["witness", "--state", str(missing)]) == 1
    assert main(["frobnicate"]) == 1  # unknown subcommand


def test_cli_text_format(tmp_path, capsys):
    path = write_density(tmp_path, q.phi_plus().density())
    code = main(["--format", "text", "ppt", "--state", path])
    out = capsys.readouterr().out
    assert code == 0
    assert "results.is_ppt" in out
