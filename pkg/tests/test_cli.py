import json
import pathlib

import numpy as np
import pytest

from kreinframes import DEFAULT_TOLERANCES
from kreinframes.cli import fmt, main, parse_tolerances
from kreinframes.io import decode_matrix, load_problem

PROBLEMS = pathlib.Path(__file__).resolve().parent.parent / "problems"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def run_json(tmp_path, *argv):
    path = tmp_path / "report.json"
    code = main([str(a) for a in argv] + ["--quiet", "--json", str(path)])
    return code, json.loads(path.read_text())


def write(tmp_path, obj, name="p.json"):
    path = tmp_path / name
    path.write_text(json.dumps(obj))
    return path


# -- analyze --------------------------------------------------------------------

def test_analyze_degenerate(capsys):
    code, out, _ = run(capsys, "analyze", PROBLEMS / "degenerate_family.json")
    assert code == 2
    assert "reason: M_plus degenerate: neutral direction present" in out


def test_analyze_e3(tmp_path):
    code, data = run_json(tmp_path, "analyze", PROBLEMS / "e3_family.json")
    assert code == 0
    assert data["is_j_frame"]
    b = data["bounds"]
    np.testing.assert_allclose([b["B_minus"], b["A_minus"], b["A_plus"], b["B_plus"]],
                               [-1, -1, 1, 3], atol=1e-8)
    np.testing.assert_allclose(decode_matrix(data["S"]),
                               [[2, 1, 0], [1, 2, 0], [0, 0, 1]], atol=1e-8)
    np.testing.assert_allclose(decode_matrix(data["S_minus"]), np.diag([0, 0, -1]), atol=1e-8)
    assert data["reconstruction_residual"] < 1e-12
    assert data["I_plus"] == [0, 1, 2] and data["I_minus"] == [3]
    assert data["plus"]["maximal"] and data["minus"]["uniformly_definite"]
    assert data["theta_plus"] == pytest.approx(np.pi / 4, abs=1e-7)


def test_analyze_hilbert_space(capsys):
    code, out, _ = run(capsys, "analyze", PROBLEMS / "hilbert_pair.json")
    assert code == 0
    assert "note: no negative side: space is Hilbert" in out
    assert "I_minus: []" in out


def test_analyze_neutral_column(capsys, tmp_path):
    code, out, _ = run(capsys, "analyze", PROBLEMS / "neutral_column.json")
    assert code == 2
    assert "position(s) [2]" in out
    code, data = run_json(tmp_path, "analyze", PROBLEMS / "neutral_column.json")
    assert data["neutral_indices"] == [2]


# -- check-operator --------------------------------------------------------------------

def test_check_swap_operator(capsys):
    code, out, _ = run(capsys, "check-operator", PROBLEMS / "swap_operator.json")
    assert code == 2
    assert "ind=(1,1) but no admissible Q found among tried witnesses" in out


@pytest.mark.parametrize("with_witness", [True, False])
def test_check_identity(tmp_path, with_witness):
    obj = json.loads((PROBLEMS / "identity_operator.json").read_text())
    if not with_witness:
        del obj["witnesses"]
    code, data = run_json(tmp_path, "check-operator", write(tmp_path, obj))
    assert code == 0 and data["verdict"]
    cert = data["certificates"][0]
    np.testing.assert_allclose(decode_matrix(cert["Q"]), np.diag([1, 0]), atol=1e-12)


def test_check_rejects_non_selfadjoint(tmp_path):
    p = write(tmp_path, {"space": {"signature": [1, 1]}, "operator": [[1, 1], [0, 1]]})
    code, data = run_json(tmp_path, "check-operator", p)
    assert code == 2 and not data["J_selfadjoint"]


def test_check_with_subspace_witness(tmp_path):
    obj = {"space": {"signature": [2, 1]}, "operator": [[2, 1, 0], [1, 2, 0], [0, 0, 1]],
           "witnesses": {"T": [[[1, 0], [0, 1], [0, 0]], [[1], [0], [0]]]}}
    code, data = run_json(tmp_path, "check-operator", write(tmp_path, obj))
    assert code == 0
    first, second = data["certificates"]
    assert first["verdict"] and not second["verdict"]       # the second is not maximal


def test_synthesize_roundtrip(tmp_path, capsys):
    out_file = tmp_path / "family.json"
    code, _, _ = run(capsys, "check-operator", PROBLEMS / "e3_split.json",
                     "--synthesize", "--out", out_file)
    assert code == 0
    code, data = run_json(tmp_path, "analyze", out_file)
    assert code == 0 and data["is_j_frame"]
    np.testing.assert_allclose(decode_matrix(data["S"]),
                               [[2, 1, 0], [1, 2, 0], [0, 0, 1]], atol=1e-12)
    # the family file re-parses to the same verdict fields
    code2, data2 = run_json(tmp_path, "analyze", out_file)
    assert (code2, data2["is_j_frame"], data2["reason"]) == (code, data["is_j_frame"], data["reason"])


def test_synthesize_alias_with_extra(tmp_path):
    out_file = tmp_path / "family.json"
    code, data = run_json(tmp_path, "synthesize", PROBLEMS / "e3_split.json",
                          "--extra", "2", "--out", out_file, "--seed", "3")
    assert code == 0 and data["synthesized"]["is_j_frame"]
    assert load_problem(out_file).family.size == 3 + 4


def test_synthesize_needs_split(capsys):
    code, _, err = run(capsys, "synthesize", PROBLEMS / "swap_operator.json")
    assert code == 1 and "S1 and S2" in err


def test_synthesize_rejects_bad_split(tmp_path, capsys):
    obj = json.loads((PROBLEMS / "e3_split.json").read_text())
    obj["witnesses"]["S2"] = [[0, 0, 0], [0, 0, 0], [0, 0, 1]]
    code, _, err = run(capsys, "synthesize", write(tmp_path, obj))
    assert code == 2 and "rejected" in err


# -- angle -----------------------------------------------------------------------------

def test_angle_tilted_line(capsys):
    code, out, _ = run(capsys, "angle", PROBLEMS / "tilted_line.json")
    assert code == 0
    assert "c0: 0.965925826" in out
    assert "theta: 0.261799388" in out


def test_angle_positive_half(tmp_path):
    code, data = run_json(tmp_path, "angle", PROBLEMS / "positive_half.json")
    assert code == 0
    assert data["c0"] == pytest.approx(np.sqrt(0.5), abs=1e-9)


def test_angle_indefinite(capsys):
    code, out, _ = run(capsys, "angle", PROBLEMS / "indefinite_plane.json")
    assert code == 0
    assert "c0: 1\n" in out
    assert "note: subspace contains neutral vectors" in out


def test_angle_oracle(tmp_path):
    code, data = run_json(tmp_path, "angle", PROBLEMS / "tilted_line.json", "--oracle", "500")
    assert data["oracle_samples"] == 500
    assert data["oracle_c0"] == pytest.approx(data["c0"], abs=1e-6)


# -- plumbing ----------------------------------------------------------------------------

@pytest.mark.parametrize("command, name", [
    ("analyze", "e3_family.json"),
    ("check-operator", "swap_operator.json"),
    ("angle", "tilted_line.json"),
])
def test_json_output_is_deterministic(tmp_path, command, name):
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    for path in (a, b):
        main([command, str(PROBLEMS / name), "--seed", "7", "--quiet", "--json", str(path)])
    assert a.read_text() == b.read_text()


def test_parse_tolerances():
    assert parse_tolerances(None) == DEFAULT_TOLERANCES
    t = parse_tolerances(["rank=1e-6", "angle=1e-4"])
    assert (t.rank, t.angle, t.psd) == (1e-6, 1e-4, DEFAULT_TOLERANCES.psd)
    t = parse_tolerances(["1e-5"])
    assert t.rank == t.neutral == t.check == 1e-5
    with pytest.raises(ValueError):
        parse_tolerances(["bogus=1"])


def test_tol_flag_changes_verdict(capsys, tmp_path):
    # {v, e2} with v barely off the neutral cone: neutral under a loose tolerance only
    p = write(tmp_path, {"space": {"signature": [1, 1]},
                         "family": [[1, 0], [1 - 1e-6, 1]]})
    assert run(capsys, "analyze", p)[0] == 0
    assert run(capsys, "analyze", p, "--tol", "neutral=1e-5")[0] == 2


@pytest.mark.parametrize("content", ["{not json", '{"family": [[1]]}', '{"space": {"signature": [1]}}',
                                     '{"space": {"signature": [1, 1]}, "family": [[1, 2, 3]]}',
                                     '{"space": {"signature": [1, 1]}, "family": [[[1, 2, 3]], [0]]}'])
def test_bad_input_exits_1(tmp_path, capsys, content):
    p = tmp_path / "bad.json"
    p.write_text(content)
    code, _, err = run(capsys, "analyze", p)
    assert code == 1 and err.startswith("error:")


def test_missing_file(capsys, tmp_path):
    assert run(capsys, "angle", tmp_path / "nope.json")[0] == 1


def test_missing_section(capsys):
    code, _, err = run(capsys, "angle", PROBLEMS / "e3_family.json")
    assert code == 1 and "subspace" in err


def test_fmt():
    assert fmt(-0.0) == "0"
    assert fmt(1 / 3) == "0.333333333"
    assert fmt(1 - 2j) == "1-2j"
    assert fmt((1, 2)) == "(1, 2)"
    assert fmt(None) == "-"
