"""End-to-end command-line tests driven through main(argv)."""

import json

import pytest

from finefrob.cli import main


def write_doc(tmp_path, name, obj):
    path = tmp_path / name
    path.write_text(json.dumps(obj))
    return str(path)


def run(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out
    return code, out


def run_json(capsys, argv):
    code, out = run(capsys, argv)
    return code, json.loads(out)


def mat_doc(entries, field="Q"):
    return {"field": field, "n": len(entries), "entries": entries}


WORKED = [["2", "5"], ["-1", "0"]]  # minpoly X^2 - 2X + 5
ROT = [["0", "-1"], ["1", "0"]]
JORDAN = [["1", "1"], ["0", "1"]]


# ---------------------------------------------------------------------------
# basic command behavior
# ---------------------------------------------------------------------------

def test_minpoly_command(tmp_path, capsys):
    path = write_doc(tmp_path, "m.json", mat_doc(WORKED))
    code, doc = run_json(capsys, ["minpoly", path])
    assert code == 0
    assert doc["command"] == "minpoly"
    assert doc["result"]["coeffs"] == ["5", "-2", "1"]
    assert isinstance(doc["input_hash"], str) and len(doc["input_hash"]) == 64


def test_factor_command(tmp_path, capsys):
    path = write_doc(tmp_path, "f.json", {"field": "Q", "coeffs": ["-1", "0", "1"]})
    code, doc = run_json(capsys, ["factor", path])
    assert code == 0
    factors = doc["result"]["factors"]
    assert [f["coeffs"] for f in factors] == [["-1", "1"], ["1", "1"]]
    assert all(f["multiplicity"] == 1 for f in factors)


def test_jc_command(tmp_path, capsys):
    path = write_doc(tmp_path, "m.json", mat_doc(JORDAN))
    code, doc = run_json(capsys, ["jc", path])
    assert code == 0
    assert doc["result"]["S"]["entries"] == [["1", "0"], ["0", "1"]]
    assert doc["result"]["N"]["entries"] == [["0", "1"], ["0", "0"]]


def test_cjc_command_rotation(tmp_path, capsys):
    path = write_doc(tmp_path, "m.json", mat_doc(ROT))
    code, doc = run_json(capsys, ["cjc", path])
    assert code == 0
    res = doc["result"]
    assert res["H"]["entries"] == [["0", "0"], ["0", "0"]]
    assert res["V"]["entries"] == ROT
    assert res["N"]["entries"] == [["0", "0"], ["0", "0"]]
    assert res["factors"] == [{"coeffs": ["1", "0", "1"], "multiplicity": 1, "alpha": "0"}]


def test_cjc_command_worked_example(tmp_path, capsys):
    path = write_doc(tmp_path, "m.json", mat_doc(WORKED))
    code, doc = run_json(capsys, ["cjc", path])
    assert code == 0
    res = doc["result"]
    assert res["H"]["entries"] == [["1", "0"], ["0", "1"]]
    assert res["V"]["entries"] == [["1", "5"], ["-1", "-1"]]


def test_fine_command(tmp_path, capsys):
    path = write_doc(tmp_path, "m.json", mat_doc(WORKED))
    code, doc = run_json(capsys, ["fine", path])
    assert code == 0
    res = doc["result"]
    assert res["linear"] == []
    quad = res["quadratic"][0]
    assert quad["alpha"] == "1" and quad["n"] == "4"
    assert quad["B"]["entries"] == [["1", "5"], ["-1", "-1"]]
    assert quad["P"]["entries"] == [["1", "0"], ["0", "1"]]
    assert res["A0"]["entries"] == [["0", "0"], ["0", "0"]]


def test_normalize_command(tmp_path, capsys):
    path = write_doc(tmp_path, "m.json", mat_doc(WORKED))
    code, doc = run_json(capsys, ["normalize", path])
    assert code == 0
    quad = doc["result"]["quadratic"][0]
    assert quad["imaginary"] == "2"
    assert quad["B_unit"]["entries"] == [["1/2", "5/2"], ["-1/2", "-1/2"]]


def test_domain_command(tmp_path, capsys):
    path = write_doc(tmp_path, "m.json", mat_doc(WORKED))
    code, doc = run_json(capsys, ["domain", path, "--fn", "exp", "--abs", "arch"])
    assert code == 0
    res = doc["result"]
    assert res["in_omega_hat"] is True
    assert res["radius"] == "inf"
    assert res["eigen_data"][0]["kind"] == "quadratic"


def test_domain_padic_negative(tmp_path, capsys):
    path = write_doc(tmp_path, "m.json", mat_doc([["1", "0"], ["0", "1"]]))
    code, doc = run_json(capsys, ["domain", path, "--fn", "exp", "--abs", "padic:3"])
    assert code == 0
    assert doc["result"]["in_omega_hat"] is False


def test_apply_arch(tmp_path, capsys):
    path = write_doc(tmp_path, "m.json", mat_doc(ROT))
    code, doc = run_json(capsys, ["apply", path, "--fn", "exp", "--abs", "arch"])
    assert code == 0
    res = doc["result"]
    assert res["kind"] == "arch"
    assert res["series"] == {"name": "EXP"}
    assert res["precision"] == 128
    # entry (0,0) is cos 1 = 0.5403...
    assert res["entries"][0][0].startswith("0.540302305868")


def test_apply_padic(tmp_path, capsys):
    path = write_doc(tmp_path, "m.json", mat_doc([["3", "0"], ["0", "3"]]))
    code, doc = run_json(
        capsys, ["apply", path, "--fn", "exp", "--abs", "padic:3", "--prec", "10"]
    )
    assert code == 0
    res = doc["result"]
    assert res["kind"] == "padic" and res["p"] == 3
    assert res["valuation_bound"] >= 10
    assert res["entries"][0][1] == "0"


def test_apply_custom_series(tmp_path, capsys):
    series = write_doc(
        tmp_path, "s.json", {"coeffs": ["1", "0", "1"], "radius": "inf"}
    )
    path = write_doc(tmp_path, "m.json", mat_doc(WORKED))
    code, doc = run_json(
        capsys, ["apply", path, "--fn", f"custom:{series}", "--abs", "arch"]
    )
    assert code == 0
    res = doc["result"]
    assert res["series"]["coeffs"] == ["1", "0", "1"]
    # I + M^2 = [[0, 10], [-2, -4]]; exact decimals
    assert res["entries"][0][1].startswith("10.0")


# ---------------------------------------------------------------------------
# check
# ---------------------------------------------------------------------------

def check_round_trip(tmp_path, capsys, command_argv, input_path):
    code, out = run(capsys, command_argv)
    assert code == 0
    result_path = tmp_path / "result.json"
    result_path.write_text(out)
    return run_json(capsys, ["check", input_path, str(result_path)])


def test_check_cjc_passes(tmp_path, capsys):
    path = write_doc(tmp_path, "m.json", mat_doc(WORKED))
    code, doc = run_json(capsys, ["cjc", path])
    assert code == 0
    result_path = write_doc(tmp_path, "res.json", doc)
    code, verdict = run_json(capsys, ["check", path, result_path])
    assert code == 0
    assert verdict["result"]["checked_command"] == "cjc"
    assert verdict["result"]["passed"] is True
    assert verdict["report"]["sum_reconstructs"] is True


def test_check_detects_corruption(tmp_path, capsys):
    path = write_doc(tmp_path, "m.json", mat_doc(WORKED))
    code, doc = run_json(capsys, ["cjc", path])
    doc["result"]["V"]["entries"][0][0] = "7"
    result_path = write_doc(tmp_path, "res.json", doc)
    code, verdict = run_json(capsys, ["check", path, result_path])
    assert code == 0
    assert verdict["result"]["passed"] is False
    assert verdict["report"]["sum_reconstructs"] is False


def test_check_minpoly_and_factor(tmp_path, capsys):
    mpath = write_doc(tmp_path, "m.json", mat_doc(WORKED))
    code, doc = run_json(capsys, ["minpoly", mpath])
    rpath = write_doc(tmp_path, "r1.json", doc)
    code, verdict = run_json(capsys, ["check", mpath, rpath])
    assert code == 0 and verdict["result"]["passed"] is True

    fpath = write_doc(tmp_path, "f.json", {"field": "Q", "coeffs": ["-1", "0", "1"]})
    code, doc = run_json(capsys, ["factor", fpath])
    rpath = write_doc(tmp_path, "r2.json", doc)
    code, verdict = run_json(capsys, ["check", fpath, rpath])
    assert code == 0 and verdict["result"]["passed"] is True


def test_check_fine_and_normalize(tmp_path, capsys):
    path = write_doc(tmp_path, "m.json", mat_doc(WORKED))
    for cmd in ("fine", "normalize"):
        code, doc = run_json(capsys, [cmd, path])
        rpath = write_doc(tmp_path, f"r-{cmd}.json", doc)
        code, verdict = run_json(capsys, ["check", path, rpath])
        assert code == 0 and verdict["result"]["passed"] is True


def test_check_apply_arch(tmp_path, capsys):
    path = write_doc(tmp_path, "m.json", mat_doc(ROT))
    code, doc = run_json(capsys, ["apply", path, "--fn", "exp", "--abs", "arch"])
    rpath = write_doc(tmp_path, "r.json", doc)
    code, verdict = run_json(capsys, ["check", path, rpath])
    assert code == 0
    assert verdict["result"]["passed"] is True
    assert verdict["report"]["oracle_within_tolerance"] is True


def test_check_apply_padic(tmp_path, capsys):
    path = write_doc(tmp_path, "m.json", mat_doc([["3", "0"], ["0", "3"]]))
    code, doc = run_json(
        capsys, ["apply", path, "--fn", "exp", "--abs", "padic:3", "--prec", "10"]
    )
    rpath = write_doc(tmp_path, "r.json", doc)
    code, verdict = run_json(capsys, ["check", path, rpath])
    assert code == 0
    assert verdict["result"]["passed"] is True


def test_check_rejects_result_without_command(tmp_path, capsys):
    path = write_doc(tmp_path, "m.json", mat_doc(WORKED))
    rpath = write_doc(tmp_path, "r.json", {"result": {}})
    code, doc = run_json(capsys, ["check", path, rpath])
    assert code == 1
    assert doc["error"]["code"] == "SchemaMismatch"


# ---------------------------------------------------------------------------
# exit codes and error envelopes
# ---------------------------------------------------------------------------

def test_fine_not_semisimple_exits_2(tmp_path, capsys):
    path = write_doc(tmp_path, "m.json", mat_doc(JORDAN))
    code, doc = run_json(capsys, ["fine", path])
    assert code == 2
    assert doc["error"]["code"] == "NotSemisimple"


def test_apply_outside_domain_exits_2(tmp_path, capsys):
    path = write_doc(tmp_path, "m.json", mat_doc([["1", "0"], ["0", "1"]]))
    code, doc = run_json(capsys, ["apply", path, "--fn", "exp", "--abs", "padic:3"])
    assert code == 2
    assert doc["error"]["code"] == "NotInOmegaHat"


def test_missing_file_exits_1(capsys):
    code, doc = run_json(capsys, ["minpoly", "/nonexistent/nope.json"])
    assert code == 1
    assert doc["error"]["code"] == "SchemaMismatch"


def test_malformed_json_exits_1(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text("{not json")
    code, doc = run_json(capsys, ["minpoly", str(path)])
    assert code == 1


def test_missing_entries_key_exits_1(tmp_path, capsys):
    path = write_doc(tmp_path, "m.json", {"field": "Q", "n": 2})
    code, doc = run_json(capsys, ["minpoly", path])
    assert code == 1
    assert doc["error"]["code"] == "SchemaMismatch"


def test_composite_p_exits_1(tmp_path, capsys):
    path = write_doc(tmp_path, "m.json", mat_doc(WORKED))
    code, doc = run_json(capsys, ["apply", path, "--fn", "exp", "--abs", "padic:4"])
    assert code == 1
    assert doc["error"]["code"] == "NotPrime"


def test_unknown_flag_exits_1(tmp_path, capsys):
    path = write_doc(tmp_path, "m.json", mat_doc(WORKED))
    code, doc = run_json(capsys, ["minpoly", path, "--bogus"])
    assert code == 1


def test_unknown_series_exits_1(tmp_path, capsys):
    path = write_doc(tmp_path, "m.json", mat_doc(WORKED))
    code, doc = run_json(capsys, ["apply", path, "--fn", "tan", "--abs", "arch"])
    assert code == 1


def test_bad_seed_exits_1(tmp_path, capsys):
    path = write_doc(tmp_path, "m.json", mat_doc(WORKED))
    code, doc = run_json(capsys, ["minpoly", path, "--seed", "-1"])
    assert code == 1


def test_custom_series_without_radius_exits_1(tmp_path, capsys):
    series = write_doc(tmp_path, "s.json", {"coeffs": ["1", "1"]})
    path = write_doc(tmp_path, "m.json", mat_doc(WORKED))
    code, doc = run_json(
        capsys, ["apply", path, "--fn", f"custom:{series}", "--abs", "arch"]
    )
    assert code == 1


# ---------------------------------------------------------------------------
# determinism and prime fields
# ---------------------------------------------------------------------------

def test_output_is_byte_identical(tmp_path, capsys):
    path = write_doc(tmp_path, "m.json", mat_doc(WORKED))
    _, first = run(capsys, ["cjc", path])
    _, second = run(capsys, ["cjc", path])
    assert first == second
    _, third = run(capsys, ["apply", path, "--fn", "exp", "--abs", "arch"])
    _, fourth = run(capsys, ["apply", path, "--fn", "exp", "--abs", "arch"])
    assert third == fourth


def test_prime_field_matrix(tmp_path, capsys):
    doc = mat_doc([["0", "3"], ["1", "0"]], field="Fp:7")
    path = write_doc(tmp_path, "m.json", doc)
    code, out = run_json(capsys, ["minpoly", path])
    assert code == 0
    assert out["result"]["field"] == "Fp:7"
    assert out["result"]["coeffs"] == ["4", "0", "1"]  # X^2 - 3 over F_7


def test_cjc_prime_field(tmp_path, capsys):
    doc = mat_doc([["0", "3"], ["1", "0"]], field="Fp:7")
    path = write_doc(tmp_path, "m.json", doc)
    code, out = run_json(capsys, ["cjc", path])
    assert code == 0
    res = out["result"]
    assert res["H"]["field"] == "Fp:7"
    assert res["V"]["entries"] == [["0", "3"], ["1", "0"]]
