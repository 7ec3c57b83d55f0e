import copy
import json

import jsonschema
import pytest

from piexp import catalog
from piexp.cli import EXIT_BUDGET, EXIT_OK, EXIT_VALIDATION, main
from piexp.errors import ValidationError
from piexp.problem import (DATA_DIR, bundled, bundled_names, dump_problem, load_problem, parse_problem,
                           problem_from_objects, save_problem)

EXPECTED = {"m2", "ut2", "m2_z2_graded", "m2_z2_action", "m2_sl2_adjoint", "block_assoc_m2", "block_lie_m2"}


def schema():
    return json.loads((DATA_DIR / "problem.schema.json").read_text())


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    report = json.loads(out.split("--- report ---\n", 1)[-1]) if "--- report ---" in out else json.loads(out)
    return code, out, report


def test_bundled_examples_present():
    assert set(bundled_names()) == EXPECTED


@pytest.mark.parametrize("name", sorted(EXPECTED))
def test_bundled_examples_match_schema_and_round_trip(name, tmp_path):
    raw = json.loads((DATA_DIR / f"{name}.json").read_text())
    jsonschema.validate(raw, schema())
    pf = bundled(name)
    path = tmp_path / f"{name}.json"
    save_problem(pf, path)
    again = load_problem(path)
    assert again.digest() == pf.digest()
    jsonschema.validate(dump_problem(again), schema())


def test_objects_round_trip(tmp_path):
    A, G = catalog.m2_transpose_action()
    pf = problem_from_objects("m2_transpose", A, {"t": G})
    save_problem(pf, tmp_path / "t.json")
    back = load_problem(tmp_path / "t.json")
    assert back.structure("t").order == 2 and back.digest() == pf.digest()


def broken(name="m2"):
    return copy.deepcopy(bundled(name).source)


def test_non_associative_table_reports_triple():
    data = broken()
    data["algebra"]["table"][0][0] = ["0", "1", "0", "0"]  # e11 e11 = e12
    with pytest.raises(ValidationError) as err:
        parse_problem(data)
    assert "associativity fails on (" in str(err.value) and err.value.location == "algebra.table"
    assert err.value.witness is not None and len(err.value.witness) == 3


def test_overlapping_components():
    data = broken("m2_z2_graded")
    data["structures"][0]["components"][1]["basis"] = {"indices": [0, 1, 2]}
    with pytest.raises(ValidationError) as err:
        parse_problem(data)
    assert "components overlap" in str(err.value) and err.value.location.startswith("structures[0]")


def test_bad_entries_are_located():
    data = broken()
    data["algebra"]["table"][1][2][3] = "x/0"
    with pytest.raises(ValidationError) as err:
        parse_problem(data)
    assert err.value.location.startswith("algebra.table[1][2]")
    data = broken("m2_z2_action")
    data["polynomials"][0]["terms"][0]["vars"] = [1, 1]
    with pytest.raises(ValidationError) as err:
        parse_problem(data)
    assert err.value.location.startswith("polynomials[0]")


def test_bad_json_reports_line_and_column(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('{\n "name": "x",\n "algebra": [1, 2,,]\n}\n')
    with pytest.raises(ValidationError) as err:
        load_problem(p)
    assert "line 3 column" in str(err.value)


def test_missing_file():
    with pytest.raises(ValidationError):
        load_problem("/nonexistent/problem.json")


# ---- CLI ---------------------------------------------------------------------

def test_validate_command(capsys):
    code, out, rep = run(capsys, "validate", "m2_sl2_adjoint")
    assert code == EXIT_OK and "valid associative algebra of dimension 4" in out
    for key in ("schema", "engine_version", "command", "problem", "inputs_digest", "options", "threads",
                "status", "results", "flags", "timing", "exit_code"):
        assert key in rep
    assert rep["schema"] == "piexp-report/1" and rep["status"] == "ok"


def test_json_only_output(capsys):
    code = main(["radical", "ut2", "--json"])
    out = capsys.readouterr().out
    rep = json.loads(out)
    assert code == 0 and rep["results"]["dim"] == 1


def test_digest_is_stable(capsys):
    _, _, a = run(capsys, "codim", "m2", "--n", "2")
    _, _, b = run(capsys, "codim", "m2", "--n", "2", "--threads", "4")
    _, _, c = run(capsys, "codim", "m2", "--n", "3")
    assert a["inputs_digest"] == b["inputs_digest"] != c["inputs_digest"]


@pytest.mark.parametrize("argv, value", [
    (["codim", "ut2", "--n", "4"], 18),
    (["codim", "m2_z2_graded", "--n", "2", "--structure", "z2grading"], 7),
    (["codim", "m2_sl2_adjoint", "--n", "1", "--structure", "sl2"], 10),
    (["codim", "m2_sl2_adjoint", "--n", "2", "--structure", "sl2", "--modular"], 55),
    (["codim", "m2_z2_graded", "--n", "2", "--structure", "z2grading", "--regime", "operator"], 7),
])
def test_codim_command(capsys, argv, value):
    code, out, rep = run(capsys, *argv)
    assert code == EXIT_OK and rep["results"]["value"] == value and f"= {value}" in out


def test_codim_series_command(capsys):
    code, out, rep = run(capsys, "codim-series", "ut2", "--n-max", "4")
    assert code == 0 and rep["results"]["values"] == [1, 2, 6, 18]


def test_exponent_commands(capsys):
    code, out, rep = run(capsys, "exponent", "block_assoc_m2", "--structure", "sl2")
    assert code == 0 and rep["results"]["d"] == 4
    code, out, rep = run(capsys, "lie-exponent", "block_lie_m2", "--structure", "sl2")
    assert code == 0 and rep["results"]["d"] == 3
    code, out, rep = run(capsys, "exponent", "m2")
    assert rep["results"]["d"] == 4


def test_decomposition_commands(capsys):
    code, out, rep = run(capsys, "wedderburn-malcev", "block_assoc_m2", "--structure", "sl2")
    assert code == 0 and rep["results"]["complement_dim"] == 4
    code, out, rep = run(capsys, "levi", "block_lie_m2", "--structure", "sl2")
    assert code == 0 and rep["results"]["complement_dim"] == 3
    code, out, rep = run(capsys, "decompose", "m2")
    assert code == 0


def test_identity_commands(capsys):
    code, out, rep = run(capsys, "check-identity", "m2_z2_action", "--poly", "symmetric_commutator")
    assert code == 0 and rep["results"]["identity"] is True
    code, out, rep = run(capsys, "check-identity", "m2", "--poly", "commutator")
    assert code == 0 and rep["results"]["identity"] is False and "witness" in rep["results"]


def test_cocharacter_command(capsys):
    code, out, rep = run(capsys, "cocharacter", "ut2", "--n", "4", "--vanishing", "radical")
    assert code == 0 and rep["results"]["codim"] == 18 and rep["results"]["vanishing"]["ok"]


def test_check_simple_command(capsys):
    code, out, rep = run(capsys, "check-simple", "m2_sl2_adjoint", "--structure", "sl2")
    assert code == 0 and rep["results"]["simple"] is True and rep["results"]["consistent"]


def test_exit_codes(capsys):
    code, out, rep = run(capsys, "levi", "m2")
    assert code == EXIT_VALIDATION and rep["status"] == "invalid"
    code, out, rep = run(capsys, "codim", "m2", "--n", "9")
    assert code == EXIT_BUDGET and rep["status"] == "budget_exceeded" and rep["rows"] == 362880
    code, out, rep = run(capsys, "codim", "m2", "--n", "1", "--structure", "nope")
    assert code == EXIT_VALIDATION


def test_invalid_file_exit_code(capsys, tmp_path):
    data = broken()
    data["algebra"]["table"][0][0] = ["0", "1", "0", "0"]
    p = tmp_path / "bad.json"
    p.write_text(json.dumps(data))
    code = main(["validate", str(p), "--json"])
    rep = json.loads(capsys.readouterr().out)
    assert code == EXIT_VALIDATION and rep["location"] == "algebra.table" and len(rep["witness"]) == 3


def test_unknown_command_is_usage_error(capsys):
    with pytest.raises(SystemExit) as err:
        main(["frobnicate", "m2"])
    assert err.value.code == 2
