import io
import json
import math
from contextlib import redirect_stdout
from pathlib import Path

import jsonschema
import pytest

from se3sym.cli import main

SCHEMA_DIR = Path(__file__).resolve().parent.parent / "schemas"


def _run(argv):
    buffer = io.StringIO()
    with redirect_stdout(buffer):
        status = main(argv)
    return status, buffer.getvalue()


def _validate(payload, schema_name):
    schema = json.loads((SCHEMA_DIR / schema_name).read_text())
    jsonschema.validate(payload, schema)


def test_table_csv_cell():
    status, out = _run(["table"])
    assert status == 0
    rows = [line.split(",") for line in out.strip().splitlines()]
    header = rows[0]
    body = {row[0]: row[1:] for row in rows[1:]}
    col = header.index("X_5") - 1
    assert body["X_4"][col] == "-X_6"
    assert body["X_1"][header.index("X_1") - 1] == "0"


def test_table_json_schema():
    status, out = _run(["table", "--format", "json"])
    assert status == 0
    payload = json.loads(out)
    _validate(payload, "table.json")
    assert payload["cells"][3][4] == "-X_6"


def test_adjoint_symbolic_and_evaluated():
    status, out = _run(["adjoint", "--gen", "1"])
    assert status == 0
    payload = json.loads(out)
    _validate(payload, "adjoint.json")
    assert payload["symbolic"][4] == ["0", "0", "s", "0", "1", "0"]
    assert payload["symbolic"][5] == ["0", "-s", "0", "0", "0", "1"]

    status, out = _run(["adjoint", "--gen", "6", "--param", str(math.pi / 2)])
    payload = json.loads(out)
    _validate(payload, "adjoint.json")
    assert abs(payload["evaluated"][0][1] - 1.0) < 1e-12
    assert abs(payload["evaluated"][0][0]) < 1e-12


def test_adjoint_gen_out_of_range():
    status, _ = _run(["adjoint", "--gen", "9"])
    assert status == 2


def test_classify_axis_rotation():
    status, out = _run(["classify", "--vector", "0,0,0,0,0,1"])
    assert status == 0
    payload = json.loads(out)
    _validate(payload, "classify.json")
    assert payload["representative"]["case"] == "A11"
    assert payload["screw"]["pitch"] == 0.0
    assert payload["screw"]["canonical"] == [0.0, 0.0, 0.0, 0.0, 0.0, 1.0]


def test_classify_accepts_rationals_and_floats():
    status, out = _run(["classify", "--vector", "1/2,0,0,3,1,2"])
    assert status == 0
    payload = json.loads(out)
    assert payload["representative"]["case"] == "A12"
    status, _ = _run(["classify", "--vector", "0.5,0,0,3.0,1,2"])
    assert status == 0


def test_classify_malformed_vector():
    status, _ = _run(["classify", "--vector", "1,2,bad,0,0,1"])
    assert status == 2
    status, _ = _run(["classify", "--vector", "1,2,3"])
    assert status == 2
    status, _ = _run(["classify", "--vector", "0,0,0,0,0,0"])
    assert status == 2


def test_equiv_quarter_turn():
    status, out = _run(["equiv", "--x", "1,0,0,2,0,0", "--y", "0,1,0,0,2,0"])
    assert status == 0
    payload = json.loads(out)
    _validate(payload, "equiv.json")
    assert payload["equivalent"] is True
    assert len(payload["word"]) == 1
    assert payload["word"][0][0] == 6
    assert abs(payload["word"][0][1] - math.pi / 2) < 1e-9


def test_equiv_inequivalent_pair():
    status, out = _run(["equiv", "--x", "0,0,0,0,0,1", "--y", "1,0,0,0,0,0"])
    assert status == 0
    payload = json.loads(out)
    _validate(payload, "equiv.json")
    assert payload["equivalent"] is False and payload["word"] is None


def test_prolong_named_field():
    status, out = _run(["prolong", "--field", "X5"])
    assert status == 0
    payload = json.loads(out)
    _validate(payload, "prolong.json")
    assert payload["all_zero"] is True
    assert payload["invariance_residual"] == "0"


def test_prolong_dilation_shows_counterexample():
    status, out = _run(["prolong", "--field", "dilation"])
    assert status == 0
    payload = json.loads(out)
    assert payload["all_zero"] is False
    assert payload["invariance_residual"] == "-2*f"


def test_prolong_custom_field():
    status, out = _run(["prolong", "--field", "z;0;-x;0"])
    assert status == 0
    payload = json.loads(out)
    assert payload["all_zero"] is True


def test_prolong_malformed_field():
    status, _ = _run(["prolong", "--field", "z;0"])
    assert status == 2


def test_verify_solutions_family():
    status, out = _run(["verify-solutions", "--family", "exp_x", "--samples", "20"])
    assert status == 0
    payload = json.loads(out)
    _validate(payload, "verify_solutions.json")
    worst = max(payload["families"]["exp_x"]["max_residual_by_generator"].values())
    assert worst <= 1e-6
    assert 3.5 <= payload["convergence_ratio"] <= 4.5
    assert payload["flow_vs_closed_form_max"] <= 1e-8


def test_verify_solutions_unknown_family():
    status, _ = _run(["verify-solutions", "--family", "nope"])
    assert status == 2


def test_check_claims_exit_code_and_schema():
    status, out = _run(["check-claims", "--samples", "2000"])
    assert status == 1  # discrepancies are present by design
    payload = json.loads(out)
    _validate(payload, "claims_report.json")
    statuses = {c["id"]: c["status"] for c in payload["claims"]}
    assert statuses["adjoint-matrix-x4"] == "discrepancy"
    assert statuses["two-dim-subalgebras"] == "discrepancy"


def test_check_claims_byte_identical_runs():
    status_a, out_a = _run(["check-claims", "--samples", "2000", "--seed", "42"])
    status_b, out_b = _run(["check-claims", "--samples", "2000", "--seed", "42"])
    assert status_a == status_b == 1
    assert out_a.encode() == out_b.encode()


def test_unknown_flag_rejected():
    with pytest.raises(SystemExit) as info:
        _run(["table", "--nope"])
    assert info.value.code == 2
