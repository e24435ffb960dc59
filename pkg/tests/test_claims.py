import json
from pathlib import Path

import jsonschema
import pytest

from se3sym.claims import (
    CONFIRMED,
    DISCREPANCY,
    PUBLISHED_COMMUTATORS,
    claims_report,
    published_adjoint_matrix,
)
from se3sym.adjoint import closed_form

SCHEMA_DIR = Path(__file__).resolve().parent.parent / "schemas"


@pytest.fixture(scope="module")
def report():
    return claims_report(samples=3000, seed=42)


def test_every_published_item_graded_once(report):
    ids = [c.claim_id for c in report.claims]
    assert len(ids) == len(set(ids))
    expected = {
        "commutator-table",
        "adjoint-matrix-x1", "adjoint-matrix-x2", "adjoint-matrix-x3",
        "adjoint-matrix-x4", "adjoint-matrix-x5", "adjoint-matrix-x6",
        "symmetry-generator-family",
        "rigid-motion-symmetries",
        "laplace-special-symmetries",
        "one-dim-representatives",
        "two-dim-subalgebras",
        "three-dim-subalgebra",
        "three-dim-commutator-table",
        "four-dim-subalgebra",
        "four-dim-commutator-table",
        "no-five-dim-subalgebra",
        "solution-transformations",
    }
    assert set(ids) == expected


def test_statuses(report):
    statuses = report.statuses()
    assert statuses["commutator-table"] == CONFIRMED
    for i in (1, 2, 3, 5, 6):
        assert statuses[f"adjoint-matrix-x{i}"] == CONFIRMED
    assert statuses["adjoint-matrix-x4"] == DISCREPANCY
    assert statuses["two-dim-subalgebras"] == DISCREPANCY
    assert statuses["three-dim-commutator-table"] == DISCREPANCY
    assert statuses["four-dim-commutator-table"] == CONFIRMED
    assert statuses["laplace-special-symmetries"] == DISCREPANCY
    assert statuses["one-dim-representatives"] == DISCREPANCY
    assert statuses["rigid-motion-symmetries"] == CONFIRMED
    assert statuses["no-five-dim-subalgebra"] == CONFIRMED
    assert statuses["solution-transformations"] == CONFIRMED
    assert report.has_discrepancy()


def test_adjoint_x4_mismatch_is_exactly_the_third_row_sign(report):
    claim = next(c for c in report.claims if c.claim_id == "adjoint-matrix-x4")
    mismatches = claim.evidence["mismatched_entries"]
    assert len(mismatches) == 1
    assert mismatches[0]["row"] == 3 and mismatches[0]["col"] == 2
    assert mismatches[0]["published"] == "S"
    assert mismatches[0]["recomputed"] == "-S"


def test_published_adjoint_fixture_matches_for_other_generators():
    for i in (1, 2, 3, 5, 6):
        assert closed_form(i).entries == published_adjoint_matrix(i)


def test_two_dim_witness_recorded(report):
    claim = next(c for c in report.claims if c.claim_id == "two-dim-subalgebras")
    failing = [
        row
        for row in claim.evidence["verdicts"]
        if row["case"] == "A2_6" and not row["closed"]
    ]
    assert failing
    for row in failing:
        a = row["a"]
        assert row["witness_bracket"][1] == str(-int(a))
    variant = [
        row for row in claim.evidence["verdicts"] if row["case"] == "A2_6_proof_variant"
    ]
    assert variant and all(row["closed"] and row["abelian"] for row in variant)


def test_laplace_claim_records_all_fields(report):
    claim = next(c for c in report.claims if c.claim_id == "laplace-special-symmetries")
    fields = claim.evidence["fields"]
    assert fields["printed_conformal_z"]["phi_space_for_xi"].startswith("inconsistent")
    assert fields["conformal_z"]["u_coefficient_gauge_fixed"] == "-z"
    assert fields["conformal_x"]["matches"] and fields["conformal_y"]["matches"]
    assert fields["zero_field"]["homogeneous_dimension"] == 10
    assert fields["u_shift"]["printed_component_admissible"]
    assert fields["diagonal_translation"]["printed_component_admissible"]


def test_one_dim_claim_has_conjugacy_words(report):
    claim = next(c for c in report.claims if c.claim_id == "one-dim-representatives")
    assert claim.evidence["distinct_cases_conjugate_by_rotations"]
    sweep = claim.evidence["random_sweep"]
    assert sweep["max_disallowed_coordinate"] < 1e-9
    recipe = claim.evidence["published_recipe_sample"]
    assert recipe["max_disallowed_after_recipe"] > 1.0
    assert recipe["verified_fallback"]["case"] == "A12"


def test_five_dim_claim_label(report):
    claim = next(c for c in report.claims if c.claim_id == "no-five-dim-subalgebra")
    assert "consistent" in claim.evidence["label"]
    assert claim.evidence["min_closure_residual"] > 1e-6
    assert not claim.evidence["closed_hyperplane_found"]
    assert claim.evidence["targeted_hyperplanes"]["dual_of_x5"]["closed"] is False


def test_report_deterministic_and_schema_valid(report):
    again = claims_report(samples=3000, seed=42)
    assert report.to_json() == again.to_json()
    schema = json.loads((SCHEMA_DIR / "claims_report.json").read_text())
    jsonschema.validate(json.loads(report.to_json()), schema)


def test_different_seed_still_confirms(tmp_path):
    other = claims_report(samples=500, seed=7)
    statuses = other.statuses()
    assert statuses["commutator-table"] == CONFIRMED
    assert statuses["adjoint-matrix-x4"] == DISCREPANCY


def test_published_commutator_fixture_is_antisymmetric():
    for i in range(6):
        for j in range(6):
            assert PUBLISHED_COMMUTATORS[i][j] == tuple(
                -t for t in PUBLISHED_COMMUTATORS[j][i]
            )
