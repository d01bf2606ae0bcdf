"""Witness sampling and exact point verification.

The n=2 chirotope fixture is evaluated by hand from the 2x4 parameter
matrix [diag(a) | B]; the three-species verification points are published
sample values.  Sampling tests pin seeds, so every run walks the same
trial stream.
"""

import json
import random
from fractions import Fraction

import pytest

from lvcoex.completion import certify_impossible, complete
from lvcoex.grassmann import plucker_vector, verify_gp
from lvcoex.model import ParameterPoint, parse_sign_pattern, sample_point
from lvcoex.ratlin import mat_vec
from lvcoex.stability import feasibility_check
from lvcoex.witness import (
    SignMismatchError,
    WitnessReport,
    chirotope_of_point,
    find_witness,
    linear_infeasibility,
    verify_point,
    witness_csv,
)

ALL_PLUS_N2 = parse_sign_pattern("++ ++++")
OBLIG_MUT_N2 = parse_sign_pattern("-- +--+")
ROW2_CLASS_N3 = parse_sign_pattern("--- ++- ++- -++")
ROW3_CLASS_N3 = parse_sign_pattern("--- ++- -+- -++")

TABLE_ROW1 = ParameterPoint.from_decimals(
    (0.11, -0.056, -1.966),
    [[1, 2.949, -3.84], [0.897, 1, -1.954], [3.996, -6.962, 1]],
)


# ------------------------------------------------------- chirotope extraction

def test_chirotope_of_explicit_n2_point():
    # [diag(a) | B] = [[1,0,2,1],[0,1,1,2]]; minors in rank order
    # (12, 13, 14, 23, 24, 34) are 1, 1, 2, -2, -1, 3
    point = ParameterPoint.from_decimals((1, 1), [[2, 1], [1, 2]])
    assert chirotope_of_point(point) == "+++--+"


def test_chirotope_flags_zero_coordinates():
    point = ParameterPoint.from_decimals((1, 1), [[1, 2], [2, 4]])
    chi = chirotope_of_point(point)
    assert chi[-1] == "0"  # singular B zeroes the pure-B basis
    assert set(chi) <= {"+", "-", "0"}


def test_chirotope_matches_plucker_signs_on_samples():
    for text in ["+- ++-+", "--- ++- ++- -++"]:
        sp = parse_sign_pattern(text)
        for seed in range(5):
            point = sample_point(sp, seed=seed)
            pv = plucker_vector(point)
            assert verify_gp(pv)
            decoded = "".join(
                "0" if s == 0 else ("+" if s > 0 else "-")
                for s in pv.sign_vector()
            )
            assert chirotope_of_point(point) == decoded


# --------------------------------------------------------- point verification

def test_verify_point_published_row():
    # the row was constructed around the fixed equilibrium (1,1,1), so the
    # rounded entries must still satisfy a ~ B(1,1,1) componentwise; the
    # re-inverted equilibrium itself drifts by ~1e-2 and is only sanity-checked
    report = verify_point(TABLE_ROW1)
    assert report.feasible_stable
    for ai, row in zip(TABLE_ROW1.a, TABLE_ROW1.B):
        assert abs(ai - sum(row)) <= Fraction(2, 1000)
    for v in report.equilibrium():
        assert abs(v - 1) < Fraction(2, 100)


def test_verify_point_negative_determinant_is_infeasible():
    report = verify_point(ParameterPoint.from_decimals((1, 1), [[1, 2], [2, 1]]))
    assert report.feasibility.detB < 0
    assert not report.feasibility.feasible
    assert report.hurwitz is None
    assert not report.feasible_stable


def test_verify_point_rejects_sign_mismatch():
    point = ParameterPoint.from_decimals((1, 1), [[1, 1], [1, 1]])
    with pytest.raises(SignMismatchError):
        verify_point(point, expected=OBLIG_MUT_N2)


def test_verify_point_rejects_zero_entry_under_expected():
    point = ParameterPoint.from_decimals((1, 0), [[1, 1], [1, 1]])
    with pytest.raises(SignMismatchError):
        verify_point(point, expected=ALL_PLUS_N2)


def test_verify_point_accepts_matching_expected():
    point = ParameterPoint.from_decimals((1, 1), [[1, 1], [1, 1]])
    report = verify_point(point, expected=ALL_PLUS_N2)
    assert report.pattern == ALL_PLUS_N2
    assert report.trials_used == 0


# ------------------------------------------------------------ direct sampling

def test_find_witness_all_plus_n2():
    report = find_witness(ALL_PLUS_N2, trials=200, seed=7)
    assert report is not None
    assert report.feasible_stable
    assert "0" not in report.chirotope
    assert report.point.sign_pattern() == ALL_PLUS_N2
    assert 1 <= report.trials_used <= 200


def test_find_witness_obligate_mutualism_exhausts():
    assert find_witness(OBLIG_MUT_N2, trials=400, seed=3) is None


def test_find_witness_is_deterministic():
    a = find_witness(ALL_PLUS_N2, trials=50, seed=11)
    b = find_witness(ALL_PLUS_N2, trials=50, seed=11)
    assert a is not None
    assert a == b


def test_find_witness_seed_moves_the_stream():
    a = find_witness(ALL_PLUS_N2, trials=50, seed=1)
    b = find_witness(ALL_PLUS_N2, trials=50, seed=2)
    assert a is not None and b is not None
    assert a.point != b.point


def test_find_witness_rejects_nonpositive_trials():
    with pytest.raises(ValueError):
        find_witness(ALL_PLUS_N2, trials=0)


def test_magnitude_range_is_honored():
    # a degenerate range pins every magnitude to 1, so all-plus only ever
    # draws the singular all-ones matrix and can never produce a witness
    assert find_witness(ALL_PLUS_N2, trials=20, seed=0,
                        magnitude_range=(1.0, 1.0)) is None


# --------------------------------------------------------- fixed equilibrium

def test_fixed_equilibrium_soundness():
    # a = B x* with x* > 0 is feasible exactly when det B > 0
    rng = random.Random(5)
    for _ in range(60):
        n = rng.choice((2, 3))
        B = [[Fraction(rng.choice([v for v in range(-9, 10) if v]))
              for _ in range(n)] for _ in range(n)]
        x = [Fraction(rng.randint(1, 9)) for _ in range(n)]
        feas = feasibility_check(mat_vec(B, x), B)
        assert feas.feasible == (feas.detB > 0)


def test_fixed_equilibrium_finds_rare_class():
    report = find_witness(ROW3_CLASS_N3, trials=2000, seed=0,
                          fixed_equilibrium=True)
    assert report is not None
    assert report.feasible_stable
    assert report.point.sign_pattern() == ROW3_CLASS_N3


def test_fixed_equilibrium_is_deterministic():
    a = find_witness(ROW3_CLASS_N3, trials=2000, seed=0, fixed_equilibrium=True)
    b = find_witness(ROW3_CLASS_N3, trials=2000, seed=0, fixed_equilibrium=True)
    assert a == b


# --------------------------------------------------- cross-module consistency

def test_witness_chirotope_is_a_completion():
    report = find_witness(ROW2_CLASS_N3, trials=2000, seed=0,
                          fixed_equilibrium=True)
    assert report is not None
    assert report.chirotope in complete(ROW2_CLASS_N3).completions


def test_witness_implies_certify_possible():
    report = find_witness(ALL_PLUS_N2, trials=100, seed=0)
    assert report is not None
    assert certify_impossible(ALL_PLUS_N2).verdict == "possible"


# ------------------------------------------------------------------ exports

def test_report_json_uses_exact_strings():
    report = find_witness(ALL_PLUS_N2, trials=100, seed=0)
    payload = json.loads(json.dumps(report.to_json()))
    assert payload["pattern"] == ALL_PLUS_N2.text()
    assert payload["feasible_stable"] is True
    assert payload["chirotope"] == report.chirotope
    assert payload["trials_used"] == report.trials_used
    assert all(isinstance(v, str) for v in payload["feasibility"]["x_tilde"])
    assert all(isinstance(v, str) for v in payload["hurwitz"]["H"])
    assert ParameterPoint.from_json(payload["point"]) == report.point


def test_infeasible_report_json_has_null_hurwitz():
    report = verify_point(ParameterPoint.from_decimals((1, 1), [[1, 2], [2, 1]]))
    assert report.to_json()["hurwitz"] is None


def test_witness_csv_layout():
    found = find_witness(ALL_PLUS_N2, trials=100, seed=0)
    text = witness_csv([(ALL_PLUS_N2, found), (OBLIG_MUT_N2, None)])
    lines = text.splitlines()
    assert lines[0] == "pattern,verdict,trials_used"
    assert lines[1] == f"{ALL_PLUS_N2.text()},witness,{found.trials_used}"
    assert lines[2] == f"{OBLIG_MUT_N2.text()},none,"
    assert text.endswith("\n")


# ------------------------------------------------------- linear infeasibility

def test_row_certificate_fires_on_single_signed_rows():
    # a = B x* with x* > 0 inherits the sign of an all-positive row
    assert linear_infeasibility(parse_sign_pattern("-- ++++")) == 0
    assert linear_infeasibility(parse_sign_pattern("++-+-+-+++++")) == 2


def test_row_certificate_silent_on_mixed_rows():
    assert linear_infeasibility(ALL_PLUS_N2) is None
    assert linear_infeasibility(OBLIG_MUT_N2) is None
    # the two single-completion classes carry no such certificate
    assert linear_infeasibility(parse_sign_pattern("+--+--++-+-+")) is None
    assert linear_infeasibility(parse_sign_pattern("---++--+++-+")) is None


def test_row_certificate_covers_all_negative_rows():
    sp = parse_sign_pattern("+- ----", allow_any_diagonal=True)
    assert linear_infeasibility(sp) == 0


def test_row_certificate_sound_on_all_n2_patterns():
    from itertools import product

    for bits in product("+-", repeat=4):
        text = "".join(bits[:2]) + " " + "+" + bits[2] + bits[3] + "+"
        sp = parse_sign_pattern(text)
        if linear_infeasibility(sp) is not None:
            assert find_witness(sp, trials=400, seed=7) is None
