"""Acceptance suite: twelve criteria, one test and one PASS/FAIL line each.

Tests 1-11 run the corresponding self-check criterion and additionally pin
a few representative values directly, so a vacuous runner cannot pass.
Test 12 executes the installed CLI end to end.  Run with -s to see the
PASS/FAIL lines.  Exact equality throughout; no tolerances.
"""

import subprocess
import sys
from fractions import Fraction

import pytest

from fourfold.assembly import compute_invariants, realize_spec_chi
from fourfold.meyer import fiber_sum_signature, meyer_function
from fourfold.recipes import (
    CONSTRUCTED,
    UNKNOWN_OPEN,
    recipe_fill_semibundle,
    recipe_fill_torus_bundle,
    recipe_xn,
)
from fourfold.sl2z import (
    B,
    ID,
    S,
    abelianization_class,
    are_conjugate,
    is_in_derived_subgroup,
    matrix_to_word,
    semibundle_relator,
    word_to_matrix,
)
from fourfold.verify import (
    criterion_1,
    criterion_2,
    criterion_3,
    criterion_4,
    criterion_5,
    criterion_6,
    criterion_7,
    criterion_8,
    criterion_9,
    criterion_10,
    criterion_11,
    format_line,
)
from fourfold.wall import semibundle_wall_data, wall_correction, wall_correction_form


def check(result, *spots):
    for spot in spots:
        assert spot
    print(format_line(result))
    assert result.passed, result.detail


def test_criterion_01_meyer_twist_formula():
    check(
        criterion_1(),
        meyer_function(B) == Fraction(2, 3),
        meyer_function(B ** -4) == Fraction(1, 3),
        meyer_function(B ** 36) == -11,
        meyer_function(ID) == 0,
    )


def test_criterion_02_fiber_sum_signature():
    check(
        criterion_2(),
        fiber_sum_signature([B, B ** 3, B ** -4]) == 1,
        fiber_sum_signature([B, B ** 3] * 10 + [B ** -40]) == 19,
    )


def test_criterion_03_wall_correction():
    triple = semibundle_wall_data(B ** 20)
    reps, gram = wall_correction_form(triple)
    check(
        criterion_3(),
        wall_correction(triple) == -1,
        gram == ((Fraction(-40),),),
        len(reps) == 1,
    )


def test_criterion_04_closed_family():
    report = compute_invariants(recipe_xn(12))
    check(
        criterion_4(),
        report.euler == 12,
        report.signature == 12,
        report.closed,
        report.l2_betti == (0, 0, 12, 0, 0),
    )


def test_criterion_05_abelianization():
    check(
        criterion_5(),
        abelianization_class(B).additive_order == 12,
        is_in_derived_subgroup((S * B) ** 12),
        not is_in_derived_subgroup(B),
    )


def test_criterion_06_semibundle_relator():
    check(
        criterion_6(),
        semibundle_relator(B ** 20) == B ** 40,
        semibundle_relator(B) == B ** 2,
    )


def test_criterion_07_word_round_trip():
    pinned = S ** 3 * B ** -3 * S * B ** 2 * S ** -2 * B
    result = criterion_7()
    check(
        result,
        word_to_matrix(matrix_to_word(pinned)) == pinned,
        "111973" in result.detail,
    )


def test_criterion_08_conjugacy_coherence():
    g = S * B ** 2
    check(
        criterion_8(),
        are_conjugate(B, g * B * g.inverse()).conjugate,
        not are_conjugate(B, B ** 2).conjugate,
        not are_conjugate(B, B.inverse()).conjugate,
    )


def test_criterion_09_meyer_integrality():
    value = fiber_sum_signature([S, S.inverse()])
    spot_rejects = False
    try:
        fiber_sum_signature([B])
    except ValueError:
        spot_rejects = True
    check(criterion_9(), isinstance(value, int), spot_rejects)


def test_criterion_10_spectrum_realizations():
    labels = [f.label for f in realize_spec_chi(6, -4).factors]
    with pytest.raises(ValueError):
        realize_spec_chi(6, -3)
    check(criterion_10(), labels == ["X_1", "Sigma_3"])


def test_criterion_11_filling_outcomes():
    deep = recipe_fill_torus_bundle(B ** 12)  # class 0; still signature 1
    check(
        criterion_11(),
        deep.status == CONSTRUCTED,
        compute_invariants(deep.assembly).signature == 1,
        recipe_fill_torus_bundle(B).status == UNKNOWN_OPEN,
        recipe_fill_semibundle(B ** 2).status == CONSTRUCTED,
    )


def test_criterion_12_verify_paper_cli():
    proc = subprocess.run(
        [sys.executable, "-m", "fourfold", "verify-paper"],
        capture_output=True,
        text=True,
        timeout=300,
    )
    passed = proc.returncode == 0
    status = "PASS" if passed else "FAIL"
    print(f"{status} criterion 12 (verify-paper CLI): exit status {proc.returncode}")
    assert proc.stdout.count("PASS criterion") == 11, proc.stdout
    assert "all criteria passed" in proc.stdout
    assert passed, proc.stdout + proc.stderr
