import math

import numpy as np
import pytest

from se3sym.algebra import AlgebraElement, X1, X2, X3, X4, X5, X6
from se3sym.adjoint import (
    AdjointWord,
    TrigPoly,
    ad_matrix,
    adjoint_series,
    apply_word,
    automorphism_defect,
    closed_form,
    omega_norm_sq,
    step_matrix,
    symbolic_automorphism_defect,
    translation_dot,
)

SIGMAS = np.linspace(-math.pi, math.pi, 50)


def test_ad_matrix_column_readoff():
    mat = ad_matrix(X6)
    # first column holds [X_6, X_1] = -X_2
    column = tuple(mat[k][0] for k in range(6))
    assert column == (0, -1, 0, 0, 0, 0)


def test_ad_matrix_of_zero_and_linearity():
    zero = ad_matrix(AlgebraElement.exact([0] * 6))
    assert all(v == 0 for row in zero for v in row)
    lhs = ad_matrix(X1 + X4)
    rhs_a, rhs_b = ad_matrix(X1), ad_matrix(X4)
    assert lhs == tuple(
        tuple(a + b for a, b in zip(ra, rb)) for ra, rb in zip(rhs_a, rhs_b)
    )


def test_series_translation_terminates():
    # the image of X_6 under the second translation picks up sigma X_1
    sigma = 0.83
    low = adjoint_series(2, sigma, 2)
    high = adjoint_series(2, sigma, 30)
    assert np.allclose(low, high, atol=1e-15)
    assert np.allclose(low[5], [sigma, 0, 0, 0, 0, 1])


def test_series_identity_at_zero():
    for i in range(1, 7):
        assert np.allclose(adjoint_series(i, 0.0, 5), np.eye(6))


def test_series_rotation_example():
    # rotating the z-translation about the x-axis by pi/3
    sigma = math.pi / 3
    matrix = adjoint_series(4, sigma, 30)
    expected = np.zeros(6)
    expected[1] = -math.sin(sigma)
    expected[2] = math.cos(sigma)
    assert np.allclose(matrix[2], expected, atol=1e-14)


def test_closed_form_nilpotent_rows():
    m1 = closed_form(1)
    s = TrigPoly.symbol("s")
    one = TrigPoly.constant(1)
    zero = TrigPoly()
    assert m1.entries[4] == (zero, zero, s, zero, one, zero)
    assert m1.entries[5] == (zero, -s, zero, zero, zero, one)
    for r in (0, 1, 2, 3):
        expected = tuple(one if c == r else zero for c in range(6))
        assert m1.entries[r] == expected


def test_closed_form_rotation_blocks():
    m6 = closed_form(6)
    C, S = TrigPoly.symbol("C"), TrigPoly.symbol("S")
    assert m6.entries[0][0] == C and m6.entries[0][1] == S
    assert m6.entries[1][0] == -S and m6.entries[1][1] == C
    assert m6.entries[3][3] == C and m6.entries[3][4] == S
    assert m6.entries[4][3] == -S and m6.entries[4][4] == C
    # the series-consistent x-rotation has -S in its third row
    m4 = closed_form(4)
    assert m4.entries[1][1] == C and m4.entries[1][2] == S
    assert m4.entries[2][1] == -S and m4.entries[2][2] == C


def test_closed_form_matches_series_everywhere():
    for i in range(1, 7):
        matrix = closed_form(i)
        for sigma in SIGMAS:
            diff = np.abs(adjoint_series(i, float(sigma), 30) - matrix.evaluate(float(sigma)))
            assert diff.max() < 1e-12


def test_step_matrix_consistent_with_closed_form():
    for i in range(1, 7):
        for sigma in (-2.0, -0.3, 0.0, 0.7, 3.0):
            assert np.allclose(
                step_matrix(i, sigma), closed_form(i).evaluate(sigma), atol=1e-15
            )


def test_group_law_per_generator():
    rng = np.random.default_rng(11)
    for i in range(1, 7):
        for _ in range(10):
            sigma, tau = rng.uniform(-math.pi, math.pi, size=2)
            lhs = closed_form(i).evaluate(sigma) @ closed_form(i).evaluate(tau)
            rhs = closed_form(i).evaluate(sigma + tau)
            assert np.abs(lhs - rhs).max() < 1e-12


def test_determinant_is_one():
    for i in range(1, 7):
        for sigma in SIGMAS:
            assert abs(np.linalg.det(closed_form(i).evaluate(float(sigma))) - 1.0) < 1e-12


def test_apply_word_examples():
    word = AdjointWord.of((6, math.pi / 2))
    moved = apply_word(word, AlgebraElement.exact([1, 0, 0, 2, 0, 0]))
    assert np.allclose(moved.as_array(), [0, 1, 0, 0, 2, 0], atol=1e-14)

    assert apply_word(AdjointWord(), X3).as_array().tolist() == [0, 0, 1, 0, 0, 0]

    sigma = 1.37
    moved = apply_word(AdjointWord.of((1, sigma)), X5)
    assert np.allclose(moved.as_array(), [0, 0, sigma, 0, 1, 0], atol=1e-15)


def test_word_inverse_and_simplify():
    word = AdjointWord.of((2, 0.5), (2, -0.5), (4, 0.0), (3, 1.0))
    assert word.simplified().steps == ((3, 1.0),)
    inv = word.inverse()
    assert inv.steps == ((3, -1.0), (4, -0.0), (2, 0.5), (2, -0.5))
    rng = np.random.default_rng(3)
    element = AlgebraElement.numeric(rng.standard_normal(6))
    roundtrip = apply_word(inv, apply_word(word, element))
    assert np.allclose(roundtrip.as_array(), element.as_array(), atol=1e-12)


def test_word_validation():
    with pytest.raises(ValueError):
        AdjointWord.of((7, 1.0))
    with pytest.raises(ValueError):
        AdjointWord.of((1, math.inf))


def test_automorphism_defect_examples():
    word = AdjointWord.of((4, 0.7))
    x = X2.to_float()
    assert max(abs(c) for c in automorphism_defect(word, x, x).coeffs) == 0.0
    defect = automorphism_defect(word, x, X6.to_float())
    assert max(abs(c) for c in defect.coeffs) < 1e-10


def test_automorphism_defect_random_words():
    rng = np.random.default_rng(17)
    for _ in range(300):
        length = rng.integers(1, 5)
        word = AdjointWord(
            tuple(
                (int(rng.integers(1, 7)), float(rng.uniform(-math.pi, math.pi)))
                for _ in range(length)
            )
        )
        x = AlgebraElement.numeric(rng.standard_normal(6))
        y = AlgebraElement.numeric(rng.standard_normal(6))
        defect = automorphism_defect(word, x, y)
        assert max(abs(c) for c in defect.coeffs) < 1e-10


def test_orbit_invariants_preserved():
    rng = np.random.default_rng(23)
    for _ in range(300):
        length = rng.integers(0, 5)
        word = AdjointWord(
            tuple(
                (int(rng.integers(1, 7)), float(rng.uniform(-math.pi, math.pi)))
                for _ in range(length)
            )
        )
        x = AlgebraElement.numeric(rng.standard_normal(6))
        moved = apply_word(word, x)
        assert abs(omega_norm_sq(moved) - omega_norm_sq(x)) < 1e-9
        assert abs(translation_dot(moved) - translation_dot(x)) < 1e-9


def test_symbolic_defect_reduces_to_zero():
    for i in range(1, 7):
        defect = symbolic_automorphism_defect(i, X1, X5)
        assert all(component.is_zero() for component in defect)
    defect = symbolic_automorphism_defect(4, X2 + X4, X5 - X3)
    assert all(component.is_zero() for component in defect)


def test_trig_poly_relation():
    C, S = TrigPoly.symbol("C"), TrigPoly.symbol("S")
    assert C * C + S * S == TrigPoly.constant(1)
    assert str(C * C) == "-S^2 + 1"
