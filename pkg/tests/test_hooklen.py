from fractions import Fraction

import pytest

from kjparts.colored import ckj_series, fn_polynomial
from kjparts.hooklen import (
    binom3_identity_check,
    c1b2_exact_sum,
    c1b2_series,
    compare_low_order,
    hook_poly_sum,
    lambda4_frequency_identity,
    nekrasov_okounkov_series,
    restricted_sum,
    restricted_variant3_sum,
    total_fours,
)
from kjparts.partitions import (
    conjugate,
    enumerate_partitions,
    hook_census,
    hook_lengths,
    is_self_conjugate,
)
from kjparts.qpoly import QPoly

from oracles import partition_count

B = QPoly.x()


def _hook_contribution(parts, cutoff):
    term = QPoly.one()
    for h in hook_lengths(parts):
        if h <= cutoff:
            term = term * QPoly((1, Fraction(-1, h * h)))
    return term


# -- full expansion -------------------------------------------------------------

def test_expansion_first_coefficients():
    series = nekrasov_okounkov_series(4)
    assert series.coeffs[0] == QPoly.one()
    assert series.coeffs[1] == 1 - B
    assert series.coeffs[2] == QPoly((2, Fraction(-5, 2), Fraction(1, 2)))


def test_expansion_at_zero_gives_partition_counts():
    series = nekrasov_okounkov_series(8)
    for n in range(9):
        assert series.coeffs[n].evaluate(0) == partition_count(n)


def test_expansion_cross_checked_against_hook_sums():
    series = nekrasov_okounkov_series(7)
    for n in range(8):
        assert series.coeffs[n] == hook_poly_sum(n)


def test_expansion_guarded_by_limit():
    with pytest.raises(ValueError):
        nekrasov_okounkov_series(16)
    assert nekrasov_okounkov_series(16, limit=16, check=False).order == 16


# -- hook sums --------------------------------------------------------------------

def test_hook_poly_sum_examples():
    assert hook_poly_sum(2, 1) == (1 - B) * 2
    assert hook_poly_sum(2) == (1 - B) * (1 - B * Fraction(1, 4)) * 2
    assert hook_poly_sum(0) == QPoly.one()


def test_hook_sum_unit_cutoff_equals_marked_polynomial_at_minus_b():
    for n in range(15):
        fn = fn_polynomial(n)
        substituted = QPoly([c * (-1) ** i for i, c in enumerate(fn.coeffs)])
        assert hook_poly_sum(n, 1) == substituted
        assert restricted_sum(n, 1) == substituted


# -- restricted sums --------------------------------------------------------------

def test_restricted_sum_examples():
    assert restricted_sum(1, 1) == 1 - B
    assert restricted_sum(1, 5) == 1 - B
    two = restricted_sum(2, 2)
    assert two == (1 - B) + (1 - B) * (1 - B * Fraction(1, 2))
    assert restricted_sum(3, 1) == QPoly((3, -4, 1))
    with pytest.raises(ValueError):
        restricted_sum(3, 0)


def test_variant_three_formula_matches_general_product():
    for n in range(11):
        assert restricted_variant3_sum(n) == restricted_sum(n, 3)


# -- symbolic two-colors-per-size sums ---------------------------------------------

def test_c1b2_examples():
    assert c1b2_exact_sum(2) == (1 - B) + (1 - B) * (1 - B * Fraction(1, 2))
    assert c1b2_exact_sum(3).evaluate(-1) == 10  # two colors, no restriction
    for n in range(1, 8):
        assert c1b2_exact_sum(n).evaluate(1) == 0  # zero colors kill everything


def test_c1b2_matches_product_form():
    series = c1b2_series(8)
    for n in range(9):
        assert series.coeffs[n] == c1b2_exact_sum(n)


def test_c1b2_at_negative_integers_counts_colored_partitions():
    for k in (2, 3, 4):
        series = ckj_series(k, 2, 10) if k >= 2 else None
        for n in range(11):
            assert c1b2_exact_sum(n).evaluate(1 - k) == series.coeff(n)


# -- comparisons ------------------------------------------------------------------

def test_compare_low_order_theorem_case():
    cmp = compare_low_order(4, 2)
    assert cmp.matched_orders >= 1


def test_compare_single_cell_identical():
    cmp = compare_low_order(1, 3)
    assert cmp.left == cmp.right == 1 - B
    assert cmp.matched_orders == cmp.left.degree == 1


def test_compare_with_four_count_correction():
    cmp = compare_low_order(8, 2, correction="lambda4")
    assert cmp.matched_orders >= 2


def test_compare_rejects_bad_combinations():
    with pytest.raises(ValueError):
        compare_low_order(5, 3, correction="lambda4")
    with pytest.raises(ValueError):
        compare_low_order(5, 2, correction="unknown")


def test_constant_and_linear_terms_match_for_pairs_cutoff_two():
    for n in range(1, 15):
        cmp = compare_low_order(n, 2)
        assert cmp.matched_orders >= 1, (n, cmp.left, cmp.right)


def test_conjugation_pairing_of_contributions():
    for n in range(1, 13):
        for parts in enumerate_partitions(n):
            conj = conjugate(parts)
            assert _hook_contribution(parts, 2) == _hook_contribution(conj, 2)
            census = hook_census(parts)
            conj_census = hook_census(conj)
            assert census.a1 + census.a2 == conj_census.a1 + conj_census.a2
            if is_self_conjugate(parts):
                assert census.a1 == census.a2


# -- counting fours ----------------------------------------------------------------

def test_lambda4_frequency_identity_examples():
    assert lambda4_frequency_identity(4)
    assert total_fours(4) == 1
    assert lambda4_frequency_identity(3)
    assert total_fours(3) == 0
    assert lambda4_frequency_identity(8)


def test_lambda4_frequency_identity_range():
    for n in range(15):
        assert lambda4_frequency_identity(n)


# -- the misstated cube identity ----------------------------------------------------

def test_binomial_cube_report():
    report = binom3_identity_check(10)
    assert not report.matches
    n, lhs, rhs = report.first_mismatch
    assert (n, lhs, rhs) == (2, 9, 6)
    # the first two coefficients do agree
    assert binom3_identity_check(1).matches
