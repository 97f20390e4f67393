import os
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from kjparts.qpoly import QPoly
from kjparts.series import (
    INTEGER_RING,
    POLY_RING,
    RATIONAL_RING,
    BudgetError,
    EtaTerm,
    RingMismatchError,
    TruncatedSeries,
    congruent_mod,
    convolve_int,
    eta_expand,
    eta_expand_naive,
    format_eta_term,
    parse_eta_term,
    pentagonal_coeffs,
    symbolic_binomial_pow,
)

from oracles import partition_count, overpartition_count, schoolbook_product


def ints(coeffs, order=None):
    order = len(coeffs) - 1 if order is None else order
    return TruncatedSeries.from_ints(INTEGER_RING, coeffs, order)


# -- convolution kernel -------------------------------------------------------

@given(
    st.lists(st.integers(-10**9, 10**9), min_size=1, max_size=80),
    st.lists(st.integers(-10**9, 10**9), min_size=1, max_size=80),
)
@settings(max_examples=60)
def test_kronecker_convolution_matches_schoolbook(a, b):
    order = len(a) + len(b) - 2
    assert convolve_int(a, b, order + 1) == schoolbook_product(a, b, order)


# -- arithmetic ---------------------------------------------------------------

def test_telescoping_product():
    n = 40
    one_minus_q = ints([1, -1], n)
    geom = ints([1] * (n + 1), n)
    assert (one_minus_q * geom).coeffs == tuple([1] + [0] * n)


def test_square_of_geometric_counts_positions():
    n = 20
    geom = ints([1] * (n + 1), n)
    assert (geom * geom).coeffs == tuple(i + 1 for i in range(n + 1))


def test_square_of_partition_series_counts_two_colored():
    p = eta_expand({1: -1}, 10)
    sq = p * p
    assert sq.coeffs[:4] == (1, 2, 5, 10)  # two-colored partitions of 3: 10


def test_mixed_orders_truncate_to_min():
    a = ints([1, 1, 1, 1, 1], 4)
    b = ints([1, 2], 1)
    assert (a + b).order == 1
    assert (a * b).order == 1


def test_ring_mismatch_rejected():
    a = ints([1, 2, 3])
    b = TruncatedSeries(RATIONAL_RING, [Fraction(1)], 2)
    with pytest.raises(RingMismatchError):
        _ = a + b


def test_pow_inverse_of_one_minus_q():
    s = ints([1, -1], 12) ** -1
    assert s.coeffs == tuple([1] * 13)


def test_pow_congruence_freshman_cube():
    n = 60
    lhs = ints([1, -1], n) ** 9
    rhs = ints([1, 0, 0, -1], n) ** 3
    assert congruent_mod(lhs, rhs, 3).ok


def test_fourth_powers_collapse_mod_four():
    n = 60
    for a in (1, 2, 3):
        lhs = eta_expand({a: 4}, n)
        rhs = eta_expand({2 * a: 2}, n)
        assert congruent_mod(lhs, rhs, 4).ok


def test_non_invertible_constant_rejected():
    with pytest.raises(ValueError):
        ints([2, 1]).inverse()
    with pytest.raises(ValueError):
        ints([0, 1]) ** -1


@given(st.lists(st.integers(-9, 9), min_size=0, max_size=20), st.integers(1, 5))
@settings(max_examples=40)
def test_pow_times_negative_pow_is_one(tail, e):
    coeffs = [1] + tail
    a = ints(coeffs, 25)
    prod = (a ** e) * (a ** -e)
    assert prod.coeffs == tuple([1] + [0] * 25)


# -- ring laws on all three rings --------------------------------------------

def _random_series(ring, draw_coeff, data, order=12):
    coeffs = [draw_coeff(data) for _ in range(order + 1)]
    return TruncatedSeries(ring, coeffs, order)


@given(st.data())
@settings(max_examples=40)
def test_ring_laws_all_rings(data):
    cases = [
        (INTEGER_RING, lambda d: d.draw(st.integers(-50, 50))),
        (RATIONAL_RING, lambda d: Fraction(d.draw(st.integers(-20, 20)), d.draw(st.integers(1, 9)))),
        (POLY_RING, lambda d: QPoly(d.draw(st.lists(st.integers(-5, 5), max_size=3)))),
    ]
    for ring, draw in cases:
        a = _random_series(ring, draw, data)
        b = _random_series(ring, draw, data)
        c = _random_series(ring, draw, data)
        assert ((a + b) + c).coeffs == (a + (b + c)).coeffs
        assert (a * b).coeffs == (b * a).coeffs
        assert (a * (b + c)).coeffs == (a * b + a * c).coeffs
        assert ((a * b) * c).coeffs == (a * (b * c)).coeffs


# -- eta quotients ------------------------------------------------------------

def test_euler_factor_pentagonal_signs():
    f1 = eta_expand({1: 1}, 12)
    assert f1.coeffs == (1, -1, -1, 0, 0, 1, 0, 1, 0, 0, 0, 0, -1)


def test_inverse_euler_factor_is_partition_series():
    series = eta_expand({1: -1}, 40)
    for n in range(41):
        assert series.coeffs[n] == partition_count(n)
    assert series.coeffs[:6] == (1, 1, 2, 3, 5, 7)


def test_two_restricted_three_color_head():
    series = eta_expand({3: 1, 1: -3}, 2)
    assert series.coeffs == (1, 3, 9)


def test_eta_expand_matches_naive_product():
    quotients = [
        {1: -1},
        {2: 1, 1: -2},
        {3: 1, 1: -3},
        {4: 1, 1: -4},
        {5: 1, 1: -5},
        {6: 1, 1: -6},
        {4: 6, 6: 3, 2: -9, 12: -2},
        {4: 2, 6: 1, 12: 2, 2: -7},
        {4: 3, 12: -1},
        {2: 2, 12: 3, 4: -1, 6: -2},
        {8: 1, 20: 2, 2: -2, 40: -1},
        {4: 14, 2: -14, 8: -4},
        {16: 6, 24: 7, 8: -9, 48: -2},
        {16: 2, 48: 2, 8: -1, 24: -1},
    ]
    for q in quotients:
        fast = eta_expand(q, 80)
        slow = eta_expand_naive(q, 80)
        assert fast.coeffs == slow.coeffs, q


def test_eta_expand_matches_naive_on_registered_quotients():
    # every eta term appearing in the identity registry gets the oracle check
    import re

    from kjparts.congruence import builtin_identities

    seen = set()
    for entry in builtin_identities():
        for side in (entry.left, entry.right):
            for term in re.split(r"\s+[+-]\s+", side):
                tokens = term.split()
                if any(t.startswith(("ckj(", "prodpoly(", "(1-q", "sigma1")) for t in tokens):
                    continue
                factors = parse_eta_term(term).factors
                if factors:
                    seen.add(factors)
    assert len(seen) >= 12
    for factors in sorted(seen):
        q = dict(factors)
        assert eta_expand(q, 80).coeffs == eta_expand_naive(q, 80).coeffs, q


def test_eta_expand_key_order_independent():
    a = eta_expand({2: 1, 1: -2}, 50)
    b = eta_expand({1: -2, 2: 1}, 50)
    assert a.coeffs == b.coeffs


def test_eta_expand_validates_input():
    with pytest.raises(ValueError):
        eta_expand({0: 1}, 10)
    with pytest.raises(ValueError):
        eta_expand({2: 0}, 10)


def test_pentagonal_coeffs_scale():
    base = pentagonal_coeffs(1, 12)
    scaled = pentagonal_coeffs(3, 36)
    for i in range(37):
        expected = base[i // 3] if i % 3 == 0 else 0
        assert scaled[i] == expected


# -- rescale / extraction -----------------------------------------------------

def test_rescale_basic():
    s = ints([1, 1], 8).rescale(2)
    assert s.coeffs == (1, 0, 1, 0, 0, 0, 0, 0, 0)
    assert s.order == 8


def test_rescale_product_parity():
    f = ints([1, 2, 3, 4], 12)
    prod = f.rescale(4) * f.rescale(2)
    assert all(prod.coeffs[i] == 0 for i in range(1, 13, 2))


def test_rescale_euler_factor_gives_scaled_factor():
    f1 = eta_expand({1: 1}, 12)
    f3 = eta_expand({3: 1}, 36)
    assert TruncatedSeries(INTEGER_RING, f1.coeffs, 36).rescale(3).coeffs[:37] == f3.coeffs


def test_extract_all_ones():
    s = ints([1] * 11, 10)
    assert s.extract(2, 1) == (1, 1, 1, 1, 1)


def test_extract_overpartition_head():
    s = eta_expand({2: 1, 1: -2}, 10)
    head = s.extract(1, 0)[:6]
    assert head == (1, 2, 4, 8, 14, 24)
    assert head == tuple(overpartition_count(n) for n in range(6))


def test_extract_two_restricted_progression_residues():
    s = eta_expand({3: 1, 1: -3}, 200)
    assert all(v % 9 == 0 for v in s.extract(3, 2))


def test_extract_after_rescale_returns_original():
    a = ints([3, 1, 4, 1, 5, 9], 5)
    widened = TruncatedSeries(INTEGER_RING, a.coeffs, 20)
    assert widened.rescale(4).extract(4, 0) == a.coeffs


# -- congruence comparison ----------------------------------------------------

def test_congruent_mod_identical():
    a = ints([5, 7, 9], 2)
    check = congruent_mod(a, a, 11)
    assert check.ok and check.first_failure is None


def test_congruent_mod_reports_first_failure():
    a = ints([1, 2, 3], 2)
    b = ints([1, 2, 4], 2)
    check = congruent_mod(a, b, 5)
    assert not check.ok
    assert check.first_failure == 2
    assert check.residues == (3, 4)
    with pytest.raises(ValueError):
        congruent_mod(a, b, 1)


def test_four_color_single_choice_matches_overpartitions_mod_two():
    from kjparts.colored import ckj_series

    n = 200
    c41 = ckj_series(4, 1, n)
    overp = eta_expand({2: 1, 1: -2}, n)
    assert congruent_mod(c41, overp, 2).ok


def test_three_color_single_choice_matches_partitions_mod_two():
    from kjparts.colored import ckj_series

    n = 200
    c31 = ckj_series(3, 1, n)
    p = eta_expand({1: -1}, n)
    assert congruent_mod(c31, p, 2).ok


# -- symbolic binomial powers -------------------------------------------------

def test_symbolic_binomial_pow_alpha_one():
    s = symbolic_binomial_pow(3, QPoly.one(), 9)
    assert s.coeffs[0] == QPoly.one()
    assert s.coeffs[3] == QPoly((-1,))
    assert all(s.coeffs[i].is_zero() for i in (1, 2, 4, 5, 6, 7, 8, 9))


def test_symbolic_binomial_pow_first_order_sign():
    one_minus_b = QPoly((1, -1))
    s = symbolic_binomial_pow(1, one_minus_b, 4)
    assert s.coeffs[1] == QPoly((-1, 1))  # b - 1


def test_product_of_two_binomial_powers_matches_hook_oracle():
    b_minus_one = QPoly((-1, 1))
    prod = symbolic_binomial_pow(1, b_minus_one, 2) * symbolic_binomial_pow(2, b_minus_one, 2)
    b = QPoly.x()
    # both shapes of 2 have hooks {2, 1}: sum is 2(1-b)(1-b/4)
    oracle = (1 - b) * (1 - b * Fraction(1, 4)) * 2
    assert prod.coeffs[2] == oracle


def test_symbolic_binomial_pow_rejects_quadratic_exponent():
    with pytest.raises(ValueError):
        symbolic_binomial_pow(1, QPoly((0, 0, 1)), 4)


# -- eta term text format -----------------------------------------------------

def test_parse_eta_term_full_form():
    term = parse_eta_term("3 q f4^2 f6 f12^2 / f2^7")
    assert term == EtaTerm(3, 1, ((2, -7), (4, 2), (6, 1), (12, 2)))
    assert format_eta_term(term) == "3 q f4^2 f6 f12^2 / f2^7"


def test_parse_eta_term_quotient_only():
    term = parse_eta_term("f4^6 f6^3 / f2^9 f12^2")
    assert term.scalar == 1 and term.shift == 0
    assert dict(term.factors) == {4: 6, 6: 3, 2: -9, 12: -2}


def test_parse_eta_term_scalar_over_denominator():
    term = parse_eta_term("1 / f1^4")
    assert term == EtaTerm(1, 0, ((1, -4),))
    assert term.expand(6).coeffs == eta_expand({1: -4}, 6).coeffs


def test_parse_eta_term_rejects_garbage():
    with pytest.raises(ValueError):
        parse_eta_term("f4 / f2 / f1")
    with pytest.raises(ValueError):
        parse_eta_term("g4^2")


def test_format_parse_round_trip():
    for text in ("f3 / f1^3", "3 q f4^2 f6 f12^2 / f2^7", "f2", "2 q^3 f5"):
        term = parse_eta_term(text)
        assert parse_eta_term(format_eta_term(term)) == term


# -- budget -------------------------------------------------------------------

def test_order_budget_enforced(monkeypatch):
    monkeypatch.setenv("KJPARTS_MAX_ORDER", "100")
    with pytest.raises(BudgetError):
        eta_expand({1: -1}, 101)
    assert eta_expand({1: -1}, 100).order == 100


def test_default_budget_allows_large_orders():
    assert "KJPARTS_MAX_ORDER" not in os.environ
    s = TruncatedSeries.zero(INTEGER_RING, 100_000)
    assert s.order == 100_000
    with pytest.raises(BudgetError):
        TruncatedSeries.zero(INTEGER_RING, 100_001)
