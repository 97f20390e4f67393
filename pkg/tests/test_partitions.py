from collections import Counter

import pytest
from hypothesis import given, strategies as st

from kjparts.partitions import (
    conjugate,
    distinct_size_count,
    enumerate_partitions,
    frequencies,
    hook_census,
    hook_lengths,
    is_self_conjugate,
    iter_two_size_partitions,
    max_distinct_sizes,
    self_conjugate_two_size_count,
    validate_partition,
)
from kjparts.arith import divisor_count, valuation

from oracles import partition_count


def test_enumerate_zero_is_empty_partition():
    assert list(enumerate_partitions(0)) == [()]


def test_enumerate_three_reverse_lex():
    assert list(enumerate_partitions(3)) == [(3,), (2, 1), (1, 1, 1)]


def test_enumerate_count_matches_pentagonal_recurrence():
    for n in (5, 10, 15, 20):
        assert sum(1 for _ in enumerate_partitions(n)) == partition_count(n)
    assert partition_count(10) == 42


def test_enumerate_yields_valid_unique_partitions():
    for n in range(12):
        seen = set()
        for p in enumerate_partitions(n):
            validate_partition(p)
            assert sum(p) == n
            assert p not in seen
            seen.add(p)


def test_conjugate_examples():
    assert conjugate((4, 4, 2, 1, 1)) == (5, 3, 2, 2)
    assert conjugate(()) == ()
    assert conjugate((3, 1)) == (2, 1, 1)


@given(st.integers(0, 25))
def test_conjugate_is_an_involution(n):
    for p in enumerate_partitions(n):
        assert conjugate(conjugate(p)) == p


def test_hook_census_marked_diagram():
    census = hook_census((4, 4, 2, 1, 1))
    assert census.sorted_hooks() == (8, 7, 5, 4, 4, 3, 2, 2, 2, 1, 1, 1)
    assert census.total == 12


def test_hook_census_square_is_self_conjugate():
    census = hook_census((2, 2))
    assert census.sorted_hooks() == (3, 2, 2, 1)
    assert census.a1 == 1 and census.a2 == 1


def test_hook_census_orientation_split():
    census = hook_census((3, 1))
    assert census.sorted_hooks() == (4, 2, 1, 1)
    assert (census.a1, census.a2) == (1, 0)
    flipped = hook_census((2, 1, 1))
    assert (flipped.a1, flipped.a2) == (0, 1)


def test_hook_multiset_invariant_under_conjugation():
    for n in range(21):
        for p in enumerate_partitions(n):
            assert Counter(hook_lengths(p)) == Counter(hook_lengths(conjugate(p)))


def test_two_hook_split_swaps_under_conjugation():
    for n in range(21):
        for p in enumerate_partitions(n):
            c = hook_census(p)
            cc = hook_census(conjugate(p))
            assert (c.a1, c.a2) == (cc.a2, cc.a1)
            if is_self_conjugate(p):
                assert c.a1 == c.a2


def test_distinct_size_count_basics():
    assert distinct_size_count((2, 1)) == 2
    assert distinct_size_count((1, 1, 1)) == 1
    assert distinct_size_count(()) == 0
    assert sum(1 for p in enumerate_partitions(6) if distinct_size_count(p) == 2) == 6


def test_two_size_set_closed_under_conjugation():
    # Conjugation maps the two-size stratum to itself, so its parity equals
    # the parity of the self-conjugate subset.
    for n in range(1, 21):
        two = [p for p in enumerate_partitions(n) if distinct_size_count(p) == 2]
        two_set = set(two)
        for p in two:
            assert conjugate(p) in two_set
        self_conj = sum(1 for p in two if is_self_conjugate(p))
        assert len(two) % 2 == self_conj % 2


def test_frequencies_view_round_trip():
    p = (4, 4, 2, 1, 1)
    freq = frequencies(p)
    assert freq == {4: 2, 2: 1, 1: 2}
    rebuilt = tuple(sorted(
        (s for s, m in freq.items() for _ in range(m)), reverse=True))
    assert rebuilt == p


def test_max_distinct_sizes_values():
    assert max_distinct_sizes(3) == 2
    assert max_distinct_sizes(5) == 2
    assert max_distinct_sizes(6) == 3
    with pytest.raises(ValueError):
        max_distinct_sizes(0)


def test_max_distinct_sizes_matches_enumeration():
    for n in range(1, 26):
        observed = max(distinct_size_count(p) for p in enumerate_partitions(n))
        assert observed == max_distinct_sizes(n)


def test_self_conjugate_two_size_examples():
    assert self_conjugate_two_size_count(6) == 0
    assert self_conjugate_two_size_count(8) == 1
    assert self_conjugate_two_size_count(1) == 0
    # the unique witness at 8
    hits = [p for p in iter_two_size_partitions(8) if is_self_conjugate(p)]
    assert hits == [(3, 3, 2)]
    assert distinct_size_count((3, 3, 2)) == 2


def test_self_conjugate_two_size_geometric_vs_filter():
    for m in range(1, 201):
        assert (
            self_conjugate_two_size_count(m, "geometric")
            == self_conjugate_two_size_count(m, "filter")
        )


def test_self_conjugate_two_size_filter_matches_full_enumeration_small():
    for m in range(1, 36):
        direct = sum(
            1 for p in enumerate_partitions(m)
            if distinct_size_count(p) == 2 and is_self_conjugate(p)
        )
        assert direct == self_conjugate_two_size_count(m)


def test_divisor_criterion_agreement():
    # a | m, a < sqrt(m), a = m (mod 2), and the 2-valuations either both
    # vanish or drop strictly: each such a is one self-conjugate shape.
    for m in range(1, 501):
        s2m = valuation(2, m)
        count = 0
        for a in range(1, m + 1):
            if a * a >= m:
                break
            if m % a or (a - m) % 2:
                continue
            s2a = valuation(2, a)
            if (s2a == 0 and s2m == 0) or s2a < s2m:
                count += 1
        assert count == self_conjugate_two_size_count(m), m


def test_two_odd_order_primes_force_divisor_count_multiple_of_four():
    from kjparts.arith import odd_order_prime_count

    for m in range(1, 2001):
        if odd_order_prime_count(m) >= 2:
            assert divisor_count(m) % 4 == 0
    # The converse fails: a single prime cubed already gives d = 4.
    assert divisor_count(8) == 4 and odd_order_prime_count(8) == 1
