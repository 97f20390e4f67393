"""Color-restricted partition counting.

A (k, j)-colored partition is a k-colored partition in which any given part
size uses at most j distinct colors.  This module computes the counting
series two independent ways per call (hard failure if they disagree), keeps
a brute-force enumeration oracle, builds the marked-count polynomials f_n,
the exact-size counts nu_i, and implements the staircase bijection between
marked overpartitions and two-colored small-part partitions.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, combinations_with_replacement, product
from math import comb
from typing import Iterator, Optional

from .partitions import (
    Partition,
    _iter_parts_raw,
    conjugate,
    enumerate_partitions,
    max_distinct_sizes,
)
from .qpoly import QPoly
from .series import (
    INTEGER_RING,
    TruncatedSeries,
    check_order_budget,
    eta_expand,
)

DEFAULT_ORACLE_LIMIT = 25

ColoredPartition = tuple[tuple[int, int], ...]  # ((size, color), ...) canonical order


class FormMismatchError(RuntimeError):
    """The two product forms of the counting series disagreed."""


# ---------------------------------------------------------------------------
# Generating function: two independent product forms
# ---------------------------------------------------------------------------

def local_factor_binomial_sum(k: int, j: int) -> list[int]:
    """Local factor coefficients from sum_i C(k,i) (1-x)^{j-i} x^i."""
    out = [0] * (j + 1)
    for i in range(j + 1):
        c = comb(k, i)
        if not c:
            continue
        # (1-x)^{j-i} shifted by x^i
        for t in range(j - i + 1):
            out[i + t] += c * comb(j - i, t) * (-1) ** t
    return out


def local_factor_direct(k: int, j: int) -> list[int]:
    """Local factor coefficients from sum_i C(k-j+i-1, i) x^i.

    The i = 0 term is 1 by convention (k = j makes the top index -1 there).
    """
    return [1] + [comb(k - j + i - 1, i) for i in range(1, j + 1)]


def _multiply_local_factor(c: list[int], order: int, terms: list[tuple[int, int]]) -> None:
    """In place: c *= 1 + sum_a coeff_a q^{shift_a}, truncated at order.

    Terms must be sorted by shift ascending.  Positions are updated from
    high exponent down so every read sees a pre-multiplication value.
    """
    terms = [t for t in terms if t[0] <= order and t[1]]
    if not terms:
        return
    bounds = [s for s, _ in terms] + [order + 1]
    for i in range(len(terms) - 1, -1, -1):
        lo = bounds[i]
        hi = min(bounds[i + 1] - 1, order)
        if hi < lo:
            continue
        active = terms[: i + 1]
        if i == 0:
            s1, a1 = active[0]
            if a1 == 1:
                for m in range(hi, lo - 1, -1):
                    c[m] += c[m - s1]
            else:
                for m in range(hi, lo - 1, -1):
                    c[m] += a1 * c[m - s1]
        elif i == 1:
            (s1, a1), (s2, a2) = active
            for m in range(hi, lo - 1, -1):
                c[m] += a1 * c[m - s1] + a2 * c[m - s2]
        elif i == 2:
            (s1, a1), (s2, a2), (s3, a3) = active
            for m in range(hi, lo - 1, -1):
                c[m] += a1 * c[m - s1] + a2 * c[m - s2] + a3 * c[m - s3]
        else:
            for m in range(hi, lo - 1, -1):
                acc = 0
                for s, a in active:
                    acc += a * c[m - s]
                c[m] += acc


def _product_over_scales(poly: list[int], order: int) -> list[int]:
    """prod_{n>=1} P(q^n) truncated, for a polynomial P with P(0) = 1."""
    if poly[0] != 1:
        raise ValueError("local factor must have constant term 1")
    c = [0] * (order + 1)
    c[0] = 1
    body = [(t, a) for t, a in enumerate(poly) if t and a]
    for n in range(1, order + 1):
        _multiply_local_factor(c, order, [(t * n, a) for t, a in body])
    return c


@lru_cache(maxsize=32)
def euler_inverse_power(j: int, order: int) -> TruncatedSeries:
    """(1/(q)_inf)^j: the unrestricted j-colored partition series."""
    if j < 1:
        raise ValueError("power must be >= 1")
    return eta_expand({1: -j}, order)


@lru_cache(maxsize=64)
def ckj_series(k: int, j: int, order: int) -> TruncatedSeries:
    """Counting series of (k, j)-colored partitions to the given order.

    Computed twice, once from the alternating binomial-sum local factor and
    once from the direct one, each multiplied by the unrestricted j-colored
    series; any coefficient disagreement raises FormMismatchError.  The
    special shapes reduce as expected: j = 1 to the single-color-per-size
    product, j = k-1 to the eta quotient f_k / f_1^k (both covered by the
    test suite).
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if j < 1 or j > k:
        raise ValueError(f"j must satisfy 1 <= j <= k, got j={j}, k={k}")
    check_order_budget(order)
    via_binomial = _product_over_scales(local_factor_binomial_sum(k, j), order)
    via_direct = _product_over_scales(local_factor_direct(k, j), order)
    colored_base = euler_inverse_power(j, order)
    first = TruncatedSeries(INTEGER_RING, via_binomial, order) * colored_base
    second = TruncatedSeries(INTEGER_RING, via_direct, order) * colored_base
    if first.coeffs != second.coeffs:
        bad = next(i for i in range(order + 1) if first.coeffs[i] != second.coeffs[i])
        raise FormMismatchError(
            f"product forms for (k={k}, j={j}) disagree first at q^{bad}: "
            f"{first.coeffs[bad]} vs {second.coeffs[bad]}"
        )
    return first


def ckj_series_forms(k: int, j: int, order: int) -> tuple[TruncatedSeries, TruncatedSeries]:
    """Both product forms separately (for equivalence testing)."""
    base = euler_inverse_power(j, order)
    a = TruncatedSeries(INTEGER_RING, _product_over_scales(local_factor_binomial_sum(k, j), order), order)
    b = TruncatedSeries(INTEGER_RING, _product_over_scales(local_factor_direct(k, j), order), order)
    return a * base, b * base


def overpartition_series(order: int) -> TruncatedSeries:
    """prod (1+q^n)/(1-q^n) = f_2 / f_1^2."""
    return eta_expand({2: 1, 1: -2}, order)


def partition_series(order: int) -> TruncatedSeries:
    return eta_expand({1: -1}, order)


def kcolored_series(k: int, order: int) -> TruncatedSeries:
    """Unrestricted k-colored partitions, 1 / (q)_inf^k."""
    return euler_inverse_power(k, order)


# ---------------------------------------------------------------------------
# Brute-force oracle: enumerate colored partitions directly
# ---------------------------------------------------------------------------

@lru_cache(maxsize=4096)
def _color_multisets(mult: int, k: int, j: int) -> tuple[tuple[int, ...], ...]:
    # All weakly decreasing color tuples of length `mult` from colors k..1
    # using at most j distinct colors, in descending lexicographic order.
    out = []
    for combo in combinations_with_replacement(range(k, 0, -1), mult):
        if len(set(combo)) <= j:
            out.append(combo)
    return tuple(out)


def _check_oracle_limit(n: int, limit: int) -> None:
    if n > limit:
        raise ValueError(
            f"enumeration oracle refused: n={n} exceeds limit {limit} "
            "(raise oracle_limit explicitly to override)"
        )


def ckj_enumerate(n: int, k: int, j: int, oracle_limit: int = DEFAULT_ORACLE_LIMIT) -> int:
    """Count (k, j)-colored partitions of n by exhaustive construction.

    Walks every plain partition of n and counts the admissible per-size
    color multisets generated explicitly; independent of the series path.
    """
    if j < 1 or j > k:
        raise ValueError(f"j must satisfy 1 <= j <= k, got j={j}, k={k}")
    _check_oracle_limit(n, oracle_limit)
    total = 0
    for parts in _iter_parts_raw(n):
        ways = 1
        run_val = 0
        run_len = 0
        for p in parts + [0]:
            if p == run_val:
                run_len += 1
                continue
            if run_val:
                ways *= len(_color_multisets(run_len, k, j))
            run_val = p
            run_len = 1
        total += ways
    return total


def ckj_listing(n: int, k: int, j: int, oracle_limit: int = DEFAULT_ORACLE_LIMIT) -> list[ColoredPartition]:
    """All (k, j)-colored partitions of n in canonical descending order.

    Part sizes weakly decrease and colors weakly decrease within a size, and
    the listing itself is sorted descending in that part order: for n = 3,
    k = 2, j = 2 it starts 3_2, 3_1, 2_2+1_2, ...
    """
    if j < 1 or j > k:
        raise ValueError(f"j must satisfy 1 <= j <= k, got j={j}, k={k}")
    _check_oracle_limit(n, oracle_limit)
    out: list[ColoredPartition] = []
    for parts in enumerate_partitions(n):
        sizes: list[tuple[int, int]] = []
        for p in parts:
            if sizes and sizes[-1][0] == p:
                sizes[-1] = (p, sizes[-1][1] + 1)
            else:
                sizes.append((p, 1))
        pools = [
            [(s, coloring) for coloring in _color_multisets(m, k, j)]
            for s, m in sizes
        ]
        for choice in product(*pools):
            cp = tuple((s, c) for s, coloring in choice for c in coloring)
            out.append(cp)
    return out


def format_colored(cp: ColoredPartition) -> str:
    """Render as `3_2 + 1_1 + 1_1` (size underscore color)."""
    if not cp:
        return "0"
    return " + ".join(f"{s}_{c}" for s, c in cp)


# ---------------------------------------------------------------------------
# Marked-count polynomials f_n and the exact-size counts nu_i
# ---------------------------------------------------------------------------

@lru_cache(maxsize=256)
def distinct_size_histogram(n: int) -> tuple[int, ...]:
    """histogram[i] = number of partitions of n with exactly i distinct sizes."""
    if n == 0:
        return (1,)
    h = [0] * (max_distinct_sizes(n) + 1)
    for parts in _iter_parts_raw(n):
        h[len(set(parts))] += 1
    return tuple(h)


@lru_cache(maxsize=512)
def fn_polynomial(n: int) -> QPoly:
    """The polynomial f_n with f_n(k-1) = number of (k,1)-colored partitions.

    Computed as sum over partitions of n of (1+u)^{number of distinct
    sizes}; coefficient of u^i counts overpartitions of n with i marked
    sizes (OEIS A008951 read as a triangle).  Degree is the largest t with
    t(t+1)/2 <= n.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    if n == 0:
        return QPoly.one("u")
    u1 = QPoly((1, 1), "u")  # 1 + u
    h = distinct_size_histogram(n)
    acc = QPoly.zero("u")
    pw = QPoly.one("u")
    for count in h:
        if count:
            acc = acc + pw * count
        pw = pw * u1
    return acc


@lru_cache(maxsize=64)
def nu_series(i: int, order: int) -> tuple[int, ...]:
    """Coefficients of the exact-i-sizes counting series to the order.

    Expands (1/(q)_inf) * sum_m (-1)^{m-i} C(m,i) q^{m(m+1)/2} / (q)_m.
    The sum stops at the first m whose triangular number exceeds the order;
    later terms have valuation beyond the truncation, so they cannot touch
    any retained coefficient.
    """
    if i < 1:
        raise ValueError("i must be >= 1")
    check_order_budget(order)
    inv_poch = [0] * (order + 1)
    inv_poch[0] = 1
    acc = [0] * (order + 1)
    m = 0
    while True:
        m += 1
        tm = m * (m + 1) // 2
        if tm > order:
            break
        for idx in range(m, order + 1):  # inv_poch /= (1 - q^m)
            inv_poch[idx] += inv_poch[idx - m]
        if m >= i:
            coef = comb(m, i) * (-1 if (m - i) % 2 else 1)
            for idx in range(tm, order + 1):
                acc[idx] += coef * inv_poch[idx - tm]
    result = TruncatedSeries(INTEGER_RING, acc, order) * partition_series(order)
    return tuple(result.coeffs)


def nu_count(i: int, n: int, method: str = "enumerate") -> int:
    """Number of partitions of n with exactly i distinct part sizes.

    method="enumerate" walks all partitions (guarded at n <= 60);
    method="andrews" reads the generating-function expansion;
    method="divisor_identity" is only defined for i = 2 and uses the
    divisor-convolution identity.
    """
    if i < 1 or n < 1:
        raise ValueError("nu_count requires i >= 1 and n >= 1")
    if method == "enumerate":
        if n > 60:
            raise ValueError("enumeration method limited to n <= 60")
        h = distinct_size_histogram(n)
        return h[i] if i < len(h) else 0
    if method == "andrews":
        return nu_series(i, n)[n]
    if method == "divisor_identity":
        if i != 2:
            raise ValueError("divisor identity is only available for i = 2")
        from .congruence import nu2_divisor_identity

        return nu2_divisor_identity(n)
    raise ValueError(f"unknown method {method!r}")


def ck1_decomposition_check(k: int, order: int) -> bool:
    """Verify c_{k,1}(n) = sum_i k^i nu_i(n) for 1 <= n <= order.

    Also checks the induced truncations mod k^2 and mod k^3.  Returns True
    or raises AssertionError with the first failing index.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    series = ckj_series(k, 1, order)
    t_max = max_distinct_sizes(order) if order >= 1 else 0
    nus = [None] + [nu_series(i, order) for i in range(1, t_max + 1)]
    for n in range(1, order + 1):
        total = 0
        kp = 1
        for i in range(1, t_max + 1):
            kp *= k
            total += kp * nus[i][n]
        c = series.coeff(n)
        assert c == total, f"decomposition fails at n={n}: {c} != {total}"
        assert (c - k * nus[1][n]) % (k * k) == 0, f"mod k^2 truncation fails at n={n}"
        if t_max >= 2:
            assert (c - k * nus[1][n] - k * k * nus[2][n]) % (k ** 3) == 0, (
                f"mod k^3 truncation fails at n={n}"
            )
    return True


# ---------------------------------------------------------------------------
# Marked overpartitions and the staircase bijection
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class MarkedOverpartition:
    """A partition together with a set of marked part sizes."""

    base: Partition
    marked: frozenset[int]

    def __post_init__(self):
        if not self.marked <= set(self.base):
            raise ValueError("marked sizes must appear in the partition")

    @property
    def weight(self) -> int:
        return sum(self.base)

    def __str__(self) -> str:
        if not self.base:
            return "0"
        last = {p: i for i, p in enumerate(self.base)}
        return " + ".join(
            f"{p}*" if p in self.marked and last[p] == i else str(p)
            for i, p in enumerate(self.base)
        )


def bijection_forward(color1: Partition, color2: Partition, i: int) -> MarkedOverpartition:
    """Map a partition with a second color allowed on sizes 1..i to a marked
    overpartition with exactly i marked sizes.

    The second-color parts are conjugated (giving at most i parts), the
    staircase (i, i-1, ..., 1) is added to make i distinct values, and those
    values become the marked sizes of the union with the first-color parts.
    The weight grows by i(i+1)/2.
    """
    if i < 0:
        raise ValueError("mark count must be >= 0")
    c2 = tuple(sorted(color2, reverse=True))
    if c2 and c2[-1] < 1:
        raise ValueError("parts must be positive")
    if c2 and c2[0] > i:
        raise ValueError(f"second-color part {c2[0]} exceeds the size bound {i}")
    conj = conjugate(c2)
    padded = list(conj) + [0] * (i - len(conj))
    marked_sizes = tuple(padded[t] + (i - t) for t in range(i))
    base = tuple(sorted(tuple(color1) + marked_sizes, reverse=True))
    return MarkedOverpartition(base, frozenset(marked_sizes))


def bijection_backward(m: MarkedOverpartition) -> tuple[Partition, Partition, int]:
    """Inverse of bijection_forward: returns (color1 parts, color2 parts, i)."""
    i = len(m.marked)
    mu = sorted(m.marked, reverse=True)
    reduced = [mu[t] - (i - t) for t in range(i)]
    color2 = conjugate(tuple(v for v in reduced if v))
    remaining = list(m.base)
    for s in m.marked:
        remaining.remove(s)
    return tuple(remaining), color2, i


def iter_marked_overpartitions(n: int, marks: Optional[int] = None) -> Iterator[MarkedOverpartition]:
    """All marked overpartitions of n (optionally with exactly `marks` marks)."""
    for parts in enumerate_partitions(n):
        sizes = sorted(set(parts), reverse=True)
        counts = [marks] if marks is not None else range(len(sizes) + 1)
        for r in counts:
            if r > len(sizes):
                continue
            for chosen in combinations(sizes, r):
                yield MarkedOverpartition(parts, frozenset(chosen))


def iter_bijection_inputs(n: int, i: int) -> Iterator[tuple[Partition, Partition]]:
    """All (color1, color2) inputs of weight n with second color on sizes <= i.

    Colors within a size are unordered, so a choice is just how many copies
    of each small size carry the second color.
    """
    if n < 0:
        return
    for parts in enumerate_partitions(n):
        sizes: list[tuple[int, int]] = []
        for p in parts:
            if sizes and sizes[-1][0] == p:
                sizes[-1] = (p, sizes[-1][1] + 1)
            else:
                sizes.append((p, 1))
        small = [(s, m) for s, m in sizes if s <= i]
        big = [(s, m) for s, m in sizes if s > i]
        base1 = tuple(s for s, m in big for _ in range(m))
        for picks in product(*(range(m + 1) for _, m in small)):
            c1 = list(base1)
            c2 = []
            for (s, m), take in zip(small, picks):
                c2.extend([s] * take)
                c1.extend([s] * (m - take))
            yield tuple(sorted(c1, reverse=True)), tuple(sorted(c2, reverse=True))
