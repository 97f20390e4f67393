"""Hook-length product expansions and truncated comparisons.

The product prod (1-q^n)^(b-1) expands with polynomial coefficients: the
coefficient of q^n is the sum over partitions of n of prod (1 - b/h^2) over
all hook lengths h.  Restricting the hooks to h <= m on one side, and
capping per-size frequencies at m in a colored-partition sum on the other,
gives pairs of polynomials that agree to low order in b; this module
computes both sides exactly and reports how far they agree.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Optional

from .partitions import _iter_parts_raw, hook_lengths, enumerate_partitions
from .qpoly import QPoly
from .series import POLY_RING, TruncatedSeries, symbolic_binomial_pow
from .colored import euler_inverse_power

DEFAULT_FULL_EXPANSION_LIMIT = 15

_B = QPoly.x()


@lru_cache(maxsize=1024)
def _hook_factor_power(h: int, count: int) -> QPoly:
    return QPoly((1, Fraction(-1, h * h))) ** count


def hook_poly_sum(n: int, cutoff: Optional[int] = None) -> QPoly:
    """sum over partitions of n of prod_{h <= cutoff} (1 - b/h^2).

    cutoff=None means no restriction (every hook counted); cutoff=1 keeps
    only the unit hooks, one per distinct part size, so the result is
    sum (1-b)^{distinct sizes}.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    if cutoff is not None and cutoff < 1:
        raise ValueError("cutoff must be >= 1")
    total = QPoly.zero()
    for parts in enumerate_partitions(n):
        counts: dict[int, int] = {}
        for h in hook_lengths(parts):
            if cutoff is None or h <= cutoff:
                counts[h] = counts.get(h, 0) + 1
        term = QPoly.one()
        for h, c in counts.items():
            term = term * _hook_factor_power(h, c)
        total = total + term
    return total


@lru_cache(maxsize=64)
def _falling_prefix(r: int) -> QPoly:
    """prod_{t=1}^{r} (1 - b/t)."""
    out = QPoly.one()
    for t in range(1, r + 1):
        out = out * QPoly((1, Fraction(-1, t)))
    return out


def restricted_sum(n: int, m: int) -> QPoly:
    """sum over partitions of prod over present sizes of
    (1-b/1)(1-b/2)...(1-b/min(freq, m)), frequencies read sizewise.

    m=1 collapses to sum (1-b)^{distinct sizes}; m=2 multiplies one extra
    (1-b/2) for every size appearing at least twice.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    if m < 1:
        raise ValueError("m must be >= 1")
    total = QPoly.zero()
    for parts in _iter_parts_raw(n):
        term = QPoly.one()
        run_val = 0
        run_len = 0
        for p in parts + [0]:
            if p == run_val:
                run_len += 1
                continue
            if run_val:
                term = term * _falling_prefix(run_len if run_len < m else m)
            run_val = p
            run_len = 1
        total = total + term
    return total


def restricted_variant3_sum(n: int) -> QPoly:
    """Experimental alternative arithmetic path for the m = 3 restriction.

    Per present size with frequency e (capped at 3) the factor is
    1 - (b/2)(e-1) + ((b^2+b)/6) C(e-1, 2); expanding shows this equals the
    falling product (1-b)(1-b/2)...(1-b/min(e,3)) termwise, so this routine
    must agree with restricted_sum(n, 3) identically (tested).
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    factors = {
        1: QPoly.one(),
        2: QPoly((1, Fraction(-1, 2))),
        3: QPoly((1, -1)) + QPoly((0, Fraction(1, 6), Fraction(1, 6))),
    }
    lead = QPoly((1, -1))  # 1 - b
    total = QPoly.zero()
    for parts in _iter_parts_raw(n):
        term = QPoly.one()
        run_val = 0
        run_len = 0
        for p in parts + [0]:
            if p == run_val:
                run_len += 1
                continue
            if run_val:
                e = run_len if run_len < 3 else 3
                term = term * lead * factors[e]
            run_val = p
            run_len = 1
        total = total + term
    return total


def c1b2_exact_sum(n: int) -> QPoly:
    """Coefficient of q^n in the two-colors-per-size series with symbolic
    color count 1-b: sum (1-b)^{distinct sizes} prod_{freq >= 2}
    (1 - (b/2)(freq - 1))."""
    if n < 0:
        raise ValueError("n must be >= 0")
    lead = QPoly((1, -1))
    total = QPoly.zero()
    for parts in _iter_parts_raw(n):
        term = QPoly.one()
        run_val = 0
        run_len = 0
        for p in parts + [0]:
            if p == run_val:
                run_len += 1
                continue
            if run_val:
                term = term * lead
                if run_len >= 2:
                    term = term * QPoly((1, Fraction(-(run_len - 1), 2)))
            run_val = p
            run_len = 1
        total = total + term
    return total


def c1b2_series(order: int) -> TruncatedSeries:
    """Product form of the symbolic two-colors-per-size series:
    prod (1 - (b+1) q^n + ((b^2+b)/2) q^{2n}) / (1-q^n)^2."""
    lin = QPoly((-1, -1))          # -(b+1)
    quad = QPoly((0, Fraction(1, 2), Fraction(1, 2)))  # (b^2+b)/2
    series = TruncatedSeries.one(POLY_RING, order)
    for n in range(1, order + 1):
        coeffs = [QPoly.zero()] * (order + 1)
        coeffs[0] = QPoly.one()
        coeffs[n] = lin
        if 2 * n <= order:
            coeffs[2 * n] = quad
        series = series * TruncatedSeries(POLY_RING, coeffs, order)
    base2 = euler_inverse_power(2, order).map_coefficients(POLY_RING, lambda v: QPoly((v,)))
    return series * base2


def nekrasov_okounkov_series(order: int, limit: int = DEFAULT_FULL_EXPANSION_LIMIT,
                             check: bool = True) -> TruncatedSeries:
    """prod (1-q^n)^(b-1) with exact polynomial coefficients.

    Coefficient degrees grow with the order, so expansion is guarded by an
    explicit limit.  With check=True every coefficient is re-derived from
    the hook sums and compared, a full cross-check of the expansion.
    """
    if order > limit:
        raise ValueError(f"order {order} above expansion limit {limit}")
    alpha = QPoly((-1, 1))  # b - 1
    series = TruncatedSeries.one(POLY_RING, order)
    for n in range(1, order + 1):
        series = series * symbolic_binomial_pow(n, alpha, order)
    if check:
        for n in range(order + 1):
            expected = hook_poly_sum(n)
            if series.coeffs[n] != expected:
                raise ArithmeticError(
                    f"product expansion disagrees with hook sums at q^{n}"
                )
    return series


def total_fours(n: int) -> int:
    """Sum over partitions of n of the number of parts equal to 4."""
    return sum(sum(1 for p in parts if p == 4) for parts in _iter_parts_raw(n))


def lambda4_frequency_identity(n: int) -> bool:
    """Check sum of fours-counts equals sum of sizes-with-frequency >= 4."""
    fours = 0
    rich = 0
    for parts in _iter_parts_raw(n):
        fours += sum(1 for p in parts if p == 4)
        run_val = 0
        run_len = 0
        for p in parts + [0]:
            if p == run_val:
                run_len += 1
                continue
            if run_val and run_len >= 4:
                rich += 1
            run_val = p
            run_len = 1
    return fours == rich


@dataclass(frozen=True)
class HookComparison:
    """Exact left/right polynomials for one n and the number of initial
    b-coefficients on which they agree."""

    n: int
    cutoff: int
    correction: str
    left: QPoly
    right: QPoly
    matched_orders: int

    def difference(self) -> QPoly:
        return self.left - self.right

    def difference_divisible_by(self, divisor: QPoly) -> bool:
        return self.difference().divisible_by(divisor)


def _matched_orders(left: QPoly, right: QPoly) -> int:
    top = max(left.degree, right.degree)
    for d in range(top + 1):
        if left.coeff(d) != right.coeff(d):
            return d - 1
    return top


def compare_low_order(n: int, m: int, correction: str = "none") -> HookComparison:
    """Compare the cutoff-m hook sum with the capped-frequency sum.

    correction="lambda4" (only with m=2) adds (b^2-b^3)/16 once per part
    equal to 4 across the partitions, the compensation under which the
    quadratic coefficients are observed to match as well.
    """
    if correction not in ("none", "lambda4"):
        raise ValueError(f"unknown correction {correction!r}")
    if correction == "lambda4" and m != 2:
        raise ValueError("the lambda4 correction is defined for m = 2 only")
    left = hook_poly_sum(n, m)
    right = restricted_sum(n, m)
    if correction == "lambda4":
        right = right + QPoly((0, 0, Fraction(1, 16), Fraction(-1, 16))) * total_fours(n)
    return HookComparison(n, m, correction, left, right, _matched_orders(left, right))


@dataclass(frozen=True)
class BinomialCubeReport:
    matches: bool
    first_mismatch: Optional[tuple[int, int, int]]  # (n, expansion, binomial)


def binom3_identity_check(order: int) -> BinomialCubeReport:
    """Verbatim comparison of 1/(q)_inf^3 against sum C(n+2, 2) q^n.

    The two sides agree only for n <= 1 (the left side counts 3-colored
    partitions); the first discrepancy is reported, not assumed away.
    """
    series = euler_inverse_power(3, order)
    for n in range(order + 1):
        lhs = series.coeffs[n]
        rhs = comb(n + 2, 2)
        if lhs != rhs:
            return BinomialCubeReport(False, (n, lhs, rhs))
    return BinomialCubeReport(True, None)
