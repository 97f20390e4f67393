"""Exact arithmetic functions on naturals: factorization, divisor sums,
p-adic valuations, and the residue predicates the congruence claims need.

Everything is deterministic trial division; the bounds used in this package
never exceed a few times 10^7, where this is simple and auditable.
"""

from __future__ import annotations

from functools import lru_cache
from math import isqrt

Factorization = tuple[tuple[int, int], ...]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0 or n % 3 == 0:
        return False
    f = 5
    while f * f <= n:
        if n % f == 0 or n % (f + 2) == 0:
            return False
        f += 6
    return True


@lru_cache(maxsize=1 << 18)
def factorize(n: int) -> Factorization:
    """Prime factorization as ((p1, e1), (p2, e2), ...) with p1 < p2 < ...

    factorize(1) is the empty tuple; n = 0 is rejected.
    """
    if n < 1:
        raise ValueError("factorize requires n >= 1")
    out = []
    for p in (2, 3):
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
    f = 5
    while f * f <= n:
        for p in (f, f + 2):
            if n % p == 0:
                e = 0
                while n % p == 0:
                    n //= p
                    e += 1
                out.append((p, e))
        f += 6
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def divisors(n: int) -> list[int]:
    """All positive divisors of n, sorted."""
    divs = [1]
    for p, e in factorize(n):
        powers = [p ** i for i in range(1, e + 1)]
        divs += [d * q for d in divs for q in powers]
    return sorted(divs)


def sigma(r: int, n: int) -> int:
    """Sum of the r-th powers of the divisors of n.

    r = 0 gives the divisor count via the product of (e_i + 1); r >= 1 uses
    the closed form prod (p^(r(e+1)) - 1) / (p^r - 1), exactly.
    """
    if n < 1:
        raise ValueError("sigma requires n >= 1")
    if r < 0:
        raise ValueError("sigma requires r >= 0")
    total = 1
    for p, e in factorize(n):
        if r == 0:
            total *= e + 1
        else:
            pr = p ** r
            total *= (pr ** (e + 1) - 1) // (pr - 1)
    return total


def divisor_count(n: int) -> int:
    return sigma(0, n)


def valuation(p: int, n: int) -> int:
    """Exponent of the prime p in n."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if n < 1:
        raise ValueError("valuation requires n >= 1")
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e


def odd_order_prime_count(n: int) -> int:
    """Number of primes appearing to odd exponent in n.

    Zero exactly when n is a perfect square; at least two exactly when the
    divisor count of n is a multiple of 4.
    """
    return sum(1 for _, e in factorize(n) if e % 2)


def is_square(n: int) -> bool:
    if n < 0:
        return False
    r = isqrt(n)
    return r * r == n


def divisor_count_sieve(limit: int) -> list[int]:
    """d(n) for 0 <= n <= limit (index 0 unused, set to 0)."""
    d = [0] * (limit + 1)
    for i in range(1, limit + 1):
        for j in range(i, limit + 1, i):
            d[j] += 1
    return d


def sigma1_sieve(limit: int) -> list[int]:
    """sigma_1(n) for 0 <= n <= limit (index 0 unused, set to 0)."""
    s = [0] * (limit + 1)
    for i in range(1, limit + 1):
        for j in range(i, limit + 1, i):
            s[j] += i
    return s
