"""Independent oracles used to freeze expected values.

These deliberately avoid the package's series machinery: partition counts
come from the classical recurrence over generalized pentagonal numbers, and
overpartition counts from direct marked enumeration.
"""

from functools import lru_cache


@lru_cache(maxsize=None)
def partition_count(n: int) -> int:
    """p(n) by the alternating pentagonal-number recurrence."""
    if n < 0:
        return 0
    if n == 0:
        return 1
    total = 0
    k = 1
    while True:
        g1 = k * (3 * k - 1) // 2
        g2 = k * (3 * k + 1) // 2
        if g1 > n:
            break
        sign = -1 if k % 2 == 0 else 1
        total += sign * partition_count(n - g1)
        if g2 <= n:
            total += sign * partition_count(n - g2)
        k += 1
    return total


def overpartition_count(n: int) -> int:
    """Number of partitions of n with any subset of distinct sizes marked."""
    from kjparts.partitions import enumerate_partitions

    total = 0
    for parts in enumerate_partitions(n):
        total += 2 ** len(set(parts))
    return total


def schoolbook_product(a: list[int], b: list[int], order: int) -> list[int]:
    out = [0] * (order + 1)
    for i, x in enumerate(a[: order + 1]):
        if x:
            for j, y in enumerate(b[: order + 1 - i]):
                out[i + j] += x * y
    return out
