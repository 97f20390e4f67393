"""Integer partitions, conjugation, hook censuses, and two-size geometry.

Partitions are plain tuples of weakly decreasing positive integers; the
empty partition is ``()``.  Ferrers diagrams use the row convention (row i
has ``parts[i]`` cells).  Hook lengths are arm + leg + 1; the resulting hook
multiset does not depend on the row/column convention.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from math import isqrt
from typing import Iterator

Partition = tuple[int, ...]


def validate_partition(parts: Partition) -> None:
    """Raise ValueError unless ``parts`` is weakly decreasing and positive."""
    for i, p in enumerate(parts):
        if p < 1:
            raise ValueError(f"part {p} is not a positive integer")
        if i and parts[i - 1] < p:
            raise ValueError(f"parts not weakly decreasing at index {i}")


def _iter_parts_raw(n: int) -> Iterator[list[int]]:
    # Yields the internal working list in reverse-lexicographic order.
    # Callers must not mutate or retain it between iterations.
    if n == 0:
        yield []
        return
    part = [n]
    while True:
        yield part
        i = len(part) - 1
        while i >= 0 and part[i] == 1:
            i -= 1
        if i < 0:
            return
        part[i] -= 1
        rem = len(part) - i
        del part[i + 1:]
        cap = part[i]
        while rem:
            t = cap if cap < rem else rem
            part.append(t)
            rem -= t


def enumerate_partitions(n: int) -> Iterator[Partition]:
    """All partitions of n, each exactly once, in reverse-lexicographic order.

    n = 0 yields exactly the empty partition.  The order is fixed so that
    listings and reports are reproducible: (3) then (2,1) then (1,1,1).
    """
    if n < 0:
        raise ValueError("cannot partition a negative integer")
    for part in _iter_parts_raw(n):
        yield tuple(part)


def conjugate(parts: Partition) -> Partition:
    """Diagonal reflection: row lengths become column lengths."""
    if not parts:
        return ()
    out = []
    k = len(parts)
    for i in range(1, parts[0] + 1):
        while parts[k - 1] < i:
            k -= 1
        out.append(k)
    return tuple(out)


def frequencies(parts: Partition) -> Counter:
    """Multiplicity of each part size (the exponent view of a partition)."""
    return Counter(parts)


def distinct_size_count(parts: Partition) -> int:
    """Number of distinct part sizes; 0 for the empty partition."""
    return len(set(parts))


def max_distinct_sizes(n: int) -> int:
    """Largest t with t(t+1)/2 <= n.

    This is the maximum number of distinct part sizes over partitions of n,
    hence the degree of the associated marked-count polynomial.  n = 0 is
    rejected: the degree query is undefined there.
    """
    if n < 1:
        raise ValueError("max_distinct_sizes requires n >= 1")
    # t(t+1)/2 <= n  <=>  t <= (sqrt(8n+1)-1)/2
    t = (isqrt(8 * n + 1) - 1) // 2
    while (t + 1) * (t + 2) // 2 <= n:
        t += 1
    while t * (t + 1) // 2 > n:
        t -= 1
    return t


@dataclass(frozen=True)
class HookCensus:
    """Hook-length multiset of a partition with the size-2 hooks split by
    orientation: ``a1`` counts size-2 hooks lying flat at the end of a row
    (arm 1, leg 0), ``a2`` counts the upright ones (arm 0, leg 1).

    The multiset is invariant under conjugation while (a1, a2) swap; for a
    self-conjugate shape a1 == a2.
    """

    counts: dict[int, int]
    a1: int
    a2: int

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def sorted_hooks(self) -> tuple[int, ...]:
        out = []
        for h in sorted(self.counts, reverse=True):
            out.extend([h] * self.counts[h])
        return tuple(out)


def hook_lengths(parts: Partition) -> list[int]:
    """All n hook lengths of the diagram, row by row."""
    conj = conjugate(parts)
    out = []
    for i, row in enumerate(parts):
        for j in range(row):
            arm = row - j - 1
            leg = conj[j] - i - 1
            out.append(arm + leg + 1)
    return out


def hook_census(parts: Partition) -> HookCensus:
    """Hook multiset plus the horizontal/vertical split of the 2-hooks."""
    conj = conjugate(parts)
    counts: Counter = Counter()
    a1 = a2 = 0
    for i, row in enumerate(parts):
        for j in range(row):
            arm = row - j - 1
            leg = conj[j] - i - 1
            h = arm + leg + 1
            counts[h] += 1
            if h == 2:
                if arm == 1:
                    a1 += 1
                else:
                    a2 += 1
    return HookCensus(dict(counts), a1, a2)


def is_self_conjugate(parts: Partition) -> bool:
    return parts == conjugate(parts)


def iter_two_size_partitions(m: int) -> Iterator[Partition]:
    """All partitions of m with exactly two distinct part sizes.

    Enumerates x^i y^j with x > y >= 1, i, j >= 1, ix + jy = m.  This is the
    complete two-size stratum, so filtering it is equivalent to filtering the
    full partition list, at a cost that stays polynomial in m.
    """
    for x in range(2, m):
        for i in range(1, m // x + 1):
            rem = m - i * x
            if rem < 1:
                break
            for y in range(1, x):
                if rem % y == 0:
                    yield (x,) * i + (y,) * (rem // y)


def self_conjugate_two_size_count(m: int, method: str = "geometric") -> int:
    """Number of self-conjugate partitions of m with exactly two part sizes.

    method="geometric" counts solutions of m = a(a + 2b) with a, b >= 1,
    each of which describes the unique self-conjugate shape with arm/leg
    widths a and b.  method="filter" enumerates the two-size partitions of m
    and keeps the conjugation-fixed ones; the two routes must agree.
    """
    if m < 1:
        raise ValueError("m must be >= 1")
    if method == "geometric":
        count = 0
        for a in range(1, isqrt(m) + 1):
            if a * a == m:
                break
            if m % a == 0:
                rest = m // a - a
                if rest >= 2 and rest % 2 == 0:
                    count += 1
        return count
    if method == "filter":
        return sum(1 for p in iter_two_size_partitions(m) if is_self_conjugate(p))
    raise ValueError(f"unknown method {method!r}")
