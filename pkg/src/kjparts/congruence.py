"""Congruence claims, series identities, and their verifier.

Every claim is data: a coefficient stream, an arithmetic progression
(optionally scaled through a power tower), a modulus, and an optional
hypothesis predicate.  The verifier checks all progression elements up to a
bound and reports counterexamples; conjecture-flagged entries never hard-fail
a run, a counterexample for them is a finding to surface, not a bug.

The identity registry holds two-sided series identities (dissections and
modular reductions) in a small text format and expands both sides on demand.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from math import isqrt
from typing import Callable, Optional

from .arith import (
    divisor_count_sieve,
    is_square,
    odd_order_prime_count,
    sigma1_sieve,
    valuation,
)
from .colored import (
    ckj_series,
    euler_inverse_power,
    kcolored_series,
    nu_series,
    overpartition_series,
    partition_series,
    _product_over_scales,
)
from .series import (
    INTEGER_RING,
    TruncatedSeries,
    convolve_int,
    parse_eta_term,
)
from .series import _INT_RE, _QMONO_RE  # term grammar shared with eta parsing


# ---------------------------------------------------------------------------
# Divisor-convolution identities
# ---------------------------------------------------------------------------

@lru_cache(maxsize=4)
def _divisor_tables(limit: int) -> tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...]]:
    d = divisor_count_sieve(limit)
    s1 = sigma1_sieve(limit)
    conv = convolve_int(d, d, limit + 1)
    return tuple(d), tuple(s1), tuple(conv)


def _tables_for(n: int):
    size = 256
    while size < n:
        size *= 2
    return _divisor_tables(size)


def nu2_divisor_identity(n: int) -> int:
    """nu_2(n) from the divisor-convolution identity.

    nu_2(n) = (sum_{k=1}^{n-1} d(k) d(n-k) - sigma_1(n) + d(n)) / 2; the
    half is always integral, which is asserted on every evaluation.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    d, s1, conv = _tables_for(n)
    raw = conv[n] - s1[n] + d[n]
    assert raw % 2 == 0, f"divisor identity produced an odd value at n={n}"
    return raw // 2


def representation_count(n: int, p: int) -> int:
    """Number of ways n = x^2 + p*y^2 with x, y >= 1 and even p-valuation of y."""
    if n < 1:
        raise ValueError("n must be >= 1")
    count = 0
    x = 1
    while x * x + p <= n:
        rem = n - x * x
        if rem % p == 0:
            ysq = rem // p
            y = isqrt(ysq)
            if y >= 1 and y * y == ysq and valuation(p, y) % 2 == 0:
                count += 1
        x += 1
    return count


# ---------------------------------------------------------------------------
# Reports
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class VerificationReport:
    claim_id: str
    bound: int
    checked: int
    status: str  # "pass" | "fail"
    counterexamples: tuple[dict, ...] = ()
    conjecture: bool = False
    warning: Optional[str] = None
    alpha_coverage: Optional[tuple[tuple[int, int], ...]] = None

    def to_dict(self) -> dict:
        out = {
            "claim_id": self.claim_id,
            "bound": self.bound,
            "checked": self.checked,
            "status": self.status,
            "counterexamples": list(self.counterexamples),
        }
        if self.conjecture:
            out["conjecture"] = True
        if self.warning:
            out["warning"] = self.warning
        if self.alpha_coverage is not None:
            out["alpha_coverage"] = [list(t) for t in self.alpha_coverage]
        return out


def rouse_lemma_scan(bound: int) -> VerificationReport:
    """For every m = 6 mod 8 up to the bound, check that the divisor
    convolution sum_{k=1}^{m-1} d(k) d(m-k) is congruent to d(m) mod 8."""
    if bound < 6:
        raise ValueError("bound must be >= 6")
    d, _, conv = _tables_for(bound)
    bad = []
    checked = 0
    for m in range(6, bound + 1, 8):
        checked += 1
        if (conv[m] - d[m]) % 8:
            bad.append({"n": m, "value": conv[m], "residue": (conv[m] - d[m]) % 8})
    return VerificationReport(
        "rouse-divisor-convolution-mod8", bound, checked,
        "pass" if not bad else "fail", tuple(bad),
    )


def h_parity_scan(bound: int) -> VerificationReport:
    """Parity scan of the weight-4 combination behind the 16n+14 result.

    Builds F = sum sigma_1(2n+1) q^{2n+1} and the halved companion
    G/2 = sum (sigma_1(8n+5)/2) q^{8n+5} (that sigma is always even), forms
    H = F*(G/2) + F(q^4) F(q^2), and checks every coefficient up to the
    bound is even.  Separately checks that F mod 2 is the indicator of odd
    squares.  The halving matches the normalization under which the parity
    statement is true; without it the q^6 coefficient is already odd.
    """
    if bound < 32:
        raise ValueError("bound must be >= 32")
    s1 = sigma1_sieve(bound)
    f = [s1[n] if n % 2 else 0 for n in range(bound + 1)]
    ghalf = [0] * (bound + 1)
    for n in range(5, bound + 1, 8):
        assert s1[n] % 2 == 0, f"sigma_1({n}) expected even"
        ghalf[n] = s1[n] // 2
    f4 = [0] * (bound + 1)
    f2 = [0] * (bound + 1)
    for n in range(1, bound + 1, 2):
        if 4 * n <= bound:
            f4[4 * n] = s1[n]
        if 2 * n <= bound:
            f2[2 * n] = s1[n]
    h = convolve_int(f, ghalf, bound + 1)
    for i, v in enumerate(convolve_int(f4, f2, bound + 1)):
        h[i] += v
    bad = []
    for n in range(bound + 1):
        if h[n] % 2:
            bad.append({"n": n, "value": h[n], "residue": h[n] % 2})
    for n in range(bound + 1):
        indicator = 1 if (n % 2 and is_square(n)) else 0
        if (f[n] - indicator) % 2:
            bad.append({"n": n, "value": f[n], "residue": (f[n] - indicator) % 2})
    return VerificationReport(
        "h-series-parity-scan", bound, 2 * (bound + 1),
        "pass" if not bad else "fail", tuple(bad),
    )


# ---------------------------------------------------------------------------
# Sequence descriptors
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SequenceSpec:
    """A resolvable coefficient stream.

    kinds: ckj(k, j), overpartition, partition, kcolored(k), nu(i),
    divisor_count, sigma(r), series(expr), combo(terms) where terms are
    (integer coefficient, SequenceSpec) pairs combined pointwise.
    """

    kind: str
    params: tuple = ()

    def describe(self) -> str:
        if self.kind == "named":
            return f"[{self.params[0]}]"
        if self.kind == "ckj":
            return f"c_{{{self.params[0]},{self.params[1]}}}"
        if self.kind == "nu":
            return f"nu_{self.params[0]}"
        if self.kind == "kcolored":
            return f"c_{self.params[0]}"
        if self.kind == "combo":
            bits = []
            for coeff, sub in self.params:
                sign = "+" if coeff >= 0 else "-"
                mag = abs(coeff)
                bits.append(f"{sign} {'' if mag == 1 else str(mag) + '*'}{sub.describe()}")
            text = " ".join(bits)
            return text[2:] if text.startswith("+ ") else text
        if self.kind == "series":
            return self.params[0]
        if self.kind == "sigma":
            return f"sigma_{self.params[0]}"
        return self.kind

    def to_dict(self) -> dict:
        if self.kind == "combo":
            return {
                "kind": "combo",
                "terms": [[c, s.to_dict()] for c, s in self.params],
            }
        return {"kind": self.kind, "params": list(self.params)}


def ckj(k: int, j: int) -> SequenceSpec:
    return SequenceSpec("ckj", (k, j))


def nu(i: int) -> SequenceSpec:
    return SequenceSpec("nu", (i,))


def combo(*terms: tuple[int, SequenceSpec]) -> SequenceSpec:
    return SequenceSpec("combo", tuple(terms))


OVERPARTITION = SequenceSpec("overpartition")
PARTITION = SequenceSpec("partition")
DIVISOR_COUNT = SequenceSpec("divisor_count")


_RESOLVE_CACHE: dict[tuple, tuple[int, list[int]]] = {}


def resolve_sequence(spec: SequenceSpec, bound: int) -> list[int]:
    """Coefficients 0..bound of the stream; cached at the largest bound seen."""
    key = (spec.kind, spec.params)
    cached = _RESOLVE_CACHE.get(key)
    if cached is not None and cached[0] >= bound:
        return cached[1]
    values = _compute_sequence(spec, bound)
    if spec.kind != "combo":  # combos recompute from cached parts cheaply
        _RESOLVE_CACHE[key] = (bound, values)
    return values


def _compute_sequence(spec: SequenceSpec, bound: int) -> list[int]:
    kind = spec.kind
    if kind == "ckj":
        k, j = spec.params
        return list(ckj_series(k, j, bound).coeffs)
    if kind == "overpartition":
        return list(overpartition_series(bound).coeffs)
    if kind == "partition":
        return list(partition_series(bound).coeffs)
    if kind == "kcolored":
        return list(kcolored_series(spec.params[0], bound).coeffs)
    if kind == "nu":
        return list(nu_series(spec.params[0], bound))
    if kind == "divisor_count":
        return list(divisor_count_sieve(bound))
    if kind == "sigma":
        r = spec.params[0]
        out = [0] * (bound + 1)
        for i in range(1, bound + 1):
            ir = i ** r
            for m in range(i, bound + 1, i):
                out[m] += ir
        return out
    if kind == "series":
        return list(expand_expression(spec.params[0], bound).coeffs)
    if kind == "named":
        entry = identities_by_id().get(spec.params[0])
        if entry is None:
            raise ValueError(f"unknown identity id {spec.params[0]!r}")
        return list(expand_expression(entry.left, bound).coeffs)
    if kind == "combo":
        total = [0] * (bound + 1)
        for coeff, sub in spec.params:
            vals = resolve_sequence(sub, bound)
            for i in range(bound + 1):
                total[i] += coeff * vals[i]
        return total
    raise ValueError(f"unresolvable sequence kind {kind!r}")


# ---------------------------------------------------------------------------
# Hypothesis predicates (evaluated per index)
# ---------------------------------------------------------------------------

def _not_square_or_twice_square(m: int) -> bool:
    if m < 1:
        return False
    return not is_square(m) and not (m % 2 == 0 and is_square(m // 2))


def _two_primes_odd_order(m: int) -> bool:
    return m >= 2 and odd_order_prime_count(m) >= 2


PREDICATES: dict[str, Callable[[int], bool]] = {
    "not_square_or_twice_square": _not_square_or_twice_square,
    "two_primes_odd_order": _two_primes_odd_order,
}


# ---------------------------------------------------------------------------
# Claims
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CongruenceClaim:
    """seq(beta^alpha * (A n + B)) = 0 (mod m) for all n, alpha in range,
    restricted to indices satisfying the hypothesis predicate if present."""

    id: str
    spec: SequenceSpec
    step: int
    offset: int
    modulus: int
    tower: Optional[int] = None
    hypothesis: Optional[str] = None
    conjecture: bool = False
    default_bound: int = 2000
    source: str = ""

    def __post_init__(self):
        if self.step < 1 or self.offset < 0:
            raise ValueError("progression must have step >= 1 and offset >= 0")
        if self.modulus < 2:
            raise ValueError("modulus must be >= 2")
        if self.tower is not None and (self.tower < 2 or self.offset < 1):
            raise ValueError("towers need base >= 2 and offset >= 1")
        if self.hypothesis is not None and self.hypothesis not in PREDICATES:
            raise ValueError(f"unknown hypothesis predicate {self.hypothesis!r}")

    def progression_text(self) -> str:
        core = f"{self.step}n+{self.offset}" if self.offset else f"{self.step}n"
        if self.tower is not None:
            core = f"{self.tower}^a*({core})"
        return core

    def to_dict(self) -> dict:
        out = {
            "id": self.id,
            "spec": self.spec.to_dict(),
            "progression": [self.step, self.offset],
            "modulus": self.modulus,
            "conjecture": self.conjecture,
            "default_bound": self.default_bound,
            "source": self.source,
        }
        if self.tower is not None:
            out["tower"] = self.tower
        if self.hypothesis is not None:
            out["hypothesis"] = self.hypothesis
        return out


def _progression_blocks(claim: CongruenceClaim, bound: int) -> list[tuple[Optional[int], list[int]]]:
    if claim.tower is None:
        idxs = list(range(claim.offset, bound + 1, claim.step))
        return [(None, idxs)]
    blocks = []
    alpha = 0
    while claim.tower ** alpha * claim.offset <= bound:
        scale = claim.tower ** alpha
        idxs = []
        t = 0
        while scale * (claim.step * t + claim.offset) <= bound:
            idxs.append(scale * (claim.step * t + claim.offset))
            t += 1
        blocks.append((alpha, idxs))
        alpha += 1
    return blocks


def verify_claim(claim: CongruenceClaim, bound: Optional[int] = None) -> VerificationReport:
    """Check every progression element up to the bound; deterministic."""
    bound = claim.default_bound if bound is None else bound
    blocks = _progression_blocks(claim, bound)
    all_idxs = [i for _, idxs in blocks for i in idxs]
    predicate = PREDICATES[claim.hypothesis] if claim.hypothesis else None
    if not all_idxs:
        return VerificationReport(
            claim.id, bound, 0, "pass", (), claim.conjecture,
            warning="bound below the first progression element; nothing checked",
        )
    values = resolve_sequence(claim.spec, bound)
    bad = []
    checked = 0
    for m in all_idxs:
        if predicate is not None and not predicate(m):
            continue
        checked += 1
        v = values[m]
        if v % claim.modulus:
            bad.append({"n": m, "value": v, "residue": v % claim.modulus})
    coverage = None
    if claim.tower is not None:
        coverage = tuple((alpha, len(idxs)) for alpha, idxs in blocks)
    warning = None
    if checked == 0:
        warning = "hypothesis excluded every progression element in bound"
    return VerificationReport(
        claim.id, bound, checked, "pass" if not bad else "fail",
        tuple(bad), claim.conjecture, warning, coverage,
    )


def _build_claims() -> tuple[CongruenceClaim, ...]:
    claims: list[CongruenceClaim] = []
    add = claims.append

    # Composite congruences for one-color-per-size families, riding on
    # published overpartition congruences (Xia-Yao mod 27, Hirschhorn-Sellers
    # mod 3 with the 9-power tower, Chen-Sun-Wang-Zhang mod 5 with 4-powers).
    add(CongruenceClaim("c51-24n19-mod15", ckj(5, 1), 24, 19, 15,
                        source="Xia-Yao overpartition mod 27 composite"))
    add(CongruenceClaim("c111-24n19-mod99", ckj(11, 1), 24, 19, 99,
                        source="Xia-Yao overpartition mod 27 composite"))
    add(CongruenceClaim("c291-24n19-mod783", ckj(29, 1), 24, 19, 783,
                        source="Xia-Yao overpartition mod 27 composite"))
    add(CongruenceClaim("c51-tower9-27n18-mod15", ckj(5, 1), 27, 18, 15, tower=9,
                        source="Hirschhorn-Sellers overpartition mod 3 composite"))
    add(CongruenceClaim("c71-tower4-40n35-mod35", ckj(7, 1), 40, 35, 35, tower=4,
                        source="Chen-Sun-Wang-Zhang overpartition mod 5 composite"))
    add(CongruenceClaim("c171-24n19-mod51", ckj(17, 1), 24, 19, 51,
                        source="mod 3 and mod 17 combination"))
    add(CongruenceClaim("c171-40n35-mod85", ckj(17, 1), 40, 35, 85,
                        source="mod 5 and mod 17 combination"))
    add(CongruenceClaim("c171-120n115-mod255", ckj(17, 1), 120, 115, 255,
                        source="mod 15 and mod 17 combination"))

    # The overpartition congruences themselves.
    add(CongruenceClaim("overp-tower9-27n18-mod3", OVERPARTITION, 27, 18, 3, tower=9,
                        source="Hirschhorn-Sellers"))
    add(CongruenceClaim("overp-mod8-nonsquare", OVERPARTITION, 1, 0, 8,
                        hypothesis="not_square_or_twice_square",
                        source="Kim: overpartitions mod 8 off squares and twice-squares"))

    # Parity of the two-distinct-sizes count on quadratic-nonresidue
    # progressions, plus its generalization through the divisor count.
    add(CongruenceClaim("nu2-4n2-mod2", nu(2), 4, 2, 2, default_bound=5000,
                        source="4n+2 is not a difference of squares"))
    add(CongruenceClaim("nu2-9n6-mod2", nu(2), 9, 6, 2, default_bound=5000,
                        source="p(pn+r) with r a nonresidue, p=3"))
    add(CongruenceClaim("nu2-25n10-mod2", nu(2), 25, 10, 2, default_bound=5000,
                        source="p(pn+r) with r a nonresidue, p=5"))
    add(CongruenceClaim("nu2-25n15-mod2", nu(2), 25, 15, 2, default_bound=5000,
                        source="p(pn+r) with r a nonresidue, p=5"))
    add(CongruenceClaim("nu2-two-odd-primes-mod2", nu(2), 1, 1, 2,
                        hypothesis="two_primes_odd_order", default_bound=3000,
                        source="self-conjugate pairing: d(m) = 0 mod 4 forces nu_2 even"))
    add(CongruenceClaim("nu2-16n14-mod4", nu(2), 16, 14, 4, default_bound=5000,
                        source="divisor-convolution identity plus parity scan"))

    # Even-k composite corollaries, k = 1..3 instances of each clause.
    for k in (1, 2, 3):
        add(CongruenceClaim(f"c{2 * k}1-8n6-mod8", ckj(2 * k, 1), 8, 6, 8,
                            default_bound=1500, source="divisor-sum grouping x,2x,3x,6x"))
        add(CongruenceClaim(
            f"c{2 * k}1-16n14-reduction-mod16",
            combo((1, ckj(2 * k, 1)), (-2 * k, DIVISOR_COUNT), (-8 * k ** 3, nu(3))),
            16, 14, 16, default_bound=1500,
            source="mod 16 reduction after removing the nu_2 term"))
        add(CongruenceClaim(f"c{4 * k}1-16n14-mod16", ckj(4 * k, 1), 16, 14, 16,
                            default_bound=1500, source="16 | 4k^2 strengthens the reduction"))
        for step, off in ((9, 6), (25, 10), (25, 15)):
            add(CongruenceClaim(
                f"c{2 * k}1-{step}n{off}-mod8", ckj(2 * k, 1), step, off, 8,
                default_bound=1500, source="nu_2 parity on nonresidue progressions"))
    # nu_3 = d/4 (mod 2) on 16n+14, stated integrally as 4*nu_3 = d (mod 8).
    add(CongruenceClaim(
        "nu3-quarter-d-16n14-mod2",
        combo((4, nu(3)), (-1, DIVISOR_COUNT)), 16, 14, 8, default_bound=1500,
        source="quarter-divisor-count relation, integral form"))

    # Eta-quotient family with one color short of unrestricted.
    add(CongruenceClaim("c32-3n2-mod9", ckj(3, 2), 3, 2, 9, default_bound=3000,
                        source="color rotation plus sigma_1 vanishing mod 3"))
    add(CongruenceClaim("c32-4n2-mod9", ckj(3, 2), 4, 2, 9, default_bound=3000,
                        source="2-dissection of f3/f1^3"))
    add(CongruenceClaim("c54-4n2-mod20", ckj(5, 4), 4, 2, 20, default_bound=3000,
                        source="2-dissections of f5/f1 and 1/f1^4"))
    add(CongruenceClaim("c54-2n-mod10", ckj(5, 4), 2, 2, 10, default_bound=3000,
                        source="even exponents double mod 2; color rotation gives 5"))

    # Two-color-per-size family at seven colors.
    for off in (2, 3, 4):
        add(CongruenceClaim(f"c72-5n{off}-mod35", ckj(7, 2), 5, off, 35,
                            source="shares mod 5 congruences with 2-colored partitions"))
    for off in (4, 6):
        add(CongruenceClaim(f"c72-8n{off}-mod14", ckj(7, 2), 8, off, 14,
                            source="2-dissection chain through f3/f1^3"))

    # Termwise congruences with classical series.  The k-2 overpartition
    # congruence starts at k=4: k=3 gives modulus 1, which says nothing.
    for k in range(4, 9):
        add(CongruenceClaim(
            f"c{k}1-overpartition-mod{k - 2}",
            combo((1, ckj(k, 1)), (-1, OVERPARTITION)), 1, 0, k - 2,
            default_bound=1000, source="1+(k-1)q^n = 1+q^n mod k-2 termwise"))
    for k in range(3, 9):
        add(CongruenceClaim(
            f"c{k}1-partition-mod{k - 1}",
            combo((1, ckj(k, 1)), (-1, PARTITION)), 1, 0, k - 1,
            default_bound=1000, source="1+(k-1)q^n = 1 mod k-1 termwise"))
    # When k-j is a prime larger than j, the local factor collapses mod k-j.
    for k, j in ((5, 2), (7, 2), (8, 3)):
        add(CongruenceClaim(
            f"c{k}{j}-kcolored{j}-mod{k - j}",
            combo((1, ckj(k, j)), (-1, SequenceSpec("kcolored", (j,)))), 1, 0, k - j,
            default_bound=1000,
            source="C(k-j+i-1, i) = 0 mod k-j for 1 <= i <= j < k-j prime"))

    # Conjectural progressions; failures are findings, not suite failures.
    add(CongruenceClaim("conj-nu2-36n30-mod4", nu(2), 36, 30, 4, conjecture=True,
                        default_bound=3000, source="open: mod 4 analogue at 36n+30"))
    add(CongruenceClaim("conj-nu3-36n30-mod2", nu(3), 36, 30, 2, conjecture=True,
                        default_bound=2000, source="open: three-size parity at 36n+30"))
    return tuple(claims)


_CLAIMS: Optional[tuple[CongruenceClaim, ...]] = None


def builtin_claims() -> tuple[CongruenceClaim, ...]:
    """The static claim registry; ids are stable."""
    global _CLAIMS
    if _CLAIMS is None:
        _CLAIMS = _build_claims()
    return _CLAIMS


def claims_by_id() -> dict[str, CongruenceClaim]:
    return {c.id: c for c in builtin_claims()}


# ---------------------------------------------------------------------------
# Identity registry
# ---------------------------------------------------------------------------

_CKJ_ATOM_RE = re.compile(r"^ckj\((\d+),(\d+)\)$")
_PRODPOLY_ATOM_RE = re.compile(r"^prodpoly\(([-\d,]+);(\d+)\)$")
_BINOMIAL_ATOM_RE = re.compile(r"^\(1-q(?:\^(\d+))?\)\^(\d+)$")


def _expand_atom(token: str, order: int) -> Optional[TruncatedSeries]:
    m = _CKJ_ATOM_RE.match(token)
    if m:
        return ckj_series(int(m.group(1)), int(m.group(2)), order)
    if token == "sigma1":
        return TruncatedSeries(INTEGER_RING, sigma1_sieve(order), order)
    m = _PRODPOLY_ATOM_RE.match(token)
    if m:
        poly = [int(v) for v in m.group(1).split(",")]
        d = int(m.group(2))
        series = TruncatedSeries(INTEGER_RING, _product_over_scales(poly, order), order)
        if d:
            series = series * euler_inverse_power(d, order)
        return series
    m = _BINOMIAL_ATOM_RE.match(token)
    if m:
        a = int(m.group(1)) if m.group(1) else 1
        e = int(m.group(2))
        base = [0] * (order + 1)
        base[0] = 1
        if a <= order:
            base[a] = -1
        return TruncatedSeries(INTEGER_RING, base, order) ** e
    return None


def _expand_term(term: str, order: int) -> TruncatedSeries:
    tokens = term.split()
    scalar = 1
    shift = 0
    idx = 0
    if idx < len(tokens) and _INT_RE.match(tokens[idx]) and len(tokens) > idx + 1:
        scalar = int(tokens[idx])
        idx += 1
    if idx < len(tokens):
        m = _QMONO_RE.match(tokens[idx])
        if m and len(tokens) > idx + 1:
            shift = int(m.group(1)) if m.group(1) else 1
            idx += 1
    if len(tokens) - idx == 1:
        atom = _expand_atom(tokens[idx], order)
        if atom is not None:
            if shift:
                atom = atom.shift(shift)
            if scalar != 1:
                atom = atom.scale(scalar)
            return atom
    return parse_eta_term(term).expand(order)


def expand_expression(text: str, order: int) -> TruncatedSeries:
    """Expand a sum of terms: eta terms, ckj(k,j), sigma1, prodpoly, or
    (1-q^a)^e atoms, joined by ` + ` / ` - `."""
    pieces = re.split(r"\s+([+-])\s+", text.strip())
    series = _expand_term(pieces[0], order)
    for op, term in zip(pieces[1::2], pieces[2::2]):
        t = _expand_term(term, order)
        series = series + t if op == "+" else series - t
    return series


@dataclass(frozen=True)
class IdentityEntry:
    id: str
    left: str
    right: str
    relation: str  # "equal" | "mod"
    modulus: Optional[int] = None
    start: int = 0
    default_order: int = 400
    description: str = ""

    def __post_init__(self):
        if self.relation not in ("equal", "mod"):
            raise ValueError(f"unknown relation {self.relation!r}")
        if self.relation == "mod" and (self.modulus is None or self.modulus < 2):
            raise ValueError("mod relation needs a modulus >= 2")


def _build_identities() -> tuple[IdentityEntry, ...]:
    return (
        IdentityEntry(
            "f3-f1cubed-2dissection",
            "f3 / f1^3",
            "f4^6 f6^3 / f2^9 f12^2 + 3 q f4^2 f6 f12^2 / f2^7",
            "equal", description="classical 2-dissection"),
        IdentityEntry(
            "f1cubed-f3-2dissection",
            "f1^3 / f3",
            "f4^3 / f12 - 3 q f2^2 f12^3 / f4 f6^2",
            "equal", description="companion 2-dissection"),
        IdentityEntry(
            "f5-f1-2dissection",
            "f5 / f1",
            "f8 f20^2 / f2^2 f40 + q f4^3 f10 f40 / f2^3 f8 f20",
            "equal", description="2-dissection of the pentagonal quotient"),
        IdentityEntry(
            "inv-f1pow4-2dissection",
            "1 / f1^4",
            "f4^14 / f2^14 f8^4 + 4 q f4^2 f8^4 / f2^10",
            "equal", description="2-dissection of the fourth-power inverse"),
        IdentityEntry(
            "f3-f1cubed-mod9-reduced",
            "f3 / f1^3",
            "f4^6 / f12^2 + 3 q f4^2 f12^2 / f2^4",
            "mod", 9, description="dissection reduced through (1-q)^9 = (1-q^3)^3 mod 3"),
        IdentityEntry(
            "c54-even-part-mod4",
            "f4^14 f20^2 / f2^16 f8^3 f40",
            "f4^6 f20^2 / f8^3 f40",
            "mod", 4, description="f2^16 collapses to f4^8 mod 4"),
        IdentityEntry(
            "onemq9-onemq3cubed-mod3",
            "(1-q)^9", "(1-q^3)^3",
            "mod", 3, description="freshman binomial cube"),
        IdentityEntry(
            "f1pow4-f2sq-mod4", "f1^4", "f2^2",
            "mod", 4, description="fourth power against doubled square"),
        IdentityEntry(
            "f2pow4-f4sq-mod4", "f2^4", "f4^2",
            "mod", 4, description="same at scale 2"),
        IdentityEntry(
            "f3pow4-f6sq-mod4", "f3^4", "f6^2",
            "mod", 4, description="same at scale 3"),
        IdentityEntry(
            "c72-product-form", "ckj(7,2)", "prodpoly(1,5,15;2)",
            "equal", description="local factor (1+5x+15x^2)/(1-x)^2"),
        IdentityEntry(
            "c72-midform-mod2", "ckj(7,2)", "prodpoly(1,1,1;2)",
            "mod", 2, description="coefficients collapse mod 2"),
        IdentityEntry(
            "midform-f3-f1cubed-exact", "prodpoly(1,1,1;2)", "f3 / f1^3",
            "equal", description="1+x+x^2 = (1-x^3)/(1-x)"),
        IdentityEntry(
            "c32-3sigma1-mod9", "ckj(3,2)", "3 sigma1",
            "mod", 9, start=1, description="color rotation leaves only one-size terms"),
        IdentityEntry(
            "bf-cd-mod2",
            "f16^6 f24^7 / f8^9 f48^2",
            "f16^2 f48^2 / f8 f24",
            "mod", 2, description="8n+4 block of the two-color dissection"),
        IdentityEntry(
            "bg-ce-mod2",
            "f16^6 f24^10 / f8^12 f48^2",
            "f16^2 f24^2 f48^2 / f8^4",
            "mod", 2, description="8n+6 block of the two-color dissection"),
        IdentityEntry(
            "c21-eta", "ckj(2,1)", "f2 / f1^2",
            "equal", description="overpartitions as an eta quotient"),
        IdentityEntry(
            "c32-eta", "ckj(3,2)", "f3 / f1^3",
            "equal", default_order=200, description="one color short of unrestricted"),
        IdentityEntry(
            "c43-eta", "ckj(4,3)", "f4 / f1^4",
            "equal", default_order=200, description="one color short of unrestricted"),
        IdentityEntry(
            "c54-eta", "ckj(5,4)", "f5 / f1^5",
            "equal", default_order=200, description="one color short of unrestricted"),
        IdentityEntry(
            "c65-eta", "ckj(6,5)", "f6 / f1^6",
            "equal", default_order=200, description="one color short of unrestricted"),
    )


_IDENTITIES: Optional[tuple[IdentityEntry, ...]] = None


def builtin_identities() -> tuple[IdentityEntry, ...]:
    global _IDENTITIES
    if _IDENTITIES is None:
        _IDENTITIES = _build_identities()
    return _IDENTITIES


def identities_by_id() -> dict[str, IdentityEntry]:
    return {e.id: e for e in builtin_identities()}


def verify_identity(identity_id: str, order: Optional[int] = None) -> VerificationReport:
    """Expand both sides of a registered identity and compare them."""
    entry = identities_by_id().get(identity_id)
    if entry is None:
        raise KeyError(f"unknown identity id {identity_id!r}")
    order = entry.default_order if order is None else order
    left = expand_expression(entry.left, order)
    right = expand_expression(entry.right, order)
    bad = []
    if entry.relation == "equal":
        for n in range(entry.start, order + 1):
            if left.coeffs[n] != right.coeffs[n]:
                diff = left.coeffs[n] - right.coeffs[n]
                bad.append({"n": n, "value": diff, "residue": diff})
    else:
        m = entry.modulus
        for n in range(entry.start, order + 1):
            diff = left.coeffs[n] - right.coeffs[n]
            if diff % m:
                bad.append({"n": n, "value": diff, "residue": diff % m})
    checked = order + 1 - entry.start
    return VerificationReport(
        entry.id, order, checked, "pass" if not bad else "fail", tuple(bad),
    )
