"""Truncated formal power series over exact coefficient rings.

A series carries its truncation order explicitly; combining two series uses
the minimum of their orders, so a result is never claimed beyond the order
actually computed.  Three rings are supported: big integers, exact
rationals, and univariate rational polynomials.  Nothing ever rounds.

Integer-series products go through Kronecker substitution (pack the
coefficients into one big integer, multiply once, unpack with balanced
digits), which keeps products at orders in the thousands fast while staying
exact.  The naive factor-by-factor product is kept available as a test
oracle.
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Callable, Iterable, Mapping, Optional, Sequence

from .qpoly import QPoly, falling_binomial

DEFAULT_MAX_ORDER = 100_000
_MAX_ORDER_ENV = "KJPARTS_MAX_ORDER"


class BudgetError(RuntimeError):
    """Requested truncation order exceeds the configured memory budget."""


class RingMismatchError(ValueError):
    """Two series over different coefficient rings were combined."""


def max_order() -> int:
    raw = os.environ.get(_MAX_ORDER_ENV)
    if raw is None:
        return DEFAULT_MAX_ORDER
    try:
        return int(raw)
    except ValueError:
        raise BudgetError(f"{_MAX_ORDER_ENV} must be an integer, got {raw!r}")


def check_order_budget(order: int) -> None:
    if order < 0:
        raise ValueError("truncation order must be nonnegative")
    limit = max_order()
    if order > limit:
        raise BudgetError(
            f"order {order} exceeds the configured budget {limit} "
            f"(set {_MAX_ORDER_ENV} to raise it)"
        )


# ---------------------------------------------------------------------------
# Coefficient rings
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CoefficientRing:
    """Minimal exact-ring descriptor: constants, coercion from int, and
    inversion of units (which raises on non-units)."""

    name: str
    zero: Any
    one: Any
    coerce: Callable[[int], Any]
    invert_unit: Callable[[Any], Any]

    def __repr__(self) -> str:
        return f"CoefficientRing({self.name})"


def _invert_int(c: int) -> int:
    if c == 1 or c == -1:
        return c
    raise ValueError(f"{c} is not a unit in the integers")


def _invert_fraction(c: Fraction) -> Fraction:
    if c == 0:
        raise ValueError("zero is not invertible")
    return Fraction(1) / c


def _invert_poly(c: QPoly) -> QPoly:
    if c.degree != 0:
        raise ValueError(f"{c} is not a unit polynomial")
    return QPoly((Fraction(1) / c.coeff(0),), c.var)


INTEGER_RING = CoefficientRing("integer", 0, 1, int, _invert_int)
RATIONAL_RING = CoefficientRing("rational", Fraction(0), Fraction(1), Fraction, _invert_fraction)
POLY_RING = CoefficientRing(
    "poly", QPoly.zero(), QPoly.one(), lambda n: QPoly((n,)), _invert_poly
)

RINGS = (INTEGER_RING, RATIONAL_RING, POLY_RING)


# ---------------------------------------------------------------------------
# Exact integer convolution via Kronecker substitution
# ---------------------------------------------------------------------------

def _kron_pack(coeffs: Sequence[int], bits: int) -> int:
    # Evaluate the polynomial at 2^bits.  Negative coefficients are packed
    # two's-complement per block and corrected with one subtraction.
    nb = bits // 8
    mask = (1 << bits) - 1
    n = len(coeffs)
    buf = bytearray(nb * n)
    sbuf = bytearray(nb * (n + 1))
    any_neg = False
    for i, c in enumerate(coeffs):
        if c:
            buf[i * nb:(i + 1) * nb] = (c & mask).to_bytes(nb, "little")
            if c < 0:
                sbuf[(i + 1) * nb] = 1
                any_neg = True
    val = int.from_bytes(bytes(buf), "little")
    if any_neg:
        val -= int.from_bytes(bytes(sbuf), "little")
    return val


def _kron_unpack(x: int, bits: int, n_out: int) -> list[int]:
    neg = x < 0
    if neg:
        x = -x
    nb = bits // 8
    need = nb * (n_out + 1)
    nbytes = max((x.bit_length() + 7) // 8, 1)
    raw = x.to_bytes(max(nbytes, need), "little")
    half = 1 << (bits - 1)
    full = 1 << bits
    out = []
    carry = 0
    for i in range(n_out):
        v = int.from_bytes(raw[i * nb:(i + 1) * nb], "little") + carry
        if v >= half:
            v -= full
            carry = 1
        else:
            carry = 0
        out.append(-v if neg else v)
    return out


def convolve_int(a: Sequence[int], b: Sequence[int], n_out: int) -> list[int]:
    """Exact truncated convolution of integer sequences.

    Uses one big-integer multiplication; digit width is sized so that every
    convolution coefficient fits strictly inside half a block, making the
    balanced unpacking unambiguous.
    """
    if n_out <= 0:
        return []
    if not a or not b:
        return [0] * n_out
    amax = max(max(a), -min(a))
    bmax = max(max(b), -min(b))
    if amax == 0 or bmax == 0:
        return [0] * n_out
    bits = (
        amax.bit_length()
        + bmax.bit_length()
        + min(len(a), len(b)).bit_length()
        + 2
    )
    bits = (bits + 7) // 8 * 8
    prod = _kron_pack(a, bits) * _kron_pack(b, bits)
    return _kron_unpack(prod, bits, min(n_out, len(a) + len(b) - 1)) + [0] * max(
        0, n_out - (len(a) + len(b) - 1)
    )


def _convolve_generic(a: Sequence[Any], b: Sequence[Any], n_out: int, zero: Any) -> list[Any]:
    out = [zero] * n_out
    for i, ca in enumerate(a):
        if i >= n_out:
            break
        if not ca:
            continue
        top = min(len(b), n_out - i)
        for j in range(top):
            cb = b[j]
            if cb:
                out[i + j] = out[i + j] + ca * cb
    return out


_KRON_THRESHOLD = 32


def _mul_trunc(ring: CoefficientRing, a: Sequence[Any], b: Sequence[Any], n_out: int) -> list[Any]:
    if ring is INTEGER_RING and min(len(a), len(b)) >= _KRON_THRESHOLD:
        return convolve_int(a, b, n_out)
    if ring is INTEGER_RING:
        return _convolve_generic(a, b, n_out, 0)
    return _convolve_generic(a, b, n_out, ring.zero)


# ---------------------------------------------------------------------------
# TruncatedSeries
# ---------------------------------------------------------------------------

class TruncatedSeries:
    """Coefficients c_0..c_N over an exact ring, N = truncation order.

    Instances are immutable.  Binary operations require the same ring and
    truncate to the smaller order, which is recorded on the result.
    """

    __slots__ = ("ring", "order", "_c")

    def __init__(self, ring: CoefficientRing, coeffs: Iterable[Any], order: int):
        check_order_budget(order)
        c = list(coeffs)
        if len(c) < order + 1:
            c += [ring.zero] * (order + 1 - len(c))
        elif len(c) > order + 1:
            del c[order + 1:]
        self.ring = ring
        self.order = order
        self._c = tuple(c)

    # -- constructors -------------------------------------------------------

    @classmethod
    def from_ints(cls, ring: CoefficientRing, ints: Iterable[int], order: int) -> "TruncatedSeries":
        return cls(ring, [ring.coerce(v) for v in ints], order)

    @classmethod
    def one(cls, ring: CoefficientRing, order: int) -> "TruncatedSeries":
        return cls(ring, [ring.one], order)

    @classmethod
    def zero(cls, ring: CoefficientRing, order: int) -> "TruncatedSeries":
        return cls(ring, [], order)

    @classmethod
    def monomial(cls, ring: CoefficientRing, coeff: Any, exponent: int, order: int) -> "TruncatedSeries":
        c = [ring.zero] * (order + 1)
        if exponent <= order:
            c[exponent] = coeff
        return cls(ring, c, order)

    # -- accessors -----------------------------------------------------------

    @property
    def coeffs(self) -> tuple[Any, ...]:
        return self._c

    def coeff(self, i: int) -> Any:
        if i < 0 or i > self.order:
            raise IndexError(f"coefficient {i} outside computed order {self.order}")
        return self._c[i]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return (
            self.ring is other.ring
            and self.order == other.order
            and self._c == other._c
        )

    def __hash__(self) -> int:
        return hash((self.ring.name, self.order, self._c))

    def __repr__(self) -> str:
        head = ", ".join(str(c) for c in self._c[: min(8, len(self._c))])
        tail = ", ..." if self.order > 7 else ""
        return f"TruncatedSeries[{self.ring.name}; O(q^{self.order + 1})]({head}{tail})"

    def _require_same_ring(self, other: "TruncatedSeries") -> None:
        if self.ring is not other.ring:
            raise RingMismatchError(
                f"cannot combine series over {self.ring.name} and {other.ring.name}"
            )

    # -- arithmetic -----------------------------------------------------------

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._require_same_ring(other)
        n = min(self.order, other.order)
        return TruncatedSeries(
            self.ring, [a + b for a, b in zip(self._c[: n + 1], other._c[: n + 1])], n
        )

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._require_same_ring(other)
        n = min(self.order, other.order)
        return TruncatedSeries(
            self.ring, [a - b for a, b in zip(self._c[: n + 1], other._c[: n + 1])], n
        )

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries(self.ring, [-a for a in self._c], self.order)

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        self._require_same_ring(other)
        n = min(self.order, other.order)
        return TruncatedSeries(self.ring, _mul_trunc(self.ring, self._c, other._c, n + 1), n)

    def scale(self, c: Any) -> "TruncatedSeries":
        """Multiply every coefficient by a ring element."""
        return TruncatedSeries(self.ring, [a * c for a in self._c], self.order)

    def shift(self, k: int) -> "TruncatedSeries":
        """Multiply by q^k (order preserved; high coefficients fall off)."""
        if k < 0:
            raise ValueError("shift must be nonnegative")
        return TruncatedSeries(
            self.ring, [self.ring.zero] * k + list(self._c[: self.order + 1 - k]), self.order
        )

    def inverse(self) -> "TruncatedSeries":
        """Multiplicative inverse by Newton iteration; c_0 must be a unit."""
        u = self.ring.invert_unit(self._c[0])
        n = self.order
        x = [u]
        prec = 1
        a = self._c
        while prec <= n:
            prec = min(2 * prec, n + 1)
            t = _mul_trunc(self.ring, a[:prec], x, prec)
            t = [-v for v in t]
            t[0] = t[0] + self.ring.coerce(2)
            x = _mul_trunc(self.ring, x, t, prec)
        return TruncatedSeries(self.ring, x, n)

    def __pow__(self, e: int) -> "TruncatedSeries":
        if e == 0:
            return TruncatedSeries.one(self.ring, self.order)
        if e < 0:
            return (self ** (-e)).inverse()
        base = self
        result = None
        while e:
            if e & 1:
                result = base if result is None else result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def rescale(self, c: int) -> "TruncatedSeries":
        """Substitute q -> q^c: coefficient a_n moves to exponent c*n."""
        if c < 1:
            raise ValueError("rescale factor must be >= 1")
        out = [self.ring.zero] * (self.order + 1)
        for i in range(self.order // c + 1):
            out[c * i] = self._c[i]
        return TruncatedSeries(self.ring, out, self.order)

    def extract(self, step: int, offset: int) -> tuple[Any, ...]:
        """Subsequence c_B, c_{A+B}, c_{2A+B}, ... up to the computed order."""
        if step < 1:
            raise ValueError("progression step must be >= 1")
        if offset < 0:
            raise ValueError("progression offset must be >= 0")
        return tuple(self._c[offset:: step])

    def map_coefficients(self, ring: CoefficientRing, fn: Callable[[Any], Any]) -> "TruncatedSeries":
        """Coefficientwise transport into another ring (e.g. ints to polys)."""
        return TruncatedSeries(ring, [fn(c) for c in self._c], self.order)


@dataclass(frozen=True)
class CongruenceCheck:
    """Result of comparing two integer series modulo m."""

    ok: bool
    modulus: int
    order_checked: int
    first_failure: Optional[int]
    residues: Optional[tuple[int, int]]


def congruent_mod(a: TruncatedSeries, b: TruncatedSeries, m: int) -> CongruenceCheck:
    """Coefficientwise congruence test with a first-failure witness."""
    if m < 2:
        raise ValueError("modulus must be >= 2")
    if a.ring is not INTEGER_RING or b.ring is not INTEGER_RING:
        raise RingMismatchError("congruence comparison requires integer series")
    n = min(a.order, b.order)
    ca, cb = a.coeffs, b.coeffs
    for i in range(n + 1):
        if (ca[i] - cb[i]) % m:
            return CongruenceCheck(False, m, n, i, (ca[i] % m, cb[i] % m))
    return CongruenceCheck(True, m, n, None, None)


# ---------------------------------------------------------------------------
# Eta quotients
# ---------------------------------------------------------------------------

EtaQuotient = Mapping[int, int]


def pentagonal_coeffs(scale: int, order: int) -> list[int]:
    """prod_{n>=1} (1 - q^{scale*n}) expanded by the pentagonal sparse sum."""
    c = [0] * (order + 1)
    c[0] = 1
    k = 1
    while True:
        g1 = scale * (k * (3 * k - 1) // 2)
        if g1 > order:
            break
        s = -1 if k % 2 else 1
        c[g1] += s
        g2 = scale * (k * (3 * k + 1) // 2)
        if g2 <= order:
            c[g2] += s
        k += 1
    return c


def _sparse_nonzeros(coeffs: Sequence[int]) -> list[tuple[int, int]]:
    return [(i, v) for i, v in enumerate(coeffs) if v]


def _mul_sparse_into(dense: list[int], sparse: list[tuple[int, int]], order: int) -> list[int]:
    # dense * (sparse polynomial with sparse[0] == (0, 1)), truncated.
    out = list(dense)
    for e, v in sparse:
        if e == 0:
            continue
        if v == 1:
            for i in range(order, e - 1, -1):
                out[i] += dense[i - e]
        elif v == -1:
            for i in range(order, e - 1, -1):
                out[i] -= dense[i - e]
        else:
            for i in range(order, e - 1, -1):
                out[i] += v * dense[i - e]
    return out


def eta_expand(quotient: EtaQuotient, order: int) -> TruncatedSeries:
    """Expand prod_t f_t^{e_t}, f_t = prod_{n>=1}(1 - q^{t n}), to the order.

    Positive powers multiply in the sparse pentagonal expansions; the
    combined denominator is inverted once by Newton iteration.  Expansion is
    independent of key order (tested against the naive factor product).
    """
    check_order_budget(order)
    for t, e in quotient.items():
        if t < 1:
            raise ValueError(f"eta scale {t} must be >= 1")
        if e == 0:
            raise ValueError(f"eta exponent for scale {t} must be nonzero")
    num = [0] * (order + 1)
    num[0] = 1
    den = None
    for t in sorted(quotient):
        e = quotient[t]
        sparse = _sparse_nonzeros(pentagonal_coeffs(t, order))
        if e > 0:
            for _ in range(e):
                num = _mul_sparse_into(num, sparse, order)
        else:
            if den is None:
                den = [0] * (order + 1)
                den[0] = 1
            for _ in range(-e):
                den = _mul_sparse_into(den, sparse, order)
    result = TruncatedSeries(INTEGER_RING, num, order)
    if den is not None:
        result = result * TruncatedSeries(INTEGER_RING, den, order).inverse()
    return result


def eta_expand_naive(quotient: EtaQuotient, order: int) -> TruncatedSeries:
    """Oracle: direct factor-by-factor product of (1 - q^{tn})^{e_t}.

    Negative powers divide by each binomial factor via the geometric prefix
    sum.  Quadratically slower than eta_expand; used to validate it.
    """
    check_order_budget(order)
    c = [0] * (order + 1)
    c[0] = 1
    for t in sorted(quotient):
        e = quotient[t]
        for n in range(1, order // t + 1):
            s = t * n
            for _ in range(abs(e)):
                if e > 0:
                    for i in range(order, s - 1, -1):
                        c[i] -= c[i - s]
                else:
                    for i in range(s, order + 1):
                        c[i] += c[i - s]
    return TruncatedSeries(INTEGER_RING, c, order)


# ---------------------------------------------------------------------------
# Eta-term text format: `3 q^2 f4^6 f6^3 / f2^9 f12^2`
# ---------------------------------------------------------------------------

_FACTOR_RE = re.compile(r"^f(\d+)(?:\^(-?\d+))?$")
_QMONO_RE = re.compile(r"^q(?:\^(\d+))?$")
_INT_RE = re.compile(r"^-?\d+$")


@dataclass(frozen=True)
class EtaTerm:
    """scalar * q^shift * prod f_t^{e_t}, the unit of the identity registry."""

    scalar: int
    shift: int
    factors: tuple[tuple[int, int], ...]

    def expand(self, order: int) -> TruncatedSeries:
        if self.factors:
            series = eta_expand(dict(self.factors), order)
        else:
            series = TruncatedSeries.one(INTEGER_RING, order)
        if self.shift:
            series = series.shift(self.shift)
        if self.scalar != 1:
            series = series.scale(self.scalar)
        return series


def parse_eta_term(text: str) -> EtaTerm:
    """Parse one whitespace-separated eta term.

    Grammar: optional integer scalar, optional `q` or `q^k` monomial, then
    eta factors `f<t>` or `f<t>^<e>`, with a single `/` flipping the sign of
    the exponents that follow it.
    """
    tokens = text.split()
    scalar = 1
    shift = 0
    sign = 1
    seen_slash = False
    factors: dict[int, int] = {}
    idx = 0
    if idx < len(tokens) and _INT_RE.match(tokens[idx]):
        scalar = int(tokens[idx])
        idx += 1
    if idx < len(tokens):
        m = _QMONO_RE.match(tokens[idx])
        if m:
            shift = int(m.group(1)) if m.group(1) else 1
            idx += 1
    for tok in tokens[idx:]:
        if tok == "/":
            if seen_slash:
                raise ValueError(f"second '/' in eta term {text!r}")
            seen_slash = True
            sign = -1
            continue
        m = _FACTOR_RE.match(tok)
        if not m:
            raise ValueError(f"cannot parse eta factor {tok!r} in {text!r}")
        t = int(m.group(1))
        e = int(m.group(2)) if m.group(2) else 1
        factors[t] = factors.get(t, 0) + sign * e
    factors = {t: e for t, e in factors.items() if e}
    return EtaTerm(scalar, shift, tuple(sorted(factors.items())))


def format_eta_term(term: EtaTerm) -> str:
    parts = []
    if term.scalar != 1:
        parts.append(str(term.scalar))
    if term.shift == 1:
        parts.append("q")
    elif term.shift > 1:
        parts.append(f"q^{term.shift}")
    num = [(t, e) for t, e in term.factors if e > 0]
    den = [(t, -e) for t, e in term.factors if e < 0]
    parts += [f"f{t}" if e == 1 else f"f{t}^{e}" for t, e in num]
    if den:
        parts.append("/")
        parts += [f"f{t}" if e == 1 else f"f{t}^{e}" for t, e in den]
    return " ".join(parts) if parts else "1"


# ---------------------------------------------------------------------------
# Symbolic binomial powers (polynomial-coefficient series)
# ---------------------------------------------------------------------------

def symbolic_binomial_pow(n_scale: int, alpha: QPoly, order: int) -> TruncatedSeries:
    """(1 - q^{n_scale})^alpha for a linear-or-constant polynomial exponent.

    Expands to sum_i C(alpha, i) (-1)^i q^{i*n_scale} with the generalized
    binomial computed exactly in QPoly.
    """
    if n_scale < 1:
        raise ValueError("scale must be >= 1")
    if alpha.degree > 1:
        raise ValueError("exponent polynomial must be linear or constant")
    coeffs = [QPoly.zero(alpha.var)] * (order + 1)
    for i in range(order // n_scale + 1):
        term = falling_binomial(alpha, i)
        if i % 2:
            term = -term
        coeffs[i * n_scale] = term
    return TruncatedSeries(POLY_RING, coeffs, order)
