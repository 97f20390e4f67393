"""Exact univariate polynomials over the rationals.

These carry the symbolic coefficients of the hook-length and marked-count
generating functions.  Coefficients are `fractions.Fraction`, stored low
degree first with trailing zeros stripped, so every polynomial has a unique
representation.  All arithmetic is exact; there is no floating point
anywhere in this module.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial
from typing import Iterable, Union

Scalar = Union[int, Fraction]


def _strip(coeffs: list[Fraction]) -> tuple[Fraction, ...]:
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return tuple(coeffs)


class QPoly:
    """Polynomial in one indeterminate with exact rational coefficients.

    The display variable defaults to ``b``; it is cosmetic only and ignored
    by equality and hashing.
    """

    __slots__ = ("_c", "var")

    def __init__(self, coeffs: Iterable[Scalar] = (), var: str = "b"):
        self._c = _strip([Fraction(c) for c in coeffs])
        self.var = var

    @classmethod
    def zero(cls, var: str = "b") -> "QPoly":
        return cls((), var)

    @classmethod
    def one(cls, var: str = "b") -> "QPoly":
        return cls((1,), var)

    @classmethod
    def x(cls, var: str = "b") -> "QPoly":
        """The indeterminate itself."""
        return cls((0, 1), var)

    @classmethod
    def constant(cls, c: Scalar, var: str = "b") -> "QPoly":
        return cls((c,), var)

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return self._c

    @property
    def degree(self) -> int:
        """Degree of the polynomial; -1 for the zero polynomial."""
        return len(self._c) - 1

    def is_zero(self) -> bool:
        return not self._c

    def coeff(self, i: int) -> Fraction:
        """Coefficient of the degree-``i`` term (0 beyond the degree)."""
        if 0 <= i < len(self._c):
            return self._c[i]
        return Fraction(0)

    def __bool__(self) -> bool:
        return bool(self._c)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, QPoly):
            return self._c == other._c
        if isinstance(other, (int, Fraction)):
            return self == QPoly((other,))
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._c)

    def __neg__(self) -> "QPoly":
        return QPoly([-c for c in self._c], self.var)

    def __add__(self, other: Union["QPoly", Scalar]) -> "QPoly":
        if isinstance(other, (int, Fraction)):
            other = QPoly((other,), self.var)
        a, b = self._c, other._c
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return QPoly(out, self.var)

    __radd__ = __add__

    def __sub__(self, other: Union["QPoly", Scalar]) -> "QPoly":
        if isinstance(other, (int, Fraction)):
            other = QPoly((other,), self.var)
        return self + (-other)

    def __rsub__(self, other: Scalar) -> "QPoly":
        return QPoly((other,), self.var) - self

    def __mul__(self, other: Union["QPoly", Scalar]) -> "QPoly":
        if isinstance(other, (int, Fraction)):
            return QPoly([c * other for c in self._c], self.var)
        a, b = self._c, other._c
        if not a or not b:
            return QPoly((), self.var)
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    if cb:
                        out[i + j] += ca * cb
        return QPoly(out, self.var)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "QPoly":
        if e < 0:
            raise ValueError("negative power of a polynomial")
        result = QPoly.one(self.var)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __divmod__(self, other: "QPoly") -> tuple["QPoly", "QPoly"]:
        """Exact long division; the divisor must be nonzero."""
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self._c)
        dq = other.degree
        lead = other._c[-1]
        quot = [Fraction(0)] * max(len(rem) - dq, 0)
        for i in range(len(rem) - 1, dq - 1, -1):
            c = rem[i]
            if c:
                f = c / lead
                quot[i - dq] = f
                for j, oc in enumerate(other._c):
                    rem[i - dq + j] -= f * oc
        return QPoly(quot, self.var), QPoly(rem, self.var)

    def divisible_by(self, other: "QPoly") -> bool:
        _, r = divmod(self, other)
        return r.is_zero()

    def evaluate(self, x: Scalar) -> Fraction:
        """Horner evaluation at an exact point."""
        acc = Fraction(0)
        for c in reversed(self._c):
            acc = acc * x + c
        return acc

    def __str__(self) -> str:
        if not self._c:
            return "0"
        parts = []
        for i in range(len(self._c) - 1, -1, -1):
            c = self._c[i]
            if not c:
                continue
            sign = "-" if c < 0 else "+"
            mag = -c if c < 0 else c
            if i == 0:
                body = str(mag)
            else:
                xs = self.var if i == 1 else f"{self.var}^{i}"
                body = xs if mag == 1 else f"{mag}*{xs}"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text

    def __repr__(self) -> str:
        return f"QPoly({[str(c) for c in self._c]})"


def falling_binomial(alpha: QPoly, i: int) -> QPoly:
    """Generalized binomial coefficient C(alpha, i) for polynomial alpha.

    alpha*(alpha-1)*...*(alpha-i+1) / i!, exact in QPoly.
    """
    if i < 0:
        raise ValueError("binomial index must be nonnegative")
    prod = QPoly.one(alpha.var)
    for t in range(i):
        prod = prod * (alpha - t)
    return prod * Fraction(1, factorial(i))
