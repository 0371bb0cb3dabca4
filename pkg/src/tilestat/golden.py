"""Exact arithmetic in Q(gamma), gamma = sqrt((1 + sqrt 5) / 2).

gamma is the positive root of t^4 - t^2 - 1, so Q(gamma) is a degree-4
number field with basis (1, gamma, gamma^2, gamma^3) over Q and the single
reduction law gamma^4 = gamma^2 + 1.  gamma^2 is the golden ratio phi, and
gamma is a unit: 1/gamma = gamma^3 - gamma.  Values are stored as four
Fractions in that basis, which makes equality, hashing and serialization
canonical for free.

Signs are decided without floats: a value is zero iff all four coefficients
are zero (the basis is independent over Q), and otherwise interval
evaluation around gamma is refined by bisection of t^4 - t^2 - 1 until the
interval excludes zero.  Floats are an export format only.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import total_ordering
from typing import Union

Rat = Union[int, Fraction]

_SQRT5 = math.sqrt(5.0)
_PHI_F = (1.0 + _SQRT5) / 2.0
_GAMMA_F = math.sqrt(_PHI_F)

# Bisection bracket for gamma on t^4 - t^2 - 1, which is increasing for t >= 1.
_gamma_lo = Fraction(1)
_gamma_hi = Fraction(3, 2)
_gamma_steps = 0


def _refine_gamma_to(steps: int) -> tuple[Fraction, Fraction]:
    global _gamma_lo, _gamma_hi, _gamma_steps
    while _gamma_steps < steps:
        mid = (_gamma_lo + _gamma_hi) / 2
        if mid * mid * (mid * mid - 1) < 1:
            _gamma_lo = mid
        else:
            _gamma_hi = mid
        _gamma_steps += 1
    return _gamma_lo, _gamma_hi


@total_ordering
class GoldenValue:
    """An element c0 + c1*g + c2*g^2 + c3*g^3 of Q(gamma), g = gamma."""

    __slots__ = ("_c",)

    def __init__(self, c0: Rat = 0, c1: Rat = 0, c2: Rat = 0, c3: Rat = 0):
        self._c = (Fraction(c0), Fraction(c1), Fraction(c2), Fraction(c3))

    @property
    def coeffs(self) -> tuple[Fraction, Fraction, Fraction, Fraction]:
        return self._c

    @classmethod
    def of(cls, x: Union["GoldenValue", Rat]) -> "GoldenValue":
        if isinstance(x, GoldenValue):
            return x
        return cls(x)

    @classmethod
    def gamma_power(cls, k: int) -> "GoldenValue":
        """gamma^k for any integer k (gamma is a unit, so k may be negative)."""
        base = _GAMMA if k >= 0 else _GAMMA_INV
        result = _ONE
        for _ in range(abs(k)):
            result = result * base
        return result

    @classmethod
    def phi_power(cls, k: int) -> "GoldenValue":
        """phi^k = gamma^(2k)."""
        return cls.gamma_power(2 * k)

    def is_zero(self) -> bool:
        return not any(self._c)

    def is_rational(self) -> bool:
        c = self._c
        return not (c[1] or c[2] or c[3])

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = GoldenValue(other)
        elif not isinstance(other, GoldenValue):
            return NotImplemented
        a, b = self._c, other._c
        return GoldenValue(a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3])

    __radd__ = __add__

    def __neg__(self):
        c = self._c
        return GoldenValue(-c[0], -c[1], -c[2], -c[3])

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = GoldenValue(other)
        elif not isinstance(other, GoldenValue):
            return NotImplemented
        a, b = self._c, other._c
        return GoldenValue(a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = self._c
            return GoldenValue(c[0] * other, c[1] * other, c[2] * other, c[3] * other)
        if not isinstance(other, GoldenValue):
            return NotImplemented
        a, b = self._c, other._c
        # Raw product coefficients of g^0 .. g^6, then fold with
        # g^4 = g^2 + 1, g^5 = g^3 + g, g^6 = 2 g^2 + 1.
        p0 = a[0] * b[0]
        p1 = a[0] * b[1] + a[1] * b[0]
        p2 = a[0] * b[2] + a[1] * b[1] + a[2] * b[0]
        p3 = a[0] * b[3] + a[1] * b[2] + a[2] * b[1] + a[3] * b[0]
        p4 = a[1] * b[3] + a[2] * b[2] + a[3] * b[1]
        p5 = a[2] * b[3] + a[3] * b[2]
        p6 = a[3] * b[3]
        return GoldenValue(p0 + p4 + p6, p1 + p5, p2 + p4 + 2 * p6, p3 + p5)

    __rmul__ = __mul__

    def _phi_part_inverse(self) -> "GoldenValue":
        # Inverse of p + q*phi: ((p + q) - q*phi) / (p^2 + p q - q^2).
        c = self._c
        if c[1] or c[3]:
            raise ValueError("not in the phi subfield")
        p, q = c[0], c[2]
        norm = p * p + p * q - q * q
        if norm == 0:
            raise ZeroDivisionError("division by zero golden value")
        return GoldenValue((p + q) / norm, 0, -q / norm, 0)

    def inverse(self) -> "GoldenValue":
        if self.is_zero():
            raise ZeroDivisionError("division by zero golden value")
        c = self._c
        conj = GoldenValue(c[0], -c[1], c[2], -c[3])
        denom = self * conj  # lands in Q(phi): (A + B g)(A - B g) = A^2 - B^2 phi
        return conj * denom._phi_part_inverse()

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return self * (Fraction(1) / other)
        if not isinstance(other, GoldenValue):
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return GoldenValue.of(other) * self.inverse()

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        base = self if k >= 0 else self.inverse()
        result = _ONE
        e = abs(k)
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def sign(self) -> int:
        """Exact sign in {-1, 0, 1}."""
        c = self._c
        if not (c[1] or c[2] or c[3]):
            return (c[0] > 0) - (c[0] < 0)
        if not any(c):
            return 0
        steps = max(_gamma_steps, 16)
        while True:
            lo, hi = _refine_gamma_to(steps)
            lo_pows = (Fraction(1), lo, lo * lo, lo * lo * lo)
            hi_pows = (Fraction(1), hi, hi * hi, hi * hi * hi)
            low = high = Fraction(0)
            for ck, lp, hp in zip(c, lo_pows, hi_pows):
                if ck >= 0:
                    low += ck * lp
                    high += ck * hp
                else:
                    low += ck * hp
                    high += ck * lp
            if low > 0:
                return 1
            if high < 0:
                return -1
            steps *= 2

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = GoldenValue(other)
        elif not isinstance(other, GoldenValue):
            return NotImplemented
        return self._c == other._c

    def __lt__(self, other):
        if isinstance(other, (int, Fraction)):
            other = GoldenValue(other)
        elif not isinstance(other, GoldenValue):
            return NotImplemented
        return (self - other).sign() < 0

    def __hash__(self):
        return hash(self._c)

    def __float__(self):
        c = self._c
        return (float(c[0]) + float(c[1]) * _GAMMA_F
                + float(c[2]) * _PHI_F + float(c[3]) * (_GAMMA_F * _PHI_F))

    def __abs__(self):
        return -self if self.sign() < 0 else self

    def __repr__(self):
        return "GoldenValue(%s)" % ", ".join(repr(str(x)) for x in self._c)

    def __str__(self):
        names = ("", "g", "g^2", "g^3")
        terms = []
        for ck, name in zip(self._c, names):
            if ck == 0:
                continue
            coef = str(ck)
            terms.append(coef + ("*" + name if name else ""))
        return " + ".join(terms) if terms else "0"

    def to_json(self) -> dict:
        return {"c": [str(x) for x in self._c], "float": float(self)}

    @classmethod
    def from_json(cls, data: dict) -> "GoldenValue":
        from .errors import ParseError

        try:
            c = [Fraction(s) for s in data["c"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError("bad golden value payload: %s" % exc) from None
        if len(c) != 4:
            raise ParseError("golden value needs exactly 4 coefficients")
        return cls(*c)


_ONE = GoldenValue(1)
_GAMMA = GoldenValue(0, 1)
_GAMMA_INV = GoldenValue(0, -1, 0, 1)  # 1/gamma = gamma^3 - gamma

ZERO = GoldenValue(0)
ONE = _ONE
GAMMA = _GAMMA
PHI = GoldenValue(0, 0, 1, 0)
GAMMA_FLOAT = _GAMMA_F
PHI_FLOAT = _PHI_F
