"""Exact scalars in Z[omega] * 2^(-k/2), omega = exp(i pi / 4)."""

from __future__ import annotations

import cmath
import math
from fractions import Fraction

_OMEGA = cmath.exp(1j * math.pi / 4)


def _normalize(a, b, c, d, k):
    if a == b == c == d == 0:
        return 0, 0, 0, 0, 0
    while k < 0:
        a, b, c, d = b - d, a + c, b + d, c - a
        k += 1
    # x / sqrt2 = x * sqrt2 / 2 with sqrt2 = omega - omega^3; exact when a = c, b = d (mod 2)
    while k > 0 and (a - c) % 2 == 0 and (b - d) % 2 == 0:
        a, b, c, d = (b - d) // 2, (a + c) // 2, (b + d) // 2, (c - a) // 2
        k -= 1
    return a, b, c, d, k


class DyadicOmega:
    """An element (a + b w + c w^2 + d w^3) * 2^(-k/2) with w = e^{i pi/4}.

    Stored in lowest terms: ``k`` is decreased while the numerator is still
    divisible by sqrt(2), and never goes below zero, so equal values have
    equal tuples.
    """

    __slots__ = ("a", "b", "c", "d", "k")

    def __init__(self, a=0, b=0, c=0, d=0, k=0):
        self.a, self.b, self.c, self.d, self.k = _normalize(int(a), int(b), int(c), int(d), int(k))

    @classmethod
    def omega_power(cls, m, half=0):
        """omega**m * 2**(-half/2)."""
        m %= 8
        coeffs = [0, 0, 0, 0]
        coeffs[m % 4] = -1 if m >= 4 else 1
        return cls(*coeffs, half)

    @classmethod
    def one(cls):
        return cls(1)

    @classmethod
    def zero(cls):
        return cls(0)

    @classmethod
    def from_tuple(cls, t):
        return cls(*t)

    def to_tuple(self):
        return (self.a, self.b, self.c, self.d, self.k)

    def is_zero(self):
        return self.a == 0 and self.b == 0 and self.c == 0 and self.d == 0

    def _scaled(self, k):
        """Numerator coefficients expressed over 2^(-k/2), k >= self.k."""
        a, b, c, d = self.a, self.b, self.c, self.d
        for _ in range(k - self.k):
            a, b, c, d = b - d, a + c, b + d, c - a
        return a, b, c, d

    def __add__(self, other):
        if not isinstance(other, DyadicOmega):
            other = _coerce(other)
        k = max(self.k, other.k)
        x, y = self._scaled(k), other._scaled(k)
        return DyadicOmega(*(p + q for p, q in zip(x, y)), k)

    __radd__ = __add__

    def __neg__(self):
        return DyadicOmega(-self.a, -self.b, -self.c, -self.d, self.k)

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __mul__(self, other):
        if not isinstance(other, DyadicOmega):
            other = _coerce(other)
        x = (self.a, self.b, self.c, self.d)
        y = (other.a, other.b, other.c, other.d)
        out = [0, 0, 0, 0]
        for i in range(4):
            for j in range(4):
                p = x[i] * y[j]
                if i + j >= 4:
                    out[i + j - 4] -= p
                else:
                    out[i + j] += p
        return DyadicOmega(*out, self.k + other.k)

    __rmul__ = __mul__

    def conjugate(self):
        # conj(w) = -w^3, conj(w^2) = -w^2, conj(w^3) = -w
        return DyadicOmega(self.a, -self.d, -self.c, -self.b, self.k)

    def __eq__(self, other):
        if not isinstance(other, DyadicOmega):
            try:
                other = _coerce(other)
            except TypeError:
                return NotImplemented
        return self.to_tuple() == other.to_tuple()

    def __hash__(self):
        return hash(self.to_tuple())

    def __complex__(self):
        w = _OMEGA
        return (self.a + self.b * w + self.c * w * w + self.d * w ** 3) * 2.0 ** (-self.k / 2)

    def as_omega_power(self):
        """Return ``(m, half)`` with self == omega**m * 2**(-half/2), or None."""
        nz = [(i, v) for i, v in enumerate((self.a, self.b, self.c, self.d)) if v]
        if len(nz) != 1 or abs(nz[0][1]) != 1:
            return None
        i, v = nz[0]
        return (i + (4 if v < 0 else 0)) % 8, self.k

    def magnitude_log2(self):
        """log2 |self| as a Fraction; None for zero.

        Only values of the form omega**m * 2**(j/2) are supported; anything
        else raises ValueError since the magnitude is then irrational in log2.
        """
        if self.is_zero():
            return None
        # values above 1 only reach unit form after extra factors of 2^(-1/2)
        limit = 2 * max(abs(v) for v in self.to_tuple()[:4]).bit_length() + 2
        for extra in range(limit + 1):
            p = DyadicOmega(self.a, self.b, self.c, self.d, self.k + extra).as_omega_power()
            if p is not None:
                return Fraction(extra - p[1], 2)
        raise ValueError(f"{self!r} is not a unit times a power of sqrt(2)")

    def __repr__(self):
        return f"DyadicOmega{self.to_tuple()}"


def _coerce(x):
    if isinstance(x, DyadicOmega):
        return x
    if isinstance(x, int):
        return DyadicOmega(x)
    raise TypeError(f"cannot convert {type(x).__name__} to DyadicOmega")


ONE = DyadicOmega(1)
ZERO = DyadicOmega(0)
SQRT2_INV = DyadicOmega(1, 0, 0, 0, 1)
I = DyadicOmega(0, 0, 1)
