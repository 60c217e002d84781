"""Exact and high-precision scalar fields used by the whole package.

Two coefficient fields are supported everywhere: exact Gaussian rationals
(complex numbers with rational real and imaginary parts, no rounding ever)
and arbitrary-precision complex floats provided by mpmath.  Exact scalars
are the default; the float field is used for formulas containing square
roots, at a precision controlled by ``NCLANDAU_PRECISION_DIGITS``.

DualScalar augments the exact field with a first derivative in one real
parameter, so closed-form expressions can be differentiated exactly by
evaluating them on dual numbers.
"""

from __future__ import annotations

import math
import os
from fractions import Fraction

import mpmath as mp

DEFAULT_PRECISION_DIGITS = 30
PRECISION_ENV_VAR = "NCLANDAU_PRECISION_DIGITS"

_FLOAT_TYPES = (mp.mpf, mp.mpc, float, complex)


def precision_digits() -> int:
    """Working precision (significant digits) for the float scalar field."""
    raw = os.environ.get(PRECISION_ENV_VAR, "")
    try:
        digits = int(raw)
    except ValueError:
        digits = DEFAULT_PRECISION_DIGITS
    return max(digits, DEFAULT_PRECISION_DIGITS)


def workprec():
    """Context manager setting mpmath precision from the environment."""
    return mp.workdps(precision_digits())


def parse_rational(text: str) -> Fraction:
    """Parse 'p/q', integer, or decimal text into an exact Fraction.

    Decimal strings convert exactly (no float round trip).
    """
    return Fraction(text.strip())


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def exact_sqrt(q: Fraction):
    """Square root of a nonnegative rational, or None if irrational."""
    if q < 0:
        raise ValueError("exact_sqrt of a negative rational")
    num, den = q.numerator, q.denominator
    rn, rd = math.isqrt(num), math.isqrt(den)
    if rn * rn == num and rd * rd == den:
        return Fraction(rn, rd)
    return None


def to_mpf(q) -> mp.mpf:
    """Convert a Fraction (or int) to mpf at the current precision."""
    q = Fraction(q)
    return mp.mpf(q.numerator) / mp.mpf(q.denominator)


class GaussianRational:
    """Exact complex scalar re + im*i with Fraction components.

    Fractions keep themselves in lowest terms with positive denominators,
    so the stored form is canonical.  Arithmetic with mpmath numbers
    promotes to mpc at the current working precision; arithmetic with
    other scalar types defers to their reflected operators.
    """

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    @classmethod
    def i(cls) -> "GaussianRational":
        return cls(0, 1)

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def is_real(self) -> bool:
        return self.im == 0

    @staticmethod
    def _coerce(other):
        if isinstance(other, GaussianRational):
            return other
        if isinstance(other, (int, Fraction)):
            return GaussianRational(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            if isinstance(other, _FLOAT_TYPES):
                return self.to_mpc() + other
            return NotImplemented
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            if isinstance(other, _FLOAT_TYPES):
                return self.to_mpc() - other
            return NotImplemented
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            if isinstance(other, _FLOAT_TYPES):
                return other - self.to_mpc()
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            if isinstance(other, _FLOAT_TYPES):
                return self.to_mpc() * other
            return NotImplemented
        return GaussianRational(
            self.re * o.re - self.im * o.im,
            self.re * o.im + self.im * o.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            if isinstance(other, _FLOAT_TYPES):
                return self.to_mpc() / other
            return NotImplemented
        norm = o.re * o.re + o.im * o.im
        if norm == 0:
            raise ZeroDivisionError("division by zero GaussianRational")
        return GaussianRational(
            (self.re * o.re + self.im * o.im) / norm,
            (self.im * o.re - self.re * o.im) / norm,
        )

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            if isinstance(other, _FLOAT_TYPES):
                return other / self.to_mpc()
            return NotImplemented
        return o / self

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("GaussianRational powers must be nonnegative ints")
        result = GaussianRational(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        return hash((self.re, self.im))

    def to_mpc(self) -> mp.mpc:
        return mp.mpc(to_mpf(self.re), to_mpf(self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"GaussianRational({self.re!r}, {self.im!r})"

    def __str__(self):
        if self.im == 0:
            return format_rational(self.re)
        if self.re == 0:
            return f"{format_rational(self.im)}*i"
        sign = "+" if self.im > 0 else "-"
        return f"{format_rational(self.re)}{sign}{format_rational(abs(self.im))}*i"


class DualScalar:
    """Pair (value, derivative) for exact forward-mode differentiation.

    Evaluating a closed-form expression on DualScalar(r, 1) yields the
    expression's exact value and d/dr at the rational point r.
    """

    __slots__ = ("val", "der")

    def __init__(self, val=0, der=0):
        object.__setattr__(self, "val", self._gr(val))
        object.__setattr__(self, "der", self._gr(der))

    def __setattr__(self, name, value):
        raise AttributeError("DualScalar is immutable")

    @staticmethod
    def _gr(value) -> GaussianRational:
        if isinstance(value, GaussianRational):
            return value
        return GaussianRational(value)

    @classmethod
    def _coerce(cls, other):
        if isinstance(other, DualScalar):
            return other
        if isinstance(other, (int, Fraction, GaussianRational)):
            return cls(other, 0)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return DualScalar(self.val + o.val, self.der + o.der)

    __radd__ = __add__

    def __neg__(self):
        return DualScalar(-self.val, -self.der)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return DualScalar(self.val - o.val, self.der - o.der)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return DualScalar(self.val * o.val, self.der * o.val + self.val * o.der)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return DualScalar(
            self.val / o.val,
            (self.der * o.val - self.val * o.der) / (o.val * o.val),
        )

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("DualScalar powers must be nonnegative ints")
        result = DualScalar(1, 0)
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other):
        if isinstance(other, DualScalar):
            return self.val == other.val and self.der == other.der
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self == o

    def __hash__(self):
        return hash((self.val, self.der))

    def __repr__(self):
        return f"DualScalar({self.val!r}, {self.der!r})"


def as_scalar(value):
    """Normalize ints/Fractions to GaussianRational; pass others through."""
    if isinstance(value, (int, Fraction)):
        return GaussianRational(value)
    return value


def scalar_is_zero(value) -> bool:
    """Exact zero test for any supported coefficient type."""
    if isinstance(value, GaussianRational):
        return value.is_zero()
    if isinstance(value, DualScalar):
        return value.val.is_zero() and value.der.is_zero()
    return value == 0


def scalar_to_mpc(value) -> mp.mpc:
    """Convert any supported coefficient to mpc at current precision."""
    if isinstance(value, GaussianRational):
        return value.to_mpc()
    if isinstance(value, (int, Fraction)):
        return mp.mpc(to_mpf(value))
    return mp.mpc(value)
