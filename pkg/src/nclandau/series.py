"""Truncated formal power series in the noncommutativity parameter.

A ThetaSeries holds polynomial coefficients for powers 0..K of theta and
never reads or writes above K.  The truncation order is fixed at
construction; combining series of different orders is an error, because
silent re-truncation is the classic way series code goes wrong.  All
coefficients are exact.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial

from .poly import ConfigPoly
from .scalars import GaussianRational


class OrderMismatchError(ValueError):
    pass


def _binomial(p: Fraction, k: int) -> Fraction:
    """Generalized binomial coefficient C(p, k) for rational p."""
    num = Fraction(1)
    for j in range(k):
        num *= p - j
    return num / factorial(k)


class ThetaSeries:
    """Polynomial-coefficient series a0 + a1*t + ... + aK*t^K."""

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs=None):
        if order < 0:
            raise ValueError("series order must be nonnegative")
        data = [ConfigPoly.zero()] * (order + 1)
        if coeffs is not None:
            if len(coeffs) > order + 1:
                raise ValueError("more coefficients than the truncation order allows")
            for k, c in enumerate(coeffs):
                if not isinstance(c, ConfigPoly):
                    c = ConfigPoly.constant(c)
                data[k] = c
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "coeffs", tuple(data))

    def __setattr__(self, name, value):
        raise AttributeError("ThetaSeries is immutable")

    # -- constructors ---------------------------------------------------

    @classmethod
    def constant(cls, order: int, value) -> "ThetaSeries":
        return cls(order, [value])

    @classmethod
    def one(cls, order: int) -> "ThetaSeries":
        return cls(order, [ConfigPoly.one()])

    @classmethod
    def theta(cls, order: int) -> "ThetaSeries":
        if order < 1:
            raise ValueError("order must be at least 1 to represent theta")
        return cls(order, [ConfigPoly.zero(), ConfigPoly.one()])

    # -- plumbing ---------------------------------------------------------

    def _check_order(self, other: "ThetaSeries"):
        if self.order != other.order:
            raise OrderMismatchError(
                f"series orders differ: {self.order} != {other.order}"
            )

    def extract(self, k: int) -> ConfigPoly:
        """Coefficient polynomial of theta^k."""
        if not 0 <= k <= self.order:
            raise ValueError(f"index {k} outside series order {self.order}")
        return self.coeffs[k]

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def constant_term_zero(self) -> bool:
        return self.coeffs[0].is_zero()

    # -- ring operations -----------------------------------------------

    def __add__(self, other):
        other = self._as_series(other)
        self._check_order(other)
        return ThetaSeries(
            self.order, [a + b for a, b in zip(self.coeffs, other.coeffs)]
        )

    __radd__ = __add__

    def __neg__(self):
        return ThetaSeries(self.order, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._as_series(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, ThetaSeries):
            self._check_order(other)
            out = [ConfigPoly.zero()] * (self.order + 1)
            for i, a in enumerate(self.coeffs):
                if a.is_zero():
                    continue
                for j in range(self.order + 1 - i):
                    b = other.coeffs[j]
                    if b.is_zero():
                        continue
                    out[i + j] = out[i + j] + a * b
            return ThetaSeries(self.order, out)
        return self.scale(other)

    __rmul__ = __mul__

    def scale(self, value) -> "ThetaSeries":
        """Multiply every coefficient by a scalar or a fixed polynomial."""
        if isinstance(value, ConfigPoly):
            return ThetaSeries(self.order, [value * c for c in self.coeffs])
        return ThetaSeries(self.order, [c.scale(value) for c in self.coeffs])

    def shift_theta(self, power: int = 1) -> "ThetaSeries":
        """Multiply by theta^power, dropping coefficients past the order."""
        if power < 0:
            raise ValueError("shift power must be nonnegative")
        out = [ConfigPoly.zero()] * (self.order + 1)
        for k in range(self.order + 1 - power):
            out[k + power] = self.coeffs[k]
        return ThetaSeries(self.order, out)

    def _as_series(self, value) -> "ThetaSeries":
        if isinstance(value, ThetaSeries):
            return value
        return ThetaSeries.constant(self.order, value)

    def diff_x(self) -> "ThetaSeries":
        return ThetaSeries(self.order, [c.diff_x() for c in self.coeffs])

    def diff_y(self) -> "ThetaSeries":
        return ThetaSeries(self.order, [c.diff_y() for c in self.coeffs])

    # -- series functions ---------------------------------------------------

    def binomial_power(self, p: Fraction) -> "ThetaSeries":
        """(1 + u)^p as a truncated binomial series; u must be O(theta).

        Exact rational binomial coefficients; p = -1, +-1/2 cover the
        square roots and reciprocals appearing in the field expansions.
        """
        if not self.constant_term_zero():
            raise ValueError("binomial_power requires a series with zero constant term")
        p = Fraction(p)
        out = ThetaSeries.one(self.order)
        u_power = ThetaSeries.one(self.order)
        for k in range(1, self.order + 1):
            u_power = u_power * self
            if u_power.is_zero():
                break
            out = out + u_power.scale(GaussianRational(_binomial(p, k)))
        return out

    def reciprocal(self) -> "ThetaSeries":
        """1 / (c + u) for invertible constant scalar part c."""
        c = self.coeffs[0]
        if c.degree() > 0 or c.is_zero():
            raise ValueError("reciprocal needs a nonzero scalar constant term")
        c_scalar = c.constant_part()
        u = (self - ThetaSeries.constant(self.order, c_scalar)).scale(
            GaussianRational(1) / c_scalar
        )
        return u.binomial_power(Fraction(-1)).scale(GaussianRational(1) / c_scalar)

    # -- star structure ------------------------------------------------

    def star_mul(self, other: "ThetaSeries", r: Fraction) -> "ThetaSeries":
        """Star product with theta kept formal.

        Bidifferential order m+n lands at theta power m+n, combined with
        the Cauchy product over the series indices; truncated at K.
        """
        from .star import _bidiff_weight  # local import to avoid a cycle

        other = self._as_series(other)
        self._check_order(other)
        r = Fraction(r)
        out = [ConfigPoly.zero()] * (self.order + 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j in range(self.order + 1 - i):
                b = other.coeffs[j]
                if b.is_zero():
                    continue
                room = self.order - i - j
                m_max = min(a.degree_x(), b.degree_y(), room)
                for m in range(m_max + 1):
                    left_m = a.diff(m, 0)
                    right_m = b.diff(0, m)
                    n_max = min(a.degree_y(), b.degree_x(), room - m)
                    for n in range(n_max + 1):
                        left = left_m.diff(0, n)
                        right = right_m.diff(n, 0)
                        if left.is_zero() or right.is_zero():
                            continue
                        weight = _bidiff_weight(m, n, r, Fraction(1))
                        k = i + j + m + n
                        out[k] = out[k] + (left * right).scale(weight)
        return ThetaSeries(self.order, out)

    def star_commutator(self, other: "ThetaSeries", r: Fraction) -> "ThetaSeries":
        other = self._as_series(other)
        return self.star_mul(other, r) - other.star_mul(self, r)

    # -- comparison / printing ---------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, ThetaSeries):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.order, self.coeffs))

    def __str__(self):
        parts = [str(self.coeffs[0])]
        for k in range(1, self.order + 1):
            power = "t" if k == 1 else f"t^{k}"
            parts.append(f"({self.coeffs[k]})*{power}")
        return " + ".join(parts)

    def __repr__(self):
        return f"ThetaSeries({self})"
