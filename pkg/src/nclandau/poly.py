"""Sparse exact polynomials in (x, y) and (x, y, px, py), and differential
operators with polynomial coefficients.

These are the carriers of all star-algebra content.  Coefficients are
GaussianRational by default; mpmath mpf/mpc coefficients are accepted for
high-precision float work.  Zero coefficients are never stored.
"""

from __future__ import annotations

from fractions import Fraction

from .scalars import (
    GaussianRational,
    as_scalar,
    format_rational,
    scalar_is_zero,
    scalar_to_mpc,
)


def _clean(terms: dict) -> dict:
    return {k: v for k, v in terms.items() if not scalar_is_zero(v)}


def _add_terms(a: dict, b: dict) -> dict:
    out = dict(a)
    for k, v in b.items():
        if k in out:
            s = out[k] + v
            if scalar_is_zero(s):
                del out[k]
            else:
                out[k] = s
        else:
            out[k] = v
    return out


def _mul_terms(a: dict, b: dict) -> dict:
    out: dict = {}
    for ka, va in a.items():
        for kb, vb in b.items():
            key = tuple(x + y for x, y in zip(ka, kb))
            prod = va * vb
            if key in out:
                s = out[key] + prod
                if scalar_is_zero(s):
                    del out[key]
                else:
                    out[key] = s
            elif not scalar_is_zero(prod):
                out[key] = prod
    return out


def _format_coeff_body(coeff):
    """Return (sign, body, needs_star) for one coefficient.

    sign is +1/-1; body omits the sign; needs_star says whether a '*' must
    separate the body from a following monomial ('' body means coefficient
    one, printed as the bare monomial).
    """
    if isinstance(coeff, GaussianRational):
        if coeff.im == 0:
            sign = 1 if coeff.re > 0 else -1
            mag = abs(coeff.re)
            body = "" if mag == 1 else format_rational(mag)
            return sign, body, bool(body)
        if coeff.re == 0:
            sign = 1 if coeff.im > 0 else -1
            mag = abs(coeff.im)
            body = "i" if mag == 1 else f"{format_rational(mag)}*i"
            return sign, body, True
        re_str = format_rational(coeff.re)
        im_mag = format_rational(abs(coeff.im))
        op = "+" if coeff.im > 0 else "-"
        return 1, f"({re_str}{op}{im_mag}*i)", True
    # Float coefficients only appear in diagnostic output, never in the
    # canonical exact form.
    return 1, f"({coeff})", True


def _format_terms(items, monomial_str) -> str:
    if not items:
        return "0"
    parts = []
    for key, coeff in items:
        sign, body, needs_star = _format_coeff_body(coeff)
        mono = monomial_str(key)
        if mono and body:
            text = f"{body}*{mono}" if needs_star else f"{body}{mono}"
        elif mono:
            text = mono
        else:
            text = body if body else "1"
        parts.append((sign, text))
    first_sign, first_text = parts[0]
    out = ("-" if first_sign < 0 else "") + first_text
    for sign, text in parts[1:]:
        out += (" - " if sign < 0 else " + ") + text
    return out


class ConfigPoly:
    """Sparse polynomial in the plane coordinates x and y."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        data = {}
        if terms:
            for key, coeff in terms.items():
                a, b = key
                coeff = as_scalar(coeff)
                if not scalar_is_zero(coeff):
                    data[(int(a), int(b))] = coeff
        object.__setattr__(self, "terms", data)

    def __setattr__(self, name, value):
        raise AttributeError("ConfigPoly is immutable")

    # -- constructors --------------------------------------------------

    @classmethod
    def zero(cls) -> "ConfigPoly":
        return cls()

    @classmethod
    def one(cls) -> "ConfigPoly":
        return cls({(0, 0): 1})

    @classmethod
    def constant(cls, c) -> "ConfigPoly":
        return cls({(0, 0): c})

    @classmethod
    def x(cls) -> "ConfigPoly":
        return cls({(1, 0): 1})

    @classmethod
    def y(cls) -> "ConfigPoly":
        return cls({(0, 1): 1})

    @classmethod
    def monomial(cls, a: int, b: int, coeff=1) -> "ConfigPoly":
        return cls({(a, b): coeff})

    # -- queries -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, a: int, b: int):
        return self.terms.get((a, b), GaussianRational(0))

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((a + b for a, b in self.terms), default=-1)

    def degree_x(self) -> int:
        return max((a for a, _ in self.terms), default=-1)

    def degree_y(self) -> int:
        return max((b for _, b in self.terms), default=-1)

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other):
        other = self._as_poly(other)
        return ConfigPoly(_add_terms(self.terms, other.terms))

    __radd__ = __add__

    def __neg__(self):
        return ConfigPoly({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._as_poly(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, ConfigPoly):
            return ConfigPoly(_mul_terms(self.terms, other.terms))
        return self.scale(other)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("polynomial powers must be nonnegative ints")
        result = ConfigPoly.one()
        for _ in range(n):
            result = result * self
        return result

    def scale(self, scalar) -> "ConfigPoly":
        scalar = as_scalar(scalar)
        if scalar_is_zero(scalar):
            return ConfigPoly.zero()
        return ConfigPoly({k: scalar * v for k, v in self.terms.items()})

    @staticmethod
    def _as_poly(value) -> "ConfigPoly":
        if isinstance(value, ConfigPoly):
            return value
        return ConfigPoly.constant(value)

    # -- calculus --------------------------------------------------------

    def diff_x(self) -> "ConfigPoly":
        return ConfigPoly(
            {(a - 1, b): a * c for (a, b), c in self.terms.items() if a > 0}
        )

    def diff_y(self) -> "ConfigPoly":
        return ConfigPoly(
            {(a, b - 1): b * c for (a, b), c in self.terms.items() if b > 0}
        )

    def diff(self, nx: int, ny: int) -> "ConfigPoly":
        out = self
        for _ in range(nx):
            out = out.diff_x()
        for _ in range(ny):
            out = out.diff_y()
        return out

    # -- conversions -------------------------------------------------------

    def to_float(self) -> "ConfigPoly":
        """Copy with mpc coefficients at the current working precision."""
        return ConfigPoly({k: scalar_to_mpc(v) for k, v in self.terms.items()})

    def constant_part(self):
        return self.coefficient(0, 0)

    # -- comparison / printing ----------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, ConfigPoly):
            other = self._as_poly(other)
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def sorted_terms(self):
        """Terms in canonical order: total degree descending, then x-degree."""
        return sorted(self.terms.items(), key=lambda kv: (-sum(kv[0]), -kv[0][0]))

    def __str__(self):
        return _format_terms(self.sorted_terms(), _config_monomial)

    def __repr__(self):
        return f"ConfigPoly({self})"


def _config_monomial(key) -> str:
    a, b = key
    parts = []
    if a == 1:
        parts.append("x")
    elif a > 1:
        parts.append(f"x^{a}")
    if b == 1:
        parts.append("y")
    elif b > 1:
        parts.append(f"y^{b}")
    return "*".join(parts)


class PhasePoly:
    """Sparse polynomial in (x, y, px, py); all generators commute here.

    The momentum symbols only become noncommuting once a polynomial is
    realized as an operator; at this level the ring is plain commutative
    multiplication.
    """

    __slots__ = ("terms",)

    VARS = ("x", "y", "px", "py")

    def __init__(self, terms=None):
        data = {}
        if terms:
            for key, coeff in terms.items():
                coeff = as_scalar(coeff)
                if not scalar_is_zero(coeff):
                    data[tuple(int(e) for e in key)] = coeff
        object.__setattr__(self, "terms", data)

    def __setattr__(self, name, value):
        raise AttributeError("PhasePoly is immutable")

    @classmethod
    def zero(cls) -> "PhasePoly":
        return cls()

    @classmethod
    def one(cls) -> "PhasePoly":
        return cls({(0, 0, 0, 0): 1})

    @classmethod
    def constant(cls, c) -> "PhasePoly":
        return cls({(0, 0, 0, 0): c})

    @classmethod
    def generator(cls, name: str) -> "PhasePoly":
        key = [0, 0, 0, 0]
        key[cls.VARS.index(name)] = 1
        return cls({tuple(key): 1})

    @classmethod
    def from_config(cls, poly: ConfigPoly) -> "PhasePoly":
        return cls({(a, b, 0, 0): c for (a, b), c in poly.terms.items()})

    def is_zero(self) -> bool:
        return not self.terms

    def degree(self) -> int:
        return max((sum(k) for k in self.terms), default=-1)

    def momentum_free(self) -> bool:
        return all(k[2] == 0 and k[3] == 0 for k in self.terms)

    def to_config(self) -> ConfigPoly:
        if not self.momentum_free():
            raise ValueError("polynomial contains px or py")
        return ConfigPoly({(a, b): c for (a, b, _, _), c in self.terms.items()})

    def __add__(self, other):
        other = self._as_poly(other)
        return PhasePoly(_add_terms(self.terms, other.terms))

    __radd__ = __add__

    def __neg__(self):
        return PhasePoly({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._as_poly(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, PhasePoly):
            return PhasePoly(_mul_terms(self.terms, other.terms))
        return self.scale(other)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("polynomial powers must be nonnegative ints")
        result = PhasePoly.one()
        for _ in range(n):
            result = result * self
        return result

    def scale(self, scalar) -> "PhasePoly":
        scalar = as_scalar(scalar)
        if scalar_is_zero(scalar):
            return PhasePoly.zero()
        return PhasePoly({k: scalar * v for k, v in self.terms.items()})

    @staticmethod
    def _as_poly(value) -> "PhasePoly":
        if isinstance(value, PhasePoly):
            return value
        return PhasePoly.constant(value)

    def __eq__(self, other):
        if not isinstance(other, PhasePoly):
            other = self._as_poly(other)
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def sorted_terms(self):
        return sorted(
            self.terms.items(), key=lambda kv: (-sum(kv[0]),) + tuple(-e for e in kv[0])
        )

    def __str__(self):
        return _format_terms(self.sorted_terms(), _phase_monomial)

    def __repr__(self):
        return f"PhasePoly({self})"


def _phase_monomial(key) -> str:
    parts = []
    for name, exp in zip(PhasePoly.VARS, key):
        if exp == 1:
            parts.append(name)
        elif exp > 1:
            parts.append(f"{name}^{exp}")
    return "*".join(parts)


class DiffOperator:
    """Finite sum of terms coeff(x, y) * d^dx/dx^dx * d^dy/dy^dy.

    Terms with identical derivative orders are merged; zero coefficients
    are dropped.  Realizes the action psi -> F * psi of star multiplication
    by a fixed polynomial.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        merged: dict = {}
        for entry in terms or []:
            coeff, dx, dy = entry
            if not isinstance(coeff, ConfigPoly):
                coeff = ConfigPoly.constant(coeff)
            key = (int(dx), int(dy))
            merged[key] = merged.get(key, ConfigPoly.zero()) + coeff
        merged = {k: v for k, v in merged.items() if not v.is_zero()}
        object.__setattr__(self, "terms", merged)

    def __setattr__(self, name, value):
        raise AttributeError("DiffOperator is immutable")

    @classmethod
    def identity(cls) -> "DiffOperator":
        return cls([(ConfigPoly.one(), 0, 0)])

    def is_zero(self) -> bool:
        return not self.terms

    def apply(self, psi: ConfigPoly) -> ConfigPoly:
        out = ConfigPoly.zero()
        for (dx, dy), coeff in self.terms.items():
            out = out + coeff * psi.diff(dx, dy)
        return out

    def __eq__(self, other):
        if not isinstance(other, DiffOperator):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset((k, hash(v)) for k, v in self.terms.items()))

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: (sum(kv[0]), kv[0]))

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for (dx, dy), coeff in self.sorted_terms():
            ops = []
            if dx:
                ops.append("dx" if dx == 1 else f"dx^{dx}")
            if dy:
                ops.append("dy" if dy == 1 else f"dy^{dy}")
            op_str = "*".join(ops)
            if op_str:
                parts.append(f"({coeff})*{op_str}")
            else:
                parts.append(f"({coeff})")
        return " + ".join(parts)

    def __repr__(self):
        return f"DiffOperator({self})"
