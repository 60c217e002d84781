"""The r-parametrized star product on plane polynomials.

The product deforms pointwise multiplication by the bidifferential
exponential exp(-i(r-1)t <dx|dy> - i r t <dy|dx>) with t the
noncommutativity scale; on polynomials the expansion

    F * G = sum_{m,n} [(-i(r-1)t)^m (-i r t)^n / (m! n!)]
            (dx^m dy^n F) (dy^m dx^n G)

is a finite sum, so everything here is exact.  r = 1/2 is the Moyal
product, r = 1 the Landau-gauge product.  The two bidifferential
generators commute, which is what makes the factored double sum equal to
the exponential.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial

from .poly import ConfigPoly, DiffOperator
from .scalars import GaussianRational, scalar_to_mpc


@dataclass(frozen=True)
class StarContext:
    """Gauge parameter r, noncommutativity theta, hbar, and coupling e."""

    r: Fraction
    theta: Fraction
    hbar: Fraction = Fraction(1)
    e: Fraction = Fraction(1)

    def __post_init__(self):
        object.__setattr__(self, "r", Fraction(self.r))
        object.__setattr__(self, "theta", Fraction(self.theta))
        object.__setattr__(self, "hbar", Fraction(self.hbar))
        object.__setattr__(self, "e", Fraction(self.e))
        if self.hbar <= 0:
            raise ValueError("hbar must be positive")


def _bidiff_weight(m: int, n: int, r: Fraction, theta: Fraction) -> GaussianRational:
    """Exact coefficient (-i(r-1)theta)^m (-i r theta)^n / (m! n!)."""
    minus_i = GaussianRational(0, -1)
    left = (minus_i * GaussianRational((r - 1) * theta)) ** m
    right = (minus_i * GaussianRational(r * theta)) ** n
    return left * right / GaussianRational(factorial(m) * factorial(n))


def _x_derivatives(poly: ConfigPoly, limit: int):
    out = [poly]
    for _ in range(limit):
        poly = poly.diff_x()
        out.append(poly)
    return out


def _y_derivatives(poly: ConfigPoly, limit: int):
    out = [poly]
    for _ in range(limit):
        poly = poly.diff_y()
        out.append(poly)
    return out


def star_product(f: ConfigPoly, g: ConfigPoly, ctx: StarContext) -> ConfigPoly:
    """F * G under the r-parametrized product; exact on polynomials."""
    if f.is_zero() or g.is_zero():
        return ConfigPoly.zero()
    m_max = min(f.degree_x(), g.degree_y())
    n_max = min(f.degree_y(), g.degree_x())
    f_dx = _x_derivatives(f, m_max)
    g_dy = _y_derivatives(g, m_max)
    out = ConfigPoly.zero()
    for m in range(m_max + 1):
        f_dxdy = _y_derivatives(f_dx[m], n_max)
        g_dydx = _x_derivatives(g_dy[m], n_max)
        for n in range(n_max + 1):
            left = f_dxdy[n]
            right = g_dydx[n]
            if left.is_zero() or right.is_zero():
                continue
            weight = _bidiff_weight(m, n, ctx.r, ctx.theta)
            out = out + (left * right).scale(weight)
    return out


def star_commutator(f: ConfigPoly, g: ConfigPoly, ctx: StarContext) -> ConfigPoly:
    """F * G - G * F, exactly."""
    return star_product(f, g, ctx) - star_product(g, f, ctx)


def equivalence_map(
    f: ConfigPoly, r_from, r_to, theta
) -> ConfigPoly:
    """Apply T = exp(i (r_from - r_to) theta dx dy), the invertible map
    carrying the r_from product onto the r_to product.

    T(F *^{r_from} G) = T(F) *^{r_to} T(G); the inverse swaps the two
    gauge parameters.  Finite sum on polynomials.
    """
    delta = Fraction(r_from) - Fraction(r_to)
    coeff = GaussianRational(0, 1) * GaussianRational(delta * Fraction(theta))
    out = ConfigPoly.zero()
    term = f
    k = 0
    while not term.is_zero():
        out = out + term.scale(coeff ** k / GaussianRational(factorial(k)))
        term = term.diff_x().diff_y()
        k += 1
    return out


def star_action_operator(f: ConfigPoly, ctx: StarContext) -> DiffOperator:
    """The differential operator D with D(psi) = F * psi.

    Term (m, n) of the bidifferential sum contributes the coefficient
    polynomial dx^m dy^n F acting by multiplication, followed by the
    derivative dy^m dx^n on psi.
    """
    if f.is_zero():
        return DiffOperator()
    terms = []
    f_dx = _x_derivatives(f, f.degree_x())
    for m in range(f.degree_x() + 1):
        f_dxdy = _y_derivatives(f_dx[m], f_dx[m].degree_y() if not f_dx[m].is_zero() else 0)
        for n in range(len(f_dxdy)):
            left = f_dxdy[n]
            if left.is_zero():
                continue
            weight = _bidiff_weight(m, n, ctx.r, ctx.theta)
            terms.append((left.scale(weight), n, m))
    return DiffOperator(terms)


def star_power(f: ConfigPoly, k: int, ctx: StarContext) -> ConfigPoly:
    """k-fold star product of F with itself (k = 0 gives the constant 1)."""
    if k < 0:
        raise ValueError("star powers must be nonnegative")
    out = ConfigPoly.one()
    for _ in range(k):
        out = star_product(out, f, ctx)
    return out


def star_exp_truncated(f: ConfigPoly, ctx: StarContext, order: int) -> ConfigPoly:
    """Truncated star exponential sum_{k<=order} F^{*k} / k!.

    Star exponentials of non-nilpotent polynomials do not terminate, so
    the truncation order is explicit; callers tracking a smallness
    parameter must only trust the result to the order they keep.
    """
    if order < 0:
        raise ValueError("truncation order must be nonnegative")
    out = ConfigPoly.zero()
    power = ConfigPoly.one()
    for k in range(order + 1):
        out = out + power.scale(GaussianRational(Fraction(1, factorial(k))))
        if k < order:
            power = star_product(power, f, ctx)
    return out


def star_product_float(f: ConfigPoly, g: ConfigPoly, ctx: StarContext) -> ConfigPoly:
    """Star product evaluated with mpc coefficients at working precision."""
    return star_product(f.to_float(), g.to_float(), ctx)


def star_commutator_float(f: ConfigPoly, g: ConfigPoly, ctx: StarContext) -> ConfigPoly:
    return star_commutator(f.to_float(), g.to_float(), ctx)
