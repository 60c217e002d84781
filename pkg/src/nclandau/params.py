"""Physical parameters of the plane and every derived scalar formula.

Covers the effective magnetic field, the stretch factor relating the star
and operator pictures, reduced mass and charge, the commutative
field-strength variant used by the Seiberg-Witten maps, analytic Landau
levels, the gauge-field polynomials, and the naive-prescription
diagnostics.  Rational expressions are evaluated exactly; anything behind
a square root is evaluated with mpmath at the configured precision.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

import mpmath as mp

from .poly import ConfigPoly
from .scalars import exact_sqrt, to_mpf, workprec


class ParamError(ValueError):
    """Raised when a parameter point violates a domain requirement."""


@dataclass(frozen=True)
class PlaneParams:
    """The tuple (hbar, theta, e, B, m, r); all exact rationals.

    B may be negative.  The discriminant hbar^2 - 4r(r-1)*e*hbar*theta*B
    must stay positive so the square roots are real and the gauge-field
    denominators cannot vanish.
    """

    hbar: Fraction
    theta: Fraction
    e: Fraction
    B: Fraction
    m: Fraction
    r: Fraction

    def __post_init__(self):
        for name in ("hbar", "theta", "e", "B", "m", "r"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))

    def replace_r(self, r) -> "PlaneParams":
        return PlaneParams(self.hbar, self.theta, self.e, self.B, self.m, Fraction(r))


def discriminant(p: PlaneParams) -> Fraction:
    return p.hbar**2 - 4 * p.r * (p.r - 1) * p.e * p.hbar * p.theta * p.B


def validate(p: PlaneParams) -> PlaneParams:
    """Return p unchanged if it satisfies every domain requirement."""
    if p.hbar <= 0:
        raise ParamError(f"hbar must be positive, got {p.hbar}")
    if p.m <= 0:
        raise ParamError(f"mass must be positive, got {p.m}")
    disc = discriminant(p)
    if disc <= 0:
        raise ParamError(
            "discriminant hbar^2 - 4r(r-1)*e*hbar*theta*B must be positive, "
            f"got {disc}"
        )
    return p


def sqrt_discriminant(p: PlaneParams) -> mp.mpf:
    validate(p)
    with workprec():
        return mp.sqrt(to_mpf(discriminant(p)))


def sqrt_discriminant_exact(p: PlaneParams):
    """Exact rational square root of the discriminant, or None."""
    validate(p)
    return exact_sqrt(discriminant(p))


def effective_field(p: PlaneParams) -> mp.mpf:
    """The field strength seen by the reduced Landau problem."""
    validate(p)
    with workprec():
        return 2 * to_mpf(p.hbar) * to_mpf(p.B) / (to_mpf(p.hbar) + sqrt_discriminant(p))


def effective_field_exact(p: PlaneParams):
    """Exact value of the effective field when the discriminant is a
    perfect rational square (theta = 0, r in {0, 1}, ...); else None."""
    root = sqrt_discriminant_exact(p)
    if root is None:
        return None
    return 2 * p.hbar * p.B / (p.hbar + root)


def lambda_bar(p: PlaneParams) -> mp.mpf:
    """Stretch factor 1 + 2r(1-r)e*theta*B / (hbar + sqrt(disc))."""
    validate(p)
    with workprec():
        num = 2 * to_mpf(p.r) * to_mpf(1 - p.r) * to_mpf(p.e) * to_mpf(p.theta) * to_mpf(p.B)
        return 1 + num / (to_mpf(p.hbar) + sqrt_discriminant(p))


def lambda_bar_alt(p: PlaneParams) -> mp.mpf:
    """Equivalent form 1 - r(r-1)e*theta*Beff/hbar; must agree with
    lambda_bar to working precision."""
    validate(p)
    with workprec():
        coeff = to_mpf(p.r) * to_mpf(p.r - 1) * to_mpf(p.e) * to_mpf(p.theta)
        return 1 - coeff * effective_field(p) / to_mpf(p.hbar)


def reduced_params(p: PlaneParams):
    """(m_star, e_star) = (m / lb^2, e / lb)."""
    validate(p)
    with workprec():
        lb = lambda_bar(p)
        return to_mpf(p.m) / (lb * lb), to_mpf(p.e) / lb


def sw_field_strength(p: PlaneParams) -> Fraction:
    """Commutative Seiberg-Witten field strength; exact rational."""
    validate(p)
    den = p.hbar - 4 * p.r * (p.r - 1) * p.e * p.theta * p.B
    if den == 0:
        raise ParamError("hbar - 4r(r-1)*e*theta*B vanishes; field strength undefined")
    return p.hbar * p.B / den


def bbar_from_frak(frak, p: PlaneParams) -> mp.mpf:
    """Invert the field-strength relation: effective field from the
    commutative Seiberg-Witten field strength.

    The closed form has removable singularities at r in {0, 1} and at
    e*theta = 0; those limits return frak itself.
    """
    validate(p)
    frak = Fraction(frak)
    q = p.r * (1 - p.r) * p.e * p.theta
    with workprec():
        if q == 0:
            return to_mpf(frak)
        radicand = 1 + to_mpf(4 * p.r * (p.r - 1) * p.e * p.theta * frak / p.hbar)
        if radicand <= 0:
            raise ParamError(f"square-root argument {radicand} not positive")
        bracket = 1 / mp.sqrt(radicand) - 1
        return to_mpf(p.hbar) / to_mpf(2 * q) * bracket


def landau_levels(p: PlaneParams, n_max: int):
    """Energies hbar*(|eB|/m)*(n + 1/2) for n = 0..n_max.

    Also evaluates the pre-simplification form hbar*|e_star*Beff|/m_star
    and insists the two agree to working precision.
    """
    validate(p)
    with workprec():
        omega = to_mpf(abs(p.e * p.B)) / to_mpf(p.m)
        m_star, e_star = reduced_params(p)
        omega_star = abs(e_star * effective_field(p)) / m_star
        if _rel_residual(omega, omega_star) > mp.mpf("1e-20"):
            raise ArithmeticError(
                "level-spacing forms disagree beyond tolerance: "
                f"{omega} vs {omega_star}"
            )
        hbar = to_mpf(p.hbar)
        return [hbar * omega * (n + mp.mpf(1) / 2) for n in range(n_max + 1)]


def gauge_field_nc(p: PlaneParams):
    """The noncommutative gauge-field pair ((r-1)*Beff*y, r*Beff*x).

    Coefficients are exact when the discriminant is a perfect square
    (Landau gauge, theta = 0, ...), high-precision floats otherwise.
    """
    validate(p)
    beff = effective_field_exact(p)
    if beff is None:
        with workprec():
            beff = effective_field(p)
    ax = ConfigPoly({(0, 1): (p.r - 1) * beff})
    ay = ConfigPoly({(1, 0): p.r * beff})
    return ax, ay


def naive_prescription(p: PlaneParams):
    """Fields ((r-1)*B*y, r*B*x) of the naive substitution, plus the
    scalar multiplying i*e*hbar*B in the kinematical-momentum commutator.

    The scale differs from 1 whenever r(r-1)*e*theta*B is nonzero, which
    is exactly the gauge dependence the consistent prescription removes.
    """
    validate(p)
    ax = ConfigPoly({(0, 1): (p.r - 1) * p.B})
    ay = ConfigPoly({(1, 0): p.r * p.B})
    scale = 1 - p.e * p.r * (p.r - 1) * p.theta * p.B / p.hbar
    return (ax, ay), scale


def _rel_residual(a, b) -> mp.mpf:
    a, b = mp.mpf(a) if not isinstance(a, mp.mpf) else a, b
    diff = abs(a - b)
    return diff / max(mp.mpf(1), abs(a), abs(b))


def identity_suite(p: PlaneParams) -> dict:
    """Evaluate every scalar identity at working precision.

    Returns a report with the derived values, one residual per identity,
    and the maximum residual.  The symmetric-gauge closed forms are
    checked at r = 1/2 with the same remaining parameters.
    """
    validate(p)
    with workprec():
        lb = lambda_bar(p)
        lb_alt = lambda_bar_alt(p)
        beff = effective_field(p)
        frak = sw_field_strength(p)
        m_star, e_star = reduced_params(p)
        B = to_mpf(p.B)
        hbar = to_mpf(p.hbar)

        residuals = {}
        residuals["lambda_bar_times_beff_equals_B"] = _rel_residual(lb * beff, B)
        residuals["B_from_beff_quadratic"] = _rel_residual(
            (1 - to_mpf(p.r * (p.r - 1) * p.e * p.theta) * beff / hbar) * beff, B
        )
        residuals["lambda_bar_two_forms"] = _rel_residual(lb, lb_alt)
        residuals["charge_mass_ratio_invariant"] = _rel_residual(
            e_star * e_star * B * B / m_star, to_mpf(p.e * p.e * p.B * p.B / p.m)
        )
        residuals["frak_roundtrip_to_beff"] = _rel_residual(
            bbar_from_frak(frak, p), beff
        )

        # The symmetric-gauge closed forms need the r = 1/2 point itself to
        # lie in the domain (its own square root must be real).
        sym = p.replace_r(Fraction(1, 2))
        symmetric_checked = discriminant(sym) > 0
        if symmetric_checked:
            lb_sym = lambda_bar(sym)
            beff_sym = effective_field(sym)
            residuals["symmetric_lambda_closed_form"] = _rel_residual(
                lb_sym, 1 + to_mpf(sym.e * sym.theta) * beff_sym / (4 * hbar)
            )
            if sym.e * sym.theta != 0:
                sym_closed = (
                    2
                    / to_mpf(sym.e * sym.theta)
                    * (mp.sqrt(hbar**2 + to_mpf(sym.e * sym.hbar * sym.theta * sym.B)) - hbar)
                )
            else:
                sym_closed = B
            residuals["symmetric_beff_closed_form"] = _rel_residual(beff_sym, sym_closed)

        return {
            "params": {
                "hbar": p.hbar,
                "theta": p.theta,
                "e": p.e,
                "B": p.B,
                "m": p.m,
                "r": p.r,
            },
            "values": {
                "lambda_bar": lb,
                "beff": beff,
                "frak_b": frak,
                "m_star": m_star,
                "e_star": e_star,
                "naive_commutator_scale": naive_prescription(p)[1],
            },
            "symmetric_forms_checked": symmetric_checked,
            "residuals": residuals,
            "max_residual": max(residuals.values()),
        }


def random_valid_params(rng: random.Random, max_tries: int = 1000) -> PlaneParams:
    """Draw a random parameter point satisfying every domain requirement."""
    for _ in range(max_tries):
        p = PlaneParams(
            hbar=Fraction(rng.randint(1, 6), rng.randint(1, 4)),
            theta=Fraction(rng.randint(-6, 6), rng.randint(1, 4)),
            e=Fraction(rng.randint(-5, 5), rng.randint(1, 3)),
            B=Fraction(rng.randint(-6, 6), rng.randint(1, 3)),
            m=Fraction(rng.randint(1, 5), rng.randint(1, 3)),
            r=Fraction(rng.randint(-8, 8), rng.randint(1, 5)),
        )
        if p.hbar > 0 and p.m > 0 and discriminant(p) > 0:
            return p
    raise RuntimeError("could not sample a valid parameter point")


def identity_grid_report(n_points: int, seed: int) -> dict:
    """Max identity residual over a random grid of valid parameter points."""
    rng = random.Random(seed)
    worst = mp.mpf(0)
    worst_point = None
    for _ in range(n_points):
        p = random_valid_params(rng)
        result = identity_suite(p)
        if result["max_residual"] > worst:
            worst = result["max_residual"]
            worst_point = result["params"]
    return {"points": n_points, "seed": seed, "max_residual": worst, "worst_point": worst_point}
