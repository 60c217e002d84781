"""Seiberg-Witten structure of the noncommutative gauge theory.

Order-by-order expansions of the noncommutative gauge field and field
strength in the noncommutativity parameter, their re-expression through
the commutative gauge data, the star field-strength consistency check,
the exact linear solve for the infinitesimal gauge function, and the
finite transformation check.  Everything is exact; the formal expansion
variable is theta.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .poly import ConfigPoly
from .scalars import DualScalar, GaussianRational
from .series import ThetaSeries
from .star import StarContext, star_commutator
from .params import PlaneParams, sw_field_strength, validate


@dataclass(frozen=True)
class SWContext:
    """Exact parameters for the formal theta expansions.

    The antisymmetric noncommutativity tensor has entries
    theta^{xy} = +theta and theta^{yx} = -theta; only those signs enter,
    so it is represented by sign factors applied to the formal variable.
    """

    r: Fraction
    e: Fraction
    B: Fraction
    hbar: Fraction
    order: int = 2

    THETA_XY_SIGN = 1
    THETA_YX_SIGN = -1

    def __post_init__(self):
        for name in ("r", "e", "B", "hbar"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))
        if self.hbar <= 0:
            raise ValueError("hbar must be positive")
        if self.order < 2:
            raise ValueError("series order must be at least 2")

    def with_r(self, r) -> "SWContext":
        return SWContext(Fraction(r), self.e, self.B, self.hbar, self.order)


@dataclass(frozen=True)
class GaugeFunctionResult:
    """Solution of the infinitesimal gauge-transformation equation.

    lambda_nc is the gauge function per unit variation of the gauge
    parameter; the residual series restate both defining equations with
    the solution inserted and must vanish identically.  Only the
    x-equation was used in the solve, so residual_y is an independent
    cross-check.  Free (undetermined) coefficients are normalized to
    zero: the constant and the pure-x / pure-y monomials at each order.
    """

    lambda_nc: ThetaSeries
    residual_x: ThetaSeries
    residual_y: ThetaSeries
    ansatz_degrees: tuple


def _scalar_beff_series(r_like, ctx: SWContext) -> ThetaSeries:
    """Effective-field expansion with scalars of the caller's type.

    Evaluating with r_like = Fraction gives the exact series; evaluating
    with a DualScalar seed also carries d/dr of every coefficient.
    Construction mirrors the closed form: with
    u = -4r(r-1)e*B*theta/hbar, sqrt(disc) = hbar*sqrt(1+u) and

        Beff = 2B / (1 + sqrt(1+u)) = B * (1 + (sqrt(1+u)-1)/2)^(-1).
    """
    k = ctx.order
    u1 = -4 * (r_like * (r_like - 1)) * Fraction(ctx.e * ctx.B, 1) / ctx.hbar
    u = ThetaSeries(k, [ConfigPoly.zero(), ConfigPoly.constant(u1)])
    root = u.binomial_power(Fraction(1, 2))
    half = (root - ThetaSeries.one(k)).scale(GaussianRational(Fraction(1, 2)))
    recip = half.binomial_power(Fraction(-1))
    return recip.scale(ctx.B)


def effective_field_series(ctx: SWContext) -> ThetaSeries:
    """Exact theta-expansion of the effective magnetic field."""
    return _scalar_beff_series(ctx.r, ctx)


def sw_field_strength_series(ctx: SWContext) -> ThetaSeries:
    """Exact theta-expansion of the commutative SW field strength:
    B * (1 - 4r(r-1)e*B*theta/hbar)^(-1)."""
    k = ctx.order
    u1 = -4 * ctx.r * (ctx.r - 1) * ctx.e * ctx.B / ctx.hbar
    u = ThetaSeries(k, [ConfigPoly.zero(), ConfigPoly.constant(u1)])
    return u.binomial_power(Fraction(-1)).scale(ctx.B)


def expand_gauge_field_nc(ctx: SWContext):
    """Theta-series pair for the noncommutative gauge field
    ((r-1)*Beff*y, r*Beff*x)."""
    beff = effective_field_series(ctx)
    ax = beff.scale(ctx.r - 1).scale(ConfigPoly.y())
    ay = beff.scale(ctx.r).scale(ConfigPoly.x())
    return ax, ay


def delta_gauge_field(ctx: SWContext):
    """Gauge-parameter variation of the field, per unit variation.

    Obtained by differentiating the closed form with respect to r via
    exact dual-number evaluation, order by order in theta.
    """
    seed = DualScalar(ctx.r, 1)
    beff_dual = _scalar_beff_series(seed, ctx)
    ax_dual = beff_dual.scale(seed - 1)
    ay_dual = beff_dual.scale(seed)

    def derivative_part(series: ThetaSeries, monomial: ConfigPoly) -> ThetaSeries:
        coeffs = []
        for k in range(series.order + 1):
            c = series.extract(k).constant_part()
            der = c.der if isinstance(c, DualScalar) else GaussianRational(0)
            coeffs.append(monomial.scale(der))
        return ThetaSeries(series.order, coeffs)

    return (
        derivative_part(ax_dual, ConfigPoly.y()),
        derivative_part(ay_dual, ConfigPoly.x()),
    )


def commutative_sw_fields(ctx: SWContext):
    """Commutative SW gauge fields ((r-1)*frak*y, r*frak*x) and the field
    strength entry F_xy = frak (with F_yx = -F_xy), all as theta-series."""
    frak = sw_field_strength_series(ctx)
    ax = frak.scale(ctx.r - 1).scale(ConfigPoly.y())
    ay = frak.scale(ctx.r).scale(ConfigPoly.x())
    return ax, ay, frak


def sw_map_gauge_field(ctx: SWContext) -> dict:
    """Re-express the first-order gauge-field expansion through the
    commutative SW data and verify the bracketed coefficient forms.

    All equalities are checked as exact series identities through first
    order in theta:

        Ax_nc = Ax - (e/h) th^{xy} Ax [(3r-1) dy(Ax) + (1-r) F_yx]
        Ay_nc = Ay - (e/h) th^{yx} Ay [(2-3r) dx(Ay) + r F_xy]

    plus the intermediate two-term forms they condense.
    """
    k = ctx.order
    r, e, hbar = ctx.r, ctx.e, ctx.hbar
    ax_direct, ay_direct = expand_gauge_field_nc(ctx)
    ax_c, ay_c, frak = commutative_sw_fields(ctx)
    f_xy = frak
    f_yx = -frak

    e_over_h = GaussianRational(Fraction(e, 1) / hbar)

    bracket_x = ax_c.diff_y().scale(3 * r - 1) + f_yx.scale(1 - r)
    correction_x = (ax_c * bracket_x).scale(e_over_h).shift_theta().scale(
        SWContext.THETA_XY_SIGN
    )
    ax_sw = ax_c - correction_x

    bracket_y = ay_c.diff_x().scale(2 - 3 * r) + f_xy.scale(r)
    correction_y = (ay_c * bracket_y).scale(e_over_h).shift_theta().scale(
        SWContext.THETA_YX_SIGN
    )
    ay_sw = ay_c - correction_y

    # Intermediate two-term forms.
    ax_mid = (
        ax_c
        - (ax_c * ax_c.diff_y()).scale(2 * e * r).scale(
            GaussianRational(Fraction(1, 1) / hbar)
        ).shift_theta().scale(SWContext.THETA_XY_SIGN)
        - (ax_c * ay_c.diff_x()).scale(e * (r - 1)).scale(
            GaussianRational(Fraction(1, 1) / hbar)
        ).shift_theta().scale(SWContext.THETA_XY_SIGN)
    )
    ay_mid = (
        ay_c
        + (ay_c * ay_c.diff_x()).scale(2 * e * (r - 1)).scale(
            GaussianRational(Fraction(1, 1) / hbar)
        ).shift_theta().scale(SWContext.THETA_YX_SIGN)
        + (ay_c * ax_c.diff_y()).scale(e * r).scale(
            GaussianRational(Fraction(1, 1) / hbar)
        ).shift_theta().scale(SWContext.THETA_YX_SIGN)
    )

    def agree_to_first_order(a: ThetaSeries, b: ThetaSeries) -> bool:
        return a.extract(0) == b.extract(0) and a.extract(1) == b.extract(1)

    report = {
        "order": k,
        "r": r,
        "ax_direct": ax_direct,
        "ay_direct": ay_direct,
        "ax_sw_form": ax_sw,
        "ay_sw_form": ay_sw,
        "ax_match": agree_to_first_order(ax_direct, ax_sw),
        "ay_match": agree_to_first_order(ay_direct, ay_sw),
        "ax_intermediate_match": agree_to_first_order(ax_direct, ax_mid),
        "ay_intermediate_match": agree_to_first_order(ay_direct, ay_mid),
    }
    report["all_match"] = all(
        report[key]
        for key in ("ax_match", "ay_match", "ax_intermediate_match", "ay_intermediate_match")
    )
    return report


def field_strength_nc_series(ctx: SWContext) -> ThetaSeries:
    """Theta-expansion of the noncommutative field strength written
    through the commutative one: frak * (1 + 4r(r-1)e*theta*frak/hbar)^(-1).

    Every coefficient past order zero collapses so the series equals the
    constant B: the noncommutative field strength of these gauge fields
    is exactly the physical field."""
    k = ctx.order
    frak = sw_field_strength_series(ctx)
    t_series = frak.scale(4 * ctx.r * (ctx.r - 1) * ctx.e / ctx.hbar).shift_theta()
    return frak * t_series.binomial_power(Fraction(-1))


def field_strength_nc_closed(p: PlaneParams) -> Fraction:
    """Exact closed-form value frak/(1+t) at a numeric parameter point;
    rejects a vanishing denominator."""
    validate(p)
    frak = sw_field_strength(p)
    t = 4 * p.r * (p.r - 1) * p.e * p.theta * frak / p.hbar
    if 1 + t == 0:
        raise ValueError("1 + t vanishes; closed form undefined")
    return frak / (1 + t)


def field_strength_star(ax: ConfigPoly, ay: ConfigPoly, ctx: StarContext) -> ConfigPoly:
    """dx(Ay) - dy(Ax) - (i e/hbar) [Ax *, Ay] evaluated with the star
    primitives; for the consistent gauge fields this is the constant B."""
    curl = ay.diff_x() - ax.diff_y()
    bracket = star_commutator(ax, ay, ctx)
    ie_over_h = GaussianRational(0, Fraction(ctx.e, 1) / ctx.hbar)
    return curl - bracket.scale(ie_over_h)


class GaugeSolveError(RuntimeError):
    """Linear solve for the gauge function failed at some theta order."""

    def __init__(self, order: int, message: str):
        super().__init__(f"theta order {order}: {message}")
        self.order = order


def _solve_exact_linear(rows, rhs, n_unknowns):
    """Gaussian elimination over GaussianRational.

    rows: list of dicts {column: coefficient}; rhs: list of scalars.
    Returns the solution with free variables set to zero, or raises
    ValueError on inconsistency.
    """
    dense = [
        [row.get(j, GaussianRational(0)) for j in range(n_unknowns)] + [b]
        for row, b in zip(rows, rhs)
    ]
    pivot_cols = []
    rank = 0
    for col in range(n_unknowns):
        pivot = None
        for i in range(rank, len(dense)):
            if not dense[i][col].is_zero():
                pivot = i
                break
        if pivot is None:
            continue
        dense[rank], dense[pivot] = dense[pivot], dense[rank]
        inv = GaussianRational(1) / dense[rank][col]
        dense[rank] = [v * inv for v in dense[rank]]
        for i in range(len(dense)):
            if i != rank and not dense[i][col].is_zero():
                factor = dense[i][col]
                dense[i] = [a - factor * b for a, b in zip(dense[i], dense[rank])]
        pivot_cols.append(col)
        rank += 1
    for i in range(rank, len(dense)):
        if not dense[i][n_unknowns].is_zero():
            raise ValueError("inconsistent linear system")
    solution = [GaussianRational(0)] * n_unknowns
    for i, col in enumerate(pivot_cols):
        solution[col] = dense[i][n_unknowns]
    return solution


def _monomials_up_to(degree: int):
    out = []
    for total in range(degree + 1):
        for a in range(total, -1, -1):
            out.append((a, total - a))
    return out


def solve_gauge_function(ctx: SWContext) -> GaugeFunctionResult:
    """Solve the defining equation of the infinitesimal gauge function
    order by order in theta, using only the x-component:

        delta(Ax) = dx(lambda) + (i e/hbar) [lambda *, Ax].

    Per theta order the unknown enters only through dx(lambda): the
    star-commutator term is at least first order in theta, so it only
    involves lower orders.  Each order is an exact linear system on a
    polynomial ansatz of bounded degree (order + 2, raised automatically
    if infeasible).  The y-component equation is never used; its residual
    is the cross-check.
    """
    k = ctx.order
    ax, ay = expand_gauge_field_nc(ctx)
    dax, day = delta_gauge_field(ctx)
    ie_over_h = GaussianRational(0, Fraction(ctx.e, 1) / ctx.hbar)
    star_r = ctx.r

    lam_coeffs = [ConfigPoly.zero()] * (k + 1)
    ansatz_degrees = []
    for order in range(k + 1):
        partial = ThetaSeries(k, lam_coeffs)
        commutator = partial.star_commutator(ax, star_r).scale(ie_over_h)
        target = dax.extract(order) - commutator.extract(order)
        solved = None
        last_error = "no ansatz attempted"
        for degree in (order + 2, order + 3, order + 4):
            monos = _monomials_up_to(degree)
            index = {mono: i for i, mono in enumerate(monos)}
            # Equations: for every monomial of dx(lambda)'s range, match
            # the target coefficient.
            eq_keys = set(target.terms)
            eq_keys.update((a - 1, b) for (a, b) in monos if a > 0)
            rows, rhs = [], []
            for (alpha, beta) in sorted(eq_keys):
                row = {}
                source = (alpha + 1, beta)
                if source in index:
                    row[index[source]] = GaussianRational(alpha + 1)
                rows.append(row)
                coeff = target.terms.get((alpha, beta), GaussianRational(0))
                rhs.append(coeff if isinstance(coeff, GaussianRational) else GaussianRational(coeff))
            try:
                solution = _solve_exact_linear(rows, rhs, len(monos))
            except ValueError as exc:
                last_error = str(exc)
                continue
            solved = ConfigPoly(
                {mono: solution[i] for mono, i in index.items()}
            )
            ansatz_degrees.append(degree)
            break
        if solved is None:
            raise GaugeSolveError(order, last_error)
        lam_coeffs[order] = solved

    lam = ThetaSeries(k, lam_coeffs)
    residual_x = dax - lam.diff_x() - lam.star_commutator(ax, star_r).scale(ie_over_h)
    residual_y = day - lam.diff_y() - lam.star_commutator(ay, star_r).scale(ie_over_h)
    return GaugeFunctionResult(
        lambda_nc=lam,
        residual_x=residual_x,
        residual_y=residual_y,
        ansatz_degrees=tuple(ansatz_degrees),
    )


def verify_finite_gauge_transform(ctx: SWContext) -> dict:
    """Apply the finite U(1)-star transformation generated by the gauge
    function and compare with the infinitesimal variation.

    U = star-exp((i e/hbar) eps lambda) is kept to first order in eps, so
    U = 1 + (i e/hbar) eps lambda; products are tracked as (eps^0, eps^1)
    jets of theta-series.  The gauge parameter of the star product itself
    shifts by eps too, but that correction enters the products of
    eps-order-one factors only at eps^2, so the r-product is used
    throughout.  Checks, through (eps^1, theta^K):

      * U * U^{-1} = 1
      * U * A_j * U^{-1} + (i hbar/e) U * d_j(U^{-1})  =  A_j + eps * delta(A_j)
    """
    solve = solve_gauge_function(ctx)
    lam = solve.lambda_nc
    ax, ay = expand_gauge_field_nc(ctx)
    dax, day = delta_gauge_field(ctx)
    r = ctx.r
    k = ctx.order
    one = ThetaSeries.one(k)
    zero = ThetaSeries(k)
    ie_over_h = GaussianRational(0, Fraction(ctx.e, 1) / ctx.hbar)
    ih_over_e = GaussianRational(0, Fraction(ctx.hbar, 1) / ctx.e)

    u = (one, lam.scale(ie_over_h))
    u_inv = (one, -lam.scale(ie_over_h))

    def jet_star(a, b):
        return (
            a[0].star_mul(b[0], r),
            a[0].star_mul(b[1], r) + a[1].star_mul(b[0], r),
        )

    def jet_diff(a, axis):
        if axis == "x":
            return (a[0].diff_x(), a[1].diff_x())
        return (a[0].diff_y(), a[1].diff_y())

    unit_check = jet_star(u, u_inv)
    unit_ok = unit_check[0] == one and unit_check[1] == zero

    results = {"unitary_ok": unit_ok}
    for name, field, delta, axis in (
        ("x", ax, dax, "x"),
        ("y", ay, day, "y"),
    ):
        conjugated = jet_star(jet_star(u, (field, zero)), u_inv)
        inhomogeneous = jet_star(u, jet_diff(u_inv, axis))
        transformed = (
            conjugated[0] + inhomogeneous[0].scale(ih_over_e),
            conjugated[1] + inhomogeneous[1].scale(ih_over_e),
        )
        residual_zero = transformed[0] - field
        residual_linear = transformed[1] - delta
        results[f"residual_eps0_{name}"] = residual_zero
        results[f"residual_eps1_{name}"] = residual_linear
        results[f"eps0_ok_{name}"] = residual_zero.is_zero()
        results[f"eps1_ok_{name}"] = residual_linear.is_zero()
    results["all_ok"] = unit_ok and all(
        results[key] for key in results if key.startswith(("eps0_ok", "eps1_ok"))
    )
    return results
