"""Finite-dimensional spectral verification in a two-mode oscillator basis.

Truncated matrices for the plane operators, the minimal-coupling family,
two independent constructions of the deformed Landau Hamiltonian, and the
spectral and ladder diagnostics that exhibit gauge invariance of the
spectrum (and the gauge dependence the naive prescription introduces).

Truncation artifacts live on the high-index edge of the basis, so
commutation and ladder identities are asserted on the interior block:
rows and columns whose mode indices are both below N-2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .params import (
    PlaneParams,
    effective_field,
    lambda_bar,
    naive_prescription,
    reduced_params,
    validate,
)
from .poly import ConfigPoly, DiffOperator
from .star import StarContext, star_action_operator

HERMITICITY_TOL = 1e-12


@dataclass(frozen=True)
class OscBasis:
    """Two independent oscillator modes of n_per_mode states each.

    Basis state (i, j) maps to flat index i * n_per_mode + j with i the
    x-mode index; golden outputs depend on this ordering.  length_scale
    is the oscillator length of both modes.
    """

    n_per_mode: int
    length_scale: float
    hbar: float = 1.0

    def __post_init__(self):
        if self.n_per_mode < 4:
            raise ValueError("need at least 4 states per mode")
        if not self.length_scale > 0:
            raise ValueError("length scale must be positive")
        if not self.hbar > 0:
            raise ValueError("hbar must be positive")

    @property
    def dim(self) -> int:
        return self.n_per_mode * self.n_per_mode

    def interior_flat_indices(self) -> np.ndarray:
        """Flat indices whose mode indices are both below N-2."""
        n = self.n_per_mode
        keep = [i * n + j for i in range(n - 2) for j in range(n - 2)]
        return np.array(keep, dtype=int)


def cyclotron_length_scale(p: PlaneParams) -> float:
    """Oscillator length sqrt(hbar / |e B|) matching the cyclotron scale;
    fastest truncation convergence for the quadratic Hamiltonians here."""
    validate(p)
    if p.e * p.B == 0:
        raise ValueError("cyclotron-matched scale needs e*B != 0")
    return math.sqrt(float(p.hbar / abs(p.e * p.B)))


def basis_for(p: PlaneParams, n_per_mode: int, length_scale=None) -> OscBasis:
    scale = float(length_scale) if length_scale else cyclotron_length_scale(p)
    return OscBasis(n_per_mode, scale, float(p.hbar))


@dataclass(frozen=True)
class OperatorMatrix:
    """Dense complex matrix with an explicit Hermitian tag.

    The tag is set by construction only when the max-norm Hermiticity
    residual is below 1e-12.
    """

    data: np.ndarray
    hermitian: bool

    @property
    def dim(self) -> int:
        return self.data.shape[0]


def make_operator(data: np.ndarray, expect_hermitian: bool = True) -> OperatorMatrix:
    data = np.asarray(data, dtype=complex)
    residual = float(np.max(np.abs(data - data.conj().T))) if data.size else 0.0
    hermitian = residual <= HERMITICITY_TOL
    if expect_hermitian and not hermitian:
        raise ValueError(f"matrix fails the Hermiticity contract: residual {residual:.3e}")
    return OperatorMatrix(data, hermitian)


def _annihilation(n: int) -> np.ndarray:
    a = np.zeros((n, n), dtype=complex)
    for k in range(1, n):
        a[k - 1, k] = math.sqrt(k)
    return a


def _single_mode_xp(basis: OscBasis):
    a = _annihilation(basis.n_per_mode)
    ad = a.conj().T
    x1 = basis.length_scale / math.sqrt(2) * (a + ad)
    p1 = 1j * basis.hbar / (basis.length_scale * math.sqrt(2)) * (ad - a)
    return x1, p1


def basis_matrices(basis: OscBasis) -> dict:
    """Position and momentum matrices for both modes (all Hermitian)."""
    x1, p1 = _single_mode_xp(basis)
    eye = np.eye(basis.n_per_mode, dtype=complex)
    return {
        "x": make_operator(np.kron(x1, eye)),
        "y": make_operator(np.kron(eye, x1)),
        "px": make_operator(np.kron(p1, eye)),
        "py": make_operator(np.kron(eye, p1)),
    }


def commutator(a: OperatorMatrix, b: OperatorMatrix) -> np.ndarray:
    return a.data @ b.data - b.data @ a.data


def interior_block(m: np.ndarray, basis: OscBasis) -> np.ndarray:
    idx = basis.interior_flat_indices()
    return m[np.ix_(idx, idx)]


def minimal_coupling_matrices(p: PlaneParams, basis: OscBasis) -> dict:
    """Matrices of the minimally coupled operator family.

    X = x + (r-1)(theta/hbar) py,  Y = y + r(theta/hbar) px,
    Pix = e(1-r)*Beff*y + lb*px,   Piy = -e*r*Beff*x + lb*py,
    with Beff and lb the effective field and the stretch factor.
    """
    validate(p)
    ops = basis_matrices(basis)
    beff = float(effective_field(p))
    lb = float(lambda_bar(p))
    tx = float(p.theta / p.hbar)
    X = ops["x"].data + float(p.r - 1) * tx * ops["py"].data
    Y = ops["y"].data + float(p.r) * tx * ops["px"].data
    pix = float(p.e * (1 - p.r)) * beff * ops["y"].data + lb * ops["px"].data
    piy = -float(p.e * p.r) * beff * ops["x"].data + lb * ops["py"].data
    return {
        "X": make_operator(X),
        "Y": make_operator(Y),
        "Pix": make_operator(pix),
        "Piy": make_operator(piy),
    }


def _complex(value) -> complex:
    return complex(value)


def operator_from_diff(diff: DiffOperator, basis: OscBasis) -> OperatorMatrix:
    """Realize a differential operator on the truncated basis.

    Multiplication polynomials act through the x and y matrices (they
    commute, so ordering inside a coefficient is immaterial) and each
    d/dx becomes (i/hbar) px.  Coefficient factors are applied to the
    left of the derivative factors.
    """
    x1, p1 = _single_mode_xp(basis)
    eye = np.eye(basis.n_per_mode, dtype=complex)
    dx1 = 1j / basis.hbar * p1

    def mode_power(m: np.ndarray, k: int) -> np.ndarray:
        out = eye
        for _ in range(k):
            out = out @ m
        return out

    total = np.zeros((basis.dim, basis.dim), dtype=complex)
    for (dx, dy), coeff in diff.terms.items():
        dmat_x = mode_power(dx1, dx)
        dmat_y = mode_power(dx1, dy)
        for (a, b), c in coeff.terms.items():
            left_x = mode_power(x1, a) @ dmat_x
            left_y = mode_power(x1, b) @ dmat_y
            total += _complex(c) * np.kron(left_x, left_y)
    return OperatorMatrix(
        total,
        float(np.max(np.abs(total - total.conj().T))) <= HERMITICITY_TOL
        if total.size
        else True,
    )


def star_context_for(p: PlaneParams) -> StarContext:
    return StarContext(p.r, p.theta, p.hbar, p.e)


def kinematical_momenta(p: PlaneParams, basis: OscBasis):
    """Kinematical momenta p - e*Op(A) via the star-action dictionary."""
    from .params import gauge_field_nc

    ax, ay = gauge_field_nc(p)
    ctx = star_context_for(p)
    ops = basis_matrices(basis)
    op_ax = operator_from_diff(star_action_operator(ax.to_float(), ctx), basis)
    op_ay = operator_from_diff(star_action_operator(ay.to_float(), ctx), basis)
    e = float(p.e)
    pix = ops["px"].data - e * op_ax.data
    piy = ops["py"].data - e * op_ay.data
    return make_operator(pix), make_operator(piy)


def reduced_momenta(p: PlaneParams, basis: OscBasis):
    """Momenta of the reduced commutative problem: p - e_star * A(x, y)
    with the gauge-field polynomials acting by plain multiplication."""
    validate(p)
    ops = basis_matrices(basis)
    beff = float(effective_field(p))
    _, e_star = reduced_params(p)
    e_star = float(e_star)
    pix = ops["px"].data - e_star * float(p.r - 1) * beff * ops["y"].data
    piy = ops["py"].data - e_star * float(p.r) * beff * ops["x"].data
    return make_operator(pix), make_operator(piy)


def _padded(basis: OscBasis, extra: int = 1) -> OscBasis:
    return OscBasis(basis.n_per_mode + extra, basis.length_scale, basis.hbar)


def restrict_to(m: np.ndarray, src: OscBasis, dst: OscBasis) -> np.ndarray:
    """Cut a matrix on a larger basis down to the mode range of dst."""
    if src.n_per_mode < dst.n_per_mode:
        raise ValueError("source basis smaller than target")
    n_src, n_dst = src.n_per_mode, dst.n_per_mode
    idx = np.array([i * n_src + j for i in range(n_dst) for j in range(n_dst)])
    return m[np.ix_(idx, idx)]


def deformed_hamiltonian(p: PlaneParams, basis: OscBasis, route: str = "star_action") -> OperatorMatrix:
    """The deformed Landau Hamiltonian compressed onto the truncated basis.

    route 'star_action': (1/2m) [(px - e Op(Ax))^2 + (py - e Op(Ay))^2]
    with Op the star-action dictionary operators.
    route 'reduced': (1/2m*) [(px - e* Ax)^2 + (py - e* Ay)^2] with plain
    multiplication operators, reduced mass and charge.

    The momenta shift each mode index by at most one, so forming the
    squares on a basis padded by one state per mode and restricting back
    yields the exact compression of the full-space Hamiltonian.  That
    keeps the bottom eigenvalue a variational bound: it converges to the
    true ground energy from above, monotonically in the basis size.

    The two routes agree entrywise up to float rounding; asserting that
    is the matrix-level restatement of the reduced-parameter derivation.
    """
    validate(p)
    padded = _padded(basis)
    if route == "star_action":
        pix, piy = kinematical_momenta(p, padded)
        h = (pix.data @ pix.data + piy.data @ piy.data) / (2 * float(p.m))
    elif route == "reduced":
        pix, piy = reduced_momenta(p, padded)
        m_star, _ = reduced_params(p)
        h = (pix.data @ pix.data + piy.data @ piy.data) / (2 * float(m_star))
    else:
        raise ValueError(f"unknown route {route!r}")
    return make_operator(restrict_to(h, padded, basis))


def hermitian_eigenvalues(m: OperatorMatrix) -> np.ndarray:
    """Ascending real eigenvalues with a per-pair reconstruction check.

    Requires the Hermitian tag; each eigenpair must satisfy
    ||M v - w v|| <= 1e-8 ||M||.
    """
    if not m.hermitian:
        raise ValueError("eigensolver requires a Hermitian-tagged matrix")
    w, v = np.linalg.eigh(m.data)
    norm = max(abs(w[0]), abs(w[-1]), 1e-300)
    residual = np.linalg.norm(m.data @ v - v * w, axis=0)
    worst = float(np.max(residual))
    if worst > 1e-8 * norm:
        raise ArithmeticError(f"eigenpair residual {worst:.3e} exceeds contract")
    return w


def ladder_diagnostics(p: PlaneParams, basis: OscBasis, h: np.ndarray | None = None) -> dict:
    """Interior-block ladder identities of the deformed problem.

    With omega = |e* Beff| / m*, the ladder b = (Pix + i s Piy) /
    sqrt(2 hbar |e* Beff|) (s the sign of e* Beff) must satisfy
    [b, b+] = 1 and H = hbar omega (b+ b + 1/2) on the interior block.
    """
    validate(p)
    pix, piy = reduced_momenta(p, basis)
    m_star, e_star = reduced_params(p)
    eb = float(e_star) * float(effective_field(p))
    if eb == 0:
        raise ValueError("ladder diagnostics need a nonzero effective field")
    s = 1.0 if eb > 0 else -1.0
    hbar = float(p.hbar)
    b = (pix.data + 1j * s * piy.data) / math.sqrt(2 * hbar * abs(eb))
    bd = b.conj().T
    eye = np.eye(basis.dim, dtype=complex)
    comm_residual = float(
        np.max(np.abs(interior_block(b @ bd - bd @ b - eye, basis)))
    )
    omega = abs(eb) / float(m_star)
    if h is None:
        h = deformed_hamiltonian(p, basis, route="star_action").data
    ladder_h = hbar * omega * (bd @ b + eye / 2)
    h_residual = float(np.max(np.abs(interior_block(h - ladder_h, basis))))
    return {
        "omega": omega,
        "commutator_residual": comm_residual,
        "hamiltonian_residual": h_residual,
    }


def landau_spectrum_check(
    p: PlaneParams,
    basis: OscBasis,
    n_levels: int = 1,
    r_grid=None,
) -> dict:
    """Spectral report for the deformed Hamiltonian.

    For each gauge parameter in r_grid (default: just p.r): the smallest
    eigenvalues against the analytic ground energy, the interior ladder
    residuals, the route-equivalence gap, and the count of eigenvalues
    within 0.1 hbar omega of the bottom (a degeneracy diagnostic that
    grows with the basis but has no acceptance threshold, since a
    truncated basis cannot show infinite degeneracy).
    """
    validate(p)
    if r_grid is None:
        r_grid = [p.r]
    rows = []
    for r in r_grid:
        q = validate(p.replace_r(Fraction(r)))
        h_star = deformed_hamiltonian(q, basis, route="star_action")
        h_red = deformed_hamiltonian(q, basis, route="reduced")
        route_gap = float(np.max(np.abs(h_star.data - h_red.data)))
        eigs = np.linalg.eigvalsh(h_star.data)
        hbar_omega = float(q.hbar) * float(abs(q.e * q.B) / q.m)
        e0 = hbar_omega / 2
        levels = [e0 + n * hbar_omega for n in range(n_levels)]
        ladder = ladder_diagnostics(q, basis, h_star.data)
        near_bottom = int(np.sum(eigs <= eigs[0] + 0.1 * hbar_omega))
        rows.append(
            {
                "r": q.r,
                "theta": q.theta,
                "n_per_mode": basis.n_per_mode,
                "e0_estimate": float(eigs[0]),
                "e0_analytic": e0,
                "rel_err": (float(eigs[0]) - e0) / e0 if e0 else 0.0,
                "levels_analytic": levels,
                "route_gap": route_gap,
                "ladder_commutator_residual": ladder["commutator_residual"],
                "ladder_residual": ladder["hamiltonian_residual"],
                "degenerate_near_bottom": near_bottom,
            }
        )
    estimates = [row["e0_estimate"] for row in rows]
    return {
        "rows": rows,
        "e0_spread": max(estimates) - min(estimates) if estimates else 0.0,
    }


def naive_spectrum_check(p: PlaneParams, basis: OscBasis, r_grid=None) -> dict:
    """Spectral contrast for the naive minimal prescription.

    Builds the Hamiltonian from the naive fields (the noncommutative
    position operators substituted into the commutative potential),
    measures the interior kinematical commutator against
    i e hbar B [1 - e r(r-1) theta B / hbar], and estimates the level
    spacing from the bottom eigenvalue.  The r-dependence of the spacing
    is the gauge-dependence defect of this prescription.
    """
    validate(p)
    if r_grid is None:
        r_grid = [Fraction(1, 2), Fraction(1)]
    padded = _padded(basis)
    ops = basis_matrices(padded)
    rows = []
    for r in r_grid:
        q = validate(p.replace_r(Fraction(r)))
        (nax, nay), scale = naive_prescription(q)
        ctx = star_context_for(q)
        op_ax = operator_from_diff(star_action_operator(nax.to_float(), ctx), padded)
        op_ay = operator_from_diff(star_action_operator(nay.to_float(), ctx), padded)
        e = float(q.e)
        pix = ops["px"].data - e * op_ax.data
        piy = ops["py"].data - e * op_ay.data
        base = 1j * e * float(q.hbar) * float(q.B)
        comm = restrict_to(pix @ piy - piy @ pix, padded, basis)
        if base != 0:
            measured = interior_block(comm, basis) / base
            n_int = measured.shape[0]
            measured_scale = float(np.real(np.trace(measured)) / n_int)
            comm_residual = float(np.max(np.abs(measured - float(scale) * np.eye(n_int))))
        else:
            measured_scale = float("nan")
            comm_residual = float(np.max(np.abs(interior_block(comm, basis))))
        h = make_operator(
            restrict_to((pix @ pix + piy @ piy) / (2 * float(q.m)), padded, basis)
        )
        e0 = float(np.linalg.eigvalsh(h.data)[0])
        spacing_analytic = float(q.hbar) * abs(float(q.e * q.B) * float(scale)) / float(q.m)
        rows.append(
            {
                "r": q.r,
                "scale_analytic": scale,
                "scale_measured": measured_scale,
                "commutator_residual": comm_residual,
                "e0_estimate": e0,
                "spacing_estimate": 2 * e0,
                "spacing_analytic": spacing_analytic,
            }
        )
    report = {"rows": rows}
    if len(rows) >= 2:
        a, b = rows[0], rows[1]
        if a["e0_estimate"] and b["e0_estimate"]:
            report["spacing_ratio_measured"] = a["spacing_estimate"] / b["spacing_estimate"]
            report["spacing_ratio_analytic"] = float(a["scale_analytic"] / b["scale_analytic"]) if b["scale_analytic"] else float("nan")
    return report
