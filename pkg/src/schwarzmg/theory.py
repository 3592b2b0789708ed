"""Closed-form results for grid-aligned anisotropy: linearized Schwarz symbols,
smoothing factors, and the block-size design rule.

For the grid-aligned problem (theta = 0) the symbol of maximally overlapped
ell x 1 Schwarz admits a power series in the anisotropy ratio epsilon,
s = s0 + eps * s1 + O(eps^2), whose terms are available in closed form.  The
building blocks are solutions of small structured linear systems: B0 is the
ell x ell tridiagonal matrix with first row (-1, 1) and interior rows
(1, -2, 1), which factors as B0 = -L0 L0^T with L0 unit lower bidiagonal
(subdiagonal -1), so B0 systems solve in O(ell) by two substitution passes.
"""

from dataclasses import dataclass
from math import ceil, sqrt

import numpy as np

from .lfa import schwarz_2x2_system
from .model import fd_stencil, fe_stencil, pde_coefficients

__all__ = [
    "TheoryContext",
    "b0_matrix",
    "b0_solve",
    "z1",
    "b0_solve_structured",
    "sherman_morrison_solve",
    "s0_fd",
    "s1_fd",
    "s0_fe",
    "s1_fe_at_zero",
    "staged_2x2_series",
    "mu_linear",
    "ell_star",
    "fe_s0_upper_bound",
]

#: Linearized smoothing-factor coefficients: mu = 1 - coeff * eps + O(eps^2).
#: FE ell x 1 entries are proven lower bounds observed to hold with equality.
MU_COEFF = {
    ("fd", "1x1"): lambda ell: 2.0,
    ("fe", "1x1"): lambda ell: 3.0,
    ("fd", "2x2"): lambda ell: 12.0,
    ("fe", "2x2"): lambda ell: 19.2,
    ("fd", "ellx1"): lambda ell: ell * (ell + 1.0),
    ("fe", "ellx1"): lambda ell: 1.5 * ell * (ell + 1.0),
}

#: (disc, block) pairs whose coefficient is a lower bound on 1 - mu slope
#: rather than a proven equality.
LOWER_BOUND_ONLY = {("fe", "ellx1"), ("fe", "1x1")}


@dataclass(frozen=True)
class TheoryContext:
    """Scalars shared by the closed-form expressions at one frequency."""

    ell: int
    a: complex
    f: complex
    delta0: complex
    delta1: complex
    z1: complex

    @classmethod
    def at(cls, ell, w1, w2):
        a = np.exp(1j * w1)
        return cls(
            ell=ell,
            a=a,
            f=-1.0 + np.conj(a),
            delta0=0.5 * np.exp(-1j * w2) * (np.cos(w1) - 1.0),
            delta1=-np.exp(-1j * w2) * (np.cos(w1) + 2.0),
            z1=z1(ell, a),
        )


def b0_matrix(ell):
    """Dense B0: tridiagonal, rows (1, -2, 1) except the first row (-1, 1)."""
    m = (
        np.diag(np.full(ell, -2.0))
        + np.diag(np.ones(ell - 1), 1)
        + np.diag(np.ones(ell - 1), -1)
    )
    m[0, 0] = -1.0
    return m


def b0_solve(ell, xi):
    """Solve B0 x = xi in O(ell) via the factorization B0 = -L0 L0^T."""
    xi = np.asarray(xi)
    y = np.cumsum(-xi)
    return np.cumsum(y[::-1])[::-1]


def z1(ell, a):
    """First component of the solution of B0 x = D 1, D = diag(a^0 .. a^{ell-1})."""
    if np.isclose(a, 1.0):
        return -0.5 * ell * (ell + 1.0)
    return (ell * (a - 1.0) + a * (1.0 - a**ell)) / (a - 1.0) ** 2


def b0_solve_structured(case, ell, a=None):
    """Closed-form solution of B0 x = b for five structured right-hand sides.

    Cases: 1: b = e_1; 2: b = e_ell; 3: b = 1; 4: b = (1, 2, ..., ell);
    5: b = D 1 with D = diag(a^0 .. a^{ell-1}) (requires ``a``).

    Returns
    -------
    (x, x1) : ndarray and scalar
        The solution vector and its first component.
    """
    k = np.arange(1, ell + 1, dtype=float)
    ones = np.ones(ell)
    if case == 1:
        x = k - (ell + 1.0)
    elif case == 2:
        x = -ones
    elif case == 3:
        x = 0.5 * k**2 - 0.5 * k - 0.5 * ell * (ell + 1.0) * ones
    elif case == 4:
        x = k**3 / 6.0 - k / 6.0 - ell * (ell + 1.0) * (ell + 2.0) / 6.0 * ones
    elif case == 5:
        if a is None:
            raise ValueError("case 5 requires the unit-modulus parameter a")
        if np.isclose(a, 1.0):
            return b0_solve_structured(3, ell)
        c5e = a / (a - 1.0) ** 2
        c51 = -1.0 / (a - 1.0)
        c50 = (1.0 + ell - a ** (ell + 1) / (a - 1.0)) / (a - 1.0)
        x = c5e * a ** np.arange(ell) + c51 * k + c50 * ones
    else:
        raise ValueError("case must be 1..5, got %r" % (case,))
    return x, x[0]


def sherman_morrison_solve(ell, f, delta0, xi, a=1.0):
    """Solve [B0 + (f e_1 + delta0 D 1) e_1^T] eta = xi by rank-1 update.

    The update direction is B0^{-1}(f e_1 + delta0 D 1) = f w + delta0 z with
    the closed-form vectors of the unperturbed cases.
    """
    w, w1 = b0_solve_structured(1, ell)
    z, zf = b0_solve_structured(5, ell, a)
    denom = 1.0 - ell * f + delta0 * zf
    if abs(denom) < 1e-14:
        raise ZeroDivisionError("rank-1 update denominator vanishes")
    base = b0_solve(ell, xi)
    delta = -base[0] / denom
    return base + delta * (f * w + delta0 * z)


def s0_fd(ell, w1):
    """Zeroth-order (in epsilon) finite-difference Schwarz symbol."""
    a = np.exp(1j * np.asarray(w1, dtype=float))
    return a**ell / (1.0 + ell - ell * np.conj(a))


def s1_fd(ell, w1, w2):
    """First-order finite-difference Schwarz symbol coefficient."""
    a = np.exp(1j * np.asarray(w1, dtype=float))
    s0 = s0_fd(ell, w1)
    zf = np.vectorize(lambda aa: z1(ell, aa))(a) if np.ndim(a) else z1(ell, complex(a))
    ab = np.conj(a)
    bracket = (
        ell * (ell + 1.0) / 3.0 * (3.0 * ab + (1.0 - ab) * (ell + 2.0)) * s0
        + (np.exp(1j * np.asarray(w2, dtype=float)) + s0 * np.exp(-1j * np.asarray(w2, dtype=float))) * zf
    )
    return -(a ** (-ell)) * s0 * bracket


def s0_fe(ell, w1, w2):
    """Zeroth-order finite-element Schwarz symbol."""
    ctx = TheoryContext.at(ell, w1, w2)
    num = ctx.a**ell - np.conj(ctx.delta0) * ctx.z1
    den = 1.0 + ell - ell * np.conj(ctx.a) + ctx.delta0 * ctx.z1
    return num / den


def s1_fe_at_zero(ell, w2):
    """First-order finite-element symbol coefficient on the w1 = 0 line."""
    return -1.5 * ell * (ell + 1.0) * (1.0 - np.exp(-1j * np.asarray(w2, dtype=float)))


def fe_s0_upper_bound(ell, w1, w2):
    """Upper bound on |s0_fe|^2 from the triangle inequality; nan if it degenerates."""
    ctx = TheoryContext.at(ell, w1, w2)
    dz = abs(ctx.delta0 * ctx.z1)
    den = abs(1.0 + ell - ell * np.conj(ctx.a)) - dz
    if abs(den) < 1e-14:
        return float("nan")
    return (1.0 + dz) ** 2 / den**2


def staged_2x2_series(disc):
    """Power-series coefficients of the 2x2 Schwarz symbol system at (0, 3pi/2).

    The sweep-limit system matrix and right-hand side are linear in epsilon,
    so solving the two staged systems A0 a0 = b0 and A0 a1 = b1 - A1 a0 gives
    the expansion alpha = a0 + eps * a1 + O(eps^2); the first components are
    the symbol series terms.

    Returns
    -------
    (alpha0, alpha1) : two complex vectors of length 4.
    """
    make = {"fd": fd_stencil, "fe": fe_stencil}[disc.lower()]
    w1, w2 = 0.0, 3 * np.pi / 2

    def system(eps):
        sys = schwarz_2x2_system(make(pde_coefficients(eps, 0.0)), w1, w2)
        return sys.matrix, sys.rhs

    m0, r0 = system(0.0)
    m_at_1, r_at_1 = system(1.0)
    m1 = m_at_1 - m0
    r1 = r_at_1 - r0
    alpha0 = np.linalg.solve(m0, r0)
    alpha1 = np.linalg.solve(m0, r1 - m1 @ alpha0)
    return alpha0, alpha1


def mu_linear(disc, block, ell, epsilon):
    """Linearized smoothing factor 1 - c * epsilon for grid-aligned problems.

    Accurate for small epsilon only (the dropped term is O(epsilon^2)).  For
    FE discretizations the coefficient is a proven lower bound on the decay
    that is observed to hold with equality.
    """
    key = (disc.lower(), block.lower())
    if key not in MU_COEFF:
        raise ValueError("unknown (disc, block) combination %r" % (key,))
    return 1.0 - MU_COEFF[key](ell) * epsilon


def ell_star(mu_star, epsilon):
    """Smallest block length predicted to reach smoothing factor mu_star.

    Implements ceil(sqrt(1 - mu_star) / sqrt(epsilon)), dropping the O(1)
    correction of the exact law, with a minimum block length of 1.
    """
    if not 0.0 < mu_star < 1.0:
        raise ValueError("mu_star must lie in (0, 1), got %r" % (mu_star,))
    return max(1, ceil(sqrt(1.0 - mu_star) / sqrt(epsilon)))
