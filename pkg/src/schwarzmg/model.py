"""Rotated anisotropic diffusion: coefficients, 9-point stencils, Fourier symbols.

The model problem is -div(K grad u) = f on the unit square with homogeneous
Dirichlet conditions, where the diffusion tensor K has principal axes rotated
by an angle ``theta`` and anisotropy ratio ``epsilon``.  Written out in
Cartesian coordinates the operator is

    -alpha u_xx - beta u_yy - gamma u_xy

with alpha = cos^2(theta) + epsilon sin^2(theta),
     beta  = epsilon cos^2(theta) + sin^2(theta),
     gamma = 2 (1 - epsilon) cos(theta) sin(theta).

Both a finite-difference and a bilinear finite-element discretization are
provided as constant 9-point stencils on a uniform grid.  Stencil entries are
stored after multiplying through by h^2, so they do not depend on the mesh
width.
"""

from dataclasses import dataclass

import numpy as np

__all__ = [
    "PdeCoefficients",
    "Stencil9",
    "FourierStencil",
    "pde_coefficients",
    "fd_stencil",
    "fe_stencil",
    "stencil_symbol",
]


@dataclass(frozen=True)
class PdeCoefficients:
    """Coefficients of the rotated anisotropic diffusion operator."""

    epsilon: float
    theta: float
    alpha: float
    beta: float
    gamma: float


def pde_coefficients(epsilon, theta):
    """Return the Cartesian coefficients for anisotropy ``epsilon`` and angle ``theta``.

    Parameters
    ----------
    epsilon : float
        Anisotropy ratio, in [0, 1].  epsilon = 1 is the Laplacian.
    theta : float
        Rotation angle of the strong diffusion direction, in [0, pi/2].

    Returns
    -------
    PdeCoefficients
    """
    if not 0.0 <= epsilon <= 1.0:
        raise ValueError("epsilon must lie in [0, 1], got %r" % (epsilon,))
    if not 0.0 <= theta <= np.pi / 2 + 1e-15:
        raise ValueError("theta must lie in [0, pi/2], got %r" % (theta,))
    c, s = np.cos(theta), np.sin(theta)
    alpha = c * c + epsilon * s * s
    beta = epsilon * c * c + s * s
    gamma = 2.0 * (1.0 - epsilon) * c * s
    return PdeCoefficients(float(epsilon), float(theta), float(alpha), float(beta), float(gamma))


@dataclass(frozen=True)
class Stencil9:
    """Constant 9-point stencil, entries named by compass direction.

    The entry ``e`` multiplies the eastern neighbour u(x + h, y), ``nw`` the
    north-western neighbour u(x - h, y + h), and so on.
    """

    nw: float
    n: float
    ne: float
    w: float
    c: float
    e: float
    sw: float
    s: float
    se: float

    def as_array(self):
        """Return a 3x3 array with north in the top row and west in the left column."""
        return np.array(
            [
                [self.nw, self.n, self.ne],
                [self.w, self.c, self.e],
                [self.sw, self.s, self.se],
            ]
        )

    def offsets(self):
        """Return ((dx, dy), value) pairs for all nine entries."""
        return (
            ((-1, 1), self.nw),
            ((0, 1), self.n),
            ((1, 1), self.ne),
            ((-1, 0), self.w),
            ((0, 0), self.c),
            ((1, 0), self.e),
            ((-1, -1), self.sw),
            ((0, -1), self.s),
            ((1, -1), self.se),
        )

    def fourier(self, w1, w2):
        """Evaluate all nine Fourier-transformed entries at frequency (w1, w2).

        Each entry s_pq of the stencil contributes s_pq * exp(i(p w1 + q w2))
        where (p, q) is its offset.  ``w1`` and ``w2`` broadcast, so arrays of
        frequencies produce arrays of symbol entries.
        """
        w1 = np.asarray(w1)
        w2 = np.asarray(w2)
        e1 = np.exp(1j * w1)
        e2 = np.exp(1j * w2)
        one = np.ones(np.broadcast(w1, w2).shape)
        return FourierStencil(
            nw=self.nw * e2 / e1,
            n=self.n * e2,
            ne=self.ne * e1 * e2,
            w=self.w / e1,
            c=self.c * one,
            e=self.e * e1,
            sw=self.sw / (e1 * e2),
            s=self.s / e2,
            se=self.se * e1 / e2,
        )


@dataclass(frozen=True)
class FourierStencil:
    """The nine Fourier-transformed stencil entries at one or more frequencies."""

    nw: np.ndarray
    n: np.ndarray
    ne: np.ndarray
    w: np.ndarray
    c: np.ndarray
    e: np.ndarray
    sw: np.ndarray
    s: np.ndarray
    se: np.ndarray

    def symbol(self):
        """Sum of all entries: the scalar symbol of the stencil operator."""
        return self.nw + self.n + self.ne + self.w + self.c + self.e + self.sw + self.s + self.se


def fd_stencil(coeffs):
    """Finite-difference 9-point stencil (times h^2) for the given coefficients.

    Second differences discretize the u_xx and u_yy terms; the mixed term
    u_xy uses the upwind-biased 7-point cross difference, which keeps the
    off-diagonal signs non-positive for theta in [0, pi/2].
    """
    a, b, g = coeffs.alpha, coeffs.beta, coeffs.gamma
    return Stencil9(
        nw=0.0,
        n=-b + g / 2.0,
        ne=-g / 2.0,
        w=-a + g / 2.0,
        c=2.0 * a + 2.0 * b - g,
        e=-a + g / 2.0,
        sw=-g / 2.0,
        s=-b + g / 2.0,
        se=0.0,
    )


def fe_stencil(coeffs):
    """Bilinear finite-element 9-point stencil for the given coefficients."""
    a, b, g = coeffs.alpha, coeffs.beta, coeffs.gamma
    ax = np.array([[-1.0, 2.0, -1.0], [-4.0, 8.0, -4.0], [-1.0, 2.0, -1.0]]) / 6.0
    ay = ax.T
    axy = -np.array([[-1.0, 0.0, 1.0], [0.0, 0.0, 0.0], [1.0, 0.0, -1.0]]) / 4.0
    m = a * ax + b * ay + g * axy
    return Stencil9(
        nw=m[0, 0], n=m[0, 1], ne=m[0, 2],
        w=m[1, 0], c=m[1, 1], e=m[1, 2],
        sw=m[2, 0], s=m[2, 1], se=m[2, 2],
    )


def stencil_symbol(stencil, w1, w2):
    """Scalar symbol of ``stencil`` at frequency (w1, w2); broadcasts over arrays."""
    return stencil.fourier(w1, w2).symbol()
