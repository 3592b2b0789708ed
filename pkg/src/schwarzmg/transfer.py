"""Bilinear intergrid transfers and Galerkin coarse operators.

Interpolation uses the standard bilinear weights (1 at the coincident fine
node, 1/2 at edge neighbours, 1/4 at corner neighbours).  Restriction is the
exact transpose, and coarse operators are formed as the Galerkin triple
product R A P.
"""

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp

__all__ = ["TransferPair", "build_transfers", "galerkin", "bilinear_symbol", "interp_symbol"]


@dataclass(frozen=True)
class TransferPair:
    """Interpolation P and restriction R = P^T between two grid levels."""

    P: sp.csr_matrix
    R: sp.csr_matrix
    n_fine: int
    n_coarse: int


def build_transfers(n):
    """Build bilinear interpolation from the n/2-grid to the n-grid.

    Parameters
    ----------
    n : int
        Number of fine-grid intervals per direction; must be even and >= 4.
        Both grids carry only interior unknowns (Dirichlet boundary rows are
        eliminated), ordered lexicographically with x fastest.

    Returns
    -------
    TransferPair
    """
    if n % 2 != 0 or n < 4:
        raise ValueError("n must be even and >= 4, got %r" % (n,))
    nf = n - 1
    nc = n // 2 - 1
    rows, cols, vals = [], [], []
    for jy in range(nc):
        for jx in range(nc):
            col = jy * nc + jx
            cx, cy = 2 * jx + 1, 2 * jy + 1
            for dy in (-1, 0, 1):
                for dx in (-1, 0, 1):
                    w = 1.0 / (2 ** (abs(dx) + abs(dy)))
                    rows.append((cy + dy) * nf + (cx + dx))
                    cols.append(col)
                    vals.append(w)
    P = sp.csr_matrix((vals, (rows, cols)), shape=(nf * nf, nc * nc))
    return TransferPair(P=P, R=P.T.tocsr(), n_fine=n, n_coarse=n // 2)


def galerkin(A, pair):
    """Coarse operator R A P for fine operator ``A`` and transfers ``pair``."""
    return (pair.R @ A @ pair.P).tocsr()


def bilinear_symbol(w1, w2):
    """Per-mode bilinear interpolation weight 1/4 (1 + cos w1)(1 + cos w2); broadcasts."""
    w1 = np.asarray(w1)
    w2 = np.asarray(w2)
    return 0.25 * (1.0 + np.cos(w1)) * (1.0 + np.cos(w2))


def interp_symbol(w1, w2):
    """Interpolation symbol of a low frequency over its four harmonics.

    A coarse-grid Fourier mode at frequency (2 w1, 2 w2) interpolates to the
    combination of the four fine-grid harmonics of (w1, w2) — in the order
    (w1, w2), +(pi, pi), +(pi, 0), +(0, pi) — with these coefficients.
    Restriction (the transpose of interpolation) uses the conjugate of this
    vector, up to the fine/coarse grid-density factor.
    """
    if not (-np.pi / 2 <= w1 < np.pi / 2 and -np.pi / 2 <= w2 < np.pi / 2):
        raise ValueError("frequency (%r, %r) is not low" % (w1, w2))
    shifts = ((0.0, 0.0), (np.pi, np.pi), (np.pi, 0.0), (0.0, np.pi))
    return np.array([bilinear_symbol(w1 + s1, w2 + s2) for s1, s2 in shifts])
