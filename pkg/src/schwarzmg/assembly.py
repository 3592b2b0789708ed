"""Sparse assembly of constant 9-point stencil operators on the unit square.

Grids are uniform with n intervals per direction.  Homogeneous Dirichlet
boundary values are eliminated, so the operator acts on the (n-1)^2 interior
unknowns, ordered lexicographically with x fastest (row-major in rows of
constant y).
"""

from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp
from scipy.io import mmwrite

__all__ = ["GridSpec", "GridOperator", "assemble", "apply"]


@dataclass(frozen=True)
class GridSpec:
    """Uniform grid with n intervals per direction; (n-1)^2 interior points."""

    n: int

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("need at least 2 intervals, got n=%r" % (self.n,))

    @property
    def interior(self):
        return self.n - 1

    @property
    def ndof(self):
        return (self.n - 1) ** 2

    @property
    def h(self):
        return 1.0 / self.n

    def index(self, ix, iy):
        """Lexicographic unknown index of interior point (ix, iy), 0-based."""
        return iy * (self.n - 1) + ix


@dataclass(frozen=True)
class GridOperator:
    """A stencil operator assembled on a grid."""

    grid: GridSpec
    stencil: object
    matrix: sp.csr_matrix

    def export_matrix_market(self, path):
        """Write the assembled matrix in MatrixMarket coordinate format."""
        mmwrite(path, self.matrix)


def assemble(stencil, grid):
    """Assemble ``stencil`` on ``grid`` as a sparse CSR matrix.

    Couplings that reach a boundary point are dropped (their values are
    pinned to zero), so the matrix is the principal interior block of the
    full stencil operator.
    """
    m = grid.interior
    coo_rows, coo_cols, coo_vals = [], [], []
    idx = np.arange(m * m).reshape(m, m)
    for (dx, dy), val in stencil.offsets():
        if val == 0.0:
            continue
        sy = slice(max(0, -dy), m - max(0, dy))
        sx = slice(max(0, -dx), m - max(0, dx))
        src = idx[sy, sx]
        dst = idx[slice(max(0, dy), m - max(0, -dy)), slice(max(0, dx), m - max(0, -dx))]
        coo_rows.append(src.ravel())
        coo_cols.append(dst.ravel())
        coo_vals.append(np.full(src.size, val))
    mat = sp.coo_matrix(
        (np.concatenate(coo_vals), (np.concatenate(coo_rows), np.concatenate(coo_cols))),
        shape=(m * m, m * m),
    ).tocsr()
    return GridOperator(grid=grid, stencil=stencil, matrix=mat)


def apply(op, x):
    """Apply an assembled operator (or bare sparse matrix) to a vector."""
    matrix = op.matrix if isinstance(op, GridOperator) else op
    return matrix @ x
