"""Local Fourier analysis of Schwarz-type smoothers and two-grid cycles.

All symbols are computed on the infinite uniform grid.  A Fourier mode
exp(i (w1 x + w2 y) / h) with (w1, w2) in [-pi/2, 3 pi/2)^2 is an eigenmode
of every constant-stencil operator; frequencies in [-pi/2, pi/2)^2 are "low"
(representable on the coarse grid), the rest are "high".

Smoother symbols
----------------
For pointwise lexicographic Gauss-Seidel and for x-line relaxation the error
amplification per mode is a scalar ratio of transformed stencil entries.  For
overlapping multiplicative Schwarz with ell x 1 or 2 x 2 blocks and unit
stride, a single mode is no longer an eigenfunction of one block solve, but
the sweep limit satisfies a small linear system coupling the amplification
after consecutive block updates; its solution's first component is the
per-sweep symbol.

Two-grid symbols couple each low mode with its three harmonics, giving a
4 x 4 error-propagation matrix per frequency.
"""

from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from .model import stencil_symbol
from .transfer import bilinear_symbol

__all__ = [
    "Frequency",
    "SymbolSystem",
    "TwoGridSymbol",
    "harmonics",
    "symbol_gs",
    "symbol_line_x",
    "symbol_schwarz_2x2",
    "symbol_schwarz_ellx1",
    "smoothing_factor",
    "two_grid_symbol",
    "two_grid_factor",
]

#: Frequencies where a symbol denominator falls below this are excluded.
EXCLUSION_TOL = 1e-14


@dataclass(frozen=True)
class Frequency:
    """A Fourier frequency pair, with helpers for the coarse-grid harmonics."""

    w1: float
    w2: float

    def is_low(self):
        return -np.pi / 2 <= self.w1 < np.pi / 2 and -np.pi / 2 <= self.w2 < np.pi / 2

    def harmonics(self):
        return [Frequency(w1, w2) for w1, w2 in zip(*harmonics(self.w1, self.w2))]


def harmonics(w1, w2):
    """The four harmonics of (w1, w2) that alias on the coarse grid.

    Order: (w1, w2), (w1 + pi, w2 + pi), (w1 + pi, w2), (w1, w2 + pi).
    Shifts are not wrapped back into the base interval; symbols are
    2 pi periodic so this does not change any value.
    """
    w1 = np.asarray(w1, dtype=float)
    w2 = np.asarray(w2, dtype=float)
    pi = np.pi
    return (
        np.stack([w1, w1 + pi, w1 + pi, w1]),
        np.stack([w2, w2 + pi, w2, w2 + pi]),
    )


@dataclass(frozen=True)
class SymbolSystem:
    """Linear system whose solution's first component is a Schwarz symbol.

    ``matrix`` has shape (..., k, k) and ``rhs`` shape (..., k) where k is the
    number of times a grid point is visited during one sweep (block size).
    """

    matrix: np.ndarray
    rhs: np.ndarray

    def solve(self):
        with np.errstate(all="ignore"):
            sol = np.linalg.solve(self.matrix, self.rhs[..., None])[..., 0]
        return sol

    def symbol(self):
        return self.solve()[..., 0]


def symbol_gs(stencil, w1, w2):
    """Symbol of one lexicographic Gauss-Seidel sweep (west-to-east, then north).

    Points west, south-west, south, and south-east of the current point hold
    already-updated values; the ratio of "new" to "old" transformed entries
    gives the amplification.  Frequencies with a vanishing denominator return
    nan.
    """
    f = stencil.fourier(w1, w2)
    num = f.e + f.nw + f.n + f.ne
    den = f.c + f.w + f.sw + f.s + f.se
    with np.errstate(all="ignore"):
        out = -num / den
    return np.where(np.abs(den) < EXCLUSION_TOL, np.nan, out)


def symbol_line_x(stencil, w1, w2):
    """Symbol of lexicographic x-line relaxation (whole rows, south to north)."""
    f = stencil.fourier(w1, w2)
    num = f.nw + f.n + f.ne
    den = f.sw + f.s + f.se + f.w + f.c + f.e
    with np.errstate(all="ignore"):
        out = -num / den
    return np.where(np.abs(den) < EXCLUSION_TOL, np.nan, out)


# Shift matrix difference U - I mapping the amplification vector after k
# updates to the difference between consecutive states.
def _shift_minus_identity(k):
    m = -np.eye(k)
    m[np.arange(k - 1), np.arange(1, k)] += 1.0
    return m


def schwarz_2x2_system(stencil, w1, w2, weight=1.0):
    """Sweep-limit system for maximally overlapped 2x2-block Schwarz.

    Block unknowns are ordered (x_ij, x_{i+1,j}, x_{i,j+1}, x_{i+1,j+1}).
    ``weight`` scales each block update (the block matrix is divided by it).
    """
    f = stencil.fourier(w1, w2)
    shape = np.broadcast(np.asarray(w1), np.asarray(w2)).shape
    a = np.array(
        [
            [stencil.c, stencil.e, stencil.n, stencil.ne],
            [stencil.w, stencil.c, stencil.nw, stencil.n],
            [stencil.s, stencil.se, stencil.c, stencil.e],
            [stencil.sw, stencil.s, stencil.w, stencil.c],
        ]
    ) / float(weight)

    zero = np.zeros(shape, dtype=complex)
    south = f.sw + f.s + f.se
    cmat = np.empty(shape + (4, 4), dtype=complex)
    cmat[..., 0, 0] = south + f.w
    cmat[..., 0, 1] = f.c
    cmat[..., 0, 2] = f.e + f.nw
    cmat[..., 0, 3] = f.n
    cmat[..., 1, 0] = south
    cmat[..., 1, 1] = f.w
    cmat[..., 1, 2] = f.c + f.e
    cmat[..., 1, 3] = f.nw
    cmat[..., 2, 0] = f.sw
    cmat[..., 2, 1] = f.s
    cmat[..., 2, 2] = f.se + f.w
    cmat[..., 2, 3] = f.c
    cmat[..., 3, 0] = zero
    cmat[..., 3, 1] = f.sw
    cmat[..., 3, 2] = f.s + f.se
    cmat[..., 3, 3] = f.w

    cvec = np.empty(shape + (4,), dtype=complex)
    cvec[..., 0] = f.ne
    cvec[..., 1] = f.n + f.ne
    cvec[..., 2] = f.e + f.nw + f.n + f.ne
    cvec[..., 3] = f.c + f.e + f.nw + f.n + f.ne

    e1 = np.exp(1j * np.asarray(w1, dtype=float))
    e2 = np.exp(1j * np.asarray(w2, dtype=float))
    dvec = np.empty(shape + (4,), dtype=complex)
    dvec[..., 0] = 1.0
    dvec[..., 1] = e1
    dvec[..., 2] = e2
    dvec[..., 3] = e1 * e2

    # system matrix A D (U - I) - D C and right-hand side D c - A D e_4
    ad = a * dvec[..., None, :]
    mat = ad @ _shift_minus_identity(4) - dvec[..., :, None] * cmat
    rhs = dvec * cvec - ad[..., :, 3]
    return SymbolSystem(matrix=mat, rhs=rhs)


def symbol_schwarz_2x2(stencil, w1, w2, weight=1.0):
    """Symbol of one sweep of maximally overlapped 2x2-block Schwarz."""
    return schwarz_2x2_system(stencil, w1, w2, weight).symbol()


def schwarz_ellx1_system(stencil, w1, w2, ell, weight=1.0):
    """Sweep-limit system for maximally overlapped ell x 1 (row block) Schwarz."""
    if ell < 1:
        raise ValueError("ell must be >= 1, got %r" % (ell,))
    f = stencil.fourier(w1, w2)
    shape = np.broadcast(np.asarray(w1), np.asarray(w2)).shape

    a = (
        np.diag(np.full(ell, stencil.c))
        + np.diag(np.full(ell - 1, stencil.e), 1)
        + np.diag(np.full(ell - 1, stencil.w), -1)
    ) / float(weight)

    idx = np.arange(ell)
    cmat = np.zeros(shape + (ell, ell), dtype=complex)
    cmat[..., idx, idx] = f.w[..., None]
    if ell >= 2:
        cmat[..., idx[:-1], idx[:-1] + 1] = f.c[..., None]
    if ell >= 3:
        cmat[..., idx[:-2], idx[:-2] + 2] = f.e[..., None]
    cmat[..., :, 0] += (f.sw + f.s + f.se)[..., None]

    cvec = np.zeros(shape + (ell,), dtype=complex)
    cvec[...] = (f.nw + f.n + f.ne)[..., None]
    if ell >= 2:
        cvec[..., ell - 2] += f.e
    cvec[..., ell - 1] += f.c + f.e

    apow = np.exp(1j * np.asarray(w1, dtype=float))[..., None] ** idx
    ad = a * apow[..., None, :]
    mat = ad @ _shift_minus_identity(ell) - apow[..., :, None] * cmat
    rhs = apow * cvec - ad[..., :, ell - 1]
    return SymbolSystem(matrix=mat, rhs=rhs)


def symbol_schwarz_ellx1(stencil, w1, w2, ell, weight=1.0):
    """Symbol of one sweep of maximally overlapped ell x 1 block Schwarz."""
    return schwarz_ellx1_system(stencil, w1, w2, ell, weight).symbol()


def _max_over_region(objective, w1_grid, w2_grid, in_region, points=129, top=5, tol=1e-6):
    """Maximize ``objective`` over a frequency box by dense sampling + refinement.

    ``objective`` maps broadcastable (w1, w2) arrays to real values (nan where
    undefined).  Takes the max over the sample grid, then runs downhill
    simplex from the ``top`` best samples, rejecting steps that leave the
    region.
    """
    ww1, ww2 = np.meshgrid(w1_grid, w2_grid, indexing="ij")
    vals = objective(ww1, ww2)
    vals = np.where(in_region(ww1, ww2), vals, np.nan)
    flat = np.where(np.isnan(vals), -np.inf, vals).ravel()
    best = float(flat.max())
    order = np.argsort(flat)[::-1][:top]

    def negated(w):
        if not in_region(w[0], w[1]):
            return 1e6
        v = objective(np.asarray(w[0]), np.asarray(w[1]))
        v = float(v)
        return 1e6 if np.isnan(v) else -v

    for k in order:
        if not np.isfinite(flat[k]):
            continue
        x0 = np.array([ww1.ravel()[k], ww2.ravel()[k]])
        res = minimize(negated, x0, method="Nelder-Mead",
                       options={"xatol": tol, "fatol": tol, "maxiter": 400})
        if -res.fun > best:
            best = -res.fun
    return best


def _wrap(w):
    """Wrap a frequency into [-pi/2, 3 pi/2)."""
    return np.mod(np.asarray(w, dtype=float) + np.pi / 2, 2 * np.pi) - np.pi / 2


def smoothing_factor(symbol_fn, points=129, top=5, tol=1e-6):
    """Largest |symbol| over the high-frequency region.

    Parameters
    ----------
    symbol_fn : callable
        Maps broadcastable frequency arrays (w1, w2) to complex symbol values.
    points : int
        Sample-grid resolution per direction before local refinement.
    """
    grid = np.linspace(-np.pi / 2, 3 * np.pi / 2, points)

    def objective(w1, w2):
        with np.errstate(all="ignore"):
            return np.abs(symbol_fn(w1, w2))

    def is_high(w1, w2):
        w1 = _wrap(w1)
        w2 = _wrap(w2)
        low = (np.abs(w1) < np.pi / 2 - 1e-12) & (np.abs(w2) < np.pi / 2 - 1e-12)
        return ~low

    return _max_over_region(objective, grid, grid, is_high, points=points, top=top, tol=tol)


@dataclass(frozen=True)
class TwoGridSymbol:
    """Per-frequency 4x4 two-grid error propagation matrices.

    ``matrix`` has shape (..., 4, 4); ``excluded`` flags frequencies where the
    coarse symbol or the fine symbols vanish and the matrix is meaningless.
    """

    matrix: np.ndarray
    excluded: np.ndarray

    def spectral_radius(self):
        m = np.where(self.excluded[..., None, None], np.eye(4), self.matrix)
        rho = np.abs(np.linalg.eigvals(m)).max(axis=-1)
        return np.where(self.excluded, np.nan, rho)


def two_grid_symbol(stencil, smoother_fn, w1, w2):
    """Two-grid error symbol with one pre- and one post-smoothing step.

    ``smoother_fn(w1, w2)`` gives the smoother symbol (pass ``None`` for no
    smoothing, which isolates the coarse-grid correction).  Coarse operator
    symbols use the Galerkin construction with bilinear transfers.
    """
    h1, h2 = harmonics(w1, w2)
    ahat = stencil_symbol(stencil, h1, h2)
    if smoother_fn is None:
        shat = np.ones_like(ahat)
    else:
        shat = smoother_fn(h1, h2)
    phat = bilinear_symbol(h1, h2).astype(complex)

    # Galerkin coarse symbol; the factor 4 is the fine/coarse grid-density
    # ratio and makes this equal the symbol of the assembled R A P stencil.
    a1 = 4.0 * np.einsum("k...,k...,k...->...", phat.conj(), ahat, phat)
    fine_norm = np.sqrt((np.abs(ahat) ** 2).sum(axis=0))
    excluded = (np.abs(a1) < EXCLUSION_TOL) | (fine_norm < EXCLUSION_TOL)

    # move the harmonic index last so matrices have shape (..., 4, 4)
    p = np.moveaxis(phat, 0, -1)
    a = np.moveaxis(ahat, 0, -1)
    sm = np.moveaxis(shat, 0, -1)
    with np.errstate(all="ignore"):
        # coarse-grid correction I - P A1^{-1} R A0 on the harmonic space
        k = p[..., :, None] * (4.0 * p.conj() * a)[..., None, :] / a1[..., None, None]
    e = sm[..., :, None] * (np.eye(4) - k) * sm[..., None, :]
    return TwoGridSymbol(matrix=e, excluded=np.asarray(excluded))


def two_grid_factor(stencil, smoother_fn, points=129, top=5, tol=1e-6):
    """Largest spectral radius of the two-grid symbol over low frequencies."""
    grid = np.linspace(-np.pi / 2, np.pi / 2, points)

    def objective(w1, w2):
        sym = two_grid_symbol(stencil, smoother_fn, w1, w2)
        return sym.spectral_radius()

    def in_box(w1, w2):
        return (
            (np.asarray(w1) >= -np.pi / 2) & (np.asarray(w1) <= np.pi / 2)
            & (np.asarray(w2) >= -np.pi / 2) & (np.asarray(w2) <= np.pi / 2)
        )

    return _max_over_region(objective, grid, grid, in_box, points=points, top=top, tol=tol)
