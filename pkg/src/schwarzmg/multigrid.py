"""Multigrid cycles with overlapping Schwarz smoothing.

Hierarchies use Galerkin coarsening (A_coarse = R A P with bilinear
transfers), one pre- and one post-smoothing sweep per level, and a dense LU
solve on the coarsest level.  Supported cycles: V, W, and two-grid (exact
solve on the first coarse level).
"""

from dataclasses import dataclass, field

import numpy as np
import scipy.sparse as sp
from scipy.linalg import lu_factor, lu_solve

from .assembly import GridSpec, GridOperator, assemble
from .schwarz import plan_subdomains, sweep
from .transfer import build_transfers, galerkin

__all__ = ["Hierarchy", "ConvergenceReport", "build_hierarchy", "cycle", "measure_convergence"]


@dataclass
class Level:
    n: int
    matrix: sp.csr_matrix
    plan: object = None
    pair: object = None  # transfers to the next-coarser level

    @property
    def npts(self):
        return self.n - 1


@dataclass
class Hierarchy:
    """Galerkin chain of operators with per-level Schwarz sweep plans."""

    levels: list
    config: object
    coarse_lu: tuple = field(repr=False, default=None)
    _exact_lu: dict = field(repr=False, default_factory=dict)

    @property
    def n0(self):
        return self.levels[0].n

    def exact_solve(self, k, b):
        """Dense LU solve of the level-k operator (cached factorization)."""
        if k not in self._exact_lu:
            self._exact_lu[k] = lu_factor(self.levels[k].matrix.toarray())
        return lu_solve(self._exact_lu[k], b)


def build_hierarchy(stencil, n0, config, levels=None):
    """Build a multigrid hierarchy for ``stencil`` on an n0 x n0 grid.

    Coarsening halves n until n = 4, the optional ``levels`` cap is reached,
    or the Schwarz block no longer fits on the next level (every smoothed
    level must accommodate one full block; the first level that cannot
    becomes the coarsest, direct-solve level).
    """
    if n0 < 4 or (n0 & (n0 - 1)) != 0:
        raise ValueError("n0 must be a power of two >= 4, got %r" % (n0,))
    ns = [n0]
    while ns[-1] // 2 >= 4 and (levels is None or len(ns) < levels):
        ns.append(ns[-1] // 2)

    bx, by = config.block
    # every level except the coarsest is smoothed and must fit one block
    for i, n in enumerate(ns[1:], start=1):
        if n - 1 < max(bx, by):
            ns = ns[: i + 1]
            break
    if ns[0] - 1 < max(bx, by):
        raise ValueError("block %r does not fit the finest grid" % (config.block,))

    lvls = []
    matrix = assemble(stencil, GridSpec(n0)).matrix
    for i, n in enumerate(ns):
        lvl = Level(n=n, matrix=matrix)
        if i + 1 < len(ns):
            lvl.plan = plan_subdomains(matrix, n - 1, config)
            lvl.pair = build_transfers(n)
            matrix = galerkin(matrix, lvl.pair)
        lvls.append(lvl)
    h = Hierarchy(levels=lvls, config=config)
    h.coarse_lu = lu_factor(lvls[-1].matrix.toarray())
    return h


def _descend(h, k, x, b, gamma, exact_at=None):
    lvl = h.levels[k]
    if k == len(h.levels) - 1:
        return lu_solve(h.coarse_lu, b)
    if exact_at is not None and k == exact_at:
        return h.exact_solve(k, b)
    sweep(lvl.matrix, x, b, lvl.plan)
    r = b - lvl.matrix @ x
    rc = lvl.pair.R @ r
    xc = np.zeros_like(rc)
    for _ in range(gamma):
        xc = _descend(h, k + 1, xc, rc, gamma, exact_at)
    x += lvl.pair.P @ xc
    sweep(lvl.matrix, x, b, lvl.plan)
    return x


def cycle(h, x, b, kind="v"):
    """Apply one multigrid cycle to ``x`` (updated in place where possible).

    ``kind`` is "v", "w", or "tg" (two-grid: the first coarse level is solved
    exactly, regardless of hierarchy depth).
    """
    kind = kind.lower()
    x = np.asarray(x, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if kind == "v":
        return _descend(h, 0, x, b, gamma=1)
    if kind == "w":
        return _descend(h, 0, x, b, gamma=2)
    if kind == "tg":
        if len(h.levels) < 2:
            raise ValueError("two-grid cycle needs at least two levels")
        return _descend(h, 0, x, b, gamma=1, exact_at=1)
    raise ValueError("unknown cycle kind %r" % (kind,))


@dataclass
class ConvergenceReport:
    """Outcome of a zero-right-hand-side convergence measurement."""

    iterations: int
    rho: float
    history: np.ndarray
    reason: str
    seed: int


def measure_convergence(h, kind="v", seed=0, max_iters=100, tol=1e-30):
    """Measure the asymptotic convergence factor of repeated cycles.

    Solves A x = 0 from a random start (entries uniform in [0, 1), seeded),
    iterating until the absolute residual norm falls below ``tol`` or
    ``max_iters`` cycles have run.  The reported factor is the ratio of the
    final two residual norms.
    """
    rng = np.random.default_rng(seed)
    ndof = h.levels[0].matrix.shape[0]
    x = rng.random(ndof)
    b = np.zeros(ndof)
    matrix = h.levels[0].matrix
    history = [np.linalg.norm(matrix @ x)]
    reason = "max_iters"
    for _ in range(max_iters):
        x = cycle(h, x, b, kind)
        history.append(np.linalg.norm(matrix @ x))
        if history[-1] < tol:
            reason = "tolerance"
            break
    history = np.array(history)
    rho = float(history[-1] / history[-2]) if history[-2] > 0 else 0.0
    if rho > 1.0 and history.size >= 4 and np.all(np.diff(history[-4:]) > 0):
        reason = "diverged"
    return ConvergenceReport(
        iterations=history.size - 1,
        rho=rho,
        history=history,
        reason=reason,
        seed=seed,
    )
