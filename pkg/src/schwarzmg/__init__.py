"""Geometric multigrid with overlapping block-Schwarz smoothers for rotated
anisotropic diffusion, plus a local Fourier analysis engine and closed-form
convergence oracles."""

from .model import (
    PdeCoefficients,
    Stencil9,
    fd_stencil,
    fe_stencil,
    pde_coefficients,
    stencil_symbol,
)
from .assembly import GridOperator, GridSpec, apply, assemble
from .transfer import TransferPair, bilinear_symbol, build_transfers, galerkin, interp_symbol
from .schwarz import SchwarzConfig, SubdomainPlan, alternating_sweep, plan_subdomains, sweep
from .lfa import (
    Frequency,
    SymbolSystem,
    TwoGridSymbol,
    harmonics,
    schwarz_2x2_system,
    schwarz_ellx1_system,
    smoothing_factor,
    symbol_gs,
    symbol_line_x,
    symbol_schwarz_2x2,
    symbol_schwarz_ellx1,
    two_grid_factor,
    two_grid_symbol,
)
from .theory import (
    TheoryContext,
    b0_matrix,
    b0_solve,
    ell_star,
    fe_s0_upper_bound,
    b0_solve_structured,
    mu_linear,
    s0_fd,
    s0_fe,
    s1_fd,
    s1_fe_at_zero,
    sherman_morrison_solve,
    staged_2x2_series,
    z1,
)
from .multigrid import (
    ConvergenceReport,
    Hierarchy,
    Level,
    build_hierarchy,
    cycle,
    measure_convergence,
)

__all__ = [
    "PdeCoefficients",
    "Stencil9",
    "fd_stencil",
    "fe_stencil",
    "pde_coefficients",
    "stencil_symbol",
    "GridOperator",
    "GridSpec",
    "apply",
    "assemble",
    "TransferPair",
    "bilinear_symbol",
    "build_transfers",
    "galerkin",
    "interp_symbol",
    "SchwarzConfig",
    "SubdomainPlan",
    "alternating_sweep",
    "plan_subdomains",
    "sweep",
    "Frequency",
    "SymbolSystem",
    "TwoGridSymbol",
    "harmonics",
    "schwarz_2x2_system",
    "schwarz_ellx1_system",
    "smoothing_factor",
    "symbol_gs",
    "symbol_line_x",
    "symbol_schwarz_2x2",
    "symbol_schwarz_ellx1",
    "two_grid_factor",
    "two_grid_symbol",
    "TheoryContext",
    "b0_matrix",
    "b0_solve",
    "ell_star",
    "fe_s0_upper_bound",
    "b0_solve_structured",
    "mu_linear",
    "s0_fd",
    "s0_fe",
    "s1_fd",
    "s1_fe_at_zero",
    "sherman_morrison_solve",
    "staged_2x2_series",
    "z1",
    "ConvergenceReport",
    "Hierarchy",
    "Level",
    "build_hierarchy",
    "cycle",
    "measure_convergence",
]
