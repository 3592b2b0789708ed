"""Fourier analysis: smoother symbols, smoothing factors, two-grid factors."""

import numpy as np
import pytest

from schwarzmg.assembly import GridSpec, assemble
from schwarzmg.lfa import (
    Frequency,
    harmonics,
    schwarz_2x2_system,
    smoothing_factor,
    symbol_gs,
    symbol_line_x,
    symbol_schwarz_2x2,
    symbol_schwarz_ellx1,
    two_grid_factor,
    two_grid_symbol,
)
from schwarzmg.model import fd_stencil, fe_stencil, pde_coefficients
from schwarzmg.schwarz import SchwarzConfig, plan_subdomains, sweep


def test_harmonics_structure():
    rng = np.random.default_rng(0)
    for _ in range(50):
        w1, w2 = rng.uniform(-np.pi / 2, np.pi / 2, size=2)
        h1, h2 = harmonics(w1, w2)
        assert h1.shape == (4,) and h2.shape == (4,)
        assert h1[0] == w1 and h2[0] == w2
        np.testing.assert_allclose(h1 - w1, [0, np.pi, np.pi, 0])
        np.testing.assert_allclose(h2 - w2, [0, np.pi, 0, np.pi])
        freq = Frequency(w1, w2)
        low_flags = [f.is_low() for f in freq.harmonics()]
        assert sum(low_flags) == 1 and low_flags[0]


def test_symbols_are_one_at_origin():
    st = fd_stencil(pde_coefficients(0.5, 0.2))
    # a tiny offset keeps the denominator away from the excluded zero of A
    w = 1e-7
    assert abs(symbol_gs(st, w, w) - 1.0) < 1e-5
    assert abs(symbol_line_x(st, w, w) - 1.0) < 1e-5
    assert abs(symbol_schwarz_2x2(st, w, w) - 1.0) < 1e-5
    assert abs(symbol_schwarz_ellx1(st, w, w, 4) - 1.0) < 1e-5


def test_gs_smoothing_factor_poisson():
    mu = smoothing_factor(lambda w1, w2: symbol_gs(fd_stencil(pde_coefficients(1.0, 0.0)), w1, w2))
    assert mu == pytest.approx(0.5, abs=1e-4)


def test_line_smoothing_factor_poisson():
    mu = smoothing_factor(
        lambda w1, w2: symbol_line_x(fd_stencil(pde_coefficients(1.0, 0.0)), w1, w2)
    )
    assert mu == pytest.approx(1.0 / np.sqrt(5.0), abs=1e-4)


def test_block2x2_worst_mode_linearization():
    # at the worst frequency (0, 3pi/2) the 2x2 block symbol behaves like
    # 1 - c*eps for small eps, with c = 12 (5-point) and c = 19.2 (9-point)
    eps = 1e-5
    w1, w2 = 0.0, 3 * np.pi / 2
    s_fd = symbol_schwarz_2x2(fd_stencil(pde_coefficients(eps, 0.0)), w1, w2)
    s_fe = symbol_schwarz_2x2(fe_stencil(pde_coefficients(eps, 0.0)), w1, w2)
    assert (1.0 - abs(s_fd)) / eps == pytest.approx(12.0, abs=0.05)
    assert (1.0 - abs(s_fe)) / eps == pytest.approx(19.2, abs=0.05)


def test_single_point_blocks_reduce_to_gauss_seidel():
    st = fd_stencil(pde_coefficients(0.07, 0.9))
    rng = np.random.default_rng(1)
    for _ in range(30):
        w1, w2 = rng.uniform(-np.pi / 2, 3 * np.pi / 2, size=2)
        a = symbol_schwarz_ellx1(st, w1, w2, 1)
        b = symbol_gs(st, w1, w2)
        if np.isnan(b):
            continue
        assert abs(a - b) < 1e-12


def test_symbols_two_pi_periodic():
    st = fe_stencil(pde_coefficients(0.2, 0.6))
    rng = np.random.default_rng(2)
    for _ in range(20):
        w1, w2 = rng.uniform(-np.pi / 2, 3 * np.pi / 2, size=2)
        for fn in (
            lambda u, v: symbol_gs(st, u, v),
            lambda u, v: symbol_schwarz_2x2(st, u, v),
            lambda u, v: symbol_schwarz_ellx1(st, u, v, 3),
        ):
            assert abs(fn(w1 + 2 * np.pi, w2) - fn(w1, w2)) < 1e-10
            assert abs(fn(w1, w2 - 2 * np.pi) - fn(w1, w2)) < 1e-10


def _measured_symbol(stencil, config, w1, w2, weight=None):
    """Amplification of a Fourier mode under one sweep on a large grid.

    The sweep is real-linear, so the real and imaginary parts of the mode
    are swept separately.  Away from the boundary the post-sweep error is
    again a pure mode; the ratio at the centre is the symbol.
    """
    npts = 64
    a = assemble(stencil, GridSpec(npts + 1)).matrix.tocsr()
    plan = plan_subdomains(a, npts, config)
    j = np.arange(npts)
    mode = np.exp(1j * (w1 * j[None, :] + w2 * j[:, None])).ravel()
    b = np.zeros(npts * npts)
    out_re = sweep(a, mode.real.copy(), b, plan, w=weight)
    out_im = sweep(a, mode.imag.copy(), b, plan, w=weight)
    mid = (npts // 2) * npts + npts // 2
    return (out_re[mid] + 1j * out_im[mid]) / mode[mid]


def test_block_symbols_match_swept_modes():
    st = fd_stencil(pde_coefficients(0.3, 0.25))
    w1, w2 = 0.9, 2.4  # high-frequency mode: boundary transients decay fast
    got = _measured_symbol(st, SchwarzConfig(block=(2, 2), overlap=(1, 1)), w1, w2)
    assert abs(got - symbol_schwarz_2x2(st, w1, w2)) < 1e-8
    got = _measured_symbol(st, SchwarzConfig(block=(3, 1), overlap=(2, 0)), w1, w2)
    assert abs(got - symbol_schwarz_ellx1(st, w1, w2, 3)) < 1e-8


def test_weighted_block_symbol_matches_swept_modes():
    st = fe_stencil(pde_coefficients(0.15, 0.7))
    w1, w2 = 1.1, 2.0
    cfg = SchwarzConfig(block=(2, 2), overlap=(1, 1))
    got = _measured_symbol(st, cfg, w1, w2, weight=0.8)
    assert abs(got - symbol_schwarz_2x2(st, w1, w2, weight=0.8)) < 1e-8
    # weight one must be exactly the unweighted symbol
    rng = np.random.default_rng(3)
    for _ in range(20):
        u, v = rng.uniform(-np.pi / 2, 3 * np.pi / 2, size=2)
        assert abs(
            symbol_schwarz_2x2(st, u, v, weight=1.0) - symbol_schwarz_2x2(st, u, v)
        ) < 1e-14


def test_weighting_gains_little_at_worst_mode():
    # scanning the update weight barely improves the worst-mode amplification
    w1, w2 = 0.0, 3 * np.pi / 2
    weights = np.linspace(0.5, 1.5, 201)
    for eps in (1e-2, 1e-3):
        st = fd_stencil(pde_coefficients(eps, 0.0))
        base = abs(symbol_schwarz_2x2(st, w1, w2))
        best = min(abs(symbol_schwarz_2x2(st, w1, w2, weight=w)) for w in weights)
        assert best <= base + 1e-12
        assert base - best <= 0.05


def test_optimizer_beats_coarse_grid_scan():
    st = fd_stencil(pde_coefficients(0.01, 0.35))
    fn = lambda u, v: symbol_schwarz_2x2(st, u, v)
    mu = smoothing_factor(fn)
    grid = np.linspace(-np.pi / 2, 3 * np.pi / 2, 257)
    g1, g2 = np.meshgrid(grid, grid, indexing="ij")
    vals = np.abs(fn(g1, g2))
    low = (np.abs(g1) < np.pi / 2 - 1e-12) & (np.abs(g2) < np.pi / 2 - 1e-12)
    assert mu >= np.nanmax(np.where(~low, vals, np.nan)) - 1e-9


def test_two_grid_optimizer_beats_coarse_grid_scan():
    st = fd_stencil(pde_coefficients(0.1, 0.0))
    fn = lambda u, v: symbol_schwarz_2x2(st, u, v)
    rho = two_grid_factor(st, fn)
    grid = np.linspace(-np.pi / 2, np.pi / 2, 257)
    g1, g2 = np.meshgrid(grid, grid, indexing="ij")
    radii = two_grid_symbol(st, fn, g1, g2).spectral_radius()
    assert rho >= np.nanmax(radii) - 1e-9


def test_two_grid_symbol_edge_cases():
    st = fd_stencil(pde_coefficients(1.0, 0.0))
    zero = lambda u, v: np.zeros_like(np.asarray(u, dtype=float))
    sym = two_grid_symbol(st, zero, 0.4, 0.7)
    np.testing.assert_array_equal(sym.matrix, np.zeros((4, 4)))
    sym0 = two_grid_symbol(st, None, 0.0, 0.0)
    assert sym0.excluded  # A vanishes at the zero frequency
    assert np.isnan(sym0.spectral_radius())


def test_two_grid_symbol_matches_periodic_mode_oracle():
    # on a periodic grid damped Jacobi and the bilinear transfers are exactly
    # translation invariant, so each quadruple of aliasing Fourier modes spans
    # an invariant subspace; the dense two-grid operator restricted to that
    # subspace must reproduce the 4x4 symbol to machine precision
    st = fd_stencil(pde_coefficients(0.2, 0.55))
    from schwarzmg.model import stencil_symbol

    nf = 32
    omega = 0.8
    jac = lambda u, v: 1.0 - omega * stencil_symbol(st, u, v) / st.c

    def circulant(npts, offsets):
        a = np.zeros((npts * npts, npts * npts))
        for (dx, dy), val in offsets:
            for jy in range(npts):
                for jx in range(npts):
                    a[jy * npts + jx, ((jy + dy) % npts) * npts + (jx + dx) % npts] += val
        return a

    a0 = circulant(nf, st.offsets())
    nc = nf // 2
    p = np.zeros((nf * nf, nc * nc))
    wt = {-1: 0.5, 0: 1.0, 1: 0.5}
    for cy in range(nc):
        for cx in range(nc):
            for dy, wy in wt.items():
                for dx, wx in wt.items():
                    p[((2 * cy + dy) % nf) * nf + (2 * cx + dx) % nf, cy * nc + cx] = wx * wy
    r = p.T
    s = np.eye(nf * nf) - omega * a0 / st.c
    cgc = np.eye(nf * nf) - p @ np.linalg.solve(r @ a0 @ p, r @ a0)
    e = s @ cgc @ s

    w1, w2 = np.pi / 4, np.pi / 4  # resolved exactly by the 32-point grid
    h1, h2 = harmonics(w1, w2)
    j = np.arange(nf)
    v = np.stack(
        [np.exp(1j * (u * j[None, :] + w * j[:, None])).ravel() for u, w in zip(h1, h2)],
        axis=1,
    )
    m_dense = np.linalg.pinv(v) @ (e @ v)
    m_lfa = two_grid_symbol(st, jac, w1, w2).matrix
    np.testing.assert_allclose(m_dense, m_lfa, atol=1e-11)


def test_dirichlet_two_grid_bounded_by_fourier_prediction():
    st = fd_stencil(pde_coefficients(1.0, 0.0))
    from schwarzmg.transfer import build_transfers

    rho_lfa = two_grid_factor(st, lambda u, v: symbol_gs(st, u, v))
    dense = []
    for n0 in (16, 32):
        a = assemble(st, GridSpec(n0)).matrix.toarray()
        n = a.shape[0]
        s = np.eye(n) - np.linalg.solve(np.tril(a), a)
        pair = build_transfers(n0)
        p, r = pair.P.toarray(), pair.R.toarray()
        cgc = np.eye(n) - p @ np.linalg.solve(r @ a @ p, r @ a)
        dense.append(np.abs(np.linalg.eigvals(s @ cgc @ s)).max())
    # finite-grid factors approach the infinite-grid bound from below
    assert dense[0] < dense[1] < rho_lfa


def test_two_grid_factor_tracks_squared_smoothing_factor():
    st = fd_stencil(pde_coefficients(1e-2, 0.0))
    fn = lambda u, v: symbol_schwarz_2x2(st, u, v)
    mu = smoothing_factor(fn)
    rho = two_grid_factor(st, fn)
    assert abs(rho - mu * mu) < 0.03


def test_rotated_anisotropy_discretization_contrast():
    # at 45-degree anisotropy the 9-point stencil keeps the 2x2 smoother
    # effective while the 5-point stencil loses it entirely
    st_fd = fd_stencil(pde_coefficients(1e-4, np.pi / 4))
    st_fe = fe_stencil(pde_coefficients(1e-4, np.pi / 4))
    mu_fd = smoothing_factor(lambda u, v: symbol_schwarz_2x2(st_fd, u, v))
    mu_fe = smoothing_factor(lambda u, v: symbol_schwarz_2x2(st_fe, u, v))
    assert mu_fd > 0.95
    assert mu_fe < 0.9


def test_system_solution_first_component_is_symbol():
    st = fd_stencil(pde_coefficients(0.2, 0.5))
    sys = schwarz_2x2_system(st, 0.3, 2.1)
    assert sys.matrix.shape[-2:] == (4, 4)
    sol = sys.solve()
    assert sol.shape[-1] == 4
    assert sys.symbol() == sol[..., 0]
    assert abs(sys.symbol() - symbol_schwarz_2x2(st, 0.3, 2.1)) < 1e-14
