"""Overlapping multiplicative Schwarz sweeps and their dense oracles."""

import numpy as np
import pytest

from schwarzmg.assembly import GridSpec, assemble
from schwarzmg.model import fd_stencil, pde_coefficients
from schwarzmg.schwarz import (
    SchwarzConfig,
    _origins_1d,
    alternating_sweep,
    plan_subdomains,
    sweep,
)

ST = fd_stencil(pde_coefficients(0.1, 0.3))


def _operator(npts):
    return assemble(ST, GridSpec(npts + 1)).matrix.tocsr()


def _dense_propagator(a_dense, plan, w=1.0):
    npts = plan.npts
    n = a_dense.shape[0]
    e = np.eye(n)
    bx, by = plan.config.block
    for ox, oy in zip(plan.origins_x, plan.origins_y):
        jx = ox + np.arange(bx)
        jy = oy + np.arange(by)
        idx = (jy[:, None] * npts + jx[None, :]).ravel()
        t = np.eye(n)
        t[idx, :] -= w * np.linalg.solve(a_dense[np.ix_(idx, idx)], a_dense[idx, :])
        e = t @ e
    return e


def test_config_validation():
    with pytest.raises(ValueError):
        SchwarzConfig(block=(2, 1), overlap=(2, 0))  # overlap must be < block
    with pytest.raises(ValueError):
        SchwarzConfig(block=(2, 1), overlap=(-1, 0))
    with pytest.raises(ValueError):
        SchwarzConfig(block=(1, 1), weight=0.0)
    with pytest.raises(ValueError):
        SchwarzConfig(block=(1, 1), ordering="diagonal")


def test_maximal_overlap_block_count():
    a = _operator(8)
    plan = plan_subdomains(a, 8, SchwarzConfig(block=(2, 2), overlap=(1, 1)))
    assert plan.origins_x.size == 49
    assert set(plan.origins_x) == set(range(7))
    assert set(plan.origins_y) == set(range(7))


def test_final_block_clamped_inward():
    assert list(_origins_1d(8, 3, 0)) == [0, 3, 5]


def test_line_blocks():
    a = _operator(6)
    plan = plan_subdomains(a, 6, SchwarzConfig(block=(6, 1), overlap=(0, 0)))
    assert plan.origins_x.size == 6  # one block per grid line
    assert set(plan.origins_y) == set(range(6))


def test_block_larger_than_grid_rejected():
    with pytest.raises(ValueError):
        plan_subdomains(_operator(4), 4, SchwarzConfig(block=(5, 1)))


def test_point_blocks_reproduce_gauss_seidel():
    a = _operator(5)
    dense = a.toarray()
    rng = np.random.default_rng(0)
    b = rng.standard_normal(25)
    x = rng.standard_normal(25)
    x_gs = x.copy()
    for i in range(25):  # lexicographic Gauss-Seidel, one pass
        x_gs[i] += (b[i] - dense[i] @ x_gs) / dense[i, i]
    plan = plan_subdomains(a, 5, SchwarzConfig(block=(1, 1)))
    got = sweep(a, x.copy(), b, plan)
    np.testing.assert_allclose(got, x_gs, rtol=0, atol=1e-14)


def test_exact_solution_is_fixed_point():
    a = _operator(6)
    rng = np.random.default_rng(1)
    x_exact = rng.standard_normal(36)
    b = a @ x_exact
    for cfg in (SchwarzConfig(block=(1, 1)), SchwarzConfig(block=(3, 2), overlap=(1, 1))):
        plan = plan_subdomains(a, 6, cfg)
        got = sweep(a, x_exact.copy(), b, plan)
        np.testing.assert_allclose(got, x_exact, atol=1e-12)


def test_whole_grid_block_is_direct_solve():
    a = _operator(4)
    rng = np.random.default_rng(2)
    b = rng.standard_normal(16)
    plan = plan_subdomains(a, 4, SchwarzConfig(block=(4, 4)))
    got = sweep(a, np.zeros(16), b, plan)
    np.testing.assert_allclose(got, np.linalg.solve(a.toarray(), b), atol=1e-11)


def test_residual_zero_on_block_after_update():
    # non-overlapping blocks: the final block's residual is exactly fresh
    a = _operator(6)
    rng = np.random.default_rng(3)
    b = rng.standard_normal(36)
    x0 = rng.standard_normal(36)
    plan = plan_subdomains(a, 6, SchwarzConfig(block=(2, 2), overlap=(0, 0)))
    x = sweep(a, x0.copy(), b, plan)
    r = b - a @ x
    jx = plan.origins_x[-1] + np.arange(2)
    jy = plan.origins_y[-1] + np.arange(2)
    idx = (jy[:, None] * 6 + jx[None, :]).ravel()
    assert np.linalg.norm(r[idx]) <= 1e-12 * np.linalg.norm(b - a @ x0)


def test_sweep_matches_dense_propagator():
    a = _operator(5)
    dense = a.toarray()
    rng = np.random.default_rng(4)
    plan = plan_subdomains(a, 5, SchwarzConfig(block=(2, 2), overlap=(1, 1)))
    e = _dense_propagator(dense, plan)
    for _ in range(5):
        x0 = rng.standard_normal(25)
        got = sweep(a, x0.copy(), np.zeros(25), plan)
        np.testing.assert_allclose(got, e @ x0, atol=1e-11)


def test_weight_override_matches_weighted_plan():
    a = _operator(5)
    rng = np.random.default_rng(5)
    b = rng.standard_normal(25)
    x0 = rng.standard_normal(25)
    plain = plan_subdomains(a, 5, SchwarzConfig(block=(2, 1), overlap=(1, 0)))
    weighted = plan_subdomains(a, 5, SchwarzConfig(block=(2, 1), overlap=(1, 0), weight=0.7))
    got = sweep(a, x0.copy(), b, plain, w=0.7)
    np.testing.assert_array_equal(got, sweep(a, x0.copy(), b, weighted))
    e = _dense_propagator(a.toarray(), plain, w=0.7)
    np.testing.assert_allclose(
        sweep(a, x0.copy(), np.zeros(25), plain, w=0.7), e @ x0, atol=1e-11
    )


def test_alternating_sweep_matches_composed_propagators():
    a = _operator(5)
    dense = a.toarray()
    rng = np.random.default_rng(6)
    plan_x = plan_subdomains(a, 5, SchwarzConfig(block=(2, 1), overlap=(1, 0)))
    plan_y = plan_subdomains(
        a, 5, SchwarzConfig(block=(1, 2), overlap=(0, 1), ordering="companion")
    )
    e = _dense_propagator(dense, plan_y) @ _dense_propagator(dense, plan_x)
    for _ in range(5):
        x0 = rng.standard_normal(25)
        got = alternating_sweep(a, x0.copy(), np.zeros(25), plan_x, plan_y)
        np.testing.assert_allclose(got, e @ x0, atol=1e-11)


def test_alternating_sweep_fixed_point():
    a = _operator(5)
    rng = np.random.default_rng(7)
    x_exact = rng.standard_normal(25)
    b = a @ x_exact
    plan_x = plan_subdomains(a, 5, SchwarzConfig(block=(2, 1), overlap=(1, 0)))
    plan_y = plan_subdomains(
        a, 5, SchwarzConfig(block=(1, 2), overlap=(0, 1), ordering="companion")
    )
    got = alternating_sweep(a, x_exact.copy(), b, plan_x, plan_y)
    np.testing.assert_allclose(got, x_exact, atol=1e-12)


def test_companion_ordering_origin_sequence():
    a = _operator(4)
    plan = plan_subdomains(
        a, 4, SchwarzConfig(block=(1, 2), overlap=(0, 1), ordering="companion")
    )
    # second pass runs south->north within a column, east->west over columns
    assert list(plan.origins_x[:3]) == [3, 3, 3]
    assert list(plan.origins_y[:3]) == [0, 1, 2]
