import math

import numpy as np
import pytest

from qld.dynamics import SaddleParams, TimeGrid
from qld.modes import (
    ModeBasis,
    analytic_width,
    closed_form_transverse_variance,
    fluctuation_action_thimble,
    mode_deriv,
    mode_eval,
    mode_second_deriv,
    mode_variance,
    mode_wavenumber,
    transverse_coeff,
    width_ratio,
)

PARAMS = SaddleParams(3.0, 8.0 / 3.0)


def trap(values, t):
    h = t[1] - t[0]
    return h * (np.sum(values) - 0.5 * (values[0] + values[-1]))


def test_wavenumber_values():
    assert mode_wavenumber(1, 8.0 / 3.0) == pytest.approx(0.5890486225480862, rel=1e-15)
    assert mode_wavenumber(2, math.pi / 2.0) == pytest.approx(2.0, rel=1e-15)


def test_wavenumber_monotonic():
    ks = [mode_wavenumber(n, PARAMS.T) for n in range(1, 30)]
    assert all(b > a for a, b in zip(ks, ks[1:]))


def test_wavenumber_rejects_nonpositive_index():
    with pytest.raises(ValueError):
        mode_wavenumber(0, 1.0)


def test_mode_dirichlet_boundaries():
    for n in (1, 2, 7, 100):
        assert mode_eval(n, -PARAMS.T, PARAMS.T) == 0.0
        assert abs(mode_eval(n, PARAMS.T, PARAMS.T)) < 1e-12


def test_mode_value_at_center():
    # T = pi/2 makes k_1 = 1, so phi_1(0) = sin(pi/2) / sqrt(pi/2)
    assert mode_eval(1, 0.0, math.pi / 2.0) == pytest.approx(0.7978845608028654, rel=1e-14)


def test_mode_deriv_matches_finite_difference():
    eps = 1e-6
    for n in (1, 5, 40):
        for t in (-1.7, 0.0, 0.9):
            fd = (mode_eval(n, t + eps, PARAMS.T) - mode_eval(n, t - eps, PARAMS.T)) / (2 * eps)
            assert mode_deriv(n, t, PARAMS.T) == pytest.approx(fd, rel=1e-6, abs=1e-8)


def test_mode_second_deriv_matches_finite_difference():
    eps = 1e-5
    for n in (1, 5, 40):
        for t in (-1.7, 0.0, 0.9):
            fd = (
                mode_deriv(n, t + eps, PARAMS.T) - mode_deriv(n, t - eps, PARAMS.T)
            ) / (2 * eps)
            assert mode_second_deriv(n, t, PARAMS.T) == pytest.approx(fd, rel=1e-7, abs=1e-7)


def test_orthonormality_by_dense_quadrature():
    n_modes = 40
    basis = ModeBasis(n_modes, PARAMS)
    grid = TimeGrid(PARAMS.T, 16 * n_modes)
    t = grid.nodes()
    phi = basis.eval_table(t)
    w = np.full(t.shape, grid.h)
    w[0] = w[-1] = grid.h / 2.0
    gram = phi.T @ (phi * w[:, None])
    assert np.max(np.abs(gram - np.eye(n_modes))) < 1e-8


def test_sturm_liouville_eigen_relation():
    lam2 = PARAMS.lam**2
    t = np.linspace(-PARAMS.T, PARAMS.T, 501)
    for n in (1, 7, 100):
        k2 = mode_wavenumber(n, PARAMS.T) ** 2
        residual = (
            -mode_second_deriv(n, t, PARAMS.T)
            + lam2 * mode_eval(n, t, PARAMS.T)
            - (k2 + lam2) * mode_eval(n, t, PARAMS.T)
        )
        assert np.max(np.abs(residual)) < 1e-8


def test_mode_variance_value():
    assert mode_variance(1, PARAMS) == pytest.approx(0.32095934217662564, rel=1e-14)


def test_mode_variance_bounds_and_decay():
    for n in (1, 10, 1000):
        s2 = mode_variance(n, PARAMS)
        assert 0 < s2 <= PARAMS.hbar / PARAMS.lam
        assert s2 <= PARAMS.hbar * PARAMS.lam / mode_wavenumber(n, PARAMS.T) ** 2
    assert mode_variance(1000, PARAMS) < 1e-4


def test_mode_variance_scales_with_hbar():
    small = SaddleParams(PARAMS.lam, PARAMS.T, hbar=1e-4)
    assert mode_variance(3, small) == pytest.approx(1e-4 * mode_variance(3, PARAMS), rel=1e-12)


def test_basis_arrays_match_scalar_ops():
    basis = ModeBasis(12, PARAMS)
    assert basis.k[0] == mode_wavenumber(1, PARAMS.T)
    assert basis.sigma2[7] == mode_variance(8, PARAMS)
    t = np.linspace(-PARAMS.T, PARAMS.T, 33)
    assert np.array_equal(basis.eval_table(t)[:, 4], mode_eval(5, t, PARAMS.T))
    assert np.array_equal(basis.deriv_table(t)[:, 4], mode_deriv(5, t, PARAMS.T))
    assert np.array_equal(basis.transverse_table(t)[:, 4], transverse_coeff(5, t, basis))


def test_basis_rejects_negative_cutoff():
    with pytest.raises(ValueError):
        ModeBasis(-1, PARAMS)
    empty = ModeBasis(0, PARAMS)
    assert empty.k.size == 0


def test_transverse_coeff_boundary_value():
    basis = ModeBasis(5, PARAMS)
    for n in (1, 3, 5):
        expected = mode_wavenumber(n, PARAMS.T) / (PARAMS.lam * math.sqrt(PARAMS.T))
        assert transverse_coeff(n, -PARAMS.T, basis) == pytest.approx(expected, rel=1e-13)


def test_transverse_coeff_time_average_identity():
    # (1 / 2T) int a_n^2 dt = (k_n^2 + lam^2) / (2 T lam^2): the lemma behind
    # the width law, checked against a dense independent quadrature
    basis = ModeBasis(100, PARAMS)
    t = np.linspace(-PARAMS.T, PARAMS.T, 32_769)
    for n in (1, 7, 100):
        a = transverse_coeff(n, t, basis)
        avg = trap(a * a, t) / (2.0 * PARAMS.T)
        k2 = mode_wavenumber(n, PARAMS.T) ** 2
        expected = (k2 + PARAMS.lam**2) / (2.0 * PARAMS.T * PARAMS.lam**2)
        assert avg == pytest.approx(expected, rel=1e-8)
    expected_1 = (mode_wavenumber(1, PARAMS.T) ** 2 + 9.0) / 48.0
    assert expected_1 == pytest.approx(0.19472871416095414, rel=1e-14)


def test_transverse_variance_empty_basis():
    assert closed_form_transverse_variance(0.1, ModeBasis(0, PARAMS)) == 0.0


def test_transverse_variance_boundary_value():
    got = closed_form_transverse_variance(-PARAMS.T, ModeBasis(1, PARAMS))
    assert got == pytest.approx(0.002320123341882693, rel=1e-13)


def test_transverse_variance_time_average_gives_width_law():
    t = np.linspace(-PARAMS.T, PARAMS.T, 65_537)
    for n_modes in (1, 10, 100, 800):
        basis = ModeBasis(n_modes, PARAMS)
        profile = closed_form_transverse_variance(t, basis)
        avg = trap(profile, t) / (2.0 * PARAMS.T)
        expected = PARAMS.hbar * n_modes / (4.0 * PARAMS.T * PARAMS.lam)
        assert avg == pytest.approx(expected, rel=1e-6)
        assert math.sqrt(avg) == pytest.approx(analytic_width(n_modes, PARAMS), rel=1e-6)


def test_analytic_width_values():
    assert analytic_width(800, PARAMS) == 5.0
    assert analytic_width(10, PARAMS) == pytest.approx(math.sqrt(10.0 / 32.0), abs=1e-15)
    assert analytic_width(0, PARAMS) == 0.0


def test_analytic_width_sqrt_scaling():
    ns = np.array([10, 50, 100, 200, 400, 800])
    widths = np.array([analytic_width(int(n), PARAMS) for n in ns])
    slope = np.polyfit(np.log(ns), np.log(widths), 1)[0]
    assert slope == pytest.approx(0.5, abs=1e-12)
    assert analytic_width(400, PARAMS) / analytic_width(100, PARAMS) == pytest.approx(
        2.0, rel=1e-14
    )


def test_analytic_width_hbar_collapse():
    frozen = SaddleParams(PARAMS.lam, PARAMS.T, hbar=0.0)
    assert analytic_width(800, frozen) == 0.0


def test_width_ratio_values():
    assert width_ratio(SaddleParams(3.0, 8.0 / 3.0), SaddleParams(2.0, 1.0)) == 0.5
    assert width_ratio(PARAMS, PARAMS) == 1.0


def test_width_ratio_matches_width_quotient():
    p2 = SaddleParams(1.3, 0.7)
    r = width_ratio(PARAMS, p2)
    for n in range(1, 11):
        assert r == pytest.approx(analytic_width(n, PARAMS) / analytic_width(n, p2), rel=1e-14)


def test_action_zero_sample():
    assert fluctuation_action_thimble(np.zeros(4), ModeBasis(4, PARAMS)) == 0.0


def test_action_single_mode_value():
    got = fluctuation_action_thimble(np.array([1.0]), ModeBasis(1, PARAMS))
    assert got == pytest.approx(1.557829713287633, rel=1e-13)


def test_action_rejects_length_mismatch():
    with pytest.raises(ValueError):
        fluctuation_action_thimble(np.zeros(3), ModeBasis(4, PARAMS))


def test_action_is_half_hbar_per_mode_on_average():
    # E[(k^2 + lam^2) y^2 / (2 lam)] = hbar / 2 for each mode
    basis = ModeBasis(20, PARAMS)
    rng = np.random.default_rng(77)
    n_draws = 40_000
    draws = rng.standard_normal((n_draws, 20)) * np.sqrt(basis.sigma2)
    actions = np.array([fluctuation_action_thimble(y, basis) for y in draws[:2000]])
    # vectorized form for the full sample
    coeff = (basis.k**2 + PARAMS.lam**2) / (2.0 * PARAMS.lam)
    acts = (draws * draws) @ coeff
    assert np.allclose(actions, acts[:2000], rtol=1e-12)
    se = PARAMS.hbar * math.sqrt(20.0 / 2.0) / math.sqrt(n_draws)
    assert abs(acts.mean() - PARAMS.hbar * 20.0 / 2.0) < 4.0 * se
