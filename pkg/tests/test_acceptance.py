"""Acceptance suite.

Each test exercises one numbered criterion at its stated tolerance and prints
a single pass/fail line (run with ``pytest tests/test_acceptance.py -v -s``).
Criterion 12 concerns the rendering frontend and is covered by its own test
suite under frontend/ (``npm test``); it is reported here as a skip.
"""

import math
import time

import numpy as np
import pytest

from qld.descriptors import GridSpec, QuadratureRule, classical_ld_point
from qld.dynamics import PhasePoint, SaddleParams, TimeGrid, saddle_field_spec
from qld.experiments import (
    DEFAULT_SEED,
    desk_fig1_config,
    fig1_pipeline,
    ratio_check,
    width_scan,
)
from qld.gridio import read_grid_file
from qld.modes import (
    ModeBasis,
    analytic_width,
    closed_form_transverse_variance,
    mode_eval,
    mode_second_deriv,
    mode_wavenumber,
    transverse_coeff,
    width_ratio,
)
from qld.thimble import SamplerConfig, quantum_ld_point, sample_matrix

PARAMS = SaddleParams(3.0, 8.0 / 3.0)
SEED = DEFAULT_SEED


def report(num, name, ok, detail=""):
    print(f"[criterion {num:2d}] {name}: {'PASS' if ok else 'FAIL'}  {detail}")
    assert ok, f"criterion {num} ({name}) failed: {detail}"


def trap(values, t):
    h = t[1] - t[0]
    return h * (np.sum(values) - 0.5 * (values[0] + values[-1]))


@pytest.fixture(scope="module")
def width_rows():
    start = time.perf_counter()
    rows = width_scan([10, 50, 100, 200, 400, 800], PARAMS, samples=1200, seed=SEED)
    return rows, time.perf_counter() - start


@pytest.fixture(scope="module")
def desk_runs(tmp_path_factory):
    config = desk_fig1_config()
    run1 = fig1_pipeline(config, tmp_path_factory.mktemp("fig1_w1"), workers=1)
    run2 = fig1_pipeline(config, tmp_path_factory.mktemp("fig1_w2"), workers=2)
    return config, run1, run2


def test_01_width_law(width_rows):
    rows, elapsed = width_rows
    picked = {r.N: r for r in rows if r.N in (10, 100, 400, 800)}
    errs = [picked[n].rel_err for n in (10, 100, 400, 800)]
    ok = max(errs) <= 0.02 and sum(errs) / len(errs) <= 0.01 and elapsed < 60.0
    report(
        1,
        "width law (Tlam=8, S=1200, antithetic)",
        ok,
        f"max rel {max(errs):.3%}, mean rel {sum(errs) / len(errs):.3%}, {elapsed:.1f}s",
    )


def test_02_analytic_pin():
    w800 = analytic_width(800, PARAMS)
    w10 = analytic_width(10, PARAMS)
    ok = w800 == 5.0 and abs(w10 - math.sqrt(10.0 / 32.0)) <= 1e-15
    report(2, "analytic width pins", ok, f"w(800)={w800!r}, w(10)={w10!r}")


def test_03_transverse_time_average_lemma():
    basis = ModeBasis(100, PARAMS)
    t = np.linspace(-PARAMS.T, PARAMS.T, 32_769)
    worst = 0.0
    for n in (1, 7, 100):
        a = transverse_coeff(n, t, basis)
        avg = trap(a * a, t) / (2.0 * PARAMS.T)
        k2 = mode_wavenumber(n, PARAMS.T) ** 2
        expected = (k2 + PARAMS.lam**2) / (2.0 * PARAMS.T * PARAMS.lam**2)
        worst = max(worst, abs(avg - expected) / expected)
    report(3, "a_n^2 time-average lemma", worst <= 1e-8, f"worst rel {worst:.2e}")


def test_04_mc_variance_profile():
    basis = ModeBasis(50, PARAMS)
    config = SamplerConfig(basis, TimeGrid(PARAMS.T, 4096), 100_000, seed=SEED + 4,
                           antithetic=False)
    probes = np.linspace(-PARAMS.T, PARAMS.T, 16)
    a_probe = basis.transverse_table(probes)
    draws = sample_matrix(config)
    mc = 0.5 * np.mean((draws @ a_probe.T) ** 2, axis=0)
    expected = closed_form_transverse_variance(probes, basis)
    rel = np.abs(mc - expected) / expected
    report(4, "MC variance profile (N=50, 1e5 draws)", float(np.max(rel)) <= 0.05,
           f"worst rel {np.max(rel):.3%} over 16 probe times")


def test_05_ratio_law():
    params2 = SaddleParams(2.0, 1.0)  # lam2 T2 = 2 against lam1 T1 = 8
    theory = width_ratio(PARAMS, params2)
    rows = ratio_check(PARAMS, params2, [50, 200], samples=5000, seed=SEED + 5)
    constant = all(r.theory_ratio == theory for r in rows)
    mc_ok = all(r.rel_err <= 0.03 for r in rows)
    ok = theory == 0.5 and constant and mc_ok
    report(5, "cutoff-independent ratio law", ok,
           f"theory {theory}, mc rel errs {[f'{r.rel_err:.3%}' for r in rows]}")


def test_06_classical_limit():
    rng = np.random.default_rng(SEED + 6)
    points = rng.uniform(-1.2, 1.2, size=(20, 2))

    cfg0 = SamplerConfig.for_params(PARAMS, 0, 2, SEED)
    quad = QuadratureRule.trapezoid(cfg0.tgrid)
    worst_n0 = 0.0
    for q0, p0 in points:
        x0 = PhasePoint(q0, p0)
        classical = classical_ld_point(x0, PARAMS, quad)
        worst_n0 = max(worst_n0, abs(quantum_ld_point(x0, PARAMS, cfg0) - classical)
                       / classical)

    tiny = SaddleParams(PARAMS.lam, PARAMS.T, hbar=1e-16)
    cfg_tiny = SamplerConfig.for_params(tiny, 16, 64, SEED)
    worst_h = 0.0
    for q0, p0 in points:
        x0 = PhasePoint(q0, p0)
        classical = classical_ld_point(x0, tiny, quad)
        worst_h = max(worst_h, abs(quantum_ld_point(x0, tiny, cfg_tiny) - classical)
                      / classical)

    ok = worst_n0 <= 1e-10 and worst_h <= 1e-10
    report(6, "classical limit (N=0 and hbar<=1e-8)", ok,
           f"N=0 worst rel {worst_n0:.2e}, hbar=1e-16 worst rel {worst_h:.2e}")


def test_07_generic_oracle_equivalence():
    from qld.descriptors import generic_ld_point

    rng = np.random.default_rng(SEED + 7)
    field = saddle_field_spec(PARAMS)
    steps = 4096
    quad = QuadratureRule.trapezoid(TimeGrid(PARAMS.T, steps))
    h = 2.0 * PARAMS.T / steps
    root_lam = math.sqrt(PARAMS.lam)
    worst = 0.0
    for q0, p0 in rng.uniform(-1.0, 1.0, size=(20, 2)):
        generic = generic_ld_point([q0, p0], field, PARAMS.T, h)
        specialized = root_lam * classical_ld_point(PhasePoint(q0, p0), PARAMS, quad)
        worst = max(worst, abs(generic - specialized) / specialized)
    report(7, "generic RK4 engine vs closed-form saddle engine", worst <= 1e-6,
           f"worst rel {worst:.2e} over 20 points")


def test_08_basis_health():
    n_modes = 200
    basis = ModeBasis(n_modes, PARAMS)
    grid = TimeGrid(PARAMS.T, 16 * n_modes)
    t = grid.nodes()
    phi = basis.eval_table(t)
    w = np.full(t.shape, grid.h)
    w[0] = w[-1] = grid.h / 2.0
    gram_err = float(np.max(np.abs(phi.T @ (phi * w[:, None]) - np.eye(n_modes))))

    lam2 = PARAMS.lam**2
    residual = 0.0
    for n in (1, 50, 200):
        k2 = mode_wavenumber(n, PARAMS.T) ** 2
        r = (-mode_second_deriv(n, t, PARAMS.T) + lam2 * mode_eval(n, t, PARAMS.T)
             - (k2 + lam2) * mode_eval(n, t, PARAMS.T))
        residual = max(residual, float(np.max(np.abs(r))))

    ok = gram_err <= 1e-8 and residual <= 1e-8
    report(8, "basis health (Gram + eigen-relation)", ok,
           f"gram err {gram_err:.2e}, SL residual {residual:.2e}")


def test_09_determinism_across_worker_counts(desk_runs):
    _, run1, run2 = desk_runs
    same = True
    for name in sorted(run1["files"]):
        with open(run1["files"][name], "rb") as fa, open(run2["files"][name], "rb") as fb:
            same = same and fa.read() == fb.read()
    report(9, "desk fig1 byte-identical across worker counts", same,
           f"{len(run1['files'])} LDG1 files compared")


def test_10_sqrt_n_scaling(width_rows):
    rows, _ = width_rows
    slope = float(np.polyfit(np.log([r.N for r in rows]),
                             np.log([r.sigma_mc for r in rows]), 1)[0])
    report(10, "sqrt(N) scaling of MC widths", abs(slope - 0.5) <= 0.02,
           f"slope {slope:.4f}")


def test_11_difference_band_statistics(desk_runs):
    config, run1, _ = desk_runs
    diff = read_grid_file(run1["files"]["diff_N10.ldg"])
    qq, pp = np.meshgrid(diff.grid.q_nodes(), diff.grid.p_nodes())
    sigma = analytic_width(10, config.params)
    details = []
    ok = True
    for sign, name in ((1.0, "p=+q"), (-1.0, "p=-q")):
        u = (pp - sign * qq) / math.sqrt(2.0)
        band = np.abs(u) < sigma / 2.0
        far = np.abs(u) > 3.0 * sigma
        assert band.any() and far.any()
        band_mean = float(diff.values[band].mean())
        far_mean = float(diff.values[far].mean())
        ok = ok and band_mean > far_mean
        details.append(f"{name}: band {band_mean:.4f} > far {far_mean:.4f}")
    report(11, "difference field concentrates on broadened manifolds", ok,
           "; ".join(details))


def test_12_frontend_rendering():
    print("[criterion 12] heatmap/width-curve rendering: covered by frontend/ "
          "vitest suite (npm test)")
    pytest.skip("secondary component; run `npm test` inside frontend/")
