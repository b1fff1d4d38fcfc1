import numpy as np
import pytest

from qld.descriptors import GridSpec, LDField, QuadratureRule, classical_ld_field
from qld.dynamics import SaddleParams, TimeGrid
from qld.experiments import (
    DiffFieldConfig,
    GridMismatchError,
    derive_seed,
    desk_fig1_config,
    difference_field,
    fig1_pipeline,
    fig2_pipeline,
    paper_fig1_config,
    ratio_check,
    width_scan,
)
from qld.gridio import read_grid_file, read_manifest, sha256_of
from qld.modes import analytic_width, width_ratio
from qld.thimble import SamplerConfig, quantum_ld_field

PARAMS = SaddleParams(3.0, 8.0 / 3.0)


def tiny_fields(modes=3, samples=8, seed=5):
    grid = GridSpec(-1.0, 1.0, -1.0, 1.0, 4, 4)
    cfg = SamplerConfig.for_params(PARAMS, modes, samples, seed, steps=512)
    quad = QuadratureRule.trapezoid(cfg.tgrid)
    classical = classical_ld_field(grid, PARAMS, quad)
    quantum = quantum_ld_field(grid, PARAMS, cfg)
    return quantum, classical


def test_difference_of_identical_fields_is_zero():
    _, classical = tiny_fields()
    as_quantum = LDField(classical.grid, classical.values, "quantum", dict(classical.meta))
    diff = difference_field(as_quantum, classical)
    assert diff.kind == "difference"
    assert np.all(diff.values == 0.0)


def test_difference_max_abs_normalization():
    quantum, classical = tiny_fields()
    diff = difference_field(quantum, classical, "max_abs")
    assert np.max(np.abs(diff.values)) == 1.0
    assert np.all(np.abs(diff.values) <= 1.0)


def test_difference_none_keeps_raw_values():
    quantum, classical = tiny_fields()
    diff = difference_field(quantum, classical, "none")
    assert np.array_equal(diff.values, quantum.values - classical.values)


def test_difference_zscore_standardizes():
    quantum, classical = tiny_fields()
    diff = difference_field(quantum, classical, "zscore")
    assert abs(float(np.mean(diff.values))) < 1e-12
    assert float(np.std(diff.values)) == pytest.approx(1.0, rel=1e-12)


def test_difference_rejects_grid_mismatch():
    quantum, classical = tiny_fields()
    other_grid = GridSpec(-1.0, 1.0, -1.0, 1.0, 5, 4)
    other = LDField(other_grid, np.zeros((4, 5)), "classical", dict(classical.meta))
    with pytest.raises(GridMismatchError):
        difference_field(quantum, other)


def test_difference_rejects_parameter_mismatch():
    quantum, classical = tiny_fields()
    tampered = LDField(classical.grid, classical.values, "classical", {"lambda": 2.0, "T": 1.0})
    with pytest.raises(GridMismatchError):
        difference_field(quantum, tampered)


def test_difference_rejects_unknown_normalization():
    quantum, classical = tiny_fields()
    with pytest.raises(ValueError):
        difference_field(quantum, classical, "sigmoid")


def test_width_scan_rows():
    rows = width_scan([2, 4], PARAMS, samples=32, seed=1, steps=512)
    assert [r.N for r in rows] == [2, 4]
    for r in rows:
        assert r.sigma_theory == analytic_width(r.N, PARAMS)
        assert r.rel_err == abs(r.sigma_mc - r.sigma_theory) / r.sigma_theory
        assert np.isfinite(r.sigma_mc) and r.sigma_std_error > 0


def test_width_scan_validation():
    with pytest.raises(ValueError):
        width_scan([], PARAMS, samples=8)
    with pytest.raises(ValueError):
        width_scan([4, 2], PARAMS, samples=8)
    with pytest.raises(ValueError):
        width_scan([0, 2], PARAMS, samples=8)


def test_derive_seed_is_stable_and_split():
    assert derive_seed(7, 10) == derive_seed(7, 10)
    assert derive_seed(7, 10) != derive_seed(7, 11)
    assert derive_seed(7, 10, 1) != derive_seed(7, 10, 2)


def test_ratio_check_theory_column():
    p2 = SaddleParams(2.0, 1.0)
    rows = ratio_check(PARAMS, p2, [2, 4], samples=64, seed=3)
    expected = width_ratio(PARAMS, p2)
    assert expected == 0.5
    assert all(r.theory_ratio == expected for r in rows)
    assert all(np.isfinite(r.mc_ratio) for r in rows)


def test_ratio_check_identical_systems():
    rows = ratio_check(PARAMS, PARAMS, [8], samples=2000, seed=4)
    assert rows[0].theory_ratio == 1.0
    assert abs(rows[0].mc_ratio - 1.0) < 0.1  # independent draws on both sides


def test_fig1_pipeline_outputs(tmp_path):
    config = DiffFieldConfig(
        grid=GridSpec(-1.0, 1.0, -1.0, 1.0, 6, 6),
        params=PARAMS,
        mode_counts=(2,),
        samples=8,
        seed=11,
    )
    result = fig1_pipeline(config, tmp_path / "run")
    names = set(result["files"])
    assert names == {"classical.ldg", "quantum_N2.ldg", "diff_N2.ldg"}
    manifest = read_manifest(result["manifest"])
    assert manifest["pipeline"] == "fig1"
    assert float(manifest["lambda"]) == PARAMS.lam
    assert int(manifest["samples"]) == 8
    for name, path in result["files"].items():
        field = read_grid_file(path)
        assert field.grid.nq == 6
        assert manifest[f"sha256.{name}"] == sha256_of(path)


def test_fig1_pipeline_reruns_byte_identical(tmp_path):
    config = DiffFieldConfig(
        grid=GridSpec(-1.0, 1.0, -1.0, 1.0, 5, 5),
        params=PARAMS,
        mode_counts=(2,),
        samples=8,
        seed=11,
    )
    a = fig1_pipeline(config, tmp_path / "a")
    b = fig1_pipeline(config, tmp_path / "b")
    for name in a["files"]:
        with open(a["files"][name], "rb") as fa, open(b["files"][name], "rb") as fb:
            assert fa.read() == fb.read()


def test_fig2_pipeline_outputs(tmp_path):
    result = fig2_pipeline(PARAMS, tmp_path, N_list=[2, 4], samples=16, seed=9)
    csv_path = result["files"]["width_scan.csv"]
    lines = open(csv_path).read().splitlines()
    assert lines[0] == "N,sigma_mc,sigma_std_error,sigma_theory,rel_err"
    assert len(lines) == 3
    manifest = read_manifest(result["manifest"])
    assert manifest["pipeline"] == "fig2"
    assert manifest["sha256.width_scan.csv"] == sha256_of(csv_path)


def test_diff_config_validation():
    with pytest.raises(ValueError):
        DiffFieldConfig(GridSpec(-1, 1, -1, 1, 4, 4), PARAMS, (), 8)
    with pytest.raises(ValueError):
        DiffFieldConfig(GridSpec(-1, 1, -1, 1, 4, 4), PARAMS, (0,), 8)
    with pytest.raises(ValueError):
        DiffFieldConfig(GridSpec(-1, 1, -1, 1, 4, 4), PARAMS, (2,), 8, normalization="nope")


def test_presets():
    desk = desk_fig1_config()
    assert (desk.grid.nq, desk.grid.np) == (64, 64)
    assert desk.mode_counts == (10,) and desk.samples == 200
    assert desk.params.lam == 3.0 and desk.params.T == pytest.approx(8.0 / 3.0)
    paper = paper_fig1_config()
    assert (paper.grid.nq, paper.grid.np) == (400, 400)
    assert paper.mode_counts == (10, 800) and paper.samples == 1200
    assert (paper.grid.q_min, paper.grid.q_max) == (-1.0, 1.0)
