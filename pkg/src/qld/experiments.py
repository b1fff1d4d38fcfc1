"""End-to-end experiment pipelines: difference fields, width scans, ratios.

The difference-field pipeline compares the classical descriptor field with
thimble-averaged quantum fields at one or more mode cutoffs and writes LDG1
grids plus a manifest.  The width-scan pipeline estimates the manifold
broadening against the analytic law over a list of cutoffs and writes a CSV
table.  Every output is reproducible from its manifest alone.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field

import numpy as np

from .descriptors import (
    GridSpec,
    LDField,
    QuadratureRule,
    classical_ld_field,
    default_steps,
)
from .dynamics import SaddleParams, TimeGrid
from .gridio import (
    RATIO_CHECK_HEADER,
    WIDTH_SCAN_HEADER,
    sha256_of,
    write_csv,
    write_grid_file,
    write_manifest,
)
from .modes import analytic_width, width_ratio
from .thimble import SamplerConfig, mc_width_estimate, quantum_ld_field

NORMALIZATIONS = ("max_abs", "none", "zscore")

DEFAULT_SEED = 20260809
DEFAULT_SCAN_MODES = (10, 25, 50, 100, 200, 400, 800)


class GridMismatchError(ValueError):
    """Difference requested between fields that do not share a grid or (lam, T)."""


@dataclass(frozen=True)
class WidthScanRow:
    N: int
    sigma_mc: float
    sigma_std_error: float
    sigma_theory: float
    rel_err: float

    def as_tuple(self):
        return (self.N, self.sigma_mc, self.sigma_std_error, self.sigma_theory, self.rel_err)


@dataclass(frozen=True)
class RatioRow:
    N: int
    mc_ratio: float
    theory_ratio: float
    rel_err: float

    def as_tuple(self):
        return (self.N, self.mc_ratio, self.theory_ratio, self.rel_err)


@dataclass(frozen=True)
class DiffFieldConfig:
    """Everything a difference-field run needs."""

    grid: GridSpec
    params: SaddleParams
    mode_counts: tuple[int, ...]
    samples: int
    seed: int = DEFAULT_SEED
    sharing: str = "shared"
    antithetic: bool = True
    normalization: str = "max_abs"

    def __post_init__(self):
        object.__setattr__(self, "mode_counts", tuple(self.mode_counts))
        if not self.mode_counts or any(n < 1 for n in self.mode_counts):
            raise ValueError("mode_counts must be a non-empty list of positive cutoffs")
        if self.normalization not in NORMALIZATIONS:
            raise ValueError(f"normalization must be one of {NORMALIZATIONS}")


def difference_field(
    quantum: LDField, classical: LDField, normalization: str = "max_abs"
) -> LDField:
    """Normalized quantum-minus-classical field on a common grid."""
    if normalization not in NORMALIZATIONS:
        raise ValueError(f"normalization must be one of {NORMALIZATIONS}")
    if quantum.grid != classical.grid:
        raise GridMismatchError(
            f"grids differ: {quantum.grid} vs {classical.grid}"
        )
    for key in ("lambda", "T"):
        a, b = quantum.meta.get(key), classical.meta.get(key)
        if a is not None and b is not None and a != b:
            raise GridMismatchError(f"fields disagree on {key}: {a} vs {b}")

    d = quantum.values - classical.values
    if normalization == "max_abs":
        peak = float(np.max(np.abs(d)))
        if peak > 0:
            d = d / peak
    elif normalization == "zscore":
        spread = float(np.std(d))
        d = (d - float(np.mean(d))) / spread if spread > 0 else np.zeros_like(d)

    meta = dict(quantum.meta)
    meta["normalization"] = normalization
    return LDField(grid=quantum.grid, values=d, kind="difference", meta=meta)


def derive_seed(seed: int, *key: int) -> int:
    """Child seed for an independent sub-run (per cutoff, per system)."""
    ss = np.random.SeedSequence(entropy=seed, spawn_key=tuple(int(k) for k in key))
    return int(ss.generate_state(1, np.uint64)[0])


def width_scan(
    N_list,
    params: SaddleParams,
    samples: int,
    seed: int = DEFAULT_SEED,
    antithetic: bool = True,
    steps: int | None = None,
) -> list[WidthScanRow]:
    """Monte Carlo vs analytic manifold width over an ascending cutoff list.

    Each cutoff runs on its own derived seed, so the scan points carry
    independent statistical errors.
    """
    N_list = list(N_list)
    if not N_list:
        raise ValueError("N_list must not be empty")
    if any(n < 1 for n in N_list) or sorted(N_list) != N_list:
        raise ValueError(f"N_list must be ascending positive cutoffs, got {N_list}")

    rows = []
    for n in N_list:
        config = SamplerConfig.for_params(
            params, n, samples, derive_seed(seed, n), antithetic=antithetic, steps=steps
        )
        sigma_mc, sigma_se = mc_width_estimate(params, config)
        sigma_th = analytic_width(n, params)
        rows.append(
            WidthScanRow(
                N=n,
                sigma_mc=sigma_mc,
                sigma_std_error=sigma_se,
                sigma_theory=sigma_th,
                rel_err=abs(sigma_mc - sigma_th) / sigma_th,
            )
        )
    return rows


def ratio_check(
    params1: SaddleParams,
    params2: SaddleParams,
    N_list,
    samples: int,
    seed: int = DEFAULT_SEED,
    antithetic: bool = True,
) -> list[RatioRow]:
    """MC width ratio of two systems at equal cutoff vs the analytic ratio.

    The analytic column is constant in N: the cutoff dependence cancels
    exactly between systems.
    """
    N_list = list(N_list)
    if not N_list:
        raise ValueError("N_list must not be empty")
    theory = width_ratio(params1, params2)
    rows = []
    for n in N_list:
        cfg1 = SamplerConfig.for_params(
            params1, n, samples, derive_seed(seed, n, 1), antithetic=antithetic
        )
        cfg2 = SamplerConfig.for_params(
            params2, n, samples, derive_seed(seed, n, 2), antithetic=antithetic
        )
        s1, _ = mc_width_estimate(params1, cfg1)
        s2, _ = mc_width_estimate(params2, cfg2)
        mc = s1 / s2
        rows.append(
            RatioRow(N=n, mc_ratio=mc, theory_ratio=theory, rel_err=abs(mc - theory) / theory)
        )
    return rows


def _grid_entries(grid: GridSpec) -> dict:
    return {
        "grid.nq": grid.nq,
        "grid.np": grid.np,
        "grid.q_min": grid.q_min,
        "grid.q_max": grid.q_max,
        "grid.p_min": grid.p_min,
        "grid.p_max": grid.p_max,
    }


def fig1_pipeline(config: DiffFieldConfig, out_dir, workers: int | None = None) -> dict:
    """Classical field once, then a quantum and a difference field per cutoff.

    Writes LDG1 files and a manifest with all parameters, the seed and the
    sha256 of every grid file.  Returns {"manifest": path, "files": {...}}.
    """
    os.makedirs(out_dir, exist_ok=True)
    params = config.params

    steps_max = max(default_steps(n) for n in config.mode_counts)
    quad = QuadratureRule.trapezoid(TimeGrid(params.T, steps_max))
    fields = {"classical.ldg": classical_ld_field(config.grid, params, quad, workers)}

    for n in config.mode_counts:
        scfg = SamplerConfig.for_params(
            params, n, config.samples, config.seed, config.sharing, config.antithetic
        )
        quantum = quantum_ld_field(config.grid, params, scfg, workers=workers)
        fields[f"quantum_N{n}.ldg"] = quantum
        fields[f"diff_N{n}.ldg"] = difference_field(
            quantum, fields["classical.ldg"], config.normalization
        )

    paths = {}
    checksums = {}
    for name, fld in fields.items():
        path = os.path.join(out_dir, name)
        write_grid_file(fld, path)
        paths[name] = path
        checksums[name] = sha256_of(path)

    entries = {
        "pipeline": "fig1",
        "lambda": params.lam,
        "T": params.T,
        "hbar": params.hbar,
        **_grid_entries(config.grid),
        "mode_counts": ",".join(str(n) for n in config.mode_counts),
        "samples": config.samples,
        "seed": config.seed,
        "sharing": config.sharing,
        "antithetic": config.antithetic,
        "normalization": config.normalization,
        "classical_quad_steps": steps_max,
    }
    manifest = os.path.join(out_dir, "manifest.txt")
    write_manifest(manifest, entries, checksums)
    return {"manifest": manifest, "files": paths}


def fig2_pipeline(
    params: SaddleParams,
    out_dir,
    N_list=DEFAULT_SCAN_MODES,
    samples: int = 1200,
    seed: int = DEFAULT_SEED,
    antithetic: bool = True,
) -> dict:
    """Width scan serialized as CSV plus a manifest."""
    os.makedirs(out_dir, exist_ok=True)
    rows = width_scan(N_list, params, samples, seed, antithetic)
    csv_path = os.path.join(out_dir, "width_scan.csv")
    write_csv((r.as_tuple() for r in rows), csv_path, WIDTH_SCAN_HEADER)

    entries = {
        "pipeline": "fig2",
        "lambda": params.lam,
        "T": params.T,
        "hbar": params.hbar,
        "mode_counts": ",".join(str(n) for n in N_list),
        "samples": samples,
        "seed": seed,
        "antithetic": antithetic,
    }
    manifest = os.path.join(out_dir, "manifest.txt")
    write_manifest(manifest, entries, {"width_scan.csv": sha256_of(csv_path)})
    return {"manifest": manifest, "files": {"width_scan.csv": csv_path}, "rows": rows}


def desk_fig1_config(seed: int = DEFAULT_SEED) -> DiffFieldConfig:
    """Minutes-scale preset: 64x64 grid on [-2, 2]^2, N = 10, 200 samples.

    The domain extends past 3 sigma_rms from both manifolds so that band
    statistics around the broadened ridges have a far region to compare to.
    """
    return DiffFieldConfig(
        grid=GridSpec(-2.0, 2.0, -2.0, 2.0, 64, 64),
        params=SaddleParams(lam=3.0, T=8.0 / 3.0),
        mode_counts=(10,),
        samples=200,
        seed=seed,
    )


def paper_fig1_config(seed: int = DEFAULT_SEED) -> DiffFieldConfig:
    """Full-scale preset: 400x400 grid, N in {10, 800}, 1200 samples.

    Compute-heavy; expect hours rather than minutes.
    """
    return DiffFieldConfig(
        grid=GridSpec(-1.0, 1.0, -1.0, 1.0, 400, 400),
        params=SaddleParams(lam=3.0, T=8.0 / 3.0),
        mode_counts=(10, 800),
        samples=1200,
        seed=seed,
    )


def fig2_preset(preset: str = "paper") -> dict:
    if preset == "desk":
        return {"N_list": DEFAULT_SCAN_MODES, "samples": 400}
    if preset == "paper":
        return {"N_list": DEFAULT_SCAN_MODES, "samples": 1200}
    raise ValueError(f"unknown preset {preset!r}")
