"""Monte Carlo engine on the rotated (steepest-descent) fluctuation contour.

Mode coefficients are drawn as independent real Gaussians with the thimble
variances, multiplied by the constant phase e^{i pi/4}, and superposed on the
classical saddle trajectory.  Averaging the descriptor functional over draws
gives the quantum descriptor; averaging the squared transverse fluctuation
gives the Monte Carlo manifold width.

Randomness policy: the stream of a draw is derived from the run seed and the
draw's index key through a splittable seed sequence feeding a counter-based
generator, so results are reproducible regardless of evaluation order or
worker count.  In shared mode one sample set (keyed by draw index alone) is
reused at every grid node; in per-point mode the key also carries the node
indices.  Antithetic pairing emits draws in (+y, -y) pairs keyed by the pair
index, which makes the sample set exactly closed under negation.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import _kernel
from ._parallel import map_indexed, resolve_workers
from .descriptors import (
    GridSpec,
    LDField,
    QuadratureRule,
    classical_ld_field,
    classical_ld_point,
    default_steps,
)
from .dynamics import PhasePoint, SaddleParams, TimeGrid, saddle_trajectory
from .modes import ModeBasis

# contour rotation c_n = e^{i pi/4} y_n
THIMBLE_PHASE = np.exp(1j * np.pi / 4.0)

SHARING_MODES = ("shared", "per-point")


class DegenerateManifoldError(ValueError):
    """Transverse coordinate requested where the manifold gradient vanishes."""


@dataclass(frozen=True)
class ModeSample:
    """One draw of real thimble coordinates y_n."""

    y: np.ndarray

    def __post_init__(self):
        y = np.asarray(self.y, dtype=float)
        if y.ndim != 1 or not np.all(np.isfinite(y)):
            raise ValueError("sample must be a finite 1-D coefficient vector")
        object.__setattr__(self, "y", y)


@dataclass
class ComplexPath:
    """Fluctuated phase-space path on a time grid.

    q(t) carries the classical position plus the rotated fluctuation; p(t)
    carries the classical momentum plus its velocity over lam.  At the window
    endpoints the fluctuation vanishes (Dirichlet), so q equals the classical
    value there.
    """

    tgrid: TimeGrid
    q: np.ndarray
    p: np.ndarray


@dataclass(frozen=True)
class SamplerConfig:
    """Sample count, seed, sharing policy, basis and time grid of an MC run.

    ``sharing`` selects whether field sweeps reuse one sample set at every
    grid node ("shared", the default) or draw per node ("per-point").
    Single-point evaluations always use the shared key derivation.
    """

    basis: ModeBasis
    tgrid: TimeGrid
    samples: int
    seed: int
    sharing: str = "shared"
    antithetic: bool = True

    def __post_init__(self):
        if self.samples < 1:
            raise ValueError(f"samples must be >= 1, got {self.samples}")
        if self.antithetic and self.samples % 2 != 0:
            raise ValueError(
                f"antithetic pairing needs an even sample count, got {self.samples}"
            )
        if self.sharing not in SHARING_MODES:
            raise ValueError(f"sharing must be one of {SHARING_MODES}")
        if self.seed < 0:
            raise ValueError(f"seed must be a non-negative integer, got {self.seed}")
        if abs(self.tgrid.T - self.basis.params.T) > 1e-12 * max(1.0, self.basis.params.T):
            raise ValueError("time grid and basis disagree on the horizon T")

    @classmethod
    def for_params(
        cls,
        params: SaddleParams,
        modes: int,
        samples: int,
        seed: int,
        sharing: str = "shared",
        antithetic: bool = True,
        steps: int | None = None,
    ) -> "SamplerConfig":
        """Basis plus a mode-resolving time grid (steps = max(4096, 16 N))."""
        basis = ModeBasis(modes, params)
        tgrid = TimeGrid(params.T, default_steps(modes) if steps is None else steps)
        return cls(basis, tgrid, samples, seed, sharing, antithetic)


def sample_stream(seed: int, key: tuple[int, ...]) -> np.random.Generator:
    """Counter-based generator for one draw, split off (seed, key)."""
    ss = np.random.SeedSequence(entropy=seed, spawn_key=key)
    return np.random.Generator(np.random.Philox(ss))


def sample_modes(stream: np.random.Generator, basis: ModeBasis) -> ModeSample:
    """Draw y_n ~ N(0, sigma_n^2) independently for every mode."""
    return ModeSample(stream.standard_normal(basis.N) * np.sqrt(basis.sigma2))


def sample_matrix(
    config: SamplerConfig, node: tuple[int, int] | None = None
) -> np.ndarray:
    """All thimble draws of a run as an (samples, N) array.

    With antithetic pairing rows (2j, 2j + 1) hold (+y_j, -y_j) where y_j is
    keyed by the pair index j; otherwise row s is keyed by s.  ``node`` adds
    the (row, column) grid indices to every key for per-point sampling.
    """
    prefix = () if node is None else (int(node[0]), int(node[1]))
    out = np.empty((config.samples, config.basis.N))
    scale = np.sqrt(config.basis.sigma2)
    if config.antithetic:
        for j in range(config.samples // 2):
            d = sample_stream(config.seed, prefix + (j,)).standard_normal(config.basis.N)
            d *= scale
            out[2 * j] = d
            out[2 * j + 1] = -d
    else:
        for s in range(config.samples):
            d = sample_stream(config.seed, prefix + (s,)).standard_normal(config.basis.N)
            out[s] = d * scale
    return out


def build_fluctuation(
    y, tgrid: TimeGrid, basis: ModeBasis
) -> tuple[np.ndarray, np.ndarray]:
    """Rotated fluctuation eta(t) and its analytic velocity on the grid nodes.

    eta(t) = e^{i pi/4} sum_n y_n phi_n(t); both returned arrays are the
    constant phase times a real profile, and eta vanishes at the endpoints.
    """
    y = y.y if isinstance(y, ModeSample) else np.asarray(y, dtype=float)
    t = tgrid.nodes()
    eta = THIMBLE_PHASE * (basis.eval_table(t) @ y)
    etadot = THIMBLE_PHASE * (basis.deriv_table(t) @ y)
    return eta, etadot


def fluctuated_path(
    x0: PhasePoint, y, params: SaddleParams, tgrid: TimeGrid, basis: ModeBasis
) -> ComplexPath:
    """Classical trajectory of x0 dressed with one fluctuation draw.

    q(t) = q_cl(t) + eta(t) and p(t) = p_cl(t) + eta'(t) / lam (the momentum
    conjugate to the fluctuated position).
    """
    qcl, pcl = saddle_trajectory(x0, tgrid.nodes(), params)
    eta, etadot = build_fluctuation(y, tgrid, basis)
    return ComplexPath(tgrid=tgrid, q=qcl + eta, p=pcl + etadot / params.lam)


def transverse_fluctuation(y, tgrid: TimeGrid, basis: ModeBasis) -> np.ndarray:
    """du(t) = (e^{i pi/4} / sqrt 2) sum_n y_n a_n(t) on the grid nodes."""
    y = y.y if isinstance(y, ModeSample) else np.asarray(y, dtype=float)
    profile = basis.transverse_table(tgrid.nodes()) @ y
    return (THIMBLE_PHASE / np.sqrt(2.0)) * profile


def transverse_coordinate(g_value: float, g_gradient_norm: float) -> float:
    """Signed normalized distance u = g / ||grad g|| from a manifold g = 0."""
    if not g_gradient_norm > 0:
        raise DegenerateManifoldError(
            f"manifold gradient norm must be positive, got {g_gradient_norm}"
        )
    return g_value / g_gradient_norm


def _resolve_point_quad(config: SamplerConfig, quad: QuadratureRule | None) -> QuadratureRule:
    if quad is None:
        return QuadratureRule.trapezoid(config.tgrid)
    if quad.grid != config.tgrid:
        raise ValueError("quadrature rule must live on the sampler's time grid")
    return quad


class _ThimbleKernel:
    """Precomputed sample and mode tables for descriptor averaging.

    Hoists everything that does not depend on the initial condition: the
    draw matrix, the mode-value tables, the real fluctuation profiles of
    position and momentum, their squares, and the quadrature weights.  The
    tables are read-only afterwards, so one kernel serves any number of
    worker threads.
    """

    def __init__(
        self,
        config: SamplerConfig,
        quad: QuadratureRule | None = None,
        node: tuple[int, int] | None = None,
    ):
        params = config.basis.params
        quad = _resolve_point_quad(config, quad)
        t = config.tgrid.nodes()
        self.config = config
        self.weights = quad.weights()
        self.cosh_t = np.cosh(params.lam * t)
        self.sinh_t = np.sinh(params.lam * t)

        draws = sample_matrix(config, node=node)
        rows = draws[::2] if config.antithetic else draws
        phi = config.basis.eval_table(t)
        dphi = config.basis.deriv_table(t)
        self.rq = rows @ phi.T
        self.rp = (rows @ dphi.T) / params.lam
        self.rq2 = self.rq * self.rq
        self.rp2 = self.rp * self.rp

    def point(self, q0: float, p0: float) -> float:
        qcl = q0 * self.cosh_t + p0 * self.sinh_t
        pcl = p0 * self.cosh_t + q0 * self.sinh_t
        if self.config.antithetic:
            total = _kernel.thimble_quadrature_antithetic(
                qcl, pcl, self.rq, self.rq2, self.rp, self.rp2, self.weights
            )
        else:
            total = _kernel.thimble_quadrature(
                qcl, pcl, self.rq, self.rq2, self.rp, self.rp2, self.weights
            )
        return total / self.config.samples


def _check_params(params: SaddleParams, config: SamplerConfig) -> None:
    if config.basis.params != params:
        raise ValueError("config was built for different saddle parameters")


def quantum_ld_point(
    x0: PhasePoint,
    params: SaddleParams,
    config: SamplerConfig,
    quad: QuadratureRule | None = None,
) -> float:
    """Thimble average of the descriptor functional at one initial condition.

    Mean over the configured draws of the quadrature of
    (q q*)^{1/4} + (p p*)^{1/4} along the fluctuated path.  With an empty
    basis or hbar = 0 this is exactly the classical descriptor.
    """
    _check_params(params, config)
    quad = _resolve_point_quad(config, quad)
    if config.basis.N == 0 or params.hbar == 0:
        return classical_ld_point(x0, params, quad)
    return _ThimbleKernel(config, quad).point(x0.q, x0.p)


def quantum_ld_field(
    grid: GridSpec,
    params: SaddleParams,
    config: SamplerConfig,
    quad: QuadratureRule | None = None,
    workers: int | None = None,
) -> LDField:
    """Quantum descriptor on every lattice node of ``grid``.

    In shared mode the same draws (and precomputed fluctuation tables) are
    reused at every node; in per-point mode each node gets its own draws
    keyed by its grid indices.  Sweeps are thread-parallel over rows and
    deterministic for a fixed (seed, config, grid).
    """
    _check_params(params, config)
    quad = _resolve_point_quad(config, quad)
    meta = {
        "lambda": params.lam,
        "T": params.T,
        "hbar": params.hbar,
        "modes": config.basis.N,
        "samples": config.samples,
        "seed": config.seed,
        "sharing": config.sharing,
        "antithetic": config.antithetic,
        "quad_steps": quad.grid.steps,
        "quad_kind": quad.kind,
    }
    if config.basis.N == 0 or params.hbar == 0:
        base = classical_ld_field(grid, params, quad, workers)
        return LDField(grid=grid, values=base.values, kind="quantum", meta=meta)

    q0 = grid.q_nodes()
    p0 = grid.p_nodes()
    nworkers = resolve_workers(workers)

    if config.sharing == "shared":
        kernel = _ThimbleKernel(config, quad)

        def row(i: int) -> np.ndarray:
            return np.array([kernel.point(q0[j], p0[i]) for j in range(grid.nq)])

    else:

        def row(i: int) -> np.ndarray:
            out = np.empty(grid.nq)
            for j in range(grid.nq):
                out[j] = _ThimbleKernel(config, quad, node=(i, j)).point(q0[j], p0[i])
            return out

    rows = map_indexed(row, grid.np, nworkers)
    return LDField(grid=grid, values=np.vstack(rows), kind="quantum", meta=meta)


def mc_width_estimate(
    params: SaddleParams,
    config: SamplerConfig,
    quad: QuadratureRule | None = None,
) -> tuple[float, float]:
    """Monte Carlo manifold width sigma_rms and its standard error.

    Per draw, |du(t)|^2 is time-averaged by quadrature over [-T, T]; the
    draw mean is the variance estimate and its square root the width.  The
    standard error propagates the spread of the per-draw time averages
    through the square root (delta method); antithetic partners duplicate
    the even observable |du|^2, so the spread is taken over pairs.
    """
    _check_params(params, config)
    quad = _resolve_point_quad(config, quad)
    if config.basis.N == 0 or params.hbar == 0:
        return 0.0, 0.0

    draws = sample_matrix(config)
    rows = draws[::2] if config.antithetic else draws
    a_t = np.ascontiguousarray(config.basis.transverse_table(config.tgrid.nodes()).T)
    w = quad.weights()

    # chunked over draws: the (draws, nodes) profile table can be huge
    v = np.empty(len(rows))
    block = max(1, (1 << 22) // (config.tgrid.steps + 1))
    for start in range(0, len(rows), block):
        g = rows[start : start + block] @ a_t
        v[start : start + block] = 0.5 * (g * g) @ w / (2.0 * params.T)

    var_hat = float(np.mean(v))
    sigma = float(np.sqrt(var_hat))
    if len(v) < 2 or sigma == 0.0:
        return sigma, 0.0
    se_v = float(np.std(v, ddof=1) / np.sqrt(len(v)))
    return sigma, se_v / (2.0 * sigma)
