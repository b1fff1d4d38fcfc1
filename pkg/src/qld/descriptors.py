"""Classical Lagrangian descriptors.

A descriptor value is the time integral, over the window [-T, T] centered on
t0 = 0, of a non-negative function of the trajectory.  Two integrands are
provided: the generic one sums sqrt|f_i| over the components of the vector
field, and the saddle-specialized one is sqrt|q| + sqrt|p| along the
closed-form saddle trajectory.  For the saddle system the two differ exactly
by the constant factor sqrt(lam).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import _kernel
from ._parallel import map_indexed, resolve_workers
from .dynamics import (
    MAX_HYPERBOLIC_ARG,
    FlowOverflowError,
    PhasePoint,
    SaddleParams,
    TimeGrid,
    VectorFieldSpec,
    rk4_integrate,
    saddle_trajectory,
)

FIELD_KINDS = ("classical", "quantum", "difference")


@dataclass(frozen=True)
class GridSpec:
    """Regular rectangular lattice of initial conditions, endpoints included."""

    q_min: float
    q_max: float
    p_min: float
    p_max: float
    nq: int
    np: int

    def __post_init__(self):
        if not self.q_min < self.q_max:
            raise ValueError(f"need q_min < q_max, got [{self.q_min}, {self.q_max}]")
        if not self.p_min < self.p_max:
            raise ValueError(f"need p_min < p_max, got [{self.p_min}, {self.p_max}]")
        if self.nq < 2 or self.np < 2:
            raise ValueError(f"need nq, np >= 2, got ({self.nq}, {self.np})")

    @property
    def shape(self) -> tuple[int, int]:
        return (self.np, self.nq)

    def q_nodes(self) -> np.ndarray:
        return np.linspace(self.q_min, self.q_max, self.nq)

    def p_nodes(self) -> np.ndarray:
        return np.linspace(self.p_min, self.p_max, self.np)


@dataclass
class LDField:
    """A scalar descriptor field over a GridSpec.

    ``values`` has shape (np, nq) with q varying fastest; values[i, j] belongs
    to the initial condition (q_nodes[j], p_nodes[i]).  ``meta`` records the
    run parameters (lam, T, modes, samples, seed, ...).
    """

    grid: GridSpec
    values: np.ndarray
    kind: str
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=float)
        if self.kind not in FIELD_KINDS:
            raise ValueError(f"kind must be one of {FIELD_KINDS}, got {self.kind!r}")
        if self.values.shape != self.grid.shape:
            raise ValueError(
                f"values shape {self.values.shape} does not match grid {self.grid.shape}"
            )
        if not np.all(np.isfinite(self.values)):
            raise ValueError("field values must be finite")
        if self.kind in ("classical", "quantum") and np.any(self.values < 0):
            raise ValueError(f"{self.kind} descriptor values must be non-negative")


@dataclass(frozen=True)
class QuadratureRule:
    """Composite quadrature on the nodes of a TimeGrid."""

    kind: str
    grid: TimeGrid

    def __post_init__(self):
        if self.kind not in ("trapezoid", "simpson"):
            raise ValueError(f"unknown quadrature kind {self.kind!r}")

    @classmethod
    def trapezoid(cls, grid: TimeGrid) -> "QuadratureRule":
        return cls("trapezoid", grid)

    @classmethod
    def simpson(cls, grid: TimeGrid) -> "QuadratureRule":
        return cls("simpson", grid)

    def weights(self) -> np.ndarray:
        h = self.grid.h
        m = self.grid.steps
        if self.kind == "trapezoid":
            w = np.full(m + 1, h)
            w[0] = w[-1] = 0.5 * h
        else:
            w = np.empty(m + 1)
            w[0::2] = 2.0 * h / 3.0
            w[1::2] = 4.0 * h / 3.0
            w[0] = w[-1] = h / 3.0
        return w


def default_steps(modes: int = 0) -> int:
    """Time resolution: 4096 floor, 16 nodes per half-period of the top mode."""
    return max(4096, 16 * modes)


def default_quadrature(params: SaddleParams, modes: int = 0) -> QuadratureRule:
    return QuadratureRule.trapezoid(TimeGrid(params.T, default_steps(modes)))


def ld_integrand_generic(x, field: VectorFieldSpec, t: float = 0.0) -> float:
    """sum_i |f_i(x, t)|^(1/2), the descriptor integrand of a generic field."""
    v = np.asarray(field.func(np.atleast_1d(np.asarray(x, dtype=float)), t))
    return float(np.sum(np.sqrt(np.abs(v))))


def ld_integrand_saddle(x: PhasePoint) -> float:
    """|q|^(1/2) + |p|^(1/2), the saddle-specialized descriptor integrand."""
    return float(np.sqrt(abs(x.q)) + np.sqrt(abs(x.p)))


def _resolve_quadrature(params: SaddleParams, quad: QuadratureRule | None) -> QuadratureRule:
    if quad is None:
        quad = default_quadrature(params)
    if abs(quad.grid.T - params.T) > 1e-12 * max(1.0, params.T):
        raise ValueError(
            f"quadrature grid spans [-{quad.grid.T}, {quad.grid.T}] "
            f"but params.T = {params.T}"
        )
    if params.lam * params.T > MAX_HYPERBOLIC_ARG:
        raise FlowOverflowError(
            f"lam * T = {params.lam * params.T:.3g} exceeds the hyperbolic range"
        )
    return quad


def classical_ld_point(
    x0: PhasePoint, params: SaddleParams, quad: QuadratureRule | None = None
) -> float:
    """Classical saddle descriptor at one initial condition.

    Quadrature of sqrt|q_cl(t)| + sqrt|p_cl(t)| along the closed-form flow
    over [-T, T].
    """
    quad = _resolve_quadrature(params, quad)
    q, p = saddle_trajectory(x0, quad.grid.nodes(), params)
    return float(_kernel.classical_quadrature(q, p, quad.weights()))


def classical_ld_field(
    grid: GridSpec,
    params: SaddleParams,
    quad: QuadratureRule | None = None,
    workers: int | None = None,
) -> LDField:
    """Classical descriptor evaluated on every lattice node of ``grid``.

    The sweep is parallel over grid rows; each node is a pure function of its
    coordinates, so the result does not depend on the worker count.
    """
    quad = _resolve_quadrature(params, quad)
    t = quad.grid.nodes()
    w = quad.weights()
    ch = np.cosh(params.lam * t)
    sh = np.sinh(params.lam * t)
    q0 = grid.q_nodes()
    p0 = grid.p_nodes()

    def row(i: int) -> np.ndarray:
        out = np.empty(grid.nq)
        for j in range(grid.nq):
            qcl = q0[j] * ch + p0[i] * sh
            pcl = p0[i] * ch + q0[j] * sh
            out[j] = _kernel.classical_quadrature(qcl, pcl, w)
        return out

    rows = map_indexed(row, grid.np, resolve_workers(workers))
    meta = {
        "lambda": params.lam,
        "T": params.T,
        "hbar": params.hbar,
        "quad_steps": quad.grid.steps,
        "quad_kind": quad.kind,
    }
    return LDField(grid=grid, values=np.vstack(rows), kind="classical", meta=meta)


def generic_ld_point(x0, field: VectorFieldSpec, T: float, h: float) -> float:
    """Generic descriptor by RK4 trajectory plus trapezoid quadrature.

    ``h`` must divide [-T, T] into an even number of steps.  Divergence of
    the RK4 trajectory propagates as DivergenceError.
    """
    steps_real = 2.0 * T / h
    steps = int(round(steps_real))
    if steps < 2 or steps % 2 != 0 or abs(steps_real - steps) > 1e-9 * steps:
        raise ValueError(
            f"h = {h} must divide [-T, T] into an even number of steps "
            f"(got 2T/h = {steps_real})"
        )
    tgrid = TimeGrid(T, steps)
    traj = rk4_integrate(x0, field, tgrid)
    t = tgrid.nodes()
    integrand = np.empty(steps + 1)
    for m in range(steps + 1):
        v = np.asarray(field.func(traj[m], t[m]))
        integrand[m] = np.sum(np.sqrt(np.abs(v)))
    return float(np.dot(QuadratureRule.trapezoid(tgrid).weights(), integrand))
