"""Hamiltonian saddle dynamics in closed form, plus a generic fixed-step RK4
engine for arbitrary phase-space vector fields (used as a cross-check oracle).

The saddle system is H(q, p) = (lam/2) (p^2 - q^2), whose flow is hyperbolic
rotation: q(t) = q0 cosh(lam t) + p0 sinh(lam t), p(t) = p0 cosh(lam t)
+ q0 sinh(lam t).  The invariant manifolds are the lines p = +/- q.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

# cosh/sinh overflow in double precision shortly after exp(709)
MAX_HYPERBOLIC_ARG = 700.0


class FlowOverflowError(ValueError):
    """|lam * t| exceeds the double-precision hyperbolic range."""


class DivergenceError(RuntimeError):
    """Numerical trajectory left the finite range.

    Carries ``node_index``, the index of the first non-finite node on the
    time grid.
    """

    def __init__(self, message: str, node_index: int):
        super().__init__(message)
        self.node_index = node_index


@dataclass(frozen=True)
class SaddleParams:
    """Parameters of the saddle system on the window [-T, T].

    lam   eigenvalue rate of the hyperbolic fixed point (1/time), > 0
    T     half time-horizon of every descriptor integral (time), > 0
    hbar  action scale multiplying all fluctuation variances; 1 reproduces
          natural units, 0 is the exact classical limit
    """

    lam: float
    T: float
    hbar: float = 1.0

    def __post_init__(self):
        if not (np.isfinite(self.lam) and self.lam > 0):
            raise ValueError(f"lam must be finite and > 0, got {self.lam}")
        if not (np.isfinite(self.T) and self.T > 0):
            raise ValueError(f"T must be finite and > 0, got {self.T}")
        if not (np.isfinite(self.hbar) and self.hbar >= 0):
            raise ValueError(f"hbar must be finite and >= 0, got {self.hbar}")


@dataclass(frozen=True)
class PhasePoint:
    """A point (q, p) of the two-dimensional phase space."""

    q: float
    p: float

    def __post_init__(self):
        if not (np.isfinite(self.q) and np.isfinite(self.p)):
            raise ValueError(f"phase point must be finite, got ({self.q}, {self.p})")

    def as_array(self) -> np.ndarray:
        return np.array([self.q, self.p], dtype=float)


@dataclass(frozen=True)
class TimeGrid:
    """Uniform time grid on [-T, T] with an even number of steps.

    ``steps`` is the number of intervals M; there are M + 1 nodes including
    both endpoints, with t = 0 at the middle node.
    """

    T: float
    steps: int

    def __post_init__(self):
        if not (np.isfinite(self.T) and self.T > 0):
            raise ValueError(f"T must be finite and > 0, got {self.T}")
        if self.steps < 2 or self.steps % 2 != 0:
            raise ValueError(f"steps must be an even integer >= 2, got {self.steps}")

    @property
    def h(self) -> float:
        return 2.0 * self.T / self.steps

    @property
    def mid_index(self) -> int:
        return self.steps // 2

    def nodes(self) -> np.ndarray:
        return np.linspace(-self.T, self.T, self.steps + 1)


@dataclass(frozen=True)
class VectorFieldSpec:
    """A deterministic phase-space vector field x' = f(x, t).

    ``func`` maps (state array of length dim, time) to the velocity array.
    It must be side-effect free.
    """

    dim: int
    func: Callable[[np.ndarray, float], np.ndarray]
    name: str = ""


def saddle_vector_field(x: PhasePoint, params: SaddleParams) -> tuple[float, float]:
    """Velocity (dq/dt, dp/dt) = (lam p, lam q) of the saddle system."""
    return (params.lam * x.p, params.lam * x.q)


def saddle_field_spec(params: SaddleParams) -> VectorFieldSpec:
    """The saddle system packaged for the generic engines."""

    lam = params.lam

    def f(state: np.ndarray, t: float) -> np.ndarray:
        return np.array([lam * state[1], lam * state[0]])

    return VectorFieldSpec(dim=2, func=f, name=f"saddle(lam={lam})")


def _check_hyperbolic_range(lam: float, t_max_abs: float) -> None:
    if lam * t_max_abs > MAX_HYPERBOLIC_ARG:
        raise FlowOverflowError(
            f"|lam * t| = {lam * t_max_abs:.3g} exceeds the hyperbolic "
            f"overflow bound {MAX_HYPERBOLIC_ARG}"
        )


def saddle_flow(x0: PhasePoint, t: float, params: SaddleParams) -> PhasePoint:
    """Exact saddle flow map of x0 over time t (negative t allowed).

    Uses the numpy hyperbolic functions so that a single flow step agrees
    bitwise with the same node of saddle_trajectory.
    """
    if not np.isfinite(t):
        raise ValueError(f"t must be finite, got {t}")
    _check_hyperbolic_range(params.lam, abs(t))
    c = np.cosh(params.lam * t)
    s = np.sinh(params.lam * t)
    return PhasePoint(q=float(x0.q * c + x0.p * s), p=float(x0.p * c + x0.q * s))


def saddle_trajectory(
    x0: PhasePoint, times: np.ndarray, params: SaddleParams
) -> tuple[np.ndarray, np.ndarray]:
    """Exact saddle trajectory sampled at an array of times.

    Returns (q(t), p(t)) as float arrays of the same shape as ``times``.
    """
    times = np.asarray(times, dtype=float)
    if times.size and not np.all(np.isfinite(times)):
        raise ValueError("times must be finite")
    if times.size:
        _check_hyperbolic_range(params.lam, float(np.max(np.abs(times))))
    c = np.cosh(params.lam * times)
    s = np.sinh(params.lam * times)
    return x0.q * c + x0.p * s, x0.p * c + x0.q * s


def saddle_energy(x: PhasePoint, params: SaddleParams) -> float:
    """H(q, p) = (lam/2) (p^2 - q^2)."""
    return 0.5 * params.lam * (x.p * x.p - x.q * x.q)


def _rk4_step(f, y: np.ndarray, t: float, h: float) -> np.ndarray:
    k1 = f(y, t)
    k2 = f(y + 0.5 * h * k1, t + 0.5 * h)
    k3 = f(y + 0.5 * h * k2, t + 0.5 * h)
    k4 = f(y + h * k3, t + h)
    return y + (h / 6.0) * (k1 + 2.0 * (k2 + k3) + k4)


def rk4_integrate(x0, field: VectorFieldSpec, grid: TimeGrid) -> np.ndarray:
    """Fixed-step RK4 trajectory of ``field`` on the grid nodes.

    The initial condition sits at t = 0 (the middle node); the backward half
    is integrated with step -h, the forward half with step +h, and the two
    are stored as one array of shape (steps + 1, dim) over [-T, T].

    Raises DivergenceError with the failing node index if the state leaves
    the finite range.
    """
    y0 = np.atleast_1d(np.asarray(x0, dtype=float))
    if y0.shape != (field.dim,):
        raise ValueError(f"state has shape {y0.shape}, field expects ({field.dim},)")
    if not np.all(np.isfinite(y0)):
        raise ValueError("initial state must be finite")

    t = grid.nodes()
    h = grid.h
    mid = grid.mid_index
    traj = np.empty((grid.steps + 1, field.dim), dtype=float)
    traj[mid] = y0

    # overflow inside a step is the divergence signal, not an error by itself
    with np.errstate(over="ignore", invalid="ignore"):
        y = y0
        for k in range(mid, grid.steps):
            y = _rk4_step(field.func, y, t[k], h)
            if not np.all(np.isfinite(y)):
                raise DivergenceError(
                    f"trajectory diverged at node {k + 1} (t = {t[k + 1]:.6g})", k + 1
                )
            traj[k + 1] = y

        y = y0
        for k in range(mid, 0, -1):
            y = _rk4_step(field.func, y, t[k], -h)
            if not np.all(np.isfinite(y)):
                raise DivergenceError(
                    f"trajectory diverged at node {k - 1} (t = {t[k - 1]:.6g})", k - 1
                )
            traj[k - 1] = y

    return traj
