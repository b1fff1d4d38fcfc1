"""Fluctuation spectrum of the saddle on the Dirichlet window [-T, T].

The quadratic fluctuation operator -d^2/dt^2 + lam^2 with vanishing endpoint
conditions has eigenfunctions phi_n(t) = sin(k_n (t + T)) / sqrt(T) with
k_n = n pi / (2 T).  On the rotated (steepest-descent) contour each mode
coefficient is a real zero-mean Gaussian with variance
sigma_n^2 = hbar lam / (k_n^2 + lam^2), which fixes every closed-form
quantity here: the transverse variance profile, the width law
sigma_rms = sqrt(hbar N / (4 T lam)), and the cutoff-independent width ratio.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .dynamics import SaddleParams


def mode_wavenumber(n: int, T: float) -> float:
    """k_n = n pi / (2 T) for the n-th Dirichlet mode, n >= 1."""
    if n < 1:
        raise ValueError(f"mode index must be >= 1, got {n}")
    return n * np.pi / (2.0 * T)


def mode_eval(n: int, t, T: float):
    """phi_n(t) = sin(k_n (t + T)) / sqrt(T); vanishes at both endpoints."""
    k = mode_wavenumber(n, T)
    return np.sin(k * (np.asarray(t, dtype=float) + T)) / np.sqrt(T)


def mode_deriv(n: int, t, T: float):
    """Analytic derivative k_n cos(k_n (t + T)) / sqrt(T)."""
    k = mode_wavenumber(n, T)
    return k * np.cos(k * (np.asarray(t, dtype=float) + T)) / np.sqrt(T)


def mode_second_deriv(n: int, t, T: float):
    """Analytic second derivative -k_n^2 sin(k_n (t + T)) / sqrt(T)."""
    k = mode_wavenumber(n, T)
    return -(k * k) * np.sin(k * (np.asarray(t, dtype=float) + T)) / np.sqrt(T)


def mode_variance(n: int, params: SaddleParams) -> float:
    """Thimble variance sigma_n^2 = hbar lam / (k_n^2 + lam^2)."""
    k = mode_wavenumber(n, params.T)
    return params.hbar * params.lam / (k * k + params.lam * params.lam)


@dataclass(frozen=True)
class ModeBasis:
    """The first N fluctuation modes with their precomputed spectral data.

    ``k`` and ``sigma2`` are length-N arrays (wavenumbers, thimble
    variances).  N = 0 is the empty basis, i.e. the classical limit.
    Instances are immutable and safe to share across threads.
    """

    N: int
    params: SaddleParams
    k: np.ndarray = field(init=False, repr=False, compare=False)
    sigma2: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.N < 0:
            raise ValueError(f"mode cutoff must be >= 0, got {self.N}")
        n = np.arange(1, self.N + 1, dtype=float)
        k = n * np.pi / (2.0 * self.params.T)
        lam = self.params.lam
        sigma2 = self.params.hbar * lam / (k * k + lam * lam)
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "sigma2", sigma2)

    def eval_table(self, t: np.ndarray) -> np.ndarray:
        """phi_n(t_m) as an (len(t), N) array."""
        arg = np.asarray(t, dtype=float) + self.params.T
        return np.sin(arg[:, None] * self.k) / np.sqrt(self.params.T)

    def deriv_table(self, t: np.ndarray) -> np.ndarray:
        """d phi_n / dt (t_m) as an (len(t), N) array."""
        arg = np.asarray(t, dtype=float) + self.params.T
        return self.k * np.cos(arg[:, None] * self.k) / np.sqrt(self.params.T)

    def transverse_table(self, t: np.ndarray) -> np.ndarray:
        """a_n(t_m) = phi_n'(t_m) / lam - phi_n(t_m) as an (len(t), N) array."""
        return self.deriv_table(t) / self.params.lam - self.eval_table(t)


def transverse_coeff(n: int, t, basis: ModeBasis):
    """a_n(t) = phi_n'(t) / lam - phi_n(t), the transverse mode profile."""
    if not 1 <= n <= basis.N:
        raise ValueError(f"mode index {n} outside basis of size {basis.N}")
    T = basis.params.T
    return mode_deriv(n, t, T) / basis.params.lam - mode_eval(n, t, T)


def closed_form_transverse_variance(t, basis: ModeBasis):
    """<|du(t)|^2> = (1/2) sum_n sigma_n^2 a_n(t)^2 for the truncated basis."""
    t_arr = np.atleast_1d(np.asarray(t, dtype=float))
    if basis.N == 0:
        out = np.zeros(t_arr.shape)
    else:
        a = basis.transverse_table(t_arr)
        out = 0.5 * (a * a) @ basis.sigma2
    return out if np.ndim(t) else float(out[0])


def analytic_width(N: int, params: SaddleParams) -> float:
    """Manifold broadening sigma_rms = sqrt(hbar N / (4 T lam))."""
    if N < 0:
        raise ValueError(f"mode cutoff must be >= 0, got {N}")
    return float(np.sqrt(params.hbar * N / (4.0 * params.T * params.lam)))


def width_ratio(params1: SaddleParams, params2: SaddleParams) -> float:
    """sigma_rms^(1) / sigma_rms^(2) = sqrt(lam2 T2 / (lam1 T1)) at equal N.

    Independent of the mode cutoff by construction; assumes both systems use
    the same hbar.
    """
    return float(np.sqrt((params2.lam * params2.T) / (params1.lam * params1.T)))


def fluctuation_action_thimble(y, basis: ModeBasis) -> float:
    """Real thimble action (1 / 2 lam) sum_n (k_n^2 + lam^2) y_n^2.

    The sampling density of the mode coefficients is proportional to
    exp(-action / hbar).
    """
    y = np.asarray(y, dtype=float)
    if y.shape != (basis.N,):
        raise ValueError(f"sample has shape {y.shape}, basis expects ({basis.N},)")
    lam = basis.params.lam
    return float(np.sum((basis.k**2 + lam * lam) * y * y) / (2.0 * lam))
