"""Compiled inner loops for descriptor quadratures.

Both the single-point and the field sweeps call these kernels, so a grid node
and a standalone point evaluation produce bit-identical values.  Every kernel
accumulates in a fixed order and releases the GIL, which makes thread-parallel
field sweeps deterministic regardless of worker count.
"""

from __future__ import annotations

import numpy as np
from numba import njit

SQRT2 = np.sqrt(2.0)


@njit(cache=True, nogil=True)
def classical_quadrature(qcl, pcl, w):
    """sum_m w[m] * (sqrt|q(t_m)| + sqrt|p(t_m)|)."""
    acc = 0.0
    for m in range(qcl.shape[0]):
        acc += w[m] * (np.sqrt(np.abs(qcl[m])) + np.sqrt(np.abs(pcl[m])))
    return acc


@njit(cache=True, nogil=True)
def thimble_quadrature_antithetic(qcl, pcl, rq, rq2, rp, rp2, w):
    """Summed LD quadrature over antithetic sample pairs.

    Row j of ``rq``/``rp`` holds the real fluctuation profile of pair j for
    the position and momentum components; ``rq2``/``rp2`` are their squares.
    For a rotated fluctuation e^{i pi/4} r the squared modulus of
    q_cl + e^{i pi/4} r is q_cl^2 + sqrt(2) q_cl r + r^2, so the integrand
    |q|^{1/2} is its fourth root and the -r partner flips the cross term.

    Returns the quadrature summed over both members of every pair; divide by
    the total sample count for the mean.
    """
    npairs, nnodes = rq.shape
    acc = 0.0
    for j in range(npairs):
        vq = rq[j]
        vq2 = rq2[j]
        vp = rp[j]
        vp2 = rp2[j]
        tot = 0.0
        for m in range(nnodes):
            xq = SQRT2 * qcl[m] * vq[m]
            bq = qcl[m] * qcl[m] + vq2[m]
            xp = SQRT2 * pcl[m] * vp[m]
            bp = pcl[m] * pcl[m] + vp2[m]
            # pairs summed before mixing q with p: negating the node swaps
            # each +/- pair, and this grouping keeps the total bit-identical
            sq = np.sqrt(np.sqrt(bq + xq)) + np.sqrt(np.sqrt(bq - xq))
            sp = np.sqrt(np.sqrt(bp + xp)) + np.sqrt(np.sqrt(bp - xp))
            tot += w[m] * (sq + sp)
        acc += tot
    return acc


@njit(cache=True, nogil=True)
def thimble_quadrature(qcl, pcl, rq, rq2, rp, rp2, w):
    """Summed LD quadrature with one row per individual sample."""
    nsamp, nnodes = rq.shape
    acc = 0.0
    for j in range(nsamp):
        vq = rq[j]
        vq2 = rq2[j]
        vp = rp[j]
        vp2 = rp2[j]
        tot = 0.0
        for m in range(nnodes):
            xq = SQRT2 * qcl[m] * vq[m]
            bq = qcl[m] * qcl[m] + vq2[m]
            xp = SQRT2 * pcl[m] * vp[m]
            bp = pcl[m] * pcl[m] + vp2[m]
            tot += w[m] * (np.sqrt(np.sqrt(bq + xq)) + np.sqrt(np.sqrt(bp + xp)))
        acc += tot
    return acc
