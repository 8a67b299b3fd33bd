"""Cyclic Jacobi eigensolver for small dense symmetric matrices."""

from __future__ import annotations

import numpy as np
from numba import njit

from .errors import EigenNonConvergence

OFF_TOL = 1e-13
MAX_SWEEPS = 60


@njit(cache=True)
def _jacobi_sweeps(a, off_tol, max_sweeps):
    n = a.shape[0]
    for sweep in range(max_sweeps):
        off = 0.0
        for p in range(n):
            for q in range(p + 1, n):
                off += a[p, q] * a[p, q]
        if np.sqrt(2.0 * off) < off_tol:
            return sweep
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if apq == 0.0:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * apq)
                if theta >= 0.0:
                    t = 1.0 / (theta + np.sqrt(1.0 + theta * theta))
                else:
                    t = -1.0 / (-theta + np.sqrt(1.0 + theta * theta))
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                for r in range(n):
                    arp = a[r, p]
                    arq = a[r, q]
                    a[r, p] = c * arp - s * arq
                    a[r, q] = s * arp + c * arq
                for r in range(n):
                    apr = a[p, r]
                    aqr = a[q, r]
                    a[p, r] = c * apr - s * aqr
                    a[q, r] = s * apr + c * aqr
                a[p, q] = 0.0
                a[q, p] = 0.0
    return -1


def jacobi_eigvalsh(m: np.ndarray, off_tol: float = OFF_TOL,
                    max_sweeps: int = MAX_SWEEPS) -> np.ndarray:
    """Eigenvalues of a real symmetric matrix, ascending.

    Rotations are applied in fixed row-major (p, q) order, so results are
    bit-reproducible. Iteration stops once the Frobenius norm of the
    off-diagonal part falls below ``off_tol`` (relative to the matrix scale
    when that exceeds one).

    Raises
    ------
    EigenNonConvergence
        For non-finite or non-square input, or if ``max_sweeps`` is reached.
    """
    a = np.array(m, dtype=float, copy=True)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise EigenNonConvergence(f"expected a square matrix, got shape {a.shape}")
    if not np.all(np.isfinite(a)):
        raise EigenNonConvergence("matrix has non-finite entries")
    a = 0.5 * (a + a.T)
    scale = max(1.0, float(np.max(np.abs(a))))
    if _jacobi_sweeps(a, off_tol * scale, max_sweeps) < 0:
        raise EigenNonConvergence(f"no convergence within {max_sweeps} sweeps")
    return np.sort(np.diag(a))
