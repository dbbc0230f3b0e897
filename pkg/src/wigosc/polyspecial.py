"""Stable evaluation of Hermite and generalized Laguerre polynomials.

Everything here is plain float64 three-term recurrences plus a Jacobi-matrix
eigenvalue solver for Hermite zeros.  Degrees are capped at ``N_MAX`` because
the physicists' Hermite polynomials grow super-exponentially and the double
precision recurrences stop satisfying their consistency identities much past
that point.  Exact integer/rational arithmetic lives in :mod:`wigosc.coeffs`,
not here.

All functions accept scalars or numpy arrays for the evaluation argument and
are pure, so they are safe for unrestricted concurrent use.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

#: Largest polynomial degree supported by the float evaluation paths.
N_MAX = 64

#: Newton-step tolerance for polished Hermite zeros: |H_n(z) / H_n'(z)| <= ZERO_TOL.
ZERO_TOL = 1e-12


class DegreeOverflowError(ValueError):
    """Polynomial degree above the supported cap ``N_MAX``."""


def _check_degree(n: int) -> None:
    if not isinstance(n, (int, np.integer)):
        raise TypeError(f"degree must be an integer, got {type(n).__name__}")
    if n < 0:
        raise ValueError(f"degree must be non-negative, got {n}")
    if n > N_MAX:
        raise DegreeOverflowError(f"degree {n} exceeds N_MAX = {N_MAX}")


def hermite(n: int, y):
    """Physicists' Hermite polynomial H_n(y).

    Uses the recurrence H_{k+1} = 2y H_k - 2k H_{k-1}; `y` may be a float or
    an ndarray.
    """
    _check_degree(n)
    one = y * 0.0 + 1.0
    if n == 0:
        return one
    h_prev, h = one, 2.0 * y
    for k in range(1, n):
        h_prev, h = h, 2.0 * y * h - 2.0 * k * h_prev
    return h


def hermite_derivatives(n: int, y):
    """H_n(y) together with its first two derivatives.

    The derivatives come from H_n' = 2n H_{n-1} and H_n'' = 4n(n-1) H_{n-2},
    so a single upward pass through the recurrence supplies all three values.
    """
    _check_degree(n)
    h = hermite(n, y)
    d1 = 2.0 * n * hermite(n - 1, y) if n >= 1 else y * 0.0
    d2 = 4.0 * n * (n - 1) * hermite(n - 2, y) if n >= 2 else y * 0.0
    return h, d1, d2


def laguerre(n: int, alpha: int, t):
    """Generalized Laguerre polynomial L_n^{(alpha)}(t); alpha = 0 is L_n.

    Evaluated by the stable three-term recurrence
    (k+1) L_{k+1} = (2k + alpha + 1 - t) L_k - (k + alpha) L_{k-1}.
    """
    _check_degree(n)
    if alpha < 0:
        raise ValueError(f"alpha must be non-negative, got {alpha}")
    one = t * 0.0 + 1.0
    if n == 0:
        return one
    l_prev, l = one, 1.0 + alpha - t
    for k in range(1, n):
        l_prev, l = l, ((2.0 * k + alpha + 1.0 - t) * l - (k + alpha) * l_prev) / (k + 1.0)
    return l


def laguerre_derivative(n: int, alpha: int, t):
    """d/dt L_n^{(alpha)}(t) = -L_{n-1}^{(alpha+1)}(t)."""
    _check_degree(n)
    if n == 0:
        return t * 0.0
    return -laguerre(n - 1, alpha + 1, t)


@dataclass(frozen=True)
class HermiteZeroSet:
    """All real zeros of H_n, sorted ascending and symmetric about 0."""

    n: int
    zeros: tuple[float, ...]

    def __post_init__(self) -> None:
        if len(self.zeros) != self.n:
            raise ValueError(f"expected {self.n} zeros, got {len(self.zeros)}")
        z = np.asarray(self.zeros)
        if z.size and not np.all(np.diff(z) > 0):
            raise ValueError("zeros must be strictly increasing")
        if z.size and not np.allclose(z, -z[::-1], rtol=0.0, atol=1e-12):
            raise ValueError("zeros must be symmetric about 0")

    def as_array(self) -> np.ndarray:
        return np.asarray(self.zeros)


@lru_cache(maxsize=None)
def hermite_zeros(n: int) -> HermiteZeroSet:
    """All n real zeros of H_n, polished by Newton iteration.

    Starting points are the eigenvalues of the symmetric Jacobi matrix with
    off-diagonal entries sqrt(k/2); a few Newton steps with the analytic
    derivative then reduce the correction |H_n/H_n'| below ``ZERO_TOL``.
    The result is cached; repeated calls are read-safe and idempotent.
    """
    _check_degree(n)
    if n < 1:
        raise ValueError("hermite_zeros requires n >= 1")
    off = np.sqrt(np.arange(1, n) / 2.0)
    jacobi = np.diag(off, 1) + np.diag(off, -1)
    z = np.linalg.eigvalsh(jacobi)
    for _ in range(4):
        h = hermite(n, z)
        d1 = 2.0 * n * hermite(n - 1, z)
        z = z - h / d1
    # enforce the exact +/- symmetry of the zero set
    z = 0.5 * (z - z[::-1])
    step = np.abs(hermite(n, z) / (2.0 * n * hermite(n - 1, z)))
    if not np.all(step <= ZERO_TOL):
        raise RuntimeError(f"Newton polishing failed to converge for n = {n}")
    return HermiteZeroSet(n=n, zeros=tuple(float(v) for v in z))
