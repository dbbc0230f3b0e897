"""Exact coefficient tables behind the conditional second-moment closed form.

The conditional moment <v^2>(x) is a ratio of two fixed linear combinations
of Laguerre polynomials.  The combination weights are rational numbers built
from the squared Hermite values at the origin,

    num_k = (-1)^k * sum_{s=0..k} w(s) * [H_{k-s}^2(0) + 2(k-s) H_{k-s-1}^2(0)] / (2^{k-s} (k-s)!),
    den_k = same with a minus sign on the second term,

where w(0) = 1/2 and w(s>0) = 1.  The denominator weights reproduce
(-1)^n H_n^2 / (2^{n+1} n!) as a Laguerre series, which is what places the
moment's poles exactly at the Hermite zeros.  A companion table holds the
Gaussian second-moment integrals of the Laguerre polynomials,

    J_k = integral tau^2 e^{-tau^2} L_k(2 tau^2) dtau,

stored with sqrt(pi) stripped so every entry stays rational.  All arithmetic
in this module is exact (``fractions.Fraction``); floats appear only in the
eagerly converted ``*_f`` views used by evaluation code.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np

from . import __version__
from .polyspecial import N_MAX, _check_degree, hermite, laguerre
from .report import CheckResult, VerificationReport

__all__ = [
    "CoefficientTable",
    "hermite_square_at_zero",
    "coefficient_table",
    "adjacent_moment_sum",
    "laguerre_combination",
    "verify_hermite_laguerre_identity",
]


def hermite_square_at_zero(k: int) -> int:
    """Exact H_k(0)^2: zero for odd k, (k!)^2 / ((k/2)!)^2 for even k."""
    if k < 0:
        # appears formally multiplied by a vanishing factor in the tables
        return 0
    if k % 2:
        return 0
    half = k // 2
    return math.factorial(k) ** 2 // math.factorial(half) ** 2


def _weighted_origin_sum(k: int, sign: int) -> Fraction:
    # shared double sum for the numerator (+) and denominator (-) tables
    total = Fraction(0)
    for s in range(k + 1):
        weight = Fraction(1, 2) if s == 0 else Fraction(1)
        d = k - s
        core = hermite_square_at_zero(d) + sign * 2 * d * hermite_square_at_zero(d - 1)
        total += weight * Fraction(core, 2**d * math.factorial(d))
    return (-1) ** k * total


def _moment_integral(k: int) -> Fraction:
    # J_k / sqrt(pi) in closed form
    total = Fraction(hermite_square_at_zero(k), 2 ** (k + 1) * math.factorial(k))
    for s in range(1, k + 1):
        d = k - s
        total += Fraction(hermite_square_at_zero(d), 2**d * math.factorial(d))
    return (-1) ** k * total


@dataclass(frozen=True)
class CoefficientTable:
    """Exact rational tables for states up to index n (immutable once built).

    ``numerator``/``denominator`` weight the Laguerre combinations in the
    conditional-moment ratio; ``moment_integrals`` holds J_k / sqrt(pi).
    The ``*_f`` tuples are the same values converted to float once, for use
    at evaluation boundaries.
    """

    n: int
    numerator: tuple[Fraction, ...]
    denominator: tuple[Fraction, ...]
    moment_integrals: tuple[Fraction, ...]
    numerator_f: tuple[float, ...]
    denominator_f: tuple[float, ...]

    def __post_init__(self) -> None:
        want = self.n + 1
        for name in ("numerator", "denominator", "moment_integrals"):
            if len(getattr(self, name)) != want:
                raise ValueError(f"{name} must have {want} entries")
        if self.numerator[0] != Fraction(1, 2) or self.denominator[0] != Fraction(1, 2):
            raise ValueError("index-0 weights must both equal 1/2")
        if self.moment_integrals[0] != Fraction(1, 2):
            raise ValueError("index-0 moment integral must equal 1/2")


@lru_cache(maxsize=None)
def coefficient_table(n: int) -> CoefficientTable:
    """Build (and cache) the exact tables for all indices k <= n."""
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")
    num = tuple(_weighted_origin_sum(k, +1) for k in range(n + 1))
    den = tuple(_weighted_origin_sum(k, -1) for k in range(n + 1))
    mom = tuple(_moment_integral(k) for k in range(n + 1))
    return CoefficientTable(
        n=n,
        numerator=num,
        denominator=den,
        moment_integrals=mom,
        numerator_f=tuple(float(v) for v in num),
        denominator_f=tuple(float(v) for v in den),
    )


def adjacent_moment_sum(k: int, table: CoefficientTable) -> Fraction:
    """Exact (J_k + J_{k-1}) / sqrt(pi) for 1 <= k <= table.n.

    Computed from the combined closed form (leading term plus tail sum), not
    from the stored J table, so equality with
    ``table.moment_integrals[k] + table.moment_integrals[k-1]`` is a genuine
    consistency check.
    """
    if not 1 <= k <= table.n:
        raise IndexError(f"k must be in [1, {table.n}], got {k}")
    lead = Fraction(
        hermite_square_at_zero(k) - 2 * k * hermite_square_at_zero(k - 1),
        2 ** (k + 1) * math.factorial(k),
    )
    tail = Fraction(0)
    for s in range(1, k + 1):
        d = k - s
        tail += Fraction(
            hermite_square_at_zero(d) - 2 * d * hermite_square_at_zero(d - 1),
            2**d * math.factorial(d),
        )
    return (-1) ** k * (lead + tail)


def laguerre_combination(weights: Sequence[float], n: int, t) -> float:
    """Compensated sum of weights[k] * L_{n-k}(t) for k = 0..n."""
    return math.fsum(weights[k] * laguerre(n - k, 0, t) for k in range(n + 1))


def hermite_square_series_lhs(n: int, y) -> float:
    """(-1)^n H_n(y)^2 / (2^{n+1} n!), the quantity the denominator table expands."""
    pref = 0.5
    for k in range(1, n + 1):
        pref /= 2.0 * k
    sign = -1.0 if n % 2 else 1.0
    h = hermite(n, y)
    return sign * pref * h * h


def verify_hermite_laguerre_identity(
    n: int,
    x_samples: Sequence[float],
    sigma_x: float = 1.0,
    tol: float = 1e-10,
) -> VerificationReport:
    """Check the Hermite-squared-to-Laguerre expansion over the given samples.

    Compares (-1)^n H_n^2(x / (sqrt(2) sigma_x)) / (2^{n+1} n!) against the
    denominator-table Laguerre combination at t = x^2/sigma_x^2.  Deviations
    are measured relative to the pre-cancellation magnitude of the series
    (the sum of absolute terms), which keeps the metric meaningful at the
    Hermite zeros where both sides vanish.  Failures are recorded in the
    report, never raised.
    """
    _check_degree(n)
    table = coefficient_table(n)
    worst = 0.0
    for x in np.asarray(x_samples, dtype=float):
        t = (x / sigma_x) ** 2
        lhs = hermite_square_series_lhs(n, x / (math.sqrt(2.0) * sigma_x))
        terms = [table.denominator_f[k] * laguerre(n - k, 0, t) for k in range(n + 1)]
        rhs = math.fsum(terms)
        scale = max(math.fsum(abs(v) for v in terms), abs(lhs))
        if scale == 0.0:
            continue
        worst = max(worst, abs(lhs - rhs) / scale)
    check = CheckResult(
        name="hermite_squared_laguerre_identity",
        paper_ref="(-1)^n/(2^(n+1) n!) H_n^2(x/(sqrt2 sigma_x)) "
        "= sum_k den_k L_(n-k)(x^2/sigma_x^2)",
        max_err=worst,
        tol=tol,
        passed=worst <= tol,
    )
    return VerificationReport(
        version=__version__,
        config={"n": n, "samples": len(list(x_samples)), "sigma_x": sigma_x},
        checks=[check],
    )
