"""Stationarity and acceleration-field checks for the oscillator's Wigner states.

Every eigenstate density depends on (x, v) only through the scaled energy, so
the free-streaming term and the harmonic force term of the phase-space
transport equation cancel identically:

    v df/dx - omega^2 x df/dv = 0.

The mean acceleration field is a series whose l-th term couples the
(2l+1)-th derivative of the potential to the 2l-th velocity derivative of the
density; for a degree-2 potential only the l = 0 term survives and the field
reduces to the classical -omega^2 x for every state and truncation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import __version__
from .coeffs import coefficient_table
from .moments import pole_set, second_moment_flux
from .oscillator import OscillatorParams, PhaseGrid, marginal_x, scaled_energy, wigner
from .polyspecial import _check_degree, hermite_derivatives, laguerre
from .report import CheckResult, VerificationReport

__all__ = [
    "D_MAX",
    "DENSITY_FLOOR_RATIO",
    "PolynomialPotential",
    "ResidualReport",
    "ZeroDensityError",
    "NodeProximityError",
    "vlasov_residual",
    "moyal_acceleration",
    "quantum_potential",
    "quantum_pressure_check",
]

#: Largest supported polynomial-potential degree.
D_MAX = 8

#: Fields that divide by the density are undefined below this fraction of its peak.
DENSITY_FLOOR_RATIO = 1e-12

#: Central finite-difference step for velocity derivatives, in sigma_v units.
FD_STEP_SIGMA = 1e-3

#: Samples closer than this (in sigma_x units) to a marginal zero are skipped
#: by the pressure-balance check: the marginal vanishes quadratically there
#: and the finite-difference quotient loses all significance.
PRESSURE_NODE_CLEARANCE_SIGMA = 0.05


class ZeroDensityError(ValueError):
    """The acceleration field is undefined where the phase-space density vanishes."""


class NodeProximityError(ValueError):
    """Evaluation too close to a zero of the wave function."""


@dataclass(frozen=True)
class PolynomialPotential:
    """U(x) = sum_j coefficients[j] * x^j with degree <= D_MAX."""

    coefficients: tuple[float, ...]

    def __post_init__(self) -> None:
        if len(self.coefficients) == 0:
            raise ValueError("potential needs at least one coefficient")
        if len(self.coefficients) - 1 > D_MAX:
            raise ValueError(f"degree {len(self.coefficients) - 1} exceeds D_MAX = {D_MAX}")
        if not all(math.isfinite(c) for c in self.coefficients):
            raise ValueError("potential coefficients must be finite")

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @classmethod
    def harmonic(cls, params: OscillatorParams) -> "PolynomialPotential":
        return cls(coefficients=(0.0, 0.0, params.m * params.omega**2 / 2.0))

    def value(self, x: float) -> float:
        out = 0.0
        for c in reversed(self.coefficients):
            out = out * x + c
        return out

    def derivative_value(self, x: float, order: int = 1) -> float:
        """d^order U / dx^order evaluated at x (Horner over shifted coefficients)."""
        if order < 0:
            raise ValueError("derivative order must be non-negative")
        if order > self.degree:
            return 0.0
        out = 0.0
        for j in range(self.degree, order - 1, -1):
            falling = 1.0
            for i in range(j, j - order, -1):
                falling *= i
            out = out * x + self.coefficients[j] * falling
        return out


@dataclass(frozen=True, eq=False)
class ResidualReport:
    """Stationarity residual statistics over one phase-space grid."""

    n: int
    x_min: float
    x_max: float
    nx: int
    v_min: float
    v_max: float
    nv: int
    max_abs_residual: float
    rms_residual: float
    gradient_scale: float

    def __post_init__(self) -> None:
        if self.max_abs_residual < 0 or self.rms_residual < 0:
            raise ValueError("residuals must be non-negative")

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "grid": {
                "x_min": self.x_min, "x_max": self.x_max, "nx": self.nx,
                "v_min": self.v_min, "v_max": self.v_max, "nv": self.nv,
            },
            "max_abs_residual": self.max_abs_residual,
            "rms_residual": self.rms_residual,
            "gradient_scale": self.gradient_scale,
        }


def vlasov_residual(params: OscillatorParams, n: int, grid: PhaseGrid) -> ResidualReport:
    """Sup and rms of |v df/dx - omega^2 x df/dv| over the grid.

    Both partial derivatives are analytic: for f = F(e) with the scaled
    energy e, df/dx = (x/sigma_x^2) F'(e) and df/dv = (v/sigma_v^2) F'(e)
    with F'(e) built from the Laguerre derivative recurrence.
    """
    _check_degree(n)
    X, V = grid.mesh()
    e = scaled_energy(params, X, V)
    sign = -1.0 if n % 2 else 1.0
    norm = sign / (2.0 * math.pi * params.sigma_v * params.sigma_x)
    ln = laguerre(n, 0, 2.0 * e)
    lderiv = -laguerre(n - 1, 1, 2.0 * e) if n >= 1 else np.zeros_like(e)
    dfde = norm * np.exp(-e) * (2.0 * lderiv - ln)
    advection = V * (X / params.sigma_x**2) * dfde
    force = params.omega**2 * X * (V / params.sigma_v**2) * dfde
    residual = advection - force
    scale = max(float(np.abs(advection).max()), float(np.abs(force).max()))
    return ResidualReport(
        n=n, x_min=grid.x_min, x_max=grid.x_max, nx=grid.nx,
        v_min=grid.v_min, v_max=grid.v_max, nv=grid.nv,
        max_abs_residual=float(np.abs(residual).max()),
        rms_residual=float(math.sqrt(float(np.mean(residual**2)))),
        gradient_scale=scale,
    )


def _density_floor(params: OscillatorParams) -> float:
    # peak |f_n| over phase space is the n = 0 origin value 1/(2 pi sigma_v sigma_x)
    return DENSITY_FLOOR_RATIO / (2.0 * math.pi * params.sigma_v * params.sigma_x)


def _even_v_derivative(func, v0: float, order: int, h: float) -> float:
    """Central-difference even-order derivative, Richardson-extrapolated once."""
    if order == 0:
        return func(v0)

    def stencil(step: float) -> float:
        half = order // 2
        total = math.fsum(
            (-1) ** i * math.comb(order, i) * func(v0 + (half - i) * step)
            for i in range(order + 1)
        )
        return total / step**order

    coarse = stencil(h)
    fine = stencil(h / 2.0)
    return (4.0 * fine - coarse) / 3.0


def moyal_acceleration(potential: PolynomialPotential, params: OscillatorParams,
                       n: int, x: float, v: float, truncation: int = 0) -> float:
    """Truncated mean-acceleration series at one phase point.

    Term l couples d^{2l+1}U/dx^{2l+1} with (1/f) d^{2l}f/dv^{2l}; terms whose
    potential derivative vanishes identically are skipped, so for a harmonic
    potential the result is exactly -omega^2 x for every state and every
    truncation.  The series is finite for polynomial potentials, which is the
    only class supported here.  Velocity derivatives of order >= 2 use
    central differences with one Richardson extrapolation.
    """
    _check_degree(n)
    if truncation < 0:
        raise ValueError("truncation must be non-negative")
    f0 = float(wigner(params, n, x, v))
    if abs(f0) < _density_floor(params):
        raise ZeroDensityError(
            f"|f| = {abs(f0):.3e} at (x, v) = ({x}, {v}) is below the density floor"
        )
    h = FD_STEP_SIGMA * params.sigma_v
    total = 0.0
    for l in range(truncation + 1):
        order = 2 * l + 1
        if order > potential.degree:
            break
        du = potential.derivative_value(x, order)
        if du == 0.0:
            continue
        if l == 0:
            ratio = 1.0
        else:
            deriv = _even_v_derivative(lambda u: float(wigner(params, n, x, u)), v, 2 * l, h)
            ratio = deriv / f0
        coef = (-1.0) ** (l + 1) * (params.hbar / 2.0) ** (2 * l) / (
            params.m ** (2 * l + 1) * math.factorial(2 * l + 1)
        )
        total += coef * du * ratio
    return total


@lru_cache(maxsize=None)
def _amplitude_peak(params: OscillatorParams, n: int) -> float:
    # peak of |psi_n| = sqrt(marginal); dense sampling over the classical support
    reach = params.sigma_x * (math.sqrt(2.0 * n + 1.0) + 5.0)
    xs = np.linspace(-reach, reach, 4001)
    return float(np.sqrt(marginal_x(params, n, xs)).max())


def quantum_potential(params: OscillatorParams, n: int, x: float) -> float:
    """Quantum potential Q = -(hbar^2 / 2m) (sqrt f)'' / sqrt f of the marginal.

    Computed from the analytic derivatives of the Gaussian-times-Hermite
    amplitude.  Q + U(x) equals the state energy wherever the wave function
    does not vanish; near a node the field diverges and evaluation raises
    :class:`NodeProximityError`.
    """
    _check_degree(n)
    amp = math.sqrt(float(marginal_x(params, n, x)))
    if amp < DENSITY_FLOOR_RATIO * _amplitude_peak(params, n):
        raise NodeProximityError(f"|psi_{n}({x})| is below the density floor")
    y = x / (math.sqrt(2.0) * params.sigma_x)
    h, d1, d2 = hermite_derivatives(n, y)
    sx2 = params.sigma_x**2
    dlog = -x / (2.0 * sx2) + (d1 / h) / (math.sqrt(2.0) * params.sigma_x)
    d2log = -1.0 / (2.0 * sx2) + (d2 / h - (d1 / h) ** 2) / (2.0 * sx2)
    curvature = d2log + dlog * dlog
    return -(params.hbar**2 / (2.0 * params.m)) * curvature


def quantum_pressure_check(params: OscillatorParams, n: int, x_samples,
                           tol: float = 1e-8,
                           clearance: float | None = None) -> VerificationReport:
    """Verify the one-dimensional momentum balance d/dx (f1 <v^2>) / f1 = -omega^2 x.

    The flux f1 <v^2> is evaluated through its finite closed form and
    differentiated by central differences with one Richardson step; the
    residual is normalized by max(|omega^2 x|, omega^2 sigma_x).  Samples
    inside ``clearance`` of a wave-function node are skipped.  Failures are
    recorded in the returned report, never raised.
    """
    _check_degree(n)
    if clearance is None:
        clearance = PRESSURE_NODE_CLEARANCE_SIGMA * params.sigma_x
    table = coefficient_table(n)
    poles = pole_set(params, n, axis="x")
    h = FD_STEP_SIGMA * params.sigma_x
    w2 = params.omega**2
    worst = 0.0
    kept = 0
    for x in np.asarray(x_samples, dtype=float):
        if poles.size and float(np.min(np.abs(poles - x))) < clearance:
            continue
        kept += 1

        def flux_slope(step: float) -> float:
            return (second_moment_flux(params, table, n, x + step)
                    - second_moment_flux(params, table, n, x - step)) / (2.0 * step)

        slope = (4.0 * flux_slope(h / 2.0) - flux_slope(h)) / 3.0
        residual = abs(slope / float(marginal_x(params, n, x)) + w2 * x)
        worst = max(worst, residual / max(abs(w2 * x), w2 * params.sigma_x))
    check = CheckResult(
        name="momentum_balance",
        paper_ref="d/dx (f1 <v^2>) / f1 = -omega^2 x",
        max_err=worst,
        tol=tol,
        passed=worst <= tol,
    )
    return VerificationReport(
        version=__version__,
        config={"n": n, "samples_kept": kept, "clearance": clearance},
        checks=[check],
    )
