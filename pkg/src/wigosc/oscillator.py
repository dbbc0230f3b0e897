"""Oscillator parameterization, Wigner states, marginals, and the energy function.

The phase-space density of the n-th eigenstate is

    f_n(x, v) = (-1)^n / (2 pi sigma_v sigma_x) * exp(-e) * L_n(2 e),
    e(x, v)   = v^2 / (2 sigma_v^2) + x^2 / (2 sigma_x^2),

with sigma_x^2 = hbar/(2 m omega) and sigma_v^2 = hbar omega/(2 m).  The
coordinate marginal is the usual |psi_n|^2 with its Hermite-squared factor.
Dimensionless mode (sigma_x = sigma_v = omega = 1) is the default everywhere;
physical units are opt-in.
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass

import numpy as np

from .polyspecial import _check_degree, hermite, laguerre

_IDENTITY_RTOL = 1e-14


@dataclass(frozen=True)
class OscillatorParams:
    """Physical parameters of one harmonic oscillator.

    The five fields are redundant by construction and must satisfy
    sigma_x^2 = hbar/(2 m omega), sigma_v^2 = hbar omega/(2 m),
    sigma_x sigma_v = hbar/(2 m) and omega = sigma_v/sigma_x.
    """

    m: float
    omega: float
    hbar: float
    sigma_x: float
    sigma_v: float

    def __post_init__(self) -> None:
        for name in ("m", "omega", "hbar", "sigma_x", "sigma_v"):
            val = getattr(self, name)
            if not (math.isfinite(val) and val > 0.0):
                raise ValueError(f"{name} must be finite and > 0, got {val}")
        checks = (
            ("sigma_x^2", self.sigma_x**2, self.hbar / (2.0 * self.m * self.omega)),
            ("sigma_v^2", self.sigma_v**2, self.hbar * self.omega / (2.0 * self.m)),
            ("sigma_x*sigma_v", self.sigma_x * self.sigma_v, self.hbar / (2.0 * self.m)),
            ("omega", self.omega, self.sigma_v / self.sigma_x),
        )
        for name, got, want in checks:
            if abs(got - want) > _IDENTITY_RTOL * abs(want):
                raise ValueError(f"inconsistent parameters: {name} = {got}, expected {want}")


def make_params(mode: str = "dimensionless", m: float = 1.0, omega: float = 1.0,
                hbar: float | None = None) -> OscillatorParams:
    """Build a consistent parameter set.

    ``dimensionless`` pins sigma_x = sigma_v = 1 (hence omega = 1 and
    hbar = 2 m); ``physical`` derives both deviations from (m, omega, hbar).
    """
    if mode == "dimensionless":
        if omega != 1.0:
            raise ValueError("dimensionless mode fixes omega = 1")
        if hbar is not None and hbar != 2.0 * m:
            raise ValueError("dimensionless mode fixes hbar = 2 m")
        return OscillatorParams(m=m, omega=1.0, hbar=2.0 * m, sigma_x=1.0, sigma_v=1.0)
    if mode == "physical":
        if hbar is None:
            hbar = 1.0
        if m <= 0 or omega <= 0 or hbar <= 0:
            raise ValueError("m, omega, hbar must be positive")
        sigma_x = math.sqrt(hbar / (2.0 * m * omega))
        sigma_v = math.sqrt(hbar * omega / (2.0 * m))
        return OscillatorParams(m=m, omega=omega, hbar=hbar, sigma_x=sigma_x, sigma_v=sigma_v)
    raise ValueError(f"unknown mode {mode!r}; expected 'dimensionless' or 'physical'")


def scaled_energy(params: OscillatorParams, x, v):
    """Doubled dimensionless energy e(x, v) = v^2/(2 sigma_v^2) + x^2/(2 sigma_x^2)."""
    return v * v / (2.0 * params.sigma_v**2) + x * x / (2.0 * params.sigma_x**2)


def energy(params: OscillatorParams, x, p):
    """Energy in hbar*omega units for momentum p; equals scaled_energy/2 at v = p/m."""
    return (p * p / (2.0 * params.m) + params.m * params.omega**2 * x * x / 2.0) / (
        params.hbar * params.omega
    )


def wigner(params: OscillatorParams, n: int, x, v):
    """Phase-space quasi-density f_n(x, v) of the n-th eigenstate.

    Depends on (x, v) only through ``scaled_energy`` and is negative wherever
    (-1)^n L_n(2 e) < 0.
    """
    _check_degree(n)
    e = scaled_energy(params, x, v)
    sign = -1.0 if n % 2 else 1.0
    norm = 2.0 * math.pi * params.sigma_v * params.sigma_x
    return sign / norm * np.exp(-e) * laguerre(n, 0, 2.0 * e)


def wigner_momentum(params: OscillatorParams, n: int, x, p):
    """Wigner density on (x, p): wigner(x, p/m) / m."""
    return wigner(params, n, x, p / params.m) / params.m


def _inv_two_pow_factorial(n: int) -> float:
    # 1/(2^n n!) as a running product; factorial-then-divide overflows near n = 64
    out = 1.0
    for k in range(1, n + 1):
        out /= 2.0 * k
    return out


def marginal_x(params: OscillatorParams, n: int, x):
    """Coordinate marginal density |psi_n(x)|^2 of the n-th eigenstate."""
    _check_degree(n)
    y = x / (math.sqrt(2.0) * params.sigma_x)
    h = hermite(n, y)
    norm = _inv_two_pow_factorial(n) / (math.sqrt(2.0 * math.pi) * params.sigma_x)
    return norm * np.exp(-x * x / (2.0 * params.sigma_x**2)) * h * h


def marginal_v(params: OscillatorParams, n: int, v):
    """Velocity marginal density; same form as marginal_x by the (x, v) symmetry."""
    _check_degree(n)
    y = v / (math.sqrt(2.0) * params.sigma_v)
    h = hermite(n, y)
    norm = _inv_two_pow_factorial(n) / (math.sqrt(2.0 * math.pi) * params.sigma_v)
    return norm * np.exp(-v * v / (2.0 * params.sigma_v**2)) * h * h


@dataclass(frozen=True, eq=False)
class PhaseGrid:
    """Rectangular (x, v) sampling window, optionally carrying sampled values.

    ``values[i, j]`` corresponds to (x_axis()[i], v_axis()[j]); the array is
    row-major with shape (nx, nv).
    """

    x_min: float
    x_max: float
    nx: int
    v_min: float
    v_max: float
    nv: int
    values: np.ndarray | None = None

    def __post_init__(self) -> None:
        if self.nx < 2 or self.nv < 2:
            raise ValueError("grid needs nx >= 2 and nv >= 2")
        if not (self.x_min < self.x_max and self.v_min < self.v_max):
            raise ValueError("grid bounds must be ordered")
        if self.values is not None and self.values.shape != (self.nx, self.nv):
            raise ValueError(
                f"values shape {self.values.shape} does not match grid ({self.nx}, {self.nv})"
            )

    def x_axis(self) -> np.ndarray:
        return np.linspace(self.x_min, self.x_max, self.nx)

    def v_axis(self) -> np.ndarray:
        return np.linspace(self.v_min, self.v_max, self.nv)

    def mesh(self) -> tuple[np.ndarray, np.ndarray]:
        return np.meshgrid(self.x_axis(), self.v_axis(), indexing="ij")


def sample_grid(params: OscillatorParams, n: int, grid: PhaseGrid) -> PhaseGrid:
    """Return a copy of ``grid`` filled with wigner(params, n, x, v) values."""
    X, V = grid.mesh()
    return dataclasses.replace(grid, values=wigner(params, n, X, V))
