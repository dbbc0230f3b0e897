"""Closed-form conditional moments, energy profiles with pole sets, global averages.

The conditional second moment along the velocity axis is

    <v^2>(x) = sigma_v^2 * sum_k num_k L_{n-k}(x^2/sigma_x^2)
                         / sum_k den_k L_{n-k}(x^2/sigma_x^2),

whose denominator is proportional to H_n^2(x / (sqrt(2) sigma_x)), so the
profile diverges exactly at the scaled Hermite zeros.  Evaluation inside a
small guard band around a pole raises :class:`PoleProximityError` instead of
returning huge, meaningless ratios; profile builders silently drop guarded
samples and report the pole abscissae as metadata.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .coeffs import CoefficientTable, coefficient_table, laguerre_combination
from .oscillator import OscillatorParams
from .polyspecial import _check_degree, hermite_derivatives, hermite_zeros

__all__ = [
    "PoleProximityError",
    "POLE_GUARD_SIGMA",
    "pole_set",
    "v2_conditional",
    "x2_conditional",
    "v2_via_quantum_potential",
    "second_moment_flux",
    "MomentProfile",
    "second_moment_profile",
    "energy_profile",
    "GlobalMoments",
    "global_moments",
]

#: Guard-band half width around each pole, in sigma units of the active axis.
#: Inside it the rational form has lost all significance.
POLE_GUARD_SIGMA = 1e-6


class PoleProximityError(ValueError):
    """Evaluation requested inside the guard band of a profile pole."""

    def __init__(self, abscissa: float, pole: float, guard: float):
        self.abscissa = abscissa
        self.pole = pole
        self.guard = guard
        super().__init__(
            f"abscissa {abscissa} lies within {guard} of the pole at {pole}"
        )


def _axis_sigma(params: OscillatorParams, axis: str) -> float:
    if axis == "x":
        return params.sigma_x
    if axis == "v":
        return params.sigma_v
    raise ValueError(f"axis must be 'x' or 'v', got {axis!r}")


def pole_set(params: OscillatorParams, n: int, axis: str = "x") -> np.ndarray:
    """Profile poles on the requested axis: sqrt(2) sigma times the Hermite zeros."""
    _check_degree(n)
    sigma = _axis_sigma(params, axis)
    if n == 0:
        return np.array([])
    return math.sqrt(2.0) * sigma * hermite_zeros(n).as_array()


def _guard_check(params: OscillatorParams, n: int, axis: str, value: float) -> None:
    sigma = _axis_sigma(params, axis)
    guard = POLE_GUARD_SIGMA * sigma
    poles = pole_set(params, n, axis)
    if poles.size:
        idx = int(np.argmin(np.abs(poles - value)))
        if abs(poles[idx] - value) < guard:
            raise PoleProximityError(value, float(poles[idx]), guard)


def _table_for(table: CoefficientTable | None, n: int) -> CoefficientTable:
    if table is None:
        return coefficient_table(n)
    if table.n < n:
        raise ValueError(f"table covers indices up to {table.n}, state {n} requested")
    return table


def v2_conditional(params: OscillatorParams, table: CoefficientTable | None,
                   n: int, x: float) -> float:
    """Conditional second moment of the velocity at fixed coordinate x."""
    _check_degree(n)
    table = _table_for(table, n)
    _guard_check(params, n, "x", x)
    t = (x / params.sigma_x) ** 2
    num = laguerre_combination(table.numerator_f, n, t)
    den = laguerre_combination(table.denominator_f, n, t)
    return params.sigma_v**2 * num / den


def x2_conditional(params: OscillatorParams, table: CoefficientTable | None,
                   n: int, v: float) -> float:
    """Conditional second moment of the coordinate at fixed velocity v.

    Mirror image of :func:`v2_conditional` under (x, sigma_x) <-> (v, sigma_v);
    the coefficient tables are shared.
    """
    _check_degree(n)
    table = _table_for(table, n)
    _guard_check(params, n, "v", v)
    t = (v / params.sigma_v) ** 2
    num = laguerre_combination(table.numerator_f, n, t)
    den = laguerre_combination(table.denominator_f, n, t)
    return params.sigma_x**2 * num / den


def v2_via_quantum_potential(params: OscillatorParams, n: int, x: float) -> float:
    """<v^2>(x) through the log-density curvature route.

    Differentiating the log of the coordinate marginal gives
    sigma_v^2 * (1 - H_n''/H_n + (H_n'/H_n)^2) at y = x/(sqrt(2) sigma_x),
    an independent evaluation path for the same moment.
    """
    _check_degree(n)
    _guard_check(params, n, "x", x)
    y = x / (math.sqrt(2.0) * params.sigma_x)
    h, d1, d2 = hermite_derivatives(n, y)
    ratio1 = d1 / h
    ratio2 = d2 / h
    return params.sigma_v**2 * (1.0 - ratio2 + ratio1 * ratio1)


def second_moment_flux(params: OscillatorParams, table: CoefficientTable | None,
                       n: int, x: float) -> float:
    """The product marginal_x(x) * <v^2>(x), which is finite even at the poles.

    The marginal's Hermite-squared factor cancels the denominator, leaving
    a Gaussian times the numerator combination alone.
    """
    _check_degree(n)
    table = _table_for(table, n)
    t = (x / params.sigma_x) ** 2
    sign = -1.0 if n % 2 else 1.0
    pref = 2.0 * sign * params.sigma_v**2 / (math.sqrt(2.0 * math.pi) * params.sigma_x)
    return pref * math.exp(-t / 2.0) * laguerre_combination(table.numerator_f, n, t)


@dataclass(frozen=True, eq=False)
class MomentProfile:
    """A sampled 1-D curve of a conditional moment or energy function.

    Samples inside the pole guard bands are dropped at construction time;
    the poles themselves are reported separately so renderers can draw
    asymptotes instead of interpolating through them.
    """

    n: int
    axis: str
    kind: str
    abscissae: np.ndarray
    values: np.ndarray
    poles: np.ndarray

    def __post_init__(self) -> None:
        if self.kind not in ("second_moment", "energy"):
            raise ValueError(f"unknown profile kind {self.kind!r}")
        if self.abscissae.shape != self.values.shape:
            raise ValueError("abscissae and values must have matching shapes")
        if self.abscissae.size > 1 and not np.all(np.diff(self.abscissae) > 0):
            raise ValueError("sample abscissae must be strictly increasing")


def _profile(params: OscillatorParams, table: CoefficientTable | None, n: int,
             axis: str, abscissae, kind: str) -> MomentProfile:
    table = _table_for(table, n)
    sigma = _axis_sigma(params, axis)
    guard = POLE_GUARD_SIGMA * sigma
    poles = pole_set(params, n, axis)
    pts = np.sort(np.asarray(abscissae, dtype=float))
    if poles.size:
        keep = np.min(np.abs(pts[:, None] - poles[None, :]), axis=1) >= guard
        pts = pts[keep]
    moment = v2_conditional if axis == "x" else x2_conditional
    vals = np.array([moment(params, table, n, u) for u in pts])
    if kind == "energy":
        sigma_conj = params.sigma_v if axis == "x" else params.sigma_x
        vals = vals / (2.0 * sigma_conj**2) + pts * pts / (2.0 * sigma**2)
    return MomentProfile(n=n, axis=axis, kind=kind, abscissae=pts, values=vals,
                         poles=poles)


def second_moment_profile(params: OscillatorParams, table: CoefficientTable | None,
                          n: int, axis: str, abscissae) -> MomentProfile:
    """Sampled conditional second moment along the requested axis."""
    return _profile(params, table, n, axis, abscissae, "second_moment")


def energy_profile(params: OscillatorParams, table: CoefficientTable | None,
                   n: int, axis: str, abscissae) -> MomentProfile:
    """Sampled conditional energy <e>(u) = <w^2>/(2 sigma_w^2) + u^2/(2 sigma_u^2).

    The value is the doubled dimensionless energy conditioned on the given
    axis; its poles sit at the scaled Hermite zeros (none for n = 0).
    """
    return _profile(params, table, n, axis, abscissae, "energy")


@dataclass(frozen=True)
class GlobalMoments:
    """Phase-space averages of one eigenstate.

    ``sigma_eps`` is the standard deviation of the dimensionless energy
    (energy in hbar*omega units); it equals 1/2 for every state.
    """

    n: int
    vv: float
    xx: float
    energy: float
    sigma_eps: float


def global_moments(params: OscillatorParams, n: int) -> GlobalMoments:
    """Closed-form global averages: vv = sigma_v^2 (2n+1), xx = sigma_x^2 (2n+1),
    total energy hbar omega (n + 1/2), and sigma_eps = 1/2."""
    _check_degree(n)
    return GlobalMoments(
        n=n,
        vv=params.sigma_v**2 * (2 * n + 1),
        xx=params.sigma_x**2 * (2 * n + 1),
        energy=params.hbar * params.omega * (n + 0.5),
        sigma_eps=0.5,
    )
