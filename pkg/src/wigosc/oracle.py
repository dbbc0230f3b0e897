"""Independent brute-force quadrature engine used to validate every closed form.

All integrands in scope are polynomials times a Gaussian after substituting
u = sqrt(2) sigma tau, so a Gauss-Hermite rule with enough nodes evaluates
them exactly to roundoff.  Nodes come from the symmetric Jacobi matrix
(Golub-Welsch); weights are recovered through the Christoffel-function
identity w_i = 1 / sum_k phi_k(x_i)^2 with orthonormal Hermite polynomials,
which keeps the extreme-node weights relatively accurate where the raw
eigenvector components would drown in roundoff.

A truncated trapezoid rule is provided as a second, structurally independent
scheme for cross-checks.  This module deliberately consumes only
:mod:`wigosc.polyspecial` and :mod:`wigosc.oscillator`; it never touches the
coefficient tables or the closed-form moments it is meant to validate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable

import numpy as np

from .polyspecial import N_MAX, _check_degree, hermite_zeros
from .oscillator import OscillatorParams, wigner

__all__ = [
    "QuadratureRule",
    "gauss_hermite_rule",
    "trapezoid_rule",
    "rule_points",
    "integrate_gaussian_weighted",
    "conditional_moment_oracle",
    "global_moment_oracle",
    "marginal_oracle",
    "VanishingDenominatorError",
]

#: Default Gauss-Hermite node count; exactness degree 2*279-ish covers every
#: integrand arising from states up to N_MAX with polynomial weights.
DEFAULT_NODE_COUNT = 2 * N_MAX + 8

#: Abscissae closer than this (in sigma units) to a marginal zero make the
#: conditional-moment denominator vanish and are rejected.
DENOMINATOR_GUARD_SIGMA = 1e-6


class VanishingDenominatorError(ValueError):
    """Conditional-moment denominator integral vanishes at this abscissa."""


@dataclass(frozen=True)
class QuadratureRule:
    """Either a Gauss-Hermite rule or a truncated trapezoid rule.

    ``half_width`` (trapezoid only) is measured in sigma units of the
    substituted physical variable u = sqrt(2) sigma tau, i.e. the tau window
    is [-half_width/sqrt(2), +half_width/sqrt(2)].
    """

    kind: str
    node_count: int
    half_width: float | None = None

    def __post_init__(self) -> None:
        if self.kind not in ("gauss_hermite", "trapezoid_truncated"):
            raise ValueError(f"unknown rule kind {self.kind!r}")
        if self.node_count < 2:
            raise ValueError("node_count must be >= 2")
        if self.kind == "trapezoid_truncated":
            if self.half_width is None or self.half_width <= 0:
                raise ValueError("trapezoid rule needs a positive half_width")
        elif self.half_width is not None:
            raise ValueError("half_width only applies to the trapezoid rule")


def gauss_hermite_rule(node_count: int = DEFAULT_NODE_COUNT) -> QuadratureRule:
    return QuadratureRule(kind="gauss_hermite", node_count=node_count)


def trapezoid_rule(half_width: float = 14.0, node_count: int = 4097) -> QuadratureRule:
    return QuadratureRule(kind="trapezoid_truncated", node_count=node_count,
                          half_width=half_width)


@lru_cache(maxsize=None)
def _gauss_hermite_points(count: int) -> tuple[np.ndarray, np.ndarray]:
    off = np.sqrt(np.arange(1, count) / 2.0)
    jacobi = np.diag(off, 1) + np.diag(off, -1)
    nodes = np.linalg.eigvalsh(jacobi)
    # Christoffel weights: w_i = 1 / sum_{k<count} phi_k(x_i)^2 with the
    # orthonormal recurrence phi_{k+1} = x sqrt(2/(k+1)) phi_k - sqrt(k/(k+1)) phi_{k-1}
    phi_prev = np.full_like(nodes, math.pi ** -0.25)
    acc = phi_prev**2
    phi = nodes * math.sqrt(2.0) * phi_prev
    for k in range(1, count):
        acc += phi**2
        phi_prev, phi = phi, nodes * math.sqrt(2.0 / (k + 1)) * phi - math.sqrt(
            k / (k + 1)
        ) * phi_prev
    weights = 1.0 / acc
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return nodes, weights


def rule_points(rule: QuadratureRule) -> tuple[np.ndarray, np.ndarray]:
    """Nodes tau_i and weights w_i such that integral e^{-tau^2} g(tau) dtau
    is approximated by sum_i w_i g(tau_i) (exactly, for the Gauss rule on
    polynomial g of degree <= 2*node_count - 1)."""
    if rule.kind == "gauss_hermite":
        return _gauss_hermite_points(rule.node_count)
    limit = rule.half_width / math.sqrt(2.0)
    taus = np.linspace(-limit, limit, rule.node_count)
    step = taus[1] - taus[0]
    w = np.full(rule.node_count, step)
    w[0] = w[-1] = step / 2.0
    return taus, w * np.exp(-taus * taus)


def integrate_gaussian_weighted(g: Callable[[np.ndarray], np.ndarray],
                                rule: QuadratureRule | None = None) -> float:
    """integral over the real line of e^{-tau^2} g(tau) dtau."""
    if rule is None:
        rule = gauss_hermite_rule()
    taus, weights = rule_points(rule)
    vals = np.asarray(g(taus), dtype=float)
    if not np.all(np.isfinite(vals)):
        raise ValueError("integrand is not finite at a quadrature node")
    return float(np.dot(weights, vals))


def _axis_scales(params: OscillatorParams, axis: str) -> tuple[float, float]:
    # (sigma of the fixed axis, sigma of the integrated axis)
    if axis == "x":
        return params.sigma_x, params.sigma_v
    if axis == "v":
        return params.sigma_v, params.sigma_x
    raise ValueError(f"axis must be 'x' or 'v', got {axis!r}")


def conditional_moment_oracle(params: OscillatorParams, n: int, axis: str,
                              abscissa: float,
                              rule: QuadratureRule | None = None) -> float:
    """Quadrature value of the conditional second moment along the free axis.

    axis = "x": returns integral v^2 f_n(x, v) dv / integral f_n(x, v) dv at
    x = abscissa; axis = "v" is the mirrored average over the coordinate.
    The Wigner state is evaluated directly; no closed-form moment is used.
    """
    _check_degree(n)
    sigma_fixed, sigma_free = _axis_scales(params, axis)
    if n >= 1:
        zeros = hermite_zeros(n).as_array() * math.sqrt(2.0) * sigma_fixed
        if np.min(np.abs(zeros - abscissa)) < DENOMINATOR_GUARD_SIGMA * sigma_fixed:
            raise VanishingDenominatorError(
                f"denominator integral vanishes near {axis} = {abscissa}"
            )

    def density(tau: np.ndarray) -> np.ndarray:
        u = math.sqrt(2.0) * sigma_free * tau
        f = wigner(params, n, abscissa, u) if axis == "x" else wigner(params, n, u, abscissa)
        return f * np.exp(tau * tau)

    def weighted(tau: np.ndarray) -> np.ndarray:
        return (math.sqrt(2.0) * sigma_free * tau) ** 2 * density(tau)

    num = integrate_gaussian_weighted(weighted, rule)
    den = integrate_gaussian_weighted(density, rule)
    return num / den


def global_moment_oracle(params: OscillatorParams, n: int, weight: str,
                         rule: QuadratureRule | None = None) -> float:
    """Tensorized 2-D quadrature of a phase-space average of the n-th state.

    weight: "v2" or "x2" for the squared coordinates, "energy" for the mean
    energy in hbar*omega units, "energy_variance" for the squared deviation
    of that dimensionless energy from n + 1/2.
    """
    _check_degree(n)
    if rule is None:
        rule = gauss_hermite_rule()
    taus, w = rule_points(rule)
    XI, TAU = np.meshgrid(taus, taus, indexing="ij")
    WW = np.outer(w, w)
    X = math.sqrt(2.0) * params.sigma_x * XI
    V = math.sqrt(2.0) * params.sigma_v * TAU
    core = wigner(params, n, X, V) * np.exp(XI * XI + TAU * TAU)
    jac = 2.0 * params.sigma_x * params.sigma_v
    eps = (V * V / (2.0 * params.sigma_v**2) + X * X / (2.0 * params.sigma_x**2)) / 2.0
    if weight == "one":
        load = np.ones_like(eps)
    elif weight == "v2":
        load = V * V
    elif weight == "x2":
        load = X * X
    elif weight == "energy":
        load = eps
    elif weight == "energy_variance":
        load = (eps - (n + 0.5)) ** 2
    else:
        raise ValueError(f"unknown weight {weight!r}")
    return float((WW * core * load).sum() * jac)


def marginal_oracle(params: OscillatorParams, n: int, axis: str, abscissa: float,
                    rule: QuadratureRule | None = None) -> float:
    """Quadrature value of the marginal: integral of f_n over the free axis."""
    _check_degree(n)
    _, sigma_free = _axis_scales(params, axis)

    def density(tau: np.ndarray) -> np.ndarray:
        u = math.sqrt(2.0) * sigma_free * tau
        f = wigner(params, n, abscissa, u) if axis == "x" else wigner(params, n, u, abscissa)
        return f * np.exp(tau * tau)

    return math.sqrt(2.0) * sigma_free * integrate_gaussian_weighted(density, rule)
