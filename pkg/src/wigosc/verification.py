"""Aggregated verification suite: every closed form against the oracle.

Builds one :class:`VerificationReport` covering the coefficient spot values,
the Hermite-squared expansion, conditional moments on both axes, the two
independent moment routes, global averages and the energy deviation,
stationarity, the harmonic reduction of the acceleration series, and the
pole/negativity geometry.  Sampling is seeded and echoed into the report so
identical configurations produce byte-identical output.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from fractions import Fraction

import numpy as np

from . import __version__
from .coeffs import (
    coefficient_table,
    laguerre_combination,
    verify_hermite_laguerre_identity,
)
from .dynamics import (
    DENSITY_FLOOR_RATIO,
    PolynomialPotential,
    moyal_acceleration,
    vlasov_residual,
)
from .moments import (
    POLE_GUARD_SIGMA,
    global_moments,
    pole_set,
    second_moment_flux,
    v2_conditional,
    v2_via_quantum_potential,
    x2_conditional,
)
from .oracle import (
    conditional_moment_oracle,
    gauss_hermite_rule,
    global_moment_oracle,
    marginal_oracle,
    rule_points,
)
from .oscillator import OscillatorParams, PhaseGrid, make_params, marginal_x, wigner
from .report import CheckResult, VerificationReport

__all__ = ["VerifyConfig", "run_verification"]

#: Random conditional-moment samples keep this distance (in sigma units) from
#: the poles: the ratio loses significance quadratically as a pole is
#: approached, so meaningful route comparisons need a modest clearance.
SAMPLE_POLE_CLEARANCE_SIGMA = 1e-2

_TOLS = {
    "coefficient_spot_values": 0.0,
    "hermite_squared_laguerre_identity": 1e-10,
    "conditional_moment_coordinate": 1e-9,
    "conditional_moment_velocity": 1e-9,
    "conditional_route_equivalence": 1e-9,
    "global_second_moments": 1e-10,
    "energy_spectrum": 1e-10,
    "energy_deviation": 1e-10,
    "marginal_consistency": 1e-9,
    "vlasov_stationarity": 1e-10,
    "harmonic_moyal_closure": 1e-12,
    "pole_denominator_zero": 1e-10,
    "pole_negativity": 0.0,
    "global_conditional_consistency": 1e-8,
}


@dataclass(frozen=True)
class VerifyConfig:
    """Configuration echoed into the verification report."""

    n_max: int = 10
    seed: int = 0
    mode: str = "dimensionless"
    m: float = 1.0
    omega: float = 1.0
    hbar: float | None = None
    tol_scale: float = 1.0

    def params(self) -> OscillatorParams:
        return make_params(self.mode, m=self.m, omega=self.omega, hbar=self.hbar)


def _clear_samples(rng: np.random.Generator, count: int, low: float, high: float,
                   poles: np.ndarray, clearance: float) -> list[float]:
    out: list[float] = []
    while len(out) < count:
        x = float(rng.uniform(low, high))
        if poles.size and float(np.min(np.abs(poles - x))) < clearance:
            continue
        out.append(x)
    return out


def _check_coefficient_spot_values(cfg: VerifyConfig) -> CheckResult:
    table = coefficient_table(max(cfg.n_max, 1))
    expected = (
        (table.numerator[0], Fraction(1, 2)),
        (table.numerator[1], Fraction(-3, 2)),
        (table.denominator[0], Fraction(1, 2)),
        (table.denominator[1], Fraction(-1, 2)),
        (table.moment_integrals[0], Fraction(1, 2)),
        (table.moment_integrals[1], Fraction(-1)),
    )
    exact = all(got == want for got, want in expected)
    return CheckResult(
        name="coefficient_spot_values",
        paper_ref="num_0 = den_0 = 1/2, num_1 = -3/2, den_1 = -1/2, "
        "J_0/sqrt(pi) = 1/2, J_1/sqrt(pi) = -1 (exact rationals)",
        max_err=0.0 if exact else 1.0,
        tol=_TOLS["coefficient_spot_values"] * cfg.tol_scale,
        passed=exact,
    )


def _check_identity(params: OscillatorParams, cfg: VerifyConfig) -> CheckResult:
    xs = np.linspace(-6.0 * params.sigma_x, 6.0 * params.sigma_x, 101)
    worst = 0.0
    for n in range(max(cfg.n_max, 20) + 1):
        rep = verify_hermite_laguerre_identity(n, xs, sigma_x=params.sigma_x)
        worst = max(worst, rep.checks[0].max_err)
    tol = _TOLS["hermite_squared_laguerre_identity"] * cfg.tol_scale
    return CheckResult(
        name="hermite_squared_laguerre_identity",
        paper_ref="(-1)^n/(2^(n+1) n!) H_n^2(x/(sqrt2 sigma_x)) "
        "= sum_k den_k L_(n-k)(x^2/sigma_x^2)",
        max_err=worst, tol=tol, passed=worst <= tol,
    )


def _check_conditional(params: OscillatorParams, cfg: VerifyConfig, axis: str) -> CheckResult:
    sigma = params.sigma_x if axis == "x" else params.sigma_v
    closed = v2_conditional if axis == "x" else x2_conditional
    guard = POLE_GUARD_SIGMA * sigma
    worst = 0.0
    for n in range(cfg.n_max + 1):
        table = coefficient_table(n)
        poles = pole_set(params, n, axis)
        for u in np.linspace(-5.0 * sigma, 5.0 * sigma, 41):
            if poles.size and float(np.min(np.abs(poles - u))) < guard:
                continue
            ours = closed(params, table, n, float(u))
            ref = conditional_moment_oracle(params, n, axis, float(u))
            worst = max(worst, abs(ours - ref) / abs(ref))
    name = "conditional_moment_coordinate" if axis == "x" else "conditional_moment_velocity"
    tol = _TOLS[name] * cfg.tol_scale
    return CheckResult(
        name=name,
        paper_ref="<w^2>(u) = sigma_w^2 sum_k num_k L_(n-k)(u^2/sigma_u^2) "
        "/ sum_k den_k L_(n-k)(u^2/sigma_u^2) vs quadrature ratio",
        max_err=worst, tol=tol, passed=worst <= tol,
    )


def _check_route_equivalence(params: OscillatorParams, cfg: VerifyConfig,
                             rng: np.random.Generator) -> CheckResult:
    clearance = SAMPLE_POLE_CLEARANCE_SIGMA * params.sigma_x
    worst = 0.0
    for n in range(cfg.n_max + 1):
        table = coefficient_table(n)
        poles = pole_set(params, n, "x")
        xs = _clear_samples(rng, 25, -5.0 * params.sigma_x, 5.0 * params.sigma_x,
                            poles, clearance)
        for x in xs:
            a = v2_conditional(params, table, n, x)
            b = v2_via_quantum_potential(params, n, x)
            worst = max(worst, abs(a - b) / max(abs(a), abs(b)))
    tol = _TOLS["conditional_route_equivalence"] * cfg.tol_scale
    return CheckResult(
        name="conditional_route_equivalence",
        paper_ref="table ratio form of <v^2>(x) equals the log-density route "
        "sigma_v^2 (1 - H''/H + (H'/H)^2)",
        max_err=worst, tol=tol, passed=worst <= tol,
    )


def _check_global_moments(params: OscillatorParams, cfg: VerifyConfig) -> CheckResult:
    worst = 0.0
    for n in range(cfg.n_max + 1):
        gm = global_moments(params, n)
        vv_ref = global_moment_oracle(params, n, "v2")
        xx_ref = global_moment_oracle(params, n, "x2")
        worst = max(
            worst,
            abs(gm.vv - vv_ref) / vv_ref,
            abs(gm.xx - xx_ref) / xx_ref,
            abs(gm.vv - params.sigma_v**2 * (2 * n + 1)) / gm.vv,
            abs(gm.xx - params.sigma_x**2 * (2 * n + 1)) / gm.xx,
        )
    tol = _TOLS["global_second_moments"] * cfg.tol_scale
    return CheckResult(
        name="global_second_moments",
        paper_ref="<<v^2>>_n = sigma_v^2 (2n+1), <<x^2>>_n = sigma_x^2 (2n+1)",
        max_err=worst, tol=tol, passed=worst <= tol,
    )


def _check_energy_spectrum(params: OscillatorParams, cfg: VerifyConfig) -> CheckResult:
    worst = 0.0
    for n in range(cfg.n_max + 1):
        eps_ref = global_moment_oracle(params, n, "energy")
        worst = max(worst, abs(eps_ref - (n + 0.5)))
        gm = global_moments(params, n)
        worst = max(worst, abs(gm.energy - params.hbar * params.omega * (n + 0.5)))
    tol = _TOLS["energy_spectrum"] * cfg.tol_scale
    return CheckResult(
        name="energy_spectrum",
        paper_ref="E_n = hbar omega (n + 1/2); dimensionless <<eps>>_n = n + 1/2",
        max_err=worst, tol=tol, passed=worst <= tol,
    )


def _check_energy_deviation(params: OscillatorParams, cfg: VerifyConfig) -> CheckResult:
    worst = 0.0
    for n in range(min(cfg.n_max, 6) + 1):
        var_ref = global_moment_oracle(params, n, "energy_variance")
        worst = max(worst, abs(var_ref - 0.25))
    tol = _TOLS["energy_deviation"] * cfg.tol_scale
    return CheckResult(
        name="energy_deviation",
        paper_ref="Var(eps) = 1/4 per state (eps in hbar*omega units), "
        "i.e. sigma_eps = 1/2 and sigma_E = hbar*omega/2",
        max_err=worst, tol=tol, passed=worst <= tol,
        note="the hbar*omega/2 closed form quoted for the variance is "
        "dimensionally an energy, not an energy squared; it matches the "
        "standard deviation instead. The artifact reports sigma_eps = 1/2 "
        "and treats the printed variance value as a units inconsistency.",
    )


def _check_marginals(params: OscillatorParams, cfg: VerifyConfig) -> CheckResult:
    worst = 0.0
    for n in range(cfg.n_max + 1):
        for x in np.linspace(-4.0 * params.sigma_x, 4.0 * params.sigma_x, 21):
            ref = marginal_oracle(params, n, "x", float(x))
            ours = float(marginal_x(params, n, float(x)))
            worst = max(worst, abs(ref - ours) / (1.0 / params.sigma_x))
        norm = global_moment_oracle(params, n, "one")
        worst = max(worst, abs(norm - 1.0))
    tol = _TOLS["marginal_consistency"] * cfg.tol_scale
    return CheckResult(
        name="marginal_consistency",
        paper_ref="integral f_n(x, v) dv = f1_n(x); integral integral f_n = 1",
        max_err=worst, tol=tol, passed=worst <= tol,
    )


def _check_stationarity(params: OscillatorParams, cfg: VerifyConfig) -> CheckResult:
    grid = PhaseGrid(
        x_min=-6.0 * params.sigma_x, x_max=6.0 * params.sigma_x, nx=101,
        v_min=-6.0 * params.sigma_v, v_max=6.0 * params.sigma_v, nv=101,
    )
    worst = 0.0
    for n in range(cfg.n_max + 1):
        rep = vlasov_residual(params, n, grid)
        worst = max(worst, rep.max_abs_residual / rep.gradient_scale)
    tol = _TOLS["vlasov_stationarity"] * cfg.tol_scale
    return CheckResult(
        name="vlasov_stationarity",
        paper_ref="v df/dx - omega^2 x df/dv = 0 for every eigenstate",
        max_err=worst, tol=tol, passed=worst <= tol,
    )


def _check_moyal_closure(params: OscillatorParams, cfg: VerifyConfig,
                         rng: np.random.Generator) -> CheckResult:
    potential = PolynomialPotential.harmonic(params)
    floor = 10.0 * DENSITY_FLOOR_RATIO / (2.0 * math.pi * params.sigma_x * params.sigma_v)
    w2 = params.omega**2
    worst = 0.0
    count = 0
    while count < 100:
        x = float(rng.uniform(-3.0 * params.sigma_x, 3.0 * params.sigma_x))
        v = float(rng.uniform(-3.0 * params.sigma_v, 3.0 * params.sigma_v))
        n = int(rng.integers(0, cfg.n_max + 1))
        if abs(float(wigner(params, n, x, v))) < floor:
            continue
        count += 1
        expected = -w2 * x
        for truncation in (0, 1, 3):
            acc = moyal_acceleration(potential, params, n, x, v, truncation)
            err = abs(acc - expected)
            if err:
                worst = max(worst, err / abs(expected))
    tol = _TOLS["harmonic_moyal_closure"] * cfg.tol_scale
    return CheckResult(
        name="harmonic_moyal_closure",
        paper_ref="mean acceleration reduces to -(1/m) dU/dx = -omega^2 x for "
        "degree-2 potentials, independent of state and truncation",
        max_err=worst, tol=tol, passed=worst <= tol,
    )


def _check_pole_denominator(params: OscillatorParams, cfg: VerifyConfig) -> CheckResult:
    worst = 0.0
    for n in range(1, cfg.n_max + 1):
        table = coefficient_table(n)
        for p in pole_set(params, n, "x"):
            t = (p / params.sigma_x) ** 2
            worst = max(worst, abs(laguerre_combination(table.denominator_f, n, t)))
    tol = _TOLS["pole_denominator_zero"] * cfg.tol_scale
    return CheckResult(
        name="pole_denominator_zero",
        paper_ref="the moment denominator sum_k den_k L_(n-k) vanishes exactly "
        "at sqrt(2) sigma_x times the Hermite zeros",
        max_err=worst, tol=tol, passed=worst <= tol,
    )


def _check_pole_negativity(params: OscillatorParams, cfg: VerifyConfig) -> CheckResult:
    worst = -math.inf
    for n in range(1, cfg.n_max + 1):
        for p in pole_set(params, n, "x"):
            worst = max(worst, float(wigner(params, n, float(p), 0.0)))
    return CheckResult(
        name="pole_negativity",
        paper_ref="f_n(x_pole, 0) < 0: every energy pole lies in a negative "
        "region of the phase-space density",
        max_err=worst,
        tol=_TOLS["pole_negativity"] * cfg.tol_scale,
        passed=worst < 0.0,
    )


def _check_global_conditional_consistency(params: OscillatorParams,
                                          cfg: VerifyConfig) -> CheckResult:
    # integral f1(x) <v^2>(x) dx via the finite flux form, against sigma_v^2 (2n+1)
    taus, w = rule_points(gauss_hermite_rule())
    worst = 0.0
    for n in range(cfg.n_max + 1):
        table = coefficient_table(n)
        xs = math.sqrt(2.0) * params.sigma_x * taus
        vals = np.array([second_moment_flux(params, table, n, float(x)) for x in xs])
        total = math.sqrt(2.0) * params.sigma_x * float(np.dot(w, vals * np.exp(taus * taus)))
        expected = params.sigma_v**2 * (2 * n + 1)
        worst = max(worst, abs(total - expected) / expected)
    tol = _TOLS["global_conditional_consistency"] * cfg.tol_scale
    return CheckResult(
        name="global_conditional_consistency",
        paper_ref="integral f1_n(x) <v^2>(x) dx = sigma_v^2 (2n+1)",
        max_err=worst, tol=tol, passed=worst <= tol,
    )


def run_verification(cfg: VerifyConfig | None = None) -> VerificationReport:
    """Run every check and return the combined report."""
    if cfg is None:
        cfg = VerifyConfig()
    params = cfg.params()
    rng = np.random.default_rng(cfg.seed)
    checks = [
        _check_coefficient_spot_values(cfg),
        _check_identity(params, cfg),
        _check_conditional(params, cfg, "x"),
        _check_conditional(params, cfg, "v"),
        _check_route_equivalence(params, cfg, rng),
        _check_global_moments(params, cfg),
        _check_energy_spectrum(params, cfg),
        _check_energy_deviation(params, cfg),
        _check_marginals(params, cfg),
        _check_stationarity(params, cfg),
        _check_moyal_closure(params, cfg, rng),
        _check_pole_denominator(params, cfg),
        _check_pole_negativity(params, cfg),
        _check_global_conditional_consistency(params, cfg),
    ]
    return VerificationReport(
        version=__version__,
        config=asdict(cfg),
        seed=cfg.seed,
        checks=checks,
    )
