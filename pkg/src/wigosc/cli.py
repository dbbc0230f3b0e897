"""Command-line surface: figure data, coefficient tables, verification reports.

Verbs: ``profile``, ``moments``, ``coeffs``, ``verify``, ``residual``.  Every
command writes files under ``--out`` (default ``.``): CSV with LF line
endings and 17-significant-digit numbers, JSON sidecars/reports, and PNG
figures rendered from the same data (suppress with ``--no-figures``).
Outputs are written atomically and are byte-identical across runs for a
fixed configuration and seed.

Exit codes: 0 success, 1 verification failure, 2 usage error, 3 I/O failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .coeffs import coefficient_table
from .moments import energy_profile, global_moments, pole_set
from .oscillator import PhaseGrid, make_params, marginal_v, marginal_x, wigner
from .dynamics import vlasov_residual
from .verification import VerifyConfig, run_verification

__all__ = ["main"]


def _fmt(value: float) -> str:
    return f"{value:.17g}"


def _write_text(path: Path, text: str) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_name(path.name + ".tmp")
    tmp.write_text(text, encoding="utf-8", newline="\n")
    os.replace(tmp, path)


def _write_json(path: Path, payload) -> None:
    _write_text(path, json.dumps(payload, indent=2, sort_keys=True) + "\n")


def _write_csv(path: Path, header: tuple[str, ...], rows) -> None:
    lines = [",".join(header)]
    lines.extend(",".join(_fmt(v) for v in row) for row in rows)
    _write_text(path, "\n".join(lines) + "\n")


def _parse_n_list(text: str) -> list[int]:
    try:
        if ".." in text:
            lo, hi = text.split("..")
            values = list(range(int(lo), int(hi) + 1))
        else:
            values = [int(tok) for tok in text.split(",")]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad state list {text!r}: {exc}") from None
    if not values or any(v < 0 for v in values):
        raise argparse.ArgumentTypeError(f"bad state list {text!r}")
    return values


def _parse_range(text: str) -> tuple[float, float]:
    try:
        lo_s, hi_s = text.split(":")
        lo, hi = float(lo_s), float(hi_s)
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"bad range {text!r}; expected lo:hi (write --range=-4:4 for negatives)"
        ) from None
    if not (lo < hi):
        raise argparse.ArgumentTypeError(f"range must satisfy lo < hi, got {text!r}")
    return lo, hi


def _common_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--mode", choices=("dimensionless", "physical"),
                        default="dimensionless",
                        help="parameter mode (default: dimensionless)")
    common.add_argument("--m", type=float, default=1.0, help="mass (physical mode)")
    common.add_argument("--omega", type=float, default=1.0,
                        help="angular frequency (physical mode)")
    common.add_argument("--hbar", type=float, default=None,
                        help="action quantum (physical mode, default 1)")
    common.add_argument("--out", type=Path, default=Path("."),
                        help="output directory (default: current directory)")
    return common


def _params_from(args):
    return make_params(args.mode, m=args.m, omega=args.omega, hbar=args.hbar)


def cmd_profile(args) -> int:
    params = _params_from(args)
    lo, hi = args.range
    abscissae = np.linspace(lo, hi, args.samples)
    axis = args.axis
    if axis == "x":
        header = ("x", "energy", "wigner_slice_v0", "marginal")
        axis_label = "x"
    else:
        header = ("v", "energy", "wigner_slice_x0", "marginal")
        axis_label = "v"
    poles_map: dict[str, list[float]] = {}
    profiles = []
    out: Path = args.out
    for n in args.n:
        table = coefficient_table(n)
        profile = energy_profile(params, table, n, axis, abscissae)
        pts = profile.abscissae
        if axis == "x":
            marginal = np.asarray(marginal_x(params, n, pts), dtype=float)
            slice_vals = np.asarray(wigner(params, n, pts, 0.0), dtype=float)
        else:
            marginal = np.asarray(marginal_v(params, n, pts), dtype=float)
            slice_vals = np.asarray(wigner(params, n, 0.0, pts), dtype=float)
        rows = zip(pts, profile.values, slice_vals, marginal)
        csv_path = out / f"profile_n{n}.csv"
        _write_csv(csv_path, header, rows)
        print(f"wrote {csv_path}")
        poles_map[str(n)] = [float(p) for p in profile.poles]
        profiles.append((profile, marginal, slice_vals))
    sidecar = {
        "axis": axis,
        "mode": args.mode,
        "samples": args.samples,
        "range": [lo, hi],
        "poles": poles_map,
    }
    poles_path = out / "profile_poles.json"
    _write_json(poles_path, sidecar)
    print(f"wrote {poles_path}")
    if not args.no_figures:
        from . import figures

        for profile, marginal, slice_vals in profiles:
            fig_path = out / f"profile_n{profile.n}.png"
            figures.save_profile_figure(fig_path, profile, marginal, slice_vals,
                                        axis_label)
            print(f"wrote {fig_path}")
        overlay = out / "profile_energy.png"
        figures.save_energy_overlay_figure(overlay, [p for p, _, _ in profiles],
                                           axis_label)
        print(f"wrote {overlay}")
    return 0


def cmd_moments(args) -> int:
    params = _params_from(args)
    table = [global_moments(params, n) for n in args.n]
    out: Path = args.out
    if args.format == "csv":
        path = out / "moments.csv"
        _write_csv(path, ("n", "vv", "xx", "energy", "sigma_eps"),
                   ((gm.n, gm.vv, gm.xx, gm.energy, gm.sigma_eps) for gm in table))
    else:
        path = out / "moments.json"
        _write_json(path, [
            {"n": gm.n, "vv": gm.vv, "xx": gm.xx, "energy": gm.energy,
             "sigma_eps": gm.sigma_eps}
            for gm in table
        ])
    print(f"wrote {path}")
    if not args.no_figures:
        from . import figures

        fig_path = out / "moments.png"
        figures.save_moments_figure(fig_path, table)
        print(f"wrote {fig_path}")
    return 0


def cmd_coeffs(args) -> int:
    table = coefficient_table(args.n)
    payload = {
        "n": table.n,
        "numerator": [str(v) for v in table.numerator],
        "denominator": [str(v) for v in table.denominator],
        "moment_integrals_over_sqrt_pi": [str(v) for v in table.moment_integrals],
    }
    path = args.out / f"coeffs_n{args.n}.json"
    _write_json(path, payload)
    print(f"wrote {path}")
    return 0


def cmd_verify(args) -> int:
    cfg = VerifyConfig(n_max=args.n_max, seed=args.seed, mode=args.mode,
                       m=args.m, omega=args.omega, hbar=args.hbar,
                       tol_scale=args.tol_scale)
    report = run_verification(cfg)
    path = args.out / "verify_report.json"
    _write_text(path, report.to_json())
    for check in report.checks:
        status = "PASS" if check.passed else "FAIL"
        print(f"{status} {check.name} (max_err={check.max_err:.3e}, tol={check.tol:.3e})")
    print(f"wrote {path}")
    if report.all_passed:
        print("all checks passed")
        return 0
    names = ", ".join(c.name for c in report.failures())
    print(f"FAILED checks: {names}", file=sys.stderr)
    return 1


def cmd_residual(args) -> int:
    params = _params_from(args)
    lo, hi = args.range
    grid = PhaseGrid(
        x_min=lo * params.sigma_x, x_max=hi * params.sigma_x, nx=args.samples,
        v_min=lo * params.sigma_v, v_max=hi * params.sigma_v, nv=args.samples,
    )
    reports = [vlasov_residual(params, n, grid) for n in args.n]
    path = args.out / "residual.json"
    _write_json(path, [rep.to_dict() for rep in reports])
    print(f"wrote {path}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wigosc",
        description="Phase-space analysis of the quantum harmonic oscillator: "
        "energy profiles with poles, coefficient tables, and verification "
        "reports.",
    )
    parser.add_argument("--version", action="version", version=f"wigosc {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    common = _common_parser()

    p = sub.add_parser("profile", parents=[common],
                       help="sample conditional energy profiles and densities")
    p.add_argument("--n", type=_parse_n_list, default=[0, 1, 2, 3],
                   help="state list: '0..3' or '0,2,5' (default 0..3)")
    p.add_argument("--axis", choices=("x", "v"), default="x")
    p.add_argument("--range", type=_parse_range, default=(-4.0, 4.0),
                   help="abscissa window lo:hi (write --range=-4:4)")
    p.add_argument("--samples", type=int, default=801)
    p.add_argument("--no-figures", action="store_true",
                   help="skip PNG rendering")
    p.set_defaults(func=cmd_profile)

    p = sub.add_parser("moments", parents=[common],
                       help="global second moments and energies per state")
    p.add_argument("--n", type=_parse_n_list, default=[0, 1, 2, 3])
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--no-figures", action="store_true")
    p.set_defaults(func=cmd_moments)

    p = sub.add_parser("coeffs", parents=[common],
                       help="dump the exact rational coefficient table")
    p.add_argument("--n", type=int, default=10, help="largest index in the table")
    p.set_defaults(func=cmd_coeffs)

    p = sub.add_parser("verify", parents=[common],
                       help="run the full closed-form vs oracle verification")
    p.add_argument("--n-max", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol-scale", type=float, default=1.0,
                   help="multiply every tolerance (negative-path testing)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("residual", parents=[common],
                       help="stationarity residuals on a phase-space grid")
    p.add_argument("--n", type=_parse_n_list, default=[0, 1, 2, 3])
    p.add_argument("--range", type=_parse_range, default=(-6.0, 6.0),
                   help="window in sigma units per axis (write --range=-6:6)")
    p.add_argument("--samples", type=int, default=101)
    p.set_defaults(func=cmd_residual)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
