"""Matplotlib rendering of profile and moment reports.

Figures are written next to the delimited output.  Poles are never sampled;
asymptotes are drawn from the pole metadata, and curve segments are split at
the poles so nothing interpolates across a divergence.  PNG metadata is
pinned so repeated runs produce byte-identical files.
"""

from __future__ import annotations

import math
import os
from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .moments import GlobalMoments, MomentProfile  # noqa: E402

_PNG_METADATA = {"Software": "wigosc"}
_DPI = 150


def _save(fig, path: Path) -> None:
    tmp = path.with_name(path.name + ".tmp")
    fig.savefig(tmp, format="png", dpi=_DPI, metadata=_PNG_METADATA)
    plt.close(fig)
    os.replace(tmp, path)


def _segments(profile: MomentProfile):
    """Split the sampled curve at the poles so each branch plots separately."""
    cuts = np.searchsorted(profile.abscissae, profile.poles)
    pieces = np.split(np.arange(profile.abscissae.size), np.unique(cuts))
    for idx in pieces:
        if idx.size:
            yield profile.abscissae[idx], profile.values[idx]


def _energy_cap(profile: MomentProfile) -> float:
    edge = max(abs(profile.abscissae[0]), abs(profile.abscissae[-1]))
    return 1.2 * (0.5 * edge**2 + profile.n + 1.0)


def save_profile_figure(path: Path, profile: MomentProfile,
                        marginal: np.ndarray, wigner_slice: np.ndarray,
                        axis_label: str) -> None:
    """One state: conditional energy with asymptotes plus the two densities."""
    fig, ax = plt.subplots(figsize=(7.0, 4.5))
    for xs, ys in _segments(profile):
        ax.plot(xs, ys, color="tab:blue", lw=1.5)
    for pole in profile.poles:
        ax.axvline(pole, color="0.55", ls="--", lw=1.0)
    ax.set_ylim(0.0, _energy_cap(profile))
    ax.set_xlabel(axis_label)
    ax.set_ylabel("conditional energy", color="tab:blue")
    ax.tick_params(axis="y", labelcolor="tab:blue")

    ax2 = ax.twinx()
    ax2.plot(profile.abscissae, marginal, color="tab:orange", lw=1.2,
             label="marginal density")
    ax2.plot(profile.abscissae, wigner_slice, color="tab:green", lw=1.2,
             label="phase-space density, conjugate axis at 0")
    ax2.axhline(0.0, color="0.8", lw=0.8)
    ax2.set_ylabel("density")
    ax2.legend(loc="upper right", fontsize=8)

    ax.set_title(f"state n = {profile.n}")
    fig.tight_layout()
    _save(fig, path)


def save_energy_overlay_figure(path: Path, profiles: list[MomentProfile],
                               axis_label: str) -> None:
    """All requested states on one axes, asymptotes dashed."""
    fig, ax = plt.subplots(figsize=(7.0, 4.5))
    colors = plt.rcParams["axes.prop_cycle"].by_key()["color"]
    cap = 0.0
    for i, profile in enumerate(profiles):
        color = colors[i % len(colors)]
        first = True
        for xs, ys in _segments(profile):
            ax.plot(xs, ys, color=color, lw=1.3,
                    label=f"n = {profile.n}" if first else None)
            first = False
        for pole in profile.poles:
            ax.axvline(pole, color=color, ls="--", lw=0.7, alpha=0.5)
        cap = max(cap, _energy_cap(profile))
    ax.set_ylim(0.0, cap)
    ax.set_xlabel(axis_label)
    ax.set_ylabel("conditional energy")
    ax.legend(loc="upper center", fontsize=8, ncol=min(len(profiles), 4))
    fig.tight_layout()
    _save(fig, path)


def save_moments_figure(path: Path, moments: list[GlobalMoments]) -> None:
    """Global averages against the state index."""
    ns = [gm.n for gm in moments]
    fig, ax = plt.subplots(figsize=(6.0, 4.0))
    ax.plot(ns, [gm.energy for gm in moments], "o-", label="total energy")
    ax.plot(ns, [gm.vv for gm in moments], "s--", label="<<v^2>>")
    ax.plot(ns, [gm.xx for gm in moments], "d--", label="<<x^2>>")
    ax.set_xlabel("state n")
    ax.legend(fontsize=8)
    fig.tight_layout()
    _save(fig, path)
