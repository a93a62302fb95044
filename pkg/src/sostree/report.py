"""Delimited output writers and the figure-rendering report path.

matplotlib is imported lazily inside the render functions so the numeric
library never pays for it.
"""

from __future__ import annotations

import csv
import json
import os
from collections import defaultdict

from .boundary import SolutionCatalog
from .recursion import FixedPointResult
from .simulate import RNG_NAME, TvEstimate, decay_curve
from .thresholds import ScanRow, ThresholdSet, find_all_thresholds, phase_diagram


def g17(value: float) -> str:
    """17 significant digits: lossless for 64-bit floats."""
    return format(float(value), ".17g")


def write_scan_csv(rows: list[ScanRow], stream) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(
        ["theta", "branch", "x", "y", "lambda1", "lambda2", "eta", "kappa", "u", "verdict"]
    )
    for r in rows:
        writer.writerow(
            [
                g17(r.theta),
                r.branch,
                g17(r.x),
                g17(r.y),
                g17(r.lambda1),
                g17(r.lambda2),
                g17(r.eta),
                g17(r.kappa),
                g17(r.u),
                r.verdict,
            ]
        )


def write_tv_csv(estimates: list[TvEstimate], stream) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(["depth", "tv", "stderr", "n_samples", "seed"])
    for e in estimates:
        writer.writerow([e.depth, g17(e.tv), g17(e.stderr), e.n_samples, e.seed])


def catalog_to_dict(cat: SolutionCatalog) -> dict:
    return {
        "theta": cat.theta,
        "regime": cat.regime.value,
        "count": len(cat.laws),
        "laws": {
            str(law.branch): {"x": law.x, "y": law.y, "merged": law.merged}
            for law in cat.laws
        },
    }


def threshold_set_to_dict(ts: ThresholdSet, audit: dict | None = None) -> dict:
    out = ts.as_dict()
    out["residuals"] = dict(ts.residuals)
    out["brackets"] = {k: list(v) for k, v in ts.brackets.items()}
    if audit is not None:
        out["audit"] = audit
    return out


def fixed_point_to_dict(result: FixedPointResult, theta: float) -> dict:
    return {
        "m": result.law.m,
        "k": result.law.k,
        "theta": theta,
        "z": list(result.law.z),
        "converged": result.converged,
        "iterations": result.iterations,
        "residual": result.residual,
    }


def _by_branch(rows: list[ScanRow]) -> dict[int, dict[str, list[float]]]:
    series: dict[int, dict[str, list[float]]] = defaultdict(
        lambda: {"theta": [], "x": [], "y": [], "eta": [], "kappa": [], "u": []}
    )
    for r in rows:
        s = series[r.branch]
        s["theta"].append(r.theta)
        s["x"].append(r.x)
        s["y"].append(r.y)
        s["eta"].append(r.eta)
        s["kappa"].append(r.kappa)
        s["u"].append(r.u)
    return series


_BRANCH_COLORS = {
    1: "tab:blue",
    2: "tab:orange",
    3: "tab:green",
    4: "tab:red",
    5: "tab:purple",
    6: "tab:brown",
    7: "tab:pink",
}


def _curve_figure(plt, series, field, title, ylabel, marks=(), zero_line=False):
    fig, ax = plt.subplots(figsize=(7, 4.5))
    for branch in sorted(series):
        s = series[branch]
        ax.plot(
            s["theta"],
            s[field],
            color=_BRANCH_COLORS[branch],
            label=f"branch {branch}",
            linewidth=1.2,
        )
    if zero_line:
        ax.axhline(0.0, color="black", linewidth=0.6)
    for label, value in marks:
        ax.axvline(value, color="gray", linestyle="--", linewidth=0.8)
        ax.annotate(label, (value, ax.get_ylim()[1]), fontsize=8, ha="left")
    ax.set_xlabel("theta")
    ax.set_ylabel(ylabel)
    ax.set_title(title)
    ax.legend(fontsize=8)
    fig.tight_layout()
    return fig


def render_report(
    output_dir: str,
    steps: int = 400,
    samples: int = 2000,
    seed: int = 20240801,
    max_depth: int = 8,
) -> list[str]:
    """Write the scan CSV, thresholds JSON, TV CSVs, and PNG figures.

    Returns the list of file paths written.
    """
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    os.makedirs(output_dir, exist_ok=True)
    written: list[str] = []

    def path(name: str) -> str:
        p = os.path.join(output_dir, name)
        written.append(p)
        return p

    rows_low = phase_diagram(0.05, 0.34, steps)
    rows_full = phase_diagram(0.05, 3.2, steps)
    with open(path("phase_scan.csv"), "w", encoding="utf-8", newline="") as fh:
        write_scan_csv(rows_full, fh)

    ts = find_all_thresholds()
    with open(path("thresholds.json"), "w", encoding="utf-8") as fh:
        json.dump(threshold_set_to_dict(ts), fh, indent=2)
        fh.write("\n")

    low = _by_branch(rows_low)
    full = _by_branch(rows_full)

    fig = _curve_figure(
        plt,
        {b: s for b, s in low.items() if b >= 4},
        "x",
        "asymmetric boundary-law coordinates",
        "x",
        marks=[("theta_c", ts.theta_c), ("theta_c'", ts.theta_c_prime)],
    )
    fig.savefig(path("fig_x_curves.png"), dpi=140)
    plt.close(fig)

    fig = _curve_figure(
        plt,
        low,
        "y",
        "boundary-law y coordinates",
        "y",
        marks=[("theta_c", ts.theta_c), ("theta_c'", ts.theta_c_prime)],
    )
    fig.savefig(path("fig_y_curves.png"), dpi=140)
    plt.close(fig)

    fig = _curve_figure(
        plt,
        full,
        "eta",
        "spectral indicator (positive: census-reconstructible)",
        "eta",
        marks=[("theta*", ts.theta_star), ("theta__", ts.theta_double_bar)],
        zero_line=True,
    )
    fig.savefig(path("fig_eta.png"), dpi=140)
    plt.close(fig)

    fig = _curve_figure(
        plt,
        {b: s for b, s in full.items() if b not in (2, 3)},
        "u",
        "percolation indicator (negative: extreme)",
        "u",
        marks=[("theta**", ts.theta_double_star), ("theta_", ts.theta_bar)],
        zero_line=True,
    )
    fig.savefig(path("fig_u.png"), dpi=140)
    plt.close(fig)

    fig = _curve_figure(plt, full, "kappa", "row-disagreement rate", "kappa")
    fig.savefig(path("fig_kappa.png"), dpi=140)
    plt.close(fig)

    curves = [
        (1.0, 1, "theta=1.0 branch 1"),
        (3.0, 1, "theta=3.0 branch 1"),
        (0.10, 2, "theta=0.10 branch 2"),
        (0.20, 4, "theta=0.20 branch 4"),
    ]
    fig, ax = plt.subplots(figsize=(7, 4.5))
    for theta, branch, label in curves:
        ests = decay_curve(theta, branch, max_depth, samples, seed)
        name = f"tv_theta{theta:g}_branch{branch}.csv"
        with open(path(name), "w", encoding="utf-8", newline="") as fh:
            write_tv_csv(ests, fh)
        ax.errorbar(
            [e.depth for e in ests],
            [e.tv for e in ests],
            yerr=[3.0 * e.stderr for e in ests],
            label=label,
            marker="o",
            markersize=3,
            linewidth=1.0,
            capsize=2,
        )
    ax.set_xlabel("depth")
    ax.set_ylabel("census TV estimate")
    ax.set_title(f"census reconstruction ({RNG_NAME}, n={samples}, seed={seed})")
    ax.set_ylim(-0.05, 1.05)
    ax.legend(fontsize=8)
    fig.tight_layout()
    fig.savefig(path("fig_tv_decay.png"), dpi=140)
    plt.close(fig)

    return written
