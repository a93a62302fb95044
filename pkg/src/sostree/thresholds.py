"""Locate the six critical couplings and tabulate the phase diagram."""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from functools import lru_cache

from . import algebra
from .boundary import enumerate_tisgms
from .channel import analytic_eigenvalues, spectral_summary
from .errors import BracketingError, DomainError
from .extremality import Verdict, classify_law, msw_indicator

_SCAN_STEP = 1e-3
_BISECT_TOL = 1e-10


@dataclass(frozen=True)
class ThresholdSet:
    theta_c: float
    theta_c_prime: float
    theta_star: float
    theta_double_star: float
    theta_bar: float
    theta_double_bar: float
    residuals: dict
    brackets: dict

    def __post_init__(self):
        ordered = (
            self.theta_c
            < self.theta_star
            < self.theta_double_star
            < self.theta_c_prime
            < 1.0
            < self.theta_bar
            < self.theta_double_bar
        )
        if not ordered:
            raise DomainError(f"thresholds out of order: {self}")

    def as_dict(self) -> dict:
        return {
            "theta_c": self.theta_c,
            "theta_c_prime": self.theta_c_prime,
            "theta_star": self.theta_star,
            "theta_double_star": self.theta_double_star,
            "theta_bar": self.theta_bar,
            "theta_double_bar": self.theta_double_bar,
        }


@dataclass(frozen=True)
class ScanRow:
    theta: float
    branch: int
    x: float
    y: float
    lambda1: float
    lambda2: float
    eta: float
    kappa: float
    u: float
    verdict: str


def _scan_then_bisect(name: str, f, lo: float, hi: float, step: float = _SCAN_STEP):
    """First sign change of f on [lo, hi] at resolution step, then bisection."""
    prev_t, prev_v = lo, f(lo)
    t = lo
    while t < hi:
        t = min(t + step, hi)
        v = f(t)
        if prev_v == 0.0:
            return prev_t, (prev_t, t)
        if prev_v * v < 0.0:
            root = algebra.bisect(f, prev_t, t, _BISECT_TOL)
            return root, (prev_t, t)
        prev_t, prev_v = t, v
    raise BracketingError(f"no sign change for indicator {name} on [{lo}, {hi}]")


def _eta(branch: int):
    return lambda th: spectral_summary(th, branch).eta


def _u(branch: int):
    return lambda th: msw_indicator(th, branch)


@lru_cache(maxsize=1)
def find_all_thresholds() -> ThresholdSet:
    """All six critical couplings, each bracketed then bisected to 1e-10."""
    tc = algebra.cubic_critical_theta()
    tcp = algebra.theta_c_prime()

    # keep scan endpoints away from the snapped critical windows
    lo5 = tc + 2.0e-4
    hi5 = tcp - 2.0e-4

    theta_star, br_star = _scan_then_bisect("eta_branch5", _eta(5), lo5, hi5)
    theta_dstar, br_dstar = _scan_then_bisect(
        "u_branch5", _u(5), theta_star + 1e-6, hi5
    )
    theta_bar, br_bar = _scan_then_bisect("u_branch1", _u(1), 1.0, 4.0)
    theta_dbar, br_dbar = _scan_then_bisect("eta_branch1", _eta(1), 2.0, 4.0)

    residuals = {
        "theta_c": abs(algebra.cubic_discriminant(tc)),
        "theta_c_prime": abs(algebra.xi_discriminant(tcp)),
        "theta_star": abs(_eta(5)(theta_star)),
        "theta_double_star": abs(_u(5)(theta_dstar)),
        "theta_bar": abs(_u(1)(theta_bar)),
        "theta_double_bar": abs(_eta(1)(theta_dbar)),
    }
    brackets = {
        "theta_c": (0.1, 0.2),
        "theta_c_prime": (0.2, 0.3),
        "theta_star": br_star,
        "theta_double_star": br_dstar,
        "theta_bar": br_bar,
        "theta_double_bar": br_dbar,
    }
    for name, res in residuals.items():
        if res > 1e-9:
            raise DomainError(f"threshold {name} residual {res} above 1e-9")
    return ThresholdSet(
        tc, tcp, theta_star, theta_dstar, theta_bar, theta_dbar, residuals, brackets
    )


def _rows_at(theta: float) -> list[ScanRow]:
    cat = enumerate_tisgms(theta)
    rows = []
    for law in cat.laws:
        report = classify_law(cat.theta, law, cat)
        lam1, lam2 = analytic_eigenvalues(cat.theta, law)
        rows.append(
            ScanRow(
                cat.theta,
                law.branch,
                law.x,
                law.y,
                lam1,
                lam2,
                report.eta,
                report.kappa,
                report.u,
                report.verdict.value,
            )
        )
    return rows


def default_thread_count() -> int:
    raw = os.environ.get("SOSTREE_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        raise DomainError(f"SOSTREE_THREADS must be an integer, got {raw!r}")
    return max(1, n)


def phase_diagram(
    theta_min: float, theta_max: float, steps: int, threads: int | None = None
) -> list[ScanRow]:
    """One ScanRow per existing branch on an inclusive uniform grid.

    Rows are ordered by theta then branch regardless of the worker schedule.
    """
    if not (0.0 < theta_min <= theta_max):
        raise DomainError(f"need 0 < theta_min <= theta_max, got {theta_min}, {theta_max}")
    if steps < 1:
        raise DomainError(f"need steps >= 1, got {steps}")
    if steps == 1:
        if theta_min != theta_max:
            raise DomainError("a single-step scan needs theta_min == theta_max")
        grid = [theta_min]
    else:
        if theta_min == theta_max:
            raise DomainError("a multi-step scan needs theta_min < theta_max")
        grid = [
            theta_min + (theta_max - theta_min) * i / (steps - 1) for i in range(steps)
        ]
    if threads is None:
        threads = default_thread_count()
    threads = max(1, int(threads))
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            per_theta = list(pool.map(_rows_at, grid))
    else:
        per_theta = [_rows_at(th) for th in grid]
    return [row for rows in per_theta for row in rows]
