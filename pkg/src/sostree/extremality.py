"""Extremality classification of each measure: spectral condition vs the
disagreement-percolation bound.

kappa here always means the true half-maximal L1 distance between channel
rows. The per-branch indicator U uses the historical simplified case
formulas, which for branches 5, 6, 7 are built from one fixed row pair
rather than the maximal one (a lower bound on the maximal-pair indicator);
their roots define the reported thresholds. The maximal-pair variant is
exposed as msw_indicator_strict for comparison.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from . import algebra
from .boundary import BoundaryLaw, SolutionCatalog, enumerate_tisgms
from .channel import spectral_summary_for_law, weight_matrix
from .errors import DomainError

_U_BRANCHES = {1, 4, 5, 6, 7}


class Verdict(Enum):
    NonExtreme = "NonExtreme"
    Extreme = "Extreme"
    Undetermined = "Undetermined"


@dataclass(frozen=True)
class ExtremalityReport:
    branch: int
    theta: float
    eta: float
    kappa: float
    gamma_bound: float
    u: float
    verdict: Verdict


def gamma_upper_bound(theta: float) -> float:
    """Upper bound on the upward disagreement rate."""
    th = algebra.check_theta(theta)
    return abs(1.0 - th * th) / (1.0 + th * th)


def conditional_spin_probs(
    p0: float, p1: float, p2: float, parent_spin: int, theta: float, law: BoundaryLaw
) -> np.ndarray:
    """Reweight a free distribution (p0, p1, p2) by the parent's channel row."""
    p = np.array([p0, p1, p2], dtype=float)
    if np.any(p < -1e-12) or abs(p.sum() - 1.0) > 1e-9:
        raise DomainError(f"(p0, p1, p2) must be a probability vector, got {p}")
    if parent_spin not in (0, 1, 2):
        raise DomainError(f"parent_spin must be 0, 1, or 2, got {parent_spin}")
    th = algebra.check_theta(theta)
    w = weight_matrix(th, law.x, law.y)[parent_spin] * p
    return w / w.sum()


def _fg_denominators(t, u, theta: float, law: BoundaryLaw):
    th = theta
    x2 = law.x * law.x
    y2 = law.y * law.y
    d1 = (x2 - th * y2) * t + th * (th - y2) * u + th * y2
    d2 = th * (th * x2 - y2) * t + (1.0 - th * y2) * u + th * y2
    return x2, d1, d2


def _check_simplex(t, u):
    t = np.asarray(t, dtype=float)
    u = np.asarray(u, dtype=float)
    if np.any(t < -1e-12) or np.any(u < -1e-12) or np.any(t + u > 1.0 + 1e-12):
        raise DomainError("(t, u) must satisfy t >= 0, u >= 0, t + u <= 1")
    return t, u


def disagreement_f(t, u, theta: float, law: BoundaryLaw):
    """Root-spin disagreement seen on value 0; accepts scalars or arrays."""
    t, u = _check_simplex(t, u)
    th = algebra.check_theta(theta)
    x2, d1, d2 = _fg_denominators(t, u, th, law)
    out = x2 * t / d1 - x2 * th * th * t / d2
    return float(out) if np.isscalar(out) or out.ndim == 0 else out


def disagreement_g(t, u, theta: float, law: BoundaryLaw):
    """Root-spin disagreement seen on value 2; accepts scalars or arrays."""
    t, u = _check_simplex(t, u)
    th = algebra.check_theta(theta)
    _, d1, d2 = _fg_denominators(t, u, th, law)
    out = u / d2 - th * th * u / d1
    return float(out) if np.isscalar(out) or out.ndim == 0 else out


def kappa_general(theta: float, law: BoundaryLaw) -> float:
    """Half the maximal L1 distance between channel rows (three-pair formula)."""
    th = algebra.check_theta(theta)
    x, y = law.x, law.y
    x2, y2 = x * x, y * y
    z = th * th * x2 + th * y2 + 1.0
    t01 = (x2 * abs(y - th * x) + (y2 + th) * abs(x - th * y)) / (x * y)
    t02 = (x2 * abs(1.0 - th * th * x) + th * y2 * abs(1.0 - x) + abs(th * th - x)) / x
    t12 = ((th * x2 + y2) * abs(1.0 - th * y) + abs(th - y)) / y
    return max(t01, t02, t12) / (2.0 * z)


def kappa_closed_form(theta: float, branch: int, catalog: SolutionCatalog | None = None) -> float:
    """Simplified per-branch expression for kappa; equals kappa_general.

    Branches 2 and 3 have no simplified form and fall back to the general
    one. For the asymmetric branches the simplification uses the identity
    Z = (1 - theta^2)(1 + x), valid exactly on the solution curve.
    """
    th = algebra.check_theta(theta)
    cat = catalog if catalog is not None else enumerate_tisgms(th)
    law = cat.law(branch)
    x, y = law.x, law.y
    th2 = th * th
    if branch == 1:
        return abs(1.0 - th2) / (1.0 + th2 + th * y * y)
    if branch in (2, 3):
        return kappa_general(th, law)
    z = th2 * x * x + th * y * y + 1.0
    if branch in (4, 5):
        return (1.0 - th2) * (th * y * y + (th2 + 1.0) * x * x) / (x * z * z)
    return x * (1.0 - th2) * (1.0 + th2 + th * y * y) / (z * z)


def msw_indicator(theta: float, branch: int, catalog: SolutionCatalog | None = None) -> float:
    """Indicator 2 kappa_pair gamma_bound - 1 whose sign certifies extremality.

    Negative means extreme. Branch 1 uses the true kappa. Branches 4..7 use
    the historical per-branch case formulas: exact for branch 4 (and its
    mirror range), while for branches 5, 6, 7 the embedded kappa is the
    (1,2) / (0,1) row-pair distance, a lower bound on the true kappa; the
    reported thresholds are roots of these printed forms.
    """
    th = algebra.check_theta(theta)
    if branch not in _U_BRANCHES:
        raise DomainError(f"indicator defined for branches {sorted(_U_BRANCHES)}")
    cat = catalog if catalog is not None else enumerate_tisgms(th)
    law = cat.law(branch)
    x, y = law.x, law.y
    th2 = th * th
    one_m = 1.0 - th2
    one_p = 1.0 + th2
    if branch == 1:
        return 2.0 * one_m * one_m / (one_p * (one_p + th * y * y)) - 1.0
    z = th2 * x * x + th * y * y + 1.0
    if branch == 4:
        num = 2.0 * one_m * one_m * (th * y * y + (th2 + 1.0) * x * x)
        return num / (x * one_p * z * z) - 1.0
    if branch == 5:
        num = 2.0 * one_m * one_m * (th * x * x + y * y)
        return num / (y * one_p * z * z) - 1.0
    num = 2.0 * x * one_m * one_m * (y * y + th)
    return num / (y * one_p * z * z) - 1.0


def msw_indicator_strict(theta: float, branch: int, catalog: SolutionCatalog | None = None) -> float:
    """2 kappa gamma_bound - 1 with the true (maximal-pair) kappa, any branch."""
    th = algebra.check_theta(theta)
    cat = catalog if catalog is not None else enumerate_tisgms(th)
    law = cat.law(branch)
    return 2.0 * kappa_general(th, law) * gamma_upper_bound(th) - 1.0


def u1_printed_variant(theta: float) -> float:
    """Branch-1 indicator with the (1-theta)^2 numerator seen in older
    write-ups; kept for audit. It is negative for all theta > 1 and has no
    root near the reported branch-1 threshold."""
    th = algebra.check_theta(theta)
    cat = enumerate_tisgms(th)
    y = cat.law(1).y
    th2 = th * th
    return 2.0 * (1.0 - th) ** 2 / ((1.0 + th2) * (1.0 + th2 + th * y * y)) - 1.0


def classify_law(theta: float, law: BoundaryLaw, catalog: SolutionCatalog | None = None) -> ExtremalityReport:
    th = algebra.check_theta(theta)
    summary = spectral_summary_for_law(th, law)
    kappa = kappa_general(th, law)
    gamma = gamma_upper_bound(th)
    if law.branch in _U_BRANCHES:
        u = msw_indicator(th, law.branch, catalog)
    else:
        # no simplified indicator exists; report the true-kappa one
        u = 2.0 * kappa * gamma - 1.0
    if summary.eta > 0.0:
        verdict = Verdict.NonExtreme
    elif u < 0.0:
        verdict = Verdict.Extreme
    else:
        verdict = Verdict.Undetermined
    return ExtremalityReport(law.branch, th, summary.eta, kappa, gamma, u, verdict)


def classify_measure(theta: float, branch: int) -> ExtremalityReport:
    """Three-valued verdict for one branch at one coupling."""
    cat = enumerate_tisgms(theta)
    return classify_law(cat.theta, cat.law(branch), cat)
