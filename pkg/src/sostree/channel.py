"""Tree-indexed Markov chain attached to a boundary law.

The transition matrix has two equivalent printed forms: per-row normalized
weights, and a common-denominator form that uses the fixed-point identities.
We build from the first (rows are stochastic by construction) and verify the
second, which only holds because (x, y) solves the system.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import algebra
from .boundary import BoundaryLaw, SolutionCatalog, enumerate_tisgms
from .errors import DomainError, NumericError


@dataclass(frozen=True)
class Channel:
    p: np.ndarray  # 3x3 row-stochastic
    z_norm: float
    theta: float
    law: BoundaryLaw


@dataclass(frozen=True)
class SpectralSummary:
    lambda1: float
    lambda2: float
    lambda_max: float
    eta: float
    achieved_by: str  # "lambda1" or "lambda2"


def weight_matrix(theta: float, x: float, y: float) -> np.ndarray:
    """Unnormalized interaction weights W[a, s] between parent a and child s."""
    th = algebra.check_theta(theta)
    if not (x > 0.0 and y > 0.0 and math.isfinite(x) and math.isfinite(y)):
        raise DomainError(f"law coordinates must be positive, got x={x}, y={y}")
    x2, y2 = x * x, y * y
    return np.array(
        [
            [x2, th * y2, th * th],
            [th * x2, y2, th],
            [th * th * x2, th * y2, 1.0],
        ]
    )


def build_channel(theta: float, law: BoundaryLaw) -> Channel:
    th = algebra.check_theta(theta)
    x, y = law.x, law.y
    z = th * th * x * x + th * y * y + 1.0

    w = weight_matrix(th, x, y)
    p = w / w.sum(axis=1, keepdims=True)

    # common-denominator form; rows scaled by 1/x, 1/y, 1 share the single Z
    scaled = w / np.array([[x], [y], [1.0]])
    p_common = scaled / z
    tol = 5e-4 if law.merged else 1e-10
    if not np.allclose(p, p_common, rtol=0.0, atol=tol):
        raise DomainError(
            f"law branch {law.branch} at theta={th} does not solve the system: "
            f"row forms differ by {np.max(np.abs(p - p_common)):.3e}"
        )

    if np.any(p <= 0.0):
        raise NumericError("channel entries must be strictly positive")
    if np.max(np.abs(p.sum(axis=1) - 1.0)) > 1e-12:
        raise NumericError("channel rows must sum to 1")
    return Channel(p, z, th, law)


def stationary_distribution(ch: Channel) -> np.ndarray:
    """The unique pi with pi P = pi, sum 1."""
    a = ch.p.T - np.eye(3)
    a[2, :] = 1.0
    b = np.array([0.0, 0.0, 1.0])
    try:
        pi = np.linalg.solve(a, b)
    except np.linalg.LinAlgError as exc:
        raise NumericError("stationary system is singular") from exc
    if np.max(np.abs(pi @ ch.p - pi)) > 1e-12 or np.any(pi <= 0.0):
        raise NumericError(f"stationary solve failed: pi={pi}")
    return pi


def analytic_eigenvalues(theta: float, law: BoundaryLaw) -> tuple[float, float]:
    """The two non-unit eigenvalues in closed form, smaller first.

    Both returned values are checked against the quadratic they must solve;
    the residual is normalized by the largest coefficient since Z, x span
    orders of magnitude across branches.
    """
    th = algebra.check_theta(theta)
    x, y = law.x, law.y
    z = th * th * x * x + th * y * y + 1.0
    s = 1.0 + x + y - 3.0 * z
    c = th * th * (1.0 + x ** 3 + y ** 3)
    disc = s * s - 4.0 * z * c / x
    scale = max(1.0, s * s, abs(4.0 * z * c / x))
    if disc < 0.0:
        if disc < -1e-10 * scale:
            raise NumericError(
                f"eigenvalue discriminant {disc} substantially negative at "
                f"theta={th}, branch {law.branch}; complex eigenvalues"
            )
        disc = 0.0
    root = math.sqrt(disc)
    lam1 = (x + y + 1.0 - z - root) / (2.0 * z)
    lam2 = (x + y + 1.0 - z + root) / (2.0 * z)

    qscale = max(abs(z * x), abs(x * s), abs(c))
    for lam in (lam1, lam2):
        one = 1.0 - lam
        res = z * x * one * one + x * s * one + c
        if abs(res) > 1e-9 * qscale:
            raise NumericError(
                f"eigenvalue {lam} fails its quadratic: residual {res:.3e} "
                f"(scale {qscale:.3e})"
            )
    return lam1, lam2


# which eigenvalue is expected to dominate, per branch and side of theta = 1
def _expected_dominant(branch: int, theta: float) -> str:
    if branch == 1 and theta > 1.0:
        return "lambda1"
    return "lambda2"


def spectral_summary_for_law(theta: float, law: BoundaryLaw) -> SpectralSummary:
    lam1, lam2 = analytic_eigenvalues(theta, law)
    a1, a2 = abs(lam1), abs(lam2)
    if max(a1, a2) > 1.0 + 1e-12:
        raise NumericError(f"eigenvalue above 1: {lam1}, {lam2}")
    if abs(a1 - a2) <= 1e-12:
        achieved = _expected_dominant(law.branch, theta)
    else:
        achieved = "lambda1" if a1 > a2 else "lambda2"
        expected = _expected_dominant(law.branch, theta)
        if achieved != expected:
            raise NumericError(
                f"dominant eigenvalue {achieved} contradicts the expected "
                f"{expected} for branch {law.branch} at theta={theta}"
            )
    lam_max = max(a1, a2)
    eta = 2.0 * lam_max * lam_max - 1.0
    return SpectralSummary(lam1, lam2, lam_max, eta, achieved)


def spectral_summary(theta: float, branch: int) -> SpectralSummary:
    catalog: SolutionCatalog = enumerate_tisgms(theta)
    return spectral_summary_for_law(catalog.theta, catalog.law(branch))
