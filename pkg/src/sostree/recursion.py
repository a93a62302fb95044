"""General boundary-field recursion for m + 1 spin values on the k-regular tree.

Used as an independent consistency oracle for the m = 2, k = 2 catalog and as
an exploration tool for other (m, k). Iteration runs in log coordinates so
positivity is free and overflow is impossible.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import algebra
from .errors import DomainError


@dataclass(frozen=True)
class TiLaw:
    """Translation-invariant law z_i = exp(h_i), i = 0..m-1 (last spin pinned)."""

    z: tuple[float, ...]
    m: int
    k: int

    def __post_init__(self):
        if self.m < 1 or self.k < 1:
            raise DomainError(f"need m >= 1 and k >= 1, got m={self.m}, k={self.k}")
        if len(self.z) != self.m:
            raise DomainError(f"law has {len(self.z)} components, expected m={self.m}")
        arr = np.asarray(self.z, dtype=float)
        if not np.all(np.isfinite(arr)) or np.any(arr <= 0.0):
            raise DomainError("law components must be positive and finite")


@dataclass(frozen=True)
class FixedPointResult:
    law: TiLaw
    converged: bool
    iterations: int
    residual: float  # max |map(z) - z| / max(1, z)


def recursion_F(h, m: int, theta: float) -> np.ndarray:
    """One log-domain recursion step for the boundary field h (length m).

    Component i is ln of (sum_j theta^|i-j| e^{h_j} + theta^{m-i}) over
    (sum_j theta^{m-j} e^{h_j} + 1); the pinned spin m contributes the
    trailing terms with h_m = 0.
    """
    th = algebra.check_theta(theta)
    if m < 1:
        raise DomainError(f"need m >= 1, got {m}")
    hv = np.asarray(h, dtype=float)
    if hv.shape != (m,):
        raise DomainError(f"h must have shape ({m},), got {hv.shape}")
    log_th = np.log(th)
    j = np.arange(m)
    i = j[:, None]
    # numerator exponents for each (i, j), plus the pinned j = m column
    num = np.concatenate(
        [np.abs(i - j[None, :]) * log_th + hv[None, :], (m - i) * log_th], axis=1
    )
    den = np.concatenate([(m - j) * log_th + hv, [0.0]])
    return np.logaddexp.reduce(num, axis=1) - np.logaddexp.reduce(den)


def ti_fixed_point_map(law: TiLaw, theta: float) -> TiLaw:
    """Apply the translation-invariant map z -> ((...)/(...))^k componentwise."""
    h = np.log(np.asarray(law.z, dtype=float))
    h_next = law.k * recursion_F(h, law.m, theta)
    return TiLaw(tuple(np.exp(h_next)), law.m, law.k)


def iterate_to_fixed_point(
    z0: TiLaw,
    theta: float,
    damping: float = 0.5,
    tol: float = 1e-12,
    max_iter: int = 10000,
) -> FixedPointResult:
    """Damped iteration h <- (1-damping) h + damping k F(h) until stationary.

    Reports convergence instead of raising: near critical couplings the
    map's contraction rate approaches 1 and a stall is informative.
    """
    if not (0.0 < damping <= 1.0):
        raise DomainError(f"damping must be in (0, 1], got {damping}")
    if tol <= 0.0 or max_iter < 1:
        raise DomainError("tol must be positive and max_iter >= 1")
    th = algebra.check_theta(theta)
    h = np.log(np.asarray(z0.z, dtype=float))
    converged = False
    iterations = max_iter
    for it in range(1, max_iter + 1):
        # gauge stationarity by the undamped gap so that converged
        # always implies residual <= tol regardless of damping
        step = z0.k * recursion_F(h, z0.m, th) - h
        if float(np.max(np.abs(step))) <= tol:
            converged = True
            iterations = it
            break
        h = h + damping * step
    z = np.exp(h)
    law = TiLaw(tuple(z), z0.m, z0.k)
    mapped = np.asarray(ti_fixed_point_map(law, th).z)
    residual = float(np.max(np.abs(mapped - z) / np.maximum(1.0, z)))
    return FixedPointResult(law, converged, iterations, residual)
