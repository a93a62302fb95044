"""Catalog of translation-invariant boundary laws (x, y) for k = 2, m = 2.

Branches follow a fixed labeling: 1..3 are the symmetric laws (x = 1) with
y descending (branch 1 = largest root, always present), 4..7 are the
asymmetric laws ordered x4 < x5 < 1 < x6 < x7.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from . import algebra
from .errors import DomainError, NumericError

# a user theta within this absolute window of a critical point is treated
# as sitting exactly at it (the merged-branch catalogs are reported there)
CRITICAL_SNAP_TOL = 5e-5

# residual allowance for merged laws at a snapped critical point; the true
# critical sits up to CRITICAL_SNAP_TOL away so the merged law solves the
# system only to O(|theta - theta_crit|)
MERGED_RESIDUAL_TOL = 5e-4

_EXACT_RESIDUAL_TOL = 1e-9

MIRROR_BRANCH = {1: 1, 2: 2, 3: 3, 4: 7, 5: 6, 6: 5, 7: 4}


class Regime(Enum):
    Unique = "Unique"
    AtThetaCPrime = "AtThetaCPrime"
    Five = "Five"
    AtThetaC = "AtThetaC"
    Seven = "Seven"


@dataclass(frozen=True)
class BoundaryLaw:
    x: float
    y: float
    branch: int
    merged: bool = False  # True for the coincidence branches at snapped criticals

    def __post_init__(self):
        if not (self.x > 0.0 and self.y > 0.0):
            raise DomainError(f"boundary law needs positive coordinates, got {self}")
        if self.branch not in range(1, 8):
            raise DomainError(f"branch id must be 1..7, got {self.branch}")


@dataclass(frozen=True)
class SolutionCatalog:
    theta: float
    laws: tuple[BoundaryLaw, ...]
    regime: Regime

    def branches(self) -> tuple[int, ...]:
        return tuple(law.branch for law in self.laws)

    def law(self, branch: int) -> BoundaryLaw:
        for law in self.laws:
            if law.branch == branch:
                return law
        raise DomainError(
            f"branch {branch} does not exist at theta={self.theta} "
            f"(regime {self.regime.value}, branches {self.branches()})"
        )


def system_residual(theta: float, x: float, y: float) -> tuple[float, float]:
    """Deviation of (x, y) from the two fixed-point equations, as printed."""
    th = algebra.check_theta(theta)
    z = th * th * x * x + th * y * y + 1.0
    res_a = x - (x * x + th * y * y + th * th) / z
    res_b = y - (th * x * x + y * y + th) / z
    return res_a, res_b


def x_pair_from_xi(xi: float) -> tuple[float, float]:
    """Both solutions of x + 1/x = xi; product is 1 by construction."""
    if xi < 2.0:
        raise DomainError(f"xi must be >= 2, got {xi}")
    s = math.sqrt(xi * xi - 4.0)
    x_plus = 0.5 * (xi + s)
    # algebraically (xi - s)/2; this form avoids cancellation for large xi
    x_minus = 1.0 / x_plus
    return x_minus, x_plus


def y_from_x(theta: float, x: float) -> float:
    """Positive y on the asymmetric-solution curve through x."""
    th = algebra.check_theta(theta)
    radicand = (1.0 - th * th) * x - th * th * (x * x + 1.0)
    if radicand <= 0.0:
        raise DomainError(
            f"no positive y at theta={th}, x={x}: radicand {radicand} <= 0"
        )
    return math.sqrt(radicand / th)


def mirror_image(law: BoundaryLaw) -> BoundaryLaw:
    """The height-reflection image (1/x, y/x); solves the same system.

    At the upper critical coupling the asymmetric pairs have collapsed to
    the surviving branches 4 and 6, which are then each other's images.
    """
    if law.merged and law.branch in (4, 6):
        target = 10 - law.branch
    else:
        target = MIRROR_BRANCH[law.branch]
    return BoundaryLaw(1.0 / law.x, law.y / law.x, target, law.merged)


def _check_law(theta: float, law: BoundaryLaw) -> BoundaryLaw:
    tol = MERGED_RESIDUAL_TOL if law.merged else _EXACT_RESIDUAL_TOL
    ra, rb = system_residual(theta, law.x, law.y)
    if max(abs(ra), abs(rb)) > tol:
        raise NumericError(
            f"law branch {law.branch} at theta={theta} has residual "
            f"({ra:.3e}, {rb:.3e}) above {tol}"
        )
    return law


def _symmetric_laws(theta: float, merged_only_survivor: bool) -> list[BoundaryLaw]:
    """Branches 1..3. In the merged case the double root is branch 3."""
    roots = algebra.solve_cubic_y(theta)
    ys = list(roots.roots)
    if merged_only_survivor:
        y1 = max(ys)
        # merge point of the two lower roots: the inflection-side critical
        # point of the cubic (where the vanished pair sat)
        th = theta
        disc = 1.0 - 3.0 * th * (th * th + 1.0)
        if disc < 0.0:
            raise NumericError(f"cubic has no fold near theta={th}")
        y3 = (1.0 - math.sqrt(disc)) / (3.0 * th)
        return [
            BoundaryLaw(1.0, y1, 1),
            BoundaryLaw(1.0, y3, 3, merged=True),
        ]
    if len(ys) == 1:
        return [BoundaryLaw(1.0, ys[0], 1)]
    if len(ys) == 2:
        # genuine double root straddled by the solver; label it branch 3
        lo, hi = ys
        return [BoundaryLaw(1.0, hi, 1), BoundaryLaw(1.0, lo, 3, merged=True)]
    y3, y2, y1 = ys
    return [
        BoundaryLaw(1.0, y1, 1),
        BoundaryLaw(1.0, y2, 2),
        BoundaryLaw(1.0, y3, 3),
    ]


def _asymmetric_laws(theta: float, merged: bool) -> list[BoundaryLaw]:
    """Branches 4..7 from the xi roots; 4/6 only at the coincidence point."""
    if merged:
        th = theta
        xi_bar = (1.0 - 3.0 * th * th) / (2.0 * th * th)
        x4, x6 = x_pair_from_xi(xi_bar)
        return [
            BoundaryLaw(x4, y_from_x(th, x4), 4, merged=True),
            BoundaryLaw(x6, y_from_x(th, x6), 6, merged=True),
        ]
    xi = algebra.solve_xi(theta)
    if len(xi) != 2:
        raise NumericError(
            f"expected two xi roots at theta={theta}, got {len(xi)}"
        )
    xi1, xi2 = xi.roots
    x4, x7 = x_pair_from_xi(xi2)
    x5, x6 = x_pair_from_xi(xi1)
    return [
        BoundaryLaw(x4, y_from_x(theta, x4), 4),
        BoundaryLaw(x5, y_from_x(theta, x5), 5),
        BoundaryLaw(x6, y_from_x(theta, x6), 6),
        BoundaryLaw(x7, y_from_x(theta, x7), 7),
    ]


def enumerate_tisgms(theta: float) -> SolutionCatalog:
    """All translation-invariant boundary laws at theta, tagged by regime."""
    th = algebra.check_theta(theta)
    tc = algebra.cubic_critical_theta()
    tcp = algebra.theta_c_prime()

    if abs(th - tc) <= CRITICAL_SNAP_TOL:
        regime = Regime.AtThetaC
        laws = _symmetric_laws(th, merged_only_survivor=True)
        laws += _asymmetric_laws(th, merged=False)
    elif abs(th - tcp) <= CRITICAL_SNAP_TOL:
        regime = Regime.AtThetaCPrime
        sym = _symmetric_laws(th, merged_only_survivor=False)
        laws = [law for law in sym if law.branch == 1]
        laws += _asymmetric_laws(th, merged=True)
    elif th > tcp:
        regime = Regime.Unique
        laws = _symmetric_laws(th, merged_only_survivor=False)
        if len(laws) != 1:
            raise NumericError(f"expected a single law at theta={th}, got {len(laws)}")
    elif th > tc:
        regime = Regime.Five
        laws = _symmetric_laws(th, merged_only_survivor=False)
        if len(laws) != 1:
            raise NumericError(
                f"expected one symmetric law at theta={th}, got {len(laws)}"
            )
        laws += _asymmetric_laws(th, merged=False)
    else:
        regime = Regime.Seven
        laws = _symmetric_laws(th, merged_only_survivor=False)
        laws += _asymmetric_laws(th, merged=False)

    laws.sort(key=lambda law: law.branch)
    for law in laws:
        _check_law(th, law)
    return SolutionCatalog(th, tuple(laws), regime)
