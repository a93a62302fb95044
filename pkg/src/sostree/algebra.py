"""Root solvers for the two polynomials behind the boundary-law catalog.

The cubic in y (symmetric laws) and the quadratic in xi = x + 1/x
(asymmetric laws) have structure worth exploiting: closed forms plus a
short Newton polish beat generic solvers near the fold points where two
roots collide.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from functools import lru_cache

from .errors import BracketingError, DomainError, NumericError

THETA_MIN = 1e-4
THETA_MAX = 1e4

# two roots closer than this (relative) are one double root; fold geometry
# makes anything tighter undetectable in float64
MERGE_REL = 1e-5

_ZERO_TOL = 1e-14


def check_theta(theta: float) -> float:
    """Validate the coupling parameter and return it as a float."""
    try:
        th = float(theta)
    except (TypeError, ValueError) as exc:
        raise DomainError(f"theta must be a real number, got {theta!r}") from exc
    if not math.isfinite(th) or th <= 0.0:
        raise DomainError(f"theta must be positive and finite, got {th}")
    if th < THETA_MIN or th > THETA_MAX:
        raise DomainError(
            f"theta={th} outside supported domain [{THETA_MIN}, {THETA_MAX}]"
        )
    return th


@dataclass(frozen=True)
class RootSet:
    """Real roots sorted ascending; double[i] marks a merged double root."""

    roots: tuple[float, ...]
    double: tuple[bool, ...] = field(default=())

    def __post_init__(self):
        if len(self.double) != len(self.roots):
            object.__setattr__(self, "double", tuple(False for _ in self.roots))
        if any(self.roots[i] > self.roots[i + 1] for i in range(len(self.roots) - 1)):
            raise NumericError("RootSet must be sorted ascending")

    def __len__(self):
        return len(self.roots)


def cubic_coeffs(theta: float) -> tuple[float, float, float, float]:
    """Coefficients (a, b, c, d) of a*y^3 + b*y^2 + c*y + d for symmetric laws."""
    return theta, -1.0, theta * theta + 1.0, -2.0 * theta


def cubic_value(theta: float, y: float) -> float:
    a, b, c, d = cubic_coeffs(theta)
    return ((a * y + b) * y + c) * y + d


def cubic_discriminant(theta: float) -> float:
    """Discriminant of the symmetric-law cubic; positive iff three real roots."""
    a, b, c, d = cubic_coeffs(theta)
    return (
        18.0 * a * b * c * d
        - 4.0 * b ** 3 * d
        + b * b * c * c
        - 4.0 * a * c ** 3
        - 27.0 * a * a * d * d
    )


def _newton_polish(a, b, c, d, r, steps=3):
    for _ in range(steps):
        f = ((a * r + b) * r + c) * r + d
        fp = (3.0 * a * r + 2.0 * b) * r + c
        if fp == 0.0 or not math.isfinite(fp):
            break
        step = f / fp
        if not math.isfinite(step):
            break
        r -= step
    return r


def _cardano(a: float, b: float, c: float, d: float) -> list[complex]:
    """All three complex roots of a*y^3+b*y^2+c*y+d, a != 0."""
    d0 = b * b - 3.0 * a * c
    d1 = 2.0 * b ** 3 - 9.0 * a * b * c + 27.0 * a * a * d
    inner = cmath.sqrt(complex(d1 * d1 - 4.0 * d0 ** 3))
    # pick the branch that avoids cancellation in d1 -+ inner
    cand1 = (d1 + inner) / 2.0
    cand2 = (d1 - inner) / 2.0
    big = cand1 if abs(cand1) >= abs(cand2) else cand2
    if big == 0:
        return [complex(-b / (3.0 * a))] * 3
    cc = big ** (1.0 / 3.0)
    omega = complex(-0.5, math.sqrt(3.0) / 2.0)
    roots = []
    for k in range(3):
        ck = cc * omega ** k
        roots.append(-(b + ck + d0 / ck) / (3.0 * a))
    return roots


def solve_cubic_y(theta: float) -> RootSet:
    """Positive real roots of the symmetric-law cubic, ascending.

    Closed-form roots are polished with three Newton steps. A conjugate
    pair hugging the real axis (relative imaginary part below MERGE_REL)
    is the fold signature and is reported as one double root, as is a
    pair of real roots closer than MERGE_REL.
    """
    th = check_theta(theta)
    a, b, c, d = cubic_coeffs(th)
    raw = _cardano(a, b, c, d)

    reals: list[tuple[float, bool]] = []  # (root, is_double)
    used = [False] * 3
    for i, z in enumerate(raw):
        if used[i]:
            continue
        scale = max(1.0, abs(z))
        if abs(z.imag) <= 1e-10 * scale:
            reals.append((z.real, False))
            used[i] = True
            continue
        # look for the conjugate partner; a near-real pair is a double root
        for j in range(i + 1, 3):
            if used[j]:
                continue
            if abs(raw[j] - z.conjugate()) <= 1e-8 * scale:
                if abs(z.imag) <= MERGE_REL * scale:
                    reals.append((z.real, True))
                used[i] = used[j] = True
                break

    polished = [(_newton_polish(a, b, c, d, r), dbl) for r, dbl in reals]
    polished = [(r, dbl) for r, dbl in polished if r > 0.0 and math.isfinite(r)]
    polished.sort()

    # merge simple roots that collapsed within the double-root window
    roots: list[float] = []
    double: list[bool] = []
    for r, dbl in polished:
        if roots and abs(r - roots[-1]) <= MERGE_REL * max(1.0, abs(r)):
            roots[-1] = 0.5 * (roots[-1] + r)
            double[-1] = True
        else:
            roots.append(r)
            double.append(dbl)

    for r in roots:
        res = abs(cubic_value(th, r))
        if res > 1e-10 * max(1.0, abs(r) ** 3):
            raise NumericError(f"cubic root residual {res} at theta={th}, y={r}")
    return RootSet(tuple(roots), tuple(double))


@lru_cache(maxsize=1)
def cubic_critical_theta() -> float:
    """The unique theta in (0, 1) where the cubic discriminant vanishes."""
    root = bisect(cubic_discriminant, 0.1, 0.2, 1e-15)
    if abs(cubic_discriminant(root)) > 1e-12:
        raise NumericError("discriminant residual too large at critical theta")
    return root


def xi_discriminant(theta: float) -> float:
    """Sign decides how many asymmetric xi roots exist (positive: two)."""
    return theta * theta * (theta - 1.0) * (theta ** 3 + theta * theta + 3.0 * theta - 1.0)


@lru_cache(maxsize=1)
def theta_c_prime() -> float:
    """Closed-form zero of the xi discriminant on (0, 1)."""
    t = (26.0 + 6.0 * math.sqrt(33.0)) ** (1.0 / 3.0)
    val = (t - 8.0 / t - 1.0) / 3.0
    if abs(xi_discriminant(val)) > 1e-12:
        raise NumericError("xi discriminant does not vanish at closed-form root")
    return val


def solve_xi(theta: float) -> RootSet:
    """Roots xi of the asymmetric-law quadratic, ascending (0, 1, or 2 of them)."""
    th = check_theta(theta)
    if th >= 1.0:
        raise DomainError("asymmetric laws require theta < 1")
    # inner discriminant: xi_discriminant without the theta^2 factor
    dq = (th - 1.0) * (th ** 3 + th * th + 3.0 * th - 1.0)
    two_th2 = 2.0 * th * th
    mid = (1.0 - 3.0 * th * th) / two_th2
    if dq < -_ZERO_TOL:
        return RootSet(())
    if dq <= _ZERO_TOL:
        return RootSet((mid,), (True,))
    half = math.sqrt(dq) / two_th2
    lo, hi = mid - half, mid + half
    if hi - lo <= MERGE_REL * max(1.0, abs(hi)):
        return RootSet((0.5 * (lo + hi),), (True,))
    return RootSet((lo, hi), (False, False))


def bisect(f, lo: float, hi: float, tol: float) -> float:
    """Midpoint bisection; deterministic, at most 200 halvings."""
    if not (lo < hi) or not (tol > 0.0):
        raise DomainError(f"invalid bracket [{lo}, {hi}] or tol {tol}")
    flo, fhi = f(lo), f(hi)
    if not (math.isfinite(flo) and math.isfinite(fhi)):
        raise NumericError(f"non-finite endpoint values f({lo})={flo}, f({hi})={fhi}")
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if flo * fhi > 0.0:
        raise BracketingError(f"no sign change on [{lo}, {hi}]")
    for _ in range(200):
        mid = 0.5 * (lo + hi)
        fmid = f(mid)
        if not math.isfinite(fmid):
            raise NumericError(f"non-finite value f({mid})={fmid}")
        if fmid == 0.0:
            return mid
        if flo * fmid < 0.0:
            hi = mid
        else:
            lo, flo = mid, fmid
        if hi - lo <= tol:
            break
    return 0.5 * (lo + hi)
