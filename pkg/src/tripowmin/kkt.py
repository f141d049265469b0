"""First- and second-order certification of candidate minimizers.

The objective F is the powered-distance sum; the feasible set is the closed
triangle written as three linear inequalities g1 = ax - by + ab >= 0,
g2 = -ax - cy + ac >= 0, g3 = y >= 0. ``kkt_residual`` checks the
Karush-Kuhn-Tucker system at a point: multipliers for the active
constraints, stationarity of the Lagrangian, complementary slackness and
multiplier signs. ``hessian`` certifies strict convexity at interior
points.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from . import _kernels
from .errors import InvalidExponent, PointNotFeasible, PointNotInterior
from .geometry import CanonicalTriangle

_SIDE_LABELS = ("AB", "AC", "BC")


class Verdict(enum.Enum):
    SATISFIED = "satisfied"
    MULTIPLIER_NEGATIVE = "multiplier_negative"
    STATIONARITY_FAILED = "stationarity_failed"


class HessianInfo(NamedTuple):
    """Second derivatives of the objective at an interior point."""

    fxx: float
    fxy: float
    fyy: float
    det: float


@dataclass(frozen=True)
class KktReport:
    active_set: tuple[str, ...]
    multipliers: np.ndarray
    stationarity_residual: float
    complementary_slackness_residual: float
    hessian_fxx: float
    hessian_det: float
    verdict: Verdict


def _signed_distances(tri: CanonicalTriangle, x: float, y: float):
    a, b, c = tri.a, tri.b, tri.c
    s1 = (a * x - b * y + a * b) / tri.p
    s2 = (-a * x - c * y + a * c) / tri.q
    return s1, s2, y


def _check_n_gt1(n) -> float:
    n = float(n)
    if not math.isfinite(n) or n <= 1.0:
        raise InvalidExponent(f"exponent must be a finite real > 1, got {n!r}")
    return n


def evaluate_F(tri: CanonicalTriangle, n, point) -> float:
    """Powered-distance sum at any planar point (n >= 1)."""
    n = float(n)
    if not math.isfinite(n) or n < 1.0:
        raise InvalidExponent(f"exponent must be a finite real >= 1, got {n!r}")
    return float(
        _kernels.eval_f(tri.a, tri.b, tri.c, n, float(point[0]), float(point[1]))
    )


def gradient(tri: CanonicalTriangle, n, point) -> np.ndarray:
    """Gradient of F at a strictly interior point, n > 1."""
    n = _check_n_gt1(n)
    x, y = float(point[0]), float(point[1])
    if min(_signed_distances(tri, x, y)) <= 0.0:
        raise PointNotInterior(f"point {(x, y)} is not strictly inside the triangle")
    gx, gy = _kernels.grad_f(tri.a, tri.b, tri.c, n, x, y)
    return np.array([gx, gy])


def hessian(tri: CanonicalTriangle, n, point) -> HessianInfo:
    """Hessian entries and determinant of F at a strictly interior point.

    The determinant field comes from the expanded product form in the two
    side-distance powers rather than fxx*fyy - fxy^2; both agree to
    roundoff and the tests cross-check them.
    """
    n = _check_n_gt1(n)
    x, y = float(point[0]), float(point[1])
    s1, s2, s3 = _signed_distances(tri, x, y)
    if min(s1, s2, s3) <= 0.0:
        raise PointNotInterior(f"point {(x, y)} is not strictly inside the triangle")
    a, b, c = tri.a, tri.b, tri.c
    p2 = tri.p * tri.p
    q2 = tri.q * tri.q
    g = s1 ** (n - 2.0)
    h = s2 ** (n - 2.0)
    w = s3 ** (n - 2.0)
    nn = n * (n - 1.0)
    fxx = nn * a * a * (g / p2 + h / q2)
    fxy = nn * a * (-b * g / p2 + c * h / q2)
    fyy = nn * (b * b * g / p2 + c * c * h / q2) + nn * w
    det = nn * nn * a * a * (g * h * (b + c) ** 2 / (p2 * q2) + (g / p2 + h / q2) * w)
    return HessianInfo(fxx, fxy, fyy, det)


def kkt_residual(tri: CanonicalTriangle, n, point, tolerance=None) -> KktReport:
    """First-order certificate at a feasible point.

    Slack is measured as perpendicular distance to each side, a constraint
    counts as active when its slack is at most ``tolerance`` (default
    1e-9 * a), and the active multipliers solve the stationarity equations:
    exactly for two active constraints (a vertex), least-squares otherwise.
    Multiplier signs are judged before stationarity, so an edge point with
    a descent direction into the interior reports MULTIPLIER_NEGATIVE even
    though its Lagrangian is stationary.
    """
    n = _check_n_gt1(n)
    x, y = float(point[0]), float(point[1])
    tol = 1e-9 * tri.a if tolerance is None else float(tolerance)
    slacks = _signed_distances(tri, x, y)
    if min(slacks) < -tol:
        raise PointNotFeasible(
            f"point {(x, y)} violates a side constraint by more than {tol}"
        )

    a, b, c = tri.a, tri.b, tri.c
    gx, gy = _kernels.grad_f(tri.a, tri.b, tri.c, n, x, y)
    grad_obj = np.array([gx, gy])
    # gradients of the raw constraint functions g1, g2, g3
    constraint_grads = np.array([[a, -b], [-a, -c], [0.0, 1.0]])
    raw_slacks = np.array([slacks[0] * tri.p, slacks[1] * tri.q, slacks[2]])

    active = [i for i in range(3) if slacks[i] <= tol]
    multipliers = np.zeros(3)
    if active:
        cols = constraint_grads[active].T
        if len(active) == 2:
            sol = np.linalg.solve(cols, grad_obj)
        else:
            sol, *_ = np.linalg.lstsq(cols, grad_obj, rcond=None)
        multipliers[active] = sol
    residual_vec = grad_obj - constraint_grads.T @ multipliers
    stationarity = float(np.hypot(residual_vec[0], residual_vec[1]))
    comp_slack = float(np.max(np.abs(multipliers * raw_slacks)))

    if np.any(multipliers < -tol):
        verdict = Verdict.MULTIPLIER_NEGATIVE
    elif stationarity > tol or comp_slack > tol:
        verdict = Verdict.STATIONARITY_FAILED
    else:
        verdict = Verdict.SATISFIED

    if min(slacks) > 0.0:
        hess = hessian(tri, n, (x, y))
        h_fxx, h_det = float(hess.fxx), float(hess.det)
    else:
        h_fxx, h_det = math.nan, math.nan

    return KktReport(
        active_set=tuple(_SIDE_LABELS[i] for i in active),
        multipliers=multipliers,
        stationarity_residual=stationarity,
        complementary_slackness_residual=comp_slack,
        hessian_fxx=h_fxx,
        hessian_det=h_det,
        verdict=verdict,
    )
