"""Real-rooted polynomials represented by their root multisets.

Coefficients are never formed here: differentiation and barrier evaluations
work directly on roots, which keeps multiple roots exact (a root of
multiplicity m contributes m - 1 exact copies to the derivative) and avoids
the coefficient blow-up that makes expanded representations useless past
degree ~25.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import DEFAULT, Tolerances
from .errors import (
    BarrierNotRightOfRoots,
    DegreeTooSmall,
    DerivativeOrderTooLarge,
    InputError,
    NonPositivePhi,
)


class _PhiInfinity:
    """Sentinel for an infinite barrier potential (smax degenerates to max_root)."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "PHI_INFINITY"


PHI_INFINITY = _PhiInfinity()


@dataclass(frozen=True)
class RealRootedPoly:
    """Monic real-rooted polynomial, stored as its ascending root multiset."""

    roots: tuple[float, ...]

    def __post_init__(self):
        if len(self.roots) < 1:
            raise DegreeTooSmall("a real-rooted polynomial needs degree >= 1")
        arr = np.asarray(self.roots, dtype=float)
        if not np.all(np.isfinite(arr)):
            raise InputError("roots must be finite")
        object.__setattr__(self, "roots", tuple(float(r) for r in np.sort(arr)))

    @property
    def degree(self) -> int:
        return len(self.roots)

    def as_array(self) -> np.ndarray:
        return np.asarray(self.roots, dtype=float)


def max_root(p: RealRootedPoly) -> float:
    return p.roots[-1]


def potential(p: RealRootedPoly, b: float, tol: Tolerances = DEFAULT) -> float:
    """Barrier potential p'(b)/p(b) = sum 1/(b - root_i), for b above all roots."""
    top = max_root(p)
    if not (b > top + tol.gap):
        raise BarrierNotRightOfRoots(f"b = {b} is not right of the largest root {top}")
    return float(np.sum(1.0 / (b - p.as_array())))


def _check_phi(phi) -> None:
    if isinstance(phi, bool) or not isinstance(phi, (int, float, np.floating)):
        raise NonPositivePhi(f"phi must be a positive finite real, got {phi!r}")
    if not np.isfinite(phi) or phi <= 0:
        raise NonPositivePhi(f"phi must be a positive finite real (use PHI_INFINITY), got {phi}")


def smax(p: RealRootedPoly, phi, tol: Tolerances = DEFAULT) -> float:
    """Soft maximum: the unique b > max_root with potential(p, b) = phi.

    Solved in the shifted coordinate u = b - max_root, which sidesteps the
    cancellation in b - root when phi is large.  The solution is bracketed in
    [1/phi, degree/phi]; safeguarded Newton with bisection fallback.
    """
    if phi is PHI_INFINITY:
        return max_root(p)
    _check_phi(phi)
    d = max_root(p) - p.as_array()  # all >= 0
    n = p.degree
    lo, hi = 1.0 / phi, n / phi
    if n == 1:
        return max_root(p) + 1.0 / phi
    u = hi
    for _ in range(200):
        f = float(np.sum(1.0 / (u + d))) - phi
        if abs(f) <= tol.phi * phi:
            break
        if f > 0.0:
            lo = u
        else:
            hi = u
        fp = -float(np.sum(1.0 / (u + d) ** 2))
        step = u - f / fp
        u = step if lo < step < hi else 0.5 * (lo + hi)
        if hi - lo <= 1e-16 * hi:
            break
    return max_root(p) + u


def _smax_batch(roots: np.ndarray, phi: float, iters: int = 110) -> np.ndarray:
    """smax for many same-degree root rows at once (pure bisection in u).

    Accuracy is bisection-to-rounding: the returned values agree with the
    scalar solver far below certificate tolerance.
    """
    top = roots.max(axis=1, keepdims=True)
    d = top - roots
    m = roots.shape[1]
    lo = np.full(roots.shape[0], 1.0 / phi)
    hi = np.full(roots.shape[0], m / phi)
    for _ in range(iters):
        mid = 0.5 * (lo + hi)
        f = np.sum(1.0 / (mid[:, None] + d), axis=1) - phi
        pos = f > 0.0
        lo = np.where(pos, mid, lo)
        hi = np.where(pos, hi, mid)
        if np.max(hi - lo) <= 1e-16 * np.min(hi):
            break
    return top[:, 0] + 0.5 * (lo + hi)


def _cluster(roots: np.ndarray, rel: float) -> tuple[np.ndarray, np.ndarray]:
    """Group sorted roots into distinct values with multiplicities."""
    breaks = [0]
    for i in range(1, len(roots)):
        if roots[i] - roots[breaks[-1]] > rel * max(1.0, abs(roots[i])):
            breaks.append(i)
    breaks.append(len(roots))
    distinct = np.array([roots[breaks[j]:breaks[j + 1]].mean() for j in range(len(breaks) - 1)])
    mult = np.diff(breaks)
    return distinct, np.asarray(mult)


def derivative_roots(p: RealRootedPoly, tol: Tolerances = DEFAULT) -> RealRootedPoly:
    """Roots of p', computed in root space.

    A root of multiplicity m passes m - 1 exact copies to p'.  Between
    consecutive distinct roots, p'/p = sum mult_j/(x - mu_j) falls from +inf
    to -inf, so the single interior root of p' is found by bisection on that
    sum (all gaps in lockstep), then polished by two clamped Newton steps.
    """
    if p.degree < 2:
        raise DegreeTooSmall("derivative of a degree-1 polynomial has no roots")
    distinct, mult = _cluster(p.as_array(), tol.cluster)
    kept = np.repeat(distinct, mult - 1)
    if len(distinct) == 1:
        return RealRootedPoly(tuple(kept))

    lo = distinct[:-1].copy()
    hi = distinct[1:].copy()
    mw = mult.astype(float)

    def s_at(x):
        return np.sum(mw[None, :] / (x[:, None] - distinct[None, :]), axis=1)

    for _ in range(120):
        mid = 0.5 * (lo + hi)
        pos = s_at(mid) > 0.0
        lo = np.where(pos, mid, lo)
        hi = np.where(pos, hi, mid)
        if np.all(hi - lo <= tol.root * np.maximum(1.0, np.abs(mid))):
            break
    x = 0.5 * (lo + hi)
    for _ in range(2):
        diffs = x[:, None] - distinct[None, :]
        s = np.sum(mw[None, :] / diffs, axis=1)
        sp = np.sum(mw[None, :] / diffs**2, axis=1)
        step = x + s / sp
        x = np.where((step > lo) & (step < hi), step, x)

    return RealRootedPoly(tuple(np.sort(np.concatenate([kept, x]))))


def nth_derivative_roots(p: RealRootedPoly, k: int, tol: Tolerances = DEFAULT) -> RealRootedPoly:
    """Roots of the k-th derivative, 0 <= k <= degree - 1."""
    if not isinstance(k, (int, np.integer)) or isinstance(k, bool):
        raise InputError("derivative order must be an integer")
    if k < 0 or k > p.degree - 1:
        raise DerivativeOrderTooLarge(f"order {k} outside [0, {p.degree - 1}]")
    q = p
    for _ in range(int(k)):
        q = derivative_roots(q, tol)
    return q
