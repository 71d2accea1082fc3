"""Circumcenter of a finite point set.

The circumcenter of ``K = {x_1, ..., x_m}`` is the unique point of the affine
hull of ``K`` equidistant from every point of ``K``, when such a point exists.
Existence is decided by verification: the candidate produced by the Gram
system on a pivoted independent subfamily is checked for equidistance against
every point of the set.  This is not the Chebyshev center / smallest enclosing
ball, which always exists.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .geometry import (
    DEFAULT_TOL,
    Tolerances,
    affine_hull_basis,
    as_vector,
    orthonormal_basis,
    solve_sym,
)

__all__ = [
    "PointSet",
    "CircumcenterOutcome",
    "circumcenter",
    "circumcenter_three",
    "circumcenter_oracle",
]


class PointSet:
    """Finite set of pairwise distinct points of R^n.

    Construction merges points closer than ``dup_tol`` times the family scale,
    keeping the first representative (set semantics: operator images that
    coincide count once).
    """

    def __init__(self, points, tol: Tolerances = DEFAULT_TOL):
        pts = [as_vector(p) for p in points]
        if not pts:
            raise ValueError("a point set must contain at least one point")
        dims = {len(p) for p in pts}
        if len(dims) > 1:
            raise ValueError(f"mixed point dimensions: {sorted(dims)}")
        scale = max(max(np.linalg.norm(p) for p in pts), 1.0)
        merged: list[np.ndarray] = []
        for p in pts:
            if all(np.linalg.norm(p - q) > tol.dup_tol * scale for q in merged):
                merged.append(p)
        self.points = np.array(merged)

    @property
    def dim(self) -> int:
        return self.points.shape[1]

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)


@dataclass(frozen=True)
class CircumcenterOutcome:
    """Existence-aware result of a circumcenter computation.

    When ``exists`` is true, ``center`` lies in the affine hull of the input
    and is equidistant (within the verification tolerance) from every input
    point; ``radius`` is the mean distance to the pivot subfamily and
    ``basis_indices`` names that subfamily.
    """

    exists: bool
    center: np.ndarray | None = None
    radius: float | None = None
    basis_indices: tuple[int, ...] = field(default=())

    @staticmethod
    def not_found() -> "CircumcenterOutcome":
        return CircumcenterOutcome(exists=False)

    @staticmethod
    def found(center, radius, basis_indices) -> "CircumcenterOutcome":
        return CircumcenterOutcome(True, as_vector(center), float(radius), tuple(basis_indices))


def _verify_equidistant(points, center, tol: Tolerances):
    """Check that ``center`` is equidistant from all ``points``.

    Returns ``(ok, radius)`` with radius the mean distance; the deviation
    threshold is ``eq_tol * (1 + radius)``.
    """
    dists = np.linalg.norm(points - center, axis=1)
    radius = float(dists.mean())
    ok = bool(np.max(np.abs(dists - radius)) <= tol.eq_tol * (1.0 + radius))
    return ok, radius


def circumcenter(K: PointSet, tol: Tolerances = DEFAULT_TOL) -> CircumcenterOutcome:
    """Circumcenter of ``K`` via the Gram system on a pivoted subfamily.

    Singletons are their own circumcenter, pairs give the midpoint.  For
    larger sets a maximal independent subfamily of differences from the first
    point is selected by column-pivoted orthogonalization; the candidate

        c = x_1 + 1/2 * D^T G^{-1} (|d_1|^2, ..., |d_t|^2)

    (``D`` the pivot differences, ``G`` their Gram matrix) is then verified
    for equidistance against every point of ``K``.  Verification failure means
    the circumcenter does not exist, which is reported as a value, not raised.
    """
    pts = K.points
    m = len(pts)
    if m == 1:
        return CircumcenterOutcome.found(pts[0], 0.0, (0,))
    if m == 2:
        mid = 0.5 * (pts[0] + pts[1])
        return CircumcenterOutcome.found(mid, np.linalg.norm(pts[1] - pts[0]) / 2.0, (0, 1))

    x1 = pts[0]
    diffs = [p - x1 for p in pts[1:]]
    _, pivots = orthonormal_basis(diffs, tol)
    if not pivots:
        # All points collapsed onto x1 beyond dup_tol would have been merged;
        # reaching here means numerically zero spread.
        return CircumcenterOutcome.found(x1, 0.0, (0,))
    D = np.array([diffs[i] for i in pivots])
    rhs = np.array([np.dot(d, d) for d in D])
    try:
        lam = solve_sym(D @ D.T, rhs, tol)
    except np.linalg.LinAlgError:
        return CircumcenterOutcome.not_found()
    center = x1 + 0.5 * (D.T @ lam)

    subfamily = np.vstack([x1[None, :], D + x1])
    _, radius = _verify_equidistant(subfamily, center, tol)
    ok, _ = _verify_equidistant(pts, center, tol)
    if not ok:
        return CircumcenterOutcome.not_found()
    return CircumcenterOutcome.found(center, radius, (0, *[i + 1 for i in pivots]))


def circumcenter_three(x, y, z, tol: Tolerances = DEFAULT_TOL) -> CircumcenterOutcome:
    """Closed-form circumcenter of three pairwise distinct points.

    Exists exactly when the three points are affinely independent, in which
    case it is the weighted combination

        [ |y-z|^2 <x-z, x-y> x + |x-z|^2 <y-z, y-x> y + |x-y|^2 <z-x, z-y> z ]
        / ( 2 (|y-x|^2 |z-x|^2 - <y-x, z-x>^2) ).
    """
    x, y, z = as_vector(x), as_vector(y), as_vector(z)
    scale = max(np.linalg.norm(x), np.linalg.norm(y), np.linalg.norm(z), 1.0)
    if (
        np.linalg.norm(x - y) <= tol.dup_tol * scale
        or np.linalg.norm(x - z) <= tol.dup_tol * scale
        or np.linalg.norm(y - z) <= tol.dup_tol * scale
    ):
        raise ValueError("points must be pairwise distinct")
    if len(orthonormal_basis([y - x, z - x], tol)[0]) < 2:
        return CircumcenterOutcome.not_found()

    a2 = np.dot(y - z, y - z)
    b2 = np.dot(x - z, x - z)
    c2 = np.dot(x - y, x - y)
    wx = a2 * np.dot(x - z, x - y)
    wy = b2 * np.dot(y - z, y - x)
    wz = c2 * np.dot(z - x, z - y)
    denom = 2.0 * (np.dot(y - x, y - x) * np.dot(z - x, z - x) - np.dot(y - x, z - x) ** 2)
    center = (wx * x + wy * y + wz * z) / denom
    radius = float(np.mean([np.linalg.norm(center - p) for p in (x, y, z)]))
    return CircumcenterOutcome.found(center, radius, (0, 1, 2))


def circumcenter_oracle(K: PointSet, tol: Tolerances = DEFAULT_TOL) -> CircumcenterOutcome:
    """Independent brute-force circumcenter check.

    Parametrizes ``p = anchor + B lambda`` over the affine hull, imposes every
    linear equidistance condition ``2 <p, x_j - x_1> = |x_j|^2 - |x_1|^2`` by
    least squares, and accepts only when every equation's residual is at most
    ``eq_tol`` times the squared data scale.  Shares no solve path with
    :func:`circumcenter` (SVD least squares vs pivoted Gram/Cholesky).
    """
    pts = K.points
    if len(pts) == 1:
        return CircumcenterOutcome.found(pts[0], 0.0, (0,))
    anchor, basis = affine_hull_basis(pts, tol)
    x1 = pts[0]
    rows = []
    rhs = []
    for xj in pts[1:]:
        d = xj - x1
        rows.append(2.0 * np.array([np.dot(b, d) for b in basis]))
        rhs.append(np.dot(xj, xj) - np.dot(x1, x1) - 2.0 * np.dot(anchor, d))
    A = np.array(rows).reshape(len(rhs), len(basis))
    rhs = np.array(rhs)
    if len(basis) == 0:
        coeff = np.zeros(0)
    else:
        coeff, *_ = np.linalg.lstsq(A, rhs, rcond=None)
    center = anchor + (np.array(basis).T @ coeff if len(basis) else 0.0)

    scale = 1.0 + max(np.linalg.norm(p) for p in pts)
    residuals = np.abs(A @ coeff - rhs) if len(rhs) else np.zeros(0)
    if residuals.size and residuals.max() > tol.eq_tol * scale**2:
        return CircumcenterOutcome.not_found()
    dists = np.linalg.norm(pts - center, axis=1)
    return CircumcenterOutcome.found(center, float(dists.mean()), tuple(range(len(pts))))
