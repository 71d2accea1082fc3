"""Operator algebra: affine subspaces, balls and boxes with their projectors
and reflectors, compositions, affine combinations, and closed-form reflected
resolvents.

Operators are immutable value trees evaluated by :func:`apply`; composition is
right-to-left, so ``Compose([f, g])`` applies ``g`` first (matching the usual
notation f.g for "f after g").
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .geometry import (
    DEFAULT_TOL,
    DimensionMismatchError,
    Tolerances,
    as_vector,
    orthonormal_basis,
    orthonormal_complement,
)

__all__ = [
    "AffineSubspace",
    "Ball",
    "Operator",
    "Identity",
    "Constant",
    "ScaledId",
    "Translate",
    "ProjAffine",
    "ReflAffine",
    "ProjBall",
    "ReflBall",
    "ProjBox",
    "ProjSphere",
    "Compose",
    "AffineComb",
    "apply",
    "reflector_of",
    "reflector_word",
    "projector_word",
    "reflected_resolvent_scaled_id",
    "reflected_resolvent_const",
    "intersect_affine",
    "fixed_point_set_affine",
    "ambient_dim",
    "UnsupportedNodeError",
    "EmptyIntersectionError",
]


class UnsupportedNodeError(TypeError):
    """Operation requires affine nodes but the tree contains a non-affine one."""


class EmptyIntersectionError(ValueError):
    """The requested intersection of affine subspaces is empty."""


class AffineSubspace:
    """Closed affine subspace ``anchor + span(basis)`` of R^n.

    ``basis`` rows are orthonormal; an empty basis is a single point, a basis
    of n rows is the whole space.
    """

    def __init__(self, anchor, basis=(), tol: Tolerances = DEFAULT_TOL):
        self.anchor = as_vector(anchor)
        rows = [as_vector(b) for b in basis]
        for b in rows:
            if len(b) != len(self.anchor):
                raise DimensionMismatchError("basis vector dimension differs from anchor")
        B = np.array(rows).reshape(len(rows), len(self.anchor))
        if len(rows):
            G = B @ B.T
            if not np.allclose(G, np.eye(len(rows)), atol=1e-12):
                raise ValueError("basis must be orthonormal to 1e-12; use from_spanning()")
        self.basis = B
        self._tol = tol

    # -- constructors -------------------------------------------------------
    @staticmethod
    def from_spanning(anchor, directions, tol: Tolerances = DEFAULT_TOL) -> "AffineSubspace":
        """Subspace through ``anchor`` spanned by arbitrary ``directions``."""
        basis, _ = orthonormal_basis([as_vector(d) for d in directions], tol)
        return AffineSubspace(anchor, basis, tol)

    @staticmethod
    def span(*directions, tol: Tolerances = DEFAULT_TOL) -> "AffineSubspace":
        """Linear subspace through the origin spanned by ``directions``."""
        dirs = [as_vector(d) for d in directions]
        if not dirs:
            raise ValueError("span() needs at least one direction")
        return AffineSubspace.from_spanning(np.zeros(len(dirs[0])), dirs, tol)

    @staticmethod
    def point(p) -> "AffineSubspace":
        """Zero-dimensional subspace, a single point."""
        return AffineSubspace(p, ())

    @staticmethod
    def full(dim: int) -> "AffineSubspace":
        """The whole space R^dim."""
        return AffineSubspace(np.zeros(dim), np.eye(dim))

    @staticmethod
    def from_points(points, tol: Tolerances = DEFAULT_TOL) -> "AffineSubspace":
        """Affine hull of a nonempty point family."""
        pts = [as_vector(p) for p in points]
        anchor = pts[0]
        return AffineSubspace.from_spanning(anchor, [p - anchor for p in pts[1:]], tol)

    @staticmethod
    def hyperplane(normal, offset: float, tol: Tolerances = DEFAULT_TOL) -> "AffineSubspace":
        """Solution set of ``<normal, x> = offset``."""
        n = as_vector(normal)
        nn = np.dot(n, n)
        if nn == 0.0:
            raise ValueError("hyperplane normal must be nonzero")
        anchor = n * (offset / nn)
        basis = orthonormal_complement([n], len(n), tol)
        return AffineSubspace(anchor, basis, tol)

    # -- geometry ------------------------------------------------------------
    @property
    def dim_ambient(self) -> int:
        return len(self.anchor)

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    def project(self, x) -> np.ndarray:
        """Nearest point of the subspace: anchor + sum <x-anchor, b_i> b_i."""
        x = as_vector(x)
        if len(x) != self.dim_ambient:
            raise DimensionMismatchError("point dimension differs from subspace ambient dimension")
        d = x - self.anchor
        if self.dim == 0:
            return self.anchor.copy()
        return self.anchor + self.basis.T @ (self.basis @ d)

    def reflect(self, x) -> np.ndarray:
        x = as_vector(x)
        return 2.0 * self.project(x) - x

    def contains(self, x, tol: Tolerances = DEFAULT_TOL) -> bool:
        x = as_vector(x)
        scale = 1.0 + np.linalg.norm(x) + np.linalg.norm(self.anchor)
        return bool(np.linalg.norm(x - self.project(x)) <= tol.eq_tol * scale)

    def orthogonal_complement(self, tol: Tolerances = DEFAULT_TOL) -> "AffineSubspace":
        """Orthogonal complement through the origin of the direction space."""
        comp = orthonormal_complement(list(self.basis), self.dim_ambient, tol)
        return AffineSubspace(np.zeros(self.dim_ambient), comp, tol)

    def translate(self, v) -> "AffineSubspace":
        return AffineSubspace(self.anchor + as_vector(v), self.basis, self._tol)

    def __repr__(self):
        return f"AffineSubspace(anchor={self.anchor.tolist()}, dim={self.dim})"


@dataclass(frozen=True, eq=False)
class Ball:
    """Closed ball of given center and radius >= 0."""

    center: np.ndarray
    radius: float

    def __post_init__(self):
        object.__setattr__(self, "center", as_vector(self.center))
        if self.radius < 0:
            raise ValueError("ball radius must be nonnegative")


# -- operator nodes ----------------------------------------------------------


class Operator:
    """Base class for immutable operator trees; call or apply() to evaluate."""

    def __call__(self, x) -> np.ndarray:
        return apply(self, x)


@dataclass(frozen=True, eq=False)
class Identity(Operator):
    pass


@dataclass(frozen=True, eq=False)
class Constant(Operator):
    value: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "value", as_vector(self.value))


@dataclass(frozen=True, eq=False)
class ScaledId(Operator):
    gamma: float


@dataclass(frozen=True, eq=False)
class Translate(Operator):
    offset: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "offset", as_vector(self.offset))


@dataclass(frozen=True, eq=False)
class ProjAffine(Operator):
    subspace: AffineSubspace


@dataclass(frozen=True, eq=False)
class ReflAffine(Operator):
    subspace: AffineSubspace


@dataclass(frozen=True, eq=False)
class ProjBall(Operator):
    ball: Ball


@dataclass(frozen=True, eq=False)
class ReflBall(Operator):
    ball: Ball


@dataclass(frozen=True, eq=False)
class ProjBox(Operator):
    """Componentwise clamp onto the box [lower, upper] (entries may be +-inf)."""

    lower: np.ndarray
    upper: np.ndarray

    def __post_init__(self):
        lo = np.asarray(self.lower, dtype=float)
        up = np.asarray(self.upper, dtype=float)
        if lo.shape != up.shape or lo.ndim != 1:
            raise ValueError("box bounds must be 1-D and of equal length")
        if np.any(lo > up):
            raise ValueError("box lower bound exceeds upper bound")
        object.__setattr__(self, "lower", lo)
        object.__setattr__(self, "upper", up)


@dataclass(frozen=True, eq=False)
class ProjSphere(Operator):
    """Projection onto the sphere (boundary only); at the center, the tie is
    broken deterministically toward the first coordinate axis."""

    center: np.ndarray
    radius: float

    def __post_init__(self):
        object.__setattr__(self, "center", as_vector(self.center))
        if self.radius < 0:
            raise ValueError("sphere radius must be nonnegative")


@dataclass(frozen=True, eq=False)
class Compose(Operator):
    """Composition, applied right-to-left (the last element acts first)."""

    ops: tuple

    def __post_init__(self):
        ops = tuple(self.ops)
        if not ops:
            raise ValueError("Compose requires at least one operator")
        object.__setattr__(self, "ops", ops)


@dataclass(frozen=True, eq=False)
class AffineComb(Operator):
    """Affine combination sum w_i T_i with weights summing to 1."""

    terms: tuple

    def __post_init__(self):
        terms = tuple((float(w), op) for w, op in self.terms)
        if not terms:
            raise ValueError("AffineComb requires at least one term")
        total = sum(w for w, _ in terms)
        if abs(total - 1.0) > 1e-12:
            raise ValueError(f"affine-combination weights must sum to 1, got {total}")
        object.__setattr__(self, "terms", terms)


def project_ball(ball: Ball, x) -> np.ndarray:
    """x if inside, else the radial point c + r (x-c)/|x-c|."""
    x = as_vector(x)
    d = x - ball.center
    nd = np.linalg.norm(d)
    if nd <= ball.radius:
        return x.copy()
    return ball.center + ball.radius * d / nd


def project_sphere(center, radius: float, x) -> np.ndarray:
    x = as_vector(x)
    d = x - center
    nd = np.linalg.norm(d)
    if nd == 0.0:
        d = np.zeros_like(x)
        d[0] = 1.0
        return center + radius * d
    return center + radius * d / nd


def apply(op: Operator, x) -> np.ndarray:
    """Evaluate an operator tree at ``x``."""
    x = as_vector(x)
    if isinstance(op, Identity):
        return x.copy()
    if isinstance(op, Constant):
        if len(op.value) != len(x):
            raise DimensionMismatchError("constant value dimension differs from input")
        return op.value.copy()
    if isinstance(op, ScaledId):
        return op.gamma * x
    if isinstance(op, Translate):
        if len(op.offset) != len(x):
            raise DimensionMismatchError("translation offset dimension differs from input")
        return x + op.offset
    if isinstance(op, ProjAffine):
        return op.subspace.project(x)
    if isinstance(op, ReflAffine):
        return op.subspace.reflect(x)
    if isinstance(op, ProjBall):
        return project_ball(op.ball, x)
    if isinstance(op, ReflBall):
        return 2.0 * project_ball(op.ball, x) - x
    if isinstance(op, ProjBox):
        if len(op.lower) != len(x):
            raise DimensionMismatchError("box dimension differs from input")
        return np.clip(x, op.lower, op.upper)
    if isinstance(op, ProjSphere):
        return project_sphere(op.center, op.radius, x)
    if isinstance(op, Compose):
        y = x
        for inner in reversed(op.ops):
            y = apply(inner, y)
        return y
    if isinstance(op, AffineComb):
        acc = np.zeros_like(x)
        for w, inner in op.terms:
            acc = acc + w * apply(inner, x)
        return acc
    raise TypeError(f"unknown operator node {type(op).__name__}")


def reflector_of(proj: Operator) -> Operator:
    """Reflector 2P - Id of an arbitrary projector node."""
    return AffineComb(((2.0, proj), (-1.0, Identity())))


def _word(subspaces, indices, node) -> Operator:
    subs = list(subspaces)
    ops = []
    for i in indices:
        if not 1 <= i <= len(subs):
            raise IndexError(f"word index {i} out of range 1..{len(subs)}")
        ops.append(node(subs[i - 1]))
    if not ops:
        return Identity()
    # indices list the application order; Compose applies right-to-left.
    return Compose(tuple(reversed(ops)))


def reflector_word(subspaces, indices) -> Operator:
    """Composition R_{U_{i_r}} ... R_{U_{i_1}} for 1-based ``indices``
    (applied first-to-last); the empty word is the identity."""
    return _word(subspaces, indices, ReflAffine)


def projector_word(subspaces, indices) -> Operator:
    """Composition P_{U_{i_r}} ... P_{U_{i_1}}, same conventions as
    :func:`reflector_word`."""
    return _word(subspaces, indices, ProjAffine)


def reflected_resolvent_scaled_id(alpha: float) -> Operator:
    """Reflected resolvent 2(Id + alpha Id)^{-1} - Id = ((1-alpha)/(1+alpha)) Id."""
    if alpha < 0:
        raise ValueError("alpha must be nonnegative")
    return ScaledId((1.0 - alpha) / (1.0 + alpha))


def reflected_resolvent_const(a) -> Operator:
    """Reflected resolvent of the constant operator with value ``a``:
    the resolvent is x - a, so the reflected resolvent is x - 2a."""
    a = as_vector(a)
    return Translate(-2.0 * a)


def intersect_affine(subspaces, tol: Tolerances = DEFAULT_TOL) -> AffineSubspace | None:
    """Intersection of affine subspaces, or ``None`` when empty.

    Each subspace contributes the constraints ``<n, x> = <n, anchor>`` over an
    orthonormal basis of its normal space; the stacked system is solved by
    least squares and declared inconsistent when the residual exceeds the
    relative tolerance.
    """
    subs = list(subspaces)
    if not subs:
        raise ValueError("intersection of zero subspaces is undefined")
    n = subs[0].dim_ambient
    if any(s.dim_ambient != n for s in subs):
        raise DimensionMismatchError("subspaces live in different ambient dimensions")

    rows = []
    rhs = []
    for s in subs:
        for normal in orthonormal_complement(list(s.basis), n, tol):
            rows.append(normal)
            rhs.append(np.dot(normal, s.anchor))
    if not rows:
        return AffineSubspace.full(n)
    A = np.array(rows)
    b = np.array(rhs)
    x, *_ = np.linalg.lstsq(A, b, rcond=None)
    scale = 1.0 + np.linalg.norm(b) + np.linalg.norm(x)
    if np.linalg.norm(A @ x - b) > tol.eq_tol * scale:
        return None
    directions = orthonormal_complement(rows, n, tol)
    return AffineSubspace(x, directions, tol)


def _affine_only(op: Operator) -> bool:
    if isinstance(op, (Identity, Constant, ScaledId, Translate, ProjAffine, ReflAffine)):
        return True
    if isinstance(op, Compose):
        return all(_affine_only(inner) for inner in op.ops)
    if isinstance(op, AffineComb):
        return all(_affine_only(inner) for _, inner in op.terms)
    return False


def ambient_dim(op: Operator) -> int | None:
    """Ambient dimension pinned by the tree, or None for dimension-free trees."""
    if isinstance(op, Constant):
        return len(op.value)
    if isinstance(op, Translate):
        return len(op.offset)
    if isinstance(op, (ProjAffine, ReflAffine)):
        return op.subspace.dim_ambient
    if isinstance(op, (ProjBall, ReflBall)):
        return len(op.ball.center)
    if isinstance(op, ProjBox):
        return len(op.lower)
    if isinstance(op, ProjSphere):
        return len(op.center)
    if isinstance(op, Compose):
        for inner in op.ops:
            d = ambient_dim(inner)
            if d is not None:
                return d
    if isinstance(op, AffineComb):
        for _, inner in op.terms:
            d = ambient_dim(inner)
            if d is not None:
                return d
    return None


def fixed_point_set_affine(
    op: Operator, tol: Tolerances = DEFAULT_TOL, dim: int | None = None
) -> AffineSubspace | None:
    """Fixed-point set of an affine operator tree, or ``None`` when empty.

    The affine map ``op(x) = M x + c`` is recovered by evaluating the tree at
    the origin and the coordinate directions, then ``(M - I) x = -c`` is
    solved with a consistency check.  Trees containing ball, box, or sphere
    nodes are rejected.
    """
    if not _affine_only(op):
        raise UnsupportedNodeError("fixed-point solve supports affine operator trees only")
    if dim is None:
        dim = ambient_dim(op)
    if dim is None:
        raise ValueError("ambient dimension cannot be inferred; pass dim explicitly")

    c = apply(op, np.zeros(dim))
    M = np.column_stack([apply(op, e) - c for e in np.eye(dim)])
    A = M - np.eye(dim)
    b = -c
    x, *_ = np.linalg.lstsq(A, b, rcond=None)
    scale = 1.0 + np.linalg.norm(b) + np.linalg.norm(A, ord=2) * np.linalg.norm(x)
    if np.linalg.norm(A @ x - b) > tol.eq_tol * scale:
        return None
    directions = orthonormal_complement(list(A), dim, tol)
    return AffineSubspace(x, directions, tol)
