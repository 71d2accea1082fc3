"""Named catalog of worked circumcenter-mapping scenarios with automated
verifiers.

Each scenario packages a construction (an operator family over concrete sets)
together with its expected behaviour: a closed-form map, a domain
characterization, an improperness criterion over a parameter grid, a sequence
with a known limit, a benchmark iteration-count row, or a fixed-point-set
claim.  ``verify`` replays the expectation on structured plus seeded random
probes and reports every deviation; scenario names are the stable identifiers
consumed by the CLI.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .circumcenter import circumcenter_three
from .circummap import OperatorSet, cc_map, evaluate_set, fixed_point_residual, in_domain
from .geometry import DEFAULT_TOL, Tolerances, as_vector
from .operators import (
    AffineComb,
    AffineSubspace,
    Ball,
    Compose,
    Constant,
    Identity,
    ProjAffine,
    ProjBall,
    ProjBox,
    ProjSphere,
    ReflAffine,
    ScaledId,
    apply,
    intersect_affine,
    reflected_resolvent_const,
    reflected_resolvent_scaled_id,
    reflector_of,
)
from .solvers import REFERENCE_COUNTS, run_benchmark

__all__ = [
    "Scenario",
    "VerificationReport",
    "ClosedFormMap",
    "DomainSpec",
    "ImpropernessIff",
    "SequenceLimit",
    "IterationCounts",
    "FixedPointSpec",
    "ProbeGrid",
    "ScenarioNotFoundError",
    "catalog",
    "scenario",
    "verify",
    "verify_all",
    "verify_scenario",
    "domain_probe",
]


class ScenarioNotFoundError(KeyError):
    """No scenario with the requested name exists in the catalog."""


# -- expectation kinds ---------------------------------------------------------


@dataclass
class ClosedFormMap:
    """Expected pointwise values: ``reference(x)`` returns the expected
    circumcenter, or None when nonexistence is expected."""

    reference: object
    probes: object
    check_tol: float = 1e-9


@dataclass
class DomainSpec:
    """Membership predicate checked on probes kept away from the boundary of
    the described sets."""

    member: object
    probes: object


@dataclass
class ImpropernessIff:
    """Sampled improperness over a parameter grid must match the predicate."""

    predicate: object
    grid: list
    build: object
    samples: object


@dataclass
class SequenceLimit:
    """A sequence with known mapping values and a known (possibly
    discontinuous) limit behaviour.  Fields left as None are not checked."""

    points: list
    cc_values: object = None
    limit: np.ndarray | None = None
    limit_residual: float | None = None
    residual_tol: float = 1e-6
    map_at_limit: np.ndarray | None = None
    expect_vanishing: bool | None = None
    check_tol: float = 1e-9


@dataclass
class IterationCounts:
    """A benchmark table row (per-method iteration counts at calibrated eps)."""

    table: str


@dataclass
class FixedPointSpec:
    """Points that must be fixed, probes that must not be, and probes where
    the mapping must at least exist."""

    fixed: list
    not_fixed: object
    proper_probes: object = None
    separation: float = 1e-3


@dataclass
class Scenario:
    name: str
    dim: int
    description: str
    expected: object
    operator_set: OperatorSet | None = None


@dataclass
class VerificationReport:
    scenario: str
    checks: int = 0
    max_deviation: float = 0.0
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def record(self, deviation: float, ok: bool, inp, expected, got):
        self.checks += 1
        self.max_deviation = max(self.max_deviation, float(deviation))
        if not ok:
            self.failures.append((inp, expected, got))


# -- shared constructions --------------------------------------------------------

E1 = np.array([1.0, 0.0])
E2 = np.array([0.0, 1.0])
X_AXIS = AffineSubspace.span(E1)
Y_AXIS = AffineSubspace.span(E2)
DIAGONAL = AffineSubspace.span(np.array([1.0, 1.0]))


def _cloud(dim, count, seed, scale=2.0):
    rng = np.random.default_rng(seed)
    return [scale * rng.standard_normal(dim) for _ in range(count)]


def _line_points(U: AffineSubspace, coeffs):
    return [U.anchor + float(c) * U.basis[0] for c in coeffs]


def _relaxation(alpha: float, inner) -> object:
    if alpha == 1.0:
        return inner
    return AffineComb(((1.0 - alpha, Identity()), (alpha, inner)))


def _reflector_family(subspaces, name):
    return OperatorSet((Identity(), *[ReflAffine(U) for U in subspaces]), name=name)


def _hull_projection_reference(S: OperatorSet, subspaces, tol: Tolerances):
    """Reference value P_{aff(S(x))}(P_{cap U_i} x) for identity-containing
    reflector-word families; an independent path from the Gram solve."""
    meet = intersect_affine(subspaces, tol)

    def ref(x):
        z = meet.project(x)
        hull = AffineSubspace.from_points(list(evaluate_set(S, x, tol)), tol)
        return hull.project(z)

    return ref


# -- catalog -----------------------------------------------------------------


def _build_catalog() -> list[Scenario]:
    tol = DEFAULT_TOL
    scenarios: list[Scenario] = []

    def add(name, dim, description, expected, operator_set=None):
        scenarios.append(Scenario(name, dim, description, expected, operator_set))

    # --- identity/reflector families with global closed forms
    U_line = AffineSubspace.span(np.array([1.0, 2.0]))
    S_zero = OperatorSet(
        (Identity(), ReflAffine(U_line), ReflAffine(U_line.orthogonal_complement())),
        name="id-reflector-pair",
    )
    add(
        "reflectors-zero",
        2,
        "identity with the reflectors of a line and its orthogonal complement; "
        "the mapping is identically zero",
        ClosedFormMap(
            reference=lambda x: np.zeros(2),
            probes=lambda seed: _cloud(2, 12, seed)
            + _line_points(U_line, [-2, 1, 3])
            + _line_points(U_line.orthogonal_complement(), [-1, 2]),
        ),
        S_zero,
    )

    U_half = AffineSubspace.span(np.array([3.0, 1.0]))
    S_half = OperatorSet(
        (
            Identity(),
            ProjAffine(U_half),
            ProjAffine(U_half.orthogonal_complement()),
            Constant(np.zeros(2)),
        ),
        name="projector-quadruple",
    )
    add(
        "projector-half",
        2,
        "identity, complementary projectors and the zero map send x to x/2",
        ClosedFormMap(
            reference=lambda x: 0.5 * as_vector(x),
            probes=lambda seed: _cloud(2, 12, seed) + _line_points(U_half, [1.5, -2]),
        ),
        S_half,
    )

    # --- a proper continuous mapping with an explicit closed form:
    # T3 folds the plane vertically onto the line y = -(x-2)/4.
    fold_line = AffineSubspace.span(np.array([1.0, -0.25]))
    T3 = AffineComb(
        (
            (17.0 / 16.0, Compose((ProjAffine(fold_line), ProjAffine(X_AXIS)))),
            (-1.0 / 16.0, Constant(np.array([0.0, -8.0]))),
        )
    )
    add(
        "mirror-fold-line",
        2,
        "identity, mirror across the y-axis, and a vertical fold onto a line; "
        "proper and continuous with closed form (0, (y - (x-2)/4)/2)",
        ClosedFormMap(
            reference=lambda x: np.array([0.0, 0.5 * (x[1] - 0.25 * (x[0] - 2.0))]),
            probes=lambda seed: _cloud(2, 12, seed)
            + [np.array([0.0, 1.0]), np.array([2.0, 0.0]), np.array([3.0, -0.25])],
        ),
        OperatorSet((Identity(), ReflAffine(Y_AXIS), T3), name="mirror-fold"),
    )

    def _const_pair_reference(x):
        x = as_vector(x)
        if x[0] == 2.0:
            return np.array([0.0, 0.0])
        return np.array([0.0, -2.0 * (x[0] + 2.0) - (x[0] - 2.0) / 8.0])

    add(
        "const-pair-fold",
        2,
        "two constants and the vertical fold; proper but discontinuous at x=2",
        ClosedFormMap(
            reference=_const_pair_reference,
            probes=lambda seed: _cloud(2, 10, seed)
            + [np.array([2.0, y]) for y in (-1.0, 0.0, 3.0)]
            + [np.array([2.0 - 1.0 / k, 0.0]) for k in (1, 2, 5, 10)],
        ),
        OperatorSet(
            (Constant(np.array([2.0, 0.0])), Constant(np.array([-2.0, 0.0])), T3),
            name="const-pair-fold",
        ),
    )

    # --- demiclosedness failure: residuals vanish along a sequence whose
    # limit is not a fixed point.
    L = AffineSubspace.from_spanning(np.array([0.0, 0.5]), [np.array([4.0, -1.0])])
    S_demi = OperatorSet(
        (Constant(np.array([-2.0, 0.0])), Constant(np.array([2.0, 0.0])), ProjAffine(L)),
        name="demiclosedness",
    )
    demi_points = [np.array([1.0 / k, -1.0 / (4.0 * k) - 8.0]) for k in range(1, 101)]
    add(
        "demiclosedness-fails",
        2,
        "two constants and a line projector: residuals vanish along x_k but "
        "the limit (0,-8) sits at residual 8",
        SequenceLimit(
            points=demi_points,
            cc_values=lambda x: np.array([0.0, -8.0 - 17.0 * x[0] / 8.0]),
            limit=np.array([0.0, -8.0]),
            limit_residual=8.0,
            map_at_limit=np.array([0.0, 0.0]),
            expect_vanishing=True,
        ),
        S_demi,
    )

    # --- scaled identity with the two axis reflectors
    for alpha, name, member in (
        (0.0, "scaled-id-axes-zero", lambda x: bool(np.linalg.norm(x) == 0.0)),
        (1.0, "scaled-id-axes-unit", lambda x: True),
        (-1.0, "scaled-id-axes-neg", lambda x: True),
        (
            2.0,
            "scaled-id-axes-generic",
            lambda x: bool(np.linalg.norm(x) == 0.0 or (x[0] != 0.0 and x[1] != 0.0)),
        ),
    ):
        add(
            name,
            2,
            f"scaled identity (factor {alpha}) with both axis reflectors",
            DomainSpec(
                member=member,
                probes=lambda seed: [
                    np.zeros(2),
                    np.array([1.0, 0.0]),
                    np.array([-2.5, 0.0]),
                    np.array([0.0, 1.5]),
                    np.array([0.0, -0.5]),
                    np.array([1.0, 1.0]),
                    np.array([-1.5, 2.0]),
                ]
                + [p for p in _cloud(2, 8, seed) if min(abs(p[0]), abs(p[1])) > 0.05],
            ),
            OperatorSet(
                (ScaledId(alpha), ReflAffine(X_AXIS), ReflAffine(Y_AXIS)),
                name=f"scaled-id-{alpha}",
            ),
        )

    # --- three disjoint ball projectors: no common fixed point, yet the
    # mapping is proper and fixes exactly the origin.
    S_balls = OperatorSet(
        (
            ProjBall(Ball(np.array([-2.0, 0.0]), 1.0)),
            ProjBall(Ball(np.array([0.0, 2.0]), 1.0)),
            ProjBall(Ball(np.array([2.0, 0.0]), 1.0)),
        ),
        name="three-ball-projectors",
    )
    add(
        "ball-projector-fix",
        2,
        "three disjoint ball projectors: proper, empty common fixed set, "
        "mapping fixes exactly the origin",
        FixedPointSpec(
            fixed=[np.zeros(2)],
            not_fixed=lambda seed: [p for p in _cloud(2, 10, seed) if np.linalg.norm(p) > 0.3],
            proper_probes=lambda seed: _cloud(2, 20, seed),
        ),
        S_balls,
    )

    # --- identity-containing reflector-word families: the mapping projects
    # the (any) common point onto the affine hull of the image family.
    A1 = AffineSubspace.from_spanning(
        np.zeros(3), [np.array([1.0, 0.0, 0.0]), np.array([0.0, 1.0, 1.0])]
    )
    A2 = AffineSubspace.span(np.array([1.0, 1.0, 1.0]))
    A3 = AffineSubspace.hyperplane(np.array([1.0, -1.0, 0.0]), 0.0)

    S_words = _reflector_family([A1, A2, A3], "id-all-reflectors")
    add(
        "reflector-words-m",
        3,
        "identity with one reflector per subspace",
        ClosedFormMap(
            reference=_hull_projection_reference(S_words, [A1, A2, A3], tol),
            probes=lambda seed: _cloud(3, 12, seed),
        ),
        S_words,
    )

    S_cycle = OperatorSet(
        (
            Identity(),
            Compose((ReflAffine(A2), ReflAffine(A1))),
            Compose((ReflAffine(A3), ReflAffine(A2))),
            Compose((ReflAffine(A1), ReflAffine(A3))),
        ),
        name="cycle-words",
    )
    add(
        "reflector-cycle-words",
        3,
        "identity with the three cyclic two-letter reflector words",
        ClosedFormMap(
            reference=_hull_projection_reference(S_cycle, [A1, A2, A3], tol),
            probes=lambda seed: _cloud(3, 10, seed),
        ),
        S_cycle,
    )

    S_cdrm = OperatorSet(
        (Identity(), ReflAffine(X_AXIS), Compose((ReflAffine(DIAGONAL), ReflAffine(X_AXIS)))),
        name="cdrm",
    )
    add(
        "cdrm-words",
        2,
        "identity, one reflector, and the two-letter word over two lines",
        ClosedFormMap(
            reference=_hull_projection_reference(S_cdrm, [X_AXIS, DIAGONAL], tol),
            probes=lambda seed: _cloud(2, 12, seed) + _line_points(X_AXIS, [1.0, -2.0]),
        ),
        S_cdrm,
    )

    # prefix words over affine (non-linear) subspaces with a common point
    z0 = np.array([1.0, -1.0, 2.0])
    B1 = AffineSubspace.from_spanning(z0, [np.array([1.0, 0.0, 0.0]), np.array([0.0, 1.0, 0.0])])
    B2 = AffineSubspace.from_spanning(z0, [np.array([1.0, 1.0, 1.0])])
    B3 = AffineSubspace.hyperplane(np.array([0.0, 1.0, 1.0]), float(np.array([0.0, 1.0, 1.0]) @ z0))
    S_prefix = OperatorSet(
        (
            Identity(),
            ReflAffine(B1),
            Compose((ReflAffine(B2), ReflAffine(B1))),
            Compose((ReflAffine(B3), ReflAffine(B2), ReflAffine(B1))),
        ),
        name="prefix-words",
    )
    add(
        "crm-prefix-words",
        3,
        "identity with the nested prefix words over three affine subspaces "
        "through a common off-origin point",
        ClosedFormMap(
            reference=_hull_projection_reference(S_prefix, [B1, B2, B3], tol),
            probes=lambda seed: _cloud(3, 10, seed),
        ),
        S_prefix,
    )

    S_dr = OperatorSet(
        (Identity(), Compose((ReflAffine(DIAGONAL), ReflAffine(X_AXIS)))), name="dr-pair"
    )
    add(
        "dr-midpoint",
        2,
        "identity with a double reflection: the mapping is the averaged "
        "double-reflection (Douglas-Rachford) operator",
        ClosedFormMap(
            reference=lambda x: 0.5 * (as_vector(x) + apply(S_dr.ops[1], x)),
            probes=lambda seed: _cloud(2, 12, seed),
            check_tol=1e-12,
        ),
        S_dr,
    )

    S_two = _reflector_family([X_AXIS, DIAGONAL], "two-reflectors")
    add(
        "two-reflectors-collapse",
        2,
        "on either line the mapping collapses to the projector onto the "
        "other line",
        ClosedFormMap(
            reference=lambda x: (
                DIAGONAL.project(x) if X_AXIS.contains(x) else X_AXIS.project(x)
            ),
            probes=lambda seed: _line_points(X_AXIS, [-2.0, 1.0, 4.0])
            + _line_points(DIAGONAL, [-1.5, 0.5, 3.0]),
        ),
        S_two,
    )

    U_skew = AffineSubspace.span(np.array([2.0, 1.0]))
    S_four = OperatorSet(
        (
            Identity(),
            ReflAffine(X_AXIS),
            ReflAffine(U_skew),
            Compose((ReflAffine(U_skew), ReflAffine(X_AXIS))),
        ),
        name="four-words",
    )

    def _four_reference(x):
        images = evaluate_set(S_four, x, tol)
        pts = list(images)
        if len(pts) == 1:
            return pts[0]
        if len(pts) == 2:
            return 0.5 * (pts[0] + pts[1])
        if len(pts) == 3:
            return circumcenter_three(*pts, tol).center
        return _hull_projection_reference(S_four, [X_AXIS, U_skew], tol)(x)

    add(
        "four-word-cases",
        2,
        "identity, two reflectors and their composition: the image cardinality "
        "decides midpoint, three-point, or hull-projection form",
        ClosedFormMap(
            reference=_four_reference,
            probes=lambda seed: _cloud(2, 10, seed)
            + [np.zeros(2)]
            + _line_points(X_AXIS, [1.0, -3.0])
            + _line_points(U_skew, [1.0, 2.0]),
        ),
        S_four,
    )

    # --- relaxation identities
    relax_subs = [X_AXIS, AffineSubspace.span(np.array([1.0, 3.0]))]
    S_base_relax = _reflector_family(relax_subs, "relax-base")
    alpha0 = 2.0
    S_relaxed = OperatorSet(
        (Identity(), *[_relaxation(alpha0, ReflAffine(U)) for U in relax_subs]),
        name="relaxed-reflectors",
    )
    add(
        "relaxed-reflectors-identity",
        2,
        "relaxed reflectors: the mapping equals alpha*CC(x) + (1-alpha)*x",
        ClosedFormMap(
            reference=lambda x: alpha0 * cc_map(S_base_relax, x, tol).center
            + (1.0 - alpha0) * as_vector(x),
            probes=lambda seed: _cloud(2, 10, seed),
        ),
        S_relaxed,
    )

    proj_subs = [
        AffineSubspace.span(np.array([1.0, 0.0, 0.0])),
        AffineSubspace.hyperplane(np.array([1.0, 1.0, 1.0]), 0.0),
        AffineSubspace.span(np.array([0.0, 1.0, -1.0])),
    ]
    S_base_proj = _reflector_family(proj_subs, "projectors-base")
    S_projectors = OperatorSet(
        (Identity(), *[ProjAffine(U) for U in proj_subs]), name="id-all-projectors"
    )
    add(
        "projectors-all-proper",
        3,
        "identity with one projector per subspace equals the half relaxation "
        "of the reflector mapping",
        ClosedFormMap(
            reference=lambda x: 0.5 * cc_map(S_base_proj, x, tol).center + 0.5 * as_vector(x),
            probes=lambda seed: _cloud(3, 10, seed),
        ),
        S_projectors,
    )

    T_dr = AffineComb(
        ((0.5, Identity()), (0.5, Compose((ReflAffine(DIAGONAL), ReflAffine(X_AXIS)))))
    )
    S_powers = OperatorSet((Identity(), T_dr, Compose((T_dr, T_dr))), name="dr-powers")
    add(
        "dr-powers-proper",
        2,
        "identity with the averaged double-reflection operator and its square",
        DomainSpec(
            member=lambda x: True,
            probes=lambda seed: _cloud(2, 20, seed)
            + _line_points(X_AXIS, [1.0, -2.0])
            + _line_points(DIAGONAL, [0.5, 2.0]),
        ),
        S_powers,
    )

    # --- improperness criteria over parameter grids (same line twice)
    GRID = [-2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0]
    U_same = X_AXIS

    def _off_line_samples(params, seed):
        return [np.array([0.3, 1.7]), np.array([-1.2, 0.4])] + [
            p for p in _cloud(2, 4, seed) if abs(p[1]) > 0.1
        ]

    add(
        "relaxed-same-line-iff",
        2,
        "two relaxations of the same line reflector: improper exactly when "
        "both are active and distinct",
        ImpropernessIff(
            predicate=lambda a: a[0] != 0.0 and a[1] != 0.0 and a[1] != a[0],
            grid=[(a1, a2) for a1 in GRID for a2 in GRID],
            build=lambda a: OperatorSet(
                (
                    Identity(),
                    _relaxation(a[0], ReflAffine(U_same)),
                    _relaxation(a[1], ReflAffine(U_same)),
                ),
                name=f"relaxed-same-line{a}",
            ),
            samples=_off_line_samples,
        ),
    )

    def _composed_pred(a):
        a1, a2 = a
        if a1 in (0.0, 0.5) or a2 == 0.0:
            return False
        return a2 != a1 / (2.0 * a1 - 1.0)

    add(
        "relaxed-composed-iff",
        2,
        "a relaxation and the composition of two relaxations of one line "
        "reflector: improperness criterion over the parameter grid",
        ImpropernessIff(
            predicate=_composed_pred,
            grid=[(a1, a2) for a1 in GRID for a2 in GRID],
            build=lambda a: OperatorSet(
                (
                    Identity(),
                    _relaxation(a[0], ReflAffine(U_same)),
                    Compose(
                        (
                            _relaxation(a[1], ReflAffine(U_same)),
                            _relaxation(a[0], ReflAffine(U_same)),
                        )
                    ),
                ),
                name=f"relaxed-composed{a}",
            ),
            samples=_off_line_samples,
        ),
    )

    def _proj_comp_pred(a):
        a1, a2 = a
        if a1 in (0.0, 1.0) or a2 == 0.0:
            return False
        return a2 != a1 / (a1 - 1.0)

    add(
        "relaxed-projectors-same-line-iff",
        2,
        "projector variant of the composed relaxation criterion",
        ImpropernessIff(
            predicate=_proj_comp_pred,
            grid=[(a1, a2) for a1 in GRID for a2 in GRID],
            build=lambda a: OperatorSet(
                (
                    Identity(),
                    _relaxation(a[0], ProjAffine(U_same)),
                    Compose(
                        (
                            _relaxation(a[1], ProjAffine(U_same)),
                            _relaxation(a[0], ProjAffine(U_same)),
                        )
                    ),
                ),
                name=f"relaxed-proj-composed{a}",
            ),
            samples=_off_line_samples,
        ),
    )

    # --- improper projector-word families
    U12 = AffineSubspace.span(np.array([1.0, 2.0]))
    PP = Compose((ProjAffine(U12), ProjAffine(X_AXIS)))
    S_colinear = OperatorSet((Identity(), PP, Compose((PP, PP))), name="projector-colinear")
    add(
        "projector-colinear-escape",
        2,
        "identity with a projector word and its square: escapes exactly on "
        "the second line (images there are distinct and colinear)",
        DomainSpec(
            member=lambda x: not (
                abs(2.0 * x[0] - x[1]) < 1e-9 and np.linalg.norm(x) > 1e-9
            ),
            probes=lambda seed: [
                np.array([2.0, 4.0]),
                np.array([-1.0, -2.0]),
                np.array([0.5, 1.0]),
                np.zeros(2),
                np.array([1.0, 1.0]),
                np.array([3.0, -2.0]),
                np.array([1.0, 0.0]),
            ],
        ),
        S_colinear,
    )

    S_noncolinear = OperatorSet(
        (
            Identity(),
            ProjAffine(X_AXIS),
            ProjAffine(DIAGONAL),
            Compose((ProjAffine(DIAGONAL), ProjAffine(X_AXIS))),
        ),
        name="projector-noncolinear",
    )
    escape_ray = np.array([4.0, 2.0])
    add(
        "projector-noncolinear-escape",
        2,
        "identity with two projectors and their composition: the ray through "
        "(4,2) escapes the domain",
        DomainSpec(
            member=lambda x: not (
                abs(x[0] * escape_ray[1] - x[1] * escape_ray[0]) < 1e-9
                and np.dot(x, escape_ray) != 0.0
            ),
            probes=lambda seed: [
                np.array([4.0, 2.0]),
                np.array([8.0, 4.0]),
                np.array([-4.0, -2.0]),
                np.array([1.0, 0.0]),
                np.array([3.0, 0.0]),
                np.array([1.0, 1.0]),
                np.array([0.0, 5.0]),
                np.zeros(2),
            ],
        ),
        S_noncolinear,
    )

    # --- inconsistent pair: a point and a line that miss each other
    U_pt = AffineSubspace.point(np.array([2.0, 0.0]))
    S1_inc = _reflector_family([U_pt, Y_AXIS], "point-line-s1")
    S2_inc = OperatorSet(
        (Identity(), ReflAffine(U_pt), Compose((ReflAffine(Y_AXIS), ReflAffine(U_pt)))),
        name="point-line-s2",
    )

    def _inc_probes(seed):
        axis = [np.array([x, 0.0]) for x in (-3.0, 0.0, 1.0, 2.0, 3.0, 4.0, 5.0)]
        off = [p for p in _cloud(2, 8, seed) if abs(p[1]) > 0.1]
        return axis + off + [np.array([1.0, 2.0]), np.array([0.0, -2.0])]

    add(
        "point-line-inconsistent-s1",
        2,
        "reflectors of a point and a disjoint line: the horizontal axis "
        "escapes except at two exceptional points",
        DomainSpec(
            member=lambda x: abs(x[1]) > 1e-9 or x[0] in (2.0, 0.0),
            probes=_inc_probes,
        ),
        S1_inc,
    )
    add(
        "point-line-inconsistent-s2",
        2,
        "same pair with the composed word: exceptional points move to (2,0) "
        "and (4,0)",
        DomainSpec(
            member=lambda x: abs(x[1]) > 1e-9 or x[0] in (2.0, 4.0),
            probes=_inc_probes,
        ),
        S2_inc,
    )

    # --- nonnegative quadrant (box) against a vertical line
    quadrant = ProjBox(np.zeros(2), np.array([np.inf, np.inf]))
    vline = AffineSubspace.from_spanning(np.array([2.0, 0.0]), [E2])
    R_quad = reflector_of(quadrant)
    S1_cone = OperatorSet((Identity(), R_quad, ReflAffine(vline)), name="cone-line-s1")
    S2_cone = OperatorSet(
        (Identity(), R_quad, Compose((ReflAffine(vline), R_quad))), name="cone-line-s2"
    )

    def _cone_probes(seed):
        fixed = [
            np.array([-1.0, 1.0]),
            np.array([-3.0, 0.2]),
            np.array([-0.5, 4.0]),
            np.array([1.0, 1.0]),
            np.array([0.5, -1.0]),
            np.array([-1.0, -1.0]),
            np.array([3.0, 2.0]),
            np.array([-2.0, -0.3]),
        ]
        rand = [
            p
            for p in _cloud(2, 8, seed)
            if abs(p[0]) > 0.1 and abs(p[1]) > 0.1 and abs(p[0] + 2.0) > 0.1
        ]
        return fixed + rand

    add(
        "cone-line-s1",
        2,
        "quadrant reflector against a vertical line: the second quadrant "
        "escapes",
        DomainSpec(
            member=lambda x: not (x[0] < 0.0 and x[1] >= 0.0),
            probes=_cone_probes,
        ),
        S1_cone,
    )
    add(
        "cone-line-s2",
        2,
        "composed variant: the vertical ray at x=-2 rejoins the domain",
        DomainSpec(
            member=lambda x: (not (x[0] < 0.0 and x[1] >= 0.0)) or (x[0] == -2.0 and x[1] >= 0.0),
            probes=lambda seed: _cone_probes(seed)
            + [np.array([-2.0, 0.0]), np.array([-2.0, 1.0]), np.array([-2.0, 3.0])],
        ),
        S2_cone,
    )

    # --- balls against lines / other balls: escape sets live on the x-axis
    def _axis_domain(name, S, member, xs, dim_note, off_axis=True):
        def probes(seed, xs=xs, off_axis=off_axis):
            axis = [np.array([x, 0.0]) for x in xs]
            off = [p for p in _cloud(2, 6, seed) if abs(p[1]) > 0.1] if off_axis else []
            return axis + off

        add(name, 2, dim_note, DomainSpec(member=member, probes=probes), S)

    unit_ball = Ball(np.zeros(2), 1.0)
    line_x1 = AffineSubspace.from_spanning(np.array([1.0, 0.0]), [E2])
    S1_bl = OperatorSet((Identity(), reflector_of(ProjBall(unit_ball)), ReflAffine(line_x1)),
                        name="ball-line-s1")
    S2_bl = OperatorSet(
        (
            Identity(),
            reflector_of(ProjBall(unit_ball)),
            Compose((ReflAffine(line_x1), reflector_of(ProjBall(unit_ball)))),
        ),
        name="ball-line-s2",
    )
    _axis_domain(
        "ball-line-s1",
        S1_bl,
        lambda x: abs(x[1]) > 1e-9 or x[0] >= -1.0,
        (-4.0, -2.0, -1.0, -0.5, 0.5, 2.0, 5.0),
        "unit ball against the line x=1: the axis escapes left of the ball",
    )
    _axis_domain(
        "ball-line-s2",
        S2_bl,
        lambda x: abs(x[1]) > 1e-9 or x[0] >= -1.0 or x[0] == -3.0,
        (-5.0, -3.0, -2.0, -1.0, -0.5, 0.5, 2.0, 5.0),
        "composed variant: x=-3 rejoins the domain",
    )

    S1_blo = OperatorSet((Identity(), reflector_of(ProjBall(unit_ball)), ReflAffine(Y_AXIS)),
                         name="ball-line-origin-s1")
    S2_blo = OperatorSet(
        (
            Identity(),
            reflector_of(ProjBall(unit_ball)),
            Compose((ReflAffine(Y_AXIS), reflector_of(ProjBall(unit_ball)))),
        ),
        name="ball-line-origin-s2",
    )
    _axis_domain(
        "ball-line-origin-s1",
        S1_blo,
        lambda x: abs(x[1]) > 1e-9 or abs(x[0]) <= 1.0,
        (-4.0, -1.5, -1.0, -0.5, 0.0, 0.5, 1.0, 1.5, 4.0),
        "unit ball against the y-axis: the axis escapes outside the ball",
    )
    _axis_domain(
        "ball-line-origin-s2",
        S2_blo,
        lambda x: abs(x[1]) > 1e-9 or abs(x[0]) <= 1.0 or abs(x[0]) == 2.0,
        (-4.0, -2.0, -1.5, -1.0, -0.5, 0.0, 0.5, 1.0, 1.5, 2.0, 4.0),
        "composed variant: x=+-2 rejoins the domain",
    )

    ball_l = Ball(np.array([-1.0, 0.0]), 1.0)
    ball_r = Ball(np.array([1.0, 0.0]), 1.0)
    S1_bb = OperatorSet(
        (Identity(), reflector_of(ProjBall(ball_l)), reflector_of(ProjBall(ball_r))),
        name="ball-ball-s1",
    )
    S2_bb = OperatorSet(
        (
            Identity(),
            reflector_of(ProjBall(ball_l)),
            Compose((reflector_of(ProjBall(ball_r)), reflector_of(ProjBall(ball_l)))),
        ),
        name="ball-ball-s2",
    )
    _axis_domain(
        "ball-ball-s1",
        S1_bb,
        lambda x: abs(x[1]) > 1e-9 or abs(x[0]) <= 2.0,
        (-4.0, -2.5, -2.0, -1.0, 0.0, 1.5, 2.0, 2.5, 4.0),
        "two touching unit balls: the axis escapes outside their hull",
    )
    # the composed two-ball variants state inclusions only
    _axis_domain(
        "ball-ball-s2-inclusions",
        S2_bb,
        lambda x: x[0] >= -2.0 or -6.0 <= x[0] <= -4.0,
        (-7.0, -6.0, -5.0, -4.0, -3.5, -3.0, -2.5, -2.0, -1.0, 0.0, 1.0, 3.0),
        "composed two-ball variant, stated membership on the axis only",
        off_axis=False,
    )

    ball_lw = Ball(np.array([-1.0, 0.0]), 2.0)
    ball_rw = Ball(np.array([1.0, 0.0]), 2.0)
    S1_bbw = OperatorSet(
        (Identity(), reflector_of(ProjBall(ball_lw)), reflector_of(ProjBall(ball_rw))),
        name="ball-ball-wide-s1",
    )
    S2_bbw = OperatorSet(
        (
            Identity(),
            reflector_of(ProjBall(ball_lw)),
            Compose((reflector_of(ProjBall(ball_rw)), reflector_of(ProjBall(ball_lw)))),
        ),
        name="ball-ball-wide-s2",
    )
    _axis_domain(
        "ball-ball-wide-s1",
        S1_bbw,
        lambda x: abs(x[1]) > 1e-9 or abs(x[0]) <= 3.0,
        (-5.0, -3.5, -3.0, -2.0, 0.0, 2.0, 3.0, 3.5, 5.0),
        "two overlapping radius-2 balls: the axis escapes outside their hull",
    )
    _axis_domain(
        "ball-ball-wide-s2-inclusions",
        S2_bbw,
        lambda x: -3.0 <= x[0] <= 3.0 or -9.0 <= x[0] <= -5.0,
        (-10.0, -9.0, -7.0, -5.0, -4.5, -4.0, -3.5, -3.0, -1.0, 0.0, 2.0, 3.0, 3.5, 4.0, 5.0),
        "composed wide two-ball variant, stated membership on the axis only",
        off_axis=False,
    )

    # --- nonconvex circles (sphere boundaries): the domain is a proper subset
    circle_l = ProjSphere(np.array([-1.0, 0.0]), 2.0)
    circle_r = ProjSphere(np.array([1.0, 0.0]), 2.0)
    S_circles = OperatorSet(
        (Identity(), reflector_of(circle_l), reflector_of(circle_r)), name="circles"
    )
    add(
        "circles-nonconvex-probe",
        2,
        "reflectors of two circles (boundaries, nonconvex): probing finds at "
        "least one point without a circumcenter",
        ImpropernessIff(
            predicate=lambda a: True,
            grid=[()],
            build=lambda a: S_circles,
            samples=lambda a, seed: [np.zeros(2), np.array([0.5, 0.0])] + _cloud(2, 6, seed),
        ),
    )

    # --- reflected resolvents with closed forms
    NONNEG_GRID = [0.0, 0.5, 1.0, 2.0]

    def _resolvent_samples(a, seed):
        return [np.array([1.0, 0.5]), np.array([-2.0, 3.0])] + _cloud(2, 3, seed)

    add(
        "scaled-id-resolvents",
        2,
        "reflected resolvents of two nonnegative scalings of the identity",
        ImpropernessIff(
            predicate=lambda a: a[0] != 0.0 and a[1] != 0.0 and a[0] != a[1],
            grid=[(a1, a2) for a1 in NONNEG_GRID for a2 in NONNEG_GRID],
            build=lambda a: OperatorSet(
                (
                    Identity(),
                    reflected_resolvent_scaled_id(a[0]),
                    reflected_resolvent_scaled_id(a[1]),
                ),
                name=f"scaled-resolvents{a}",
            ),
            samples=_resolvent_samples,
        ),
    )
    add(
        "scaled-id-resolvents-composed",
        2,
        "composed variant of the scaled-identity reflected resolvents",
        ImpropernessIff(
            predicate=lambda a: (
                a[0] != 0.0 and a[0] != 1.0 and a[1] != 0.0 and a[0] != -a[1]
            ),
            grid=[(a1, a2) for a1 in NONNEG_GRID for a2 in NONNEG_GRID],
            build=lambda a: OperatorSet(
                (
                    Identity(),
                    reflected_resolvent_scaled_id(a[0]),
                    Compose(
                        (
                            reflected_resolvent_scaled_id(a[1]),
                            reflected_resolvent_scaled_id(a[0]),
                        )
                    ),
                ),
                name=f"scaled-resolvents-comp{a}",
            ),
            samples=_resolvent_samples,
        ),
    )

    def _const_samples(a, seed):
        return [np.array([0.7]), np.array([-1.3])]

    add(
        "const-resolvents",
        1,
        "reflected resolvents of two constant operators on the line",
        ImpropernessIff(
            predicate=lambda a: a[0] != 0.0 and a[1] != 0.0 and a[0] != a[1],
            grid=[(a1, a2) for a1 in GRID for a2 in GRID],
            build=lambda a: OperatorSet(
                (
                    Identity(),
                    reflected_resolvent_const(np.array([a[0]])),
                    reflected_resolvent_const(np.array([a[1]])),
                ),
                name=f"const-resolvents{a}",
            ),
            samples=_const_samples,
        ),
    )
    add(
        "const-resolvents-composed",
        1,
        "composed variant of the constant reflected resolvents",
        ImpropernessIff(
            predicate=lambda a: a[0] != 0.0 and a[1] != 0.0 and a[0] != -a[1],
            grid=[(a1, a2) for a1 in GRID for a2 in GRID],
            build=lambda a: OperatorSet(
                (
                    Identity(),
                    reflected_resolvent_const(np.array([a[0]])),
                    Compose(
                        (
                            reflected_resolvent_const(np.array([a[1]])),
                            reflected_resolvent_const(np.array([a[0]])),
                        )
                    ),
                ),
                name=f"const-resolvents-comp{a}",
            ),
            samples=_const_samples,
        ),
    )

    # --- proper projector-word families with one linear subspace
    U1_aff = AffineSubspace.from_spanning(np.array([1.0, 2.0]), [E1])
    U2_lin = DIAGONAL
    add(
        "proj-comp-linear-proper",
        2,
        "identity, a projector, and the composed word onto a linear second "
        "subspace: always proper",
        DomainSpec(
            member=lambda x: True,
            probes=lambda seed: _cloud(2, 15, seed)
            + _line_points(U1_aff, [0.0, 2.0])
            + _line_points(U2_lin, [1.0, -1.0]),
        ),
        OperatorSet(
            (
                Identity(),
                ProjAffine(U1_aff),
                Compose((ProjAffine(U2_lin), ProjAffine(U1_aff))),
            ),
            name="proj-comp-first",
        ),
    )
    add(
        "proj-comp-second-proper",
        2,
        "identity, the linear projector, and the composed word: always proper",
        DomainSpec(
            member=lambda x: True,
            probes=lambda seed: _cloud(2, 15, seed) + _line_points(U1_aff, [0.0, 2.0]),
        ),
        OperatorSet(
            (
                Identity(),
                ProjAffine(U2_lin),
                Compose((ProjAffine(U2_lin), ProjAffine(U1_aff))),
            ),
            name="proj-comp-second",
        ),
    )

    # --- discontinuity and nonlinearity of the two-line reflector mapping
    add(
        "crm-discontinuity",
        2,
        "the two-line reflector mapping jumps at (1,0): constant (0,0) along "
        "the approach but (1/2,1/2) at the limit",
        SequenceLimit(
            points=[np.array([1.0, 1.0 / (k + 1.0)]) for k in range(1, 61)],
            cc_values=lambda x: np.zeros(2),
            limit=np.array([1.0, 0.0]),
            map_at_limit=np.array([0.5, 0.5]),
        ),
        S_two,
    )
    add(
        "crm-nonlinearity",
        2,
        "the two-line reflector mapping is not additive: values at (1,0), "
        "(1,-1) and their sum",
        ClosedFormMap(
            reference=lambda x: {
                (1.0, 0.0): np.array([0.5, 0.5]),
                (1.0, -1.0): np.zeros(2),
                (2.0, -1.0): np.zeros(2),
            }[tuple(map(float, x))],
            probes=lambda seed: [
                np.array([1.0, 0.0]),
                np.array([1.0, -1.0]),
                np.array([2.0, -1.0]),
            ],
        ),
        S_two,
    )

    # --- benchmark tables
    add(
        "table1-line-plane",
        3,
        "line/plane benchmark row (reference counts 12, 12, 1, 1)",
        IterationCounts("table1-line-plane"),
    )
    add(
        "table2-plane-plane",
        3,
        "plane/plane benchmark row (reference counts 5, 6, 5, 2)",
        IterationCounts("table2-plane-plane"),
    )

    names = [s.name for s in scenarios]
    assert len(names) == len(set(names)), "scenario names must be unique"
    return scenarios


_CATALOG: list[Scenario] | None = None


def catalog() -> list[Scenario]:
    """The full scenario list (memoized; scenarios are immutable in use)."""
    global _CATALOG
    if _CATALOG is None:
        _CATALOG = _build_catalog()
    return list(_CATALOG)


def scenario(name: str) -> Scenario:
    for s in catalog():
        if s.name == name:
            return s
    raise ScenarioNotFoundError(name)


# -- verification ---------------------------------------------------------------


def _rel_dev(got, want) -> float:
    return float(np.linalg.norm(got - want) / (1.0 + np.linalg.norm(want)))


def verify(name: str, seed: int = 0, tol: Tolerances = DEFAULT_TOL) -> VerificationReport:
    """Replay one scenario's expectation; every deviation becomes a failure."""
    return verify_scenario(scenario(name), seed, tol)


def verify_all(seed: int = 0, tol: Tolerances = DEFAULT_TOL) -> list[VerificationReport]:
    return [verify_scenario(s, seed, tol) for s in catalog()]


def verify_scenario(
    s: Scenario, seed: int = 0, tol: Tolerances = DEFAULT_TOL
) -> VerificationReport:
    report = VerificationReport(scenario=s.name)
    kind = s.expected
    if isinstance(kind, ClosedFormMap):
        for x in kind.probes(seed):
            want = kind.reference(x)
            out = cc_map(s.operator_set, x, tol)
            if want is None:
                report.record(float(out.exists), not out.exists, x, None, out.center)
            elif not out.exists:
                report.record(1.0, False, x, want, None)
            else:
                dev = _rel_dev(out.center, want)
                report.record(dev, dev <= kind.check_tol, x, want, out.center)
    elif isinstance(kind, DomainSpec):
        for x in kind.probes(seed):
            want = bool(kind.member(x))
            got = in_domain(s.operator_set, x, tol).in_domain
            report.record(float(want != got), want == got, x, want, got)
    elif isinstance(kind, ImpropernessIff):
        for params in kind.grid:
            S = kind.build(params)
            improper = any(
                not in_domain(S, x, tol).in_domain for x in kind.samples(params, seed)
            )
            want = bool(kind.predicate(params))
            report.record(float(want != improper), want == improper, params, want, improper)
    elif isinstance(kind, SequenceLimit):
        _verify_sequence(s, kind, report, tol)
    elif isinstance(kind, IterationCounts):
        result = run_benchmark(kind.table)
        for method, want in REFERENCE_COUNTS[kind.table].items():
            got = result.counts[method]
            dev = float("inf") if got is None else float(abs(got - want))
            report.record(dev, got == want, f"{kind.table}:{method}", want, got)
    elif isinstance(kind, FixedPointSpec):
        for x in kind.fixed:
            r = fixed_point_residual(s.operator_set, x, tol)
            ok = r is not None and r <= 1e-9 * (1.0 + np.linalg.norm(x))
            report.record(r if r is not None else float("inf"), ok, x, 0.0, r)
        for x in kind.not_fixed(seed):
            r = fixed_point_residual(s.operator_set, x, tol)
            ok = r is not None and r > kind.separation
            report.record(0.0 if ok else 1.0, ok, x, f"> {kind.separation}", r)
        if kind.proper_probes is not None:
            for x in kind.proper_probes(seed):
                ok = cc_map(s.operator_set, x, tol).exists
                report.record(0.0 if ok else 1.0, ok, x, "exists", ok)
    else:
        raise TypeError(f"unknown expectation kind {type(kind).__name__}")
    return report


def _verify_sequence(s: Scenario, kind: SequenceLimit, report: VerificationReport, tol):
    residuals = []
    for x in kind.points:
        out = cc_map(s.operator_set, x, tol)
        if not out.exists:
            report.record(1.0, False, x, "exists", None)
            continue
        residuals.append(float(np.linalg.norm(x - out.center)))
        if kind.cc_values is not None:
            want = kind.cc_values(x)
            dev = _rel_dev(out.center, want)
            report.record(dev, dev <= kind.check_tol, x, want, out.center)
    if kind.expect_vanishing is not None and residuals:
        vanished = residuals[-1] <= max(1e-6, 0.05 * residuals[0])
        report.record(
            residuals[-1],
            vanished == kind.expect_vanishing,
            "residual-trend",
            kind.expect_vanishing,
            vanished,
        )
    if kind.limit is not None:
        out = cc_map(s.operator_set, kind.limit, tol)
        if kind.map_at_limit is not None:
            if not out.exists:
                report.record(1.0, False, kind.limit, kind.map_at_limit, None)
            else:
                dev = _rel_dev(out.center, kind.map_at_limit)
                report.record(dev, dev <= kind.check_tol, kind.limit, kind.map_at_limit,
                              out.center)
        if kind.limit_residual is not None:
            got = fixed_point_residual(s.operator_set, kind.limit, tol)
            dev = float("inf") if got is None else abs(got - kind.limit_residual)
            report.record(dev, dev <= kind.residual_tol, "limit-residual",
                          kind.limit_residual, got)


# -- domain probing ---------------------------------------------------------------


@dataclass(frozen=True)
class ProbeGrid:
    """Rectangular probe grid for two-dimensional domain classification."""

    xmin: float
    xmax: float
    nx: int
    ymin: float
    ymax: float
    ny: int

    def points(self):
        xs = np.linspace(self.xmin, self.xmax, self.nx) if self.nx > 0 else []
        ys = np.linspace(self.ymin, self.ymax, self.ny) if self.ny > 0 else []
        return [np.array([x, y]) for y in ys for x in xs]


def domain_probe(S: OperatorSet, grid: ProbeGrid, tol: Tolerances = DEFAULT_TOL,
                 member=None):
    """Classify every grid point; returns (rows, agreement) where rows are
    (x, y, in_domain) and agreement is the match rate against ``member``
    (None when no reference predicate is given)."""
    rows = []
    agree = 0
    total = 0
    for p in grid.points():
        inside = in_domain(S, p, tol).in_domain
        rows.append((float(p[0]), float(p[1]), inside))
        if member is not None:
            total += 1
            agree += int(bool(member(p)) == inside)
    agreement = (agree / total) if member is not None and total else None
    return rows, agreement
