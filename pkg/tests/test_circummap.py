import numpy as np
import pytest

from circumlib.circummap import (
    OperatorSet,
    affine_comb_identity_check,
    cc_map,
    check_properness_sampled,
    demiclosedness_probe,
    evaluate_set,
    fixed_point_residual,
    gaussian_cloud,
    in_domain,
    relaxed_set,
    subspace_probes,
)
from circumlib.operators import (
    AffineComb,
    AffineSubspace,
    Compose,
    Constant,
    Identity,
    ProjAffine,
    ReflAffine,
    ScaledId,
    apply,
    intersect_affine,
)

X_AXIS = AffineSubspace.span(np.array([1.0, 0.0]))
Y_AXIS = AffineSubspace.span(np.array([0.0, 1.0]))
DIAG = AffineSubspace.span(np.array([1.0, 1.0]))

S_TWO_LINES = OperatorSet((Identity(), ReflAffine(X_AXIS), ReflAffine(DIAG)))


def reflector_family(subspaces):
    return OperatorSet((Identity(), *[ReflAffine(U) for U in subspaces]))


# -- image sets -----------------------------------------------------------------


def test_evaluate_set_collapses_on_subspace():
    U = AffineSubspace.span(np.array([1.0, 2.0]))
    S = OperatorSet(
        (Identity(), ReflAffine(U), ReflAffine(U.orthogonal_complement()))
    )
    x = np.array([1.0, 2.0])  # on U, so the first reflector fixes it
    assert len(evaluate_set(S, x)) == 2


def test_evaluate_set_singleton():
    assert len(evaluate_set(OperatorSet((Identity(),)), [3.0, 1.0])) == 1


def test_evaluate_set_four_distinct():
    U = AffineSubspace.span(np.array([1.0, 2.0]))
    S = OperatorSet(
        (
            Identity(),
            ProjAffine(U),
            ProjAffine(U.orthogonal_complement()),
            Constant(np.zeros(2)),
        )
    )
    assert len(evaluate_set(S, [1.0, -1.0])) == 4


# -- the mapping ------------------------------------------------------------------


def test_cc_map_reflector_pair_is_zero():
    U = AffineSubspace.span(np.array([1.0, 2.0]))
    S = OperatorSet((Identity(), ReflAffine(U), ReflAffine(U.orthogonal_complement())))
    for x in gaussian_cloud(2, 10, seed=1):
        out = cc_map(S, x)
        assert out.exists
        assert np.linalg.norm(out.center) <= 1e-10 * (1 + np.linalg.norm(x))


def test_cc_map_projector_quadruple_is_half():
    U = AffineSubspace.span(np.array([1.0, 2.0]))
    S = OperatorSet(
        (
            Identity(),
            ProjAffine(U),
            ProjAffine(U.orthogonal_complement()),
            Constant(np.zeros(2)),
        )
    )
    for x in gaussian_cloud(2, 10, seed=2):
        out = cc_map(S, x)
        assert np.linalg.norm(out.center - 0.5 * x) <= 1e-10 * (1 + np.linalg.norm(x))


def test_cc_map_on_first_line_collapses_from_degenerate_start():
    # start exactly on the first subspace: the image pair gives the midpoint,
    # which is the projection onto the second subspace
    line = AffineSubspace.span(np.array([1.0, 0.0, 0.0]))
    plane = AffineSubspace.hyperplane(np.array([1.0, 1.0, 1.0]), 0.0)
    S = reflector_family([line, plane])
    x0 = np.array([0.5, 0.0, 0.0])
    out = cc_map(S, x0)
    np.testing.assert_allclose(out.center, plane.project(x0), atol=1e-12)
    np.testing.assert_allclose(out.center, [1.0 / 3.0, -1.0 / 6.0, -1.0 / 6.0])


def test_cc_map_inconsistent_pair_escapes_on_axis():
    S = reflector_family([AffineSubspace.point([2.0, 0.0]), Y_AXIS])
    assert not cc_map(S, [3.0, 0.0]).exists
    assert cc_map(S, [3.0, 1.0]).exists


def test_cc_map_satisfies_hull_and_equidistance():
    S = S_TWO_LINES
    x = np.array([2.0, 1.0])
    out = cc_map(S, x)
    pts = evaluate_set(S, x).points
    dists = np.linalg.norm(pts - out.center, axis=1)
    assert dists.max() - dists.min() <= 1e-10 * (1 + dists.mean())
    hull = AffineSubspace.from_points(list(pts))
    assert np.linalg.norm(hull.project(out.center) - out.center) <= 1e-10


# -- domain diagnostics ------------------------------------------------------------


def test_in_domain_card_two_always_inside():
    diag = in_domain(OperatorSet((Identity(), ReflAffine(X_AXIS))), [1.0, 2.0])
    assert diag.in_domain and diag.card == 2


def test_in_domain_scaled_identity_on_axis():
    S = OperatorSet((ScaledId(2.0), ReflAffine(X_AXIS), ReflAffine(Y_AXIS)))
    diag = in_domain(S, [1.0, 0.0])
    assert not diag.in_domain
    assert diag.card == 3 and not diag.affinely_independent
    alpha, beta = diag.witness
    pts = evaluate_set(S, [1.0, 0.0]).points
    combo = alpha * (pts[1] - pts[0]) + beta * (pts[2] - pts[0])
    assert np.linalg.norm(combo) <= 1e-10
    assert abs(alpha) + abs(beta) > 0.1


def test_in_domain_unit_scaling_everywhere():
    S = OperatorSet((ScaledId(1.0), ReflAffine(X_AXIS), ReflAffine(Y_AXIS)))
    probes = gaussian_cloud(2, 20, seed=3) + [np.array([1.0, 0.0]), np.zeros(2)]
    assert all(in_domain(S, x).in_domain for x in probes)


def test_check_properness_reflector_family_clean():
    subs = [X_AXIS, DIAG]
    S = reflector_family(subs)
    pts = gaussian_cloud(2, 50, seed=4) + subspace_probes(subs, seed=4)
    report = check_properness_sampled(S, pts)
    assert report.proper_on_samples
    assert report.checked == len(pts)
    assert not report.criterion_mismatches


def test_check_properness_finds_escape():
    S = OperatorSet(
        (
            Identity(),
            ProjAffine(X_AXIS),
            ProjAffine(DIAG),
            Compose((ProjAffine(DIAG), ProjAffine(X_AXIS))),
        )
    )
    report = check_properness_sampled(S, [np.array([4.0, 2.0]), np.array([1.0, 1.0])])
    assert [tuple(c) for c in report.counterexamples] == [(4.0, 2.0)]


def test_check_properness_identity_only():
    report = check_properness_sampled(OperatorSet((Identity(),)), gaussian_cloud(2, 5, 5))
    assert report.proper_on_samples


# -- fixed points --------------------------------------------------------------------


def test_fixed_point_residual_zero_at_common_fixed_point():
    S = reflector_family([X_AXIS, DIAG])
    assert fixed_point_residual(S, np.zeros(2)) <= 1e-10


def test_fixed_point_residual_of_demiclosedness_geometry():
    L = AffineSubspace.from_spanning(np.array([0.0, 0.5]), [np.array([4.0, -1.0])])
    S = OperatorSet(
        (Constant(np.array([-2.0, 0.0])), Constant(np.array([2.0, 0.0])), ProjAffine(L))
    )
    assert fixed_point_residual(S, [0.0, -8.0]) == pytest.approx(8.0, abs=1e-9)


def test_fixed_point_residual_reflector_pair():
    S = OperatorSet((Identity(), ReflAffine(DIAG)))
    x = np.array([2.0, 0.0])
    want = np.linalg.norm(x - DIAG.project(x))
    assert fixed_point_residual(S, x) == pytest.approx(want)


def test_fixed_point_equality_with_identity_member():
    # with the identity in the family, zero residual forces every operator
    # to fix the point, and conversely
    S = reflector_family([X_AXIS, DIAG])
    for x in gaussian_cloud(2, 30, seed=6) + [np.zeros(2)]:
        r = fixed_point_residual(S, x)
        all_fixed = max(
            np.linalg.norm(apply(op, x) - x) for op in S.ops
        ) <= 1e-10 * (1 + np.linalg.norm(x))
        assert (r <= 1e-10 * (1 + np.linalg.norm(x))) == all_fixed


# -- demiclosedness probe ---------------------------------------------------------------


def test_demiclosedness_probe_counterexample():
    L = AffineSubspace.from_spanning(np.array([0.0, 0.5]), [np.array([4.0, -1.0])])
    S = OperatorSet(
        (Constant(np.array([-2.0, 0.0])), Constant(np.array([2.0, 0.0])), ProjAffine(L))
    )
    seq = [np.array([1.0 / k, -1.0 / (4.0 * k) - 8.0]) for k in range(1, 101)]
    report = demiclosedness_probe(S, seq, limit=np.array([0.0, -8.0]))
    assert report.residuals_vanish
    assert report.residuals[-1] < report.residuals[0] * 0.05
    assert report.limit_residual == pytest.approx(8.0, abs=1e-6)
    assert not report.limit_is_fixed


def test_demiclosedness_probe_constant_sequence_at_fixed_point():
    S = reflector_family([X_AXIS, DIAG])
    report = demiclosedness_probe(S, [np.zeros(2)] * 5)
    assert report.limit_is_fixed
    assert max(report.residuals) <= 1e-12


def test_demiclosedness_probe_nonexpansive_family_limit_is_fixed():
    # vanishing residuals along a convergent sequence force a fixed limit
    S = reflector_family([X_AXIS, DIAG])
    seq = [np.array([1.0, 1.0]) * 2.0**-k for k in range(20)]
    report = demiclosedness_probe(S, seq, limit=np.zeros(2))
    assert report.residuals_vanish and report.limit_is_fixed


# -- relaxation identities ----------------------------------------------------------------


@pytest.mark.parametrize("alpha", [-1.0, 0.0, 0.5, 1.0, 2.0])
def test_reflector_relaxation_identity(alpha):
    subs = [X_AXIS, AffineSubspace.span(np.array([1.0, 3.0]))]
    for x in gaussian_cloud(2, 8, seed=7):
        got, predicted = affine_comb_identity_check(subs, alpha, x)
        assert got is not None
        assert np.linalg.norm(got - predicted) <= 1e-9 * (1 + np.linalg.norm(predicted))


@pytest.mark.parametrize("alpha", [0.5, 1.0, 2.0])
def test_projector_relaxation_identity(alpha):
    subs = [X_AXIS, AffineSubspace.span(np.array([1.0, 3.0]))]
    for x in gaussian_cloud(2, 8, seed=8):
        got, predicted = affine_comb_identity_check(subs, alpha, x, projectors=True)
        assert got is not None
        assert np.linalg.norm(got - predicted) <= 1e-9 * (1 + np.linalg.norm(predicted))


def test_relaxed_set_alpha_zero_is_identity_family():
    subs = [X_AXIS]
    S = relaxed_set(subs, 0.0)
    x = np.array([1.0, 2.0])
    out = cc_map(S, x)
    np.testing.assert_allclose(out.center, x)


# -- structural invariants ----------------------------------------------------------------


def test_dr_identity_exact():
    S = OperatorSet((Identity(), Compose((ReflAffine(DIAG), ReflAffine(X_AXIS)))))
    for x in gaussian_cloud(2, 20, seed=9):
        out = cc_map(S, x)
        want = 0.5 * (x + DIAG.reflect(X_AXIS.reflect(x)))
        assert np.linalg.norm(out.center - want) <= 1e-12 * (1 + np.linalg.norm(want))


def test_on_subspace_collapse():
    S = S_TWO_LINES
    for t in (-2.0, 0.5, 3.0):
        x = np.array([t, 0.0])
        out = cc_map(S, x)
        np.testing.assert_allclose(out.center, DIAG.project(x), atol=1e-12)


def test_dr_powers_family_proper():
    T = AffineComb(
        ((0.5, Identity()), (0.5, Compose((ReflAffine(DIAG), ReflAffine(X_AXIS)))))
    )
    S = OperatorSet((Identity(), T, Compose((T, T))))
    pts = gaussian_cloud(2, 1000, seed=10) + subspace_probes([X_AXIS, DIAG], 5, seed=10)
    report = check_properness_sampled(S, pts)
    assert report.proper_on_samples


def test_dr_powers_span_the_word_family_hull():
    # aff{x, Tx, T^2x} = aff{x, Wx, W^2x} for the double-reflection word W
    T = AffineComb(
        ((0.5, Identity()), (0.5, Compose((ReflAffine(DIAG), ReflAffine(X_AXIS)))))
    )
    W = Compose((ReflAffine(DIAG), ReflAffine(X_AXIS)))
    for x in gaussian_cloud(2, 10, seed=11):
        hull_T = AffineSubspace.from_points([x, apply(T, x), apply(T, apply(T, x))])
        hull_W = AffineSubspace.from_points([x, apply(W, x), apply(W, apply(W, x))])
        assert hull_T.dim == hull_W.dim
        probe = apply(W, x)
        assert np.linalg.norm(hull_T.project(probe) - probe) <= 1e-9 * (
            1 + np.linalg.norm(probe)
        )


def test_nonlinearity_witness():
    S = S_TWO_LINES
    a = cc_map(S, [1.0, 0.0]).center
    b = cc_map(S, [1.0, -1.0]).center
    c = cc_map(S, [2.0, -1.0]).center
    np.testing.assert_allclose(a, [0.5, 0.5], atol=1e-12)
    np.testing.assert_allclose(b, [0.0, 0.0], atol=1e-12)
    np.testing.assert_allclose(c, [0.0, 0.0], atol=1e-12)
    assert np.linalg.norm((a + b) - c) > 0.5


def test_discontinuity_witness():
    S = S_TWO_LINES
    at_limit = cc_map(S, [1.0, 0.0]).center
    np.testing.assert_allclose(at_limit, [0.5, 0.5], atol=1e-12)
    for k in (1, 5, 50, 500):
        out = cc_map(S, [1.0, 1.0 / (k + 1.0)])
        assert np.linalg.norm(out.center) <= 1e-9


def test_reflector_word_families_always_proper_small():
    # identity-containing word families stay proper and project the common
    # point onto the image hull (small version of the acceptance run)
    rng = np.random.default_rng(12)
    for _ in range(50):
        n = int(rng.integers(2, 5))
        z = rng.standard_normal(n)
        subs = [
            AffineSubspace.from_spanning(
                z, [rng.standard_normal(n) for _ in range(int(rng.integers(0, n)))]
            )
            for _ in range(int(rng.integers(1, 4)))
        ]
        ops = [Identity()]
        for _ in range(int(rng.integers(1, 4))):
            word = [
                int(rng.integers(0, len(subs))) for _ in range(int(rng.integers(1, 4)))
            ]
            ops.append(
                Compose(tuple(ReflAffine(subs[i]) for i in reversed(word)))
            )
        S = OperatorSet(tuple(ops))
        meet = intersect_affine(subs)
        x = rng.standard_normal(n) * 2.0
        out = cc_map(S, x)
        assert out.exists
        hull = AffineSubspace.from_points(list(evaluate_set(S, x)))
        for _ in range(3):
            u = meet.project(rng.standard_normal(n) * 2.0)
            assert np.linalg.norm(out.center - hull.project(u)) <= 1e-9 * (
                1 + np.linalg.norm(x)
            )
