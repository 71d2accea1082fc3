"""circumlib: circumcenters of finite point sets, circumcenter mappings
induced by operator families, and reflection-based best-approximation solvers
in R^n."""

from .circumcenter import (
    CircumcenterOutcome,
    PointSet,
    circumcenter,
    circumcenter_oracle,
    circumcenter_three,
)
from .circummap import (
    DemiclosednessReport,
    DomainDiagnosis,
    OperatorSet,
    PropernessReport,
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
from .gallery import (
    ProbeGrid,
    Scenario,
    ScenarioNotFoundError,
    VerificationReport,
    catalog,
    domain_probe,
    scenario,
    verify,
    verify_all,
    verify_scenario,
)
from .geometry import (
    DEFAULT_TOL,
    DimensionMismatchError,
    SingularMatrixError,
    Tolerances,
    affine_hull_basis,
    as_vector,
    gram,
    orthonormal_basis,
    orthonormal_complement,
    rank,
    solve_sym,
)
from .operators import (
    AffineComb,
    AffineSubspace,
    Ball,
    Compose,
    Constant,
    EmptyIntersectionError,
    Identity,
    Operator,
    ProjAffine,
    ProjBall,
    ProjBox,
    ProjSphere,
    ReflAffine,
    ReflBall,
    ScaledId,
    Translate,
    UnsupportedNodeError,
    ambient_dim,
    apply,
    fixed_point_set_affine,
    intersect_affine,
    project_ball,
    reflected_resolvent_const,
    reflected_resolvent_scaled_id,
    reflector_of,
    reflector_word,
    projector_word,
)
from .solvers import (
    REFERENCE_COUNTS,
    TABLE_NAMES,
    BenchResult,
    IterationTrace,
    PairTrace,
    StopRule,
    best_approximation,
    calibrate_epsilon,
    count_window,
    crm_solve,
    drm_pair_solve,
    drm_solve,
    iterations_to_tolerance,
    map_solve,
    run_benchmark,
    table_geometry,
)

__version__ = "0.1.0"
