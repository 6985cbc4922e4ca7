"""Kinematics and workspace analysis toolkit for the Canfield Joint.

The joint is two equilateral plates linked by three two-piece arms. Besides
the classical base-angle control (theta1, theta2, theta3), the package
implements the alternate (theta, p, phi) scheme built on one instrumented
arm: base angle, plunge distance, and position on the arm's reach circle.
From there: full-joint reconstruction with branch enumeration, inverse
preimage counting, broken-arm workspace sweeps, a numeric bridge between the
two control schemes, a CLI and an HTTP service.
"""

from .geometry import (
    DEFAULT_TOL,
    Circle3,
    CircleInPlaneError,
    CoincidentCirclesError,
    CoincidentPointsError,
    GeometryError,
    IntersectionKind,
    IntersectionResult,
    Plane,
    Sphere,
    Vec3,
    circle_circle_intersect_3d,
    circle_plane_intersect,
    perp_bisector_plane,
    reflect_direction,
    reflect_point,
    sphere_sphere_intersect,
    vec3,
)
from .joint import (
    BaseLayout,
    JointError,
    JointParams,
    OutOfRangeError,
    ParamClass,
    Regime,
    WrongRegimeError,
    base_layout,
    boundary_theta,
    coincident_theta,
    d_bounds,
    d_of,
    p_bounds,
    param_class,
    regime,
    theta_max,
)
from .arm import (
    AmbiguousSphereError,
    ArmSolution,
    ControlTriple,
    NoIntersectionError,
    NotOnCircleError,
    PhiOutOfRangeError,
    PreimageClass,
    PreimageKind,
    UnreachableError,
    ball_joint_position,
    coincident_selector,
    forward_arm,
    intersection_circle,
    inverse_arm,
    phi_of_point,
)
from .planar import (
    PlanarConfiguration,
    PlanarPreimage,
    planar_bruteforce_matches,
    planar_fourbar_solve,
)
from .full_joint import (
    ALL_BRANCH_IDS,
    ArmCircleStatus,
    Branch,
    BranchId,
    Configuration,
    DegenerateFoldError,
    FkSolution,
    PathBrokenError,
    ReconstructionReport,
    Violation,
    configuration_from_dict,
    fixed_plunge_path,
    mirror_plane,
    pointing,
    reconstruct,
    solve_fk,
    thetas_of,
    validate,
)
from .workspace import (
    CloudSample,
    CoverageReport,
    EmptyCloudError,
    SweepSpec,
    WorkspaceCloud,
    WorkspaceError,
    cloud_from_dict,
    cloud_to_dict,
    coverage,
    export_cloud,
    import_cloud_json,
    read_cloud_csv,
    solid_angle_fraction,
    sweep_broken_arm,
)
from .oracles import OracleReport, arm_preimage_oracle, run_oracle_suite

__version__ = "0.1.0"
