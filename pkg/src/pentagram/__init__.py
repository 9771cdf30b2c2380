"""Deep-diagonal pentagram maps and the (8,3) system on symmetric octagons."""
from .errors import (
    CalibrationFailed,
    DegenerateInput,
    Inconclusive,
    InvalidRotation,
    NearDegenerate,
    NoClosure,
    NotSymmetric,
    PentagramError,
    PoleOfMap,
    ResolutionTooCoarse,
    SeedOffCurve,
    SingularLevel,
    UndefinedOnAxes,
)
from .projective import (
    LINE_AT_INFINITY,
    HomogeneousPoint,
    ProjectiveLine,
    ProjectiveMap,
    collinear,
    dualize,
    incident,
    join,
    map_from_four_points,
    meet,
)
from .octagon import (
    P_MINUS,
    P_PLUS,
    SymmetricOctagon,
    canonical_vertices,
    diagonal_step,
    dual_D,
    half_map,
    map_coefficients,
    psi,
    sigma1,
    sigma2,
    t3,
    t3_inverse,
)
from .cubic import (
    CubicLevel,
    RealCurveComponent,
    antidiagonal_roots,
    evaluate_V,
    gradient_V,
    is_singular_level,
    trace_projective_loop,
    trace_real_curve,
)
from .dynamics import (
    CircleArcSet,
    EscapeField,
    OrbitRecord,
    OrbitStep,
    RotationEstimate,
    antidiagonal_fixed_residual,
    convexity_region_scan,
    escape_times,
    in_convex_region,
    is_convex_octagon,
    minor_orbit_escape,
    orbit,
    rotation_number_estimate,
)
from .polygons import (
    Conic,
    Polygon,
    calibrate_labeling,
    deep_diagonal,
    equivalence_map,
    inverse_deep_diagonal,
    is_convex_projective,
    polygon_dual,
    poncelet_polygon,
    projectively_equivalent,
    renormalize_symmetric_octagon,
)

__version__ = "0.1.0"
