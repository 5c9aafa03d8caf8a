"""Higher-order tangency counting for plane algebraic curves, in exact arithmetic."""
from .algebra import GF, QQ, Field, MultiPoly, UniPoly, parse_poly
from .count import (
    SAME_TO_CUTOFF,
    Arrangement,
    CountReport,
    bound_scan,
    count_tangencies,
    intersection_points,
    tangency_order_at,
)
from .curves import (
    PlaneCurve,
    PlanePoint,
    apply_shear,
    graph_of,
    has_vertical_tangent_at,
    is_smooth_at,
    new_curve,
    points_on_curve,
    singular_points,
)
from .extremal import (
    SharpFamilySpec,
    build_sharp_family,
    jet_realization_check,
    random_graph_arrangement,
    random_subsample,
    sharpness_report,
)
from .fit import cascade, contains_lift, dz_top, min_degree_vanishing
from .lift import (
    Jet,
    build_lift_system,
    jet_at,
    jet_by_power_series,
    lift_degree_bound,
    sample_lift_points,
    total_derivative,
)

__version__ = "0.1.0"
