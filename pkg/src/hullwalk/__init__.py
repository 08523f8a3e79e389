"""Exact and simulated face statistics for convex hulls of random walks and bridges."""

from .chambers import (
    ArrangementSpec,
    char_poly_product,
    char_poly_whitney,
    chamber_intersect_count,
    enumerate_group,
    kernel_intersection_basis,
    predicted_intersect_count,
    reflection_hyperplanes,
    zaslavsky_regions,
)
from .closed_forms import (
    absorption_prob,
    arcsine,
    asymptotic_expected_faces,
    expected_faces_bridge,
    expected_faces_walk,
    expected_faces_walk_bigsum,
    face_prob_bridge,
    face_prob_walk,
    non_absorption_prob,
    shift_avg_face_prob,
    total_expected_faces,
    vertex_prob_bridge,
    vertex_prob_walk,
)
from .combinatorics import IntPolynomial, stirling_first, stirling_second
from .geometry import (
    DegenerateError,
    GeometryError,
    IllConditionedError,
    PointSet,
    count_faces,
    is_face,
    origin_in_hull,
)
from .montecarlo import (
    Estimate,
    compare,
    estimate_absorption,
    estimate_expected_faces,
    estimate_face_prob,
    estimate_shift_average,
)
from .sampling import BridgeSpec, JointSpec, WalkSpec, sample_bridge, sample_walk

__version__ = "0.1.0"
