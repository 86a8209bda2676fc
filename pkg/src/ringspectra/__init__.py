"""Ring-digraph Laplacian spectra, locus curves, and consensus analysis."""

from .charpoly import char_poly, chebyshev_Z, locus_points, macro_polynomial, segment_lengths
from .consensus import (
    EPS,
    ZERO_TOL,
    FrequencyVariable,
    OmegaVerdict,
    absolute_velocity,
    criterion_curve,
    criterion_points,
    criterion_spectrum,
    critical_gain,
    first_order,
    in_omega,
    max_consensus_N,
    nonminimum_phase,
    omega_boundary,
    pursuit_spectrum,
    reflect_scale,
    relative_velocity,
)
from .curves import curve_residual, derive_curve, locus_radius_bound, real_imag_parts, trace_curve
from .dynamics import (
    AgentModel,
    Trajectory,
    build_closed_loop,
    integrate,
    random_initial_state,
    verdict,
    worst_mode_initial_state,
)
from .errors import (
    BracketError,
    DegenerateEllipseError,
    DomainError,
    InvalidNecklaceError,
    InvalidSizeError,
    NoSpanningTreeError,
    NumericFailureError,
    ResourceLimitError,
    RingsError,
)
from .polynomials import BivariatePoly, IntPoly, X
from .report import SpectrumReport, spectrum_report
from .svg import emit_svg
from .topology import (
    RingTopology,
    build_ring,
    canonical_necklace,
    classify,
    count_simple_rings,
    enumerate_simple_rings,
    has_spanning_converging_tree,
    minimal_period,
)
from .weighted import (
    WeightedRing,
    drop_boundary,
    ellipse_drop_clearance,
    ellipse_point,
    ellipse_residual,
    in_drop_region,
    intersection_x,
    tangency_height,
    tangency_x,
    weighted_spectrum,
)

__version__ = "0.1.0"
