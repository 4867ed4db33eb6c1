"""Conformal capacity toolkit for planar capacitors.

Computes the extremal potential and conformal capacity of a two-continuum
capacitor on a grid, extracts equipotential level curves, measures their
empirical bounded-turning constant, and evaluates the closed-form
distortion, modulus, and hyperbolic-collar formulas that go with them.
"""

from .errors import (
    CapqError,
    DegenerateCurve,
    DegenerateJacobian,
    DegenerateShape,
    DisconnectedDomain,
    DomainViolation,
    IoError,
    LevelNotFound,
    MissingLevel,
    NonConvergence,
    OutOfAnnulus,
    OutOfBounds,
    OverlappingContinua,
    QuadratureFailure,
    ResolutionTooCoarse,
    UsageError,
    ValidityCondition,
)
from .geometry import (
    CapacitorSpec,
    GridMask,
    Shape,
    annulus_capacitor,
    rasterize,
    twisted_capacitor,
    two_disc_capacitor,
    validate_spec,
)
from .solver import PotentialField, annulus_extremal, capacity, solve_potential
from .levels import LevelCurve, extract_level, validate_jordan
from .turning import TurningReport, curve_diameter, turning_constant
from .bounds import (
    BETA0,
    BoundReport,
    beta0_consistency,
    evaluate_bound,
    k_annulus_circle_map,
    k_between_levels,
    k_geodesic,
    k_geodesic_doubly_connected,
    k_geodesic_simplified,
    k_geodesic_small,
    k_homotopy,
    k_level,
    k_zero_level,
)
from .special import (
    EllipticModulus,
    elliptic_K,
    elliptic_K_prime,
    groetzsch_mu,
    jacobi_sn,
    solve_modulus_equation,
    teichmuller_ring_modulus,
)
from .collar import (
    CollarResult,
    collar_from_length,
    collar_radius,
    collar_width,
    density,
    geodesic_length,
    length_to_r,
    radial_distance,
)
from .mapping import (
    AnnulusSelfMap,
    MapChain,
    build_chain,
    evaluate_chain,
    pointwise_distortion,
    radial_stretch,
)
from .pipeline import AnalysisReport, compare_levels, run_pipeline

__version__ = "0.1.0"

__all__ = [
    "AnalysisReport",
    "AnnulusSelfMap",
    "BETA0",
    "BoundReport",
    "CapacitorSpec",
    "CapqError",
    "CollarResult",
    "DegenerateCurve",
    "DegenerateJacobian",
    "DegenerateShape",
    "DisconnectedDomain",
    "DomainViolation",
    "EllipticModulus",
    "GridMask",
    "IoError",
    "LevelCurve",
    "LevelNotFound",
    "MapChain",
    "MissingLevel",
    "NonConvergence",
    "OutOfAnnulus",
    "OutOfBounds",
    "OverlappingContinua",
    "PotentialField",
    "QuadratureFailure",
    "ResolutionTooCoarse",
    "Shape",
    "TurningReport",
    "UsageError",
    "ValidityCondition",
    "annulus_capacitor",
    "annulus_extremal",
    "beta0_consistency",
    "build_chain",
    "capacity",
    "collar_from_length",
    "collar_radius",
    "collar_width",
    "compare_levels",
    "curve_diameter",
    "density",
    "elliptic_K",
    "elliptic_K_prime",
    "evaluate_bound",
    "evaluate_chain",
    "extract_level",
    "geodesic_length",
    "groetzsch_mu",
    "jacobi_sn",
    "k_annulus_circle_map",
    "k_between_levels",
    "k_geodesic",
    "k_geodesic_doubly_connected",
    "k_geodesic_simplified",
    "k_geodesic_small",
    "k_homotopy",
    "k_level",
    "k_zero_level",
    "length_to_r",
    "pointwise_distortion",
    "radial_distance",
    "radial_stretch",
    "rasterize",
    "run_pipeline",
    "solve_modulus_equation",
    "solve_potential",
    "teichmuller_ring_modulus",
    "turning_constant",
    "twisted_capacitor",
    "two_disc_capacitor",
    "validate_jordan",
    "validate_spec",
]
