"""Schwarz-type and boundary Schwarz-type bounds for harmonic self-maps of
the unit disk that vanish to order p, with the series machinery needed to
check them numerically."""

from .bounds import (
    BoundQuery,
    analytic_schwarz_pick_bound,
    boundary_lower_bound,
    classical_harmonic_bound,
    coefficient_margin,
    general_boundary_lower_bound,
    improved_harmonic_bound,
    limit_slope,
    limit_slope_numeric,
    moebius_ratio,
)
from .errors import HarmonicSchwarzError
from .harmonic import (
    GridSpec,
    HarmonicMap,
    directional_extremes,
    is_sense_preserving,
    jacobian,
    wirtinger,
    zero_order_at,
)
from .series import ComplexSeries, compose, enumerate_partitions, faa_di_bruno, recenter
from .transforms import MobiusAutomorphism, precompose_mobius, projection, strip_to_disk

__all__ = [
    "BoundQuery",
    "ComplexSeries",
    "GridSpec",
    "HarmonicMap",
    "HarmonicSchwarzError",
    "MobiusAutomorphism",
    "analytic_schwarz_pick_bound",
    "boundary_lower_bound",
    "classical_harmonic_bound",
    "coefficient_margin",
    "compose",
    "directional_extremes",
    "enumerate_partitions",
    "faa_di_bruno",
    "general_boundary_lower_bound",
    "improved_harmonic_bound",
    "is_sense_preserving",
    "jacobian",
    "limit_slope",
    "limit_slope_numeric",
    "moebius_ratio",
    "precompose_mobius",
    "projection",
    "recenter",
    "strip_to_disk",
    "wirtinger",
    "zero_order_at",
]
