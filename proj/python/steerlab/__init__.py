"""Semi-device-independent steering via steering-equivalent observables."""

from ._steerlab import (
    INF,
    DEFAULT_TOL,
    SteerlabError,
    BipartiteState,
    MeasurementAssemblage,
    StateAssemblage,
    analyze,
    apply_inefficiency,
    assemblage_distance,
    guessing_bound,
    isotropic,
    lhs_assemblage,
    lhs_from_commuting_seo,
    maximally_entangled,
    measurement_upper_bound,
    mub_pair,
    pairwise_commutativity,
    pure_entangled,
    sdi_steerability,
    seo,
    steer,
    sweep,
    verify_suite,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
