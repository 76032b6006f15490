"""Ordered constellations and the explicit model constructions inside them."""

from .core import (
    CheckResult,
    biclique_model,
    Constellation,
    Interval,
    Route,
    check_interrupted,
    check_interrupted_bruteforce,
    check_zigzagged,
    check_zigzagged_bruteforce,
    constellation_from_doc,
    constellation_to_doc,
    death_star_constellation,
    death_star_grid_constellation,
    ends_clear,
    enumerate_routes,
    extend_model,
    find_interrupting_order,
    find_zigzag_order,
    interval_of,
    is_d_ample,
    is_d_ample_bruteforce,
    normalize_ample,
    pd_grid_constellation,
    pd_grid_general_constellation,
    reorder,
    validate,
    weakly_ample,
)
from .embed import embed_interrupted, embed_zigzagged

__all__ = [
    "CheckResult", "Constellation", "biclique_model", "Interval", "Route", "check_interrupted",
    "check_interrupted_bruteforce", "check_zigzagged", "check_zigzagged_bruteforce",
    "constellation_from_doc", "constellation_to_doc", "death_star_constellation",
    "death_star_grid_constellation", "embed_interrupted", "embed_zigzagged", "ends_clear",
    "enumerate_routes", "extend_model", "find_interrupting_order", "find_zigzag_order",
    "interval_of", "is_d_ample", "is_d_ample_bruteforce", "normalize_ample",
    "pd_grid_constellation", "pd_grid_general_constellation", "reorder", "validate",
    "weakly_ample",
]
