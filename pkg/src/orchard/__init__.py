"""Orchard crossing numbers of colored rectilinear drawings with exact integer arithmetic."""

__version__ = "0.1.0"

from .analysis import (Decomposition, IdentityReport, LineClass, LineRecord, ProfileTables, TypeTables,
                       abc_decomposition, c_coefficient_bw, c_coefficient_same, check_identities,
                       classify_lines, formula_ocn_knn, observation_violations, type_tables,
                       vertex_profiles)
from .drawing import (Color, ColoredDrawing, GraphSpec, classify_convex_quadruple, crossing_number,
                      crossing_number_by_quadruples, quadruple_contribution)
from .generators import GridSpec, convex_alternating, enumerate_colored_configs, random_generic
from .geometry import MAX_COORD, Configuration, Point, orientation, separates, separator_count, validate_generic
from .search import SearchResult, SearchTask, anneal_step, search

__all__ = [
    "MAX_COORD", "Color", "ColoredDrawing", "Configuration", "Decomposition", "GraphSpec", "GridSpec",
    "IdentityReport", "LineClass", "LineRecord", "Point", "ProfileTables", "SearchResult", "SearchTask",
    "TypeTables", "abc_decomposition", "anneal_step", "c_coefficient_bw", "c_coefficient_same",
    "check_identities", "classify_convex_quadruple", "classify_lines", "convex_alternating",
    "crossing_number", "crossing_number_by_quadruples", "enumerate_colored_configs", "formula_ocn_knn",
    "observation_violations", "orientation", "quadruple_contribution", "random_generic", "search",
    "separates", "separator_count", "type_tables", "validate_generic", "vertex_profiles",
]
