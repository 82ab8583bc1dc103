"""Markov polynomials from weighted snake graphs, their Newton polygons, and
a constructive check that every lattice point of the polygon is attained."""

from .constructor import construct, match_for_point
from .matchings import enumerate_matchings, is_perfect, matching_monomial, numerator_dp
from .newton import classify_diagonal, contains, lattice_points, leftmost_by_formula
from .oracle import markov_number, mutation_polynomial, verify_markov_identity
from .polyarith import TriPoly
from .saturation import saturation_report, sweep
from .snake import build_snake
from .words import RationalIndex, christoffel_word, modify_word, run_profile

__all__ = [
    "RationalIndex",
    "TriPoly",
    "build_snake",
    "christoffel_word",
    "classify_diagonal",
    "construct",
    "contains",
    "enumerate_matchings",
    "is_perfect",
    "lattice_points",
    "leftmost_by_formula",
    "markov_number",
    "match_for_point",
    "matching_monomial",
    "modify_word",
    "mutation_polynomial",
    "numerator_dp",
    "run_profile",
    "saturation_report",
    "sweep",
    "verify_markov_identity",
]
