"""Finite tournaments: intervals, hypomorphy, diamonds and reconstruction checks."""

from .core import (CanonicalCode, ShapeTag, Tournament, almost_transitive, are_isomorphic,
                   canonical_form, canonical_labeling, classify_shape, dilate, dual,
                   find_isomorphism, from_arcs, from_hex, is_self_dual, lex_sum,
                   make_tournament, parse_tk, format_tk, restrict, to_hex, transitive)
from .errors import (BoundError, IndecomposabilityError, IntervalError, PreconditionError,
                     SizeMismatchError, TheoremViolation, TournamentError, VertexError)

__all__ = [
    "BoundError", "CanonicalCode", "IndecomposabilityError", "IntervalError",
    "PreconditionError", "ShapeTag", "SizeMismatchError", "TheoremViolation", "Tournament",
    "TournamentError", "VertexError", "almost_transitive", "are_isomorphic", "canonical_form",
    "canonical_labeling", "classify_shape", "dilate", "dual", "find_isomorphism", "format_tk",
    "from_arcs", "from_hex", "is_self_dual", "lex_sum", "make_tournament", "parse_tk",
    "restrict", "to_hex", "transitive",
]
