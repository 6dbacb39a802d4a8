"""Mealy automata from NW-deterministic Wang tile sets.

The semigroup generated by the automaton of a tile set is infinite exactly
when the tile set tiles the plane.  This package builds that automaton,
computes with its semigroup, searches tilings, and checks both directions on
concrete tile sets.
"""
__version__ = "0.1.0"

from tilemealy._kernels import BACKEND
from tilemealy.mealy import (Alphabet, EventuallyPeriodicWord, MealyAutomaton, MealyError,
                             ParseError, act, act_prefix, dstate, format_automaton,
                             parse_automaton, validate)
from tilemealy.reduction import (Budgets, ReductionAutomaton, add_sink, build_reduction,
                                 diagonal_word, extract_window, finiteness_bound, semidecide,
                                 verify_claim, verify_lemma1)
from tilemealy.semigroup import (Budget, CanonicalTransformation, canonicalize, enumerate_semigroup,
                                 equal, equal_bruteforce, order_search)
from tilemealy.tiles import (RectTiling, Tile, TileSet, TorusTiling, find_torus_tiling,
                             format_tileset, is_nw_deterministic, least_untileable_n,
                             parse_tileset, tile_rectangle, validate_tiling)

__all__ = [
    "BACKEND", "Alphabet", "EventuallyPeriodicWord", "MealyAutomaton", "MealyError", "ParseError",
    "act", "act_prefix", "dstate", "format_automaton", "parse_automaton", "validate",
    "Budgets", "ReductionAutomaton", "add_sink", "build_reduction", "diagonal_word",
    "extract_window", "finiteness_bound", "semidecide", "verify_claim", "verify_lemma1",
    "Budget", "CanonicalTransformation", "canonicalize", "enumerate_semigroup", "equal",
    "equal_bruteforce", "order_search",
    "RectTiling", "Tile", "TileSet", "TorusTiling", "find_torus_tiling", "format_tileset",
    "is_nw_deterministic", "least_untileable_n", "parse_tileset", "tile_rectangle",
    "validate_tiling",
]
