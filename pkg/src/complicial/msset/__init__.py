"""Finite truncated simplicial sets with marking."""

from .constructions import (
    BOTTOM,
    TOP,
    join,
    point,
    product,
    product_projections,
    pushout,
    suspend,
    suspend_map,
    vertex_map,
    wedge_ss,
)
from .core import (
    MarkedSimplicialSet,
    Realization,
    SimplexRef,
    SimplicialMap,
    check_word,
    compose_maps,
    empty_like,
    identity_map,
    realize,
    surjection_to_word,
    truncate,
    validate,
    validate_map,
    word_to_surjection,
)
from .search import all_maps, find_isomorphism, has_extension
from .shapes import GeneratorShape, generator_inclusion, horn_vertex_sets, make_generator, simplex_vertex_sets

__all__ = [
    "BOTTOM",
    "TOP",
    "GeneratorShape",
    "MarkedSimplicialSet",
    "Realization",
    "SimplexRef",
    "SimplicialMap",
    "all_maps",
    "check_word",
    "compose_maps",
    "empty_like",
    "find_isomorphism",
    "generator_inclusion",
    "has_extension",
    "horn_vertex_sets",
    "identity_map",
    "join",
    "make_generator",
    "point",
    "product",
    "product_projections",
    "pushout",
    "realize",
    "simplex_vertex_sets",
    "surjection_to_word",
    "suspend",
    "suspend_map",
    "truncate",
    "validate",
    "validate_map",
    "vertex_map",
    "wedge_ss",
    "word_to_surjection",
]
