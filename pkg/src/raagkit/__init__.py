"""Computational toolkit for right-angled Artin groups and their commensurators."""

from raagkit.errors import CompleteGraphError, GraphError, GraphParseError, NotInKernelError, RaagError
from raagkit.graph import (
    DefiningGraph,
    are_isomorphic,
    clique_number,
    cone_vertices,
    is_complete,
    parse_graph,
    splitting_vertex,
    star,
)
from raagkit.words import Letter, abelianize, normal_form, parse_word, words_equal

__version__ = "0.1.0"

__all__ = [
    "CompleteGraphError",
    "DefiningGraph",
    "GraphError",
    "GraphParseError",
    "Letter",
    "NotInKernelError",
    "RaagError",
    "abelianize",
    "are_isomorphic",
    "clique_number",
    "cone_vertices",
    "is_complete",
    "normal_form",
    "parse_graph",
    "parse_word",
    "splitting_vertex",
    "star",
    "words_equal",
]
