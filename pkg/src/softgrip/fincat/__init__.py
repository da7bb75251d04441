"""Executable finite category theory."""
from .core import (
    FinCat, FunctorMap, NatTrans, Violation, check_category, check_functor, check_natural,
    compose_functors, discrete_category, full_subcategory, identity_functor,
    indiscrete_category, is_isomorphism, is_natural_isomorphism, preorder_category,
    terminal_category,
)
from .io import dump_category, load_category, parse_category
from .search import (
    MAX_ARROWS, MAX_OBJECTS, EquivalenceWitness, Skeleton, brute_force_equivalent,
    categories_equivalent, categories_isomorphic, functors, skeleton,
)

__all__ = [
    "FinCat", "FunctorMap", "NatTrans", "Violation", "check_category", "check_functor",
    "check_natural", "compose_functors", "discrete_category", "full_subcategory",
    "identity_functor", "indiscrete_category", "is_isomorphism", "is_natural_isomorphism",
    "preorder_category", "terminal_category", "dump_category", "load_category",
    "parse_category", "MAX_ARROWS", "MAX_OBJECTS", "EquivalenceWitness", "Skeleton",
    "brute_force_equivalent", "categories_equivalent", "categories_isomorphic", "functors",
    "skeleton",
]
