"""Suitable sets of permutations: verification, transformations, constructions and exhaustive search."""

from .model import (
    Params,
    PatternTable,
    PermTable,
    Role,
    VerificationReport,
    Violation,
    is_core,
    is_suitable_array,
    pre_set,
    prefix_before,
    verify,
    verify_array,
    verify_core,
    verify_core_by_subsets,
)

__version__ = "0.1.0"
