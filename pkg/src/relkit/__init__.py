"""Permutation groups as invariance groups of unordered relations."""

from .budget import Budget, BudgetExceeded
from .catalog import CatalogEntry, CatalogError, bundled_catalog, parse_catalog
from .certify import (
    RgVerdict,
    conjugate_in_sym,
    conjugate_into,
    decide_relation_group,
    orbit_closure,
)
from .group import PermGroup, build_group, extend_fixed, symmetric_group
from .perm import Permutation, parse_cycles, print_cycles
from .relation import Relation, invariance_group, is_defined_by, is_defined_in, orbit_relation
from .report import ClaimReport, Verifier, verify_catalog
from .setorbits import all_set_orbits, is_regular_set, regular_set_sizes

__version__ = "0.1.0"

__all__ = [
    "Budget", "BudgetExceeded", "CatalogEntry", "CatalogError", "ClaimReport", "Permutation",
    "PermGroup", "Relation", "RgVerdict", "Verifier", "all_set_orbits", "build_group",
    "bundled_catalog", "conjugate_in_sym", "conjugate_into", "decide_relation_group",
    "extend_fixed", "invariance_group", "is_defined_by", "is_defined_in", "is_regular_set",
    "orbit_closure", "orbit_relation", "parse_catalog", "parse_cycles", "print_cycles",
    "regular_set_sizes", "symmetric_group", "verify_catalog",
]
