"""Compression group functions: F(1) = 1 and F(s) = F(s^2) = s for s of order 3.

Decides existence and minimal size over any small finite group, rebuilds
the groups of order at most 60 divisible by 3, and evaluates boolean gates
over group-encoded bits.
"""
from .catalog import build_catalog, catalog_classes, parse_shape, realize_shape
from .decide import EXISTS, NO_SOLUTION, brute_force_oracle, decide_for_sigma, decide_group
from .group import (FiniteGroup, GroupError, Morphism, Subgroup, alternating, cyclic, dihedral,
                    direct_product, quotient, symmetric)
from .groupfn import (ConditionError, ConjugateForm, GroupFunction, check_condition_star,
                      from_conjugate_form, parse_function, to_conjugate_form)
from .perm import Permutation, parse_cycles

__version__ = "0.1.0"

__all__ = [
    "EXISTS", "NO_SOLUTION", "ConditionError", "ConjugateForm", "FiniteGroup", "GroupError",
    "GroupFunction", "Morphism", "Permutation", "Subgroup", "alternating", "brute_force_oracle",
    "build_catalog", "catalog_classes", "check_condition_star", "cyclic", "decide_for_sigma",
    "decide_group", "dihedral", "direct_product", "from_conjugate_form", "parse_cycles",
    "parse_function", "parse_shape", "quotient", "realize_shape", "symmetric", "to_conjugate_form",
]
