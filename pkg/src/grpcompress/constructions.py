"""The two published compression functions, rebuilt as library objects.

* a size-6 function over S5 (the original approximate-then-adjust adjuster)
* a size-4 function over A5 given by four conjugators u1..u4
"""
from __future__ import annotations

from dataclasses import dataclass

from .group import FiniteGroup, alternating, symmetric
from .groupfn import ConjugateForm, GroupFunction, from_conjugate_form, parse_function
from .perm import parse_cycles

__all__ = [
    "SIGMA",
    "S5_ADJUSTER",
    "A5_TAUS",
    "A5_CONJUGATORS",
    "A5_PRINTED",
    "KnownFunction",
    "s5_adjuster",
    "a5_adjuster",
    "a5_printed_function",
    "a5_constant_discrepancies",
]

SIGMA = "(1 2 3)"

S5_ADJUSTER = ("(1 5)(2 3 4) · x · (2 3 4) · x · (3 4) · x^2 · (2 3)(4 5) · x · "
               "(2 3 4) · x · (3 4) · x^2 · (1 4 2 5)")

A5_TAUS = ("(2 4 5)", "(1 5 4)", "(3 4 5)", "(2 5 4)")
A5_CONJUGATORS = ("(1 2 4 3 5)", "(1 5 2 4 3)", "(1 3 5 2 4)", "(1 2 5 3 4)")
# Simplified constants as printed; "(15)(23)" is written without inner spaces there.
A5_PRINTED = ("(1 2 4 3 5)", "(1 3 5)", "(1 4 3)", "(1 5)(2 3)", "(1 4 3 5 2)")


@dataclass(frozen=True, eq=False)
class KnownFunction:
    group: FiniteGroup
    sigma: int
    function: GroupFunction
    form: ConjugateForm | None = None


def _elem(G: FiniteGroup, cycles: str) -> int:
    return G.index_of_permutation(parse_cycles(cycles, 5))


def s5_adjuster(G: FiniteGroup | None = None) -> KnownFunction:
    G = G or symmetric(5)
    return KnownFunction(G, _elem(G, SIGMA), parse_function(S5_ADJUSTER, G))


def a5_adjuster(G: FiniteGroup | None = None) -> KnownFunction:
    """The size-4 A5 function built from its conjugators (u x u^-1 products)."""
    G = G or alternating(5)
    sigma = _elem(G, SIGMA)
    cf = ConjugateForm(G, sigma, tuple(_elem(G, t) for t in A5_TAUS), (1, 1, 1, 1),
                       tuple(_elem(G, u) for u in A5_CONJUGATORS))
    return KnownFunction(G, sigma, from_conjugate_form(cf), cf)


def a5_printed_function(G: FiniteGroup | None = None) -> GroupFunction:
    G = G or alternating(5)
    consts = tuple(_elem(G, c) for c in A5_PRINTED)
    return GroupFunction(G, consts, (1, 1, 1, 1))


def a5_constant_discrepancies(G: FiniteGroup | None = None) -> list[tuple[int, str, str]]:
    """(position, recomputed, printed) for each simplified constant that differs."""
    kf = a5_adjuster(G)
    printed = a5_printed_function(kf.group)
    G = kf.group
    return [(i, G.label(a), G.label(b))
            for i, (a, b) in enumerate(zip(kf.function.constants, printed.constants)) if a != b]
