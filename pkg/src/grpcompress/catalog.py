"""Groups of order <= 60 divisible by 3, rebuilt from structure expressions.

Expressions use the usual small-groups notation: ``x`` for direct products,
``:`` for split extensions with a non-trivial action, atoms such as ``C12``,
``D8`` (dihedral of order 8), ``Q8``, ``QD16``, ``SL(2,3)``. Every
non-trivial action is realized and the results are merged up to
isomorphism, so an ambiguous expression like ``C24 : C2`` yields all the
groups it can denote.
"""
from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Union

from . import group as grp
from .group import FiniteGroup, GroupError

__all__ = [
    "ShapeError",
    "Atom",
    "Direct",
    "Semi",
    "ShapeExpr",
    "parse_shape",
    "format_shape",
    "shape_order",
    "realize_shape",
    "CatalogEntry",
    "IsoClass",
    "realize",
    "build_catalog",
    "dedup_isomorphism",
    "count_check",
    "catalog_classes",
    "KNOWN_NONABELIAN_COUNTS",
    "dump_manifest",
    "load_manifest",
    "abelian_expressions",
]

# Non-abelian group counts for orders divisible by 3 (OEIS A060689).
KNOWN_NONABELIAN_COUNTS = {
    6: 1, 12: 3, 18: 3, 21: 1, 24: 12, 27: 2, 30: 3,
    36: 10, 39: 1, 42: 5, 48: 47, 54: 12, 57: 1, 60: 11,
}

SHAPE_ORDER_LIMIT = 2000


class ShapeError(ValueError):
    pass


@dataclass(frozen=True)
class Atom:
    name: str          # C, S, A, D, Q8, Q16, QD16, SL(2,3), GL(2,3), 2O
    param: int | None = None

    @property
    def order(self) -> int:
        if self.name == "C":
            return self.param
        if self.name in ("S", "A"):
            f = math.factorial(self.param)
            return f if self.name == "S" else max(1, f // 2)
        if self.name == "D":
            return self.param
        return {"Q8": 8, "Q16": 16, "QD16": 16, "SL(2,3)": 24, "GL(2,3)": 48, "2O": 48}[self.name]


@dataclass(frozen=True)
class Direct:
    left: "ShapeExpr"
    right: "ShapeExpr"


@dataclass(frozen=True)
class Semi:
    left: "ShapeExpr"
    right: "ShapeExpr"


ShapeExpr = Union[Atom, Direct, Semi]

_NONSPLIT_FORMS = {"C2.S4", "SL(2,3).C2", "C2.S4=SL(2,3).C2"}
_TOKEN_RE = re.compile(r"\s*(SL\(2,3\)|GL\(2,3\)|QD16|Q16|Q8|2O|[CSAD]\d+|[()x:])")


def _tokenize(text: str) -> list[str]:
    pos, out = 0, []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ShapeError(f"unexpected input at {text[pos:]!r}")
        out.append(m.group(1))
        pos = m.end()
    return out


def _atom(tok: str) -> Atom:
    if tok[0] in "CSAD" and tok[1:].isdigit():
        k = int(tok[1:])
        if tok[0] == "C" and k < 1:
            raise ShapeError("cyclic order must be positive")
        if tok[0] in "SA" and not 1 <= k <= 6:
            raise ShapeError(f"{tok}: degree must be in 1..6")
        if tok[0] == "D" and (k < 2 or k % 2):
            raise ShapeError(f"{tok}: dihedral order must be even")
        return Atom(tok[0], k)
    return Atom(tok)


def parse_shape(text: str) -> ShapeExpr:
    """Parse e.g. ``"(C3 x D8) : C2"``.

    Operators of one kind chain left to right; mixing ``x`` and ``:`` at the
    same level needs parentheses. Surrounding brackets are ignored. The
    non-split forms ``C2 . S4`` and ``SL(2,3) . C2`` denote the binary
    octahedral group.
    """
    s = text.strip()
    if s.startswith("[") and s.endswith("]"):
        s = s[1:-1].strip()
    if "." in s:
        if re.sub(r"\s+", "", s) in _NONSPLIT_FORMS:
            return Atom("2O")
        raise ShapeError(f"unsupported non-split expression {text!r}")
    toks = _tokenize(s)
    pos = 0

    def term() -> ShapeExpr:
        nonlocal pos
        if pos >= len(toks):
            raise ShapeError("unexpected end of expression")
        tok = toks[pos]
        pos += 1
        if tok == "(":
            e = expr()
            if pos >= len(toks) or toks[pos] != ")":
                raise ShapeError("unbalanced parentheses")
            pos += 1
            return e
        if tok in ("x", ":", ")"):
            raise ShapeError(f"unexpected {tok!r}")
        return _atom(tok)

    def expr() -> ShapeExpr:
        nonlocal pos
        left = term()
        op = None
        while pos < len(toks) and toks[pos] in ("x", ":"):
            if op is not None and toks[pos] != op:
                raise ShapeError("mixing 'x' and ':' requires parentheses")
            op = toks[pos]
            pos += 1
            right = term()
            left = Direct(left, right) if op == "x" else Semi(left, right)
        return left

    e = expr()
    if pos != len(toks):
        raise ShapeError(f"trailing input in {text!r}")
    if shape_order(e) > SHAPE_ORDER_LIMIT:
        raise ShapeError(f"expression order {shape_order(e)} exceeds {SHAPE_ORDER_LIMIT}")
    return e


def shape_order(e: ShapeExpr) -> int:
    if isinstance(e, Atom):
        return e.order
    return shape_order(e.left) * shape_order(e.right)


def format_shape(e: ShapeExpr) -> str:
    if isinstance(e, Atom):
        return e.name if e.param is None else f"{e.name}{e.param}"
    op = " x " if isinstance(e, Direct) else " : "

    def side(sub, same_ok):
        txt = format_shape(sub)
        if isinstance(sub, Atom) or (same_ok and type(sub) is type(e)):
            return txt
        return f"({txt})"
    return side(e.left, True) + op + side(e.right, False)


def _atom_group(a: Atom) -> FiniteGroup:
    if a.name == "C":
        return grp.cyclic(a.param)
    if a.name == "S":
        return grp.symmetric(a.param)
    if a.name == "A":
        return grp.alternating(a.param)
    if a.name == "D":
        return grp.dihedral(a.param)
    return {
        "Q8": lambda: grp.dicyclic(2),
        "Q16": lambda: grp.dicyclic(4),
        "QD16": grp.semidihedral_16,
        "SL(2,3)": grp.sl2_f3,
        "GL(2,3)": grp.gl2_f3,
        "2O": grp.binary_octahedral,
    }[a.name]()


def realize_shape(e: ShapeExpr) -> list[FiniteGroup]:
    """Every group the expression can denote, one per action choice.

    Sub-expressions are reduced to one group per isomorphism type before they
    are combined, which leaves the set of resulting isomorphism types intact.
    """
    if isinstance(e, Atom):
        out = [_atom_group(e)]
    else:
        lefts = [c.rep for c in dedup_isomorphism(realize_shape(e.left))]
        rights = [c.rep for c in dedup_isomorphism(realize_shape(e.right))]
        out = []
        for H, K in itertools.product(lefts, rights):
            if isinstance(e, Direct):
                out.append(grp.direct_product(H, K))
            else:
                out.extend(grp.semidirect_products(H, K, include_trivial=False))
    text = format_shape(e)
    for g in out:
        g.provenance = text
    return out


@dataclass
class CatalogEntry:
    order: int
    text: str
    source: str
    note: str = ""
    realized: list[FiniteGroup] | None = field(default=None, repr=False)

    @property
    def expression(self) -> ShapeExpr:
        return parse_shape(self.text)


@dataclass
class IsoClass:
    rep: FiniteGroup
    members: list[FiniteGroup] = field(default_factory=list, repr=False)
    expressions: list[str] = field(default_factory=list)
    sources: list[str] = field(default_factory=list)

    @property
    def order(self) -> int:
        return self.rep.order

    @property
    def abelian(self) -> bool:
        return grp.is_abelian(self.rep)

    @property
    def provenance(self) -> str:
        return self.expressions[0] if self.expressions else self.rep.provenance


def realize(entry: CatalogEntry) -> list[FiniteGroup]:
    if entry.realized is None:
        groups = realize_shape(entry.expression)
        bad = [g for g in groups if g.order != entry.order]
        if bad:
            raise GroupError(f"{entry.text} realized a group of order {bad[0].order}, expected {entry.order}")
        entry.realized = groups
    return entry.realized


def dedup_isomorphism(groups: Iterable[FiniteGroup], classes: list[IsoClass] | None = None,
                      expression: str | None = None, source: str | None = None) -> list[IsoClass]:
    """Merge groups into isomorphism classes, in order of first appearance.

    Pass an existing ``classes`` list to extend it in place.
    """
    classes = [] if classes is None else classes
    buckets: dict[tuple, list[IsoClass]] = {}
    for c in classes:
        buckets.setdefault(grp.group_invariants(c.rep), []).append(c)
    for g in groups:
        key = grp.group_invariants(g)
        home = None
        for c in buckets.get(key, ()):
            if c.rep is g or grp.is_isomorphic(g, c.rep) is not None:
                home = c
                break
        if home is None:
            home = IsoClass(g)
            classes.append(home)
            buckets.setdefault(key, []).append(home)
        home.members.append(g)
        if expression is not None and expression not in home.expressions:
            home.expressions.append(expression)
        if source is not None and source not in home.sources:
            home.sources.append(source)
    return classes


# -- the catalog itself ---------------------------------------------------

_CASE_LISTS: dict[int, list[str]] = {
    6: ["S3"],
    12: ["D12", "A4", "C3 : C4"],
    18: ["C3 x S3", "D18", "(C3 x C3) : C2"],
    21: ["C7 : C3"],
    24: ["C4 x S3", "C2 x (C3 : C4)", "C2 x A4", "C2 x C2 x S3", "C3 x D8", "C3 x Q8",
         "D24", "C3 : C8", "C3 : Q8", "(C2 x C6) : C2", "S4", "SL(2,3)"],
    27: ["C9 : C3", "(C3 x C3) : C3"],
    30: ["C3 x D10", "C5 x S3", "D30"],
    36: ["C2 x ((C3 x C3) : C2)", "C3 x A4", "C3 x (C3 : C4)", "C6 x S3", "S3 x S3",
         "D36", "C9 : C4", "(C2 x C2) : C9", "(C3 x C3) : C4"],
    39: ["C13 : C3"],
    42: ["C2 x (C7 : C3)", "C3 x D14", "C7 x S3", "D42", "(C7 : C3) : C2"],
    54: ["C2 x ((C3 x C3) : C3)", "C2 x (C9 : C3)", "C3 x D18", "C3 x C3 x S3",
         "C3 x ((C3 x C3) : C2)", "C9 x S3", "D54", "(C9 x C3) : C2", "(C3 x C3 x C3) : C2",
         "((C3 x C3) : C3) : C2", "(C9 : C3) : C2"],
    57: ["C19 : C3"],
    60: ["A5", "C3 x (C5 : C4)", "C5 x (C3 : C4)", "C5 x A4", "C6 x D10", "S3 x D10",
         "S3 x C10", "C15 : C4", "D60"],
}

_CASE_NOTES = {
    (30, "C5 x S3"): "printed in the source case list as C5 x S6, which has order 3600; C5 x S3 is the order-30 group meant",
}

# SmallGroup(48, k) structure descriptions, k = 1..52.
_ORDER_48 = [
    "C3 : C16", "C48", "(C4 x C4) : C3", "C8 x S3", "C24 : C2", "C24 : C2", "D48",
    "C3 : Q16", "C2 x (C3 : C8)", "(C3 : C8) : C2", "C4 x (C3 : C4)", "(C3 : C4) : C4",
    "C12 : C4", "(C12 x C2) : C2", "(C3 x D8) : C2", "(C3 : C8) : C2", "(C3 x Q8) : C2",
    "C3 : Q16", "(C2 x (C3 : C4)) : C2", "C12 x C4", "C3 x ((C4 x C2) : C2)",
    "C3 x (C4 : C4)", "C24 x C2", "C3 x (C8 : C2)", "C3 x D16", "C3 x QD16",
    "C3 x Q16", "C2 . S4 = SL(2,3) . C2", "GL(2,3)", "A4 : C4", "C4 x A4", "C2 x SL(2,3)",
    "SL(2,3) : C2", "C2 x (C3 : Q8)", "C2 x C4 x S3", "C2 x D24", "(C12 x C2) : C2",
    "D8 x S3", "(C2 x (C3 : C4)) : C2", "Q8 x S3", "(C4 x S3) : C2", "C2 x C2 x (C3 : C4)",
    "C2 x ((C6 x C2) : C2)", "C12 x C2 x C2", "C6 x D8", "C6 x Q8", "C3 x ((C4 x C2) : C2)",
    "C2 x S4", "C2 x C2 x A4", "(C2 x C2 x C2 x C2) : C3", "C2 x C2 x C2 x S3",
    "C6 x C2 x C2 x C2",
]

ORDER_48_DECOMPOSABLE = frozenset(
    [4, 9, 11, 21, 22, 24, 25, 26, 27, 31, 32, 34, 35, 36, 38, 40, 42, 43, 45, 46, 47, 48, 49, 51])
ORDER_48_ABELIAN = frozenset([2, 20, 23, 44, 52])


def _partitions(k: int, largest: int | None = None):
    largest = k if largest is None else largest
    if k == 0:
        yield []
        return
    for first in range(min(k, largest), 0, -1):
        for rest in _partitions(k - first, first):
            yield [first] + rest


def _factorize(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def abelian_expressions(n: int) -> list[str]:
    """One invariant-factor expression per abelian group of order n."""
    fac = sorted(_factorize(n).items())
    out = []
    for choice in itertools.product(*[list(_partitions(k)) for _, k in fac]):
        width = max((len(c) for c in choice), default=1)
        factors = [1] * width
        for (p, _), part in zip(fac, choice):
            for i, e in enumerate(part):
                factors[i] *= p ** e
        out.append(" x ".join(f"C{f}" for f in factors))
    return out


def build_catalog(max_order: int = 60) -> list[CatalogEntry]:
    """Entries for every order n <= max_order with 3 | n, expressions unrealized."""
    entries: list[CatalogEntry] = []
    for n in range(3, max_order + 1, 3):
        if n == 48:
            for k, text in enumerate(_ORDER_48, start=1):
                entries.append(CatalogEntry(48, text, f"SmallGroup(48,{k})"))
        else:
            for text in _CASE_LISTS.get(n, []):
                entries.append(CatalogEntry(n, text, f"order-{n} case list", _CASE_NOTES.get((n, text), "")))
            for text in abelian_expressions(n):
                entries.append(CatalogEntry(n, text, "abelian"))
    return entries


def catalog_classes(entries: Iterable[CatalogEntry], order: int | None = None) -> dict[int, list[IsoClass]]:
    """Realize entries and merge them into isomorphism classes per order."""
    out: dict[int, list[IsoClass]] = {}
    for e in entries:
        if order is not None and e.order != order:
            continue
        classes = out.setdefault(e.order, [])
        dedup_isomorphism(realize(e), classes, expression=e.text, source=e.source)
    return out


def count_check(order: int, classes: list[IsoClass]) -> tuple[int, int | None, bool]:
    """(computed non-abelian class count, known count, match)."""
    computed = sum(1 for c in classes if not c.abelian)
    expected = KNOWN_NONABELIAN_COUNTS.get(order, 0)
    return computed, expected, computed == expected


def dump_manifest(entries: Iterable[CatalogEntry], path: str | Path) -> None:
    """Tab-separated: order, expression, source[, note]."""
    lines = ["# order\texpression\tsource\tnote"]
    for e in entries:
        lines.append("\t".join([str(e.order), e.text, e.source, e.note]).rstrip("\t"))
    Path(path).write_text("\n".join(lines) + "\n")


def load_manifest(path: str | Path) -> list[CatalogEntry]:
    entries = []
    for lineno, line in enumerate(Path(path).read_text().splitlines(), start=1):
        if not line.strip() or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) < 3:
            raise ShapeError(f"line {lineno}: expected order, expression, source")
        order, text, source = int(parts[0]), parts[1], parts[2]
        note = parts[3] if len(parts) > 3 else ""
        expr = parse_shape(text)
        if shape_order(expr) != order:
            raise ShapeError(f"line {lineno}: {text} has order {shape_order(expr)}, not {order}")
        entries.append(CatalogEntry(order, text, source, note))
    return entries
