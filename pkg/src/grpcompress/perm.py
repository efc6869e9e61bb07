"""Permutations of {1..d} with cycle-notation I/O.

Composition follows function composition: ``(p * q)(a) == p(q(a))``, so the
rightmost factor acts first.
"""
from __future__ import annotations

import math
import re
from functools import reduce
from typing import Iterable, Sequence

__all__ = [
    "Permutation",
    "PermutationError",
    "parse_cycles",
    "compose",
    "compose_all",
    "inverse",
    "conjugate",
    "element_order",
    "sign",
    "format_cycles",
]


class PermutationError(ValueError):
    pass


class Permutation:
    """An immutable bijection of {1..degree}.

    ``images`` is 1-based externally: ``images[i - 1]`` is the image of point i.
    Internally the 0-based tuple ``_img`` is kept.
    """

    __slots__ = ("_img",)

    def __init__(self, images: Iterable[int]):
        img = tuple(int(v) - 1 for v in images)
        if not img:
            raise PermutationError("degree must be positive")
        if sorted(img) != list(range(len(img))):
            raise PermutationError(f"not a bijection of 1..{len(img)}: {[v + 1 for v in img]}")
        self._img = img

    @classmethod
    def _from0(cls, img0: Sequence[int]) -> Permutation:
        p = cls.__new__(cls)
        p._img = tuple(img0)
        return p

    @classmethod
    def identity(cls, degree: int) -> Permutation:
        if degree < 1:
            raise PermutationError("degree must be positive")
        return cls._from0(range(degree))

    @classmethod
    def from_cycles(cls, text: str, degree: int) -> Permutation:
        return parse_cycles(text, degree)

    @property
    def degree(self) -> int:
        return len(self._img)

    @property
    def images(self) -> tuple[int, ...]:
        return tuple(v + 1 for v in self._img)

    def __call__(self, point: int) -> int:
        return self._img[point - 1] + 1

    def __mul__(self, other: Permutation) -> Permutation:
        return compose(self, other)

    def __pow__(self, k: int) -> Permutation:
        if k < 0:
            return inverse(self) ** (-k)
        result = Permutation.identity(self.degree)
        base = self
        while k:
            if k & 1:
                result = compose(result, base)
            base = compose(base, base)
            k >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Permutation) and self._img == other._img

    def __hash__(self) -> int:
        return hash(self._img)

    def __repr__(self) -> str:
        return f"Permutation({format_cycles(self)!r}, degree={self.degree})"

    def __str__(self) -> str:
        return format_cycles(self)

    def is_identity(self) -> bool:
        return all(i == v for i, v in enumerate(self._img))

    def cycles(self) -> list[tuple[int, ...]]:
        """Disjoint non-trivial cycles, 1-based, each starting at its smallest point."""
        seen = [False] * self.degree
        out = []
        for start in range(self.degree):
            if seen[start]:
                continue
            cyc = [start]
            seen[start] = True
            nxt = self._img[start]
            while nxt != start:
                cyc.append(nxt)
                seen[nxt] = True
                nxt = self._img[nxt]
            if len(cyc) > 1:
                out.append(tuple(v + 1 for v in cyc))
        return out


_CYCLE_RE = re.compile(r"\(([^()]*)\)")


def parse_cycles(text: str, degree: int) -> Permutation:
    """Parse a product of cycles such as ``"(1 5)(2 3)"``.

    Cycles are composed right to left, so overlapping cycles are allowed.
    ``"()"`` and the empty string both mean the identity. Points inside one
    cycle must be separated by whitespace or commas; a multi-digit token like
    ``"15"`` is read as the single point 15, and is rejected when that exceeds
    the degree.
    """
    if degree < 1:
        raise PermutationError("degree must be positive")
    s = text.strip()
    pos = 0
    cycles: list[list[int]] = []
    while pos < len(s):
        if s[pos].isspace():
            pos += 1
            continue
        m = _CYCLE_RE.match(s, pos)
        if m is None:
            raise PermutationError(f"malformed cycle notation at offset {pos}: {text!r}")
        body = m.group(1).replace(",", " ").split()
        pts = []
        for tok in body:
            if not tok.isdigit():
                raise PermutationError(f"bad point {tok!r} in {text!r}")
            v = int(tok)
            if not 1 <= v <= degree:
                raise PermutationError(f"point {v} out of range 1..{degree} in {text!r}")
            pts.append(v)
        if len(set(pts)) != len(pts):
            raise PermutationError(f"repeated point within cycle ({m.group(1)})")
        if len(pts) == 1 and len(body[0]) > 1:
            # "(15)" could be a 1-cycle on 15 or a missing space in (1 5)
            raise PermutationError(f"ambiguous one-point cycle ({m.group(1)}); separate points with spaces")
        cycles.append(pts)
        pos = m.end()

    result = Permutation.identity(degree)
    for pts in cycles:
        if len(pts) < 2:
            continue
        img = list(range(degree))
        for a, b in zip(pts, pts[1:] + pts[:1]):
            img[a - 1] = b - 1
        result = compose(result, Permutation._from0(img))
    return result


def _check_degrees(p: Permutation, q: Permutation) -> None:
    if p.degree != q.degree:
        raise PermutationError(f"degree mismatch: {p.degree} vs {q.degree}")


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Return r with r(a) = p(q(a))."""
    _check_degrees(p, q)
    pi = p._img
    return Permutation._from0([pi[v] for v in q._img])


def compose_all(perms: Iterable[Permutation]) -> Permutation:
    return reduce(compose, perms)


def inverse(p: Permutation) -> Permutation:
    inv = [0] * p.degree
    for i, v in enumerate(p._img):
        inv[v] = i
    return Permutation._from0(inv)


def conjugate(u: Permutation, s: Permutation) -> Permutation:
    """u * s * u^-1."""
    _check_degrees(u, s)
    return compose(compose(u, s), inverse(u))


def element_order(p: Permutation) -> int:
    return reduce(math.lcm, (len(c) for c in p.cycles()), 1)


def sign(p: Permutation) -> int:
    transpositions = sum(len(c) - 1 for c in p.cycles())
    return -1 if transpositions % 2 else 1


def format_cycles(p: Permutation) -> str:
    cyc = p.cycles()
    if not cyc:
        return "()"
    return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc)
