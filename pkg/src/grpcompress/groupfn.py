"""One-variable group functions g0 x^e1 g1 ... x^el gl and the compression condition.

A compression function for an order-3 element s satisfies F(1) = 1 and
F(s) = F(s^2) = s. Such a function of size l is interchangeable with a
"conjugate form": conjugates t1..tl of s and exponents e1..el with
t1^e1...tl^el = t1^2e1...tl^2el = s.
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from .group import FiniteGroup, GroupError, Morphism

__all__ = [
    "ConditionError",
    "GroupFunction",
    "ConjugateForm",
    "evaluate",
    "condition_star_failures",
    "check_condition_star",
    "normalize_exponents",
    "to_conjugate_form",
    "from_conjugate_form",
    "push_forward",
    "conjugate_transfer",
    "format_function",
    "parse_function",
]


class ConditionError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class GroupFunction:
    group: FiniteGroup
    constants: tuple[int, ...]
    exponents: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "constants", tuple(int(c) for c in self.constants))
        object.__setattr__(self, "exponents", tuple(int(e) for e in self.exponents))
        if len(self.exponents) < 1:
            raise ValueError("a group function has size at least 1")
        if len(self.constants) != len(self.exponents) + 1:
            raise ValueError("need exactly one more constant than exponents")
        n = self.group.order
        if any(not 0 <= c < n for c in self.constants):
            raise GroupError("constant index out of range")
        if any(e < 1 for e in self.exponents):
            raise ValueError("exponents must be positive")

    @property
    def size(self) -> int:
        return len(self.exponents)

    def __call__(self, h: int) -> int:
        return evaluate(self, h)

    def __str__(self) -> str:
        return format_function(self)


@dataclass(frozen=True, eq=False)
class ConjugateForm:
    group: FiniteGroup
    sigma: int
    taus: tuple[int, ...]
    exponents: tuple[int, ...]
    conjugators: tuple[int, ...] | None = None

    def __post_init__(self):
        G = self.group
        object.__setattr__(self, "taus", tuple(int(t) for t in self.taus))
        object.__setattr__(self, "exponents", tuple(int(e) for e in self.exponents))
        if self.conjugators is not None:
            object.__setattr__(self, "conjugators", tuple(int(h) for h in self.conjugators))
        if G.element_order(self.sigma) != 3:
            raise ConditionError("sigma must have order 3")
        if len(self.taus) != len(self.exponents) or not self.taus:
            raise ValueError("taus and exponents must be non-empty and of equal length")
        if any(e not in (1, 2) for e in self.exponents):
            raise ValueError("conjugate-form exponents must be 1 or 2")
        cls = set(G.conj[:, self.sigma].tolist())
        if any(t not in cls for t in self.taus):
            raise ConditionError("every tau must be conjugate to sigma")
        if self.conjugators is not None:
            if len(self.conjugators) != len(self.taus):
                raise ValueError("one conjugator per tau")
            for h, t in zip(self.conjugators, self.taus):
                if G.conj[h, self.sigma] != t:
                    raise ConditionError("conjugator does not carry sigma to tau")

    @property
    def size(self) -> int:
        return len(self.taus)

    def products(self) -> tuple[int, int]:
        """(t1^e1 ... tl^el, t1^2e1 ... tl^2el)."""
        G = self.group
        first = G.product(G.power(t, e) for t, e in zip(self.taus, self.exponents))
        second = G.product(G.power(t, 2 * e) for t, e in zip(self.taus, self.exponents))
        return first, second

    def satisfies_equations(self) -> bool:
        return self.products() == (self.sigma, self.sigma)


def evaluate(F: GroupFunction, h: int) -> int:
    G = F.group
    if not 0 <= h < G.order:
        raise GroupError("element index out of range")
    rows = G.rows
    r = F.constants[0]
    for e, g in zip(F.exponents, F.constants[1:]):
        r = rows[rows[r][G.power(h, e)]][g]
    return r


def _require_order_3(G: FiniteGroup, sigma: int) -> None:
    if G.element_order(sigma) != 3:
        raise ConditionError(f"sigma {G.label(sigma)} has order {G.element_order(sigma)}, not 3")


def condition_star_failures(F: GroupFunction, sigma: int) -> list[str]:
    """Which of F(1)=1, F(s)=s, F(s^2)=s fail (empty list means all hold)."""
    G = F.group
    _require_order_3(G, sigma)
    s2 = G.mul(sigma, sigma)
    out = []
    if evaluate(F, 0) != 0:
        out.append("F(1) = 1")
    if evaluate(F, sigma) != sigma:
        out.append("F(sigma) = sigma")
    if evaluate(F, s2) != sigma:
        out.append("F(sigma^2) = sigma")
    return out


def check_condition_star(F: GroupFunction, sigma: int) -> bool:
    return not condition_star_failures(F, sigma)


def normalize_exponents(F: GroupFunction, sigma: int) -> GroupFunction:
    """Reduce exponents mod 3, merging constants around vanished factors.

    Only the values at 1, sigma and sigma^2 are preserved.
    """
    _require_order_3(F.group, sigma)
    G = F.group
    consts = [F.constants[0]]
    exps: list[int] = []
    for e, g in zip(F.exponents, F.constants[1:]):
        r = e % 3
        if r == 0:
            consts[-1] = G.mul(consts[-1], g)
        else:
            exps.append(r)
            consts.append(g)
    if not exps:
        raise ConditionError("function is constant on the powers of sigma")
    return GroupFunction(G, tuple(consts), tuple(exps))


def to_conjugate_form(F: GroupFunction, sigma: int) -> ConjugateForm:
    """Conjugates t_i = h_{i-1} s h_{i-1}^-1 with h_i = g0 g1 ... gi."""
    failures = condition_star_failures(F, sigma)
    if failures:
        raise ConditionError("condition fails: " + ", ".join(failures))
    F = normalize_exponents(F, sigma)
    G = F.group
    hs = []
    h = 0
    for g in F.constants[:-1]:
        h = G.mul(h, g)
        hs.append(h)
    taus = tuple(int(G.conj[h, sigma]) for h in hs)
    cf = ConjugateForm(G, sigma, taus, F.exponents, tuple(hs))
    if not cf.satisfies_equations():  # pragma: no cover - follows from the algebra
        raise AssertionError("conjugate form does not satisfy its product equations")
    return cf


def find_conjugator(G: FiniteGroup, sigma: int, tau: int) -> int:
    """Smallest h with h s h^-1 = tau."""
    col = G.conj[:, sigma]
    for h in range(G.order):
        if col[h] == tau:
            return h
    raise ConditionError(f"{G.label(tau)} is not conjugate to {G.label(sigma)}")


def from_conjugate_form(cf: ConjugateForm) -> GroupFunction:
    """F(x) = h0 x^e1 h0^-1 h1 x^e2 h1^-1 ... h_{l-1} x^el h_{l-1}^-1."""
    if not cf.satisfies_equations():
        a, b = cf.products()
        G = cf.group
        raise ConditionError(
            f"product equations fail: got {G.label(a)} and {G.label(b)}, want {G.label(cf.sigma)}")
    G = cf.group
    hs = cf.conjugators
    if hs is None:
        hs = tuple(find_conjugator(G, cf.sigma, t) for t in cf.taus)
    consts = [hs[0]]
    for prev, cur in zip(hs, hs[1:]):
        consts.append(G.mul(G.inverse(prev), cur))
    consts.append(G.inverse(hs[-1]))
    return GroupFunction(G, tuple(consts), cf.exponents)


def push_forward(F: GroupFunction, phi: Morphism) -> GroupFunction:
    if phi.source is not F.group:
        raise GroupError("morphism source is not the function's group")
    return GroupFunction(phi.target, tuple(phi(c) for c in F.constants), F.exponents)


def conjugate_transfer(F: GroupFunction, sigma: int, g: int) -> GroupFunction:
    """x -> g F(g^-1 x g) g^-1, a compression function for g s g^-1.

    Expanding the product shows this is F with every constant conjugated by g.
    """
    failures = condition_star_failures(F, sigma)
    if failures:
        raise ConditionError("condition fails: " + ", ".join(failures))
    consts = F.group.conj[g, list(F.constants)].tolist()
    return GroupFunction(F.group, tuple(consts), F.exponents)


_TOKEN_SEP = re.compile(r"\s*[·*]\s*")
_VAR_RE = re.compile(r"^x(?:\^(\d+))?$")


def format_function(F: GroupFunction) -> str:
    """``g0 · x^e1 · g1 · ... · gl`` using element labels."""
    G = F.group
    parts = [G.label(F.constants[0])]
    for e, g in zip(F.exponents, F.constants[1:]):
        parts.append("x" if e == 1 else f"x^{e}")
        parts.append(G.label(g))
    return " · ".join(parts)


def parse_function(text: str, G: FiniteGroup) -> GroupFunction:
    """Inverse of :func:`format_function`; ``*`` is accepted for ``·``.

    Adjacent constants are multiplied together and a missing leading or
    trailing constant is taken to be the identity.
    """
    tokens = [t for t in _TOKEN_SEP.split(text.strip()) if t]
    if not tokens:
        raise ValueError("empty group function")
    consts = [0]
    exps: list[int] = []
    for tok in tokens:
        m = _VAR_RE.match(tok)
        if m:
            exps.append(int(m.group(1) or 1))
            consts.append(0)
        else:
            consts[-1] = G.mul(consts[-1], _lookup(G, tok))
    return GroupFunction(G, tuple(consts), tuple(exps))


def _lookup(G: FiniteGroup, token: str) -> int:
    try:
        return G.index_of(token)
    except GroupError:
        if G.permutations is None:
            raise
    from .perm import parse_cycles
    return G.index_of_permutation(parse_cycles(token, G.permutations[0].degree))
