"""Finite groups stored as full multiplication tables.

Every group is a ``FiniteGroup`` whose elements are the indices ``0..n-1``
with 0 the identity. Constructors for the concrete families (cyclic,
dihedral, dicyclic, symmetric, matrix groups over F3, the binary octahedral
group) all funnel into that one representation, so products, quotients and
semidirect products are plain table manipulations.
"""
from __future__ import annotations

import itertools
from collections import Counter
from fractions import Fraction
from typing import Callable, Iterable, Sequence

import numpy as np

from .perm import Permutation, compose, format_cycles

__all__ = [
    "ORDER_CAP",
    "GroupError",
    "FiniteGroup",
    "Morphism",
    "Subgroup",
    "from_permutations",
    "cyclic",
    "dihedral",
    "dicyclic",
    "semidihedral_16",
    "symmetric",
    "alternating",
    "sl2_f3",
    "gl2_f3",
    "binary_octahedral",
    "direct_product",
    "projections",
    "automorphisms",
    "semidirect_product",
    "semidirect_products",
    "quotient",
    "conjugacy_class",
    "conjugacy_classes",
    "centralizer",
    "center",
    "elements_of_order",
    "is_abelian",
    "generated_subgroup",
    "all_subgroups",
    "normal_subgroups",
    "is_normal",
    "sylow_3",
    "is_isomorphic",
    "group_invariants",
]

ORDER_CAP = 2000
FULL_AXIOM_CHECK = 60


class GroupError(ValueError):
    pass


class FiniteGroup:
    """A finite group given by its Cayley table.

    ``table[a, b]`` is the index of ``a * b``. The identity is always index 0.
    Instances are treated as immutable; derived data is cached on first use.
    """

    def __init__(self, table, labels: Sequence[str] | None = None,
                 provenance: str = "", check: bool = True):
        t = np.asarray(table, dtype=np.int32)
        if t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] == 0:
            raise GroupError("table must be a non-empty square array")
        n = t.shape[0]
        if n > ORDER_CAP:
            raise GroupError(f"order {n} exceeds cap {ORDER_CAP}")
        t.setflags(write=False)
        self.table = t
        self.order = n
        self.provenance = provenance
        if labels is not None:
            labels = tuple(labels)
            if len(labels) != n or len(set(labels)) != n:
                raise GroupError("labels must be distinct, one per element")
        self.labels = labels
        self._cache: dict = {}
        if check:
            self._check_axioms()

    def __repr__(self) -> str:
        return f"<FiniteGroup order={self.order} {self.provenance!r}>"

    def __len__(self) -> int:
        return self.order

    def _check_axioms(self) -> None:
        t, n = self.table, self.order
        ar = np.arange(n)
        if not (np.array_equal(t[0], ar) and np.array_equal(t[:, 0], ar)):
            raise GroupError("index 0 is not a two-sided identity")
        srt = np.sort(t, axis=1)
        if not (np.all(srt == ar) and np.all(np.sort(t, axis=0) == ar[:, None])):
            raise GroupError("table is not a Latin square")
        if n <= FULL_AXIOM_CHECK:
            left = t[t, :]              # (ab)c  indexed [a, b, c]
            right = t[:, t]             # a(bc)  indexed [a, b, c]
            if not np.array_equal(left, right):
                raise GroupError("multiplication is not associative")
        else:
            rng = np.random.default_rng(12345)
            a, b, c = rng.integers(0, n, size=(3, 20000))
            if not np.array_equal(t[t[a, b], c], t[a, t[b, c]]):
                raise GroupError("multiplication is not associative")

    # -- cached element data -------------------------------------------

    @property
    def rows(self) -> list[list[int]]:
        """The table as nested lists, for tight scalar loops."""
        if "rows" not in self._cache:
            self._cache["rows"] = self.table.tolist()
        return self._cache["rows"]

    @property
    def inv(self) -> np.ndarray:
        if "inv" not in self._cache:
            inv = np.argmin(self.table, axis=1).astype(np.int32)
            inv.setflags(write=False)
            self._cache["inv"] = inv
        return self._cache["inv"]

    @property
    def orders(self) -> np.ndarray:
        if "orders" not in self._cache:
            n = self.order
            ords = np.zeros(n, dtype=np.int64)
            ar = np.arange(n)
            cur = ar.copy()
            for k in range(1, n + 1):
                hit = (cur == 0) & (ords == 0)
                ords[hit] = k
                if ords.all():
                    break
                cur = self.table[cur, ar]
            ords.setflags(write=False)
            self._cache["orders"] = ords
        return self._cache["orders"]

    @property
    def conj(self) -> np.ndarray:
        """``conj[g, x] == g x g^-1``."""
        if "conj" not in self._cache:
            c = self.table[self.table, self.inv[:, None]]
            c.setflags(write=False)
            self._cache["conj"] = c
        return self._cache["conj"]

    def mul(self, a: int, b: int) -> int:
        return self.rows[a][b]

    def product(self, elems: Iterable[int]) -> int:
        r = 0
        rows = self.rows
        for e in elems:
            r = rows[r][e]
        return r

    def power(self, a: int, k: int) -> int:
        if k < 0:
            a, k = int(self.inv[a]), -k
        r = 0
        rows = self.rows
        for _ in range(k % int(self.orders[a])):
            r = rows[r][a]
        return r

    def inverse(self, a: int) -> int:
        return int(self.inv[a])

    def element_order(self, a: int) -> int:
        return int(self.orders[a])

    def label(self, a: int) -> str:
        if self.labels is None:
            return "1" if a == 0 else f"g{a}"
        return self.labels[a]

    def index_of(self, label: str) -> int:
        if "label_index" not in self._cache:
            self._cache["label_index"] = {self.label(i): i for i in range(self.order)}
        try:
            return self._cache["label_index"][label]
        except KeyError:
            raise GroupError(f"no element labelled {label!r}") from None

    @property
    def permutations(self) -> tuple[Permutation, ...] | None:
        """Concrete permutations when the group was built from them."""
        return self._cache.get("perms")

    def index_of_permutation(self, p: Permutation) -> int:
        perms = self.permutations
        if perms is None:
            raise GroupError("group was not built from permutations")
        if "perm_index" not in self._cache:
            self._cache["perm_index"] = {q: i for i, q in enumerate(perms)}
        try:
            return self._cache["perm_index"][p]
        except KeyError:
            raise GroupError(f"{format_cycles(p)} is not in the group") from None


class Morphism:
    """A homomorphism given by its image array; validated on construction."""

    def __init__(self, source: FiniteGroup, target: FiniteGroup, mapping, check: bool = True):
        m = np.asarray(mapping, dtype=np.int32)
        if m.shape != (source.order,):
            raise GroupError("mapping length must equal source order")
        if m.min() < 0 or m.max() >= target.order:
            raise GroupError("mapping has out-of-range images")
        m.setflags(write=False)
        self.source = source
        self.target = target
        self.map = m
        if check:
            if m[0] != 0:
                raise GroupError("identity not mapped to identity")
            lhs = m[source.table]
            rhs = target.table[m[:, None], m[None, :]]
            if not np.array_equal(lhs, rhs):
                raise GroupError("mapping is not a homomorphism")

    def __call__(self, a: int) -> int:
        return int(self.map[a])

    def is_injective(self) -> bool:
        return len(set(self.map.tolist())) == self.source.order

    def is_surjective(self) -> bool:
        return len(set(self.map.tolist())) == self.target.order

    def kernel(self) -> Subgroup:
        return Subgroup(self.source, np.flatnonzero(self.map == 0).tolist())


class Subgroup:
    """A subset of a parent group closed under multiplication and inverses."""

    def __init__(self, parent: FiniteGroup, members: Iterable[int], check: bool = True):
        mem = tuple(sorted(set(int(x) for x in members)))
        self.parent = parent
        self.members = mem
        self.mask = frozenset(mem)
        if check:
            if not mem or mem[0] != 0:
                raise GroupError("subgroup must contain the identity")
            rows = parent.rows
            for a in mem:
                ra = rows[a]
                if any(ra[b] not in self.mask for b in mem):
                    raise GroupError("subset is not closed under multiplication")

    @property
    def order(self) -> int:
        return len(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def __contains__(self, a: int) -> bool:
        return a in self.mask

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Subgroup) and other.parent is self.parent and other.mask == self.mask

    def __hash__(self) -> int:
        return hash(self.mask)

    def __repr__(self) -> str:
        return f"<Subgroup order={self.order} of {self.parent!r}>"

    def as_group(self) -> tuple[FiniteGroup, Morphism]:
        """The subgroup as a standalone group plus its inclusion into the parent."""
        key = ("as_group", self.mask)
        cache = self.parent._cache
        if key not in cache:
            mem = np.array(self.members, dtype=np.int32)
            pos = np.full(self.parent.order, -1, dtype=np.int32)
            pos[mem] = np.arange(len(mem), dtype=np.int32)
            t = pos[self.parent.table[np.ix_(mem, mem)]]
            labels = None if self.parent.labels is None else [self.parent.labels[i] for i in mem]
            g = FiniteGroup(t, labels, provenance=f"subgroup of order {len(mem)} in {self.parent.provenance}",
                            check=False)
            perms = self.parent.permutations
            if perms is not None:
                g._cache["perms"] = tuple(perms[i] for i in mem)
            cache[key] = (g, Morphism(g, self.parent, mem, check=False))
        return cache[key]


# -- construction helpers ----------------------------------------------

def _closure(rows: list[list[int]], gens: Iterable[int], start: Iterable[int] = (0,)) -> list[int]:
    """Elements reached from ``start`` by right-multiplying by ``gens``."""
    gens = list(dict.fromkeys(gens))
    seen = set(start)
    queue = list(seen)
    for a in queue:
        ra = rows[a]
        for g in gens:
            b = ra[g]
            if b not in seen:
                seen.add(b)
                queue.append(b)
    return queue


def _table_from_mul(elements: Sequence, mul: Callable, key=lambda e: e) -> np.ndarray:
    index = {key(e): i for i, e in enumerate(elements)}
    n = len(elements)
    t = np.empty((n, n), dtype=np.int32)
    for i, a in enumerate(elements):
        for j, b in enumerate(elements):
            t[i, j] = index[key(mul(a, b))]
    return t


def from_permutations(generators: Sequence[Permutation], provenance: str | None = None,
                      cap: int = ORDER_CAP) -> FiniteGroup:
    """The permutation group generated by ``generators``; labels are cycle strings."""
    if not generators:
        raise GroupError("need at least one generator")
    deg = generators[0].degree
    if any(g.degree != deg for g in generators):
        raise GroupError("generators must share a degree")
    ident = Permutation.identity(deg)
    elems = [ident]
    seen = {ident}
    for a in elems:
        for g in generators:
            b = compose(a, g)
            if b not in seen:
                if len(elems) >= cap:
                    raise GroupError(f"closure exceeds order cap {cap}")
                seen.add(b)
                elems.append(b)
    t = _table_from_mul(elems, compose)
    if provenance is None:
        provenance = "<" + ", ".join(format_cycles(g) for g in generators) + ">"
    grp = FiniteGroup(t, [format_cycles(p) for p in elems], provenance)
    grp._cache["perms"] = tuple(elems)
    return grp


def _metacyclic(m: int, s: int, t: int, r: int, provenance: str) -> FiniteGroup:
    """Group of words a^i b^j with a^m = 1, b^s = a^t, b a b^-1 = a^r."""
    r %= m
    if (r * t - t) % m or pow(r, s, m) != 1 % m:
        raise GroupError("inconsistent metacyclic parameters")
    n = m * s
    t_arr = np.empty((n, n), dtype=np.int32)
    rpow = [pow(r, j, m) for j in range(s)]
    for i, j, k, l in itertools.product(range(m), range(s), range(m), range(s)):
        e = i + rpow[j] * k
        jj = j + l
        if jj >= s:
            jj -= s
            e += t
        t_arr[i * s + j, k * s + l] = (e % m) * s + jj

    def lab(i: int, j: int) -> str:
        parts = ([f"a^{i}" if i > 1 else "a"] if i else []) + ([f"b^{j}" if j > 1 else "b"] if j else [])
        return " ".join(parts) or "1"
    labels = [lab(i, j) for i in range(m) for j in range(s)]
    return FiniteGroup(t_arr, labels, provenance)


def cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise GroupError("cyclic order must be positive")
    t = (np.arange(n)[:, None] + np.arange(n)[None, :]) % n
    labels = ["1"] + [f"a^{i}" if i > 1 else "a" for i in range(1, n)]
    return FiniteGroup(t, labels, f"C{n}")


def dihedral(N: int) -> FiniteGroup:
    """Dihedral group of order N (not 2N)."""
    if N < 2 or N % 2:
        raise GroupError("dihedral order must be even and at least 2")
    return _metacyclic(N // 2, 2, 0, -1, f"D{N}")


def dicyclic(m: int) -> FiniteGroup:
    """Dicyclic group of order 4m; m = 2 gives Q8."""
    if m < 1:
        raise GroupError("dicyclic parameter must be positive")
    name = {2: "Q8", 4: "Q16"}.get(m, f"Dic{m}")
    return _metacyclic(2 * m, 2, m, -1, name)


def semidihedral_16() -> FiniteGroup:
    return _metacyclic(8, 2, 0, 3, "QD16")


def symmetric(n: int) -> FiniteGroup:
    if not 1 <= n <= 6:
        raise GroupError("symmetric degree must be in 1..6")
    if n == 1:
        return from_permutations([Permutation.identity(1)], "S1")
    gens = [Permutation.from_cycles("(1 2)", n)]
    if n > 2:
        gens.append(Permutation.from_cycles("(" + " ".join(map(str, range(1, n + 1))) + ")", n))
    return from_permutations(gens, f"S{n}")


def alternating(n: int) -> FiniteGroup:
    if not 1 <= n <= 6:
        raise GroupError("alternating degree must be in 1..6")
    if n < 3:
        return from_permutations([Permutation.identity(n)], f"A{n}")
    gens = [Permutation.from_cycles(f"(1 2 {k})", n) for k in range(3, n + 1)]
    return from_permutations(gens, f"A{n}")


def _f3_matrices(det_ok: Callable[[int], bool]) -> list[tuple[int, int, int, int]]:
    mats = [m for m in itertools.product(range(3), repeat=4) if det_ok((m[0] * m[3] - m[1] * m[2]) % 3)]
    ident = (1, 0, 0, 1)
    mats.remove(ident)
    return [ident] + mats


def _f3_mul(x, y):
    a, b, c, d = x
    e, f, g, h = y
    return ((a * e + b * g) % 3, (a * f + b * h) % 3, (c * e + d * g) % 3, (c * f + d * h) % 3)


def _f3_group(mats, provenance: str) -> FiniteGroup:
    labels = [f"[[{a},{b}],[{c},{d}]]" for a, b, c, d in mats]
    return FiniteGroup(_table_from_mul(mats, _f3_mul), labels, provenance)


def sl2_f3() -> FiniteGroup:
    return _f3_group(_f3_matrices(lambda d: d == 1), "SL(2,3)")


def gl2_f3() -> FiniteGroup:
    return _f3_group(_f3_matrices(lambda d: d != 0), "GL(2,3)")


# Exact arithmetic in Q(sqrt 2): (a, b) stands for a + b*sqrt(2).
def _r2_mul(x, y):
    return (x[0] * y[0] + 2 * x[1] * y[1], x[0] * y[1] + x[1] * y[0])


def _r2_add(*xs):
    return (sum(x[0] for x in xs), sum(x[1] for x in xs))


def _r2_neg(x):
    return (-x[0], -x[1])


def _quat_mul(p, q):
    a1, b1, c1, d1 = p
    a2, b2, c2, d2 = q
    m = _r2_mul
    return (
        _r2_add(m(a1, a2), _r2_neg(m(b1, b2)), _r2_neg(m(c1, c2)), _r2_neg(m(d1, d2))),
        _r2_add(m(a1, b2), m(b1, a2), m(c1, d2), _r2_neg(m(d1, c2))),
        _r2_add(m(a1, c2), _r2_neg(m(b1, d2)), m(c1, a2), m(d1, b2)),
        _r2_add(m(a1, d2), m(b1, c2), _r2_neg(m(c1, b2)), m(d1, a2)),
    )


def _quat_label(q) -> str:
    def coord(x):
        a, b = x
        if b == 0:
            return str(a)
        if a == 0:
            return f"{b}r2"
        return f"{a}+{b}r2"
    return "<" + ",".join(coord(x) for x in q) + ">"


def binary_octahedral() -> FiniteGroup:
    """The binary octahedral group as unit quaternions with coordinates in Q(sqrt 2)."""
    h, z, one = Fraction(1, 2), Fraction(0), Fraction(1)
    ident = ((one, z), (z, z), (z, z), (z, z))
    s = ((h, z), (h, z), (h, z), (h, z))             # (1+i+j+k)/2
    t = ((z, h), (z, h), (z, z), (z, z))             # (sqrt2/2)(1+i)
    elems = [ident]
    seen = {ident}
    for a in elems:
        for g in (s, t):
            b = _quat_mul(a, g)
            if b not in seen:
                seen.add(b)
                elems.append(b)
    if len(elems) != 48:
        raise GroupError(f"quaternion closure has order {len(elems)}, expected 48")
    g = FiniteGroup(_table_from_mul(elems, _quat_mul), [_quat_label(q) for q in elems], "2O")
    if binary_octahedral_generators(g) is None:
        raise GroupError("no (a, b, c) with a^4 = b^3 = c^2 = abc")
    return g


def binary_octahedral_generators(g: FiniteGroup) -> tuple[int, int, int] | None:
    """Some (a, b, c) generating g with a^4 = b^3 = c^2 = abc != 1."""
    for a in range(g.order):
        if g.orders[a] != 8:
            continue
        z = g.power(a, 4)
        for b in range(g.order):
            if g.orders[b] != 6 or g.power(b, 3) != z:
                continue
            c = g.mul(g.inverse(b), g.power(a, 3))
            if g.power(c, 2) == z and g.product([a, b, c]) == z and len(_closure(g.rows, [a, b])) == g.order:
                return a, b, c
    return None


# -- products and quotients ----------------------------------------------

def _semidirect_table(H: FiniteGroup, K: FiniteGroup, act: np.ndarray) -> np.ndarray:
    nh, nk = H.order, K.order
    h1 = np.arange(nh)[:, None, None, None]
    k1 = np.arange(nk)[None, :, None, None]
    h2 = np.arange(nh)[None, None, :, None]
    k2 = np.arange(nk)[None, None, None, :]
    t = H.table[h1, act[k1, h2]] * nk + K.table[k1, k2]
    return t.reshape(nh * nk, nh * nk)


def _pair_labels(G: FiniteGroup, H: FiniteGroup) -> list[str]:
    return [f"({G.label(a)}, {H.label(b)})" for a in range(G.order) for b in range(H.order)]


def direct_product(G: FiniteGroup, H: FiniteGroup) -> FiniteGroup:
    """Componentwise product; element (a, b) has index a*|H| + b."""
    if G.order * H.order > ORDER_CAP:
        raise GroupError("direct product exceeds order cap")
    act = np.broadcast_to(np.arange(G.order), (H.order, G.order))
    return FiniteGroup(_semidirect_table(G, H, act), _pair_labels(G, H),
                       f"{_paren(G.provenance)} x {_paren(H.provenance)}")


def projections(P: FiniteGroup, G: FiniteGroup, H: FiniteGroup) -> tuple[Morphism, Morphism]:
    """The two coordinate projections of ``P = direct_product(G, H)``."""
    idx = np.arange(P.order)
    return Morphism(P, G, idx // H.order), Morphism(P, H, idx % H.order)


def _paren(s: str) -> str:
    return f"({s})" if (" x " in s or " : " in s) else s


def semidirect_product(H: FiniteGroup, K: FiniteGroup, action: Sequence[Sequence[int]],
                       provenance: str | None = None) -> FiniteGroup:
    """H x| K with (h1,k1)(h2,k2) = (h1 * action[k1](h2), k1 k2).

    ``action[k]`` is the image array of the automorphism attached to k.
    """
    if H.order * K.order > ORDER_CAP:
        raise GroupError("semidirect product exceeds order cap")
    act = np.asarray(action, dtype=np.int64)
    if act.shape != (K.order, H.order):
        raise GroupError("action must have one automorphism per element of K")
    prov = provenance or f"{_paren(H.provenance)} : {_paren(K.provenance)}"
    return FiniteGroup(_semidirect_table(H, K, act), _pair_labels(H, K), prov)


def quotient(G: FiniteGroup, N: Subgroup) -> tuple[FiniteGroup, Morphism]:
    if N.parent is not G:
        raise GroupError("subgroup belongs to a different group")
    if not is_normal(G, N):
        raise GroupError("quotient requires a normal subgroup")
    coset = np.full(G.order, -1, dtype=np.int64)
    reps = []
    rows = G.rows
    for a in range(G.order):
        if coset[a] >= 0:
            continue
        cid = len(reps)
        reps.append(a)
        for m in N.members:
            coset[rows[a][m]] = cid
    reps_arr = np.array(reps)
    t = coset[G.table[np.ix_(reps_arr, reps_arr)]]
    labels = [f"{G.label(r)}N" for r in reps]
    Q = FiniteGroup(t, labels, f"{_paren(G.provenance)} / N{N.order}")
    return Q, Morphism(G, Q, coset)


# -- conjugacy and subgroups -----------------------------------------------

def conjugacy_class(G: FiniteGroup, g: int) -> list[int]:
    return sorted(set(G.conj[:, g].tolist()))


def conjugacy_classes(G: FiniteGroup) -> list[list[int]]:
    """Classes ordered by smallest member."""
    if "classes" not in G._cache:
        seen: set[int] = set()
        out = []
        for a in range(G.order):
            if a not in seen:
                c = conjugacy_class(G, a)
                seen.update(c)
                out.append(c)
        G._cache["classes"] = out
    return G._cache["classes"]


def centralizer(G: FiniteGroup, g: int) -> Subgroup:
    return Subgroup(G, np.flatnonzero(G.conj[:, g] == g).tolist(), check=False)


def center(G: FiniteGroup) -> Subgroup:
    fixed = np.all(G.conj == np.arange(G.order)[None, :], axis=0)
    return Subgroup(G, np.flatnonzero(fixed).tolist(), check=False)


def elements_of_order(G: FiniteGroup, k: int) -> list[int]:
    return np.flatnonzero(G.orders == k).tolist()


def is_abelian(G: FiniteGroup) -> bool:
    return bool(np.array_equal(G.table, G.table.T))


def generated_subgroup(G: FiniteGroup, elems: Iterable[int]) -> Subgroup:
    return Subgroup(G, _closure(G.rows, elems), check=False)


def is_normal(G: FiniteGroup, S: Subgroup) -> bool:
    mem = np.array(S.members)
    return bool(np.isin(G.conj[:, mem], mem).all())


def all_subgroups(G: FiniteGroup) -> list[Subgroup]:
    """Every subgroup, found by joining cyclic subgroups until nothing new appears.

    Ordered by (order, members).
    """
    if "all_subgroups" in G._cache:
        return G._cache["all_subgroups"]
    rows = G.rows
    cyclic_subs: dict[frozenset, int] = {}
    for a in range(G.order):
        c = frozenset(_closure(rows, [a]))
        cyclic_subs.setdefault(c, a)
    found: dict[frozenset, list[int]] = {c: [a] for c, a in cyclic_subs.items()}
    queue = list(found)
    for S in queue:
        gens = found[S]
        for C, a in cyclic_subs.items():
            if C <= S:
                continue
            J = frozenset(_closure(rows, gens + [a], start=S))
            if J not in found:
                found[J] = gens + [a]
                queue.append(J)
    subs = sorted((Subgroup(G, s, check=False) for s in found), key=lambda s: (s.order, s.members))
    G._cache["all_subgroups"] = subs
    return subs


def normal_subgroups(G: FiniteGroup) -> list[Subgroup]:
    """All normal subgroups, as joins of normal closures of conjugacy classes.

    Ordered by (order, members).
    """
    if "normal_subgroups" in G._cache:
        return G._cache["normal_subgroups"]
    rows = G.rows
    found: set[frozenset] = set()
    for cls in conjugacy_classes(G):
        found.add(frozenset(_closure(rows, cls)))
    queue = list(found)
    for A in queue:
        for B in list(found):
            if A <= B or B <= A:
                continue
            J = frozenset(_closure(rows, list(B), start=A))
            if J not in found:
                found.add(J)
                queue.append(J)
    subs = sorted((Subgroup(G, s, check=False) for s in found), key=lambda s: (s.order, s.members))
    G._cache["normal_subgroups"] = subs
    return subs


def sylow_3(G: FiniteGroup) -> Subgroup:
    """A Sylow 3-subgroup, grown one factor of 3 at a time inside normalizers."""
    target = 1
    while G.order % (3 * target) == 0:
        target *= 3
    rows = G.rows
    P = frozenset([0])
    while len(P) < target:
        for x in range(G.order):
            if x in P:
                continue
            if G.product([x, x, x]) not in P:
                continue
            xi = int(G.inv[x])
            if all(rows[rows[x][p]][xi] in P for p in P):
                P = frozenset(_closure(rows, [x], start=P))
                break
        else:  # pragma: no cover - Sylow's theorem guarantees progress
            raise GroupError("failed to extend 3-subgroup")
    return Subgroup(G, P, check=False)


# -- homomorphism search -----------------------------------------------------

def _extend(rowsG, rowsH, gens: Sequence[int], imgs: Sequence[int], injective: bool):
    """Map <gens> -> H sending gens to imgs, or None if inconsistent.

    Consistency on every Cayley-graph edge a -> a*g is exactly the homomorphism
    condition on the generated subgroup.
    """
    m = {0: 0}
    used = {0} if injective else None
    queue = [0]
    pairs = list(zip(gens, imgs))
    for a in queue:
        ra = rowsG[a]
        rma = rowsH[m[a]]
        for g, h in pairs:
            b = ra[g]
            mb = rma[h]
            old = m.get(b)
            if old is None:
                if injective:
                    if mb in used:
                        return None
                    used.add(mb)
                m[b] = mb
                queue.append(b)
            elif old != mb:
                return None
    return m


def _signatures(G: FiniteGroup) -> list[tuple]:
    """Isomorphism-invariant data attached to each element."""
    if "signatures" not in G._cache:
        n = G.order
        ords = G.orders.tolist()
        cent = (G.conj == np.arange(n)[None, :]).sum(axis=0).tolist()
        sq = np.bincount(np.diagonal(G.table), minlength=n).tolist()
        sig = [(ords[a], cent[a], sq[a]) for a in range(n)]
        G._cache["signatures"] = sig
    return G._cache["signatures"]


def group_invariants(G: FiniteGroup) -> tuple:
    """A cheap isomorphism invariant used for bucketing."""
    if "invariants" not in G._cache:
        sig = Counter(_signatures(G))
        G._cache["invariants"] = (G.order, len(conjugacy_classes(G)), tuple(sorted(sig.items())))
    return G._cache["invariants"]


def _search_generators(G: FiniteGroup, weight: Callable[[int], int]) -> list[int]:
    """Greedy generating set preferring elements with few candidate images."""
    rows = G.rows
    order = sorted(range(1, G.order), key=lambda a: (weight(a), -int(G.orders[a]), a))
    gens: list[int] = []
    span = {0}
    for a in order:
        if len(span) == G.order:
            break
        if a in span:
            continue
        gens.append(a)
        span = set(_closure(rows, gens))
    return gens


def _iso_search(G: FiniteGroup, H: FiniteGroup, find_all: bool) -> list[np.ndarray]:
    sigG, sigH = _signatures(G), _signatures(H)
    by_sig: dict[tuple, list[int]] = {}
    for b, s in enumerate(sigH):
        by_sig.setdefault(s, []).append(b)
    gens = _search_generators(G, lambda a: len(by_sig.get(sigG[a], ())))
    cands = [by_sig.get(sigG[g], []) for g in gens]
    rowsG, rowsH = G.rows, H.rows
    n = G.order
    found: list[np.ndarray] = []

    def rec(i: int, imgs: list[int], m: dict) -> bool:
        if i == len(gens):
            arr = np.empty(n, dtype=np.int32)
            for k, v in m.items():
                arr[k] = v
            found.append(arr)
            return not find_all
        image_set = set(m.values())
        for h in cands[i]:
            if h in image_set:
                continue
            m2 = _extend(rowsG, rowsH, gens[: i + 1], imgs + [h], True)
            if m2 is None:
                continue
            if rec(i + 1, imgs + [h], m2):
                return True
        return False

    rec(0, [], {0: 0})
    return found


def is_isomorphic(G: FiniteGroup, H: FiniteGroup) -> Morphism | None:
    """An isomorphism G -> H, or None. Exact: invariants only prune the search."""
    if G.order != H.order or group_invariants(G) != group_invariants(H):
        return None
    res = _iso_search(G, H, find_all=False)
    if not res:
        return None
    return Morphism(G, H, res[0])


def automorphisms(G: FiniteGroup) -> list[Morphism]:
    """All automorphisms of G, identity first."""
    if "automorphisms" not in G._cache:
        maps = _iso_search(G, G, find_all=True)
        ident = np.arange(G.order, dtype=np.int32)
        maps.sort(key=lambda m: (not np.array_equal(m, ident), m.tolist()))
        G._cache["automorphisms"] = [Morphism(G, G, m, check=False) for m in maps]
    return G._cache["automorphisms"]


def _homs_into_perms(K: FiniteGroup, perms: np.ndarray) -> list[np.ndarray]:
    """All homomorphisms from K into a group of permutation arrays.

    ``perms`` has one row per permutation, composed as arrays
    ((p*q)[x] = p[q[x]]). Returns arrays of shape (|K|, degree).
    """
    deg = perms.shape[1]
    ident = tuple(range(deg))
    # orders of the candidate images
    pw = perms.copy()
    porder = np.zeros(len(perms), dtype=np.int64)
    ar = np.arange(deg)
    for k in range(1, K.order + 1):
        hit = np.all(pw == ar, axis=1) & (porder == 0)
        porder[hit] = k
        pw = np.take_along_axis(perms, pw, axis=1)
    ptuples = [tuple(p) for p in perms.tolist()]
    gens = _search_generators(K, lambda a: 0)
    cands = [[ptuples[i] for i in range(len(perms)) if porder[i] and K.orders[g] % porder[i] == 0]
             for g in gens]
    rows = K.rows

    def extend(imgs):
        m = {0: ident}
        queue = [0]
        for a in queue:
            ma = m[a]
            for g, p in zip(gens, imgs):
                b = rows[a][g]
                mb = tuple(ma[x] for x in p)
                old = m.get(b)
                if old is None:
                    m[b] = mb
                    queue.append(b)
                elif old != mb:
                    return None
        return m

    out = []

    def rec(i, imgs):
        if i == len(gens):
            m = extend(imgs)
            out.append(np.array([m[a] for a in range(K.order)], dtype=np.int32))
            return
        for p in cands[i]:
            if extend(imgs + [p]) is not None:
                rec(i + 1, imgs + [p])

    if not gens:
        out.append(np.array([ident], dtype=np.int32))
    else:
        rec(0, [])
    return out


def semidirect_products(H: FiniteGroup, K: FiniteGroup, include_trivial: bool = False) -> list[FiniteGroup]:
    """One semidirect product per homomorphism K -> Aut(H).

    Actions that coincide are not merged here; isomorphism dedup is the
    caller's business.
    """
    if H.order * K.order > ORDER_CAP:
        raise GroupError("semidirect product exceeds order cap")
    auts = np.array([a.map for a in automorphisms(H)], dtype=np.int32)
    ident = np.arange(H.order)
    out = []
    for act in _homs_into_perms(K, auts):
        trivial = bool(np.all(act == ident))
        if trivial and not include_trivial:
            continue
        out.append(semidirect_product(H, K, act))
    return out
