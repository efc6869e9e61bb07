"""Exact existence and minimal size of compression functions.

A function of size l for sigma exists iff some walk of length l in G x G,
starting at (1, 1) and moving by (v^e, v^2e) with v conjugate to sigma and
e in {1, 2}, ends at (sigma, sigma). Breadth-first search over the at most
|G|^2 states therefore decides existence and gives the minimal size.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

import numpy as np

from .group import FiniteGroup, conjugacy_class, conjugacy_classes
from .groupfn import (ConditionError, ConjugateForm, GroupFunction, check_condition_star,
                      from_conjugate_form)

__all__ = [
    "EXISTS",
    "NO_SOLUTION",
    "DecisionOutcome",
    "GroupVerdict",
    "BfsResult",
    "bfs_search",
    "decide_for_sigma",
    "decide_group",
    "reconstruct_witness",
    "order3_class_representatives",
    "brute_force_oracle",
]

EXISTS = "exists"
NO_SOLUTION = "no_solution"


@dataclass(frozen=True, eq=False)
class DecisionOutcome:
    kind: str
    sigma: int
    minimal_size: int | None = None
    witness: ConjugateForm | None = None
    function: GroupFunction | None = None
    reachable_states: int = 0
    certificate: bool = False

    @property
    def exists(self) -> bool:
        return self.kind == EXISTS


@dataclass(frozen=True, eq=False)
class GroupVerdict:
    group: FiniteGroup
    per_class: list[tuple[int, DecisionOutcome]] = field(default_factory=list)
    reason: str = ""

    @property
    def exists(self) -> bool:
        return any(o.exists for _, o in self.per_class)

    @property
    def overall(self) -> str:
        return EXISTS if self.exists else NO_SOLUTION

    @property
    def minimal_size(self) -> int | None:
        sizes = [o.minimal_size for _, o in self.per_class if o.exists]
        return min(sizes) if sizes else None


@dataclass
class BfsResult:
    """Raw search data: dense predecessor arrays indexed by a*|G| + b."""
    group: FiniteGroup
    sigma: int
    moves: list[tuple[int, int]]
    pred_state: np.ndarray
    pred_move: np.ndarray
    depth: np.ndarray
    visited: np.ndarray

    @property
    def target(self) -> int:
        return self.sigma * self.group.order + self.sigma

    @property
    def reached(self) -> bool:
        return bool(self.visited[self.target])


def _moves(G: FiniteGroup, sigma: int) -> list[tuple[int, int]]:
    """(v, e) for v in the class of sigma, e in (1, 2), in lexicographic order."""
    return [(v, e) for v in conjugacy_class(G, sigma) for e in (1, 2)]


def bfs_search(G: FiniteGroup, sigma: int, stop_at_target: bool = False) -> BfsResult:
    if G.element_order(sigma) != 3:
        raise ConditionError(f"sigma {G.label(sigma)} does not have order 3")
    n = G.order
    rows = G.rows
    moves = _moves(G, sigma)
    steps = [(G.power(v, e), G.power(v, 2 * e)) for v, e in moves]
    size = n * n
    visited = np.zeros(size, dtype=bool)
    pred_state = np.full(size, -1, dtype=np.int64)
    pred_move = np.full(size, -1, dtype=np.int64)
    depth = np.full(size, -1, dtype=np.int64)
    target = sigma * n + sigma
    visited[0] = True
    depth[0] = 0
    vis = visited.tolist()
    queue = deque([0])
    pst, pmv, dep = pred_state.tolist(), pred_move.tolist(), depth.tolist()
    while queue:
        s = queue.popleft()
        a, b = divmod(s, n)
        ra, rb = rows[a], rows[b]
        d = dep[s] + 1
        for mi, (x, y) in enumerate(steps):
            t = ra[x] * n + rb[y]
            if not vis[t]:
                vis[t] = True
                pst[t] = s
                pmv[t] = mi
                dep[t] = d
                queue.append(t)
        if stop_at_target and vis[target]:
            break
    return BfsResult(G, sigma, moves, np.array(pst), np.array(pmv), np.array(dep), np.array(vis))


def reconstruct_witness(G: FiniteGroup, sigma: int, bfs: BfsResult) -> tuple[ConjugateForm, GroupFunction]:
    """Walk predecessor links back from (sigma, sigma) and rebuild the function."""
    if not bfs.reached:
        raise ConditionError("target state was not reached")
    path = []
    s = bfs.target
    while s != 0:
        path.append(int(bfs.pred_move[s]))
        s = int(bfs.pred_state[s])
    path.reverse()
    taus = tuple(bfs.moves[m][0] for m in path)
    exps = tuple(bfs.moves[m][1] for m in path)
    cf = ConjugateForm(G, sigma, taus, exps)
    F = from_conjugate_form(cf)
    if not (cf.satisfies_equations() and check_condition_star(F, sigma) and F.size == len(path)):
        raise AssertionError("reconstructed witness failed re-verification")
    cf = ConjugateForm(G, sigma, taus, exps, _conjugators_of(F))
    return cf, F


def _conjugators_of(F: GroupFunction) -> tuple[int, ...]:
    G = F.group
    hs, h = [], 0
    for g in F.constants[:-1]:
        h = G.mul(h, g)
        hs.append(h)
    return tuple(hs)


def decide_for_sigma(G: FiniteGroup, sigma: int) -> DecisionOutcome:
    bfs = bfs_search(G, sigma)
    states = int(bfs.visited.sum())
    if bfs.reached:
        cf, F = reconstruct_witness(G, sigma, bfs)
        return DecisionOutcome(EXISTS, sigma, int(bfs.depth[bfs.target]), cf, F, states)
    return DecisionOutcome(NO_SOLUTION, sigma, reachable_states=states, certificate=True)


def order3_class_representatives(G: FiniteGroup) -> list[int]:
    """Smallest member of each conjugacy class of order-3 elements."""
    return [c[0] for c in conjugacy_classes(G) if G.orders[c[0]] == 3]


def decide_group(G: FiniteGroup) -> GroupVerdict:
    reps = order3_class_representatives(G)
    if not reps:
        return GroupVerdict(G, [], reason="no order-3 element")
    return GroupVerdict(G, [(s, decide_for_sigma(G, s)) for s in reps])


def brute_force_oracle(G: FiniteGroup, sigma: int, max_len: int = 4) -> int | None:
    """Least l <= max_len admitting a conjugate form, by plain enumeration.

    Every tuple ((t1, e1), ..., (tl, el)) is enumerated without any state
    merging; the two products are formed directly from the tuple. Shares no
    code with the breadth-first search.
    """
    if max_len > 5:
        raise ValueError("max_len is limited to 5")
    tbl = G.table
    n = G.order
    if sigma == 0 or tbl[tbl[sigma, sigma], sigma] != 0:
        raise ConditionError("sigma does not have order 3")
    inv = np.argmin(tbl, axis=1)
    conjugates = sorted({int(tbl[tbl[g, sigma], inv[g]]) for g in range(n)})
    sq = {t: int(tbl[t, t]) for t in conjugates}
    # t^e and t^2e for e = 1, 2 (t has order 3, so t^4 = t)
    firsts = np.array(conjugates + [sq[t] for t in conjugates])
    seconds = np.array([sq[t] for t in conjugates] + conjugates)
    for length in range(1, max_len + 1):
        if length == 1:
            a, b = firsts, seconds
            if np.any((a == sigma) & (b == sigma)):
                return 1
            continue
        # loop over the first factor to keep arrays small, vectorize the rest
        for f0, s0 in zip(firsts.tolist(), seconds.tolist()):
            a = np.array([f0])
            b = np.array([s0])
            for _ in range(length - 1):
                a = tbl[a[:, None], firsts[None, :]].ravel()
                b = tbl[b[:, None], seconds[None, :]].ravel()
            if np.any((a == sigma) & (b == sigma)):
                return length
    return None
