"""Random compression-function witnesses for property tests."""
from functools import lru_cache

from hypothesis import strategies as st

from grpcompress import group as grp
from grpcompress.decide import bfs_search
from grpcompress.groupfn import ConjugateForm
from grpcompress.perm import parse_cycles


@lru_cache(maxsize=None)
def setting(name):
    G = {"A5": grp.alternating, "S5": grp.symmetric}[name](5)
    sigma = G.index_of_permutation(parse_cycles("(1 2 3)", 5))
    return G, sigma, bfs_search(G, sigma)


def _path_to(bfs, state):
    moves = []
    while state != 0:
        moves.append(bfs.moves[int(bfs.pred_move[state])])
        state = int(bfs.pred_state[state])
    return moves[::-1]


@st.composite
def witnesses(draw, names=("A5", "S5"), max_prefix=6):
    """A random conjugate form: random moves, then a shortest completion.

    Walks are left-translation invariant, so a path from (a, b) to
    (sigma, sigma) is a path from (1, 1) to (a^-1 sigma, b^-1 sigma).
    """
    G, sigma, bfs = setting(draw(st.sampled_from(names)))
    k = draw(st.integers(0, max_prefix))
    prefix = [draw(st.sampled_from(bfs.moves)) for _ in range(k)]
    a = b = 0
    for v, e in prefix:
        a = G.mul(a, G.power(v, e))
        b = G.mul(b, G.power(v, 2 * e))
    rest = G.mul(G.inverse(a), sigma) * G.order + G.mul(G.inverse(b), sigma)
    moves = prefix + _path_to(bfs, rest)
    if not moves:
        moves = _path_to(bfs, bfs.target)
    cf = ConjugateForm(G, sigma, [v for v, _ in moves], [e for _, e in moves])
    assert cf.satisfies_equations()
    return cf
