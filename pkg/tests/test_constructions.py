from grpcompress.constructions import (A5_CONJUGATORS, A5_PRINTED, A5_TAUS, S5_ADJUSTER, SIGMA,
                                       a5_adjuster, a5_constant_discrepancies, a5_printed_function,
                                       s5_adjuster)
from grpcompress.groupfn import check_condition_star, to_conjugate_form
from grpcompress.perm import Permutation, compose_all, conjugate, inverse, parse_cycles


def P(text):
    return parse_cycles(text, 5)


def _eval_perms(text, x):
    """Evaluate a printed group function with plain permutation arithmetic."""
    factors = []
    for tok in text.split("·"):
        tok = tok.strip()
        if tok == "x":
            factors.append(x)
        elif tok == "x^2":
            factors.append(x * x)
        else:
            factors.append(P(tok))
    return compose_all(factors)


def test_eq1_by_permutation_arithmetic():
    s = P(SIGMA)
    e = Permutation.identity(5)
    assert _eval_perms(S5_ADJUSTER, e) == e
    assert _eval_perms(S5_ADJUSTER, s) == s
    assert _eval_perms(S5_ADJUSTER, s * s) == s


def test_eq1_as_group_function():
    kf = s5_adjuster()
    assert kf.function.size == 6
    assert check_condition_star(kf.function, kf.sigma)


def test_a5_tau_products():
    s = P(SIGMA)
    taus = [P(t) for t in A5_TAUS]
    assert compose_all(taus) == s
    assert compose_all([t * t for t in taus]) == s
    for u, t in zip(A5_CONJUGATORS, taus):
        assert conjugate(P(u), s) == t


def test_a5_simplified_constants_by_permutation_arithmetic():
    us = [P(u) for u in A5_CONJUGATORS]
    consts = [us[0]] + [inverse(a) * b for a, b in zip(us, us[1:])] + [inverse(us[-1])]
    assert consts == [P(c) for c in A5_PRINTED]


def test_a5_function():
    kf = a5_adjuster()
    assert kf.group.order == 60 and kf.function.size == 4
    assert check_condition_star(kf.function, kf.sigma)
    assert a5_constant_discrepancies() == []
    printed = a5_printed_function(kf.group)
    assert printed.constants == kf.function.constants
    cf = to_conjugate_form(kf.function, kf.sigma)
    assert [kf.group.label(t) for t in cf.taus] == list(A5_TAUS)
