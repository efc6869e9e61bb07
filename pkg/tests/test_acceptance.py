"""Acceptance criteria, one test each, each printing a single PASS/FAIL line.

Run ``pytest tests/test_acceptance.py -s`` to see the lines inline; they are
also repeated in the terminal summary. ``python tests/test_acceptance.py``
runs the same checks without pytest.
"""
import sys
import time
from itertools import product
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from grpcompress import group as grp                                        # noqa: E402
from grpcompress.catalog import build_catalog, catalog_classes             # noqa: E402
from grpcompress.constructions import (a5_adjuster, a5_constant_discrepancies,  # noqa: E402
                                       s5_adjuster)
from grpcompress.decide import brute_force_oracle, decide_for_sigma, decide_group  # noqa: E402
from grpcompress.gates import encoding, eval_boolean, eval_circuit, parse_circuit, truth_table  # noqa: E402
from grpcompress.perm import parse_cycles                                   # noqa: E402
from grpcompress.verify import (NormalSeries, check_sylow_containment, structural_reasons,  # noqa: E402
                                verify_symmetric_groups, verify_catalog)

RESULTS: list[str] = []
KNOWN_COUNTS = {6: 1, 12: 3, 18: 3, 21: 1, 24: 12, 27: 2, 30: 3, 36: 10, 39: 1, 42: 5, 48: 47, 54: 12, 57: 1, 60: 11}
CIRCUITS = Path(__file__).parent / "circuits"
_STATE: dict = {}


def record(n, title, ok, detail=""):
    line = f"criterion {n} [{'PASS' if ok else 'FAIL'}] {title}" + (f": {detail}" if detail else "")
    RESULTS.append(line)
    print(line)
    return ok


def _classes():
    if "classes" not in _STATE:
        t0 = time.perf_counter()
        _STATE["classes"] = catalog_classes(build_catalog(60))
        _STATE["catalog_seconds"] = time.perf_counter() - t0
    return _STATE["classes"]


def _sigma(G):
    return G.index_of_permutation(parse_cycles("(1 2 3)", 5))


def criterion_1():
    t0 = time.perf_counter()
    classes = _classes()
    report = verify_catalog(classes)
    seconds = time.perf_counter() - t0
    exists = [r for rs in report.records.values() for r in rs if r.verdict == "exists"]
    # every non-existence verdict rests on a fully explored state space
    certified = all(o["outcome"] == "exists" or o["exhausted"]
                    for rs in report.records.values() for r in rs for o in r.sigma_classes)
    total = sum(len(v) for v in report.records.values())
    ok = (len(exists) == 1 and exists[0].is_a5 and certified and seconds < 600
          and sorted(report.records) == list(range(3, 61, 3))
          and all(r.consistent for rs in report.records.values() for r in rs))
    return record(1, "only A5 admits a compression function among groups of order <= 60", ok,
                  f"{total} classes, exists: {[r.provenance for r in exists]}, {seconds:.1f} s")


def criterion_2():
    classes = _classes()
    got = {n: sum(not c.abelian for c in cs) for n, cs in classes.items() if any(not c.abelian for c in cs)}
    ok = got == KNOWN_COUNTS
    bad = {n: (got.get(n), KNOWN_COUNTS.get(n)) for n in set(got) | set(KNOWN_COUNTS) if got.get(n) != KNOWN_COUNTS.get(n)}
    return record(2, "non-abelian class counts per order", ok, "all 14 orders match" if ok else f"mismatch {bad}")


def criterion_3():
    t0 = time.perf_counter()
    sizes = {}
    for name, G in (("A5", grp.alternating(5)), ("S5", grp.symmetric(5))):
        s = _sigma(G)
        sizes[name] = (decide_for_sigma(G, s).minimal_size, brute_force_oracle(G, s, 4))
    seconds = time.perf_counter() - t0
    ok = all(v == (4, 4) for v in sizes.values()) and seconds < 60
    return record(3, "minimal size 4 over A5 and S5, search and enumeration agree", ok,
                  f"{sizes}, {seconds:.1f} s")


def criterion_4():
    kf = a5_adjuster()
    G = kf.group
    from grpcompress.groupfn import check_condition_star
    eqs = kf.form.satisfies_equations()
    conj = all(G.conj[h, kf.sigma] == t for h, t in zip(kf.form.conjugators, kf.form.taus))
    star = check_condition_star(kf.function, kf.sigma)
    disc = a5_constant_discrepancies(G)
    detail = "printed constants match the recomputed ones" if not disc else f"errata: {disc}"
    return record(4, "published A5 witness and its conjugators", eqs and conj and star, detail)


def criterion_5():
    kf = s5_adjuster()
    G, F, s = kf.group, kf.function, kf.sigma
    vals = (F(0), F(s), F(G.mul(s, s)))
    ok = vals == (0, s, s)
    return record(5, "size-6 S5 function maps (1, s, s^2) to (1, s, s)", ok,
                  ", ".join(G.label(v) for v in vals))


def criterion_6():
    fails = []
    for n in range(1, 5):
        if decide_group(grp.symmetric(n)).exists:
            fails.append(f"S{n}")
    abelian = 0
    for n, cs in _classes().items():
        for c in cs:
            if c.abelian:
                abelian += 1
                if decide_group(c.rep).exists:
                    fails.append(c.provenance)
    # abelian groups with no order-3 element are trivially without solutions
    for n in range(1, 61):
        if n % 3 and decide_group(grp.cyclic(n)).exists:
            fails.append(f"C{n}")
    for N in range(2, 61, 2):
        if decide_group(grp.dihedral(N)).exists:
            fails.append(f"D{N}")
    return record(6, "no solution over S1..S4, abelian and dihedral groups", not fails,
                  f"{abelian} abelian classes, 30 dihedral groups" + (f", failures {fails}" if fails else ""))


def criterion_7():
    import test_decide
    import test_groupfn
    import test_verify
    checks = {}

    def attempt(name, fn, *args):
        try:
            fn(*args)
            checks[name] = True
        except AssertionError as exc:          # pragma: no cover - reported below
            checks[name] = False
            print(f"  {name}: {exc}")

    attempt("round trips", test_groupfn.test_conjugate_form_roundtrip)
    attempt("padded round trips", test_groupfn.test_padded_function_roundtrip)
    attempt("push forward along sign", test_groupfn.test_push_forward_along_sign)
    maps = []
    for c in (c for n in sorted(_classes()) for c in _classes()[n]):
        G = c.rep
        if G.order >= 12 and not grp.is_abelian(G):
            subs = [N for N in grp.normal_subgroups(G) if 1 < N.order < G.order]
            if subs:
                maps.append(grp.quotient(G, subs[0])[1])
        if len(maps) == 10:
            break
    attempt("push forward along 10 quotients", test_groupfn.test_push_forward_along_quotients, maps)
    all_classes = [c for n in sorted(_classes()) for c in _classes()[n]]
    attempt("no size <= 2 function", test_decide.test_no_function_of_size_at_most_two_anywhere, all_classes)
    for make in (lambda: grp.alternating(5), lambda: grp.symmetric(4), grp.sl2_f3):
        attempt("conjugation and square symmetry", test_decide.test_conjugation_invariance_and_square_symmetry,
                make)
    attempt("Sylow containment", test_verify.test_sylow_containment_instances, _classes())
    consistent = True
    for c in all_classes:
        if structural_reasons(c.rep) and decide_group(c.rep).exists:
            consistent = False
    checks["structural criteria vs search"] = consistent
    ok = all(checks.values())
    return record(7, "property suites", ok, f"{sum(checks.values())}/{len(checks)} suites hold")


def criterion_8():
    t0 = time.perf_counter()
    expected = {"OR": lambda a, b: a | b, "AND": lambda a, b: a & b, "NAND": lambda a, b: 1 - (a & b),
                "XOR": lambda a, b: a ^ b}
    ok = True
    adder = parse_circuit((CIRCUITS / "full_adder.txt").read_text())
    adder_sum = parse_circuit((CIRCUITS / "full_adder_sum.txt").read_text())
    for name in ("a5", "s5"):
        enc = encoding(name)
        for gate, fn in expected.items():
            ok &= all(out == fn(*ins) for ins, out in truth_table(gate, enc))
        ok &= all(out == 1 - ins[0] for ins, out in truth_table("NOT", enc))
        for bits in product((0, 1), repeat=3):
            ok &= eval_circuit(adder, bits, enc)[0] == sum(bits) // 2 == eval_boolean(adder, bits)
            ok &= eval_circuit(adder_sum, bits, enc)[0] == sum(bits) % 2
    ms = (time.perf_counter() - t0) * 1000
    ok &= ms < 1000
    return record(8, "gate truth tables and full adder over both encodings", ok, f"{ms:.1f} ms")


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6, criterion_7,
            criterion_8]


@pytest.mark.parametrize("criterion", CRITERIA, ids=[f"criterion_{i}" for i in range(1, 9)])
def test_criterion(criterion):
    assert criterion()


def test_symmetric_group_checks_pass():
    # the symmetric-group checks bundled by the verification run
    assert verify_symmetric_groups()["status"] == "pass"


def test_series_helper_available():
    G = grp.symmetric(4)
    A4 = [N for N in grp.normal_subgroups(G) if N.order == 12][0]
    assert check_sylow_containment(NormalSeries(G, (grp.Subgroup(G, range(24)), A4)))


if __name__ == "__main__":
    results = [c() for c in CRITERIA]
    sys.exit(0 if all(results) else 1)
