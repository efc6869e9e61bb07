import pytest

from grpcompress import group as grp
from grpcompress.catalog import (KNOWN_NONABELIAN_COUNTS, ORDER_48_ABELIAN, Atom, Direct, Semi,
                                 ShapeError, abelian_expressions, build_catalog, count_check,
                                 dump_manifest, format_shape, load_manifest, parse_shape, realize,
                                 realize_shape, shape_order)

# non-abelian class counts per order, as published
KNOWN_COUNTS = {6: 1, 12: 3, 18: 3, 21: 1, 24: 12, 27: 2, 30: 3, 36: 10, 39: 1, 42: 5, 48: 47, 54: 12, 57: 1, 60: 11}


def _partition_count(k):
    # derived by counting partitions directly
    def p(n, m):
        if n == 0:
            return 1
        return sum(p(n - i, i) for i in range(1, min(n, m) + 1))
    return p(k, k)


def _abelian_count(n):
    out, p = 1, 2
    while n > 1:
        k = 0
        while n % p == 0:
            n //= p
            k += 1
        out *= _partition_count(k)
        p += 1
    return out


def test_parse_structure():
    assert parse_shape("(C3 x D8) : C2") == Semi(Direct(Atom("C", 3), Atom("D", 8)), Atom("C", 2))
    assert parse_shape("C2 x C2 x C3") == Direct(Direct(Atom("C", 2), Atom("C", 2)), Atom("C", 3))
    assert parse_shape("[SL(2,3) : C2]") == Semi(Atom("SL(2,3)"), Atom("C", 2))
    assert parse_shape("C2 . S4 = SL(2,3) . C2") == Atom("2O")


@pytest.mark.parametrize("text", ["C3 x C4 : C2", "C3 x", "(C3", "C3)", "X9", "D7", "S7", "C0", "C4 . C2",
                                  "C5 x S6"])
def test_parse_errors(text):
    with pytest.raises(ShapeError):
        parse_shape(text)


@pytest.mark.parametrize("text, canonical", [
    ("C3 : C4", "C3 : C4"), ("(C3 x C3) : C4", "(C3 x C3) : C4"),
    ("C2 x ((C3 x C3) : C3)", "C2 x ((C3 x C3) : C3)"),
    ("((C3 x C3) : C3) : C2", "(C3 x C3) : C3 : C2"), ("C2 x C2 x C2 x S3", "C2 x C2 x C2 x S3"),
])
def test_format_roundtrip(text, canonical):
    e = parse_shape(text)
    assert format_shape(e) == canonical
    assert parse_shape(canonical) == e


def test_shape_order():
    assert shape_order(parse_shape("(C2 x C2 x C2 x C2) : C3")) == 48
    assert shape_order(parse_shape("A5")) == 60
    assert shape_order(parse_shape("QD16 x C3")) == 48


def test_realize_merges_actions():
    groups = realize_shape(parse_shape("C7 : C3"))
    assert all(g.order == 21 for g in groups)
    assert all(grp.is_isomorphic(g, groups[0]) is not None for g in groups)
    assert realize_shape(parse_shape("C3 : C3")) == []


def test_abelian_expressions_cover_every_abelian_group():
    for n in range(3, 61, 3):
        exprs = abelian_expressions(n)
        assert len(exprs) == _abelian_count(n)
        groups = [realize_shape(parse_shape(e))[0] for e in exprs]
        for i, a in enumerate(groups):
            assert a.order == n and grp.is_abelian(a)
            for b in groups[:i]:
                assert grp.is_isomorphic(a, b) is None


def test_order_30_uses_corrected_expression():
    entry = next(e for e in build_catalog(30) if e.text == "C5 x S3")
    assert entry.note and "C5 x S6" in entry.note
    assert realize(entry)[0].order == 30


def test_known_class_counts(classes_by_order):
    assert KNOWN_NONABELIAN_COUNTS == KNOWN_COUNTS
    for n in range(3, 61, 3):
        computed, expected, ok = count_check(n, classes_by_order[n])
        assert ok, (n, computed, expected)
        assert computed == KNOWN_COUNTS.get(n, 0)


def test_abelian_classes_per_order(classes_by_order):
    for n, classes in classes_by_order.items():
        assert sum(c.abelian for c in classes) == _abelian_count(n)
    assert len(ORDER_48_ABELIAN) == _abelian_count(48)


def test_classes_are_pairwise_non_isomorphic(classes_by_order):
    for n, classes in classes_by_order.items():
        for i, a in enumerate(classes):
            for b in classes[:i]:
                if grp.group_invariants(a.rep) == grp.group_invariants(b.rep):
                    assert grp.is_isomorphic(a.rep, b.rep) is None, (a.provenance, b.provenance)


def test_named_groups_present(classes_by_order):
    def has(n, G):
        return any(grp.is_isomorphic(c.rep, G) is not None for c in classes_by_order[n])
    assert has(48, grp.binary_octahedral())
    assert has(48, grp.gl2_f3())
    assert has(60, grp.alternating(5))
    assert has(24, grp.symmetric(4))
    assert has(24, grp.sl2_f3())


def test_order_48_sources(classes_by_order):
    srcs = {s for c in classes_by_order[48] for s in c.sources}
    assert srcs == {f"SmallGroup(48,{k})" for k in range(1, 53)}


def test_manifest_roundtrip(tmp_path):
    entries = build_catalog(30)
    path = tmp_path / "manifest.tsv"
    dump_manifest(entries, path)
    back = load_manifest(path)
    assert [(e.order, e.text, e.source, e.note) for e in back] == [
        (e.order, e.text, e.source, e.note) for e in entries]


def test_manifest_rejects_wrong_order(tmp_path):
    path = tmp_path / "bad.tsv"
    path.write_text("12\tC3 : C8\tmanual\n")
    with pytest.raises(Exception):
        realize(load_manifest(path)[0])
    path.write_text("12\tC3 : C4\n")
    with pytest.raises(ShapeError):
        load_manifest(path)
