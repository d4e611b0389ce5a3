from __future__ import annotations

import pytest

from cochar.chevalley import build_algebra
from cochar.cocharacters import Cocharacter, parabolic_of
from cochar.dagger import (
    DIST,
    INCONCLUSIVE,
    RANK,
    REDUCTION,
    check_dagger,
    direct_definition_witness,
    distinguished_in_levi,
    dumps,
    fuse,
    is_associated,
    optimal_parabolic,
    reports_tsv,
    run_dagger,
    table1_checks,
    table1_lookup,
    table1_reference,
    verdict_of,
)
from cochar.orbits import get_catalog
from cochar.rootdata import standard_levi, whole_system
from cochar.subgroups import named_embedding


def regular(alg):
    e = alg.zero()
    for i in range(alg.sys.rank):
        e = e + alg.e(alg.sys.simple_root(i))
    return e


def test_is_associated_examples():
    a2 = build_algebra("A2")
    e = a2.e((1, 0))
    ok, w = is_associated(e, Cocharacter((2, -1), a2.sys))
    assert ok and w.triple.check()
    ok, _ = is_associated(e, Cocharacter((2, 0), a2.sys))
    assert not ok
    g2 = build_algebra("G2")
    assert is_associated(regular(g2), Cocharacter((2, 2), g2.sys))[0]
    assert is_associated(g2.zero(), Cocharacter((0, 0), g2.sys))[0]
    assert not is_associated(g2.zero(), Cocharacter((1, 0), g2.sys))[0]


def test_direct_definition_examples():
    a2 = build_algebra("A2")
    spec = direct_definition_witness(a2.e((1, 0)), Cocharacter((2, -1), a2.sys))
    assert spec.roots == frozenset({(1, 0), (-1, 0)})
    f4 = build_algebra("F4")
    spec = direct_definition_witness(regular(f4), Cocharacter((2, 2, 2, 2), f4.sys))
    assert spec.roots == frozenset(f4.sys.roots)
    o = get_catalog("F4").find("A1+~A1")
    spec = direct_definition_witness(o.representative, o.triple.cocharacter())
    assert spec is not None and spec.name == "A1+~A1"


def test_distinguished_in_levi():
    f4 = build_algebra("F4")
    assert distinguished_in_levi(regular(f4), whole_system(f4.sys))
    assert not distinguished_in_levi(f4.e(f4.sys.simple_root(0)), whole_system(f4.sys))
    assert distinguished_in_levi(f4.e(f4.sys.simple_root(0)), standard_levi(f4.sys, [0]))


def test_fusion_examples():
    emb = named_embedding("E6/F4-folding")
    f4 = get_catalog("F4")
    assert fuse(emb, f4.find("F4(a2)")).label == "E6(a3)"
    assert fuse(emb, f4.find("~A2")).label == "2A2"
    assert fuse(emb, f4.find("C3")).label == "A5"
    assert fuse(emb, f4.find("0")).label == "0"


def test_check_dagger_examples():
    emb = named_embedding("E6/F4-folding")
    f4 = get_catalog("F4")
    r = check_dagger(emb, f4.find("~A2"))
    assert r.forward_ok and r.rank_H == r.rank_G == 2 and r.verdict != INCONCLUSIVE
    r = check_dagger(emb, f4.find("F4(a2)"))
    assert r.distinguished_in_G and r.verdict == DIST
    r = check_dagger(emb, f4.find("0"))
    assert r.lambda_H == [0, 0, 0, 0] and r.verdict != INCONCLUSIVE


def test_verdict_priority():
    assert verdict_of(True, True, True) == DIST
    assert verdict_of(True, True, False) == RANK
    assert verdict_of(True, False, False) == REDUCTION
    # distinguished or rank condition verify on their own
    assert verdict_of(False, True, True) == DIST
    assert verdict_of(False, True, False) == RANK
    assert verdict_of(False, False, False) == INCONCLUSIVE


@pytest.mark.parametrize("ident", ["D4/G2-triality", "D4/B3-folding", "F4/levi-234", "F4/B4"])
def test_suite_properties(ident):
    emb = named_embedding(ident)
    for r in run_dagger(emb):
        assert r.forward_ok and r.reduction_shadow_ok
        assert r.rank_H <= r.rank_G
        if r.distinguished_in_G:
            assert r.distinguished_in_H
        assert r.verdict != INCONCLUSIVE


def test_forward_inclusion_inside_h():
    emb = named_embedding("D4/G2-triality")
    for o in get_catalog("G2").orbits:
        assert is_associated(o.representative, o.triple.cocharacter(), emb.sub_alg)[0]


def test_run_dagger_parallel_matches_serial():
    emb = named_embedding("D4/G2-triality")
    a = [r.to_json() for r in run_dagger(emb, jobs=1)]
    b = [r.to_json() for r in run_dagger(emb, jobs=2)]
    assert a == b


def test_report_serialization():
    reports = run_dagger(named_embedding("D4/G2-triality"), orbit="G2")
    assert len(reports) == 1
    lines = reports_tsv(reports).strip().splitlines()
    assert len(lines) == 2 and len(set(len(l.split("\t")) for l in lines)) == 1
    assert '"verdict"' in dumps(reports)


def test_optimal_parabolic():
    a2 = build_algebra("A2")
    assert optimal_parabolic(a2.zero()) == frozenset(a2.sys.roots)
    assert optimal_parabolic(regular(a2)) == frozenset(r for r in a2.sys.roots if sum(r) > 0)
    p = optimal_parabolic(a2.e((1, 0)), dominant=True)
    assert p == parabolic_of(Cocharacter((1, 1), a2.sys))


def test_table1_reference_and_lookup():
    assert table1_reference() == [
        ("1", "1"), ("A1", "A1~A1"), ("~A1", "~A2A1"), ("G2(a1)", "F4(a3)"), ("G2", "F4(a1)"),
    ]
    assert table1_lookup("G2(a1)") == "F4(a3)"
    assert table1_lookup("A1") == "A1~A1"
    assert table1_lookup("1") == "1"


def test_table1_checks():
    rows = table1_checks()
    assert all(r["ok"] for r in rows)
    assert all(r["G2_side"] == "reference only" for r in rows)


@pytest.mark.parametrize("name", ["G2", "F4"])
def test_centralizer_splits_along_grading(name):
    from cochar.chevalley import Subalgebra, centralizer
    from cochar.cocharacters import grade

    cat = get_catalog(name)
    alg = cat.alg
    for o in cat.orbits:
        if o.representative.is_zero():
            continue
        g = grade(alg, o.triple.cocharacter())
        pos = [x for j in g.by_degree if j > 0 for x in g.piece(j).basis_elements]
        c0 = centralizer(o.representative, g.piece(0)).dim
        cpos = centralizer(o.representative, Subalgebra(alg, pos, check=False)).dim
        assert c0 + cpos == o.centralizer_dim
