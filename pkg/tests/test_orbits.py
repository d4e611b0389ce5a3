from __future__ import annotations

import json
from collections import Counter

import pytest

from cochar import orbits as orbits_mod
from cochar.chevalley import build_algebra, centralizer
from cochar.cocharacters import grade
from cochar.orbits import (
    NotInCartanFrame,
    catalog_from_json,
    catalog_to_json,
    enumerate_orbits,
    get_catalog,
    identify_orbit,
    is_distinguished,
    is_nilpotent,
    jacobson_morozov,
    normalize_label,
    weighted_diagram,
)


# ------------------------------------------------------------ partition oracles
def partitions(n, max_part=None):
    max_part = n if max_part is None else max_part
    if n == 0:
        yield ()
        return
    for k in range(min(n, max_part), 0, -1):
        for rest in partitions(n - k, k):
            yield (k,) + rest


def transpose(p):
    return [sum(1 for x in p if x > i) for i in range(p[0])] if p else []


def h_eigenvalues(p):
    return sorted((k - 1 - 2 * i for k in p for i in range(k)), reverse=True)


def classical_oracle(kind, n):
    """(centralizer dim, diagram) multiset from Jordan types."""
    out = []
    if kind == "A":
        for p in partitions(n + 1):
            h = h_eigenvalues(p)
            out.append((sum(x * x for x in transpose(p)) - 1, tuple(h[i] - h[i + 1] for i in range(n))))
        return Counter(out)
    size = 2 * n + 1 if kind == "B" else 2 * n
    for p in partitions(size):
        mult = Counter(p)
        if kind in "BD" and any(k % 2 == 0 and m % 2 for k, m in mult.items()):
            continue
        if kind == "C" and any(k % 2 == 1 and m % 2 for k, m in mult.items()):
            continue
        odd = sum(1 for k in p if k % 2)
        sq = sum(x * x for x in transpose(p))
        c = (sq + odd) // 2 if kind == "C" else (sq - odd) // 2
        h = h_eigenvalues(p)[:n]
        diag = [h[i] - h[i + 1] for i in range(n - 1)]
        if kind == "B":
            diag.append(h[n - 1])
        elif kind == "C":
            diag.append(2 * h[n - 1])
        else:
            diag.append(h[n - 2] + h[n - 1])
        diag = tuple(diag)
        if kind == "D" and all(k % 2 == 0 for k in p):
            # very even: two classes, swapped by the outer automorphism
            out.append((c, diag))
            out.append((c, diag[:-2] + (diag[-1], diag[-2])))
        else:
            out.append((c, diag))
    return Counter(out)


@pytest.mark.parametrize(
    "name", ["A1", "A2", "A3", "A4", "A5", "B2", "B3", "B4", "C3", "C4", "D4", "D5"]
)
def test_classical_catalogs_match_partition_oracle(name):
    cat = get_catalog(name)
    got = Counter((o.centralizer_dim, tuple(o.diagram)) for o in cat.orbits)
    assert got == classical_oracle(name[0], int(name[1:]))


def test_catalog_sizes():
    assert len(get_catalog("G2").orbits) == 5
    assert len(get_catalog("A2").orbits) == 3
    assert len(get_catalog("D4").orbits) == 12
    assert len(get_catalog("F4").orbits) == 16


def test_g2_and_f4_labels():
    assert get_catalog("G2").labels() == ["0", "A1", "~A1", "G2(a1)", "G2"]
    f4 = get_catalog("F4")
    for lab in ("F4(a3)", "F4(a1)", "~A2+A1", "A1+~A1", "F4(a2)", "~A2", "C3"):
        f4.find(lab)
    e6 = get_catalog("E6")
    for lab in ("E6(a3)", "2A2", "A5"):
        e6.find(lab)


def test_exceptional_distinguished_counts():
    # standard counts of distinguished classes: G2 2, F4 4, E6 3
    for name, k in (("G2", 2), ("F4", 4), ("E6", 3)):
        assert sum(o.distinguished for o in get_catalog(name).orbits) == k


def test_find_accepts_typeset_labels():
    f4 = get_catalog("F4")
    assert f4.find("\\tilde{A}_2 A_1").label == "~A2+A1"
    assert f4.find("Ã2A1").label == "~A2+A1"
    assert f4.find("1").label == "0"
    with pytest.raises(KeyError):
        f4.find("E8")


def test_normalize_label():
    assert normalize_label("$F_4(a_3)$") == "F4(a3)"
    assert normalize_label("A1 + ~A1") == "A1~A1"
    assert normalize_label("1") == "0"


# ------------------------------------------------------------ JM and diagrams
def test_jacobson_morozov_examples():
    a2 = build_algebra("A2")
    t = jacobson_morozov(a2.zero())
    assert t.e.is_zero() and t.h.is_zero() and t.f.is_zero()
    t = jacobson_morozov(a2.e((1, 0)))
    assert t.h == a2.h(0) and t.f == a2.e((-1, 0))
    assert weighted_diagram(t) == (1, 1)
    t = jacobson_morozov(a2.e((1, 0)) + a2.e((0, 1)))
    assert t.check()
    assert t.cocharacter().pairings == (2, 2)
    assert weighted_diagram(t) == (2, 2)


def test_jacobson_morozov_errors():
    a2 = build_algebra("A2")
    with pytest.raises(ValueError):
        jacobson_morozov(a2.h(0))
    with pytest.raises(ValueError):
        jacobson_morozov(a2.e((1, 0)) + a2.e((-1, 0)))
    e = a2.e((1, 0)) + a2.e((0, 1)) + a2.e((1, 1))
    assert is_nilpotent(e)
    with pytest.raises(NotInCartanFrame):
        jacobson_morozov(e)


@pytest.mark.parametrize("name", ["G2", "F4", "E6"])
def test_catalog_invariants(name):
    cat = get_catalog(name)
    alg = cat.alg
    diagrams = set()
    for o in cat.orbits:
        assert o.triple.check()
        assert set(o.diagram) <= {0, 1, 2}
        diagrams.add(tuple(o.diagram))
        g = grade(alg, o.cocharacter())
        assert g.dim(0) >= g.dim(2)
        assert (g.dim(0) == g.dim(2)) == o.distinguished == (o.reductive_rank == 0)
        assert o.centralizer_dim == g.dim(0) + g.dim(1)
        assert o.dim_orbit == alg.dimension - o.centralizer_dim
        assert o.dim_orbit % 2 == 0
        if not o.representative.is_zero():
            assert all(o.triple.cocharacter().degree(b) == 2 for b in o.representative.support_roots())
            assert centralizer(o.representative).dim == o.centralizer_dim
        assert identify_orbit(o.representative, cat) is o
        assert is_distinguished(o, alg) == o.distinguished
    assert len(diagrams) == len(cat.orbits)


def test_distinguished_examples():
    g2 = get_catalog("G2")
    assert is_distinguished(g2.find("G2"))
    f4 = get_catalog("F4")
    assert f4.find("F4(a3)").distinguished and f4.find("F4(a1)").distinguished
    assert not get_catalog("A2").find("A1").distinguished


def test_identify_zero_and_regular():
    cat = get_catalog("F4")
    alg = cat.alg
    assert identify_orbit(alg.zero(), cat).label == "0"
    e = alg.zero()
    for i in range(4):
        e = e + alg.e(alg.sys.simple_root(i), i + 2)
    assert identify_orbit(e, cat).label == "F4"


def test_product_catalog():
    cat = get_catalog("A1xA2")
    assert len(cat.orbits) == 6
    assert "A1x0" in cat.labels()


def test_parallel_enumeration_matches_serial():
    alg = build_algebra("B3")
    a = enumerate_orbits(alg, seed=0, jobs=1)
    b = enumerate_orbits(alg, seed=0, jobs=2)
    assert catalog_to_json(a) == catalog_to_json(b)


def test_cache_roundtrip(tmp_path, monkeypatch):
    orbits_mod._MEMO.clear()
    first = get_catalog("G2", directory=str(tmp_path))
    assert first.source == "computed"
    path = tmp_path / "catalog-G2.json"
    doc = json.loads(path.read_text())
    assert {"artifact_version", "system", "seed"} <= set(doc)
    orbits_mod._MEMO.clear()
    second = get_catalog("G2", directory=str(tmp_path))
    assert second.source == "cache"
    assert catalog_to_json(first) == catalog_to_json(second)
    assert get_catalog("G2", directory=str(tmp_path)).source == "memory"


def test_corrupted_cache_is_recomputed(tmp_path):
    orbits_mod._MEMO.clear()
    get_catalog("A2", directory=str(tmp_path))
    path = tmp_path / "catalog-A2.json"
    doc = json.loads(path.read_text())
    # break an sl(2) relation
    doc["orbits"][1]["f"] = {k: "5" for k in doc["orbits"][1]["f"]}
    path.write_text(json.dumps(doc))
    orbits_mod._MEMO.clear()
    cat = get_catalog("A2", directory=str(tmp_path))
    assert cat.source == "computed"
    with pytest.raises(ValueError):
        catalog_from_json(doc)
    orbits_mod._MEMO.clear()
