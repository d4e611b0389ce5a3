from __future__ import annotations

import pytest

from cochar.chevalley import build_algebra
from cochar.rootdata import (
    build_root_system,
    good_primes,
    is_closed_subsystem,
    standard_levi,
    subsystem_from_roots,
    whole_system,
)
from cochar.subgroups import (
    bds_children,
    borel_de_siebenthal,
    compose,
    deriziotis_check,
    diagonal_embedding,
    diagram_automorphism,
    find_subsystem,
    fixed_point_embedding,
    maximal_subsystems,
    named_embedding,
    regular_embedding,
)


def deletion_oracle(sys):
    """Names from deleting each prime-mark node of the extended diagram."""
    from cochar.rootdata import extended_diagram, subsystem_from_base

    ext = extended_diagram(sys)
    rho = tuple(-c for c in sys.highest_roots[0])
    nodes = [rho] + [sys.simple_root(i) for i in range(sys.rank)]
    out = set()
    for k, m in enumerate(ext.marks):
        if m in (2, 3, 5):
            out.add(subsystem_from_base(sys, [b for j, b in enumerate(nodes) if j != k]).name)
    return out


def test_f4_maximal_subsystems():
    names = {s.name for s in maximal_subsystems(build_root_system("F4"))}
    assert names == {"B4", "A1+C3", "A2+~A2"}
    assert names == deletion_oracle(build_root_system("F4"))


def test_e8_one_step():
    sys = build_root_system("E8")
    names = {n.spec.name for n in borel_de_siebenthal(sys, depth=1, levis=False) if n.depth == 1}
    assert {"D8", "A1+E7"} <= names
    assert {s.name for s in maximal_subsystems(sys)} == deletion_oracle(sys)


def test_a2_has_only_levis():
    nodes = borel_de_siebenthal(build_root_system("A2"))
    assert all(n.levi or n.depth == 0 for n in nodes)
    assert {n.spec.name for n in nodes if n.levi} == {"A1", "T"}


@pytest.mark.parametrize("name", ["G2", "F4", "E6", "B4"])
def test_lattice_properties(name):
    sys = build_root_system(name)
    by_name = {}
    for n in borel_de_siebenthal(sys):
        by_name.setdefault(n.spec.name, n)
        assert is_closed_subsystem(n.spec.roots, sys)
        if n.depth >= 1:
            assert n.deriziotis is True
            assert n.spec.rank == sys.rank


def test_deriziotis_examples():
    f4 = build_root_system("F4")
    whole = whole_system(f4)
    assert deriziotis_check(whole) is False
    a2a2 = find_subsystem(f4, "A2+~A2")
    assert deriziotis_check(a2a2) is True
    for child, _ in bds_children(whole):
        assert deriziotis_check(child)
    with pytest.raises(ValueError):
        deriziotis_check(a2a2, p=3)
    g2 = build_root_system("G2")
    names = {c.name for c, _ in bds_children(whole_system(g2))}
    assert names == {"A2", "A1+~A1"}


def test_regular_embeddings():
    g2 = build_root_system("G2")
    alg = build_algebra(g2)
    long_roots = [r for r in g2.roots if not g2.is_short(r)]
    emb = regular_embedding(subsystem_from_roots(g2, long_roots), alg)
    assert emb.sub_system.name == "A2"
    assert len(emb.images) == 8
    emb.check()
    f4 = build_root_system("F4")
    emb = regular_embedding(standard_levi(f4, [1, 2, 3]), build_algebra(f4))
    assert emb.sub_system.name == "C3"
    assert emb.dim == 18 + 4
    assert emb.subalgebra(check=True).dim == 22
    ident = regular_embedding(whole_system(f4), build_algebra(f4))
    assert ident.dim == 52


def test_foldings():
    e6 = named_embedding("E6/F4-folding")
    assert e6.sub_system.name == "F4" and e6.dim == 52
    tri = named_embedding("D4/G2-triality")
    assert tri.sub_system.name == "G2" and tri.dim == 14
    b3 = named_embedding("D4/B3-folding")
    assert b3.sub_system.name == "B3" and b3.dim == 21
    for emb in (e6, tri, b3):
        emb.check()
        assert emb.subalgebra(check=True).dim == emb.dim


def test_identity_automorphism_fixes_everything():
    sys = build_root_system("A3")
    emb = fixed_point_embedding(diagram_automorphism(sys, (0, 1, 2)))
    assert emb.dim == 15


def test_bad_diagram_symmetry():
    with pytest.raises(ValueError):
        diagram_automorphism(build_root_system("B3"), (2, 1, 0))


def test_diagonal_embeddings():
    a = diagonal_embedding(build_root_system("A1xA1"))
    assert a.sub_system.name == "A1" and a.dim == 3
    d = named_embedding("D4xD4/diagonal")
    assert d.sub_system.name == "D4" and d.dim == 28
    d.check()
    with pytest.raises(ValueError):
        diagonal_embedding(build_root_system("A1xA2"))


def test_e8_diagonal():
    emb = named_embedding("E8/D4xD4-diagonal")
    assert emb.ambient.sys.name == "E8"
    assert emb.sub_system.name == "D4" and emb.dim == 28
    assert emb.subsystem.name == "2D4"
    emb.check()


def test_compose_levi_chain():
    f4 = build_root_system("F4")
    outer = regular_embedding(find_subsystem(f4, "B4"), build_algebra(f4))
    b4 = outer.sub_system
    levi = regular_embedding(standard_levi(b4, [0]), build_algebra(b4))
    chain = compose(outer, levi, id="F4/B4/levi-1", kind="regular")
    chain.check()
    assert chain.sub_system.name == "A1"


def test_named_embedding_errors():
    for bad in ("F4/bogus", "Z7/levi-1", "F4/levi-9", "nothing"):
        with pytest.raises(KeyError):
            named_embedding(bad)


@pytest.mark.parametrize("ident", ["F4/B4", "F4/A1+C3", "F4/A2+~A2"])
def test_maximal_rank_embeddings_respect_bad_primes(ident):
    emb = named_embedding(ident)
    assert emb.subalgebra(check=True).dim == emb.dim
    bad = good_primes(emb.ambient.sys).bad
    assert good_primes(emb.sub_system).bad <= bad
