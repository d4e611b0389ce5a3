from __future__ import annotations

import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cochar.rootdata import (
    SimpleType,
    apply_word,
    build_root_system,
    extended_diagram,
    good_primes,
    is_closed_subsystem,
    parse_type,
    recognize,
    root_system_from_json,
    root_system_to_json,
    standard_levi,
    subsystem_from_json,
    subsystem_to_json,
    to_dominant,
)
from cochar.subgroups import borel_de_siebenthal

# closed-form root counts |Phi| = dim g - rank
ROOT_COUNT = {
    "A1": 2, "A2": 6, "A3": 12, "A4": 20, "B2": 8, "B3": 18, "C3": 18, "B4": 32,
    "C4": 32, "D4": 24, "D5": 40, "G2": 12, "F4": 48, "E6": 72, "E7": 126, "E8": 240,
}


@pytest.mark.parametrize("name,count", sorted(ROOT_COUNT.items()))
def test_root_counts(name, count):
    sys = build_root_system(name)
    assert len(sys.roots) == count
    assert sys.positive_count == count // 2
    # negatives follow positives in the same order
    n = sys.positive_count
    for k, r in enumerate(sys.positive_roots):
        assert sys.roots[k + n] == tuple(-c for c in r)


def test_g2_and_f4_highest_roots():
    assert build_root_system("G2").highest_roots == ((3, 2),)
    assert build_root_system("F4").highest_roots == ((2, 3, 4, 2),)
    assert build_root_system("A1").cartan == [[2]]


def test_cartan_convention():
    # A[i][j] = <alpha_j, alpha_i^vee>; alpha_1 short in G2, alpha_3 short in F4
    assert build_root_system("G2").cartan == [[2, -3], [-1, 2]]
    f4 = build_root_system("F4").cartan
    assert f4[1][2] == -1 and f4[2][1] == -2
    b2 = build_root_system("B2").cartan
    assert b2 == [[2, -1], [-2, 2]]


def test_bad_primes():
    for n in range(1, 6):
        assert good_primes(build_root_system(f"A{n}")).bad == frozenset()
    assert good_primes(build_root_system("G2")).bad == {2, 3}
    assert good_primes(build_root_system("F4")).bad == {2, 3}
    assert good_primes(build_root_system("E6")).bad == {2, 3}
    assert good_primes(build_root_system("E8")).bad == {2, 3, 5}
    assert good_primes(build_root_system("F4")).is_good(7)


def test_to_dominant_examples():
    assert to_dominant(build_root_system("G2"), (2, 2)) == ((2, 2), [])
    dom, word = to_dominant(build_root_system("A2"), (2, -1))
    assert dom == (1, 1)
    assert tuple(apply_word(build_root_system("A2"), (2, -1), word)) == (1, 1)
    assert to_dominant(build_root_system("E6"), (0,) * 6)[0] == (0,) * 6


@settings(max_examples=60, deadline=None)
@given(
    st.sampled_from(["A3", "B3", "C3", "G2", "F4", "D4"]),
    st.lists(st.integers(0, 3), min_size=4, max_size=4),
    st.lists(st.integers(0, 3), max_size=25),
)
def test_to_dominant_path_independent(name, v, word):
    sys = build_root_system(name)
    v = tuple(v[: sys.rank])
    word = [i % sys.rank for i in word]
    scrambled = apply_word(sys, v, word)
    dom, w = to_dominant(sys, scrambled)
    assert dom == v
    assert to_dominant(sys, dom) == (dom, [])


def test_to_dominant_brute_force_a2():
    sys = build_root_system("A2")
    rng = random.Random(3)
    for _ in range(30):
        v = (rng.randint(-5, 5), rng.randint(-5, 5))
        orbit = set()
        for length in range(4):
            for word in itertools.product(range(2), repeat=length):
                orbit.add(tuple(apply_word(sys, v, word)))
        dominant = [u for u in orbit if all(x >= 0 for x in u)]
        assert len(dominant) == 1
        assert to_dominant(sys, v)[0] == dominant[0]


def test_extended_diagrams():
    f4 = extended_diagram(build_root_system("F4"))
    assert tuple(f4.marks) == (1, 2, 3, 4, 2)
    a1 = extended_diagram(build_root_system("A1"))
    assert tuple(a1.marks) == (1, 1)
    assert len(a1.edges()) == 1
    assert 6 in extended_diagram(build_root_system("E8")).marks


def test_closed_subsystems():
    g2 = build_root_system("G2")
    long_roots = [r for r in g2.roots if not g2.is_short(r)]
    assert len(long_roots) == 6
    assert is_closed_subsystem(long_roots, g2)
    a2 = build_root_system("A2")
    assert is_closed_subsystem([(1, 0), (-1, 0)], a2)
    assert not is_closed_subsystem([(1, 0), (0, 1)], a2)


@pytest.mark.parametrize("name", ["A4", "B3", "C3", "D4", "D5", "G2", "F4", "E6", "E7"])
def test_recognize_roundtrip(name):
    sys = build_root_system(name)
    [(t, nodes)] = recognize(sys.cartan)
    assert t == sys.components[0]
    assert list(nodes) == list(range(sys.rank))


def test_parse_type():
    assert parse_type("D4xD4") == (SimpleType("D", 4), SimpleType("D", 4))
    for bad in ("Z3", "B1", "D2", "E9", "G3", ""):
        with pytest.raises(ValueError):
            parse_type(bad)


def test_levi_type_c3_in_f4():
    assert standard_levi(build_root_system("F4"), [1, 2, 3]).name == "C3"


def test_json_roundtrip():
    sys = build_root_system("F4")
    assert root_system_from_json(root_system_to_json(sys)) is sys
    spec = standard_levi(sys, [0, 2])
    back = subsystem_from_json(subsystem_to_json(spec))
    assert back.roots == spec.roots and back.name == spec.name


@pytest.mark.parametrize("name", ["G2", "F4", "E6"])
def test_subsystem_bad_primes_and_closure(name):
    sys = build_root_system(name)
    bad = good_primes(sys).bad
    for node in borel_de_siebenthal(sys):
        assert is_closed_subsystem(node.spec.roots, sys)
        for c in node.spec.components:
            sub = build_root_system(c.type.name)
            assert good_primes(sub).bad <= bad
