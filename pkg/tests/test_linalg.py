from __future__ import annotations

import random
from fractions import Fraction as Q

from hypothesis import given, settings
from hypothesis import strategies as st

from cochar import _kernels_py, kernels, linalg

small_int = st.integers(min_value=-6, max_value=6)


def matrices(max_rows=7, max_cols=7):
    return st.integers(1, max_cols).flatmap(
        lambda n: st.lists(st.lists(small_int, min_size=n, max_size=n), min_size=1, max_size=max_rows)
    )


def fraction_rank(rows):
    a = [[Q(x) for x in r] for r in rows]
    rank = 0
    ncols = len(a[0])
    for c in range(ncols):
        piv = next((i for i in range(rank, len(a)) if a[i][c]), None)
        if piv is None:
            continue
        a[rank], a[piv] = a[piv], a[rank]
        for i in range(len(a)):
            if i != rank and a[i][c]:
                f = a[i][c] / a[rank][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[rank])]
        rank += 1
    return rank


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_rank_matches_fraction_elimination(m):
    assert linalg.rank(m, len(m[0])) == fraction_rank(m)


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_nullspace_is_kernel_of_right_size(m):
    n = len(m[0])
    ker = linalg.nullspace(m, n)
    assert len(ker) == n - fraction_rank(m)
    for v in ker:
        assert all(sum(a * x for a, x in zip(row, v)) == 0 for row in m)


@settings(max_examples=100, deadline=None)
@given(matrices(), st.lists(small_int, min_size=7, max_size=7))
def test_solve_returns_solution_when_consistent(m, x):
    n = len(m[0])
    x = x[:n]
    rhs = [sum(a * b for a, b in zip(row, x)) for row in m]
    sol = linalg.solve(m, rhs, n)
    assert sol is not None
    assert [sum(a * b for a, b in zip(row, sol)) for row in m] == rhs


def test_solve_detects_inconsistency():
    assert linalg.solve([[1, 1], [2, 2]], [1, 3], 2) is None


def test_large_entries_fall_back_exactly():
    big = 10**40
    m = [[big, 1], [big + 1, 1], [1, Q(1, 3)]]
    assert linalg.rank(m, 2) == fraction_rank([[Q(x) for x in r] for r in m])


def test_in_span_coefficients():
    c = linalg.in_span([[1, 0, 1], [0, 1, 1]], [2, 3, 5])
    assert c == [2, 3]
    assert linalg.in_span([[1, 0, 1]], [0, 1, 0]) is None


def test_backends_agree():
    rng = random.Random(7)
    p = linalg.PRIMES[0]
    for _ in range(40):
        m = [[rng.randint(-9, 9) for _ in range(12)] for _ in range(rng.randint(1, 12))]
        assert kernels.rank_mod(m, p) == _kernels_py.rank_mod(m, p)
        assert kernels.rref_mod(m, p) == _kernels_py.rref_mod(m, p)
    assert kernels.BACKEND in ("cython", "python")


def test_pure_python_backend_end_to_end(tmp_path):
    import json
    import os
    import subprocess
    import sys

    code = (
        "import json, cochar.kernels as k; from cochar.orbits import get_catalog;"
        "c = get_catalog('F4', use_cache=False);"
        "print(json.dumps([k.BACKEND, [[o.label, list(o.diagram), o.reductive_rank] for o in c.orbits]]))"
    )
    outs = []
    for flag in ("1", ""):
        env = dict(os.environ, COCHAR_PURE_PYTHON=flag, COCHAR_CACHE_DIR=str(tmp_path))
        res = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
        outs.append(json.loads(res.stdout))
    assert outs[0][0] == "python"
    assert outs[0][1] == outs[1][1]
