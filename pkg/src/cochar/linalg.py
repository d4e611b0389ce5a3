"""Exact linear algebra over Q.

Kernels are computed modulo word-size primes by the compiled (or
pure-Python) row-reduction kernel, lifted by Chinese remaindering and
rational reconstruction, and then *verified exactly* over the integers.
A reconstructed basis is accepted only when every vector satisfies
``M v = 0`` exactly; since ``rank_p(M) <= rank_Q(M)`` always holds for an
integer matrix, ``n - rank_p`` verified independent kernel vectors pin the
rational rank down exactly. If no prime certifies within the budget the
computation falls back to Fraction Gauss-Jordan elimination.

Matrices are lists of rows whose entries are ``int`` or ``Fraction``.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt
from typing import Optional, Sequence

from .kernels import rank_mod, rref_mod

Q = Fraction

Matrix = Sequence[Sequence]


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13):
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    # deterministic for n < 3.4e14
    for a in (2, 3, 5, 7, 11, 13, 17):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _prime_list(count: int, start: int = 2**31 - 1) -> list[int]:
    out = []
    n = start
    while len(out) < count:
        if _is_prime(n):
            out.append(n)
        n -= 2
    return out


PRIMES: list[int] = _prime_list(48)
MAX_PRIMES = 40


def _lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


def integer_rows(rows: Matrix) -> list[list[int]]:
    """Scale each row by the lcm of its denominators."""
    out = []
    for row in rows:
        den = 1
        for x in row:
            if type(x) is not int:
                den = _lcm(den, Q(x).denominator)
        if den == 1:
            out.append([int(x) for x in row])
        else:
            out.append([int(x * den) for x in row])
    return out


def primitive(vec: Sequence) -> list[int]:
    """Smallest integer multiple of ``vec`` with coprime entries and the
    first nonzero entry positive."""
    den = 1
    for x in vec:
        den = _lcm(den, Q(x).denominator)
    ints = [int(Q(x) * den) for x in vec]
    g = 0
    for x in ints:
        g = gcd(g, x)
    if g == 0:
        return ints
    ints = [x // g for x in ints]
    for x in ints:
        if x:
            if x < 0:
                ints = [-y for y in ints]
            break
    return ints


def _ratrecon(a: int, m: int) -> Optional[Fraction]:
    a %= m
    if a == 0:
        return Q(0)
    bound = isqrt(m // 2)
    r0, r1 = m, a
    t0, t1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        t0, t1 = t1, t0 - q * t1
    if t1 == 0 or abs(t1) > bound or gcd(r1, t1) != 1:
        return None
    return Q(r1, t1)


def _crt(res_a, mod_a: int, res_b, p: int):
    inv = pow(mod_a, -1, p)
    mod = mod_a * p
    out = []
    for ra, rb in zip(res_a, res_b):
        t = (rb - ra) * inv % p
        out.append((ra + mod_a * t) % mod)
    return out, mod


class _Sparse:
    """Row-sparse integer matrix used for exact verification."""

    __slots__ = ("rows",)

    def __init__(self, rows: list[list[int]]):
        self.rows = [[(j, x) for j, x in enumerate(row) if x] for row in rows]

    def kills(self, vec: list[int]) -> bool:
        for row in self.rows:
            s = 0
            for j, x in row:
                v = vec[j]
                if v:
                    s += x * v
            if s:
                return False
        return True


def _kernel_from_rref(rref: list[list], pivots: list[int], n: int):
    """Kernel basis (one vector per free column) read off an RREF."""
    pivset = set(pivots)
    basis = []
    for f in range(n):
        if f in pivset:
            continue
        v = [0] * n
        v[f] = 1
        for i, c in enumerate(pivots):
            x = rref[i][f]
            if x:
                v[c] = -x
        basis.append(v)
    return basis


def _fraction_rref(rows: list[list[int]], n: int):
    a = [[Q(x) for x in row] for row in rows]
    m = len(a)
    pivots = []
    r = 0
    for c in range(n):
        if r == m:
            break
        piv = next((i for i in range(r, m) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv for x in a[r]]
        for i in range(m):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return a[:r], pivots


def _certified_rref(rows: list[list[int]], n: int):
    """Exact RREF data (pivots, kernel basis) of an integer matrix."""
    m = len(rows)
    if m == 0 or n == 0:
        return [], [[1 if j == i else 0 for j in range(n)] for i in range(n)]
    check = _Sparse(rows)
    best_piv: Optional[list[int]] = None
    acc = None
    mod = 1
    for p in PRIMES[:MAX_PRIMES]:
        rref, piv = rref_mod(rows, p)
        res = [row[f] for row in rref for f in range(n)]
        # over Q the pivot set is the largest, lexicographically earliest one
        if best_piv is None or (len(piv), [-c for c in piv]) > (
            len(best_piv), [-c for c in best_piv]
        ):
            best_piv, acc, mod = piv, res, p
        elif piv == best_piv:
            acc, mod = _crt(acc, mod, res, p)
        else:
            continue
        lifted = []
        ok = True
        for x in acc:
            q = _ratrecon(x, mod)
            if q is None:
                ok = False
                break
            lifted.append(q)
        if not ok:
            continue
        r = len(best_piv)
        rref_q = [lifted[i * n:(i + 1) * n] for i in range(r)]
        kernel = _kernel_from_rref(rref_q, best_piv, n)
        if all(check.kills(primitive(v)) for v in kernel):
            return best_piv, kernel
    rref_q, piv = _fraction_rref(rows, n)
    return piv, _kernel_from_rref(rref_q, piv, n)


def nullspace(rows: Matrix, ncols: Optional[int] = None) -> list[list[Fraction]]:
    """Exact basis of ``{v : M v = 0}``, one vector per free column."""
    n = ncols if ncols is not None else (len(rows[0]) if rows else 0)
    ints = [r for r in integer_rows(rows) if any(r)]
    _, kernel = _certified_rref(ints, n)
    return [[Q(x) for x in v] for v in kernel]


def rank(rows: Matrix, ncols: Optional[int] = None) -> int:
    """Exact rank over Q."""
    n = ncols if ncols is not None else (len(rows[0]) if rows else 0)
    ints = [r for r in integer_rows(rows) if any(r)]
    if not ints or n == 0:
        return 0
    if len(ints) < n:
        ints = [list(col) for col in zip(*ints)]
        n = len(ints[0])
    piv, _ = _certified_rref(ints, n)
    return len(piv)


def solve(rows: Matrix, rhs: Sequence, ncols: Optional[int] = None) -> Optional[list[Fraction]]:
    """One exact solution of ``M x = b`` or ``None`` when inconsistent."""
    n = ncols if ncols is not None else (len(rows[0]) if rows else 0)
    aug = [list(r) + [-Q(b)] for r, b in zip(rows, rhs)]
    if not aug:
        return [Q(0)] * n
    ints = [r for r in integer_rows(aug) if any(r)]
    if not ints:
        return [Q(0)] * n
    piv, kernel = _certified_rref(ints, n + 1)
    if n in piv:
        return None
    for v in kernel:
        if v[n] != 0:
            last = Q(v[n])
            return [Q(x) / last for x in v[:n]]
    raise AssertionError("free right-hand column without kernel vector")


def rank_mod_primes(rows: Matrix, primes: Sequence[int] = (PRIMES[0], PRIMES[1])) -> int:
    """Lower bound for the rational rank: max of ranks modulo ``primes``.

    Rows must be integral.
    """
    if not rows:
        return 0
    return max(rank_mod(rows, p) for p in primes)


def span_basis(vectors: Sequence[Sequence], ncols: int) -> list[list[int]]:
    """Primitive integer basis of the row span (RREF rows)."""
    ints = [r for r in integer_rows(vectors) if any(r)]
    if not ints:
        return []
    # row space = orthogonal complement of the kernel
    kernel = nullspace(ints, ncols)
    if not kernel:
        return [[1 if j == i else 0 for j in range(ncols)] for i in range(ncols)]
    comp = nullspace(kernel, ncols)
    return [primitive(v) for v in comp]


def in_span(vectors: Sequence[Sequence], target: Sequence) -> Optional[list[Fraction]]:
    """Coefficients expressing ``target`` in the span of ``vectors``."""
    if not vectors:
        return [] if not any(target) else None
    cols = list(zip(*vectors))
    return solve([list(c) for c in cols], list(target), len(vectors))
