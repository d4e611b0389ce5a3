"""Pure-Python modular row reduction.

Same contract as the compiled ``_kernels`` module; used when the extension
is not built or when ``COCHAR_PURE_PYTHON`` is set.
"""

from __future__ import annotations


def rref_mod(rows, p):
    """Reduced row echelon form of an integer matrix over GF(p).

    Returns ``(rref_rows, pivots)`` where ``rref_rows`` holds only the
    nonzero rows (one per pivot) with entries in ``[0, p)``.
    """
    a = [[x % p for x in row] for row in rows]
    m = len(a)
    n = len(a[0]) if m else 0
    pivots = []
    r = 0
    for c in range(n):
        if r == m:
            break
        piv = -1
        for i in range(r, m):
            if a[i][c]:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            a[r], a[piv] = a[piv], a[r]
        row = a[r]
        inv = pow(row[c], p - 2, p)
        if inv != 1:
            for j in range(c, n):
                if row[j]:
                    row[j] = row[j] * inv % p
        nz = [j for j in range(c, n) if row[j]]
        for i in range(m):
            if i == r:
                continue
            other = a[i]
            f = other[c]
            if f:
                for j in nz:
                    other[j] = (other[j] - f * row[j]) % p
        pivots.append(c)
        r += 1
    return a[:r], pivots


def rank_mod(rows, p):
    """Rank of an integer matrix over GF(p)."""
    return len(rref_mod(rows, p)[1])
