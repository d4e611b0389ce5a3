"""Chevalley-basis Lie algebras over Q.

Basis order: ``e_beta`` for every root in ``sys.roots`` order (indices
``0 .. |Phi|-1``), then ``h_i = alpha_i^vee`` (indices ``|Phi| .. |Phi|+rank-1``).

Structure constants follow the extraspecial-pair method: positive roots
are totally ordered by :func:`rootdata.root_order_key`; for every
positive non-simple root ``xi`` the extraspecial pair ``(alpha, beta)``
(``alpha`` minimal) gets ``N = +(p+1)``, and every other constant is
forced by the Jacobi identity. The involution convention is
``N_{-a,-b} = -N_{a,b}`` so that ``[e_a, e_{-a}] = h_a`` for all roots.
"""

from __future__ import annotations

import random
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Mapping, Optional, Sequence

from . import linalg
from .rootdata import RootSystem, build_root_system, root_order_key

Q = Fraction


class LieElement:
    """Sparse vector in a Chevalley basis. Zero coefficients are never stored."""

    __slots__ = ("alg", "coeffs")

    def __init__(self, alg: "ChevalleyAlgebra", coeffs: Optional[Mapping[int, object]] = None):
        self.alg = alg
        self.coeffs: dict[int, Fraction] = {}
        if coeffs:
            for k, v in coeffs.items():
                if v:
                    if not 0 <= k < alg.dimension:
                        raise IndexError(f"basis index {k} out of range")
                    self.coeffs[k] = Q(v)

    def _same(self, other: "LieElement") -> None:
        if not isinstance(other, LieElement):
            raise TypeError("expected LieElement")
        if other.alg is not self.alg:
            raise ValueError("elements belong to different algebras")

    def __add__(self, other):
        self._same(other)
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            s = out.get(k, 0) + v
            if s:
                out[k] = s
            else:
                out.pop(k, None)
        return _raw(self.alg, out)

    def __neg__(self):
        return _raw(self.alg, {k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, c):
        c = Q(c)
        if not c:
            return _raw(self.alg, {})
        return _raw(self.alg, {k: v * c for k, v in self.coeffs.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, LieElement) and other.alg is self.alg and other.coeffs == self.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def is_zero(self) -> bool:
        return not self.coeffs

    def dense(self) -> list[Fraction]:
        v = [Q(0)] * self.alg.dimension
        for k, c in self.coeffs.items():
            v[k] = c
        return v

    def support_roots(self) -> list[tuple]:
        n = self.alg.nroots
        return [self.alg.sys.roots[k] for k in sorted(self.coeffs) if k < n]

    def cartan_part(self) -> list[Fraction]:
        n = self.alg.nroots
        return [self.coeffs.get(n + i, Q(0)) for i in range(self.alg.sys.rank)]

    def __repr__(self):
        return self.alg.format(self)


def _raw(alg, coeffs: dict) -> LieElement:
    x = LieElement.__new__(LieElement)
    x.alg = alg
    x.coeffs = coeffs
    return x


class ChevalleyAlgebra:
    """Chevalley basis and structure table of the Lie algebra of ``sys``."""

    def __init__(self, sys: RootSystem, verify: bool = True, seed: int = 0):
        self.sys = sys
        self.nroots = len(sys.roots)
        self.dimension = self.nroots + sys.rank
        self._compute_constants()
        self._build_table()
        if verify:
            self.check_string_lengths()
            if sys.rank <= 4:
                self.check_jacobi_exhaustive()
            else:
                self.check_jacobi_random(100_000, seed)

    # structure constants --------------------------------------------
    def _string_p(self, a: tuple, b: tuple) -> int:
        """Largest p with ``b - p a`` a root."""
        p = 0
        idx = self.sys.index
        while tuple(y - (p + 1) * x for x, y in zip(a, b)) in idx:
            p += 1
        return p

    def _compute_constants(self) -> None:
        sys = self.sys
        idx = sys.index
        pos = sys.positive_roots
        rank_of = {r: k for k, r in enumerate(pos)}
        self._pos: dict[tuple[tuple, tuple], int] = {}
        self.extraspecial: dict[tuple, tuple[tuple, tuple]] = {}
        by_sum: dict[tuple, list] = {}
        for i, a in enumerate(pos):
            for b in pos[i + 1:]:
                s = tuple(x + y for x, y in zip(a, b))
                if s in idx:
                    by_sum.setdefault(s, []).append((a, b))
        for xi in sorted(by_sum, key=root_order_key):
            pairs = sorted(by_sum[xi], key=lambda ab: (rank_of[ab[0]], rank_of[ab[1]]))
            a, b = pairs[0]
            self.extraspecial[xi] = (a, b)
            self._set_pos(a, b, self._string_p(a, b) + 1)
            nxi = sys.norm(xi)
            n_ab = self._pos[(a, b)]
            for g, d in pairs[1:]:
                total = Q(0)
                bg = tuple(x - y for x, y in zip(b, g))
                if bg in idx:
                    total += Q(self.N(b, _neg(g)) * self.N(a, _neg(d)), sys.norm(bg))
                ag = tuple(x - y for x, y in zip(a, g))
                if ag in idx:
                    total += Q(self.N(_neg(g), a) * self.N(b, _neg(d)), sys.norm(ag))
                val = Q(nxi, n_ab) * total
                if val.denominator != 1 or val == 0:
                    raise AssertionError(f"structure constant for {g}+{d} not a nonzero integer")
                self._set_pos(g, d, int(val))

    def _set_pos(self, a, b, n: int) -> None:
        self._pos[(a, b)] = n
        self._pos[(b, a)] = -n

    def N(self, x: Sequence[int], y: Sequence[int]) -> int:
        """``N_{x,y}`` with ``[e_x, e_y] = N_{x,y} e_{x+y}`` (0 if not a root)."""
        x, y = tuple(x), tuple(y)
        sys = self.sys
        z = tuple(a + b for a, b in zip(x, y))
        if z not in sys.index:
            return 0
        hx, hy = sum(x), sum(y)
        if hx > 0 and hy > 0:
            return self._pos[(x, y)]
        if hx < 0 and hy < 0:
            return -self._pos[(_neg(x), _neg(y))]
        if hx < 0:
            return -self.N(y, x)
        # x > 0 > y
        if sum(z) > 0:
            v = Q(-sys.norm(z), sys.norm(x)) * self._pos[(_neg(y), z)]
        else:
            v = Q(sys.norm(z), sys.norm(y)) * self._pos[(_neg(z), x)]
        if v.denominator != 1:
            raise AssertionError("non-integral structure constant")
        return int(v)

    def _build_table(self) -> None:
        sys = self.sys
        n, r = self.nroots, sys.rank
        roots = sys.roots
        idx = sys.index
        table: list[list[tuple]] = [[()] * self.dimension for _ in range(self.dimension)]
        for i, a in enumerate(roots):
            for j, b in enumerate(roots):
                s = tuple(x + y for x, y in zip(a, b))
                if s in idx:
                    table[i][j] = ((idx[s], self.N(a, b)),)
                elif not any(s):
                    table[i][j] = tuple((n + t, c) for t, c in enumerate(sys.coroot(a)) if c)
            for t in range(r):
                c = sys.pairing(a, t)
                if c:
                    table[n + t][i] = ((i, c),)
                    table[i][n + t] = ((i, -c),)
        self.table = table

    # checks ----------------------------------------------------------
    def check_string_lengths(self) -> None:
        roots = self.sys.roots
        for a in roots:
            for b in roots:
                n = self.N(a, b)
                if n and abs(n) != self._string_p(a, b) + 1:
                    raise AssertionError(f"|N_{{{a},{b}}}| differs from p+1")

    def _jacobi_ok(self, i: int, j: int, k: int) -> bool:
        acc: dict[int, int] = {}
        for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
            for m, x in self.table[a][b]:
                for t, y in self.table[m][c]:
                    acc[t] = acc.get(t, 0) + x * y
        return not any(acc.values())

    def check_jacobi_exhaustive(self) -> int:
        count = 0
        for i, j, k in combinations(range(self.dimension), 3):
            if not self._jacobi_ok(i, j, k):
                raise AssertionError(f"Jacobi fails on basis triple {(i, j, k)}")
            count += 1
        return count

    def check_jacobi_random(self, samples: int, seed: int = 0) -> int:
        rng = random.Random(seed)
        d = self.dimension
        for _ in range(samples):
            i, j, k = rng.randrange(d), rng.randrange(d), rng.randrange(d)
            if not self._jacobi_ok(i, j, k):
                raise AssertionError(f"Jacobi fails on basis triple {(i, j, k)}")
        return samples

    # elements ----------------------------------------------------------
    def zero(self) -> LieElement:
        return _raw(self, {})

    def basis_element(self, k: int) -> LieElement:
        return LieElement(self, {k: 1})

    def e(self, beta: Sequence[int], c=1) -> LieElement:
        return LieElement(self, {self.sys.index[tuple(beta)]: c})

    def h(self, i: int, c=1) -> LieElement:
        return LieElement(self, {self.nroots + i: c})

    def cartan_element(self, coords: Sequence) -> LieElement:
        """``sum coords[i] h_i``."""
        return LieElement(self, {self.nroots + i: c for i, c in enumerate(coords)})

    def coroot_element(self, beta: Sequence[int]) -> LieElement:
        return self.cartan_element(self.sys.coroot(beta))

    def element(self, dense: Sequence) -> LieElement:
        return LieElement(self, {k: c for k, c in enumerate(dense) if c})

    def root_element(self, coeffs: Mapping[tuple, object]) -> LieElement:
        return LieElement(self, {self.sys.index[tuple(b)]: c for b, c in coeffs.items()})

    def basis_label(self, k: int) -> str:
        if k < self.nroots:
            return "e[" + ",".join(str(c) for c in self.sys.roots[k]) + "]"
        return f"h{k - self.nroots + 1}"

    def format(self, x: LieElement) -> str:
        if not x.coeffs:
            return "0"
        return " + ".join(f"{c}*{self.basis_label(k)}" for k, c in sorted(x.coeffs.items()))

    # brackets ------------------------------------------------------------
    def bracket(self, x: LieElement, y: LieElement) -> LieElement:
        if x.alg is not self or y.alg is not self:
            raise ValueError("elements belong to a different algebra")
        out: dict[int, Fraction] = {}
        table = self.table
        for i, a in x.coeffs.items():
            row = table[i]
            for j, b in y.coeffs.items():
                for k, n in row[j]:
                    out[k] = out.get(k, 0) + a * b * n
        return _raw(self, {k: v for k, v in out.items() if v})

    def ad_columns(self, x: LieElement, within: Sequence[LieElement]) -> list[list[Fraction]]:
        """Matrix (rows = ambient basis) of ``ad x`` applied to ``within``."""
        cols = [self.bracket(x, w) for w in within]
        m = [[Q(0)] * len(cols) for _ in range(self.dimension)]
        for j, c in enumerate(cols):
            for k, v in c.coeffs.items():
                m[k][j] = v
        return m

    def ad_matrix(self, x: LieElement) -> list[list[Fraction]]:
        return self.ad_columns(x, [self.basis_element(k) for k in range(self.dimension)])

    def killing_cartan(self) -> list[list[int]]:
        """Killing form on the Cartan: ``kappa(h_i, h_j)``."""
        kc = getattr(self, "_killing_cartan", None)
        if kc is None:
            r = self.sys.rank
            pr = [[self.sys.pairing(b, i) for i in range(r)] for b in self.sys.roots]
            kc = [[sum(p[i] * p[j] for p in pr) for j in range(r)] for i in range(r)]
            self._killing_cartan = kc
        return kc

    def _trace_adad(self, i: int, j: int) -> int:
        tot = 0
        table = self.table
        for b in range(self.dimension):
            for m, c in table[j][b]:
                for t, c2 in table[i][m]:
                    if t == b:
                        tot += c * c2
        return tot

    @property
    def killing_roots(self) -> list[int]:
        """``kappa(e_beta, e_{-beta})`` for every root index."""
        kr = getattr(self, "_killing_roots", None)
        if kr is None:
            n = self.nroots
            neg = [self.sys.index[_neg(b)] for b in self.sys.roots]
            kr = [self._trace_adad(k, neg[k]) for k in range(n)]
            self._killing_roots = kr
        return kr

    def killing(self, x: LieElement, y: LieElement) -> Fraction:
        """Killing form ``tr(ad x ad y)``."""
        n = self.nroots
        kr = self.killing_roots
        kc = self.killing_cartan()
        roots = self.sys.roots
        idx = self.sys.index
        tot = Q(0)
        for k, a in x.coeffs.items():
            if k < n:
                b = y.coeffs.get(idx[_neg(roots[k])])
                if b:
                    tot += a * b * kr[k]
            else:
                i = k - n
                for m, b in y.coeffs.items():
                    if m >= n:
                        tot += a * b * kc[i][m - n]
        return tot

    # subspaces -----------------------------------------------------------
    def full(self) -> "Subalgebra":
        return Subalgebra(self, [self.basis_element(k) for k in range(self.dimension)], check=False)

    def cartan_subalgebra(self) -> "Subalgebra":
        n = self.nroots
        return Subalgebra(self, [self.basis_element(n + i) for i in range(self.sys.rank)], check=False)

    def structure_tsv(self) -> str:
        lines = ["alpha\tbeta\tN"]
        roots = self.sys.roots
        for a in roots:
            for b in roots:
                n = self.N(a, b)
                if n:
                    lines.append(
                        ",".join(map(str, a)) + "\t" + ",".join(map(str, b)) + f"\t{n}"
                    )
        return "\n".join(lines) + "\n"

    def __repr__(self):
        return f"ChevalleyAlgebra({self.sys.name}, dim={self.dimension})"


def _neg(x: Sequence[int]) -> tuple:
    return tuple(-c for c in x)


@lru_cache(maxsize=None)
def _build_cached(sys: RootSystem) -> ChevalleyAlgebra:
    return ChevalleyAlgebra(sys)


def build_algebra(sys) -> ChevalleyAlgebra:
    """Cached Chevalley algebra of a root system (or type string)."""
    if not isinstance(sys, RootSystem):
        sys = build_root_system(sys)
    return _build_cached(sys)


def bracket(x: LieElement, y: LieElement) -> LieElement:
    if x.alg is not y.alg:
        raise ValueError("elements belong to different algebras")
    return x.alg.bracket(x, y)


class Subalgebra:
    """Subspace of a Chevalley algebra given by a linearly independent basis.

    Used both for genuine subalgebras (``check=True`` verifies closure) and
    for graded pieces or centralizers that are subalgebras by construction.
    """

    def __init__(self, parent: ChevalleyAlgebra, basis_elements: Iterable[LieElement], check: bool = True):
        self.parent = parent
        self.basis_elements: list[LieElement] = list(basis_elements)
        for b in self.basis_elements:
            if b.alg is not parent:
                raise ValueError("basis element from a different algebra")
        if check:
            if linalg.rank(self.matrix(), parent.dimension) != len(self.basis_elements):
                raise ValueError("basis elements are linearly dependent")
            if not self.is_closed():
                raise ValueError("span is not closed under the bracket")

    @property
    def dim(self) -> int:
        return len(self.basis_elements)

    def matrix(self) -> list[list[Fraction]]:
        return [b.dense() for b in self.basis_elements]

    def contains(self, x: LieElement) -> bool:
        if x.is_zero():
            return True
        if not self.basis_elements:
            return False
        return linalg.in_span(self.matrix(), x.dense()) is not None

    def is_closed(self) -> bool:
        bs = self.basis_elements
        if not bs:
            return True
        m = self.matrix()
        d = self.parent.dimension
        r = len(bs)
        for i in range(r):
            for j in range(i + 1, r):
                z = self.parent.bracket(bs[i], bs[j])
                if not z.is_zero() and linalg.rank(m + [z.dense()], d) != r:
                    return False
        return True

    def intersect_cartan_dim(self) -> int:
        """``dim(s ∩ t)`` for the fixed Cartan subalgebra ``t``."""
        if not self.basis_elements:
            return 0
        n = self.parent.nroots
        rows = [b.dense()[:n] for b in self.basis_elements]
        return self.dim - linalg.rank(rows, n)

    def __repr__(self):
        return f"Subalgebra(dim={self.dim} in {self.parent.sys.name})"


def centralizer(x, within: Optional[Subalgebra] = None) -> Subalgebra:
    """Exact centralizer of ``x`` (an element or list of elements) in ``within``."""
    xs = [x] if isinstance(x, LieElement) else list(x)
    if not xs:
        raise ValueError("nothing to centralize")
    alg = xs[0].alg
    if within is None:
        within = alg.full()
    ws = within.basis_elements
    if not ws:
        return Subalgebra(alg, [], check=False)
    rows: list[list[Fraction]] = []
    for y in xs:
        rows.extend(r for r in alg.ad_columns(y, ws) if any(r))
    if not rows:
        return Subalgebra(alg, list(ws), check=False)
    kernel = linalg.nullspace(rows, len(ws))
    out = []
    for v in kernel:
        z = alg.zero()
        for c, w in zip(v, ws):
            if c:
                z = z + w * c
        out.append(z)
    return Subalgebra(alg, out, check=False)


def _centralizer_dim_mod(alg: ChevalleyAlgebra, x: LieElement, ws: Sequence[LieElement]) -> int:
    m = linalg.integer_rows([r for r in alg.ad_columns(x, ws) if any(r)])
    return len(ws) - linalg.rank_mod_primes(m)


def _centralizer_dim_exact(alg: ChevalleyAlgebra, x: LieElement, ws: Sequence[LieElement]) -> int:
    m = [r for r in alg.ad_columns(x, ws) if any(r)]
    return len(ws) - linalg.rank(m, len(ws))


class RankNotStable(RuntimeError):
    """Generic-element minimum did not stabilize within the trial bound."""


def reductive_rank(
    s: Subalgebra, seed: int = 0, patience: int = 5, max_trials: int = 80
) -> int:
    """Dimension of a Cartan subalgebra of a reductive subalgebra ``s``.

    Minimum of ``dim c_s(x)`` over random integer combinations ``x`` with
    growing coefficient bounds. ``dim(s ∩ t)`` is a certified lower bound;
    reaching it ends the search. Otherwise the minimum must hold for
    ``patience`` consecutive trials, first with modular ranks and then with
    exact ranks.
    """
    alg = s.parent
    ws = s.basis_elements
    if not ws:
        return 0
    lower = s.intersect_cartan_dim()
    rng = random.Random(seed)

    def sample(bound):
        x = alg.zero()
        for w in ws:
            c = rng.randint(-bound, bound)
            if c:
                x = x + w * c
        return x

    for dim_of in (_centralizer_dim_mod, _centralizer_dim_exact):
        best = None
        stale = 0
        bound = 4
        for _ in range(max_trials):
            d = dim_of(alg, sample(bound), ws)
            if best is None or d < best:
                best, stale = d, 0
            else:
                stale += 1
            if best == lower:
                return lower
            if stale >= patience:
                break
            bound *= 2
        else:
            raise RankNotStable(f"minimum centralizer dimension not stable after {max_trials} trials")
        if best < lower:
            raise AssertionError("centralizer dimension below the toral lower bound")
    return best
