"""Root-system combinatorics in simple-root coordinates.

Conventions (fixed globally)
----------------------------
* Bourbaki numbering of simple roots; indices are 0-based in code and
  1-based in anything printed (``alpha1`` is index 0).
* Cartan matrix ``A[i][j] = <alpha_j, alpha_i^vee> = 2(alpha_i, alpha_j)/(alpha_i, alpha_i)``.
* Roots are integer tuples of coefficients on the simple roots. Squared
  lengths of simple roots are integers: 2 in simply-laced types, (4, 2)
  for (long, short) in B, C, F and (6, 2) in G2.
* A cocharacter of the maximal torus is stored through its pairings
  ``<alpha_i, lambda>`` with the simple roots (adjoint coweight lattice).
* Semisimple systems are products of simple ones; the simple roots of
  component ``k`` occupy a contiguous block of indices.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from itertools import combinations, permutations
from typing import Iterable, Optional, Sequence

from . import linalg

Root = tuple  # tuple[int, ...]

_RANK_OK = {
    "A": lambda n: n >= 1,
    "B": lambda n: n >= 2,
    "C": lambda n: n >= 2,
    "D": lambda n: n >= 3,
    "E": lambda n: n in (6, 7, 8),
    "F": lambda n: n == 4,
    "G": lambda n: n == 2,
}


@dataclass(frozen=True, order=True)
class SimpleType:
    family: str
    rank: int

    def __post_init__(self):
        if self.family not in _RANK_OK:
            raise ValueError(f"unknown family {self.family!r}")
        if not isinstance(self.rank, int) or not _RANK_OK[self.family](self.rank):
            raise ValueError(f"invalid rank {self.rank} for family {self.family}")

    @property
    def name(self) -> str:
        return f"{self.family}{self.rank}"

    def __str__(self) -> str:
        return self.name


def parse_type(spec: str) -> tuple[SimpleType, ...]:
    """Parse ``"F4"``, ``"D4xD4"``, ``"A1xC3"`` into simple types."""
    parts = [p for p in re.split(r"[x×*]", spec.strip()) if p]
    if not parts:
        raise ValueError(f"empty system spec {spec!r}")
    out = []
    for p in parts:
        m = re.fullmatch(r"([A-G])(\d+)", p.strip())
        if not m:
            raise ValueError(f"cannot parse system spec {spec!r}")
        out.append(SimpleType(m.group(1), int(m.group(2))))
    return tuple(out)


def _edges(t: SimpleType):
    n = t.rank
    f = t.family
    if f in "ABC":
        return [(i, i + 1) for i in range(n - 1)]
    if f == "D":
        return [(i, i + 1) for i in range(n - 2)] + [(n - 3, n - 1)]
    if f == "E":
        return [(0, 2), (2, 3), (3, 4), (1, 3)] + [(i, i + 1) for i in range(4, n - 1)]
    if f == "F":
        return [(0, 1), (1, 2), (2, 3)]
    return [(0, 1)]


def _lengths(t: SimpleType) -> list[int]:
    n = t.rank
    if t.family == "B":
        return [4] * (n - 1) + [2]
    if t.family == "C":
        return [2] * (n - 1) + [4]
    if t.family == "F":
        return [4, 4, 2, 2]
    if t.family == "G":
        return [2, 6]
    return [2] * n


def simple_cartan(t: SimpleType) -> tuple[list[list[int]], list[int]]:
    """Bourbaki Cartan matrix and squared simple-root lengths of ``t``."""
    n = t.rank
    lengths = _lengths(t)
    form = [[0] * n for _ in range(n)]
    for i in range(n):
        form[i][i] = lengths[i]
    for i, j in _edges(t):
        form[i][j] = form[j][i] = -max(lengths[i], lengths[j]) // 2
    cartan = [[2 * form[i][j] // lengths[i] for j in range(n)] for i in range(n)]
    return cartan, lengths


class RootSystem:
    """Root system of a semisimple (possibly trivial) Lie algebra.

    Attributes are fixed after construction; use :func:`build_root_system`
    which caches instances by type.
    """

    def __init__(self, components: Sequence[SimpleType]):
        self.components: tuple[SimpleType, ...] = tuple(components)
        self.rank = sum(t.rank for t in self.components)
        n = self.rank
        self.cartan = [[0] * n for _ in range(n)]
        self.lengths: list[int] = []
        self.offsets: list[int] = []
        off = 0
        for t in self.components:
            a, lens = simple_cartan(t)
            for i in range(t.rank):
                for j in range(t.rank):
                    self.cartan[off + i][off + j] = a[i][j]
            self.lengths.extend(lens)
            self.offsets.append(off)
            off += t.rank
        self.form = [
            [self.cartan[i][j] * self.lengths[i] // 2 for j in range(n)] for i in range(n)
        ]
        for i in range(n):
            for j in range(n):
                if self.form[i][j] != self.form[j][i]:
                    raise AssertionError("Cartan matrix not symmetrizable")
        self.node_component = [k for k, t in enumerate(self.components) for _ in range(t.rank)]
        positives = self._generate_positive()
        self.positive_roots: tuple[Root, ...] = tuple(positives)
        self.positive_count = len(positives)
        self.roots: tuple[Root, ...] = self.positive_roots + tuple(
            tuple(-c for c in r) for r in positives
        )
        self.index = {r: i for i, r in enumerate(self.roots)}
        self.highest_roots: tuple[Root, ...] = tuple(
            max((r for r in positives if self.component_of(r) == k), key=sum)
            for k in range(len(self.components))
        )
        self._check()

    # construction -----------------------------------------------------
    def _generate_positive(self) -> list[Root]:
        n = self.rank
        simple = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)]
        found = set(simple)
        layer = list(simple)
        while layer:
            nxt = []
            for beta in layer:
                for i in range(n):
                    if beta == simple[i]:
                        continue
                    p = 0
                    while True:
                        down = tuple(c - (p + 1) * (j == i) for j, c in enumerate(beta))
                        if down in found:
                            p += 1
                        else:
                            break
                    q = p - self.pairing(beta, i)
                    if q > 0:
                        up = tuple(c + (j == i) for j, c in enumerate(beta))
                        if up not in found:
                            found.add(up)
                            nxt.append(up)
            layer = nxt
        return sorted(found, key=root_order_key)

    def _check(self) -> None:
        for r in self.roots:
            if not (all(c >= 0 for c in r) or all(c <= 0 for c in r)):
                raise AssertionError(f"mixed-sign root {r}")
        for i in range(self.rank):
            if self.cartan[i][i] != 2:
                raise AssertionError("Cartan diagonal must be 2")

    # basic arithmetic --------------------------------------------------
    def pairing(self, beta: Sequence[int], i: int) -> int:
        """``<beta, alpha_i^vee>``."""
        row = self.cartan[i]
        return sum(c * row[j] for j, c in enumerate(beta) if c)

    def inner(self, x: Sequence, y: Sequence):
        f = self.form
        return sum(a * f[i][j] * b for i, a in enumerate(x) if a for j, b in enumerate(y) if b)

    def norm(self, x: Sequence):
        return self.inner(x, x)

    def coroot_pairing(self, x: Sequence, beta: Sequence):
        """``<x, beta^vee> = 2 (x, beta) / (beta, beta)`` for any vector x."""
        return Fraction(2 * self.inner(x, beta), self.norm(beta))

    def coroot(self, beta: Sequence[int]) -> tuple[int, ...]:
        """``beta^vee`` in simple-coroot coordinates (integral)."""
        nb = self.norm(beta)
        out = []
        for i, c in enumerate(beta):
            num = c * self.lengths[i]
            if num % nb:
                raise AssertionError("non-integral coroot coordinates")
            out.append(num // nb)
        return tuple(out)

    def reflect(self, beta: Sequence[int], i: int) -> Root:
        k = self.pairing(beta, i)
        return tuple(c - k * (j == i) for j, c in enumerate(beta))

    def reflect_by(self, x: Sequence[int], gamma: Sequence[int]) -> Root:
        k = self.coroot_pairing(x, gamma)
        if k.denominator != 1:
            raise AssertionError("non-integral reflection")
        k = int(k)
        return tuple(a - k * g for a, g in zip(x, gamma))

    def height(self, beta: Sequence[int]) -> int:
        return sum(beta)

    def component_of(self, beta: Sequence[int]) -> int:
        for j, c in enumerate(beta):
            if c:
                return self.node_component[j]
        raise ValueError("zero vector has no component")

    def is_root(self, beta: Sequence[int]) -> bool:
        return tuple(beta) in self.index

    def simple_root(self, i: int) -> Root:
        return tuple(1 if j == i else 0 for j in range(self.rank))

    def cocharacter_pairing(self, beta: Sequence[int], lam: Sequence) -> int:
        """``<beta, lambda>`` for a cocharacter given by simple pairings."""
        return sum(c * x for c, x in zip(beta, lam))

    def max_length(self, component: int) -> int:
        off = self.offsets[component]
        return max(self.lengths[off:off + self.components[component].rank])

    def is_short(self, beta: Sequence[int]) -> bool:
        return self.norm(beta) < self.max_length(self.component_of(beta))

    @cached_property
    def name(self) -> str:
        return "x".join(t.name for t in self.components) if self.components else "T0"

    @cached_property
    def simply_laced_components(self) -> tuple[bool, ...]:
        return tuple(t.family in "ADE" for t in self.components)

    def __repr__(self) -> str:
        return f"RootSystem({self.name})"


def root_order_key(r: Sequence[int]):
    """Total order on positive roots: height, then reverse-lexicographic."""
    return (sum(r), tuple(-c for c in r))


@lru_cache(maxsize=None)
def _build(components: tuple[SimpleType, ...]) -> RootSystem:
    return RootSystem(components)


def build_root_system(components) -> RootSystem:
    """Build (cached) the root system of a product of simple types.

    ``components`` may be a list of :class:`SimpleType` or a type string.
    """
    if isinstance(components, str):
        components = parse_type(components)
    comps = tuple(components)
    for t in comps:
        if not isinstance(t, SimpleType):
            raise TypeError(f"expected SimpleType, got {t!r}")
    return _build(comps)


# ---------------------------------------------------------------- primes
@dataclass(frozen=True)
class BadPrimeReport:
    bad: frozenset

    def is_good(self, p: int) -> bool:
        return p not in self.bad

    def is_bad(self, p: int) -> bool:
        return p in self.bad


def _prime_factors(n: int) -> set[int]:
    out, d = set(), 2
    while d * d <= n:
        while n % d == 0:
            out.add(d)
            n //= d
        d += 1
    if n > 1:
        out.add(n)
    return out


def good_primes(sys: RootSystem) -> BadPrimeReport:
    """Bad primes: those dividing a coefficient of some positive root."""
    bad: set[int] = set()
    for r in sys.positive_roots:
        for c in r:
            if c > 1:
                bad |= _prime_factors(c)
    return BadPrimeReport(frozenset(bad))


# -------------------------------------------------------------- dominance
def reflect_coweight(sys: RootSystem, v: Sequence, j: int) -> list:
    """Pairings of ``s_j(lambda)`` given pairings ``v`` of ``lambda``."""
    vj = v[j]
    return [x - vj * sys.cartan[j][i] for i, x in enumerate(v)]


def to_dominant(sys: RootSystem, v: Sequence) -> tuple[tuple, list[int]]:
    """Conjugate a cocharacter (simple pairings) into the dominant chamber.

    Returns the dominant pairing vector and the word ``[j1, j2, ...]`` of
    simple reflections applied in order (``s_jk ... s_j1 v``).
    """
    cur = list(v)
    word: list[int] = []
    if len(cur) != sys.rank:
        raise ValueError("pairing vector has wrong length")
    while True:
        j = next((i for i, x in enumerate(cur) if x < 0), None)
        if j is None:
            return tuple(cur), word
        cur = reflect_coweight(sys, cur, j)
        word.append(j)


def apply_word(sys: RootSystem, v: Sequence, word: Iterable[int]) -> list:
    cur = list(v)
    for j in word:
        cur = reflect_coweight(sys, cur, j)
    return cur


# ------------------------------------------------------- extended diagram
@dataclass(frozen=True)
class ExtendedDiagram:
    """Simple roots plus the negative highest root of each component."""

    nodes: tuple  # root coordinate tuples
    marks: tuple  # highest-root coefficient, 1 on -rho
    component: tuple  # component index of each node
    affine: tuple  # True on the added -rho nodes
    cartan: tuple  # extended Cartan matrix

    def edges(self) -> list[tuple[int, int]]:
        n = len(self.nodes)
        return [(a, b) for a in range(n) for b in range(a + 1, n) if self.cartan[a][b]]


def extended_diagram(sys: RootSystem) -> ExtendedDiagram:
    nodes, marks, comp, aff = [], [], [], []
    for k, t in enumerate(sys.components):
        off = sys.offsets[k]
        rho = sys.highest_roots[k]
        nodes.append(tuple(-c for c in rho))
        marks.append(1)
        comp.append(k)
        aff.append(True)
        for i in range(off, off + t.rank):
            nodes.append(sys.simple_root(i))
            marks.append(rho[i])
            comp.append(k)
            aff.append(False)
    cartan = tuple(
        tuple(int(sys.coroot_pairing(b, a)) for b in nodes) for a in nodes
    )
    return ExtendedDiagram(tuple(nodes), tuple(marks), tuple(comp), tuple(aff), cartan)


# ------------------------------------------------------ type recognition
_FAMILY_TRY = "ABCDEFG"


def _candidates(n: int):
    for f in _FAMILY_TRY:
        if f == "C" and n == 2:
            continue  # C2 is recognized as B2
        if f == "D" and n == 3:
            continue  # D3 is recognized as A3
        try:
            yield SimpleType(f, n)
        except ValueError:
            continue


def _components(cartan: Sequence[Sequence]) -> list[list[int]]:
    n = len(cartan)
    seen = [False] * n
    out = []
    for s in range(n):
        if seen[s]:
            continue
        comp, stack = [], [s]
        seen[s] = True
        while stack:
            a = stack.pop()
            comp.append(a)
            for b in range(n):
                if not seen[b] and cartan[a][b]:
                    seen[b] = True
                    stack.append(b)
        out.append(sorted(comp))
    return out


def _match(target, nodes: list[int], cartan) -> Optional[tuple[int, ...]]:
    n = len(nodes)
    assign: list[int] = []
    used: set[int] = set()

    def rec(k: int) -> bool:
        if k == n:
            return True
        for v in nodes:
            if v in used:
                continue
            if cartan[v][v] != target[k][k]:
                continue
            if all(
                cartan[v][assign[a]] == target[k][a] and cartan[assign[a]][v] == target[a][k]
                for a in range(k)
            ):
                assign.append(v)
                used.add(v)
                if rec(k + 1):
                    return True
                assign.pop()
                used.discard(v)
        return False

    return tuple(assign) if rec(0) else None


def recognize(cartan: Sequence[Sequence]) -> list[tuple[SimpleType, tuple[int, ...]]]:
    """Identify a Cartan matrix as a product of Bourbaki-numbered types.

    Returns ``(type, nodes)`` per connected component, where ``nodes[k]``
    is the input index playing the role of Bourbaki simple root ``k``.
    """
    out = []
    for comp in _components(cartan):
        for t in _candidates(len(comp)):
            target, _ = simple_cartan(t)
            m = _match(target, comp, cartan)
            if m is not None:
                out.append((t, m))
                break
        else:
            raise ValueError("Cartan matrix is not of finite type")
    return out


# ------------------------------------------------------------ subsystems
_DISPLAY_FAMILY = {f: i for i, f in enumerate("EFDCBGA")}


@dataclass(frozen=True)
class SubsystemComponent:
    type: SimpleType
    base: tuple  # ambient roots, Bourbaki order of ``type``
    short: bool  # all roots short in a non-simply-laced ambient component

    @property
    def name(self) -> str:
        return ("~" if self.short and self.type.family == "A" else "") + self.type.name


@dataclass(frozen=True)
class SubsystemSpec:
    """A closed symmetric subsystem of an ambient root system."""

    ambient: RootSystem = field(repr=False, compare=False, hash=False)
    roots: frozenset
    base: tuple

    @property
    def rank(self) -> int:
        return len(self.base)

    @cached_property
    def cartan(self) -> list[list[int]]:
        s = self.ambient
        return [[int(s.coroot_pairing(b, a)) for b in self.base] for a in self.base]

    @cached_property
    def components(self) -> tuple[SubsystemComponent, ...]:
        s = self.ambient
        out = []
        for t, nodes in recognize(self.cartan):
            base = tuple(self.base[i] for i in nodes)
            amb = s.component_of(base[0])
            short = (not s.simply_laced_components[amb]) and all(
                s.norm(b) < s.max_length(amb) for b in base
            )
            out.append(SubsystemComponent(t, base, short))
        return tuple(out)

    @cached_property
    def signature(self) -> tuple:
        """Weyl-invariant signature: component types with root lengths."""
        s = self.ambient
        return tuple(
            sorted(
                (c.type.family, c.type.rank, tuple(s.norm(b) for b in c.base))
                for c in self.components
            )
        )

    @property
    def name(self) -> str:
        return subsystem_name(self.components)

    def positive(self) -> list[Root]:
        return sorted((r for r in self.roots if sum(r) > 0), key=root_order_key)

    def contains(self, beta) -> bool:
        return tuple(beta) in self.roots


def subsystem_name(components: Iterable[SubsystemComponent]) -> str:
    comps = sorted(
        components,
        key=lambda c: (c.type.rank, _DISPLAY_FAMILY[c.type.family], c.short),
    )
    names = [c.name for c in comps]
    out = []
    for nm in dict.fromkeys(names):
        k = names.count(nm)
        out.append((str(k) if k > 1 else "") + nm)
    return "+".join(out) if out else "T"


def closure_under_reflections(sys: RootSystem, base: Iterable[Sequence[int]]) -> frozenset:
    """Roots generated from ``base`` by its own reflections (W_Phi . base)."""
    base = [tuple(b) for b in base]
    found = set(base) | {tuple(-c for c in b) for b in base}
    frontier = list(found)
    while frontier:
        nxt = []
        for x in frontier:
            for g in base:
                y = sys.reflect_by(x, g)
                if y not in found:
                    if y not in sys.index:
                        raise AssertionError("reflection left the root system")
                    found.add(y)
                    nxt.append(y)
        frontier = nxt
    return frozenset(found)


def is_closed_subsystem(roots: Iterable[Sequence[int]], sys: RootSystem) -> bool:
    """Symmetric and closed under addition inside ``sys``."""
    rs = {tuple(r) for r in roots}
    for r in rs:
        if r not in sys.index:
            return False
        if tuple(-c for c in r) not in rs:
            return False
    lst = list(rs)
    for a, b in combinations(lst, 2):
        s = tuple(x + y for x, y in zip(a, b))
        if s in sys.index and s not in rs:
            return False
    return True


def subsystem_base(roots: Iterable[Sequence[int]], sys: RootSystem) -> tuple:
    """Simple roots of ``roots`` relative to the ambient positive system."""
    rs = {tuple(r) for r in roots}
    pos = sorted((r for r in rs if sum(r) > 0), key=root_order_key)
    pset = set(pos)
    base = []
    for r in pos:
        decomposable = any(
            tuple(x - y for x, y in zip(r, a)) in pset for a in pos if sum(a) < sum(r)
        )
        if not decomposable:
            base.append(r)
    return tuple(base)


def subsystem_from_roots(sys: RootSystem, roots: Iterable[Sequence[int]]) -> SubsystemSpec:
    rs = frozenset(tuple(r) for r in roots)
    if not is_closed_subsystem(rs, sys):
        raise ValueError("root set is not a closed symmetric subsystem")
    return SubsystemSpec(sys, rs, subsystem_base(rs, sys))


def subsystem_from_base(sys: RootSystem, base: Iterable[Sequence[int]]) -> SubsystemSpec:
    """Subsystem generated by a pi-system ``base`` (its base is recomputed
    relative to the ambient positive roots)."""
    roots = closure_under_reflections(sys, base)
    return subsystem_from_roots(sys, roots)


def standard_levi(sys: RootSystem, nodes: Iterable[int]) -> SubsystemSpec:
    """Levi subsystem spanned by the simple roots with the given indices."""
    nodes = sorted(set(nodes))
    if any(not 0 <= i < sys.rank for i in nodes):
        raise ValueError("node index out of range")
    roots = frozenset(r for r in sys.roots if all(r[j] == 0 for j in range(sys.rank) if j not in nodes))
    return SubsystemSpec(sys, roots, tuple(sys.simple_root(i) for i in nodes))


def whole_system(sys: RootSystem) -> SubsystemSpec:
    return standard_levi(sys, range(sys.rank))


def abstract_system(spec: SubsystemSpec) -> tuple[RootSystem, list[Root]]:
    """Abstract root system of a subsystem and the ambient image of each of
    its simple roots (in the abstract system's Bourbaki order)."""
    comps = spec.components
    sub = build_root_system([c.type for c in comps])
    images = [b for c in comps for b in c.base]
    return sub, images


def express_in_base(sys: RootSystem, base: Sequence[Sequence[int]], beta: Sequence[int]):
    """Coefficients of ``beta`` on the (linearly independent) ``base``."""
    coeffs = linalg.in_span([list(b) for b in base], list(beta))
    if coeffs is None:
        raise ValueError("vector not in the span of the base")
    return coeffs


# ---------------------------------------------------------- serialization
def root_system_to_json(sys: RootSystem) -> dict:
    return {
        "components": [t.name for t in sys.components],
        "rank": sys.rank,
        "cartan": [list(r) for r in sys.cartan],
        "simple_root_lengths": list(sys.lengths),
        "positive_count": sys.positive_count,
        "roots": [list(r) for r in sys.roots],
        "highest_roots": [list(r) for r in sys.highest_roots],
    }


def root_system_from_json(doc: dict) -> RootSystem:
    sys = build_root_system([parse_type(c)[0] for c in doc["components"]])
    if [list(r) for r in sys.cartan] != doc["cartan"]:
        raise ValueError("Cartan matrix in document does not match its components")
    return sys


def subsystem_to_json(spec: SubsystemSpec) -> dict:
    return {
        "ambient": spec.ambient.name,
        "name": spec.name,
        "components": [
            {"type": c.type.name, "short": c.short, "base": [list(b) for b in c.base]}
            for c in spec.components
        ],
        "base": [list(b) for b in spec.base],
        "roots": sorted(list(r) for r in spec.roots),
    }


def subsystem_from_json(doc: dict) -> SubsystemSpec:
    sys = build_root_system(doc["ambient"]) if doc["ambient"] != "T0" else build_root_system([])
    return subsystem_from_roots(sys, [tuple(r) for r in doc["roots"]])
