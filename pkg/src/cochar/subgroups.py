"""Reductive subalgebras realized inside a Chevalley algebra.

An :class:`Embedding` is an injective homomorphism from the Chevalley
algebra of an abstract semisimple type into the ambient algebra, given by
the images of all basis elements, together with optional extra toral
elements (the ambient Cartan for regular subgroups). Images are grown from
Chevalley generators ``E_k, F_k`` by brackets and checked on every pair of
basis elements.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product
from typing import Optional, Sequence

from . import linalg
from .chevalley import ChevalleyAlgebra, LieElement, Subalgebra, build_algebra
from .cocharacters import Cocharacter, cartan_coords, pairings_of_cartan
from .orbits import normalize_label
from .rootdata import (
    RootSystem,
    SubsystemSpec,
    abstract_system,
    build_root_system,
    closure_under_reflections,
    extended_diagram,
    good_primes,
    is_closed_subsystem,
    parse_type,
    recognize,
    root_order_key,
    standard_levi,
    subsystem_from_base,
    subsystem_from_roots,
    whole_system,
)

Q = Fraction


@dataclass
class Embedding:
    id: str
    kind: str  # "regular", "fixed_points", "diagonal"
    ambient: ChevalleyAlgebra
    sub_system: RootSystem
    sub_alg: ChevalleyAlgebra
    images: list  # image of each basis element of sub_alg
    extra_cartan: list = field(default_factory=list)
    subsystem: Optional[SubsystemSpec] = None
    automorphism: Optional["DiagramAutomorphism"] = None
    notes: list = field(default_factory=list)

    @property
    def sub_basis(self) -> list:
        """Basis of the image subalgebra (root images, Cartan images, extra torus)."""
        out = list(self.images)
        if self.extra_cartan:
            rows = [x.dense() for x in out + self.extra_cartan]
            basis = linalg.span_basis(rows, self.ambient.dimension)
            if len(basis) != len(rows):
                # drop the dependent extra toral elements
                keep = list(out)
                for x in self.extra_cartan:
                    cand = keep + [x]
                    if linalg.rank([y.dense() for y in cand], self.ambient.dimension) == len(cand):
                        keep = cand
                out = keep
            else:
                out = out + list(self.extra_cartan)
        return out

    @property
    def dim(self) -> int:
        return len(self.sub_basis)

    def subalgebra(self, check: bool = False) -> Subalgebra:
        return Subalgebra(self.ambient, self.sub_basis, check=check)

    def transport(self, x: LieElement) -> LieElement:
        if x.alg is not self.sub_alg:
            raise ValueError("element is not in the source algebra")
        out = self.ambient.zero()
        for k, c in x.coeffs.items():
            out = out + self.images[k] * c
        return out

    def cartan_map(self, lam: Cocharacter) -> Cocharacter:
        """Image in the ambient coweight lattice of a cocharacter of H."""
        if lam.ambient is not self.sub_system:
            raise ValueError("cocharacter of a different system")
        y = cartan_coords(self.sub_system, lam.pairings)
        h = self.transport(self.sub_alg.cartan_element(y))
        if any(k < self.ambient.nroots for k in h.coeffs):
            raise AssertionError("image of the H-Cartan leaves the ambient Cartan")
        v = pairings_of_cartan(self.ambient.sys, h.cartan_part())
        if any(Q(x).denominator != 1 for x in v):
            raise AssertionError("image cocharacter is not integral")
        return Cocharacter(tuple(int(x) for x in v), self.ambient.sys)

    def check(self) -> None:
        """Homomorphism on all basis pairs and injectivity."""
        check_homomorphism(self.sub_alg, self.ambient, self.images)
        rows = [x.dense() for x in self.images]
        if linalg.rank(rows, self.ambient.dimension) != self.sub_alg.dimension:
            raise AssertionError("embedding is not injective")

    def describe(self) -> dict:
        return {
            "id": self.id,
            "kind": self.kind,
            "ambient": self.ambient.sys.name,
            "sub_system": self.sub_system.name,
            "dim": self.dim,
            "notes": list(self.notes),
        }


def check_homomorphism(src: ChevalleyAlgebra, dst: ChevalleyAlgebra, images: Sequence[LieElement]) -> None:
    d = src.dimension
    for i in range(d):
        for j in range(i + 1, d):
            lhs = dst.zero()
            for k, c in src.table[i][j]:
                lhs = lhs + images[k] * c
            if dst.bracket(images[i], images[j]) != lhs:
                raise AssertionError(f"bracket not preserved on basis pair {(i, j)}")


def embedding_from_generators(
    ambient: ChevalleyAlgebra,
    sub_system: RootSystem,
    E: Sequence[LieElement],
    F: Sequence[LieElement],
    **kw,
) -> Embedding:
    """Extend images of Chevalley generators to the whole source algebra."""
    src = build_algebra(sub_system)
    sysH = sub_system
    r = sysH.rank
    img: dict[tuple, LieElement] = {}
    for k in range(r):
        a = sysH.simple_root(k)
        img[a] = E[k]
        img[tuple(-c for c in a)] = F[k]
    for xi in sysH.positive_roots:
        if xi in img:
            continue
        for k in range(r):
            prev = tuple(c - (j == k) for j, c in enumerate(xi))
            if prev in img and sum(prev) > 0:
                break
        else:
            raise AssertionError(f"no predecessor for root {xi}")
        a = sysH.simple_root(k)
        n = src.N(a, prev)
        img[xi] = ambient.bracket(E[k], img[prev]) * Q(1, n)
        nprev = tuple(-c for c in prev)
        nxi = tuple(-c for c in xi)
        n2 = src.N(tuple(-c for c in a), nprev)
        img[nxi] = ambient.bracket(F[k], img[nprev]) * Q(1, n2)
    images = [img[b] for b in sysH.roots]
    images += [ambient.bracket(E[k], F[k]) for k in range(r)]
    emb = Embedding(ambient=ambient, sub_system=sysH, sub_alg=src, images=images, **kw)
    emb.check()
    return emb


# ------------------------------------------------------------ regular
def regular_embedding(spec: SubsystemSpec, alg: ChevalleyAlgebra, id: Optional[str] = None) -> Embedding:
    """Regular subalgebra: root vectors of a closed subsystem plus the
    full ambient Cartan."""
    if spec.ambient is not alg.sys:
        raise ValueError("subsystem of a different root system")
    if not is_closed_subsystem(spec.roots, alg.sys):
        raise ValueError("subsystem is not closed")
    sub, images = abstract_system(spec)
    E = [alg.e(g) for g in images]
    F = [alg.e(tuple(-c for c in g)) for g in images]
    emb = embedding_from_generators(
        alg,
        sub,
        E,
        F,
        id=id or f"{alg.sys.name}/{spec.name}",
        kind="regular",
        extra_cartan=[alg.h(i) for i in range(alg.sys.rank)],
        subsystem=spec,
    )
    bad_h, bad_g = good_primes(sub).bad, good_primes(alg.sys).bad
    if not bad_h <= bad_g:
        raise AssertionError("a bad prime of the subsystem is good for the ambient system")
    return emb


# ------------------------------------------------- diagram automorphisms
@dataclass
class DiagramAutomorphism:
    sys: RootSystem
    node_permutation: tuple
    order: int
    signs: dict  # root -> +1/-1, phi(e_b) = signs[b] e_{pi b}

    def permute(self, beta: Sequence[int]) -> tuple:
        out = [0] * self.sys.rank
        for i, c in enumerate(beta):
            out[self.node_permutation[i]] += c
        return tuple(out)

    def apply(self, alg: ChevalleyAlgebra, x: LieElement) -> LieElement:
        n = alg.nroots
        roots = alg.sys.roots
        out = {}
        for k, c in x.coeffs.items():
            if k < n:
                b = roots[k]
                out[alg.sys.index[self.permute(b)]] = c * self.signs[b]
            else:
                out[n + self.node_permutation[k - n]] = c
        return LieElement(alg, out)


def diagram_automorphism(sys: RootSystem, perm: Sequence[int]) -> DiagramAutomorphism:
    """Lift a symmetry of the Dynkin diagram to a Lie algebra automorphism
    fixing each ``e_{alpha_i} -> e_{alpha_pi(i)}`` and solve the signs."""
    perm = tuple(perm)
    r = sys.rank
    if sorted(perm) != list(range(r)):
        raise ValueError("not a permutation of the simple roots")
    for i in range(r):
        for j in range(r):
            if sys.cartan[perm[i]][perm[j]] != sys.cartan[i][j]:
                raise ValueError("permutation is not a diagram symmetry")
    alg = build_algebra(sys)
    aut = DiagramAutomorphism(sys, perm, 0, {})
    signs: dict[tuple, int] = {}
    for i in range(r):
        a = sys.simple_root(i)
        signs[a] = 1
        signs[tuple(-c for c in a)] = 1
    for xi in sys.positive_roots:
        if xi in signs:
            continue
        for k in range(r):
            prev = tuple(c - (j == k) for j, c in enumerate(xi))
            if prev in sys.index and sum(prev) > 0:
                break
        a = sys.simple_root(k)
        ratio = Q(alg.N(aut.permute(a), aut.permute(prev)), alg.N(a, prev))
        if abs(ratio) != 1:
            raise AssertionError("sign extension produced a non-unit ratio")
        s = signs[prev] * int(ratio)
        signs[xi] = s
        signs[tuple(-c for c in xi)] = s
    aut.signs = signs
    # order of the permutation
    order, cur = 1, list(perm)
    while cur != list(range(r)):
        cur = [perm[c] for c in cur]
        order += 1
    aut.order = order
    images = [aut.apply(alg, alg.basis_element(k)) for k in range(alg.dimension)]
    check_homomorphism(alg, alg, images)
    for k in range(alg.dimension):
        z = alg.basis_element(k)
        w = z
        for _ in range(order):
            w = aut.apply(alg, w)
        if w != z:
            raise AssertionError("lifted automorphism does not have the diagram order")
    return aut


def _fixed_dim_by_orbits(alg: ChevalleyAlgebra, aut: DiagramAutomorphism) -> int:
    seen = set()
    count = 0
    n = alg.nroots
    for k in range(alg.dimension):
        if k in seen:
            continue
        orbit_sign = 1
        cur = k
        while True:
            seen.add(cur)
            if cur < n:
                b = alg.sys.roots[cur]
                orbit_sign *= aut.signs[b]
                nxt = alg.sys.index[aut.permute(b)]
            else:
                nxt = n + aut.node_permutation[cur - n]
            cur = nxt
            if cur == k:
                break
        if orbit_sign == 1:
            count += 1
    return count


def _fixed_dim_by_kernel(alg: ChevalleyAlgebra, aut: DiagramAutomorphism) -> int:
    d = alg.dimension
    cols = [aut.apply(alg, alg.basis_element(k)) - alg.basis_element(k) for k in range(d)]
    rows = [[cols[j].coeffs.get(i, Q(0)) for j in range(d)] for i in range(d)]
    rows = [r for r in rows if any(r)]
    return d - (linalg.rank(rows, d) if rows else 0)


def fixed_point_embedding(aut: DiagramAutomorphism, alg: Optional[ChevalleyAlgebra] = None, id: Optional[str] = None) -> Embedding:
    """Fixed subalgebra of a diagram automorphism (folding)."""
    sys = aut.sys
    alg = alg or build_algebra(sys)
    if alg.sys is not sys:
        raise ValueError("automorphism of a different system")
    r = sys.rank
    perm = aut.node_permutation
    orbits: list[list[int]] = []
    seen = set()
    for i in range(r):
        if i in seen:
            continue
        o, c = [], i
        while c not in o:
            o.append(c)
            c = perm[c]
        seen.update(o)
        orbits.append(o)
    for o in orbits:
        for i in o:
            for j in o:
                if i != j and sys.cartan[i][j]:
                    raise ValueError("folding with adjacent nodes in one orbit is not supported")
    folded = [[sum(sys.cartan[i][o2[0]] for i in o1) for o2 in orbits] for o1 in orbits]
    parts = recognize(folded)
    sub = build_root_system([t for t, _ in parts])
    order = [orbits[k] for _, nodes in parts for k in nodes]
    E = [sum((alg.e(sys.simple_root(i)) for i in o), alg.zero()) for o in order]
    F = [sum((alg.e(tuple(-c for c in sys.simple_root(i))) for i in o), alg.zero()) for o in order]
    emb = embedding_from_generators(
        alg, sub, E, F, id=id or f"{sys.name}/fixed", kind="fixed_points", automorphism=aut
    )
    d1 = _fixed_dim_by_orbits(alg, aut)
    d2 = _fixed_dim_by_kernel(alg, aut)
    if not d1 == d2 == emb.sub_alg.dimension:
        raise AssertionError(f"fixed dimension mismatch: orbits {d1}, kernel {d2}, image {emb.sub_alg.dimension}")
    for x in emb.images:
        if aut.apply(alg, x) != x:
            raise AssertionError("image element is not fixed by the automorphism")
    return emb


# ------------------------------------------------------------ diagonal
def diagonal_embedding(sys: RootSystem, pairing: Optional[Sequence[int]] = None, id: Optional[str] = None) -> Embedding:
    """Diagonal copy of one factor in a product of two isomorphic factors.

    ``pairing[k]`` is the node of the second factor matched with node ``k``
    of the first (default: equal Bourbaki indices).
    """
    if len(sys.components) != 2 or sys.components[0] != sys.components[1]:
        raise ValueError("diagonal embedding needs two isomorphic components")
    t = sys.components[0]
    n = t.rank
    pairing = tuple(range(n)) if pairing is None else tuple(pairing)
    perm = list(range(n)) + [0] * n
    for k in range(n):
        perm[k] = n + pairing[k]
        perm[n + pairing[k]] = k
    alg = build_algebra(sys)
    for i in range(n):
        for j in range(n):
            if sys.cartan[i][j] != sys.cartan[n + pairing[i]][n + pairing[j]]:
                raise ValueError("pairing is not an isomorphism of the components")
    sub = build_root_system([t])
    E = [alg.e(sys.simple_root(k)) + alg.e(sys.simple_root(n + pairing[k])) for k in range(n)]
    F = [
        alg.e(tuple(-c for c in sys.simple_root(k))) + alg.e(tuple(-c for c in sys.simple_root(n + pairing[k])))
        for k in range(n)
    ]
    emb = embedding_from_generators(alg, sub, E, F, id=id or f"{sys.name}/diagonal", kind="diagonal")
    swap = diagram_automorphism(sys, perm)
    fixed = _fixed_dim_by_kernel(alg, swap)
    if fixed != emb.sub_alg.dimension:
        raise AssertionError("diagonal image differs from the swap-fixed subalgebra")
    for x in emb.images:
        if swap.apply(alg, x) != x:
            raise AssertionError("diagonal image not fixed by the swap")
    emb.automorphism = swap
    return emb


def compose(outer: Embedding, inner: Embedding, id: str, kind: str) -> Embedding:
    """``outer o inner`` where inner's ambient is outer's source algebra."""
    if inner.ambient is not outer.sub_alg:
        raise ValueError("embeddings do not compose")
    images = [outer.transport(x) for x in inner.images]
    emb = Embedding(
        id=id,
        kind=kind,
        ambient=outer.ambient,
        sub_system=inner.sub_system,
        sub_alg=inner.sub_alg,
        images=images,
        notes=[f"composite of {inner.id} and {outer.id}"],
    )
    emb.check()
    return emb


# ------------------------------------------------- Borel-de Siebenthal
def _component_highest(sys: RootSystem, comp_roots: set) -> tuple:
    pos = [r for r in comp_roots if sum(r) > 0]
    return max(pos, key=root_order_key)


@dataclass
class LatticeNode:
    spec: SubsystemSpec
    depth: int
    parent: Optional[str]
    levi: bool = False
    maximal: bool = False
    deriziotis: Optional[bool] = None

    @property
    def name(self) -> str:
        return self.spec.name


def _component_root_sets(spec: SubsystemSpec) -> list[tuple]:
    """(base in Bourbaki order, root set) per component of a subsystem."""
    out = []
    sys = spec.ambient
    for c in spec.components:
        roots = closure_under_reflections(sys, c.base)
        out.append((c.base, set(roots)))
    return out


def bds_children(spec: SubsystemSpec, prime_marks_only: bool = False) -> list[tuple[SubsystemSpec, int]]:
    """One-step Borel-de Siebenthal children: delete one node from the
    extended diagram of one component. Returns ``(child, mark)`` pairs."""
    sys = spec.ambient
    comps = _component_root_sets(spec)
    out = []
    for ci, (base, roots) in enumerate(comps):
        rho = _component_highest(sys, roots)
        other = [b for cj, (bs, _) in enumerate(comps) if cj != ci for b in bs]
        coeffs = linalg.in_span([list(b) for b in base], list(rho))
        nodes = [(tuple(-c for c in rho), 1)] + [(b, int(coeffs[k])) for k, b in enumerate(base)]
        for k, (_, mark) in enumerate(nodes):
            if mark == 1:
                continue  # gives back a conjugate of the component
            if prime_marks_only and not _is_prime(mark):
                continue
            new_base = other + [b for m, (b, _) in enumerate(nodes) if m != k]
            out.append((subsystem_from_base(sys, new_base), mark))
    return out


def _is_prime(n: int) -> bool:
    return n > 1 and all(n % d for d in range(2, int(n ** 0.5) + 1))


def borel_de_siebenthal(sys: RootSystem, depth: Optional[int] = None, levis: bool = True) -> list[LatticeNode]:
    """Maximal-rank closed subsystems up to signature, by iterated deletion
    from extended diagrams (plus standard Levi subsystems when ``levis``)."""
    root = whole_system(sys)
    nodes = [LatticeNode(root, 0, None)]
    seen = {root.signature}
    frontier = [root]
    d = 0
    while frontier and (depth is None or d < depth):
        d += 1
        nxt = []
        for parent in frontier:
            for child, mark in bds_children(parent):
                if child.signature in seen:
                    continue
                seen.add(child.signature)
                node = LatticeNode(child, d, parent.name, maximal=(d == 1 and _is_prime(mark)))
                node.deriziotis = deriziotis_check(child, parent)
                nodes.append(node)
                nxt.append(child)
        frontier = nxt
    if levis:
        lseen = set()
        for size in range(sys.rank - 1, -1, -1):
            for J in _subsets(sys.rank, size):
                spec = standard_levi(sys, J)
                if spec.signature in lseen:
                    continue
                lseen.add(spec.signature)
                nodes.append(LatticeNode(spec, 0, root.name, levi=True))
    return nodes


def maximal_subsystems(sys: RootSystem) -> list[SubsystemSpec]:
    """One-step children through prime marks (maximal closed subsystems
    of maximal rank), deduplicated by signature."""
    out, seen = [], set()
    for child, _ in bds_children(whole_system(sys), prime_marks_only=True):
        if child.signature not in seen:
            seen.add(child.signature)
            out.append(child)
    return out


def _subsets(n: int, size: int):
    return combinations(range(n), size)


def _extended_signatures(spec: SubsystemSpec) -> set:
    """Signatures of subsystems generated by per-component proper subsets
    of the extended node sets of ``spec``."""
    sys = spec.ambient
    comps = _component_root_sets(spec)
    choices = []
    for base, roots in comps:
        rho = _component_highest(sys, roots)
        ext = [tuple(-c for c in rho)] + list(base)
        subsets = []
        for mask in range(1 << len(ext)):
            if mask == (1 << len(ext)) - 1:
                continue
            subsets.append([ext[k] for k in range(len(ext)) if mask >> k & 1])
        choices.append(subsets)
    sigs = set()
    for combo in product(*choices):
        base = [b for part in combo for b in part]
        sigs.add(subsystem_from_base(sys, base).signature if base else ())
    return sigs


def deriziotis_check(phi: SubsystemSpec, within: Optional[SubsystemSpec] = None, p: Optional[int] = None) -> bool:
    """Whether ``phi`` has a base W-conjugate into a proper subset of the
    extended simple system of ``within`` (default: the ambient system).

    Conjugacy is decided by signature (component types and root lengths).
    ``phi`` equal to ``within`` is reported as ``False``.
    """
    sys = phi.ambient
    within = within or whole_system(sys)
    if p is not None and good_primes(sys).is_bad(p):
        raise ValueError(f"p = {p} is bad for {sys.name}")
    if phi.roots == within.roots:
        return False
    if not phi.roots <= within.roots:
        return False
    return phi.signature in _extended_signatures(within)


# -------------------------------------------------------------- registry
_NAMED_FOLDINGS = {
    "E6/F4-folding": ("E6", (5, 1, 4, 3, 2, 0)),
    "D4/G2-triality": ("D4", (2, 1, 3, 0)),
    "D4/B3-folding": ("D4", (0, 1, 3, 2)),
}


def _levi_nodes(text: str, rank: int) -> list[int]:
    nodes = [int(c) - 1 for c in text]
    if any(not 0 <= i < rank for i in nodes) or len(set(nodes)) != len(nodes):
        raise ValueError(f"bad Levi node list {text!r}")
    return nodes


def find_subsystem(sys: RootSystem, name: str) -> SubsystemSpec:
    """Locate a subsystem by name among BdS outputs and standard Levis."""
    key = normalize_label(name)
    for node in borel_de_siebenthal(sys):
        if normalize_label(node.spec.name) == key:
            return node.spec
    raise KeyError(f"no subsystem named {name!r} in {sys.name}")


@lru_cache(maxsize=None)
def named_embedding(ident: str) -> Embedding:
    """Built-in embeddings addressable by name.

    ``E6/F4-folding``, ``D4/G2-triality``, ``D4/B3-folding``,
    ``D4xD4/diagonal``, ``E8/D4xD4-diagonal``, ``<type>/levi-<nodes>``
    (1-based nodes, e.g. ``F4/levi-234``) and ``<type>/<subsystem>`` (e.g.
    ``F4/B4``, ``F4/A1+C3``, ``F4/A2+~A2``).
    """
    if ident in _NAMED_FOLDINGS:
        name, perm = _NAMED_FOLDINGS[ident]
        sys = build_root_system(name)
        return fixed_point_embedding(diagram_automorphism(sys, perm), build_algebra(sys), id=ident)
    if ident == "E8/D4xD4-diagonal":
        return _e8_diagonal()
    if "/" not in ident:
        raise KeyError(f"unknown embedding {ident!r}")
    head, tail = ident.split("/", 1)
    try:
        sys = build_root_system(parse_type(head))
    except ValueError as exc:
        raise KeyError(f"unknown embedding {ident!r}") from exc
    alg = build_algebra(sys)
    if tail == "diagonal":
        return diagonal_embedding(sys, id=ident)
    if tail == "identity":
        return regular_embedding(whole_system(sys), alg, id=ident)
    m = re.fullmatch(r"levi-(\d+)", tail)
    if m:
        try:
            nodes = _levi_nodes(m.group(1), sys.rank)
        except ValueError as exc:
            raise KeyError(str(exc)) from exc
        return regular_embedding(standard_levi(sys, nodes), alg, id=ident)
    try:
        spec = find_subsystem(sys, tail)
    except KeyError as exc:
        raise KeyError(f"unknown embedding {ident!r}") from exc
    return regular_embedding(spec, alg, id=ident)


def _e8_diagonal() -> Embedding:
    sys = build_root_system("E8")
    alg = build_algebra(sys)
    spec = None
    frontier = [whole_system(sys)]
    seen = set()
    target = (("D", 4, (2, 2, 2, 2)), ("D", 4, (2, 2, 2, 2)))
    while frontier and spec is None:
        nxt = []
        for s in frontier:
            for child, _ in bds_children(s):
                if child.signature == target:
                    spec = child
                    break
                if child.signature not in seen and child.rank == 8:
                    seen.add(child.signature)
                    nxt.append(child)
            if spec is not None:
                break
        frontier = nxt
    if spec is None:
        raise AssertionError("no D4+D4 subsystem found in E8")
    reg = regular_embedding(spec, alg, id="E8/D4xD4")
    diag = diagonal_embedding(reg.sub_system, id="D4xD4/diagonal")
    emb = compose(reg, diag, id="E8/D4xD4-diagonal", kind="diagonal")
    emb.subsystem = spec
    return emb


def list_named() -> list[str]:
    return [
        "E6/F4-folding",
        "D4/G2-triality",
        "D4/B3-folding",
        "D4xD4/diagonal",
        "E8/D4xD4-diagonal",
        "F4/B4",
        "F4/A1+C3",
        "F4/A2+~A2",
        "<type>/levi-<nodes>",
        "<type>/<subsystem>",
    ]
