"""Nilpotent orbits via Bala-Carter data.

Every orbit is realized by a representative ``e`` built from a standard
Levi subalgebra and a distinguished even labeling of it, completed to an
sl(2)-triple whose ``h`` lies in the Cartan frame. Labels follow the usual
Bala-Carter typography with ASCII conventions: ``~`` marks a Levi factor
of type A made of short roots, multiplicities are written ``2A1``,
factors are joined by ``+`` and decorations are ``(a1)``, ``(b4)`` etc.
"""

from __future__ import annotations

import json
import os
import random
import re
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product
from pathlib import Path
from typing import Optional, Sequence

from . import __version__, linalg
from .chevalley import (
    ChevalleyAlgebra,
    LieElement,
    Subalgebra,
    build_algebra,
    centralizer,
    reductive_rank,
)
from .cocharacters import Cocharacter, grade, pairings_of_cartan
from .rootdata import (
    RootSystem,
    SimpleType,
    build_root_system,
    recognize,
    to_dominant,
)

Q = Fraction


class NotInCartanFrame(ValueError):
    """Nilpotent input admitting no triple with ``h`` in the Cartan frame
    by the direct solve (it must be conjugated first)."""


@dataclass(frozen=True)
class Sl2Triple:
    e: LieElement
    h: LieElement
    f: LieElement

    def check(self) -> bool:
        alg = self.e.alg
        b = alg.bracket
        return (
            b(self.h, self.e) == self.e * 2
            and b(self.h, self.f) == self.f * -2
            and b(self.e, self.f) == self.h
            and all(k >= alg.nroots for k in self.h.coeffs)
        )

    def cocharacter(self) -> Cocharacter:
        alg = self.h.alg
        return Cocharacter(tuple(pairings_of_cartan(alg.sys, self.h.cartan_part())), alg.sys)


def _span_rows(alg: ChevalleyAlgebra, elems: Sequence[LieElement]) -> list[list[Fraction]]:
    return [x.dense() for x in elems if not x.is_zero()]


def is_nilpotent(e: LieElement) -> bool:
    """``ad e`` nilpotent, decided by iterating ``W -> [e, W]`` from ``W = g``."""
    alg = e.alg
    if e.is_zero():
        return True
    cur = [alg.basis_element(k) for k in range(alg.dimension)]
    dim = alg.dimension
    while True:
        img = [alg.bracket(e, w) for w in cur]
        rows = _span_rows(alg, img)
        if not rows:
            return True
        basis = linalg.span_basis(rows, alg.dimension)
        if len(basis) == dim:
            return False
        dim = len(basis)
        cur = [alg.element(v) for v in basis]


def _solve_f(alg: ChevalleyAlgebra, e: LieElement, h: LieElement) -> Optional[LieElement]:
    sys = alg.sys
    pair = pairings_of_cartan(sys, h.cartan_part())
    cand = [k for k, b in enumerate(sys.roots) if sum(c * p for c, p in zip(b, pair)) == -2]
    if not cand:
        return None
    cols = [alg.bracket(e, alg.basis_element(k)) for k in cand]
    hd = h.dense()
    used = sorted({k for c in cols for k in c.coeffs} | set(h.coeffs))
    rows = [[c.coeffs.get(k, Q(0)) for c in cols] for k in used]
    rhs = [hd[k] for k in used]
    sol = linalg.solve(rows, rhs, len(cand))
    if sol is None:
        return None
    return LieElement(alg, {k: c for k, c in zip(cand, sol)})


def jacobson_morozov(e: LieElement) -> Sl2Triple:
    """Complete a nilpotent ``e`` to an sl(2)-triple with ``h`` in the Cartan.

    ``h`` solves ``<beta, h> = 2`` on the root support of ``e`` together with
    ``kappa(h, c(e)) = 0`` (so ``h`` lies in the image of ``ad e``); ``f`` then
    solves ``[e, f] = h`` inside ``g(-2, h)``.
    """
    alg = e.alg
    if e.is_zero():
        z = alg.zero()
        return Sl2Triple(z, z, z)
    sys = alg.sys
    r = sys.rank
    if all(k < alg.nroots for k in e.coeffs):
        supp = e.support_roots()
        rows = [[sys.pairing(b, j) for j in range(r)] for b in supp]
        rhs = [2] * len(rows)
        kil = alg.killing_cartan()
        for z in centralizer(e).basis_elements:
            zc = z.cartan_part()
            if any(zc):
                rows.append([sum(kil[i][j] * zc[j] for j in range(r)) for i in range(r)])
                rhs.append(0)
        x = linalg.solve(rows, rhs, r)
        if x is not None:
            h = alg.cartan_element(x)
            if alg.bracket(h, e) == e * 2:
                f = _solve_f(alg, e, h)
                if f is not None:
                    t = Sl2Triple(e, h, f)
                    if not t.check():
                        raise AssertionError("constructed triple fails the sl(2) relations")
                    return t
    if not is_nilpotent(e):
        raise ValueError("element is not nilpotent")
    raise NotInCartanFrame("no sl(2)-triple with h in the Cartan frame for this representative")


def weighted_diagram(t: Sl2Triple) -> tuple:
    """Dominant pairing vector of ``h`` (entries in {0, 1, 2})."""
    alg = t.h.alg
    if any(k < alg.nroots for k in t.h.coeffs):
        raise ValueError("h is not in the Cartan frame")
    v = pairings_of_cartan(alg.sys, t.h.cartan_part())
    if any(Q(x).denominator != 1 for x in v):
        raise AssertionError(f"non-integral pairings of h: {v}")
    d, _ = to_dominant(alg.sys, [int(x) for x in v])
    if any(x not in (0, 1, 2) for x in d):
        raise AssertionError(f"weighted diagram {d} has entries outside {{0,1,2}}")
    return tuple(int(x) for x in d)


# ------------------------------------------------------------- labeling
_FAMILY_ORDER = {f: i for i, f in enumerate("EFDCBGA")}


@lru_cache(maxsize=None)
def distinguished_labelings(t: SimpleType) -> tuple:
    """Even labelings of a simple type with ``dim l(0) = dim l(2)``.

    Returns ``(labeling, decoration)`` pairs; the regular labeling has the
    empty decoration, others get ``a_i`` with ``i`` the number of zeros,
    letters assigned by decreasing orbit dimension on ties.
    """
    sys = build_root_system([t])
    found = []
    for lab in product((0, 2), repeat=t.rank):
        n0 = n2 = 0
        for b in sys.positive_roots:
            d = sum(c * x for c, x in zip(b, lab))
            if d == 0:
                n0 += 1
            elif d == 2:
                n2 += 1
        if t.rank + 2 * n0 == n2:
            dim_orbit = len(sys.roots) + t.rank - (t.rank + 2 * n0)
            found.append((lab, lab.count(0), dim_orbit))
    groups: dict[int, list] = {}
    for lab, zeros, dim in found:
        groups.setdefault(zeros, []).append((lab, dim))
    out = []
    for zeros in sorted(groups):
        members = sorted(groups[zeros], key=lambda ld: (-ld[1], tuple(-x for x in ld[0])))
        for k, (lab, _) in enumerate(members):
            dec = "" if zeros == 0 else f"({'abcdefgh'[k]}{zeros})"
            out.append((lab, dec))
    return tuple(out)


def _component_name(sys: RootSystem, t: SimpleType, nodes: Sequence[int], dec: str) -> tuple:
    amb = sys.node_component[nodes[0]]
    short = (not sys.simply_laced_components[amb]) and all(
        sys.lengths[i] < sys.max_length(amb) for i in nodes
    )
    tilde = "~" if short and t.family == "A" else ""
    return (-t.rank, _FAMILY_ORDER[t.family], short, dec), tilde + t.name + dec


def bala_carter_label(sys: RootSystem, parts: Sequence[tuple]) -> str:
    """Label from ``(type, nodes, decoration)`` Levi components."""
    if not parts:
        return "0"
    named = sorted(_component_name(sys, t, nodes, dec) for t, nodes, dec in parts)
    out, i = [], 0
    while i < len(named):
        j = i
        while j < len(named) and named[j][1] == named[i][1]:
            j += 1
        mult = j - i
        out.append((str(mult) if mult > 1 else "") + named[i][1])
        i = j
    return "+".join(out)


_TILDE = re.compile(r"\\tilde\s*\{?\s*([A-G])\s*\}?")


def normalize_label(label: str) -> str:
    """Canonical comparison key for Bala-Carter labels.

    Removes ``+``, whitespace, ``_``, braces and ``$``; maps ``Ã``,
    combining tildes and ``\\tilde{A}`` to ``~A``; the bare ``1`` (trivial
    class) becomes ``0``.
    """
    s = _TILDE.sub(r"~\1", label)
    s = s.replace("Ã", "~A").replace("A\u0303", "~A")
    s = re.sub(r"[+\s_{}$]", "", s)
    if s == "1":
        s = "0"
    return s


# --------------------------------------------------------------- catalog
@dataclass
class NilpotentOrbit:
    label: str
    representative: LieElement
    triple: Sl2Triple
    diagram: tuple
    dim_orbit: int
    centralizer_dim: int
    reductive_rank: int
    distinguished: bool
    levi_nodes: tuple = ()
    levi_labeling: tuple = ()

    def cocharacter(self) -> Cocharacter:
        return Cocharacter(self.diagram, self.representative.alg.sys)


@dataclass
class OrbitCatalog:
    system: RootSystem
    alg: ChevalleyAlgebra
    orbits: list
    seed: int = 0
    source: str = "computed"  # "computed", "cache" or "memory"
    _by_diagram: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self._by_diagram = {o.diagram: o for o in self.orbits}
        if len(self._by_diagram) != len(self.orbits):
            raise AssertionError("catalog diagrams are not pairwise distinct")

    def __len__(self):
        return len(self.orbits)

    def __iter__(self):
        return iter(self.orbits)

    def by_diagram(self, d: Sequence[int]) -> Optional[NilpotentOrbit]:
        return self._by_diagram.get(tuple(d))

    def find(self, label: str) -> NilpotentOrbit:
        key = normalize_label(label)
        hits = [o for o in self.orbits if normalize_label(o.label) == key]
        if len(hits) != 1:
            raise KeyError(f"no unique orbit labeled {label!r} in {self.system.name}")
        return hits[0]

    def labels(self) -> list[str]:
        return [o.label for o in self.orbits]


def _levi_parts(sys: RootSystem, J: Sequence[int]):
    sub = [[sys.cartan[a][b] for b in J] for a in J]
    return [(t, tuple(J[k] for k in nodes)) for t, nodes in recognize(sub)]


def _combinatorial_diagram(sys: RootSystem, J: Sequence[int], lab: dict) -> tuple:
    """Dominant pairings of the Cartan element of the Levi's labeling."""
    if not J:
        return tuple([0] * sys.rank)
    rows = [[sys.cartan[k][j] for k in J] for j in J]
    y = linalg.solve(rows, [lab[j] for j in J], len(J))
    v = [sum(yk * sys.cartan[k][i] for yk, k in zip(y, J)) for i in range(sys.rank)]
    if any(x.denominator != 1 for x in v):
        raise AssertionError("non-integral Levi cocharacter")
    d, _ = to_dominant(sys, [int(x) for x in v])
    return tuple(d)


def _candidates(sys: RootSystem) -> list:
    """``(J, labeling, label, diagram)`` per distinct combinatorial diagram."""
    seen: dict[tuple, tuple] = {}
    out = []
    for size in range(sys.rank + 1):
        for J in combinations(range(sys.rank), size):
            parts = _levi_parts(sys, J)
            options = [distinguished_labelings(t) for t, _ in parts]
            for choice in product(*options):
                lab = {}
                named = []
                for (t, nodes), (labs, dec) in zip(parts, choice):
                    for k, i in enumerate(nodes):
                        lab[i] = labs[k]
                    named.append((t, nodes, dec))
                d = _combinatorial_diagram(sys, J, lab)
                if d in seen:
                    continue
                label = bala_carter_label(sys, named)
                seen[d] = J
                out.append((J, tuple(lab[j] for j in J), label, d))
    return out


def _levi_basis(alg: ChevalleyAlgebra, J: Sequence[int]) -> list[LieElement]:
    sys = alg.sys
    out = [
        alg.basis_element(k)
        for k, b in enumerate(sys.roots)
        if all(b[i] == 0 for i in range(sys.rank) if i not in J)
    ]
    out += [alg.basis_element(alg.nroots + i) for i in range(sys.rank)]
    return out


def _coefficient_sequences(n: int, seed: int):
    yield [1] * n
    yield list(range(1, n + 1))
    rng = random.Random(seed)
    bound = 10
    for _ in range(30):
        yield [rng.randint(1, bound) for _ in range(n)]
        bound *= 2


def _centralizer_dim(alg: ChevalleyAlgebra, e: LieElement, ws: Sequence[LieElement]) -> int:
    rows = [r for r in alg.ad_columns(e, ws) if any(r)]
    return len(ws) - (linalg.rank(rows, len(ws)) if rows else 0)


def realize_orbit(alg: ChevalleyAlgebra, J: Sequence[int], labeling: Sequence[int], label: str, seed: int = 0) -> NilpotentOrbit:
    """Representative, triple and invariants for one Bala-Carter datum."""
    sys = alg.sys
    J = tuple(J)
    lab = dict(zip(J, labeling))
    expected = _combinatorial_diagram(sys, J, lab)
    lroots = [
        (k, b) for k, b in enumerate(sys.roots)
        if all(b[i] == 0 for i in range(sys.rank) if i not in J)
    ]
    deg = {k: sum(b[j] * lab[j] for j in J) for k, b in lroots}
    two = [k for k, _ in lroots if deg[k] == 2]
    l0 = sys.rank + sum(1 for k, _ in lroots if deg[k] == 0)
    ws = _levi_basis(alg, J)
    if not two:
        e = alg.zero()
    else:
        for coeffs in _coefficient_sequences(len(two), seed):
            e = LieElement(alg, dict(zip(two, coeffs)))
            if _centralizer_dim(alg, e, ws) == l0:
                break
        else:
            raise RuntimeError(f"no generic representative found for {label}")
    t = jacobson_morozov(e)
    if e.is_zero():
        diag = tuple([0] * sys.rank)
    else:
        diag = weighted_diagram(t)
    if diag != expected:
        raise AssertionError(f"{label}: triple diagram {diag} differs from Levi diagram {expected}")
    full = [alg.basis_element(k) for k in range(alg.dimension)]
    cdim = _centralizer_dim(alg, e, full)
    lam = t.cocharacter() if not e.is_zero() else Cocharacter(tuple([0] * sys.rank), sys)
    gr = grade(alg, lam)
    if cdim != gr.dim(0) + gr.dim(1):
        raise AssertionError(f"{label}: centralizer dimension {cdim} != dim g(0) + dim g(1)")
    c0 = centralizer(e, gr.piece(0)) if not e.is_zero() else alg.full()
    rr = reductive_rank(c0, seed=seed)
    if rr != sys.rank - len(J):
        raise AssertionError(f"{label}: reductive rank {rr} != rank - |J| = {sys.rank - len(J)}")
    dist = rr == 0
    if dist != (gr.dim(0) == gr.dim(2)) or dist != (len(J) == sys.rank):
        raise AssertionError(f"{label}: distinguished cross-check failed")
    return NilpotentOrbit(
        label=label,
        representative=e,
        triple=t,
        diagram=diag,
        dim_orbit=alg.dimension - cdim,
        centralizer_dim=cdim,
        reductive_rank=rr,
        distinguished=dist,
        levi_nodes=J,
        levi_labeling=tuple(labeling),
    )


def _realize_task(args):
    name, J, labeling, label, seed = args
    alg = build_algebra(name)
    return orbit_to_json(realize_orbit(alg, J, labeling, label, seed))


def _assign_primes(orbits: list) -> None:
    # every member of a clash gets primes: ' on the largest orbit, then '', ...
    groups: dict[str, list] = {}
    for o in orbits:
        groups.setdefault(o.label, []).append(o)
    for members in groups.values():
        if len(members) > 1:
            members.sort(key=lambda o: (-o.dim_orbit, tuple(-x for x in o.diagram)))
            for k, o in enumerate(members, 1):
                o.label = o.label + "'" * k


def enumerate_orbits(alg: ChevalleyAlgebra, seed: int = 0, jobs: int = 1) -> OrbitCatalog:
    """Bala-Carter catalog of nilpotent orbits (zero orbit included).

    Semisimple systems with several simple factors are handled as the
    product of the factor catalogs; labels are then joined by ``x``.
    """
    sys = alg.sys
    if len(sys.components) > 1:
        return _product_catalog(alg, seed, jobs)
    cands = _candidates(sys)
    tasks = [(sys.name, J, lab, label, seed) for J, lab, label, _ in cands]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            docs = list(ex.map(_realize_task, tasks))
        orbits = [orbit_from_json(alg, d) for d in docs]
    else:
        orbits = [realize_orbit(alg, J, lab, label, seed) for _, J, lab, label, seed in tasks]
    orbits.sort(key=lambda o: (o.dim_orbit, tuple(-x for x in o.diagram)))
    _assign_primes(orbits)
    return OrbitCatalog(sys, alg, orbits, seed)


def _embed_component(alg: ChevalleyAlgebra, part: ChevalleyAlgebra, off: int, x: LieElement) -> LieElement:
    """Image of an element of a factor algebra under the block inclusion."""
    sys = alg.sys
    out = {}
    for k, c in x.coeffs.items():
        if k < part.nroots:
            b = part.sys.roots[k]
            full = tuple([0] * off) + b + tuple([0] * (sys.rank - off - len(b)))
            out[sys.index[full]] = c
        else:
            out[alg.nroots + off + (k - part.nroots)] = c
    return LieElement(alg, out)


def _product_catalog(alg: ChevalleyAlgebra, seed: int, jobs: int) -> OrbitCatalog:
    sys = alg.sys
    parts = [build_algebra(build_root_system([t])) for t in sys.components]
    cats = [enumerate_orbits(p, seed, jobs) for p in parts]
    orbits = []
    for combo in product(*[c.orbits for c in cats]):
        e = alg.zero()
        h = alg.zero()
        f = alg.zero()
        J, labs = [], []
        for k, o in enumerate(combo):
            off = sys.offsets[k]
            e = e + _embed_component(alg, parts[k], off, o.triple.e)
            h = h + _embed_component(alg, parts[k], off, o.triple.h)
            f = f + _embed_component(alg, parts[k], off, o.triple.f)
            J.extend(off + j for j in o.levi_nodes)
            labs.extend(o.levi_labeling)
        t = Sl2Triple(e, h, f)
        if not t.check():
            raise AssertionError("product triple fails the sl(2) relations")
        diag = tuple(x for o in combo for x in o.diagram)
        if not e.is_zero() and weighted_diagram(t) != diag:
            raise AssertionError("product diagram mismatch")
        cdim = sum(o.centralizer_dim for o in combo)
        orbits.append(
            NilpotentOrbit(
                label="x".join(o.label for o in combo),
                representative=e,
                triple=t,
                diagram=diag,
                dim_orbit=alg.dimension - cdim,
                centralizer_dim=cdim,
                reductive_rank=sum(o.reductive_rank for o in combo),
                distinguished=all(o.distinguished for o in combo),
                levi_nodes=tuple(J),
                levi_labeling=tuple(labs),
            )
        )
    orbits.sort(key=lambda o: (o.dim_orbit, tuple(-x for x in o.diagram)))
    return OrbitCatalog(sys, alg, orbits, seed)


def identify_orbit(e: LieElement, catalog: OrbitCatalog) -> NilpotentOrbit:
    """Catalog entry of the orbit of ``e`` (matched by weighted diagram)."""
    alg = catalog.alg
    if e.alg is not alg:
        raise ValueError("element is not in the catalog's algebra")
    if e.is_zero():
        return catalog.by_diagram([0] * alg.sys.rank)
    t = jacobson_morozov(e)
    d = weighted_diagram(t)
    o = catalog.by_diagram(d)
    if o is None:
        raise LookupError(f"diagram {d} not in the {alg.sys.name} catalog")
    full = [alg.basis_element(k) for k in range(alg.dimension)]
    if _centralizer_dim(alg, e, full) != o.centralizer_dim:
        raise AssertionError("centralizer dimension disagrees with the catalog entry")
    return o


def is_distinguished(o: NilpotentOrbit, alg: Optional[ChevalleyAlgebra] = None, seed: int = 0) -> bool:
    """Recompute distinguishedness from the centralizer in degree 0."""
    alg = alg or o.representative.alg
    e = o.triple.e
    lam = o.triple.cocharacter() if not e.is_zero() else Cocharacter(tuple([0] * alg.sys.rank), alg.sys)
    gr = grade(alg, lam)
    c0 = centralizer(e, gr.piece(0)) if not e.is_zero() else alg.full()
    rr = reductive_rank(c0, seed=seed)
    dist = rr == 0
    if dist != (gr.dim(0) == gr.dim(2)):
        raise AssertionError("distinguished criteria disagree")
    return dist


# ----------------------------------------------------------- persistence
def element_to_json(x: LieElement) -> dict:
    return {str(k): str(v) for k, v in sorted(x.coeffs.items())}


def element_from_json(alg: ChevalleyAlgebra, doc: dict) -> LieElement:
    return LieElement(alg, {int(k): Q(v) for k, v in doc.items()})


def orbit_to_json(o: NilpotentOrbit) -> dict:
    return {
        "label": o.label,
        "diagram": list(o.diagram),
        "dim_orbit": o.dim_orbit,
        "centralizer_dim": o.centralizer_dim,
        "reductive_rank": o.reductive_rank,
        "distinguished": o.distinguished,
        "levi_nodes": list(o.levi_nodes),
        "levi_labeling": list(o.levi_labeling),
        "e": element_to_json(o.triple.e),
        "h": element_to_json(o.triple.h),
        "f": element_to_json(o.triple.f),
    }


def orbit_from_json(alg: ChevalleyAlgebra, doc: dict) -> NilpotentOrbit:
    t = Sl2Triple(
        element_from_json(alg, doc["e"]),
        element_from_json(alg, doc["h"]),
        element_from_json(alg, doc["f"]),
    )
    if not t.check():
        raise ValueError(f"stored triple for {doc['label']} fails the sl(2) relations")
    if not t.e.is_zero() and weighted_diagram(t) != tuple(doc["diagram"]):
        raise ValueError(f"stored diagram for {doc['label']} does not match its triple")
    return NilpotentOrbit(
        label=doc["label"],
        representative=t.e,
        triple=t,
        diagram=tuple(doc["diagram"]),
        dim_orbit=doc["dim_orbit"],
        centralizer_dim=doc["centralizer_dim"],
        reductive_rank=doc["reductive_rank"],
        distinguished=doc["distinguished"],
        levi_nodes=tuple(doc["levi_nodes"]),
        levi_labeling=tuple(doc["levi_labeling"]),
    )


def catalog_to_json(cat: OrbitCatalog) -> dict:
    return {
        "artifact_version": __version__,
        "system": cat.system.name,
        "seed": cat.seed,
        "orbits": [orbit_to_json(o) for o in cat.orbits],
    }


def catalog_from_json(doc: dict, alg: Optional[ChevalleyAlgebra] = None) -> OrbitCatalog:
    alg = alg or build_algebra(doc["system"])
    if alg.sys.name != doc["system"]:
        raise ValueError("catalog belongs to a different system")
    orbits = [orbit_from_json(alg, d) for d in doc["orbits"]]
    return OrbitCatalog(alg.sys, alg, orbits, doc.get("seed", 0))


def cache_dir(override: Optional[str] = None) -> Path:
    if override:
        return Path(override)
    env = os.environ.get("COCHAR_CACHE_DIR")
    if env:
        return Path(env)
    base = os.environ.get("XDG_CACHE_HOME") or os.path.join(os.path.expanduser("~"), ".cache")
    return Path(base) / "cochar"


def cache_path(system_name: str, directory: Optional[str] = None) -> Path:
    return cache_dir(directory) / f"catalog-{system_name}.json"


_MEMO: dict = {}


def get_catalog(
    system,
    seed: int = 0,
    jobs: int = 1,
    use_cache: bool = True,
    directory: Optional[str] = None,
) -> OrbitCatalog:
    """Catalog for a system, from memory, the JSON cache, or computed.

    Cached files are accepted only when version, system and seed match and
    every stored triple passes the sl(2) relations again.
    """
    alg = system if isinstance(system, ChevalleyAlgebra) else build_algebra(system)
    key = (alg.sys.name, seed)
    path = cache_path(alg.sys.name, directory)
    if key in _MEMO:
        cat = _MEMO[key]
        cat.source = "memory"
        if use_cache and not path.exists():
            _write_cache(cat, path)
        return cat
    cat = None
    if use_cache and path.exists():
        try:
            doc = json.loads(path.read_text())
            if (
                doc.get("artifact_version") == __version__
                and doc.get("system") == alg.sys.name
                and doc.get("seed") == seed
            ):
                cat = catalog_from_json(doc, alg)
                cat.source = "cache"
        except (ValueError, KeyError, TypeError):
            cat = None
    if cat is None:
        cat = enumerate_orbits(alg, seed=seed, jobs=jobs)
        if use_cache:
            _write_cache(cat, path)
    _MEMO[key] = cat
    return cat


def _write_cache(cat: OrbitCatalog, path: Path) -> None:
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        tmp = path.with_suffix(".tmp")
        tmp.write_text(json.dumps(catalog_to_json(cat)))
        tmp.replace(path)
    except OSError:
        pass  # cache is an optimization only


def clear_cache(directory: Optional[str] = None) -> list[str]:
    d = cache_dir(directory)
    removed = []
    if d.exists():
        for p in sorted(d.glob("catalog-*.json")):
            p.unlink()
            removed.append(str(p))
    _MEMO.clear()
    return removed


def inspect_cache(directory: Optional[str] = None) -> list[dict]:
    d = cache_dir(directory)
    out = []
    if d.exists():
        for p in sorted(d.glob("catalog-*.json")):
            try:
                doc = json.loads(p.read_text())
                out.append(
                    {
                        "path": str(p),
                        "system": doc.get("system"),
                        "artifact_version": doc.get("artifact_version"),
                        "seed": doc.get("seed"),
                        "orbits": len(doc.get("orbits", [])),
                    }
                )
            except ValueError:
                out.append({"path": str(p), "error": "unreadable"})
    return out
