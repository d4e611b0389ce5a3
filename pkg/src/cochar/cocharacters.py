"""Cocharacters of the fixed maximal torus and the gradings they induce.

A cocharacter is stored through its pairings ``<alpha_i, lambda>`` with the
simple roots, i.e. as an element of the coweight lattice (adjoint
isogeny type). Membership in the derived subgroup of a Levi subgroup is
decided by rational-span membership among that Levi's coroots.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from . import linalg
from .chevalley import ChevalleyAlgebra, LieElement, Subalgebra
from .rootdata import RootSystem, SubsystemSpec, subsystem_from_roots, to_dominant

Q = Fraction


@dataclass(frozen=True)
class Cocharacter:
    pairings: tuple
    ambient: RootSystem

    def __post_init__(self):
        if len(self.pairings) != self.ambient.rank:
            raise ValueError("pairing vector has wrong length")
        vals = []
        for x in self.pairings:
            q = Q(x)
            if q.denominator != 1:
                raise ValueError("cocharacter pairings must be integers")
            vals.append(int(q))
        object.__setattr__(self, "pairings", tuple(vals))

    def degree(self, beta: Sequence[int]) -> int:
        return sum(c * x for c, x in zip(beta, self.pairings))

    def __neg__(self) -> "Cocharacter":
        return Cocharacter(tuple(-x for x in self.pairings), self.ambient)

    def scaled(self, k: int) -> "Cocharacter":
        return Cocharacter(tuple(k * x for x in self.pairings), self.ambient)

    def dominant(self) -> "Cocharacter":
        v, _ = to_dominant(self.ambient, self.pairings)
        return Cocharacter(v, self.ambient)

    def is_zero(self) -> bool:
        return not any(self.pairings)

    def coroot_coords(self) -> list[Fraction]:
        return cartan_coords(self.ambient, self.pairings)

    def to_list(self) -> list[int]:
        return list(self.pairings)


def pairings_of_cartan(sys: RootSystem, coords: Sequence) -> list:
    """Pairings ``<alpha_i, h>`` for ``h = sum coords[j] h_j``."""
    return [sum(Q(c) * sys.cartan[j][i] for j, c in enumerate(coords) if c) for i in range(sys.rank)]


def cartan_coords(sys: RootSystem, pairings: Sequence) -> list[Fraction]:
    """Coroot coordinates of the Cartan element with the given pairings."""
    if sys.rank == 0:
        return []
    cols = [[sys.cartan[j][i] for j in range(sys.rank)] for i in range(sys.rank)]
    x = linalg.solve(cols, list(pairings), sys.rank)
    if x is None:
        raise AssertionError("Cartan matrix is singular")
    return x


def cocharacter_of(x: LieElement) -> Cocharacter:
    """Cocharacter whose differential is the Cartan element ``x``."""
    alg = x.alg
    if any(k < alg.nroots for k in x.coeffs):
        raise ValueError("element is not in the Cartan subalgebra")
    return Cocharacter(tuple(pairings_of_cartan(alg.sys, x.cartan_part())), alg.sys)


def cartan_element_of(alg: ChevalleyAlgebra, lam: Cocharacter) -> LieElement:
    return alg.cartan_element(cartan_coords(alg.sys, lam.pairings))


@dataclass(frozen=True)
class GradedDecomposition:
    alg: ChevalleyAlgebra
    lam: Cocharacter
    by_degree: dict  # degree -> list of basis indices

    def dim(self, j: int) -> int:
        return len(self.by_degree.get(j, ()))

    def dims(self) -> dict:
        return {j: len(v) for j, v in sorted(self.by_degree.items())}

    def piece(self, j: int) -> Subalgebra:
        return Subalgebra(self.alg, [self.alg.basis_element(k) for k in self.by_degree.get(j, ())], check=False)

    def roots(self, j: int) -> list[tuple]:
        n = self.alg.nroots
        return [self.alg.sys.roots[k] for k in self.by_degree.get(j, ()) if k < n]

    def degree_of(self, x: LieElement):
        """The common degree of a homogeneous element (None if not homogeneous)."""
        degs = {self._deg[k] for k in x.coeffs}
        if len(degs) == 1:
            return degs.pop()
        return 0 if not degs else None

    @property
    def _deg(self) -> dict:
        return {k: j for j, ks in self.by_degree.items() for k in ks}


def grade(alg: ChevalleyAlgebra, lam: Cocharacter) -> GradedDecomposition:
    if lam.ambient is not alg.sys:
        raise ValueError("cocharacter lives on a different root system")
    by: dict[int, list[int]] = {}
    for k, beta in enumerate(alg.sys.roots):
        by.setdefault(lam.degree(beta), []).append(k)
    by.setdefault(0, []).extend(range(alg.nroots, alg.dimension))
    return GradedDecomposition(alg, lam, dict(sorted(by.items())))


def parabolic_of(lam: Cocharacter) -> frozenset:
    """Roots of the parabolic ``P_lambda``: ``<beta, lambda> >= 0``."""
    return frozenset(b for b in lam.ambient.roots if lam.degree(b) >= 0)


def levi_of(lam: Cocharacter) -> SubsystemSpec:
    """Levi subsystem ``L_lambda = C_G(lambda)``: ``<beta, lambda> = 0``."""
    roots = frozenset(b for b in lam.ambient.roots if lam.degree(b) == 0)
    return subsystem_from_roots(lam.ambient, roots)


def in_derived_of(lam: Cocharacter, levi: SubsystemSpec) -> bool:
    """Whether ``lambda(k^*)`` lies in the derived subgroup of the Levi.

    True iff the pairing vector of ``lambda`` is a rational combination of
    pairing vectors of the Levi's coroots.
    """
    if lam.is_zero():
        return True
    sys = lam.ambient
    if not levi.base:
        return False
    rows = [[sys.coroot_pairing(sys.simple_root(i), g) for i in range(sys.rank)] for g in levi.base]
    return linalg.in_span(rows, list(lam.pairings)) is not None
