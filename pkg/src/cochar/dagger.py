"""Associated cocharacters and the comparison between H and G.

For a nilpotent ``e`` in the image of an embedding ``H -> G`` and the
H-associated cocharacter ``lambda_H`` coming from an H-triple, the report
records whether the image ``lambda_G`` is G-associated, the fused G-orbit,
the reductive ranks of ``c_h(e) ∩ h(0)`` and ``c_g(e) ∩ g(0)``, and
which of the available sufficient conditions settles the comparison.

Association in characteristic 0 is decided by the sl(2) criterion: ``e``
lies in ``g(2, lambda)`` and ``h_lambda`` completes ``e`` to an sl(2)-triple.
The literal Levi-subgroup definition is available as an independent
search for small ranks.
"""

from __future__ import annotations

import json
from collections import deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Optional

from . import linalg
from .chevalley import ChevalleyAlgebra, LieElement, Subalgebra, centralizer, reductive_rank
from .cocharacters import Cocharacter, cartan_element_of, grade, in_derived_of, parabolic_of
from .orbits import (
    NilpotentOrbit,
    OrbitCatalog,
    Sl2Triple,
    _solve_f,
    get_catalog,
    identify_orbit,
    jacobson_morozov,
    normalize_label,
)
from .rootdata import SubsystemSpec, subsystem_from_roots
from .subgroups import Embedding, named_embedding

Q = Fraction

DIST = "DAGGER_VERIFIED_BY_DIST"
RANK = "DAGGER_VERIFIED_BY_RANK"
REDUCTION = "DAGGER_VERIFIED_BY_REDUCTION"
INCONCLUSIVE = "INCONCLUSIVE"
VERDICTS = (DIST, RANK, REDUCTION, INCONCLUSIVE)


@dataclass
class AssociatedWitness:
    triple: Optional[Sl2Triple] = None
    levi_witness: Optional[SubsystemSpec] = None
    reason: str = ""


def _zero_cochar(alg: ChevalleyAlgebra) -> Cocharacter:
    return Cocharacter(tuple([0] * alg.sys.rank), alg.sys)


def is_associated(e: LieElement, lam: Cocharacter, alg: Optional[ChevalleyAlgebra] = None):
    """sl(2) test: ``e in g(2, lambda)`` and some ``f`` gives ``[e, f] = h_lambda``."""
    alg = alg or e.alg
    if lam.ambient is not alg.sys:
        raise ValueError("cocharacter of a different system")
    if e.is_zero():
        if lam.is_zero():
            z = alg.zero()
            return True, AssociatedWitness(Sl2Triple(z, z, z), reason="trivial")
        return False, AssociatedWitness(reason="nonzero cocharacter for e = 0")
    if any(k >= alg.nroots for k in e.coeffs):
        return False, AssociatedWitness(reason="e has a Cartan component")
    for b in e.support_roots():
        if lam.degree(b) != 2:
            return False, AssociatedWitness(reason=f"root {b} of e has degree {lam.degree(b)}")
    h = cartan_element_of(alg, lam)
    f = _solve_f(alg, e, h)
    if f is None:
        return False, AssociatedWitness(reason="h_lambda is not [e, f] for any f in g(-2)")
    t = Sl2Triple(e, h, f)
    if not t.check():
        raise AssertionError("witness triple fails the sl(2) relations")
    return True, AssociatedWitness(t, reason="sl(2) completion")


def _levi_basis(alg: ChevalleyAlgebra, roots) -> list[LieElement]:
    out = [alg.e(b) for b in sorted(roots, key=alg.sys.index.__getitem__)]
    return out + [alg.h(i) for i in range(alg.sys.rank)]


def distinguished_in_levi(e: LieElement, levi: SubsystemSpec) -> bool:
    """``e`` distinguished in the Levi subalgebra with roots ``levi``.

    The Killing form of g has rank on ``c_l(e)`` equal to the dimension of
    its reductive part; ``e`` is distinguished iff that equals the
    dimension of the centre of ``l``.
    """
    alg = e.alg
    if any(b not in levi.roots for b in e.support_roots()):
        return False
    ws = _levi_basis(alg, levi.roots)
    c = centralizer(e, Subalgebra(alg, ws, check=False)) if not e.is_zero() else Subalgebra(alg, ws, check=False)
    zs = c.basis_elements
    gram = [[alg.killing(x, y) for y in zs] for x in zs]
    r = linalg.rank(gram, len(zs)) if zs else 0
    return r == alg.sys.rank - levi.rank


def _span_closure(sys, vectors) -> frozenset:
    """Roots in the rational span of ``vectors``."""
    vectors = [list(v) for v in vectors if any(v)]
    if not vectors:
        return frozenset()
    comp = linalg.nullspace(vectors, sys.rank)
    return frozenset(
        b for b in sys.roots if all(sum(x * c for x, c in zip(k, b)) == 0 for k in comp)
    )


def direct_definition_witness(e: LieElement, lam: Cocharacter, alg: Optional[ChevalleyAlgebra] = None, max_rank: int = 4):
    """Search for a Levi subsystem ``L`` with ``e`` distinguished in ``l``
    and ``lambda`` in the derived span of ``L`` (with ``e in g(2, lambda)``).

    Levis containing the fixed torus are ``Psi ∩ V`` for subspaces ``V``;
    the search runs over those with ``V`` containing the support of ``e``,
    smallest first. Returns the first hit or ``None``.
    """
    alg = alg or e.alg
    sys = alg.sys
    if sys.rank > max_rank:
        raise ValueError(f"direct search limited to rank <= {max_rank}")
    if any(k >= alg.nroots for k in e.coeffs):
        return None
    supp = e.support_roots()
    if any(lam.degree(b) != 2 for b in supp):
        return None
    start = _span_closure(sys, supp)
    seen = {start}
    queue = deque([start])
    while queue:
        roots = queue.popleft()
        spec = subsystem_from_roots(sys, roots)
        if in_derived_of(lam, spec) and distinguished_in_levi(e, spec):
            return spec
        for b in sys.roots:
            if b in roots or sum(b) < 0:
                continue
            bigger = _span_closure(sys, list(spec.base) + [b])
            if bigger not in seen:
                seen.add(bigger)
                queue.append(bigger)
    return None


def fuse(emb: Embedding, h_orbit: NilpotentOrbit, g_catalog: Optional[OrbitCatalog] = None) -> NilpotentOrbit:
    """G-orbit containing the image of an H-orbit representative."""
    g_catalog = g_catalog or get_catalog(emb.ambient)
    e = emb.transport(h_orbit.triple.e)
    return identify_orbit(e, g_catalog)


@dataclass
class DaggerReport:
    embedding: str
    h_orbit: str
    g_orbit: str
    h_diagram: list
    g_diagram: list
    lambda_H: list
    lambda_in_G: list
    lambda_in_G_dominant: list
    forward_ok: bool
    reduction_shadow_ok: bool
    rank_H: int
    rank_G: int
    rank_condition: bool
    distinguished_in_G: bool
    distinguished_in_H: bool
    verdict: str
    notes: list = field(default_factory=list)

    def to_json(self) -> dict:
        return asdict(self)


TSV_COLUMNS = (
    "embedding",
    "h_orbit",
    "g_orbit",
    "lambda_H",
    "lambda_in_G",
    "forward_ok",
    "rank_H",
    "rank_G",
    "distinguished_in_G",
    "verdict",
)


def reports_tsv(reports) -> str:
    lines = ["\t".join(TSV_COLUMNS)]
    for r in reports:
        d = r.to_json()
        row = []
        for c in TSV_COLUMNS:
            v = d[c]
            if isinstance(v, list):
                v = ",".join(map(str, v))
            elif isinstance(v, bool):
                v = "true" if v else "false"
            row.append(str(v))
        lines.append("\t".join(row))
    return "\n".join(lines) + "\n"


def _degree_zero_part(emb: Embedding, lam: Cocharacter) -> list[LieElement]:
    alg = emb.ambient
    n = alg.nroots
    out = []
    for x in emb.sub_basis:
        degs = {lam.degree(alg.sys.roots[k]) if k < n else 0 for k in x.coeffs}
        if len(degs) != 1:
            raise AssertionError("image basis element is not homogeneous for lambda")
        if degs == {0}:
            out.append(x)
    return out


def verdict_of(forward_ok: bool, rank_condition: bool, distinguished_in_G: bool) -> str:
    if distinguished_in_G:
        return DIST
    if rank_condition:
        return RANK
    if forward_ok:
        return REDUCTION
    return INCONCLUSIVE


def check_dagger(
    emb: Embedding,
    h_orbit: NilpotentOrbit,
    g_catalog: Optional[OrbitCatalog] = None,
    seed: int = 0,
) -> DaggerReport:
    """Compare H- and G-associated cocharacters for one H-orbit."""
    G = emb.ambient
    g_catalog = g_catalog or get_catalog(G, seed=seed)
    eH = h_orbit.triple.e
    lam_H = h_orbit.triple.cocharacter() if not eH.is_zero() else _zero_cochar(emb.sub_alg)
    e = emb.transport(eH)
    lam_G = emb.cartan_map(lam_H)
    forward_ok, _ = is_associated(e, lam_G, G)
    g_orbit = identify_orbit(e, g_catalog)
    dom = lam_G.dominant().pairings
    shadow = tuple(dom) == tuple(g_orbit.diagram)

    g0 = grade(G, lam_G).piece(0)
    cg = centralizer(e, g0) if not e.is_zero() else g0
    rank_G = reductive_rank(cg, seed=seed)
    h0 = Subalgebra(G, _degree_zero_part(emb, lam_G), check=False)
    ch = centralizer(e, h0) if not e.is_zero() else h0
    rank_H = reductive_rank(ch, seed=seed)
    if rank_H > rank_G:
        raise AssertionError("rank of C_H(e) exceeds rank of C_G(e)")
    dist_G = g_orbit.distinguished
    dist_H = h_orbit.distinguished
    if dist_G and not dist_H:
        raise AssertionError("distinguished in g but not in h")
    rank_cond = rank_H == rank_G
    notes = []
    if emb.extra_cartan:
        notes.append("H includes the full ambient torus")
    return DaggerReport(
        embedding=emb.id,
        h_orbit=h_orbit.label,
        g_orbit=g_orbit.label,
        h_diagram=list(h_orbit.diagram),
        g_diagram=list(g_orbit.diagram),
        lambda_H=list(lam_H.pairings),
        lambda_in_G=list(lam_G.pairings),
        lambda_in_G_dominant=list(dom),
        forward_ok=forward_ok,
        reduction_shadow_ok=shadow,
        rank_H=rank_H,
        rank_G=rank_G,
        rank_condition=rank_cond,
        distinguished_in_G=dist_G,
        distinguished_in_H=dist_H,
        verdict=verdict_of(forward_ok, rank_cond, dist_G),
        notes=notes,
    )


def _report_task(args):
    ident, label, seed = args
    emb = named_embedding(ident)
    h_cat = get_catalog(emb.sub_alg, seed=seed)
    return check_dagger(emb, h_cat.find(label), seed=seed).to_json()


def run_dagger(emb: Embedding, orbit: Optional[str] = None, seed: int = 0, jobs: int = 1) -> list[DaggerReport]:
    """Reports for every H-orbit (or the one labeled ``orbit``)."""
    h_cat = get_catalog(emb.sub_alg, seed=seed)
    orbits = [h_cat.find(orbit)] if orbit is not None else list(h_cat.orbits)
    if jobs > 1 and len(orbits) > 1:
        try:
            named_embedding(emb.id)
            registered = True
        except KeyError:
            registered = False
        if registered:
            get_catalog(emb.ambient, seed=seed)
            with ProcessPoolExecutor(max_workers=jobs) as ex:
                docs = list(ex.map(_report_task, [(emb.id, o.label, seed) for o in orbits]))
            return [DaggerReport(**d) for d in docs]
    g_cat = get_catalog(emb.ambient, seed=seed)
    return [check_dagger(emb, o, g_cat, seed) for o in orbits]


def optimal_parabolic(e: LieElement, alg: Optional[ChevalleyAlgebra] = None, dominant: bool = False) -> frozenset:
    """Roots of ``P_lambda`` for a cocharacter associated to ``e``.

    By default ``lambda`` comes from e's own sl(2)-triple, so ``P_lambda``
    is the optimal parabolic of ``e`` itself. ``dominant=True`` uses the
    dominant weighted diagram instead (the standard parabolic of the
    orbit, which is ``P(e')`` for a conjugate ``e'``).
    """
    alg = alg or e.alg
    if e.is_zero():
        return frozenset(alg.sys.roots)
    t = jacobson_morozov(e)
    lam = t.cocharacter()
    if dominant:
        lam = lam.dominant()
    return parabolic_of(lam)


# ---------------------------------------------- G2 <= F4 reference table
# Fusion of nilpotent classes for the p = 7 maximal G2 in F4, in the
# ASCII label typography of this package (trivial class written "1").
TABLE1 = (
    ("1", "1"),
    ("A1", "A1~A1"),
    ("~A1", "~A2A1"),
    ("G2(a1)", "F4(a3)"),
    ("G2", "F4(a1)"),
)


def table1_reference() -> list[tuple[str, str]]:
    return list(TABLE1)


def table1_lookup(label: str) -> str:
    key = normalize_label(label)
    for g2, f4 in TABLE1:
        if normalize_label(g2) == key:
            return f4
    raise KeyError(f"{label!r} is not a G2 class in the table")


def table1_checks(seed: int = 0) -> list[dict]:
    """F4-side facts of the table checked against the F4 catalog; the G2
    side is only matched against the G2 labels (the embedding itself has
    no characteristic-0 model)."""
    f4 = get_catalog("F4", seed=seed)
    g2 = get_catalog("G2", seed=seed)
    rows = []
    for gl, fl in TABLE1:
        g_o = g2.find(gl)
        f_o = f4.find(fl)
        checks = {}
        if normalize_label(fl) in ("F4(a3)", "F4(a1)"):
            checks["distinguished"] = f_o.distinguished
        if normalize_label(fl) == "~A2A1":
            checks["reductive_rank_is_1"] = f_o.reductive_rank == 1
        rows.append(
            {
                "G2": gl,
                "F4": fl,
                "G2_catalog_label": g_o.label,
                "F4_catalog_label": f_o.label,
                "F4_diagram": list(f_o.diagram),
                "F4_distinguished": f_o.distinguished,
                "F4_reductive_rank": f_o.reductive_rank,
                "checks": checks,
                "ok": all(checks.values()),
                "G2_side": "reference only",
            }
        )
    return rows


def dumps(reports) -> str:
    return json.dumps([r.to_json() for r in reports], indent=2)
