"""Named elements, epimorphisms and characters of the two extremal families.

``G2(n)`` acts with signature ``(0; 2,2,2,4)`` and ``Gp(p, n)`` with
``(1; p)``; this module collects the specific data the checks refer to.
"""
from __future__ import annotations

from dataclasses import dataclass

from .actions import EquivalenceClassReport, SurfaceKernelEpimorphism, is_surface_kernel, make_epimorphism
from .errors import NilautError
from .groupkit import FiniteGroup, gp_twist, subgroup_generated
from .jacobian import CharacterTable, g2_monomial_rep, gp_monomial_rep, rep_on_elements
from .sigcalc import Signature

G2_SIGNATURE = Signature(0, (2, 2, 2, 4))


def gp_signature(p: int) -> Signature:
    return Signature(1, (p,))


def _family(G: FiniteGroup, kind: str) -> tuple:
    if G.family is None or G.family[0] != kind:
        raise NilautError(f"{G.name} is not a {kind} group")
    return G.family


# -- G2(n) -----------------------------------------------------------------------


def g2_elements(G: FiniteGroup) -> dict[str, int]:
    """r, s, a, b plus the central involution z and the order-four element w."""
    _, n = _family(G, "G2")
    r = G.gen("r")
    M = 2 ** (n - 3)
    return {
        "r": r,
        "s": G.gen("s"),
        "a": G.gen("a"),
        "b": G.gen("b"),
        "z": G.power(r, M // 2),
        "w": G.power(r, M // 4),
    }


def theta_uv(G: FiniteGroup, u: int, v: int) -> SurfaceKernelEpimorphism:
    """``(s, b s r^u, a r^v, a b r^(v-u))``."""
    e = g2_elements(G)
    r, s, a, b = e["r"], e["s"], e["a"], e["b"]
    imgs = (
        s,
        G.mul(b, s, G.power(r, u)),
        G.mul(a, G.power(r, v)),
        G.mul(a, b, G.power(r, v - u)),
    )
    return make_epimorphism(G2_SIGNATURE, G, imgs)


def theta_uv_family(G: FiniteGroup) -> dict[tuple[int, ...], tuple[int, int]]:
    """Every surface-kernel ``theta_{u,v}``, keyed by image tuple."""
    _, n = _family(G, "G2")
    M = 2 ** (n - 3)
    out = {}
    for u in range(M):
        for v in range(M):
            th = theta_uv(G, u, v)
            if is_surface_kernel(th):
                out.setdefault(th.images, (u, v))
    return out


def in_reflection_cosets(G: FiniteGroup, x: int) -> bool:
    """Whether ``x`` is of the form ``s r^l`` or ``b s r^l``."""
    _family(G, "G2")
    i, j, k, l = G.coords[x]
    return j == 1 and l == 0


def reflection_count(G: FiniteGroup, theta: SurfaceKernelEpimorphism) -> int:
    return sum(in_reflection_cosets(G, x) for x in theta.period_images)


def orbits_meet_theta_uv(report: EquivalenceClassReport) -> bool:
    thetas = set(theta_uv_family(report.group))
    return all(any(m in thetas for m in orbit.members) for orbit in report.orbits)


def w1_character_index(table: CharacterTable) -> int:
    """The linear character ``r -> 1, s -> -1, b -> 1, a -> -1``."""
    G = table.group
    e = g2_elements(G)
    want = {"r": 1, "s": -1, "b": 1, "a": -1}
    for i, row in enumerate(table.characters):
        if table.degrees[i] == 1 and all(table.value(i, e[g]) == v for g, v in want.items()):
            return i
    raise NilautError("linear character W1 not found")


def g2_v_character_index(table: CharacterTable) -> int:
    """Row of the degree-4 representation induced from the dihedral subgroup."""
    _, n = _family(table.group, "G2")
    mats = g2_monomial_rep(n)
    return _row_from_generators(table, mats)


def _row_from_generators(table: CharacterTable, mats) -> int:
    G = table.group
    order = ("r", "s", "b", "a") if G.family[0] == "G2" else ("a", "b")
    elems = rep_on_elements(G, mats, order)
    row = tuple(elems[c[0]].trace().lift(table.conductor) for c in table.classes)
    return table.index_of(row)


def g2_subgroups(G: FiniteGroup) -> dict[str, list[int]]:
    e = g2_elements(G)
    return {k: subgroup_generated(G, [e[k]]) for k in ("s", "b", "r", "z")}


# -- Gp(p, n) ---------------------------------------------------------------------


def gp_elements(G: FiniteGroup) -> dict[str, int]:
    _, p, n = _family(G, "Gp")
    a = G.gen("a")
    return {"a": a, "b": G.gen("b"), "c": G.power(a, p ** (n - 2))}


def theta_m(G: FiniteGroup, m: int) -> SurfaceKernelEpimorphism:
    """``(a, b^m, a^(r^m - 1))``."""
    _, p, n = _family(G, "Gp")
    M = p ** (n - 1)
    r = gp_twist(p, n)
    a, b = G.gen("a"), G.gen("b")
    imgs = (a, G.power(b, m), G.power(a, (pow(r, m, M) - 1) % M))
    return make_epimorphism(gp_signature(p), G, imgs)


def commutator_subgroup_K(G: FiniteGroup) -> list[int]:
    return subgroup_generated(G, [gp_elements(G)["c"]])


def gp_v_character_index(table: CharacterTable, k: int = 1) -> int:
    _, p, n = _family(table.group, "Gp")
    return _row_from_generators(table, gp_monomial_rep(p, n, k))


def theta_m_per_orbit(report: EquivalenceClassReport) -> list[list[int]]:
    """For each orbit, the m in 1..p-1 whose ``theta_m`` lies in it."""
    G = report.group
    _, p, _ = _family(G, "Gp")
    where = {theta_m(G, m).images: m for m in range(1, p)}
    return [sorted(where[t] for t in orbit.members if t in where) for orbit in report.orbits]


# -- summaries ------------------------------------------------------------------------


@dataclass
class FamilySummary:
    name: str
    order: int
    signature: Signature
    genus: int
    generators: dict[str, str]

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "order": self.order,
            "signature": str(self.signature),
            "genus": self.genus,
            "generators": self.generators,
        }


def family_summary(G: FiniteGroup) -> FamilySummary:
    if G.family is None:
        raise NilautError(f"{G.name} is not one of the built families")
    if G.family[0] == "G2":
        th = theta_uv(G, 0, 0)
        sig = G2_SIGNATURE
    else:
        th = theta_m(G, 1)
        sig = gp_signature(G.family[1])
    return FamilySummary(
        G.name,
        G.size,
        sig,
        th.genus(),
        {name: G.label(x) for name, x in sorted(G.generators.items())},
    )
