"""End-to-end reproduction checks, one per acceptance criterion.

Each check compares hard-coded expected values (hand evaluations of the
closed forms, written out as literals) against what the library computes.
Wall-clock time is kept on the check object but never serialized.
"""
from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from . import actions, bounds, cyclo, groupkit, jacobian, sigcalc
from . import families as fam
from .sigcalc import Signature, parse_signature

SCALES = {
    "quick": {"n": (5,), "pn": ((3, 3),)},
    "full": {"n": (5, 6, 7), "pn": ((3, 3), (3, 4), (5, 3))},
}

# |G| <= c (g-1): coefficients and extremal signatures, written out by hand.
EXPECTED_NILPOTENT = {
    1: ("8", ["(0; 2,2,2,4)"]),
    2: ("4", ["(0; 2,2,2,2,2)"]),
    3: ("2", ["(0; 2,2,2,2,2,2)"]),
    4: ("4/3", ["(0; 2,2,2,2,2,2,2)"]),
    5: ("1", ["(0; 2,2,2,2,2,2,2,2)"]),
    6: ("4/5", ["(0; 2,2,2,2,2,2,2,2,2)"]),
}
EXPECTED_P = {
    3: {
        1: ("3", ["(0; 3,3,3,3)", "(1; 3)"]),
        2: ("3/2", ["(0; 3,3,3,3,3)", "(1; 3,3)"]),
        3: ("1", ["(0; 3,3,3,3,3,3)", "(1; 3,3,3)", "(2; -)"]),
        4: ("3/4", ["(0; 3,3,3,3,3,3,3)", "(1; 3,3,3,3)", "(2; 3)"]),
        5: ("3/5", ["(0; 3,3,3,3,3,3,3,3)", "(1; 3,3,3,3,3)", "(2; 3,3)"]),
        6: ("1/2", ["(0; 3,3,3,3,3,3,3,3,3)", "(1; 3,3,3,3,3,3)", "(2; 3,3,3)", "(3; -)"]),
    },
    5: {
        1: ("5/2", ["(1; 5)"]),
        2: ("5/4", ["(1; 5,5)"]),
        3: ("1", ["(2; -)"]),
        4: ("5/7", ["(2; 5)"]),
        5: ("5/9", ["(2; 5,5)"]),
        6: ("1/2", ["(3; -)"]),
    },
    7: {
        1: ("7/3", ["(1; 7)"]),
        2: ("7/6", ["(1; 7,7)"]),
        3: ("1", ["(2; -)"]),
        4: ("7/10", ["(2; 7)"]),
        5: ("7/13", ["(2; 7,7)"]),
        6: ("1/2", ["(3; -)"]),
    },
}


@dataclass
class Item:
    label: str
    expected: object
    computed: object
    ok: bool

    def to_json(self) -> dict:
        return {"label": self.label, "expected": _jsonable(self.expected), "computed": _jsonable(self.computed), "ok": self.ok}


def _jsonable(x):
    if isinstance(x, (bool, int, str)) or x is None:
        return x
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    return str(x)


@dataclass
class Check:
    number: int
    name: str
    items: list[Item] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    seconds: float = 0.0  # side channel, not serialized
    error: str | None = None

    @property
    def status(self) -> str:
        if self.error is not None:
            return "fail"
        return "pass" if self.items and all(i.ok for i in self.items) else "fail"

    def expect(self, label: str, expected, computed, ok: bool | None = None) -> bool:
        good = (expected == computed) if ok is None else bool(ok)
        self.items.append(Item(label, expected, computed, good))
        return good

    def failures(self) -> list[Item]:
        return [i for i in self.items if not i.ok]

    def summary(self) -> str:
        line = f"criterion {self.number} [{self.name}]: {self.status.upper()}"
        bad = self.failures()
        if self.error:
            line += f" (error: {self.error})"
        elif bad:
            line += f" ({len(bad)} of {len(self.items)} sub-checks failed; first: {bad[0].label}: expected {bad[0].expected}, got {bad[0].computed})"
        else:
            line += f" ({len(self.items)} sub-checks)"
        return line

    def to_json(self) -> dict:
        return {
            "criterion": self.number,
            "name": self.name,
            "status": self.status,
            "items": [i.to_json() for i in self.items],
            "notes": self.notes,
            **({"error": self.error} if self.error else {}),
        }


@dataclass
class VerificationReport:
    scale: str
    checks: list[Check]

    @property
    def ok(self) -> bool:
        return all(c.status == "pass" for c in self.checks)

    def to_json(self) -> dict:
        return {"scale": self.scale, "ok": self.ok, "checks": [c.to_json() for c in self.checks]}


# -- criteria -----------------------------------------------------------------------------


def check_bound_tables(scale: str = "quick") -> Check:
    c = Check(1, "bound tables")
    for d, (coef, sigs) in EXPECTED_NILPOTENT.items():
        c.expect(f"nilpotent d={d} coefficient", Fraction(coef), bounds.max_order_coefficient("nilpotent", d))
        got = [str(s) for s in bounds.extremal_signatures("nilpotent", d)]
        c.expect(f"nilpotent d={d} extremal", sigs, got)
    for p, table in EXPECTED_P.items():
        for d, (coef, sigs) in table.items():
            c.expect(f"p={p} d={d} coefficient", Fraction(coef), bounds.max_order_coefficient(p, d))
            got = [str(s) for s in bounds.extremal_signatures(p, d)]
            c.expect(f"p={p} d={d} extremal", sigs, got)
    return c


def check_search_vs_closed_form(scale: str = "quick") -> Check:
    c = Check(2, "search vs closed form")
    for p in ("nilpotent", 3, 5, 7, 11):
        for d in range(1, 7):
            res = bounds.min_area_search(d, p)
            c.expect(f"p={p} d={d} min area", 2 / bounds.max_order_coefficient(p, d), res.min_area)
            want = sorted(str(s) for s in bounds.extremal_signatures(p, d))
            c.expect(f"p={p} d={d} argmin", want, sorted(str(s) for s in res.argmin))
    return c


def check_g2_family(scale: str = "quick") -> Check:
    c = Check(3, "G2 family actions")
    sig = fam.G2_SIGNATURE
    for n in SCALES[scale]["n"]:
        G = groupkit.build_G2(n)
        c.expect(f"n={n} relations", True, all(groupkit.relations_hold(G, groupkit.g2_relations(n)).values()))
        e = fam.g2_elements(G)
        base = actions.make_epimorphism(sig, G, (e["s"], G.mul(e["b"], e["s"]), e["a"], G.mul(e["a"], e["b"])))
        c.expect(f"n={n} (s,bs,a,ab) surface-kernel", True, bool(actions.is_surface_kernel(base)))
        c.expect(f"n={n} genus", 1 + 2 ** (n - 3), sigcalc.riemann_hurwitz_genus(sig, G.size))
        epis = actions.enumerate_image_tuples(sig, G)
        rep = actions.classify(sig, G, epis=epis)
        c.expect(f"n={n} orbit count <= 2^(2n-6)", f"<= {2 ** (2 * n - 6)}", rep.orbit_count,
                 ok=1 <= rep.orbit_count <= 2 ** (2 * n - 6))
        c.expect(f"n={n} every orbit contains a theta_uv", True, fam.orbits_meet_theta_uv(rep))
        counts = {fam.reflection_count(G, actions.make_epimorphism(sig, G, row)) for row in epis}
        c.expect(f"n={n} exactly two period images in reflection cosets", {2}, counts)
        c.expect(f"n={n} central element claim", True, actions.central_element_claim(sig, G, epis))
        classes = groupkit.subgroup_classes_of_order(G, 2)
        normal = [k for k in classes if k.normal]
        c.expect(f"n={n} classes of order-2 subgroups", 5, len(classes))
        c.expect(
            f"n={n} only <z> normal",
            [(G.identity, e["z"])],
            [k.representative for k in normal],
        )
        q = actions.quotient_branch_data(base, [G.identity, e["z"]])
        c.expect(f"n={n} quotient by <z>", (1, (2,) * 2 ** (n - 2)), (q.genus, q.branch))
        c.notes.append(f"n={n}: {rep.total} epimorphisms, {rep.orbit_count} orbit(s)")
    return c


def check_g2_jacobians(scale: str = "quick") -> Check:
    c = Check(4, "G2 family Jacobians")
    for n in SCALES[scale]["n"]:
        G = groupkit.build_G2(n)
        table = jacobian.family_table(G)
        irreps = jacobian.rational_irreps(table)
        W1 = jacobian.irrep_of_character(irreps, fam.w1_character_index(table))
        W2 = jacobian.irrep_of_character(irreps, fam.g2_v_character_index(table))
        subs = fam.g2_subgroups(G)
        M = 2 ** (n - 3)
        for u, v in ((0, 0), (1, M - 1)):
            th = fam.theta_uv(G, u, v)
            c.expect(f"n={n} theta_{u},{v} dim B_W1", 1, jacobian.dim_factor(th, W1, table))
            c.expect(f"n={n} theta_{u},{v} dim B_W2", 2 ** (n - 5), jacobian.dim_factor(th, W2, table))
            rep = jacobian.group_algebra_decomposition(th, table, irreps)
            c.expect(f"n={n} theta_{u},{v} total", 1 + 4 * 2 ** (n - 5), rep.total)
            c.expect(f"n={n} theta_{u},{v} remainder", 0, th.genus() - rep.total)
            want = {"s": 2 ** (n - 4), "b": 2 ** (n - 4) + 1, "r": 1}
            for key, dim in want.items():
                qd = jacobian.quotient_decomposition(th, subs[key], table, irreps)
                c.expect(f"n={n} theta_{u},{v} dim J(C/<{key}>)", dim, qd.total)
                c.expect(
                    f"n={n} theta_{u},{v} <{key}> total = quotient genus",
                    actions.quotient_branch_data(th, subs[key]).genus,
                    qd.total,
                )
    return c


def check_gp_family(scale: str = "quick") -> Check:
    c = Check(5, "Gp family actions")
    for p, n in SCALES[scale]["pn"]:
        G = groupkit.build_Gp(p, n)
        sig = fam.gp_signature(p)
        c.expect(f"(p,n)=({p},{n}) genus", 1 + Fraction((p - 1) * p ** (n - 1), 2), sigcalc.riemann_hurwitz_genus(sig, G.size))
        epis = actions.enumerate_image_tuples(sig, G)
        rep = actions.classify(sig, G, epis=epis)
        c.expect(f"(p,n)=({p},{n}) orbit count", p - 1, rep.orbit_count)
        for m in range(1, p):
            c.expect(f"(p,n)=({p},{n}) theta_{m} surface-kernel", True, bool(actions.is_surface_kernel(fam.theta_m(G, m))))
        per = fam.theta_m_per_orbit(rep)
        c.expect(f"(p,n)=({p},{n}) every orbit contains some theta_m", True, all(per))
        K = fam.commutator_subgroup_K(G)
        q = actions.quotient_branch_data(fam.theta_m(G, 1), K)
        c.expect(f"(p,n)=({p},{n}) quotient by K", (1, (p,) * p ** (n - 1)), (q.genus, q.branch))
        c.expect(f"(p,n)=({p},{n}) no (0;2,2,2,2p) extension", True, actions.extension_witness(p, n))
        inner = actions.classify(sig, G, epis=epis, action="inner")
        c.notes.append(
            f"(p,n)=({p},{n}): {rep.total} epimorphisms; {rep.orbit_count} orbit(s) under Aut(G) with moves, "
            f"{inner.orbit_count} under inner automorphisms with moves (theta_m per orbit: {fam.theta_m_per_orbit(inner)})"
        )
    return c


def check_gp_jacobians(scale: str = "quick") -> Check:
    c = Check(6, "Gp family Jacobians")
    for p, n in SCALES[scale]["pn"]:
        G = groupkit.build_Gp(p, n)
        table = jacobian.family_table(G)
        irreps = jacobian.rational_irreps(table)
        W = jacobian.irrep_of_character(irreps, fam.gp_v_character_index(table))
        for m in range(1, p):
            th = fam.theta_m(G, m)
            rep = jacobian.group_algebra_decomposition(th, table, irreps)
            tag = f"(p,n)=({p},{n}) theta_{m}"
            c.expect(f"{tag} dim A", Fraction((p - 1) * p ** (n - 2), 2), jacobian.dim_factor(th, W, table))
            c.expect(f"{tag} multiplicity of A", p, W.multiplicity)
            c.expect(f"{tag} dim E", 1, rep.factor("W1").dim)
            c.expect(f"{tag} total = g", th.genus(), rep.total)
            c.expect(f"{tag} factors", ["W1", W.name], [f.irrep for f in rep.factors])
    return c


def check_small_exception(scale: str = "quick") -> Check:
    c = Check(7, "D4 exceptional case")
    G = groupkit.dihedral(4)
    sig = fam.G2_SIGNATURE
    epis = actions.enumerate_image_tuples(sig, G)
    c.expect("surface-kernel epimorphism onto D4 exists", True, len(epis) > 0)
    g = sigcalc.riemann_hurwitz_genus(sig, G.size)
    c.expect("genus", 2, g)
    c.expect("|D4| = 8(g-1)", 8, G.size, ok=G.size == 8 * (g - 1))
    c.expect("bound verdict", "extremal", bounds.check_action_against_bound(G, sig, 1).status)
    return c


def _corpus() -> list[tuple[Signature, Callable[[], groupkit.FiniteGroup]]]:
    return [
        (parse_signature("(0; 2,2,2,4)"), lambda: groupkit.dihedral(4)),
        (parse_signature("(0; 2,2,2,4)"), lambda: groupkit.build_G2(5)),
        (parse_signature("(1; 3)"), lambda: groupkit.build_Gp(3, 3)),
        (parse_signature("(1; 2)"), lambda: groupkit.dihedral(4)),
        (parse_signature("(0; 2,2,2,2,2)"), lambda: groupkit.from_permutations([(1, 0, 2, 3), (0, 1, 3, 2)])),
        (parse_signature("(0; 3,3,3,3)"), lambda: groupkit.direct_product(groupkit.cyclic(3, "x"), groupkit.cyclic(3, "y"))),
        (parse_signature("(0; 2,2,4,4)"), lambda: groupkit.dihedral(4)),
    ]


def check_property_suites(scale: str = "quick", trials: int = 10_000, seed: int = 20261015) -> Check:
    c = Check(8, "property suites")
    for sig, make in _corpus():
        G = make()
        rep = actions.classify(sig, G)
        naive = actions.naive_orbit_partition(sig, G)
        c.expect(f"classify = naive closure on {sig} / {G.name}", len(naive), rep.orbit_count, ok=rep.partition() == naive)
        if G.size in (27, 32):
            inner = groupkit.inner_automorphisms(G)
            rep_i = actions.classify(sig, G, action="inner")
            naive_i = actions.naive_orbit_partition(sig, G, auts=inner)
            c.expect(f"inner-only classify = naive closure on {sig} / {G.name}", len(naive_i), rep_i.orbit_count,
                     ok=rep_i.partition() == naive_i)
    for G in (groupkit.build_G2(5), groupkit.build_Gp(3, 3)):
        table = jacobian.character_table(G)
        explicit = jacobian.explicit_characters(G)
        c.expect(f"{G.name} explicit characters appear in generic table", True, set(explicit) <= set(table.characters))
        c.expect(f"{G.name} orthogonality", [], jacobian.orthogonality_defects(table))
    gp_full = jacobian.explicit_table(groupkit.build_Gp(3, 3))
    gp_gen = jacobian.character_table(groupkit.build_Gp(3, 3))
    c.expect("Gp(3,3) full explicit table = generic table", True, set(gp_full.characters) == set(gp_gen.characters))
    rng = random.Random(seed)
    c.expect(f"{trials} signature trials", 0, _signature_trials(rng, trials))
    c.expect(f"{trials} cyclotomic trials", 0, _cyclo_trials(rng, trials))
    c.expect("bound coefficients non-increasing in d", True, all(
        bounds.max_order_coefficient(p, d + 1) <= bounds.max_order_coefficient(p, d)
        for p in ("nilpotent", 3, 5, 7, 11) for d in range(1, 12)
    ))
    return c


def _random_signature(rng: random.Random) -> Signature:
    return Signature(rng.randrange(0, 4), tuple(rng.randrange(2, 65) for _ in range(rng.randrange(0, 7))))


def _signature_trials(rng: random.Random, trials: int) -> int:
    bad = 0
    primes = [2, 3, 5, 7, 11, 13]
    for _ in range(trials):
        sig = _random_signature(rng)
        p = rng.choice(primes)
        once = sigcalc.p_localization(sig, p)
        if sigcalc.p_localization(once, p) != once:
            bad += 1
        if sigcalc.is_hyperbolic(sig):
            if sigcalc.teichmuller_dim(sig) < 0 or sigcalc.normalized_area(sig) <= 0:
                bad += 1
        if sigcalc.euler_characteristic(sig) != -sigcalc.normalized_area(sig):
            bad += 1
        if parse_signature(str(sig)) != sig:
            bad += 1
    for l in range(5, 40):
        if sigcalc.normalized_area(Signature(0, (2,) * l)) != Fraction(l - 4, 2):
            bad += 1
    for h in range(2, 12):
        for N in (1, 2, 7, 64):
            if sigcalc.riemann_hurwitz_genus(Signature(h, ()), N) != 1 + N * (h - 1):
                bad += 1
    return bad


def _cyclo_trials(rng: random.Random, trials: int) -> int:
    bad = 0
    conductors = [1, 2, 3, 4, 5, 8, 9, 16, 25, 27]
    for _ in range(trials):
        N = rng.choice(conductors)
        phi = cyclo.euler_phi(N)
        x = cyclo.CycNumber(N, [rng.randrange(-5, 6) for _ in range(phi)], rng.randrange(1, 4))
        y = cyclo.CycNumber(N, [rng.randrange(-5, 6) for _ in range(phi)])
        if x.conjugate().conjugate() != x:
            bad += 1
        if phi % cyclo.galois_orbit_degree(x) != 0:
            bad += 1
        if x * (x + y) != x * x + x * y:
            bad += 1
        if x and (x * x.inverse()) != 1:
            bad += 1
    return bad


CRITERIA: list[Callable[[str], Check]] = [
    check_bound_tables,
    check_search_vs_closed_form,
    check_g2_family,
    check_g2_jacobians,
    check_gp_family,
    check_gp_jacobians,
    check_small_exception,
    check_property_suites,
]


def run_check(fn: Callable[[str], Check], scale: str, number: int = 0) -> Check:
    start = time.perf_counter()
    try:
        check = fn(scale)
    except Exception as exc:  # a crash is a failed check, not a crashed report
        name = fn.__name__.removeprefix("check_").replace("_", " ")
        check = Check(number, name, error=f"{type(exc).__name__}: {exc}")
    check.seconds = time.perf_counter() - start
    return check


def verify_paper(scale: str = "quick") -> VerificationReport:
    if scale not in SCALES:
        raise ValueError(f"scale must be one of {sorted(SCALES)}, got {scale!r}")
    return VerificationReport(scale, [run_check(fn, scale, k + 1) for k, fn in enumerate(CRITERIA)])
