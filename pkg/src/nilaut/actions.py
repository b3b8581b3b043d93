"""Surface-kernel epimorphisms and their topological classification.

An epimorphism from a Fuchsian group of signature ``(h; m_1..m_l)`` onto a
finite group G is recorded by the images of the canonical generators
``a_1, b_1, ..., a_h, b_h, c_1, ..., c_l``; it is surface-kernel when each
``c_i`` maps to an element of order exactly ``m_i``, the long relation
``prod [a_i, b_i] * prod c_i = 1`` holds, and the images generate G.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .errors import CapExceededError, NilautError
from .groupkit import (
    FiniteGroup,
    GenerationTester,
    GroupMap,
    automorphisms,
    build_Gp,
    cyclic,
    identity_map,
    inner_automorphisms,
    is_subgroup,
    semidirect_product,
)
from .sigcalc import Signature, is_prime, normalized_area, require_hyperbolic, riemann_hurwitz_genus

log = logging.getLogger(__name__)

ENUMERATION_CAP = 10**9


class MoveError(NilautError, ValueError):
    pass


@dataclass(frozen=True)
class SurfaceKernelEpimorphism:
    signature: Signature
    hyperbolic_images: tuple[int, ...]
    period_images: tuple[int, ...]
    group: FiniteGroup = field(compare=False, hash=False, repr=False)

    @property
    def images(self) -> tuple[int, ...]:
        return self.hyperbolic_images + self.period_images

    def words(self) -> list[str]:
        return [self.group.label(x) for x in self.images]

    def genus(self) -> int:
        g = riemann_hurwitz_genus(self.signature, self.group.size)
        if g.denominator != 1:
            raise NilautError(f"non-integral genus {g}")
        return int(g)

    def __str__(self) -> str:
        return "(" + ", ".join(self.words()) + ")"


def make_epimorphism(sig: Signature, G: FiniteGroup, images: Sequence[int]) -> SurfaceKernelEpimorphism:
    images = tuple(int(x) for x in images)
    if len(images) != 2 * sig.genus + sig.length:
        raise NilautError(
            f"signature {sig} needs {2 * sig.genus + sig.length} images, got {len(images)}"
        )
    k = 2 * sig.genus
    return SurfaceKernelEpimorphism(sig, images[:k], images[k:], G)


@dataclass(frozen=True)
class KernelCheck:
    ok: bool
    violation: str | None = None

    def __bool__(self) -> bool:
        return self.ok


def long_relation(G: FiniteGroup, hyperbolic: Sequence[int], periods: Sequence[int]) -> int:
    acc = G.identity
    for i in range(0, len(hyperbolic), 2):
        acc = G.mul(acc, G.commutator(hyperbolic[i], hyperbolic[i + 1]))
    for g in periods:
        acc = G.mul(acc, g)
    return acc


def is_surface_kernel(theta: SurfaceKernelEpimorphism, tester: GenerationTester | None = None) -> KernelCheck:
    """Check exact period orders, the long relation and generation, in that order."""
    sig, G = theta.signature, theta.group
    if len(theta.hyperbolic_images) != 2 * sig.genus or len(theta.period_images) != sig.length:
        raise NilautError(f"arity mismatch with signature {sig}")
    for i, (g, m) in enumerate(zip(theta.period_images, sig.periods), start=1):
        if not 0 <= g < G.size:
            raise NilautError(f"image {g} outside the group")
        if int(G.orders[g]) != m:
            return KernelCheck(False, f"period {i}: image has order {int(G.orders[g])}, expected {m}")
    if long_relation(G, theta.hyperbolic_images, theta.period_images) != G.identity:
        return KernelCheck(False, "long relation does not map to the identity")
    tester = tester or GenerationTester(G)
    if not tester(theta.images):
        return KernelCheck(False, "images do not generate the group")
    return KernelCheck(True)


def admits_integral_genus(sig: Signature, order: int) -> bool:
    return (order * normalized_area(sig) / 2).denominator == 1


def enumerate_epimorphisms(
    sig: Signature, G: FiniteGroup, cap: int = ENUMERATION_CAP
) -> list[SurfaceKernelEpimorphism]:
    """Every surface-kernel epimorphism ``Delta(sig) -> G``, in lexicographic order.

    Backtracks over the first ``2h + l - 1`` images with the last elliptic
    image forced by the long relation.
    """
    rows = enumerate_image_tuples(sig, G, cap)
    return [make_epimorphism(sig, G, r) for r in rows]


def enumerate_image_tuples(sig: Signature, G: FiniteGroup, cap: int = ENUMERATION_CAP) -> np.ndarray:
    require_hyperbolic(sig)
    width = 2 * sig.genus + sig.length
    empty = np.zeros((0, width), dtype=np.int64)
    if not admits_integral_genus(sig, G.size):
        return empty
    free = max(width - 1, 0) if sig.length else width
    if G.size**free > cap:
        raise CapExceededError(f"search space {G.size}^{free} exceeds cap {cap}")
    orders = G.orders
    everything = np.arange(G.size, dtype=np.int64)
    cands = [everything] * (2 * sig.genus)
    for m in sig.periods[:-1]:
        cands.append(np.flatnonzero(orders == m).astype(np.int64))
    last_mask = (orders == sig.periods[-1]) if sig.length else None
    rows = kernels.enumerate_tuples(G.table, G.inverse, G.identity, sig.genus, cands, last_mask)
    if len(rows) == 0:
        return empty
    tester = GenerationTester(G)
    keep = [i for i, r in enumerate(rows) if tester(r)]
    return rows[keep]


# -- moves ------------------------------------------------------------------------


@dataclass(frozen=True)
class Move:
    """One re-marking or relabelling of an epimorphism.

    kinds: ``braid`` (Hurwitz move on periods i, i+1; equal periods only),
    ``braid2`` (its square, any adjacent periods), ``conjugate`` (by an
    element), ``automorphism`` (a GroupMap), ``A1``/``A2`` (genus-one handle
    twists with exponent ``arg``).
    """

    kind: str
    arg: object = None

    def __str__(self) -> str:
        if self.kind == "automorphism":
            return "automorphism"
        return f"{self.kind}({self.arg})"


def braid(i: int) -> Move:
    return Move("braid", i)


def braid2(i: int) -> Move:
    return Move("braid2", i)


def conjugate_by(g: int) -> Move:
    return Move("conjugate", g)


def automorphism(omega: GroupMap) -> Move:
    return Move("automorphism", omega)


def A1(n: int) -> Move:
    return Move("A1", n)


def A2(n: int) -> Move:
    return Move("A2", n)


def _move_tuple(G: FiniteGroup, sig: Signature, images: tuple[int, ...], move: Move) -> tuple[int, ...]:
    k = 2 * sig.genus
    hyp, per = list(images[:k]), list(images[k:])
    if move.kind in ("braid", "braid2"):
        i = int(move.arg)
        if not 1 <= i < sig.length:
            raise MoveError(f"braid({i}) needs 1 <= i < {sig.length}")
        if move.kind == "braid" and sig.periods[i - 1] != sig.periods[i]:
            raise MoveError(f"braid({i}) swaps periods {sig.periods[i - 1]} != {sig.periods[i]}; use braid2")
        reps = 1 if move.kind == "braid" else 2
        for _ in range(reps):
            a, b = per[i - 1], per[i]
            per[i - 1], per[i] = G.conj(b, a), a
        return tuple(hyp + per)
    if move.kind == "conjugate":
        g = int(move.arg)
        return tuple(G.conj(x, g) for x in images)
    if move.kind == "automorphism":
        omega: GroupMap = move.arg
        return tuple(int(omega.images[x]) for x in images)
    if move.kind in ("A1", "A2"):
        if sig.genus != 1:
            raise MoveError(f"{move.kind} moves need orbit genus 1, signature is {sig}")
        x, y = hyp
        n = int(move.arg)
        if move.kind == "A1":
            y = G.mul(y, G.power(x, n))
        else:
            x = G.mul(x, G.power(y, n))
        return tuple([x, y] + per)
    raise MoveError(f"unknown move {move.kind}")


def apply_move(theta: SurfaceKernelEpimorphism, move: Move) -> SurfaceKernelEpimorphism:
    out = make_epimorphism(theta.signature, theta.group, _move_tuple(theta.group, theta.signature, theta.images, move))
    check = is_surface_kernel(out)
    if not check:
        raise MoveError(f"{move} produced a non-surface-kernel tuple: {check.violation}")
    return out


def mapping_class_moves(sig: Signature) -> list[Move]:
    """Re-markings used for classification (besides Aut(G)).

    Hurwitz moves on equal adjacent periods, their squares on unequal ones,
    and for orbit genus one the handle twists with exponents +-1.
    """
    moves: list[Move] = []
    for i in range(1, sig.length):
        moves.append(braid(i) if sig.periods[i - 1] == sig.periods[i] else braid2(i))
    if sig.genus == 1:
        moves += [A1(1), A1(-1), A2(1), A2(-1)]
    return moves


def move_set_descriptor(sig: Signature, action: str = "full") -> str:
    parts = ["Aut(G) incl. inner conjugation" if action == "full" else "inner conjugation only"]
    if sig.length > 1:
        parts.append("Hurwitz braids on equal adjacent periods, squared braids otherwise")
    if sig.genus == 1:
        parts.append("A1(+-1), A2(+-1)")
    return "; ".join(parts)


# -- classification ---------------------------------------------------------------------


@dataclass
class Orbit:
    size: int
    representative: SurfaceKernelEpimorphism
    members: list[tuple[int, ...]] = field(repr=False, default_factory=list)

    def to_json(self) -> dict:
        return {"size": self.size, "representative": self.representative.words()}


@dataclass
class EquivalenceClassReport:
    signature: Signature
    group: FiniteGroup
    total: int
    orbits: list[Orbit]
    move_set: str

    @property
    def orbit_count(self) -> int:
        return len(self.orbits)

    @property
    def orbit_sizes(self) -> list[int]:
        return [o.size for o in self.orbits]

    @property
    def representatives(self) -> list[SurfaceKernelEpimorphism]:
        return [o.representative for o in self.orbits]

    def partition(self) -> set[frozenset[tuple[int, ...]]]:
        return {frozenset(o.members) for o in self.orbits}

    def to_json(self) -> dict:
        return {
            "signature": str(self.signature),
            "group": self.group.name,
            "total": self.total,
            "move_set": self.move_set,
            "orbits": [o.to_json() for o in self.orbits],
        }


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            if ra < rb:
                self.parent[rb] = ra
            else:
                self.parent[ra] = rb


def classify(
    sig: Signature,
    G: FiniteGroup,
    auts: list[GroupMap] | None = None,
    epis: np.ndarray | None = None,
    action: str = "full",
) -> EquivalenceClassReport:
    """Orbits of the surface-kernel epimorphisms under Aut(G) and re-markings.

    Aut(G) acts on epimorphisms and commutes with re-markings, so the
    Aut-orbits are computed first and then glued along the re-marking moves
    applied to one member of each Aut-orbit.  ``action="inner"`` replaces
    Aut(G) by the inner automorphisms (finer classification).
    """
    if action not in ("full", "inner"):
        raise NilautError(f"action must be 'full' or 'inner', got {action!r}")
    rows = enumerate_image_tuples(sig, G) if epis is None else epis
    if auts is None:
        auts = automorphisms(G) if action == "full" else inner_automorphisms(G)
    tuples = [tuple(int(v) for v in r) for r in rows]
    index = {t: i for i, t in enumerate(tuples)}
    n = len(tuples)
    aut_imgs = np.stack([a.images for a in auts]) if auts else np.arange(G.size)[None, :]
    aut_orbit = np.full(n, -1, dtype=np.int64)
    reps: list[int] = []
    for i in range(n):
        if aut_orbit[i] >= 0:
            continue
        oid = len(reps)
        reps.append(i)
        imgs = aut_imgs[:, rows[i]]
        for row in imgs:
            aut_orbit[index[tuple(int(v) for v in row)]] = oid
    uf = _UnionFind(len(reps))
    moves = mapping_class_moves(sig)
    for oid, i in enumerate(reps):
        for mv in moves:
            j = index[_move_tuple(G, sig, tuples[i], mv)]
            uf.union(oid, int(aut_orbit[j]))
    groups: dict[int, list[int]] = {}
    for i in range(n):
        groups.setdefault(uf.find(int(aut_orbit[i])), []).append(i)
    orbits = []
    for members in groups.values():
        rep = min(members, key=lambda k: tuples[k])
        orbits.append(Orbit(len(members), make_epimorphism(sig, G, tuples[rep]), [tuples[k] for k in members]))
    orbits.sort(key=lambda o: o.representative.images)
    return EquivalenceClassReport(sig, G, n, orbits, move_set_descriptor(sig, action))


def naive_orbit_partition(
    sig: Signature, G: FiniteGroup, auts: list[GroupMap] | None = None
) -> set[frozenset[tuple[int, ...]]]:
    """Orbit partition by brute-force label propagation.

    Applies every automorphism, every conjugation and every re-marking to
    every epimorphism until the labels stop changing.  Independent of
    :func:`classify`; meant for small groups only.
    """
    rows = enumerate_image_tuples(sig, G)
    tuples = [tuple(int(v) for v in r) for r in rows]
    index = {t: i for i, t in enumerate(tuples)}
    auts = automorphisms(G) if auts is None else auts
    moves = [automorphism(a) for a in auts] + [conjugate_by(g) for g in range(G.size)]
    moves += mapping_class_moves(sig)
    label = list(range(len(tuples)))
    changed = True
    while changed:
        changed = False
        for i, t in enumerate(tuples):
            for mv in moves:
                j = index[_move_tuple(G, sig, t, mv)]
                lo = min(label[i], label[j])
                if label[i] != lo or label[j] != lo:
                    label[i] = label[j] = lo
                    changed = True
    parts: dict[int, set] = {}
    for i, t in enumerate(tuples):
        parts.setdefault(label[i], set()).add(t)
    return {frozenset(p) for p in parts.values()}


# -- claims about the two families ---------------------------------------------------


def central_element_claim(sig: Signature, G: FiniteGroup, epis: np.ndarray | None = None) -> bool:
    """True iff the central involution ``z`` is never among the first three period images."""
    r = G.generators["r"]
    z = G.power(r, int(G.orders[r]) // 2)
    rows = enumerate_image_tuples(sig, G) if epis is None else epis
    k = 2 * sig.genus
    return not any(z in (int(row[k]), int(row[k + 1]), int(row[k + 2])) for row in rows)


@dataclass(frozen=True)
class QuotientData:
    genus: int
    branch: tuple[int, ...]

    @property
    def signature(self) -> Signature:
        return Signature(self.genus, tuple(sorted(self.branch)))


def quotient_branch_data(theta: SurfaceKernelEpimorphism, H: Iterable[int]) -> QuotientData:
    """Genus of ``C/H`` and the branching orders of ``C -> C/H``.

    Points of C over the k-th branch value of ``C -> C/G`` correspond to the
    cosets ``g<c_k>`` with stabilizer ``g<c_k>g^-1``; H permutes them and each
    H-orbit is one point of ``C/H`` with ramification ``|H ∩ g<c_k>g^-1|``.
    """
    G = theta.group
    H = sorted(set(int(h) for h in H))
    if not is_subgroup(G, H):
        raise NilautError("H is not a subgroup")
    hset = set(H)
    nH = len(H)
    g_genus = theta.genus()
    branch: list[int] = []
    fixed_total = 0  # sum over points x of C of (|H_x| - 1)
    t = G.table
    for c in theta.period_images:
        m = int(G.orders[c])
        cyc = [G.power(c, j) for j in range(m)]
        coset_of = np.empty(G.size, dtype=np.int64)
        seen = np.zeros(G.size, dtype=bool)
        reps = []
        for g in range(G.size):
            if not seen[g]:
                members = t[g, cyc]
                seen[members] = True
                coset_of[members] = len(reps)
                reps.append(g)
        done = np.zeros(len(reps), dtype=bool)
        for ci, g in enumerate(reps):
            if done[ci]:
                continue
            orbit = {int(coset_of[t[h, g]]) for h in H}
            done[list(orbit)] = True
            stab = sum(1 for x in cyc if G.conj(x, g) in hset)
            if stab > 1:
                branch.append(stab)
                fixed_total += len(orbit) * (stab - 1)
    two_gh_minus_2 = Fraction(2 * g_genus - 2 - fixed_total, nH)
    gh = (two_gh_minus_2 + 2) / 2
    if gh.denominator != 1:
        raise NilautError(f"non-integral quotient genus {gh}")
    return QuotientData(int(gh), tuple(sorted(branch)))


@dataclass(frozen=True)
class MaximalityFact:
    status: str  # "maximal", "extends", "unknown"
    extends_to: tuple[Signature, ...] = ()


def maximality_lookup(sig: Signature) -> MaximalityFact:
    """The two extension facts for the family signatures; everything else is unknown."""
    c = sig.canonical()
    if c == Signature(0, (2, 2, 2, 4)):
        return MaximalityFact("maximal")
    if sig.genus == 1 and sig.length == 1 and is_prime(sig.periods[0]) and sig.periods[0] >= 3:
        p = sig.periods[0]
        return MaximalityFact("extends", (Signature(0, (2, 2, 2, 2 * p)),))
    return MaximalityFact("unknown")


@dataclass
class ExtensionWitness:
    p: int
    n: int
    actions_tried: int
    epimorphisms_found: int

    @property
    def no_extension(self) -> bool:
        return self.epimorphisms_found == 0


def involutory_automorphisms(G: FiniteGroup, auts: list[GroupMap] | None = None) -> list[GroupMap]:
    auts = automorphisms(G) if auts is None else auts
    ident = np.arange(G.size)
    return [a for a in auts if not np.array_equal(a.images, ident) and np.array_equal(a.images[a.images], ident)]


def order_two_extensions(Gp: FiniteGroup, auts: list[GroupMap] | None = None) -> list[FiniteGroup]:
    """``Gp x| C_2`` for the trivial action and for every involutory automorphism."""
    C2 = cyclic(2, "t")
    out = []
    ident = identity_map(Gp)
    out.append(semidirect_product(Gp, C2, {0: ident, 1: ident}, name=f"{Gp.name} x C2"))
    for k, omega in enumerate(involutory_automorphisms(Gp, auts)):
        out.append(semidirect_product(Gp, C2, {0: ident, 1: omega}, name=f"{Gp.name} x|_{k} C2"))
    return out


def extension_witness_report(p: int, n: int, cap: int = ENUMERATION_CAP) -> ExtensionWitness:
    if not is_prime(p) or p == 2:
        raise NilautError(f"p must be an odd prime, got {p}")
    if 2 * p**n > 4096:
        raise CapExceededError(f"|G'| = {2 * p ** n} exceeds the group size cap")
    Gp = build_Gp(p, n)
    target = Signature(0, (2, 2, 2, 2 * p))
    found = 0
    exts = order_two_extensions(Gp)
    for Gx in exts:
        found += len(enumerate_image_tuples(target, Gx, cap))
    return ExtensionWitness(p, n, len(exts), found)


def extension_witness(p: int, n: int, cap: int = ENUMERATION_CAP) -> bool:
    """True iff no group ``Gp(p, n) x| C_2`` admits an action with signature ``(0; 2,2,2,2p)``."""
    return extension_witness_report(p, n, cap).no_extension
