"""Character tables and the group-algebra decomposition of Jacobians.

Two independent routes produce characters:

* :func:`character_table` runs Dixon's modular version of Burnside's
  class-sum method.  Common eigenvectors of the class multiplication
  matrices are split out over ``F_q`` (``q = 1 mod exponent``) and every value
  is lifted to an exact cyclotomic number from the eigenvalue multiplicities
  of ``rho(g)``.
* :func:`explicit_characters` traces the monomial representations that
  define the two families, together with all linear characters found as
  homomorphisms to a cyclic group.

The dimension calculus on top uses only character values: a factor
associated with a rational irreducible ``W`` has dimension
``k_V [d_V (h-1) + 1/2 sum_k (d_V - dim V^<c_k>)]``.
"""
from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .actions import SurfaceKernelEpimorphism, quotient_branch_data
from .cyclo import CycNumber, galois_units, rational_part, root_of_unity
from .errors import NilautError
from .groupkit import (
    FiniteGroup,
    class_index,
    conjugacy_classes,
    cyclic,
    exponent,
    group_prime,
    is_subgroup,
    subgroup_generated,
)
from .sigcalc import is_prime

GENERIC_SIZE_CAP = 512


class CharacterError(NilautError, ValueError):
    pass


class DecompositionError(NilautError, ValueError):
    pass


@dataclass
class CharacterTable:
    """Complex irreducible characters of G, one row per character.

    ``characters[i][k]`` is the value on class ``k``; all values live in the
    cyclotomic field of conductor ``conductor`` (the exponent of G).
    """

    group: FiniteGroup
    classes: list[list[int]]
    characters: list[tuple[CycNumber, ...]]
    conductor: int
    method: str = "dixon"

    @cached_property
    def class_of(self) -> np.ndarray:
        return class_index(self.group, self.classes)

    @property
    def class_sizes(self) -> list[int]:
        return [len(c) for c in self.classes]

    @property
    def degrees(self) -> list[int]:
        return [int(rational_part(row[0])) for row in self.characters]

    def __len__(self) -> int:
        return len(self.characters)

    def value(self, i: int, x: int) -> CycNumber:
        return self.characters[i][int(self.class_of[x])]

    def index_of(self, row: Sequence[CycNumber]) -> int:
        row = tuple(row)
        for i, r in enumerate(self.characters):
            if r == row:
                return i
        raise CharacterError("character not in table")


# -- modular linear algebra ----------------------------------------------------------


def choose_prime(e: int, order: int) -> int:
    """Smallest prime ``q = 1 mod e`` with ``q > 2 * order``."""
    q = e * (2 * order // e + 1) + 1
    while not is_prime(q):
        q += e
    return q


def _primitive_root(q: int) -> int:
    factors = _prime_divisors(q - 1)
    for g in range(2, q):
        if all(pow(g, (q - 1) // f, q) != 1 for f in factors):
            return g
    raise CharacterError(f"no primitive root mod {q}")  # unreachable for prime q


def _prime_divisors(n: int) -> list[int]:
    out, f = [], 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def _rref(M: np.ndarray, q: int) -> tuple[np.ndarray, list[int]]:
    M = M.copy() % q
    rows, cols = M.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(M[r:, c])
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            M[[r, k]] = M[[k, r]]
        M[r] = (M[r] * pow(int(M[r, c]), -1, q)) % q
        others = np.flatnonzero(M[:, c])
        for i in others:
            if i != r:
                M[i] = (M[i] - M[i, c] * M[r]) % q
        pivots.append(c)
        r += 1
    return M[:r], pivots


def _nullspace(M: np.ndarray, q: int) -> np.ndarray:
    """Basis of the right null space, as columns."""
    R, pivots = _rref(M, q)
    n = M.shape[1]
    free = [c for c in range(n) if c not in pivots]
    basis = np.zeros((n, len(free)), dtype=np.int64)
    for j, f in enumerate(free):
        basis[f, j] = 1
        for i, pc in enumerate(pivots):
            basis[pc, j] = (-R[i, f]) % q
    return basis


def _solve_square(A: np.ndarray, B: np.ndarray, q: int) -> np.ndarray:
    k = A.shape[0]
    R, pivots = _rref(np.hstack([A, B]), q)
    if pivots[:k] != list(range(k)):
        raise CharacterError("singular restriction matrix")
    return R[:k, k:]


def _charpoly(X: np.ndarray, q: int) -> list[int]:
    """Coefficients ``c_0..c_k`` (monic) by Faddeev-LeVerrier mod q."""
    k = X.shape[0]
    c = [0] * (k + 1)
    c[k] = 1
    Mm = np.zeros_like(X)
    ident = np.eye(k, dtype=np.int64)
    for m in range(1, k + 1):
        Mm = (X @ Mm + c[k - m + 1] * ident) % q
        tr = int(np.trace(X @ Mm % q)) % q
        c[k - m] = (-tr * pow(m, -1, q)) % q
    return c


def _roots(coeffs: list[int], q: int) -> list[int]:
    xs = np.arange(q, dtype=np.int64)
    acc = np.zeros(q, dtype=np.int64)
    for c in reversed(coeffs):
        acc = (acc * xs + c) % q
    return [int(x) for x in np.flatnonzero(acc == 0)]


def _split(spaces: list[np.ndarray], A: np.ndarray, q: int) -> list[np.ndarray]:
    out = []
    for B in spaces:
        k = B.shape[1]
        if k == 1:
            out.append(B)
            continue
        _, piv_rows = _rref(B.T, q)
        AB = (A @ B) % q
        X = _solve_square(B[piv_rows], AB[piv_rows], q)
        roots = _roots(_charpoly(X, q), q)
        parts = []
        for lam in roots:
            N = _nullspace((X - lam * np.eye(k, dtype=np.int64)) % q, q)
            parts.append((B @ N) % q)
        if sum(p.shape[1] for p in parts) != k:
            raise CharacterError("class matrix not diagonalizable mod q")
        out.extend(parts)
    return out


# -- the generic table ---------------------------------------------------------------------


def class_structure_constants(G: FiniteGroup, classes: list[list[int]], cls: np.ndarray) -> np.ndarray:
    """``c[j, k, l] = #{(x, y) : x in C_j, y in C_k, x y = g_l}`` for fixed ``g_l in C_l``."""
    r = len(classes)
    c = np.zeros((r, r, r), dtype=np.int64)
    xs = np.arange(G.size)
    inv = G.inverse
    for l, members in enumerate(classes):
        ys = G.table[inv[xs], members[0]]
        np.add.at(c[:, :, l], (cls[xs], cls[ys]), 1)
    return c


def _require_p_group(G: FiniteGroup) -> int:
    if G.size == 1:
        return 1
    p = group_prime(G)
    if p is None:
        raise CharacterError(
            f"{G.name} is not a p-group; Schur indices are only known to be 1 for p-groups here"
        )
    return p


def character_table(G: FiniteGroup, cap: int = GENERIC_SIZE_CAP, seed: int = 0) -> CharacterTable:
    """Exact character table by Dixon's method (p-groups up to ``cap`` elements)."""
    _require_p_group(G)
    if G.size > cap:
        raise CharacterError(f"|G| = {G.size} exceeds the character table cap {cap}")
    classes = conjugacy_classes(G)
    cls = class_index(G, classes)
    r = len(classes)
    e = exponent(G)
    q = choose_prime(e, G.size)
    consts = class_structure_constants(G, classes, cls) % q
    spaces = [np.eye(r, dtype=np.int64)]
    rng = random.Random(seed)
    # A random combination usually separates everything at once; the single
    # class matrices finish any remaining ties deterministically.
    combo = sum(rng.randrange(1, q) * consts[j] for j in range(r)) % q
    spaces = _split(spaces, combo, q)
    for j in range(r):
        if all(B.shape[1] == 1 for B in spaces):
            break
        spaces = _split(spaces, consts[j], q)
    if len(spaces) != r:
        raise CharacterError("failed to separate all characters")
    sizes = np.array([len(c) for c in classes], dtype=np.int64)
    inv_cls = cls[G.inverse[[c[0] for c in classes]]]
    size_inv = np.array([pow(int(s), -1, q) for s in sizes], dtype=np.int64)
    square_of_degree = {(d * d) % q: d for d in range(1, math.isqrt(G.size) + 1)}
    z = pow(_primitive_root(q), (q - 1) // e, q)
    powers = _power_classes(G, classes, cls, e)
    rows = []
    for B in spaces:
        v = B[:, 0] % q
        v = (v * pow(int(v[0]), -1, q)) % q
        S = int(np.sum(v * v[inv_cls] % q * size_inv % q)) % q
        d2 = G.size * pow(S, -1, q) % q
        if d2 not in square_of_degree:
            raise CharacterError("degree is not an integer square root")
        d = square_of_degree[d2]
        chi = d * v % q * size_inv % q
        rows.append(_lift_row(chi, d, powers, e, z, q))
    rows.sort(key=lambda row: _row_key(row))
    return CharacterTable(G, classes, rows, e, "dixon")


def _power_classes(G: FiniteGroup, classes, cls, e: int) -> np.ndarray:
    """``pc[l, j]`` = class of ``g_l^j`` for ``j < e``."""
    r = len(classes)
    pc = np.empty((r, e), dtype=np.int64)
    for l, members in enumerate(classes):
        g = members[0]
        x = G.identity
        for j in range(e):
            pc[l, j] = cls[x]
            x = G.table[x, g]
    return pc


def _lift_row(chi: np.ndarray, d: int, powers: np.ndarray, e: int, z: int, q: int) -> tuple[CycNumber, ...]:
    e_inv = pow(e, -1, q)
    zinv = pow(z, -1, q)
    out = []
    for l in range(len(chi)):
        vals = chi[powers[l]]  # chi(g^j), j = 0..e-1
        coeffs = []
        for k in range(e):
            w = pow(zinv, k, q)
            acc, t = 0, 1
            for j in range(e):
                acc = (acc + int(vals[j]) * t) % q
                t = t * w % q
            m = acc * e_inv % q
            if m > d:
                raise CharacterError("eigenvalue multiplicity out of range; prime too small")
            coeffs.append(m)
        if sum(coeffs) != d:
            raise CharacterError("multiplicities do not add up to the degree")
        out.append(CycNumber.from_exponents(e, coeffs) if e > 1 else CycNumber.rational(d))
    return tuple(out)


def _row_key(row: Sequence[CycNumber]) -> tuple:
    deg = rational_part(row[0])
    trivial = all(v == deg for v in row) and deg == 1
    return (0 if trivial else 1, deg, tuple((v.den, v.num) for v in row))


# -- the explicit route --------------------------------------------------------------------


@dataclass(frozen=True)
class Monomial:
    """Monomial matrix: row i has ``w^exps[i]`` in column ``cols[i]``."""

    cols: tuple[int, ...]
    exps: tuple[int, ...]
    modulus: int

    def __matmul__(self, other: "Monomial") -> "Monomial":
        cols = tuple(other.cols[c] for c in self.cols)
        exps = tuple((self.exps[i] + other.exps[c]) % self.modulus for i, c in enumerate(self.cols))
        return Monomial(cols, exps, self.modulus)

    def power(self, k: int) -> "Monomial":
        out = Monomial(tuple(range(len(self.cols))), (0,) * len(self.cols), self.modulus)
        for _ in range(k):
            out = out @ self
        return out

    def transpose(self) -> "Monomial":
        cols = [0] * len(self.cols)
        exps = [0] * len(self.cols)
        for i, c in enumerate(self.cols):
            cols[c], exps[c] = i, self.exps[i]
        return Monomial(tuple(cols), tuple(exps), self.modulus)

    def trace(self) -> CycNumber:
        coeffs = [0] * self.modulus
        for i, c in enumerate(self.cols):
            if c == i:
                coeffs[self.exps[i]] += 1
        return CycNumber.from_exponents(self.modulus, coeffs)


def g2_monomial_rep(n: int, t: int = 1) -> dict[str, Monomial]:
    """The degree-4 representation of G2(n) induced from the dihedral subgroup.

    ``t`` is an odd exponent selecting the Galois twist ``w -> w^t``.  The
    matrices as usually written act on row vectors (they satisfy ``asa = rs``),
    so their transposes are used; traces are unchanged.
    """
    M = 2 ** (n - 3)
    w, wb, minus = t % M, (-t) % M, M // 2
    rows = {
        "r": Monomial((0, 1, 2, 3), (w, wb, wb, w), M),
        "s": Monomial((1, 0, 3, 2), (0, 0, w, wb), M),
        "b": Monomial((0, 1, 2, 3), (0, 0, minus, minus), M),
        "a": Monomial((2, 3, 0, 1), (0, 0, 0, 0), M),
    }
    return {k: m.transpose() for k, m in rows.items()}


def gp_monomial_rep(p: int, n: int, k: int = 1) -> dict[str, Monomial]:
    """Degree-p representation ``a -> diag(w^(k r^j))``, ``b ->`` cyclic shift."""
    M = p ** (n - 1)
    r = p ** (n - 2) + 1
    return {
        "a": Monomial(tuple(range(p)), tuple(k * pow(r, j, M) % M for j in range(p)), M),
        "b": Monomial(tuple((j + 1) % p for j in range(p)), (0,) * p, M),
    }


def rep_on_elements(G: FiniteGroup, gens: dict[str, Monomial], order: Sequence[str]) -> list[Monomial]:
    """Matrices for every element from normal-form coordinates, checked to be a homomorphism."""
    if G.coords is None:
        raise CharacterError(f"{G.name} has no normal-form coordinates")
    mats = []
    for coord in G.coords:
        m = None
        for name, e in zip(order, coord):
            piece = gens[name].power(e)
            m = piece if m is None else m @ piece
        mats.append(m)
    rows = G.rows
    for x in range(G.size):
        for y in range(G.size):
            if mats[x] @ mats[y] != mats[rows[x][y]]:
                raise CharacterError("monomial matrices do not define a representation")
    return mats


def _character_of(G: FiniteGroup, classes, mats: list[Monomial], conductor: int) -> tuple[CycNumber, ...]:
    return tuple(mats[c[0]].trace().lift(conductor) for c in classes)


def linear_characters(G: FiniteGroup, classes: list[list[int]] | None = None) -> list[tuple[CycNumber, ...]]:
    """All homomorphisms G -> C_e (e the exponent), as characters."""
    classes = conjugacy_classes(G) if classes is None else classes
    e = exponent(G)
    C = cyclic(e)
    names = sorted(G.generators)
    gens = [G.generators[g] for g in names]
    # element k of cyclic(e) is c^k
    rows = []
    choices = [[k for k in range(e) if int(G.orders[g]) % _order_mod(k, e) == 0] for g in gens]
    for imgs in itertools.product(*choices):
        phi = kernels.extend_hom(G.table, C.table, gens, list(imgs), G.identity, C.identity)
        if phi is None or (phi < 0).any():
            continue
        rows.append(tuple(root_of_unity(e, int(phi[c[0]])) for c in classes))
    return rows


def _order_mod(k: int, e: int) -> int:
    return e // math.gcd(k, e)


def explicit_characters(G: FiniteGroup) -> list[tuple[CycNumber, ...]]:
    """Characters from the family representations plus all linear characters.

    For ``Gp`` this is the full table; for ``G2`` it is the linear characters
    and the Galois twists of the degree-4 representation.
    """
    if G.family is None:
        raise CharacterError(f"{G.name} is not one of the built families")
    classes = conjugacy_classes(G)
    e = exponent(G)
    rows = linear_characters(G, classes)
    if G.family[0] == "G2":
        n = G.family[1]
        M = 2 ** (n - 3)
        for t in range(1, M, 2):
            mats = rep_on_elements(G, g2_monomial_rep(n, t), ("r", "s", "b", "a"))
            rows.append(_character_of(G, classes, mats, e))
    else:
        _, p, n = G.family
        M = p ** (n - 1)
        for k in range(1, M):
            if k % p:
                mats = rep_on_elements(G, gp_monomial_rep(p, n, k), ("a", "b"))
                rows.append(_character_of(G, classes, mats, e))
    unique = list(dict.fromkeys(rows))
    unique.sort(key=_row_key)
    return unique


def explicit_table(G: FiniteGroup) -> CharacterTable:
    """Full table from the explicit route; only complete for the ``Gp`` family."""
    rows = explicit_characters(G)
    classes = conjugacy_classes(G)
    if len(rows) != len(classes):
        raise CharacterError(f"explicit route gives {len(rows)} of {len(classes)} characters for {G.name}")
    return CharacterTable(G, classes, rows, exponent(G), "explicit")


# -- checks ------------------------------------------------------------------------------


def inner_product(table: CharacterTable, i: int, j: int) -> Fraction:
    acc = CycNumber.rational(0, table.conductor)
    for size, x, y in zip(table.class_sizes, table.characters[i], table.characters[j]):
        acc = acc + x * y.conjugate() * size
    return rational_part(acc) / table.group.size


def orthogonality_defects(table: CharacterTable) -> list[str]:
    """Empty iff rows and columns are orthonormal and degrees square-sum to |G|."""
    issues = []
    r = len(table)
    if r != len(table.classes):
        issues.append(f"{r} characters for {len(table.classes)} classes")
    if sum(d * d for d in table.degrees) != table.group.size:
        issues.append("sum of squared degrees differs from |G|")
    if table.characters and any(v != 1 for v in table.characters[0]):
        issues.append("first row is not the trivial character")
    for i in range(r):
        for j in range(i, r):
            v = inner_product(table, i, j)
            if v != (1 if i == j else 0):
                issues.append(f"<chi_{i}, chi_{j}> = {v}")
    for k in range(len(table.classes)):
        for l in range(k, len(table.classes)):
            acc = CycNumber.rational(0, table.conductor)
            for row in table.characters:
                acc = acc + row[k] * row[l].conjugate()
            expect = Fraction(table.group.size, table.class_sizes[k]) if k == l else 0
            if acc != expect:
                issues.append(f"column {k}, {l} orthogonality fails")
    return issues


# -- rational irreducibles ---------------------------------------------------------------


@dataclass(frozen=True)
class RationalIrrep:
    index: int
    members: tuple[int, ...]
    degree: int
    field_degree: int
    schur_index: int = 1

    @property
    def multiplicity(self) -> int:
        return self.degree // self.schur_index

    @property
    def name(self) -> str:
        return f"W{self.index + 1}"

    @property
    def representative(self) -> int:
        return self.members[0]

    def is_trivial(self) -> bool:
        return self.index == 0


def galois_conjugate_index(table: CharacterTable, i: int, t: int) -> int:
    return table.index_of(v.galois(t) for v in table.characters[i])


def frobenius_schur_indicator(table: CharacterTable, i: int) -> int:
    """``(1/|G|) sum_g chi(g^2)``: 1 real, -1 quaternionic, 0 not real-valued."""
    G = table.group
    squares = G.table[np.arange(G.size), np.arange(G.size)]
    counts = np.bincount(table.class_of[squares], minlength=len(table.classes))
    acc = CycNumber.rational(0, table.conductor)
    for k, c in enumerate(counts):
        if c:
            acc = acc + table.characters[i][k] * int(c)
    v = rational_part(acc) / G.size
    if v not in (-1, 0, 1):
        raise CharacterError(f"indicator {v} is not -1, 0 or 1; broken table")
    return int(v)


def schur_index(table: CharacterTable, i: int) -> int:
    """Schur index over Q of a character of a p-group.

    It is 1 for odd p.  For 2-groups it is 2 exactly when the indicator is
    -1: the character field is then real and ramifies at every infinite
    place, while a non-real or orthogonal character can only ramify at the
    single prime over 2, which the reciprocity law rules out.
    """
    if _require_p_group(table.group) != 2:
        return 1
    return 2 if frobenius_schur_indicator(table, i) == -1 else 1


def rational_irreps(table: CharacterTable) -> list[RationalIrrep]:
    """Galois orbits of characters; ``k_V`` is the orbit size, ``s_V`` the Schur index."""
    _require_p_group(table.group)
    units = galois_units(table.conductor)
    lookup = {row: i for i, row in enumerate(table.characters)}
    seen: set[int] = set()
    out = []
    for i, row in enumerate(table.characters):
        if i in seen:
            continue
        orbit = sorted({lookup[tuple(v.galois(t) for v in row)] for t in units})
        seen.update(orbit)
        out.append(RationalIrrep(len(out), tuple(orbit), table.degrees[i], len(orbit), schur_index(table, i)))
    return out


def irrep_of_character(irreps: Sequence[RationalIrrep], i: int) -> RationalIrrep:
    for W in irreps:
        if i in W.members:
            return W
    raise CharacterError(f"character {i} not in any rational irreducible")


def fixed_dim(table: CharacterTable, i: int, H: Iterable[int]) -> int:
    """``dim V^H = (1/|H|) sum_{h in H} chi(h)``."""
    H = list(H)
    acc = CycNumber.rational(0, table.conductor)
    for h in H:
        acc = acc + table.value(i, h)
    v = rational_part(acc) / len(H)
    if v.denominator != 1 or v < 0:
        raise CharacterError(f"fixed dimension {v} is not a non-negative integer; broken table")
    return int(v)


def dim_factor(theta: SurfaceKernelEpimorphism, W: RationalIrrep, table: CharacterTable) -> int:
    """Dimension of the factor attached to ``W``; the trivial factor has dimension h.

    ``k_V s_V (d_V (h-1) + 1/2 sum_k (d_V - dim V^<c_k>))``: the W-isotypic part
    of JC has dimension ``k_V d_V`` times the bracket and splits as ``B^(d_V/s_V)``.
    """
    h = theta.signature.genus
    if W.is_trivial():
        return h
    G = theta.group
    d = W.degree
    twice = 2 * d * (h - 1)
    for c in theta.period_images:
        twice += d - fixed_dim(table, W.representative, subgroup_generated(G, [c]))
    val = Fraction(W.field_degree * W.schur_index * twice, 2)
    if val.denominator != 1 or val < 0:
        raise DecompositionError(f"non-integral factor dimension {val} for {W.name}")
    return int(val)


@dataclass(frozen=True)
class Factor:
    irrep: str
    degree: int
    field_degree: int
    multiplicity: int
    dim: int

    def to_json(self) -> dict:
        return {
            "irrep": self.irrep,
            "d_V": self.degree,
            "k_V": self.field_degree,
            "n": self.multiplicity,
            "dim": self.dim,
        }


@dataclass
class DecompositionReport:
    factors: list[Factor]
    genus: int
    subgroup: tuple[int, ...] | None = None
    _all: list[Factor] = field(default_factory=list, repr=False)

    @property
    def total(self) -> int:
        return sum(f.multiplicity * f.dim for f in self.factors)

    def factor(self, name: str) -> Factor:
        for f in self._all or self.factors:
            if f.irrep == name:
                return f
        raise KeyError(name)

    def to_json(self) -> dict:
        return {
            "genus": self.genus,
            "total": self.total,
            "subgroup_order": len(self.subgroup) if self.subgroup is not None else None,
            "factors": [f.to_json() for f in self.factors],
        }


def _factor_dims(theta, table, irreps) -> dict[int, int]:
    return {W.index: dim_factor(theta, W, table) for W in irreps}


def group_algebra_decomposition(
    theta: SurfaceKernelEpimorphism,
    table: CharacterTable | None = None,
    irreps: list[RationalIrrep] | None = None,
) -> DecompositionReport:
    """Factors of JC with multiplicities ``n = d_V / s_V``; the total must equal g."""
    table = character_table(theta.group) if table is None else table
    irreps = rational_irreps(table) if irreps is None else irreps
    dims = _factor_dims(theta, table, irreps)
    every = [Factor(W.name, W.degree, W.field_degree, W.multiplicity, dims[W.index]) for W in irreps]
    rep = DecompositionReport([f for f in every if f.dim], theta.genus(), None, every)
    if rep.total != rep.genus:
        raise DecompositionError(f"decomposition inconsistent: factors give {rep.total}, genus is {rep.genus}")
    return rep


def quotient_decomposition(
    theta: SurfaceKernelEpimorphism,
    H: Iterable[int],
    table: CharacterTable | None = None,
    irreps: list[RationalIrrep] | None = None,
) -> DecompositionReport:
    """Factors of ``J(C/H)`` with multiplicities ``dim V^H / s_V``.

    The total is checked against the quotient genus found from the branching
    data of ``C -> C/H``.
    """
    G = theta.group
    H = tuple(sorted(set(int(h) for h in H)))
    if not is_subgroup(G, H):
        raise NilautError("H is not a subgroup")
    table = character_table(G) if table is None else table
    irreps = rational_irreps(table) if irreps is None else irreps
    dims = _factor_dims(theta, table, irreps)
    every = []
    for W in irreps:
        n_h = fixed_dim(table, W.representative, H) // W.schur_index
        every.append(Factor(W.name, W.degree, W.field_degree, n_h, dims[W.index]))
    genus_h = quotient_branch_data(theta, H).genus
    rep = DecompositionReport([f for f in every if f.dim and f.multiplicity], genus_h, H, every)
    if rep.total != genus_h:
        raise DecompositionError(
            f"decomposition inconsistent: factors give {rep.total}, quotient genus is {genus_h}"
        )
    return rep


def family_table(G: FiniteGroup) -> CharacterTable:
    """Generic table, cross-checked against the explicit characters of the family."""
    table = character_table(G)
    if G.family is not None:
        have = set(table.characters)
        for row in explicit_characters(G):
            if row not in have:
                raise CharacterError("explicit and generic character routes disagree")
    return table
