"""Table-driven finite groups.

Groups are stored as a full multiplication table over element indices
``0..size-1``.  The two families are built from explicit normal forms;
anything else comes from permutation generators or from products of groups
already built.  Element index order is the canonical ordering used for all
sorted output.
"""
from __future__ import annotations

import itertools
import random
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Iterable, Mapping, Sequence

import numpy as np

from . import kernels
from .errors import CapExceededError, GroupError, ParseError
from .sigcalc import is_prime, prime_power_base

DEFAULT_CAP = 4096
FULL_CHECK_LIMIT = 512
SAMPLED_TRIPLES = 100_000
AUTOMORPHISM_SEARCH_CAP = 10**9


class FiniteGroup:
    """A finite group given by its multiplication table.

    ``table[x, y]`` is the index of ``x*y``.  ``generators`` maps names to
    element indices; they must generate the group.  ``labels`` are optional
    normal-form words used when printing elements.
    """

    def __init__(
        self,
        table,
        identity: int = 0,
        generators: Mapping[str, int] | None = None,
        labels: Sequence[str] | None = None,
        name: str = "G",
        check: bool = True,
        coords: Sequence[tuple] | None = None,
    ):
        t = np.array(table, dtype=np.int64)
        if t.ndim != 2 or t.shape[0] != t.shape[1]:
            raise GroupError("multiplication table must be square")
        t.setflags(write=False)
        self.table = t
        self.size = int(t.shape[0])
        self.identity = int(identity)
        self.generators = dict(generators or {})
        self.labels = tuple(labels) if labels is not None else None
        self.coords = tuple(coords) if coords is not None else None
        self.name = name
        self.family: tuple | None = None  # ("G2", n) or ("Gp", p, n) for the built families
        if check:
            self.validate()

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name}, size={self.size})"

    def __len__(self) -> int:
        return self.size

    # -- basic arithmetic ------------------------------------------------

    @cached_property
    def rows(self) -> list[list[int]]:
        return self.table.tolist()

    @cached_property
    def inverse(self) -> np.ndarray:
        inv = np.argmax(self.table == self.identity, axis=1).astype(np.int64)
        inv.setflags(write=False)
        return inv

    @cached_property
    def orders(self) -> np.ndarray:
        o = kernels.element_orders(self.table, self.identity)
        o.setflags(write=False)
        return o

    def mul(self, *xs: int) -> int:
        acc = self.identity
        rows = self.rows
        for x in xs:
            acc = rows[acc][x]
        return acc

    def inv(self, x: int) -> int:
        return int(self.inverse[x])

    def power(self, x: int, k: int) -> int:
        if k < 0:
            x, k = self.inv(x), -k
        k %= int(self.orders[x])
        acc = self.identity
        rows = self.rows
        for _ in range(k):
            acc = rows[acc][x]
        return acc

    def conj(self, x: int, g: int) -> int:
        """``g x g^-1``."""
        return self.mul(g, x, self.inv(g))

    def commutator(self, x: int, y: int) -> int:
        """``x y x^-1 y^-1``."""
        return self.mul(x, y, self.inv(x), self.inv(y))

    def gen(self, name: str) -> int:
        return self.generators[name]

    def label(self, x: int) -> str:
        if self.labels is not None:
            return self.labels[x]
        return f"e{x}"

    def element_by_label(self, text: str) -> int:
        if self.labels is None:
            raise GroupError(f"{self.name} has no element labels")
        try:
            return self.labels.index(text)
        except ValueError:
            raise GroupError(f"no element labelled {text!r} in {self.name}") from None

    # -- validation -------------------------------------------------------

    def validate(self) -> None:
        n, t, e = self.size, self.table, self.identity
        if t.min() < 0 or t.max() >= n:
            raise GroupError("table entries out of range")
        ar = np.arange(n)
        if not (np.array_equal(t[e], ar) and np.array_equal(t[:, e], ar)):
            raise GroupError("identity is not two-sided")
        # Latin square rows/columns give unique solvability, hence inverses.
        srt = np.sort(t, axis=1)
        if not np.array_equal(srt, np.broadcast_to(ar, (n, n))):
            raise GroupError("row is not a permutation; some element is not invertible")
        if not np.array_equal(np.sort(t, axis=0), np.broadcast_to(ar[:, None], (n, n))):
            raise GroupError("column is not a permutation")
        if not is_associative(t):
            raise GroupError("multiplication is not associative")
        if self.generators:
            if not kernels.closure(t, list(self.generators.values()), e).all():
                raise GroupError("named generators do not generate the group")
        elif n > 1:
            raise GroupError("a non-trivial group needs named generators")


def is_associative(table: np.ndarray, rng: random.Random | None = None) -> bool:
    """Full check up to FULL_CHECK_LIMIT elements, sampled triples above."""
    n = table.shape[0]
    if n <= FULL_CHECK_LIMIT:
        for a in range(n):
            # (a*b)*c vs a*(b*c) for all b, c
            left = table[table[a]]
            right = table[a][table]
            if not np.array_equal(left, right):
                return False
        return True
    rng = rng or random.Random(0)
    idx = np.array([[rng.randrange(n) for _ in range(3)] for _ in range(SAMPLED_TRIPLES)])
    a, b, c = idx.T
    return bool(np.array_equal(table[table[a, b], c], table[a, table[b, c]]))


# -- maps -------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class GroupMap:
    source: FiniteGroup
    target: FiniteGroup
    images: np.ndarray

    def __call__(self, x: int) -> int:
        return int(self.images[x])

    def key(self) -> tuple[int, ...]:
        return tuple(int(v) for v in self.images)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GroupMap)
            and self.source is other.source
            and self.target is other.target
            and np.array_equal(self.images, other.images)
        )

    def __hash__(self) -> int:
        return hash(self.key())

    def is_homomorphism(self) -> bool:
        s, t = self.source.table, self.target.table
        im = self.images
        return bool(np.array_equal(im[s], t[im[:, None], im[None, :]]))

    def is_bijective(self) -> bool:
        return len(set(self.key())) == self.source.size == self.target.size

    def compose(self, other: "GroupMap") -> "GroupMap":
        """``self o other`` (apply ``other`` first)."""
        return GroupMap(other.source, self.target, self.images[other.images])

    def inverse(self) -> "GroupMap":
        inv = np.empty_like(self.images)
        inv[self.images] = np.arange(self.source.size)
        return GroupMap(self.target, self.source, inv)

    def order(self) -> int:
        k, cur = 1, self.images
        ident = np.arange(self.source.size)
        while not np.array_equal(cur, ident):
            cur = self.images[cur]
            k += 1
        return k


def identity_map(G: FiniteGroup) -> GroupMap:
    return GroupMap(G, G, np.arange(G.size, dtype=np.int64))


def inner_automorphism(G: FiniteGroup, g: int) -> GroupMap:
    t = G.table
    return GroupMap(G, G, t[t[g], G.inv(g)].astype(np.int64))


def inner_automorphisms(G: FiniteGroup) -> list[GroupMap]:
    """Distinct conjugation maps, sorted by image array."""
    maps = {}
    for g in range(G.size):
        m = inner_automorphism(G, g)
        maps.setdefault(m.key(), m)
    return [maps[k] for k in sorted(maps)]


def hom_from_generators(
    source: FiniteGroup, target: FiniteGroup, images: Mapping[str, int] | Sequence[int]
) -> GroupMap | None:
    """Homomorphism determined by generator images, or None if inconsistent."""
    names = list(source.generators)
    imgs = [images[nm] for nm in names] if isinstance(images, Mapping) else list(images)
    gens = [source.generators[nm] for nm in names]
    phi = kernels.extend_hom(source.table, target.table, gens, imgs, source.identity, target.identity)
    if phi is None or (phi < 0).any():
        return None
    return GroupMap(source, target, phi)


# -- constructors -------------------------------------------------------------


def _table_from_rule(elems: list, mul: Callable, index: dict) -> np.ndarray:
    n = len(elems)
    t = np.empty((n, n), dtype=np.int64)
    for i, x in enumerate(elems):
        t[i] = [index[mul(x, y)] for y in elems]
    return t


def build_G2(n: int) -> FiniteGroup:
    """The order ``2^n`` group ``(C_2 x D_{2^(n-3)}) x| C_2`` on generators r, s, a, b.

    Elements are the normal forms ``r^i s^j b^k a^l``; the defining relations
    are checked after construction.
    """
    if n < 5:
        raise GroupError(f"exceptional small case: n={n} (the family starts at n=5)")
    M = 2 ** (n - 3)
    half = M // 2

    # N = <r, s, b>: (i, j, k) <-> r^i s^j b^k, with s r s = r^-1 and b central.
    def nmul(x, y):
        i1, j1, k1 = x
        i2, j2, k2 = y
        return ((i1 + (-i2 if j1 else i2)) % M, (j1 + j2) % 2, (k1 + k2) % 2)

    def conj_a(x):
        # a r a = r^-1, a s a = s r = r^-1 s, a b a = b r^(M/2)
        i, j, k = x
        out = ((-i) % M, 0, 0)
        if j:
            out = nmul(out, (M - 1, 1, 0))
        if k:
            out = nmul(out, (half, 0, 1))
        return out

    def mul(x, y):
        xn, lx = x[:3], x[3]
        yn, ly = y[:3], y[3]
        if lx:
            yn = conj_a(yn)
        i, j, k = nmul(xn, yn)
        return (i, j, k, (lx + ly) % 2)

    elems = [(i, j, k, l) for i in range(M) for j in range(2) for k in range(2) for l in range(2)]
    index = {x: idx for idx, x in enumerate(elems)}
    table = _table_from_rule(elems, mul, index)
    labels = [_word([("r", i), ("s", j), ("b", k), ("a", l)]) for (i, j, k, l) in elems]
    gens = {
        "r": index[(1 % M, 0, 0, 0)],
        "s": index[(0, 1, 0, 0)],
        "a": index[(0, 0, 0, 1)],
        "b": index[(0, 0, 1, 0)],
    }
    G = FiniteGroup(table, 0, gens, labels, name=f"G2(n={n})", coords=elems)
    G.family = ("G2", n)
    _check_relations(G, g2_relations(n))
    return G


def g2_relations(n: int) -> list[tuple[str, str, str]]:
    """Defining relations as (name, lhs word, rhs word) over r, s, a, b."""
    M = 2 ** (n - 3)
    return [
        ("r^order", f"r^{M}", ""),
        ("s^2", "s s", ""),
        ("(sr)^2", "s r s r", ""),
        ("a^2", "a a", ""),
        ("b^2", "b b", ""),
        ("[s,b]", "s b s^-1 b^-1", ""),
        ("[r,b]", "r b r^-1 b^-1", ""),
        ("ara", "a r a", "r^-1"),
        ("asa", "a s a", "s r"),
        ("aba", "a b a", f"b r^{M // 2}"),
    ]


def _word(parts: list[tuple[str, int]]) -> str:
    out = []
    for g, e in parts:
        if e == 0:
            continue
        out.append(g if e == 1 else f"{g}^{e}")
    return " ".join(out) if out else "1"


_WORD_TOKEN = re.compile(r"([A-Za-z]\w*)(?:\^(-?\d+))?")


def eval_word(G: FiniteGroup, word: str) -> int:
    """Evaluate a space-separated word such as ``"a b r^-1"`` over named generators."""
    acc = G.identity
    for tok in word.split():
        m = _WORD_TOKEN.fullmatch(tok)
        if m is None or m.group(1) not in G.generators:
            raise GroupError(f"bad word token {tok!r} for {G.name}")
        e = int(m.group(2)) if m.group(2) else 1
        acc = G.mul(acc, G.power(G.generators[m.group(1)], e))
    return acc


def _check_relations(G: FiniteGroup, relations) -> None:
    for name, lhs, rhs in relations:
        if eval_word(G, lhs) != eval_word(G, rhs):
            raise GroupError(f"relation {name} fails in {G.name}")


def relations_hold(G: FiniteGroup, relations) -> dict[str, bool]:
    return {name: eval_word(G, lhs) == eval_word(G, rhs) for name, lhs, rhs in relations}


def gp_twist(p: int, n: int) -> int:
    """The exponent ``r = p^(n-2) + 1`` of the conjugation ``b a b^-1 = a^r``."""
    return p ** (n - 2) + 1


def build_Gp(p: int, n: int) -> FiniteGroup:
    """``C_{p^(n-1)} x| C_p`` as pairs ``(i, j) = a^i b^j``."""
    if not is_prime(p) or p == 2:
        raise GroupError(f"p must be an odd prime, got {p}")
    if n < 3:
        raise GroupError(f"n must be >= 3, got {n}")
    M = p ** (n - 1)
    r = gp_twist(p, n)
    if pow(r, p, M) != 1:
        raise GroupError("twist does not satisfy r^p = 1 mod p^(n-1)")
    rpow = [pow(r, j, M) for j in range(p)]

    def mul(x, y):
        return ((x[0] + y[0] * rpow[x[1]]) % M, (x[1] + y[1]) % p)

    elems = [(i, j) for i in range(M) for j in range(p)]
    index = {x: k for k, x in enumerate(elems)}
    table = _table_from_rule(elems, mul, index)
    labels = [_word([("a", i), ("b", j)]) for (i, j) in elems]
    gens = {"a": index[(1, 0)], "b": index[(0, 1)]}
    G = FiniteGroup(table, 0, gens, labels, name=f"Gp(p={p},n={n})", coords=elems)
    G.family = ("Gp", p, n)
    _check_relations(G, gp_relations(p, n))
    return G


def gp_relations(p: int, n: int) -> list[tuple[str, str, str]]:
    M = p ** (n - 1)
    r = gp_twist(p, n)
    return [
        ("a^order", f"a^{M}", ""),
        ("b^p", f"b^{p}", ""),
        ("bab^-1", "b a b^-1", f"a^{r}"),
    ]


def cyclic(m: int, gen: str = "c") -> FiniteGroup:
    t = (np.arange(m)[:, None] + np.arange(m)[None, :]) % m
    labels = [_word([(gen, i)]) for i in range(m)]
    gens = {gen: 1 % m} if m > 1 else {}
    return FiniteGroup(t, 0, gens, labels, name=f"C{m}", coords=[(i,) for i in range(m)])


def dihedral(m: int) -> FiniteGroup:
    """Dihedral group of order ``2m`` on rotation ``r`` and reflection ``s``."""
    def mul(x, y):
        return ((x[0] + (-y[0] if x[1] else y[0])) % m, (x[1] + y[1]) % 2)

    elems = [(i, j) for i in range(m) for j in range(2)]
    index = {x: k for k, x in enumerate(elems)}
    labels = [_word([("r", i), ("s", j)]) for (i, j) in elems]
    return FiniteGroup(
        _table_from_rule(elems, mul, index), 0, {"r": index[(1 % m, 0)], "s": index[(0, 1)]},
        labels, name=f"D{m}", coords=elems,
    )


def from_permutations(gens: Sequence[Sequence[int]], degree: int | None = None, cap: int = DEFAULT_CAP) -> FiniteGroup:
    """Close permutation generators under composition.

    Permutations are 0-based image tuples.  Products act left to right:
    ``x^(gh) = (x^g)^h``.  Elements are ordered lexicographically by image
    tuple, so the identity comes first.
    """
    gens = [tuple(int(v) for v in g) for g in gens]
    if degree is None:
        degree = max((len(g) for g in gens), default=1)
    gens = [g + tuple(range(len(g), degree)) for g in gens]
    for g in gens:
        if sorted(g) != list(range(degree)):
            raise GroupError(f"not a permutation of 0..{degree - 1}: {g}")
    ident = tuple(range(degree))

    def compose(g, h):
        return tuple(h[g[i]] for i in range(degree))

    seen = {ident}
    queue = [ident]
    while queue:
        x = queue.pop()
        for g in gens:
            y = compose(x, g)
            if y not in seen:
                if len(seen) >= cap:
                    raise CapExceededError(f"permutation closure exceeds cap {cap}")
                seen.add(y)
                queue.append(y)
    elems = sorted(seen)
    index = {x: k for k, x in enumerate(elems)}
    table = _table_from_rule(elems, compose, index)
    names = {}
    for k, g in enumerate(gens):
        if g != ident:
            names[f"g{k + 1}"] = index[g]
    labels = [_cycle_string(x) for x in elems]
    return FiniteGroup(table, 0, names, labels, name=f"Perm({len(elems)})", coords=elems)


def _cycle_string(perm: tuple[int, ...]) -> str:
    seen, out = set(), []
    for i in range(len(perm)):
        if i in seen or perm[i] == i:
            continue
        cyc, j = [], i
        while j not in seen:
            seen.add(j)
            cyc.append(str(j + 1))
            j = perm[j]
        out.append("(" + " ".join(cyc) + ")")
    return "".join(out) or "()"


def parse_cycles(text: str, degree: int | None = None) -> tuple[int, ...]:
    """``"(1 2 3)(4 5)"`` to a 0-based image tuple."""
    text = text.strip()
    cycles = re.findall(r"\(([^()]*)\)", text)
    if re.sub(r"\([^()]*\)", "", text).strip():
        raise ParseError(text, 0, "expected cycles like '(1 2 3)(4 5)'")
    pts = [[int(v) for v in c.replace(",", " ").split()] for c in cycles]
    top = max((v for c in pts for v in c), default=0)
    deg = max(top, degree or 0)
    img = list(range(deg))
    for c in pts:
        if any(v < 1 for v in c) or len(set(c)) != len(c):
            raise ParseError(text, 0, f"bad cycle {c}")
        for a, b in zip(c, c[1:] + c[:1]):
            img[a - 1] = b - 1
    return tuple(img)


def direct_product(A: FiniteGroup, B: FiniteGroup) -> FiniteGroup:
    """Pairs ``(x, y)``, index ``x*|B| + y``."""
    nb = B.size
    t = (A.table[:, None, :, None] * nb + B.table[None, :, None, :]).reshape(A.size * nb, A.size * nb)
    gens = {f"{k}": v * nb + B.identity for k, v in A.generators.items()}
    for k, v in B.generators.items():
        gens[k if k not in gens else f"{k}'"] = A.identity * nb + v
    labels = [_pair_label(A.label(x), B.label(y)) for x in range(A.size) for y in range(nb)]
    return FiniteGroup(t, A.identity * nb + B.identity, gens, labels, name=f"{A.name} x {B.name}")


def _pair_label(x: str, y: str) -> str:
    if x == "1":
        return y
    if y == "1":
        return x
    return f"{x} {y}"


def semidirect_product(
    N: FiniteGroup, H: FiniteGroup, action: Mapping[int, GroupMap] | Callable[[int], GroupMap],
    name: str | None = None,
) -> FiniteGroup:
    """``N x| H`` on pairs ``(x, h)`` with ``(x1,h1)(x2,h2) = (x1 act(h1)(x2), h1 h2)``.

    ``action`` maps each element of H to an automorphism of N and must be a
    homomorphism ``H -> Aut(N)``.
    """
    act = action if callable(action) else action.__getitem__
    maps = np.stack([np.asarray(act(h).images, dtype=np.int64) for h in range(H.size)])
    for h in range(H.size):
        m = GroupMap(N, N, maps[h])
        if not (m.is_homomorphism() and m.is_bijective()):
            raise GroupError(f"action of element {h} is not an automorphism")
    if not np.array_equal(maps[H.identity], np.arange(N.size)):
        raise GroupError("action is not a homomorphism: identity acts non-trivially")
    for h1 in range(H.size):
        for h2 in range(H.size):
            if not np.array_equal(maps[H.table[h1, h2]], maps[h1][maps[h2]]):
                raise GroupError("action is not a homomorphism H -> Aut(N)")
    nh = H.size
    x1 = np.arange(N.size)[:, None, None, None]
    h1 = np.arange(nh)[None, :, None, None]
    x2 = np.arange(N.size)[None, None, :, None]
    h2 = np.arange(nh)[None, None, None, :]
    xs = N.table[x1, maps[h1, x2]]
    hs = H.table[h1, h2]
    t = (xs * nh + hs).reshape(N.size * nh, N.size * nh)
    gens = {k: v * nh + H.identity for k, v in N.generators.items()}
    for k, v in H.generators.items():
        gens[k if k not in gens else f"{k}'"] = N.identity * nh + v
    labels = [_pair_label(N.label(x), H.label(h)) for x in range(N.size) for h in range(nh)]
    return FiniteGroup(t, N.identity * nh + H.identity, gens, labels, name=name or f"{N.name} x| {H.name}")


# -- structure ----------------------------------------------------------------


def element_order(G: FiniteGroup, x: int) -> int:
    return int(G.orders[x])


def subgroup_generated(G: FiniteGroup, xs: Iterable[int]) -> list[int]:
    mask = kernels.closure(G.table, list(xs), G.identity)
    return [int(i) for i in np.flatnonzero(mask)]


def generates(G: FiniteGroup, xs: Iterable[int]) -> bool:
    return bool(kernels.closure(G.table, list(xs), G.identity).all())


def is_subgroup(G: FiniteGroup, H: Iterable[int]) -> bool:
    hs = sorted(set(int(h) for h in H))
    if not hs or G.identity not in hs:
        return False
    hset = set(hs)
    rows = G.rows
    return all(rows[x][y] in hset for x in hs for y in hs)


def conjugacy_classes(G: FiniteGroup) -> list[list[int]]:
    """Conjugacy classes, each sorted, ordered by smallest element."""
    t, inv = G.table, G.inverse
    conj = t[t.T, inv[None, :]]  # conj[x, g] = g x g^-1
    seen = np.zeros(G.size, dtype=bool)
    classes = []
    for x in range(G.size):
        if seen[x]:
            continue
        cls = np.unique(conj[x])
        seen[cls] = True
        classes.append([int(c) for c in cls])
    return classes


def class_index(G: FiniteGroup, classes: list[list[int]] | None = None) -> np.ndarray:
    classes = classes if classes is not None else conjugacy_classes(G)
    idx = np.empty(G.size, dtype=np.int64)
    for k, cls in enumerate(classes):
        idx[cls] = k
    return idx


def center(G: FiniteGroup) -> list[int]:
    t = G.table
    return [int(x) for x in range(G.size) if np.array_equal(t[x], t[:, x])]


def is_p_group(G: FiniteGroup, p: int) -> bool:
    n = G.size
    while n % p == 0:
        n //= p
    return n == 1


def group_prime(G: FiniteGroup) -> int | None:
    """The prime ``p`` when G is a non-trivial p-group."""
    return prime_power_base(G.size)


def upper_central_series(G: FiniteGroup) -> list[list[int]]:
    t, inv = G.table, G.inverse
    ar = np.arange(G.size)
    # comm[x, g] = x g x^-1 g^-1
    comm = t[t[t[ar[:, None], ar[None, :]], inv[:, None]], inv[None, :]]
    current = np.zeros(G.size, dtype=bool)
    current[G.identity] = True
    series = [[G.identity]]
    while True:
        nxt = current[comm].all(axis=1)
        if nxt.sum() == current.sum():
            return series
        current = nxt
        series.append([int(i) for i in np.flatnonzero(current)])


def is_nilpotent(G: FiniteGroup) -> bool:
    return len(upper_central_series(G)[-1]) == G.size


def is_abelian(G: FiniteGroup) -> bool:
    return bool(np.array_equal(G.table, G.table.T))


def frattini_subgroup(G: FiniteGroup) -> list[int]:
    """Frattini subgroup of a p-group: generated by p-th powers and commutators."""
    p = group_prime(G)
    if p is None:
        raise GroupError("Frattini subgroup only implemented for p-groups")
    t, inv = G.table, G.inverse
    ar = np.arange(G.size)
    powers = ar.copy()
    for _ in range(p - 1):
        powers = t[powers, ar]
    comm = t[t[t[ar[:, None], ar[None, :]], inv[:, None]], inv[None, :]]
    seeds = set(powers.tolist()) | set(np.unique(comm).tolist())
    return subgroup_generated(G, seeds)


class GenerationTester:
    """Fast ``<xs> == G`` tests.

    For p-groups the test runs in the Frattini quotient, which is tiny; other
    groups fall back to a full closure.
    """

    def __init__(self, G: FiniteGroup):
        self.G = G
        self._coset = None
        if group_prime(G) is not None:
            phi = frattini_subgroup(G)
            if len(phi) < G.size:
                coset = np.full(G.size, -1, dtype=np.int64)
                reps = []
                for x in range(G.size):
                    if coset[x] < 0:
                        members = G.table[x, phi]
                        coset[members] = len(reps)
                        reps.append(x)
                q = len(reps)
                qt = np.empty((q, q), dtype=np.int64)
                for i, x in enumerate(reps):
                    qt[i] = coset[G.table[x, reps]]
                self._coset = coset
                self._qtable = qt
                self._qident = int(coset[G.identity])

    def __call__(self, xs: Iterable[int]) -> bool:
        if self._coset is None:
            return generates(self.G, xs)
        cs = [int(self._coset[x]) for x in xs]
        return bool(kernels.closure(self._qtable, cs, self._qident).all())


# -- automorphisms --------------------------------------------------------------


def automorphisms(G: FiniteGroup, cap: int = AUTOMORPHISM_SEARCH_CAP) -> list[GroupMap]:
    """All automorphisms, by backtracking over images of the stored generators.

    Each partial assignment is extended along the Cayley graph of the
    subgroup generated so far; inconsistent or non-injective partial maps are
    pruned.  The result is sorted by generator-image tuple.
    """
    gens = list(G.generators.values())
    k = len(gens)
    if k == 0:
        return [identity_map(G)]
    if G.size ** k > cap:
        raise CapExceededError(
            f"automorphism search space {G.size}^{k} exceeds cap {cap}; use a smaller group"
        )
    by_order: dict[int, list[int]] = {}
    for x in range(G.size):
        by_order.setdefault(int(G.orders[x]), []).append(x)
    results: list[np.ndarray] = []
    images: list[int] = []

    def rec(level: int, partial: np.ndarray | None):
        if level == k:
            results.append(partial)
            return
        g = gens[level]
        if partial is not None and partial[g] >= 0:
            cands = [int(partial[g])]
        else:
            cands = by_order[int(G.orders[g])]
        for c in cands:
            images.append(c)
            phi = kernels.extend_hom(G.table, G.table, gens[: level + 1], images, G.identity, G.identity)
            if phi is not None:
                dom = phi >= 0
                if len(np.unique(phi[dom])) == int(dom.sum()):
                    rec(level + 1, phi)
            images.pop()

    rec(0, None)
    out = [GroupMap(G, G, phi) for phi in results]
    out.sort(key=lambda m: tuple(int(m.images[g]) for g in gens))
    return out


def count_homomorphism_tuples(G: FiniteGroup, relations, generator_names: Sequence[str]) -> int:
    """Brute-force count of generator tuples satisfying ``relations`` and generating G.

    Independent of :func:`automorphisms`: it tests every tuple of elements
    against the presentation, with no pruning.
    """
    count = 0
    for tup in itertools.product(range(G.size), repeat=len(generator_names)):
        sub = dict(zip(generator_names, tup))
        if all(_eval_with(G, sub, lhs) == _eval_with(G, sub, rhs) for _, lhs, rhs in relations):
            if generates(G, tup):
                count += 1
    return count


def _eval_with(G: FiniteGroup, values: Mapping[str, int], word: str) -> int:
    acc = G.identity
    for tok in word.split():
        m = _WORD_TOKEN.fullmatch(tok)
        e = int(m.group(2)) if m.group(2) else 1
        acc = G.mul(acc, G.power(values[m.group(1)], e))
    return acc


# -- subgroups --------------------------------------------------------------------


@dataclass(frozen=True)
class SubgroupClass:
    members: tuple[tuple[int, ...], ...]
    normal: bool

    @property
    def representative(self) -> tuple[int, ...]:
        return self.members[0]

    @property
    def size(self) -> int:
        return len(self.members)


def subgroups_of_order(G: FiniteGroup, m: int) -> list[tuple[int, ...]]:
    """All subgroups of order ``m``, each as a sorted element tuple."""
    if G.size % m:
        return []
    if m == 1:
        return [(G.identity,)]
    found: set[tuple[int, ...]] = set()
    if is_prime(m):
        for x in range(G.size):
            if G.orders[x] == m:
                found.add(tuple(subgroup_generated(G, [x])))
        return sorted(found)
    # Grow from cyclic subgroups one generator at a time; every subgroup of
    # order m is reached through subgroups of order dividing m.
    frontier = {tuple(subgroup_generated(G, [x])) for x in range(G.size) if m % int(G.orders[x]) == 0}
    seen = set(frontier)
    while frontier:
        nxt = set()
        for H in frontier:
            if len(H) == m:
                found.add(H)
                continue
            hset = set(H)
            for x in range(G.size):
                if x in hset or m % int(G.orders[x]):
                    continue
                K = tuple(subgroup_generated(G, list(H) + [x]))
                if len(K) <= m and m % len(K) == 0 and K not in seen:
                    seen.add(K)
                    nxt.add(K)
        frontier = nxt
    return sorted(found)


def subgroup_classes_of_order(G: FiniteGroup, m: int) -> list[SubgroupClass]:
    subs = subgroups_of_order(G, m)
    t, inv = G.table, G.inverse
    remaining = set(subs)
    out = []
    for H in subs:
        if H not in remaining:
            continue
        h = np.array(H)
        orbit = {tuple(sorted(set(t[t[g, h], inv[g]].tolist()))) for g in range(G.size)}
        remaining -= orbit
        out.append(SubgroupClass(tuple(sorted(orbit)), normal=len(orbit) == 1))
    return out


def is_normal(G: FiniteGroup, H: Iterable[int]) -> bool:
    hs = set(H)
    return all(G.conj(h, g) in hs for g in G.generators.values() for h in hs)


def exponent(G: FiniteGroup) -> int:
    return int(np.lcm.reduce(G.orders)) if G.size > 1 else 1
