"""Sharp order bounds for nilpotent and p-group actions on d-dimensional families.

A bound is stored as the exact coefficient ``c`` in ``|G| <= c (g - 1)``.  By
Riemann-Hurwitz ``g - 1 = |G| * area / 2``, so the bound is attained exactly
when the signature has normalized area ``2 / c``; :func:`min_area_search`
re-derives the closed forms by exhausting the admissible signatures.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

from .errors import NilautError
from .groupkit import FiniteGroup, group_prime, is_nilpotent
from .sigcalc import (
    Signature,
    is_nilpotent_admissible,
    is_prime,
    riemann_hurwitz_genus,
    teichmuller_dim,
)

NILPOTENT = "nilpotent"
Family = Union[int, str]

NILPOTENT_PERIOD_CAP = 16


class BoundError(NilautError, ValueError):
    pass


@dataclass(frozen=True)
class BoundResult:
    p: Family
    d: int
    coefficient: Fraction
    extremal_signatures: tuple[Signature, ...]

    @property
    def min_area(self) -> Fraction:
        return 2 / self.coefficient

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "d": self.d,
            "coefficient": str(self.coefficient),
            "extremal_signatures": [str(s) for s in self.extremal_signatures],
        }


def _family(p: Family) -> Family:
    if p == NILPOTENT or p == 2:
        return NILPOTENT
    if isinstance(p, int) and is_prime(p):
        return p
    raise BoundError(f"expected a prime or {NILPOTENT!r}, got {p!r}")


def _check_d(d: int) -> None:
    if d < 1:
        raise BoundError(f"dimension must be >= 1, got {d}")


def max_genus_of_quotient(d: int) -> int:
    return d // 3 + 1


def max_order_coefficient(p: Family, d: int) -> Fraction:
    """``c`` with ``|G| <= c (g-1)`` for actions on a ``d``-dimensional family."""
    _check_d(d)
    fam = _family(p)
    if fam == NILPOTENT:
        return Fraction(8) if d == 1 else Fraction(4, d - 1)
    if fam == 3:
        return Fraction(3, d)
    lam = d % 3
    N = Fraction(2, 3) * d + lam * (Fraction(1, 3) - Fraction(1, fam))
    return 2 / N


def extremal_signatures(p: Family, d: int) -> list[Signature]:
    _check_d(d)
    fam = _family(p)
    if fam == NILPOTENT:
        return [Signature(0, (2, 2, 2, 4))] if d == 1 else [Signature(0, (2,) * (d + 3))]
    hmax = max_genus_of_quotient(d)
    if fam == 3:
        return sorted((Signature(h, (3,) * (d + 3 - 3 * h)) for h in range(hmax + 1)), key=_sig_key)
    return [Signature(hmax, (fam,) * (d + 3 - 3 * hmax))]


def bound(p: Family, d: int) -> BoundResult:
    return BoundResult(_family(p), d, max_order_coefficient(p, d), tuple(extremal_signatures(p, d)))


def _sig_key(s: Signature) -> tuple:
    return (s.genus, s.canonical().periods)


# -- exhaustive search -----------------------------------------------------------------


@dataclass
class SearchResult:
    d: int
    constraint: Family
    min_area: Fraction
    argmin: list[Signature]
    enumerated: int = 0
    areas: dict[Signature, Fraction] = field(default_factory=dict, repr=False)

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "constraint": self.constraint,
            "min_area": str(self.min_area),
            "argmin": [str(s) for s in self.argmin],
            "enumerated": self.enumerated,
        }


def allowed_periods(p: Family) -> list[int]:
    fam = _family(p)
    if fam == NILPOTENT:
        return list(range(2, NILPOTENT_PERIOD_CAP + 1))
    cap, out, q = 8 * fam, [], fam
    while q <= cap:
        out.append(q)
        q *= fam
    return out


def _admissible(sig: Signature, fam: Family) -> bool:
    # Periods are already restricted to powers of p for a p-family, so
    # admissibility reduces to non-degeneracy there as well.
    return is_nilpotent_admissible(sig)


def min_area_search(d: int, constraint: Family = NILPOTENT, keep_areas: bool = False) -> SearchResult:
    """Minimal normalized area over admissible signatures of Teichmüller dimension ``d``.

    Signatures range over ``h <= [d/3 + 1]`` with ``l = d + 3 - 3h`` periods
    from :func:`allowed_periods`.  Area grows with every period, so a branch is
    cut once its partial area, completed by the smallest allowed periods,
    strictly exceeds the best area seen.  Ties are never cut, so every
    minimizer is found.
    """
    _check_d(d)
    fam = _family(constraint)
    periods = allowed_periods(fam)
    term = {m: 1 - Fraction(1, m) for m in periods}
    best: Fraction | None = None
    argmin: list[Signature] = []
    enumerated = 0
    areas: dict[Signature, Fraction] = {}

    def visit(sig: Signature, area: Fraction) -> None:
        nonlocal best, argmin, enumerated
        enumerated += 1
        if area <= 0 or not _admissible(sig, fam):
            return
        if keep_areas:
            areas[sig] = area
        if best is None or area < best:
            best, argmin = area, [sig]
        elif area == best:
            argmin.append(sig)

    for h in range(max_genus_of_quotient(d) + 1):
        l = d + 3 - 3 * h
        if l < 0:
            continue
        chosen: list[int] = []

        def rec(start: int, area: Fraction) -> None:
            remaining = l - len(chosen)
            if remaining == 0:
                visit(Signature(h, tuple(chosen)), area)
                return
            for k in range(start, len(periods)):
                a2 = area + term[periods[k]]
                bound_area = a2 + (remaining - 1) * term[periods[k]]
                if best is not None and bound_area > best:
                    break  # larger periods only increase the bound
                chosen.append(periods[k])
                rec(k, a2)
                chosen.pop()

        rec(0, Fraction(2 * h - 2))
    if best is None:
        raise BoundError(f"no admissible signature of dimension {d}")
    argmin.sort(key=_sig_key)
    return SearchResult(d, fam, best, argmin, enumerated, areas)


# -- verdicts ---------------------------------------------------------------------------------


@dataclass(frozen=True)
class Verdict:
    status: str  # "consistent", "violates", "extremal"
    order: int
    genus: Fraction
    coefficient: Fraction
    family: Family

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "order": self.order,
            "genus": str(self.genus),
            "coefficient": str(self.coefficient),
            "family": self.family,
        }


def bound_family_of(G: FiniteGroup) -> Family:
    """Which bound applies: odd p for odd p-groups, otherwise the nilpotent one."""
    p = group_prime(G)
    if p is not None and p != 2:
        return p
    if is_nilpotent(G):
        return NILPOTENT
    raise BoundError("bound not applicable: group is neither nilpotent nor a p-group")


def check_action_against_bound(G: FiniteGroup, sig: Signature, d: int) -> Verdict:
    fam = bound_family_of(G)
    if teichmuller_dim(sig) != d:
        raise BoundError(f"signature {sig} has dimension {teichmuller_dim(sig)}, not {d}")
    c = max_order_coefficient(fam, d)
    g = riemann_hurwitz_genus(sig, G.size)
    if g.denominator != 1 or g < 2:
        return Verdict("consistent", G.size, g, c, fam)
    limit = c * (g - 1)
    if G.size > limit:
        status = "violates"
    elif G.size == limit:
        status = "extremal"
        if not any(sig.same_as(s) for s in extremal_signatures(fam, d)):
            raise BoundError(f"order attains the bound but {sig} is not extremal")
    else:
        status = "consistent"
    return Verdict(status, G.size, g, c, fam)
