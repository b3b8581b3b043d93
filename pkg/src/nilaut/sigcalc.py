"""Exact arithmetic on signatures of co-compact Fuchsian groups.

A signature ``(h; m_1, ..., m_l)`` records the orbit genus and the branch
periods of a quotient map.  Everything here is exact rational arithmetic.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .errors import NilautError, ParseError


class SignatureError(NilautError, ValueError):
    """Raised for malformed or unusable signatures."""


class NotFuchsianError(SignatureError):
    """Raised when an operation needs a hyperbolic signature."""

    def __init__(self, sig: "Signature"):
        super().__init__(f"not Fuchsian: {sig} has normalized area {normalized_area(sig)} <= 0")


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_factors(n: int) -> list[int]:
    """Distinct prime divisors of ``n`` in increasing order."""
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def prime_power_base(n: int) -> int | None:
    """Return ``p`` when ``n = p**k`` with ``k >= 1``, else None."""
    ps = prime_factors(n) if n > 1 else []
    return ps[0] if len(ps) == 1 else None


@dataclass(frozen=True)
class Signature:
    genus: int
    periods: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "periods", tuple(int(m) for m in self.periods))
        if int(self.genus) != self.genus or self.genus < 0:
            raise SignatureError(f"orbit genus must be a non-negative integer, got {self.genus}")
        for m in self.periods:
            if m < 2:
                raise SignatureError(f"period must be >= 2, got {m}")

    @property
    def length(self) -> int:
        return len(self.periods)

    def canonical(self) -> "Signature":
        """Same signature with periods sorted; use for multiset equality."""
        return Signature(self.genus, tuple(sorted(self.periods)))

    def same_as(self, other: "Signature") -> bool:
        return self.canonical() == other.canonical()

    def __str__(self) -> str:
        body = ",".join(str(m) for m in self.periods) if self.periods else "-"
        return f"({self.genus}; {body})"

    def to_json(self) -> dict:
        return {"genus": self.genus, "periods": list(self.periods)}

    @classmethod
    def from_json(cls, data: dict) -> "Signature":
        return cls(int(data["genus"]), tuple(data["periods"]))


_SIG_RE = re.compile(r"\s*\(\s*(\d+)\s*;\s*(-|\d+(?:\s*,\s*\d+)*)\s*\)\s*$")


def parse_signature(text: str) -> Signature:
    """Parse ``(h; m1,m2,...)`` or ``(h; -)``; whitespace is ignored."""
    m = _SIG_RE.match(text)
    if m is None:
        raise ParseError(text, _first_bad_position(text), "expected '(h; m1,...,ml)' or '(h; -)'")
    genus = int(m.group(1))
    body = m.group(2)
    periods = () if body == "-" else tuple(int(t) for t in body.split(","))
    return Signature(genus, periods)


def _first_bad_position(text: str) -> int:
    # Walk the grammar by hand to point at the first offending character.
    i, n = 0, len(text)

    def skip():
        nonlocal i
        while i < n and text[i].isspace():
            i += 1

    def digits() -> bool:
        nonlocal i
        start = i
        while i < n and text[i].isdigit():
            i += 1
        return i > start

    skip()
    if i >= n or text[i] != "(":
        return i
    i += 1
    skip()
    if not digits():
        return i
    skip()
    if i >= n or text[i] != ";":
        return i
    i += 1
    skip()
    if i < n and text[i] == "-":
        i += 1
    else:
        if not digits():
            return i
        skip()
        while i < n and text[i] == ",":
            i += 1
            skip()
            if not digits():
                return i
            skip()
    skip()
    if i >= n or text[i] != ")":
        return i
    i += 1
    skip()
    return i


def normalized_area(sig: Signature) -> Fraction:
    """Hyperbolic area divided by 2*pi: ``2h - 2 + sum(1 - 1/m_i)``."""
    return 2 * sig.genus - 2 + sum((1 - Fraction(1, m) for m in sig.periods), Fraction(0))


def euler_characteristic(sig: Signature) -> Fraction:
    return -normalized_area(sig)


def is_hyperbolic(sig: Signature) -> bool:
    return normalized_area(sig) > 0


def require_hyperbolic(sig: Signature) -> None:
    if not is_hyperbolic(sig):
        raise NotFuchsianError(sig)


def teichmuller_dim(sig: Signature) -> int:
    """Complex dimension ``3h - 3 + l`` of the Teichmuller space."""
    require_hyperbolic(sig)
    return 3 * sig.genus - 3 + sig.length


def is_degenerate(sig: Signature) -> bool:
    if sig.genus != 0:
        return False
    if sig.length == 1:
        return True
    return sig.length == 2 and sig.periods[0] != sig.periods[1]


def p_localization(sig: Signature, p: int) -> Signature:
    """Replace each period by its p-part, dropping periods prime to ``p``."""
    if not is_prime(p):
        raise SignatureError(f"p-localization needs a prime, got {p}")
    parts = []
    for m in sig.periods:
        q = 1
        while m % p == 0:
            m //= p
            q *= p
        if q > 1:
            parts.append(q)
    return Signature(sig.genus, tuple(parts))


def period_primes(sig: Signature) -> list[int]:
    return sorted({p for m in sig.periods for p in prime_factors(m)})


def is_nilpotent_admissible(sig: Signature) -> bool:
    # Primes dividing no period localize to (h; -), which is never degenerate.
    return all(not is_degenerate(p_localization(sig, p)) for p in period_primes(sig))


def riemann_hurwitz_genus(sig: Signature, order: int) -> Fraction:
    """Genus of a surface carrying an action of ``order`` with signature ``sig``.

    The value is rational; integrality is the caller's business.
    """
    require_hyperbolic(sig)
    if order < 1:
        raise SignatureError(f"group order must be positive, got {order}")
    return 1 + order * normalized_area(sig) / 2
