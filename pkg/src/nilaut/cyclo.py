"""Exact arithmetic in cyclotomic fields of prime-power conductor.

An element of ``Q(w)``, ``w = exp(2 pi i / p^k)``, is stored as integer
coefficients over a common positive denominator in the power basis
``1, w, ..., w^(phi-1)`` modulo ``Phi_{p^k}(x) = sum_{i<p} x^(i p^(k-1))``.
Conductor 1 is the rational field.
"""
from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable

from .errors import NilautError
from .sigcalc import prime_power_base


class CycError(NilautError, ValueError):
    pass


@lru_cache(maxsize=None)
def _conductor_data(N: int) -> tuple[int, int, int]:
    """(p, k, phi) for ``N = p^k``; ``(1, 0, 1)`` for N = 1."""
    if N == 1:
        return 1, 0, 1
    p = prime_power_base(N)
    if p is None:
        raise CycError(f"conductor must be a prime power, got {N}")
    k = round(math.log(N, p))
    while p**k < N:
        k += 1
    while p**k > N:
        k -= 1
    return p, k, (p - 1) * p ** (k - 1)


def euler_phi(N: int) -> int:
    return _conductor_data(N)[2]


def _reduce(coeffs: list[int], N: int) -> list[int]:
    """Reduce a coefficient list (any length) modulo ``x^N - 1`` and ``Phi_N``."""
    p, k, phi = _conductor_data(N)
    if N == 1:
        return [sum(coeffs)]
    c = [0] * N
    for e, v in enumerate(coeffs):
        if v:
            c[e % N] += v
    step = p ** (k - 1)
    for e in range(N - 1, phi - 1, -1):
        v = c[e]
        if v:
            c[e] = 0
            base = e - phi
            for i in range(p - 1):
                c[base + i * step] -= v
    return c[:phi]


def _common_conductor(N1: int, N2: int) -> int:
    if N1 == N2 or N2 == 1:
        return N1
    if N1 == 1:
        return N2
    p1, p2 = _conductor_data(N1)[0], _conductor_data(N2)[0]
    if p1 != p2:
        raise CycError(f"mixed conductors {N1} and {N2} have no prime-power common refinement")
    return max(N1, N2)


class CycNumber:
    """Immutable element of a prime-power cyclotomic field."""

    __slots__ = ("conductor", "num", "den", "_hash")

    def __init__(self, conductor: int, num: Iterable[int], den: int = 1):
        phi = euler_phi(conductor)
        num = [int(v) for v in num]
        if len(num) != phi:
            raise CycError(f"need {phi} coefficients for conductor {conductor}, got {len(num)}")
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if den < 0:
            num, den = [-v for v in num], -den
        g = math.gcd(den, *num)
        if g > 1:
            num, den = [v // g for v in num], den // g
        self.conductor = conductor
        self.num = tuple(num)
        self.den = den
        self._hash = None

    # -- constructors -------------------------------------------------------

    @classmethod
    def rational(cls, q, conductor: int = 1) -> "CycNumber":
        q = Fraction(q)
        phi = euler_phi(conductor)
        return cls(conductor, [q.numerator] + [0] * (phi - 1), q.denominator)

    @classmethod
    def from_exponents(cls, conductor: int, coeffs: Iterable) -> "CycNumber":
        """``sum coeffs[e] * w^e`` for any length; coefficients may be rational."""
        fr = [Fraction(v) for v in coeffs]
        den = math.lcm(*(f.denominator for f in fr)) if fr else 1
        ints = [int(f * den) for f in fr]
        return cls(conductor, _reduce(ints, conductor), den)

    @property
    def coefficients(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(v, self.den) for v in self.num)

    # -- arithmetic -------------------------------------------------------------

    def lift(self, N: int) -> "CycNumber":
        """Same number expressed in conductor ``N`` (a power of the same prime)."""
        if N == self.conductor:
            return self
        if _common_conductor(self.conductor, N) != N:
            raise CycError(f"cannot lift conductor {self.conductor} to {N}")
        if self.conductor == 1:
            return CycNumber.rational(Fraction(self.num[0], self.den), N)
        scale = N // self.conductor
        full = [0] * N
        for e, v in enumerate(self.num):
            full[e * scale] = v
        return CycNumber(N, _reduce(full, N), self.den)

    def _coerce(self, other) -> tuple["CycNumber", "CycNumber"]:
        if not isinstance(other, CycNumber):
            other = CycNumber.rational(other)
        N = _common_conductor(self.conductor, other.conductor)
        return self.lift(N), other.lift(N)

    def __add__(self, other):
        a, b = self._coerce(other)
        den = a.den * b.den // math.gcd(a.den, b.den)
        fa, fb = den // a.den, den // b.den
        return CycNumber(a.conductor, [x * fa + y * fb for x, y in zip(a.num, b.num)], den)

    __radd__ = __add__

    def __neg__(self):
        return CycNumber(self.conductor, [-v for v in self.num], self.den)

    def __sub__(self, other):
        return self + (-other if isinstance(other, CycNumber) else -Fraction(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        a, b = self._coerce(other)
        N = a.conductor
        if N == 1:
            return CycNumber(1, [a.num[0] * b.num[0]], a.den * b.den)
        na = [(i, v) for i, v in enumerate(a.num) if v]
        nb = [(i, v) for i, v in enumerate(b.num) if v]
        full = [0] * (2 * len(a.num))
        for i, x in na:
            for j, y in nb:
                full[i + j] += x * y
        return CycNumber(N, _reduce(full, N), a.den * b.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if not isinstance(other, CycNumber):
            q = Fraction(other)
            if q == 0:
                raise ZeroDivisionError("division by zero")
            return CycNumber(self.conductor, [v * q.denominator for v in self.num], self.den * q.numerator)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = CycNumber.rational(1, self.conductor)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def is_zero(self) -> bool:
        return not any(self.num)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def galois(self, t: int) -> "CycNumber":
        """Image under the automorphism ``w -> w^t`` (``t`` prime to the conductor)."""
        N = self.conductor
        if math.gcd(t, N) != 1:
            raise CycError(f"{t} is not a unit modulo {N}")
        if N == 1:
            return self
        full = [0] * N
        for e, v in enumerate(self.num):
            if v:
                full[(e * t) % N] += v
        return CycNumber(N, _reduce(full, N), self.den)

    def conjugate(self) -> "CycNumber":
        return self.galois(-1)

    def inverse(self) -> "CycNumber":
        """Multiplicative inverse by extended Euclid against ``Phi_N``."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        N = self.conductor
        if N == 1:
            return CycNumber.rational(Fraction(self.den, self.num[0]))
        a = _trim([Fraction(v, self.den) for v in self.num])
        m = _trim([Fraction(v) for v in _cyclotomic_poly(N)])
        # Invariant: s*a == r (mod m)
        r0, r1 = m, a
        s0, s1 = [Fraction(0)], [Fraction(1)]
        while len(r1) > 1 or r1[0] == 0:
            q, rem = _polydivmod(r0, r1)
            r0, r1 = r1, rem
            s0, s1 = s1, _trim(_polysub(s0, _polymul(q, s1)))
            if len(r1) == 1 and r1[0] == 0:
                raise CycError("element is not invertible")  # unreachable: Phi_N irreducible
        c = r1[0]
        return CycNumber.from_exponents(N, [v / c for v in s1])

    # -- comparison / rational view ----------------------------------------------

    def _reduced(self) -> tuple[int, tuple[int, ...], int]:
        """Representation in the smallest conductor containing the number."""
        N, num = self.conductor, list(self.num)
        while N > 1:
            p, k, _ = _conductor_data(N)
            if k >= 2 and all(v == 0 for e, v in enumerate(num) if e % p):
                num = num[::p][: euler_phi(N // p)]
                N //= p
                continue
            if k == 1 and all(v == 0 for v in num[1:]):
                num, N = num[:1], 1
            break
        return N, tuple(num), self.den

    def __eq__(self, other) -> bool:
        if not isinstance(other, CycNumber):
            try:
                other = CycNumber.rational(other)
            except (TypeError, ValueError):
                return NotImplemented
        return self._reduced() == other._reduced()

    def __hash__(self) -> int:
        if self._hash is None:
            N, num, den = self._reduced()
            self._hash = hash(Fraction(num[0], den)) if N == 1 else hash((N, num, den))
        return self._hash

    def is_rational(self) -> bool:
        return self._reduced()[0] == 1

    def __repr__(self) -> str:
        terms = []
        for e, v in enumerate(self.coefficients):
            if v:
                terms.append(f"{v}" if e == 0 else f"{v}*w^{e}")
        body = " + ".join(terms) if terms else "0"
        return f"CycNumber[{self.conductor}]({body})"


def _cyclotomic_poly(N: int) -> list[int]:
    p, k, phi = _conductor_data(N)
    c = [0] * (phi + 1)
    step = p ** (k - 1)
    for i in range(p):
        c[i * step] = 1
    return c


def _trim(a: list[Fraction]) -> list[Fraction]:
    a = list(a)
    while len(a) > 1 and a[-1] == 0:
        a.pop()
    return a or [Fraction(0)]


def _polymul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _polysub(a, b):
    n = max(len(a), len(b))
    return [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]


def _polydivmod(a, b):
    a = list(a)
    q = [Fraction(0)] * max(1, len(a) - len(b) + 1)
    lead = b[-1]
    while len(a) >= len(b) and any(a):
        shift = len(a) - len(b)
        c = a[-1] / lead
        q[shift] = c
        for i, y in enumerate(b):
            a[i + shift] -= c * y
        a = _trim(a)
        if len(a) < len(b) or (len(a) == 1 and a[0] == 0):
            break
    return _trim(q), _trim(a)


def root_of_unity(conductor: int, exponent: int = 1) -> CycNumber:
    """``w^exponent`` with ``w = exp(2 pi i / conductor)``."""
    e = exponent % conductor
    full = [0] * conductor
    full[e] = 1
    return CycNumber(conductor, _reduce(full, conductor))


def zero(conductor: int = 1) -> CycNumber:
    return CycNumber.rational(0, conductor)


def one(conductor: int = 1) -> CycNumber:
    return CycNumber.rational(1, conductor)


def add(x: CycNumber, y: CycNumber) -> CycNumber:
    return x + y


def mul(x: CycNumber, y: CycNumber) -> CycNumber:
    return x * y


def conjugate(x: CycNumber) -> CycNumber:
    return x.conjugate()


def rational_part(x: CycNumber) -> Fraction:
    """The value of ``x`` as a rational; raises when ``x`` is not rational."""
    N, num, den = x._reduced()
    if N != 1:
        raise CycError(f"not rational: {x!r}")
    return Fraction(num[0], den)


def galois_units(N: int) -> list[int]:
    return [t for t in range(1, max(N, 2)) if math.gcd(t, N) == 1]


def galois_orbit(x: CycNumber) -> list[CycNumber]:
    seen: dict[CycNumber, None] = {}
    for t in galois_units(x.conductor):
        seen.setdefault(x.galois(t), None)
    return list(seen)


def galois_orbit_degree(x: CycNumber) -> int:
    """``[Q(x) : Q]``, the size of the Galois orbit of ``x``."""
    return len(galois_orbit(x))
