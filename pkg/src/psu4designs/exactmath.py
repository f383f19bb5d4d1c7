"""Exact unbounded-integer arithmetic for the feasibility sieve.

Everything here operates on plain Python ints, which are arbitrary
precision; the sieve routinely builds stabiliser orders and k-bounds in the
2^200 range, so nothing in this module may assume fixed-width arithmetic.
Divisor lists are materialised rather than streamed: the largest bound the
scans produce has well under 10^6 divisors.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, isqrt

__all__ = [
    "PrimePower",
    "Factorization",
    "gcd",
    "is_prime",
    "factorize",
    "divisors",
    "is_perfect_square",
    "primes_up_to",
    "prime_powers_up_to",
]

# Deterministic Miller-Rabin witness set; proves primality for all
# n < 3.317e24 (more than enough head room for trial-division cofactors,
# which only need the test once they exceed 10^8).
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)

_TRIAL_LIMIT = 10_000


def primes_up_to(n: int) -> list[int]:
    """All primes <= n by a plain sieve of Eratosthenes."""
    if n < 2:
        return []
    sieve = bytearray(b"\x01") * (n + 1)
    sieve[0:2] = b"\x00\x00"
    for p in range(2, isqrt(n) + 1):
        if sieve[p]:
            start = p * p
            sieve[start :: p] = b"\x00" * ((n - start) // p + 1)
    return [i for i, flag in enumerate(sieve) if flag]


_TRIAL_PRIMES = primes_up_to(_TRIAL_LIMIT)


def is_prime(n: int) -> bool:
    """Deterministic primality test (Miller-Rabin with a fixed witness set)."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41):
        if n == p:
            return True
        if n % p == 0:
            return False
    d = n - 1
    r = (d & -d).bit_length() - 1
    d >>= r
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_rho(n: int) -> int:
    """A nontrivial factor of odd composite n (Brent's cycle variant).

    The addend c is stepped deterministically so repeated runs factor the
    same input the same way.
    """
    if n % 2 == 0:
        return 2
    for c in range(1, 100):
        x = y = 2
        d = 1
        while d == 1:
            x = (x * x + c) % n
            y = (y * y + c) % n
            y = (y * y + c) % n
            d = gcd(abs(x - y), n)
        if d != n:
            return d
    raise ArithmeticError(f"rho failed to split {n}")


@dataclass(frozen=True)
class Factorization:
    """Canonical prime factorization: ((p1, e1), (p2, e2), ...) with p1 < p2 < ..."""

    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        last = 1
        for p, e in self.pairs:
            if p <= last:
                raise ValueError("primes must be strictly increasing")
            if e < 1:
                raise ValueError("exponents must be >= 1")
            last = p

    @property
    def value(self) -> int:
        n = 1
        for p, e in self.pairs:
            n *= p**e
        return n

    def multiplicity(self, p: int) -> int:
        for q, e in self.pairs:
            if q == p:
                return e
        return 0

    def divisor_count(self) -> int:
        n = 1
        for _, e in self.pairs:
            n *= e + 1
        return n

    def __str__(self) -> str:
        if not self.pairs:
            return "1"
        return "*".join(f"{p}^{e}" if e > 1 else str(p) for p, e in self.pairs)


def factorize(n: int) -> Factorization:
    """Canonical prime factorization of n >= 1.

    Trial division pulls out everything below 10^4; any remaining cofactor
    is split by deterministic Miller-Rabin plus Pollard rho, which covers
    the ~2^200 values the catalog can produce.
    """
    if n < 1:
        raise ValueError("factorize requires n >= 1")
    counts: dict[int, int] = {}
    for p in _TRIAL_PRIMES:
        if p * p > n:
            break
        while n % p == 0:
            counts[p] = counts.get(p, 0) + 1
            n //= p
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if m < _TRIAL_LIMIT * _TRIAL_LIMIT or is_prime(m):
            counts[m] = counts.get(m, 0) + 1
            continue
        d = _pollard_rho(m)
        stack.append(d)
        stack.append(m // d)
    return Factorization(tuple(sorted(counts.items())))


def divisors(f: Factorization | int) -> list[int]:
    """All divisors, ascending, each exactly once."""
    if isinstance(f, int):
        f = factorize(f)
    divs = [1]
    for p, e in f.pairs:
        powers = [p**i for i in range(e + 1)]
        divs = [d * pk for d in divs for pk in powers]
    divs.sort()
    return divs


def is_perfect_square(n: int) -> bool:
    if n < 0:
        return False
    r = isqrt(n)
    return r * r == n


@dataclass(frozen=True, order=True)
class PrimePower:
    """A prime power q = p^a; ordering is by value."""

    q: int
    p: int
    a: int

    def __post_init__(self) -> None:
        if self.a < 1:
            raise ValueError("exponent must be >= 1")
        if not is_prime(self.p):
            raise ValueError(f"{self.p} is not prime")
        if self.q != self.p**self.a:
            raise ValueError(f"{self.q} != {self.p}^{self.a}")

    @classmethod
    def of(cls, p: int, a: int) -> "PrimePower":
        return cls(p**a, p, a)

    @classmethod
    def from_value(cls, q: int) -> "PrimePower":
        f = factorize(q)
        if len(f.pairs) != 1:
            raise ValueError(f"{q} is not a prime power")
        p, a = f.pairs[0]
        return cls(q, p, a)

    def __str__(self) -> str:
        return str(self.q)


def prime_powers_up_to(q_max: int) -> list[PrimePower]:
    """All prime powers p^a <= q_max with a >= 1, sorted by value."""
    if q_max < 2:
        raise ValueError("q_max must be >= 2")
    out = []
    for p in primes_up_to(q_max):
        q, a = p, 1
        while q <= q_max:
            out.append(PrimePower(q, p, a))
            q *= p
            a += 1
    out.sort()
    return out
