"""Integer-polynomial kernels shared by the exact arithmetic layers.

Polynomials are lists of Python ints, lowest degree first.  Multiplication
uses Kronecker substitution (pack into one big integer, one machine multiply,
unpack with balanced digits) so the hot loops run at bigint speed.
"""

from __future__ import annotations

from functools import lru_cache
from math import isqrt


def euler_phi(n: int) -> int:
    result = n
    m = n
    d = 2
    while d * d <= m:
        if m % d == 0:
            while m % d == 0:
                m //= d
            result -= result // d
        d += 1
    if m > 1:
        result -= result // m
    return result


def divisors(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d <= isqrt(n):
        if n % d == 0:
            return False
        d += 2
    return True


def factorize(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def trim(a: list[int]) -> list[int]:
    i = len(a)
    while i > 0 and a[i - 1] == 0:
        i -= 1
    return a[:i]


def polymul(a: list[int], b: list[int]) -> list[int]:
    """Exact product of two integer polynomials via Kronecker substitution."""
    if not a or not b:
        return []
    la, lb = len(a), len(b)
    if la == 1:
        s = a[0]
        return [s * c for c in b]
    if lb == 1:
        s = b[0]
        return [s * c for c in a]
    ma = max(abs(c) for c in a)
    mb = max(abs(c) for c in b)
    if ma == 0 or mb == 0:
        return [0] * (la + lb - 1)
    # slot width: products plus carries from min(la, lb) summands, one sign bit
    bound = ma * mb * min(la, lb)
    bits = (2 * bound + 1).bit_length()
    pack_a = sum(c << (bits * i) for i, c in enumerate(a))
    pack_b = sum(c << (bits * i) for i, c in enumerate(b))
    v = pack_a * pack_b
    mask = (1 << bits) - 1
    half = 1 << (bits - 1)
    out = []
    for _ in range(la + lb - 1):
        d = v & mask
        if d >= half:
            d -= 1 << bits
        out.append(d)
        v = (v - d) >> bits
    return out


def polydivmod_monic(a: list[int], b: list[int]) -> tuple[list[int], list[int]]:
    """Divide a by the monic integer polynomial b; exact integer quotient/remainder."""
    if not b or b[-1] != 1:
        raise ValueError("divisor must be a monic integer polynomial")
    r = list(a)
    db = len(b) - 1
    if db == 0:
        return list(a), []
    q = [0] * max(0, len(r) - db)
    for i in range(len(r) - 1, db - 1, -1):
        c = r[i]
        if c:
            q[i - db] = c
            for j in range(db + 1):
                r[i - db + j] -= c * b[j]
    return q, trim(r[:db])


def polymod_many(a: list[int], b: list[int], modulus: int | None = None) -> list[int]:
    q, r = polydivmod_monic(a, b)
    if modulus is not None:
        r = [c % modulus for c in r]
    return r


@lru_cache(maxsize=None)
def cyclotomic_poly(m: int) -> tuple[int, ...]:
    """Coefficients of the m-th cyclotomic polynomial, lowest degree first."""
    if m < 1:
        raise ValueError("conductor must be positive")
    if m == 1:
        return (-1, 1)
    f = [0] * (m + 1)
    f[0], f[m] = -1, 1
    for d in divisors(m)[:-1]:
        q, r = polydivmod_monic(f, list(cyclotomic_poly(d)))
        if r:
            raise AssertionError("cyclotomic division must be exact")
        f = q
    return tuple(f)
