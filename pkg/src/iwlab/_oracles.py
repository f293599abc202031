"""Independent oracles used by the verification suites: these recompute
expected values along a different route than the operation they check
(Smith normal form on multiplication matrices, naive convolutions,
permutation-expansion determinants)."""

from __future__ import annotations

import math

from .snf import elementary_divisors


def polymul_mod(a, b, mod):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % mod
    return out


def polymod(a, f, mod):
    r = [x % mod for x in a]
    df = len(f) - 1
    for i in range(len(r) - 1, df - 1, -1):
        c = r[i]
        if c:
            for j in range(df + 1):
                r[i - df + j] = (r[i - df + j] - c * f[j]) % mod
    return r[:df]


def omega_mod(p, n, f, mod):
    """(T+1)^(p^n) - 1 reduced mod (f, mod) by repeated squaring."""
    base = polymod([1, 1], f, mod)
    e = p**n
    acc = [1]
    while e:
        if e & 1:
            acc = polymod(polymul_mod(acc, base, mod), f, mod)
        e >>= 1
        if e:
            base = polymod(polymul_mod(base, base, mod), f, mod)
    acc = list(acc) + [0] * (len(f) - 1 - len(acc))
    acc[0] = (acc[0] - 1) % mod
    return acc


def mul_int(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def xi_int(p, i):
    """Exact integer coefficients of the i-th tower polynomial."""
    if i == 0:
        return [0, 1]
    out = [0] * ((p - 1) * p ** (i - 1) + 1)
    for k in range(p):
        e = k * p ** (i - 1)
        for j in range(e + 1):
            out[j] += math.comb(e, j)
    return out


def snf_corank_of_omega_action(p, n, f_int, l):
    """Z_p-corank of multiplication by omega_n on Z_p[[T]]/(f^l) for monic
    integer f, by Smith normal form at adaptively doubled precision."""
    fl = [1]
    for _ in range(l):
        fl = mul_int(fl, f_int)
    lam = len(fl) - 1
    prev = None
    k = 16 + lam * (n + 2)
    for _ in range(4):
        mod = p**k
        omega = omega_mod(p, n, fl, mod)
        cols = []
        cur = list(omega)
        for _j in range(lam):
            cols.append(list(cur))
            cur = polymod([0] + cur, fl, mod)  # multiply by T
        mat = [[cols[j][i] for j in range(lam)] for i in range(lam)]
        divs = elementary_divisors(mat)
        zeros = sum(1 for d in divs if d % mod == 0)
        if zeros == prev:
            return zeros
        prev = zeros
        k *= 2
    raise AssertionError("oracle corank did not stabilise")
