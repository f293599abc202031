"""Module-invariant tests, cross-checked by an independent Smith-normal-form
oracle built directly on multiplication matrices (no library series code)."""

import math
import random

import pytest

from iwlab.iwmodules import (
    DEFAULT_LEVEL_CAP,
    ElementaryModuleDesc,
    IrreducibilityError,
    certify_irreducible,
    coinvariant_ranks,
    elementary_invariants,
    xi_index,
)
from iwlab.padic import PrecisionContext
from iwlab.series import DistinguishedPolynomial, cyclotomic_polys
from iwlab.snf import elementary_divisors, smith_normal_form, solve_integer

CTX3 = PrecisionContext(p=3, cap_N=20, cap_D=40)
CTX5 = PrecisionContext(p=5, cap_N=20, cap_D=40)


# -- oracle ---------------------------------------------------------------------


def oracle_polymul_mod(a, b, mod):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % mod
    return out


def oracle_polymod(a, f, mod):
    r = [x % mod for x in a]
    df = len(f) - 1
    for i in range(len(r) - 1, df - 1, -1):
        c = r[i]
        if c:
            for j in range(df + 1):
                r[i - df + j] = (r[i - df + j] - c * f[j]) % mod
    return r[:df]


def oracle_omega_mod(p, n, f, mod):
    """(T+1)^(p^n) - 1 reduced mod (f, mod) by repeated squaring."""
    base = oracle_polymod([1, 1], f, mod)
    e = p**n
    acc = [1]
    while e:
        if e & 1:
            acc = oracle_polymod(oracle_polymul_mod(acc, base, mod), f, mod)
        e >>= 1
        if e:
            base = oracle_polymod(oracle_polymul_mod(base, base, mod), f, mod)
    acc = list(acc) + [0] * (len(f) - 1 - len(acc))
    acc[0] = (acc[0] - 1) % mod
    return acc


def oracle_rank_by_snf(p, n, f_int, l):
    """Z_p-corank of multiplication by omega_n on Z_p[[T]]/(f^l), f monic with
    integer coefficients; adaptive precision until the zero count stabilises."""
    fl = [1]
    for _ in range(l):
        fl = [int(x) for x in _mul_int(fl, f_int)]
    lam = len(fl) - 1
    prev = None
    K = 16 + lam * (n + 2)
    for _ in range(4):
        mod = p**K
        omega = oracle_omega_mod(p, n, fl, mod)
        cols = []
        cur = list(omega)
        for _j in range(lam):
            cols.append(list(cur))
            cur = oracle_polymod([0] + cur, fl, mod)  # multiply by T
        mat = [[cols[j][i] for j in range(lam)] for i in range(lam)]
        divs = elementary_divisors(mat)
        zeros = sum(1 for d in divs if d % mod == 0)
        if zeros == prev:
            return zeros
        prev = zeros
        K *= 2
    raise AssertionError("oracle rank did not stabilise")


def _mul_int(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def xi_int(p, i):
    """Exact integer coefficients of xi_i, independent of the library."""
    if i == 0:
        return [0, 1]
    out = [0] * ((p - 1) * p ** (i - 1) + 1)
    for k in range(p):
        e = k * p ** (i - 1)
        for j in range(e + 1):
            out[j] += math.comb(e, j)
    return out


# -- snf basics -------------------------------------------------------------------


def test_snf_identity_and_divisibility():
    d, left, right = smith_normal_form([[2, 4, 4], [-6, 6, 12], [10, 4, 16]])
    divs = [d[i][i] for i in range(3)]
    for a, b in zip(divs, divs[1:]):
        if b != 0:
            assert b % a == 0
    # transform identity: left * a * right == d
    a = [[2, 4, 4], [-6, 6, 12], [10, 4, 16]]
    la = [[sum(left[i][k] * a[k][j] for k in range(3)) for j in range(3)] for i in range(3)]
    lar = [[sum(la[i][k] * right[k][j] for k in range(3)) for j in range(3)] for i in range(3)]
    assert lar == d


def test_snf_solver():
    a = [[2, 0], [0, 3]]
    assert solve_integer(a, [4, 9]) == [2, 3]
    assert solve_integer(a, [1, 0]) is None


def test_snf_random_transform_identity():
    rng = random.Random(3)
    for _ in range(20):
        m, n = rng.randint(1, 4), rng.randint(1, 4)
        a = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(m)]
        d, left, right = smith_normal_form(a)
        la = [[sum(left[i][k] * a[k][j] for k in range(m)) for j in range(n)] for i in range(m)]
        lar = [[sum(la[i][k] * right[k][j] for k in range(n)) for j in range(n)] for i in range(m)]
        assert lar == d
        for i in range(min(m, n) - 1):
            if d[i][i] == 0:
                assert d[i + 1][i + 1] == 0
            else:
                assert d[i + 1][i + 1] % d[i][i] == 0


# -- invariants -------------------------------------------------------------------


def test_invariants_pure_mu():
    M = ElementaryModuleDesc(CTX3, 0, mu_parts=(2,))
    mu, lam, char = elementary_invariants(M)
    assert (mu, lam) == (2, 0)
    assert char.degree == 0


def test_invariants_xi1_p3():
    _, xi1 = cyclotomic_polys(CTX3, 1)
    M = ElementaryModuleDesc(CTX3, 0, lambda_parts=((xi1, 1),))
    mu, lam, char = elementary_invariants(M)
    assert (mu, lam) == (0, 2)
    assert char.equals(xi1)


def test_invariants_mixed():
    _, xi1 = cyclotomic_polys(CTX3, 1)
    M = ElementaryModuleDesc(CTX3, 0, mu_parts=(1,), lambda_parts=((xi1, 2),))
    mu, lam, char = elementary_invariants(M)
    assert (mu, lam) == (1, 4)
    assert char.equals(xi1 * xi1)


def test_char_poly_matches_multiplication_matrix_charpoly():
    # independent check: characteristic polynomial of the companion action of T
    # on Lambda/(char) reproduces the product formula
    from fractions import Fraction

    _, xi1 = cyclotomic_polys(CTX3, 1)
    M = ElementaryModuleDesc(CTX3, 0, lambda_parts=((xi1, 2),))
    _, _, char = elementary_invariants(M)
    f = [u[0] for u in char.coords]  # monic integer coefficients
    lam = len(f) - 1
    comp = [[Fraction(0)] * lam for _ in range(lam)]
    for i in range(1, lam):
        comp[i][i - 1] = Fraction(1)
    for i in range(lam):
        comp[i][lam - 1] = Fraction(-f[i])
    ident = [[Fraction(int(i == j)) for j in range(lam)] for i in range(lam)]
    cs = []
    bk = [row[:] for row in comp]
    for k in range(1, lam + 1):
        if k > 1:
            bk = _fmatmul(comp, _fmatadd(bk, _fmatscale(ident, cs[-1])))
        cs.append(-sum(bk[i][i] for i in range(lam)) / k)
    # Faddeev-LeVerrier gives x^lam + c1 x^(lam-1) + ... + c_lam
    assert [Fraction(1)] + cs == [Fraction(1)] + [Fraction(c) for c in reversed(f[:-1])]


def _fmatmul(a, b):
    n = len(a)
    return [[sum(a[i][k] * b[k][j] for k in range(n)) for j in range(n)] for i in range(n)]


def _fmatadd(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def _fmatscale(a, s):
    return [[x * s for x in row] for row in a]


# -- coinvariant ranks -------------------------------------------------------------


def test_ranks_xi1_p3_against_oracle():
    _, xi1 = cyclotomic_polys(CTX3, 1)
    M = ElementaryModuleDesc(CTX3, 0, lambda_parts=((xi1, 1),))
    assert coinvariant_ranks(M, 0) == (0, 0, 1)
    assert coinvariant_ranks(M, 1) == (2, 2, 1)
    assert coinvariant_ranks(M, 5) == (2, 2, 1)
    for n in (0, 1, 3):
        assert oracle_rank_by_snf(3, n, xi_int(3, 1), 1) == coinvariant_ranks(M, n)[0]


def test_ranks_mu_only():
    M = ElementaryModuleDesc(CTX3, 0, mu_parts=(2,))
    for n in range(5):
        assert coinvariant_ranks(M, n) == (0, 0, 0)


def test_ranks_non_xi_factor():
    F = DistinguishedPolynomial.from_coeffs(CTX3, [3, 0, 1])  # T^2 + 3, not a xi_i
    M = ElementaryModuleDesc(CTX3, 0, lambda_parts=((F, 1),))
    for n in range(4):
        assert coinvariant_ranks(M, n) == (0, 0, 0)
        assert oracle_rank_by_snf(3, n, [3, 0, 1], 1) == 0


def test_ranks_reject_free_part():
    M = ElementaryModuleDesc(CTX3, 1)
    with pytest.raises(ValueError):
        coinvariant_ranks(M, 0)


def test_ranks_random_against_oracle():
    rng = random.Random(2024)
    for _ in range(10):
        ctx = rng.choice([CTX3, CTX5])
        p = ctx.p
        parts = []
        ints = []
        for _k in range(rng.randint(1, 2)):
            kind = rng.random()
            if kind < 0.5:
                i = rng.randint(0, 2)
                _, xi = cyclotomic_polys(ctx, i)
                parts.append((xi, rng.randint(1, 2)))
                ints.append((xi_int(p, i), parts[-1][1]))
            else:
                coeffs = [p * rng.randint(1, p - 1), p * rng.randint(0, p - 1), 1]
                F = DistinguishedPolynomial.from_coeffs(ctx, coeffs)
                parts.append((F, 1))
                ints.append((coeffs, 1))
        mu = tuple(rng.randint(1, 2) for _ in range(rng.randint(0, 1)))
        M = ElementaryModuleDesc(ctx, 0, mu_parts=mu, lambda_parts=tuple(parts), attested=True)
        for n in range(0, 5):
            rank_inv, rank_coinv, n0 = coinvariant_ranks(M, n)
            assert rank_inv == rank_coinv
            oracle = sum(oracle_rank_by_snf(p, n, f, l) for f, l in ints)
            assert rank_inv == oracle
        # stabilisation beyond n0
        n0 = coinvariant_ranks(M, 0)[2]
        base = coinvariant_ranks(M, min(n0, DEFAULT_LEVEL_CAP))[0]
        for n in range(n0, min(n0 + 3, DEFAULT_LEVEL_CAP)):
            assert coinvariant_ranks(M, n)[0] == base


# -- irreducibility certification ---------------------------------------------------


def test_xi_recognition():
    for ctx in (CTX3, CTX5):
        for i in (0, 1, 2):
            _, xi = cyclotomic_polys(ctx, i)
            assert xi_index(xi) == i
            assert certify_irreducible(xi)


def test_eisenstein_certified():
    F = DistinguishedPolynomial.from_coeffs(CTX3, [3, 6, 3, 1])
    assert certify_irreducible(F)


def test_reducible_detected():
    a = DistinguishedPolynomial.from_coeffs(CTX3, [3, 1])
    b = DistinguishedPolynomial.from_coeffs(CTX3, [9, 1])
    prod = a * b  # constant term 27: not Eisenstein, has linear factors
    assert not certify_irreducible(prod)
    with pytest.raises(IrreducibilityError):
        ElementaryModuleDesc(CTX3, 0, lambda_parts=((prod, 1),))


def test_quadratic_split_detected():
    a = DistinguishedPolynomial.from_coeffs(CTX3, [3, 3, 1])
    b = DistinguishedPolynomial.from_coeffs(CTX3, [3, 6, 1])
    prod = a * b  # degree 4, no linear factor over Z_3, splits into quadratics
    assert not certify_irreducible(prod)


def test_attestation_accepts_high_degree():
    coeffs = [3] + [0] * 4 + [1]  # degree 5 Eisenstein, certified without search
    F = DistinguishedPolynomial.from_coeffs(CTX3, coeffs)
    assert certify_irreducible(F)
    coeffs = [9, 3, 0, 3, 0, 1]  # degree 5 non-Eisenstein: needs attestation
    F = DistinguishedPolynomial.from_coeffs(CTX3, coeffs)
    with pytest.raises(IrreducibilityError):
        certify_irreducible(F)
    ElementaryModuleDesc(CTX3, 0, lambda_parts=((F, 1),), attested=True)
