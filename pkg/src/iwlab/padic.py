"""Exact arithmetic in cyclotomic extensions of Q_p with explicit precision tracking.

A value lives in the etale algebra Q_p[x]/Phi_m(x) ("conductor m"), represented
on the power basis 1, zeta, ..., zeta^(phi(m)-1) with exact rational coefficients
whose denominators have a bounded p-part.  The integer `prec` means the value is
trusted modulo p^prec in the maximal order; two values are equal when their
difference has valuation at least the joint precision.

The algebra is a product of fields when Phi_m splits over Q_p, so "the"
valuation of an element is only well defined place by place.  `min_valuation`
returns the minimum over all Q_p-embeddings (computed exactly by pi-power
division, pi = zeta_{p^k} - 1); operations that need a single well-defined
valuation certify purity (x = p^t * pi^j * unit) and raise otherwise.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm

from ._intpoly import cyclotomic_poly, divisors, euler_phi, polymul, polydivmod_monic

_BIG = 10**9  # stands in for +infinity in integer precision arithmetic


class PrecisionError(ArithmeticError):
    """Raised when a result cannot be certified within the precision budget."""


class DenominatorOverflow(ArithmeticError):
    """Raised when a coefficient denominator exceeds the allowed p-power bound."""


@dataclass(frozen=True)
class PrecisionContext:
    """Working budget: scalars mod p^cap_N, series truncated below degree cap_D."""

    p: int
    cap_N: int = 20
    cap_D: int = 40
    max_den_exp: int = 64

    def __post_init__(self):
        if self.p < 2 or not _is_prime(self.p):
            raise ValueError(f"p = {self.p} is not prime")
        if self.cap_N < 1 or self.cap_D < 1:
            raise ValueError("cap_N and cap_D must be >= 1")

    # -- constructors ------------------------------------------------------

    def make(self, value, prec: int | None = None) -> "CycloPadic":
        if isinstance(value, CycloPadic):
            return value
        q = Fraction(value)
        return CycloPadic(self, 1, (q,), self.cap_N if prec is None else prec)

    def zero(self) -> "CycloPadic":
        return self.make(0)

    def one(self) -> "CycloPadic":
        return self.make(1)

    def root_of_unity(self, m: int, j: int = 1) -> "CycloPadic":
        return make_root_of_unity(self, m, j)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _vp_int(n: int, p: int) -> int:
    if n == 0:
        return _BIG
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def _vp_frac(q: Fraction, p: int) -> int:
    if q == 0:
        return _BIG
    return _vp_int(q.numerator, p) - _vp_int(q.denominator, p)


def _phi_coeffs(m: int) -> tuple[int, ...]:
    return cyclotomic_poly(m)


def _reduce_frac_poly(coeffs: list[Fraction], m: int) -> list[Fraction]:
    """Reduce a rational polynomial modulo Phi_m, exactly."""
    deg = euler_phi(m)
    if len(coeffs) <= deg:
        return list(coeffs) + [Fraction(0)] * (deg - len(coeffs))
    den = 1
    for c in coeffs:
        den = den * c.denominator // gcd(den, c.denominator)
    ints = [int(c * den) for c in coeffs]
    _, r = polydivmod_monic(ints, list(_phi_coeffs(m)))
    r = list(r) + [0] * (deg - len(r))
    return [Fraction(n, den) for n in r[:deg]]


class CycloPadic:
    """An element of Q_p(zeta_m) (as the etale algebra Q_p[x]/Phi_m) mod p^prec."""

    __slots__ = ("ctx", "m", "coeffs", "prec")

    def __init__(self, ctx: PrecisionContext, m: int, coeffs, prec: int):
        deg = euler_phi(m)
        cs = tuple(Fraction(c) for c in coeffs)
        if len(cs) != deg:
            raise ValueError(f"conductor {m} needs {deg} coefficients, got {len(cs)}")
        for c in cs:
            if _vp_int(c.denominator, ctx.p) > ctx.max_den_exp:
                raise DenominatorOverflow(f"denominator exponent exceeds {ctx.max_den_exp}")
        object.__setattr__(self, "ctx", ctx)
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "coeffs", cs)
        object.__setattr__(self, "prec", prec)

    def __setattr__(self, *a):
        raise AttributeError("CycloPadic values are immutable")

    # -- representation ----------------------------------------------------

    def __repr__(self):
        if self.m == 1:
            return f"CycloPadic({self.coeffs[0]}, p={self.ctx.p}, prec={self.prec})"
        return f"CycloPadic(m={self.m}, {list(self.coeffs)}, p={self.ctx.p}, prec={self.prec})"

    def is_exact_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def is_rational(self) -> bool:
        return all(c == 0 for c in self.coeffs[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError("value is not rational")
        return self.coeffs[0]

    def coeff_floor(self) -> int:
        """min_i v_p(coeff_i): an exact lower bound for the valuation."""
        return min((_vp_frac(c, self.ctx.p) for c in self.coeffs), default=_BIG)

    def is_integral(self) -> bool:
        # power basis is a Z_p-basis of the maximal order
        return all(_vp_int(c.denominator, self.ctx.p) == 0 for c in self.coeffs)

    # -- conductor plumbing -------------------------------------------------

    def embed(self, big_m: int) -> "CycloPadic":
        """Rewrite in conductor big_m (m must divide big_m)."""
        if big_m == self.m:
            return self
        if big_m % self.m != 0:
            raise ValueError(f"{self.m} does not divide {big_m}")
        step = big_m // self.m
        acc = [Fraction(0)] * big_m
        for i, c in enumerate(self.coeffs):
            acc[i * step] += c
        return CycloPadic(self.ctx, big_m, _reduce_frac_poly(acc, big_m), self.prec)

    def project(self, small_m: int) -> "CycloPadic":
        """Rewrite in conductor small_m; error if the value does not lie there."""
        if small_m == self.m:
            return self
        if self.m % small_m != 0:
            raise ValueError(f"{small_m} does not divide {self.m}")
        cols = [
            make_root_of_unity(self.ctx, small_m, 0).embed(self.m).coeffs
        ]  # constant 1
        base = make_root_of_unity(self.ctx, small_m, 1).embed(self.m)
        pw = base
        for _ in range(1, euler_phi(small_m)):
            cols.append(pw.coeffs)
            pw = pw * base
        sol = _solve_rational(cols, self.coeffs)
        if sol is None:
            raise ValueError(f"value does not lie in conductor {small_m}")
        return CycloPadic(self.ctx, small_m, sol, self.prec)

    def reduce_conductor(self) -> "CycloPadic":
        for d in sorted(divisors(self.m), key=euler_phi):
            if d == self.m:
                break
            try:
                return self.project(d)
            except ValueError:
                continue
        return self

    def _common(self, other: "CycloPadic") -> tuple["CycloPadic", "CycloPadic"]:
        if self.ctx.p != other.ctx.p:
            raise ValueError("mixed primes")
        big = lcm(self.m, other.m)
        return self.embed(big), other.embed(big)

    # -- ring operations ----------------------------------------------------

    def _coerce(self, other) -> "CycloPadic":
        if isinstance(other, CycloPadic):
            return other
        return self.ctx.make(other)

    def __add__(self, other):
        other = self._coerce(other)
        a, b = self._common(other)
        prec = min(a.prec, b.prec)
        return CycloPadic(a.ctx, a.m, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)), prec)

    __radd__ = __add__

    def __neg__(self):
        return CycloPadic(self.ctx, self.m, tuple(-c for c in self.coeffs), self.prec)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        a, b = self._common(other)
        den_a = 1
        for c in a.coeffs:
            den_a = den_a * c.denominator // gcd(den_a, c.denominator)
        den_b = 1
        for c in b.coeffs:
            den_b = den_b * c.denominator // gcd(den_b, c.denominator)
        ia = [int(c * den_a) for c in a.coeffs]
        ib = [int(c * den_b) for c in b.coeffs]
        prod = polymul(ia, ib)
        _, r = polydivmod_monic(prod, list(_phi_coeffs(a.m)))
        deg = euler_phi(a.m)
        r = list(r) + [0] * (deg - len(r))
        den = den_a * den_b
        coeffs = tuple(Fraction(n, den) for n in r[:deg])
        prec = min(a.prec + max(b.coeff_floor(), -_BIG), b.prec + a.coeff_floor(), a.prec + b.prec)
        return CycloPadic(a.ctx, a.m, coeffs, min(prec, _BIG))

    __rmul__ = __mul__

    def inverse(self) -> "CycloPadic":
        """Multiplicative inverse; requires certifiable (pure) valuation."""
        if self.is_exact_zero():
            raise ZeroDivisionError("inverse of zero")
        v, pure = self._valuation_and_purity()
        if not pure:
            raise PrecisionError("valuation structure not certifiable (impure element)")
        if v >= self.prec:
            raise PrecisionError("element indistinguishable from zero at current precision")
        inv = _field_inverse(self.coeffs, self.m)
        if inv is None:
            raise ZeroDivisionError("zero divisor in the coefficient algebra")
        import math
        new_prec = self.prec - 2 * math.ceil(max(v, 0))
        if new_prec <= 0:
            raise PrecisionError("precision exhausted by inversion")
        return CycloPadic(self.ctx, self.m, inv, new_prec)

    def __truediv__(self, other):
        other = self._coerce(other)
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.ctx.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base_needed = n >> 1
            if base_needed:
                base = base * base
            n >>= 1
        return result

    # -- valuation ----------------------------------------------------------

    def min_valuation(self) -> Fraction | None:
        """Exact min over Q_p-embeddings of v_p; None for the exact zero."""
        v, _ = self._valuation_and_purity(check_purity=False)
        return v

    def _valuation_and_purity(self, check_purity: bool = True):
        if self.is_exact_zero():
            return None, True
        p = self.ctx.p
        t = self.coeff_floor()
        scale = Fraction(1, p) ** t if t >= 0 else Fraction(p) ** (-t)
        cur = [c * scale for c in self.coeffs]
        pk = _p_part(self.m, p)
        e = euler_phi(pk) if pk > 1 else 1
        j = 0
        if e > 1:
            inv_pi = _pi_inverse(self.ctx, self.m)
            while j < e - 1:
                nxt = _frac_mul(cur, inv_pi, self.m)
                if all(_vp_int(c.denominator, p) == 0 for c in nxt):
                    cur = nxt
                    j += 1
                else:
                    break
        v = Fraction(t) + Fraction(j, e)
        if not check_purity:
            return v, True
        pure = _is_order_unit(self.ctx, self.m, cur)
        return v, pure

    def valuation(self) -> Fraction | None:
        """v_p normalised to v_p(p) = 1, or None when the value is
        indistinguishable from zero at the current precision budget."""
        if self.is_exact_zero():
            return None
        v = self.min_valuation()
        if v >= self.prec:
            return None
        return v

    def is_unit(self) -> bool:
        """Integral with valuation zero at every embedding."""
        if self.is_exact_zero():
            return False
        return self.is_integral() and _is_order_unit(self.ctx, self.m, list(self.coeffs))

    # -- comparison ---------------------------------------------------------

    def equals(self, other) -> bool:
        other = self._coerce(other)
        diff = self - other
        if diff.is_exact_zero():
            return True
        v = diff.min_valuation()
        return v >= min(self.prec, other.prec)

    def __eq__(self, other):
        if isinstance(other, (CycloPadic, int, Fraction)):
            return self.equals(other)
        return NotImplemented

    __hash__ = None

    # -- canonical reduction -------------------------------------------------

    def reduce_mod(self, prec: int | None = None) -> "CycloPadic":
        """Canonical representative with integer-over-p-power coefficients
        reduced modulo p^prec (same congruence class)."""
        p = self.ctx.p
        n = self.prec if prec is None else min(prec, self.prec)
        if n <= 0:
            raise PrecisionError("no precision left to reduce to")
        out = []
        for c in self.coeffs:
            if c == 0:
                out.append(Fraction(0))
                continue
            k = _vp_int(c.denominator, p)
            mod = p ** (n + k)
            rest = c.denominator // p**k
            num = c.numerator * pow(rest, -1, mod) % mod
            out.append(Fraction(num, p**k))
        return CycloPadic(self.ctx, self.m, out, n)

    def galois(self, a: int) -> "CycloPadic":
        return galois_apply(a, self)


# -- module-level operations ---------------------------------------------------


def make_root_of_unity(ctx: PrecisionContext, m: int, j: int) -> CycloPadic:
    """zeta_m^j as an exact value, with the conductor normalised to the order."""
    if m <= 0:
        raise ValueError("order m must be positive")
    j %= m
    d = m // gcd(m, j)
    jj = (j * d // m) % max(d, 1)
    if d == 1:
        return ctx.one()
    acc = [Fraction(0)] * d
    acc[jj] = Fraction(1)
    return CycloPadic(ctx, d, _reduce_frac_poly(acc, d), ctx.cap_N)


def valuation(x: CycloPadic) -> Fraction | None:
    return x.valuation()


def galois_apply(a: int, x: CycloPadic) -> CycloPadic:
    """The automorphism zeta_m -> zeta_m^a; requires gcd(a, m) = 1."""
    m = x.m
    a %= m
    if gcd(a, m) != 1:
        raise ValueError(f"gcd({a}, {m}) != 1")
    acc = [Fraction(0)] * m
    for i, c in enumerate(x.coeffs):
        acc[(a * i) % m] += c
    return CycloPadic(x.ctx, m, _reduce_frac_poly(acc, m), x.prec)


# -- internal helpers ----------------------------------------------------------


def _p_part(m: int, p: int) -> int:
    pk = 1
    while m % p == 0:
        pk *= p
        m //= p
    return pk


def _frac_mul(a: list[Fraction], b: list[Fraction], m: int) -> list[Fraction]:
    den_a = 1
    for c in a:
        den_a = den_a * c.denominator // gcd(den_a, c.denominator)
    den_b = 1
    for c in b:
        den_b = den_b * c.denominator // gcd(den_b, c.denominator)
    ia = [int(c * den_a) for c in a]
    ib = [int(c * den_b) for c in b]
    _, r = polydivmod_monic(polymul(ia, ib), list(_phi_coeffs(m)))
    deg = euler_phi(m)
    r = list(r) + [0] * (deg - len(r))
    den = den_a * den_b
    return [Fraction(n, den) for n in r[:deg]]


@lru_cache(maxsize=None)
def _pi_inverse_coeffs(p: int, m: int) -> tuple[Fraction, ...]:
    pk = _p_part(m, p)
    deg = euler_phi(m)
    acc = [Fraction(0)] * m
    acc[0] = Fraction(1)
    acc[m // pk] -= Fraction(1)  # 1 - zeta_{p^k}
    pi = _reduce_frac_poly(acc, m)
    inv = _field_inverse(tuple(pi), m)
    if inv is None:
        raise AssertionError("pi must be invertible")
    return tuple(inv)


def _pi_inverse(ctx: PrecisionContext, m: int) -> list[Fraction]:
    return list(_pi_inverse_coeffs(ctx.p, m))


def _field_inverse(coeffs, m: int) -> list[Fraction] | None:
    """Inverse modulo Phi_m by the extended Euclidean algorithm over Q[x]."""
    phi = [Fraction(c) for c in _phi_coeffs(m)]
    a = list(coeffs)
    # invariants: r0 = s0 * a mod phi, r1 = s1 * a mod phi
    r0, s0 = phi, [Fraction(0)]
    r1, s1 = _trim_f(a), [Fraction(1)]
    if not r1:
        return None
    while r1 and len(r1) > 1:
        q, r = _poly_divmod_f(r0, r1)
        s = _poly_sub_f(s0, _poly_mul_f(q, s1))
        r0, s0, r1, s1 = r1, s1, _trim_f(r), s
    if not r1:
        return None  # nontrivial gcd: zero divisor
    c = r1[0]
    inv = [x / c for x in s1]
    return _reduce_frac_poly(inv, m)


def _trim_f(a: list[Fraction]) -> list[Fraction]:
    i = len(a)
    while i > 0 and a[i - 1] == 0:
        i -= 1
    return a[:i]


def _poly_divmod_f(a: list[Fraction], b: list[Fraction]):
    r = list(a)
    db = len(b) - 1
    lead = b[-1]
    q = [Fraction(0)] * max(0, len(r) - db)
    for i in range(len(r) - 1, db - 1, -1):
        if r[i] != 0:
            c = r[i] / lead
            q[i - db] = c
            for jj in range(db + 1):
                r[i - db + jj] -= c * b[jj]
    return q, r[:db]


def _poly_mul_f(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return out


def _poly_sub_f(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    n = max(len(a), len(b))
    a = list(a) + [Fraction(0)] * (n - len(a))
    b = list(b) + [Fraction(0)] * (n - len(b))
    return [x - y for x, y in zip(a, b)]


def _is_order_unit(ctx: PrecisionContext, m: int, coeffs: list[Fraction]) -> bool:
    nrm = _algebra_norm(coeffs, m)
    if nrm == 0:
        return False
    return _vp_frac(nrm, ctx.p) == 0


def _algebra_norm(coeffs: list[Fraction], m: int) -> Fraction:
    """Determinant of multiplication by the element (the algebra norm)."""
    deg = euler_phi(m)
    phi = _phi_coeffs(m)
    cols = []
    cur = list(coeffs)
    for _ in range(deg):
        cols.append(list(cur))
        # multiply by zeta: shift and fold the overflow via Phi
        top = cur[-1]
        cur = [Fraction(0)] + cur[:-1]
        if top:
            for i in range(deg):
                cur[i] -= top * phi[i]
    den = 1
    for col in cols:
        for c in col:
            den = den * c.denominator // gcd(den, c.denominator)
    mat = [[int(cols[j][i] * den) for j in range(deg)] for i in range(deg)]
    d = _int_det(mat)
    return Fraction(d, den**deg)


def _int_det(mat: list[list[int]]) -> int:
    """Bareiss fraction-free determinant of an integer matrix."""
    n = len(mat)
    if n == 0:
        return 1
    a = [row[:] for row in mat]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def _solve_rational(cols: list[tuple[Fraction, ...]], target) -> list[Fraction] | None:
    """Solve sum_j x_j cols[j] = target over Q; None if inconsistent."""
    nrows = len(cols[0])
    ncols = len(cols)
    aug = [[Fraction(cols[j][i]) for j in range(ncols)] + [Fraction(target[i])] for i in range(nrows)]
    piv_rows: list[int] = []
    piv_cols: list[int] = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, nrows) if aug[i][c] != 0), None)
        if pr is None:
            continue
        aug[r], aug[pr] = aug[pr], aug[r]
        pv = aug[r][c]
        aug[r] = [x / pv for x in aug[r]]
        for i in range(nrows):
            if i != r and aug[i][c] != 0:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        piv_rows.append(r)
        piv_cols.append(c)
        r += 1
        if r == nrows:
            break
    for i in range(r, nrows):
        if aug[i][ncols] != 0:
            return None
    sol = [Fraction(0)] * ncols
    for row, col in zip(piv_rows, piv_cols):
        sol[col] = aug[row][ncols]
    return sol
