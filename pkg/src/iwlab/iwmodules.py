"""Structure-theorem normal forms of torsion-plus-free modules over Z_p[[T]]
and their invariants: mu, lambda, the characteristic polynomial, and the
stabilising ranks of invariants/coinvariants at each tower level.
"""

from __future__ import annotations

from dataclasses import dataclass

from .padic import PrecisionContext
from .series import DistinguishedPolynomial, cyclotomic_polys

DEFAULT_LEVEL_CAP = 12


class IrreducibilityError(ValueError):
    pass


def _xi_degree(p: int, i: int) -> int:
    return 1 if i == 0 else p ** (i - 1) * (p - 1)


def xi_index(F: DistinguishedPolynomial, cap: int = DEFAULT_LEVEL_CAP) -> int | None:
    """i such that F equals the tower polynomial xi_i, or None."""
    ctx = F.ctx
    candidates = [i for i in range(cap + 1) if _xi_degree(ctx.p, i) == F.degree]
    for i in candidates:
        _, xi = cyclotomic_polys(ctx, i)
        if F.equals(xi):
            return i
    return None


def certify_irreducible(F: DistinguishedPolynomial) -> bool:
    """Irreducibility over Z_p[[T]] for deg <= 4 (rational coefficients);
    larger degrees or cyclotomic coefficients need caller attestation."""
    if F.degree == 0:
        return False
    if F.degree == 1:
        return True
    if xi_index(F) is not None:
        return True
    ctx = F.ctx
    if F.m != 1:
        raise IrreducibilityError("cyclotomic-coefficient polynomials need attestation")
    if _is_eisenstein(F):
        return True
    if F.degree > 4:
        raise IrreducibilityError("degree > 4 needs attestation")
    if _has_linear_factor(F):
        return False
    if F.degree == 4 and _has_quadratic_split(F):
        return False
    return True


def _is_eisenstein(F: DistinguishedPolynomial) -> bool:
    c0 = F.coeff(0)
    return (not c0.is_exact_zero()) and c0.min_valuation() == 1


def _int_coeffs(F: DistinguishedPolynomial) -> list[int]:
    return [u[0] for u in F.coords]


def _has_linear_factor(F: DistinguishedPolynomial) -> bool:
    """Search for a root in pZ_p by digit refinement; absence is certified
    when no residue survives, presence is reported when one survives to the
    precision budget."""
    ctx = F.ctx
    p = ctx.p
    cs = _int_coeffs(F)
    budget = F.prec
    candidates = [0]  # residues mod p^1, roots must be = 0 mod p
    for k in range(1, budget):
        mod = p ** (k + 1)
        nxt = []
        for c in candidates:
            for t in range(p):
                cc = c + t * p**k
                acc = 0
                for a in reversed(cs):
                    acc = (acc * cc + a) % mod
                if acc == 0:
                    nxt.append(cc)
        if not nxt:
            return False
        candidates = nxt
    return True


def _has_quadratic_split(F: DistinguishedPolynomial) -> bool:
    """Degree-4 search for F = (T^2+aT+b)(T^2+cT+d) with a,b,c,d in pZ_p."""
    ctx = F.ctx
    p = ctx.p
    f0, f1, f2, f3, _ = _int_coeffs(F)
    budget = min(F.prec, 10)
    cands = [(0, 0, 0, 0)]
    for k in range(1, budget):
        mod = p ** (k + 1)
        step = p**k
        nxt = []
        for a0, b0, c0, d0 in cands:
            for ta in range(p):
                a = a0 + ta * step
                for tc in range(p):
                    c = c0 + tc * step
                    if (a + c - f3) % mod:
                        continue
                    for tb in range(p):
                        b = b0 + tb * step
                        for td in range(p):
                            d = d0 + td * step
                            if (b + d + a * c - f2) % mod:
                                continue
                            if (a * d + b * c - f1) % mod:
                                continue
                            if (b * d - f0) % mod:
                                continue
                            nxt.append((a, b, c, d))
        if not nxt:
            return False
        # quotient out the Q1 <-> Q2 symmetry to keep the frontier small
        cands = sorted(set((min((a, b), (c, d)) + max((a, b), (c, d))) for a, b, c, d in nxt))
    return True


@dataclass(frozen=True)
class ElementaryModuleDesc:
    """Lambda^r + sum Lambda/(p^m_i) + sum Lambda/(F_j^l_j) in normal form."""

    ctx: PrecisionContext
    free_rank: int
    mu_parts: tuple[int, ...] = ()
    lambda_parts: tuple[tuple[DistinguishedPolynomial, int], ...] = ()
    attested: bool = False

    def __post_init__(self):
        if self.free_rank < 0:
            raise ValueError("free rank must be non-negative")
        if any(m <= 0 for m in self.mu_parts):
            raise ValueError("mu exponents must be positive")
        for F, l in self.lambda_parts:
            if l <= 0:
                raise ValueError("lambda powers must be positive")
            if not self.attested:
                try:
                    ok = certify_irreducible(F)
                except IrreducibilityError as exc:
                    raise IrreducibilityError(f"{exc}; pass attested=True to accept") from exc
                if not ok:
                    raise IrreducibilityError("polynomial factor is reducible")

    def is_torsion(self) -> bool:
        return self.free_rank == 0


def elementary_invariants(M: ElementaryModuleDesc):
    """(mu, lambda, characteristic polynomial); the free part is ignored."""
    mu = sum(M.mu_parts)
    lam = sum(l * F.degree for F, l in M.lambda_parts)
    char = DistinguishedPolynomial.one(M.ctx)
    for F, l in M.lambda_parts:
        char = char * F**l
    return mu, lam, char


def coinvariant_ranks(M: ElementaryModuleDesc, n: int, level_cap: int = DEFAULT_LEVEL_CAP):
    """(rank of invariants, rank of coinvariants, stabilisation level n0)
    for the action of the level-n subgroup; requires a torsion module.

    Each factor Lambda/(F^l) contributes deg F to the rank precisely when
    F is a tower polynomial xi_i with i <= n; mu factors contribute 0.
    """
    if not M.is_torsion():
        raise ValueError("free rank > 0: coinvariant ranks grow without bound")
    if n < 0:
        raise ValueError("level must be non-negative")
    if n > level_cap:
        raise ValueError(f"level {n} exceeds the configured cap {level_cap}")
    rank = 0
    n0 = 0
    for F, _l in M.lambda_parts:
        i = xi_index(F, cap=level_cap)
        if i is not None:
            n0 = max(n0, i)
            if i <= n:
                rank += F.degree
    return rank, rank, n0
