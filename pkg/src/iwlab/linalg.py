"""Exact linear algebra over the cyclotomic scalar layer.

Used on exact data (character values, representation matrices, interpolation
systems), so inverses here bypass the precision-certification gate: the stored
representative is the true value.  Pivots must be invertible in the coefficient
algebra (nonzero norm); a matrix whose candidate pivots are all zero divisors
falls back to cofactor expansion where a determinant is requested.
"""

from __future__ import annotations

from .padic import CycloPadic, PrecisionContext, _algebra_norm, _field_inverse


def is_invertible(x: CycloPadic) -> bool:
    if x.is_exact_zero():
        return False
    return _algebra_norm(list(x.coeffs), x.m) != 0


def exact_inverse(x: CycloPadic) -> CycloPadic:
    inv = _field_inverse(x.coeffs, x.m)
    if inv is None:
        raise ZeroDivisionError("zero divisor in coefficient algebra")
    return CycloPadic(x.ctx, x.m, inv, x.prec)


def mat_mul(a, b):
    n, k, m = len(a), len(b), len(b[0])
    assert all(len(r) == k for r in a)
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = a[i][0] * b[0][j]
            for t in range(1, k):
                acc = acc + a[i][t] * b[t][j]
            row.append(acc)
        out.append(row)
    return out


def mat_vec(a, v):
    return [sum_entries([a[i][j] * v[j] for j in range(len(v))]) for i in range(len(a))]


def sum_entries(xs):
    acc = xs[0]
    for x in xs[1:]:
        acc = acc + x
    return acc


def identity_matrix(ctx: PrecisionContext, n: int):
    return [[ctx.one() if i == j else ctx.zero() for j in range(n)] for i in range(n)]


def rref(rows: list[list[CycloPadic]]):
    """Reduced row echelon form; returns (matrix, pivot_columns)."""
    mat = [list(r) for r in rows]
    if not mat:
        return mat, []
    nrows, ncols = len(mat), len(mat[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pr = None
        for i in range(r, nrows):
            if is_invertible(mat[i][c]):
                pr = i
                break
        if pr is None:
            # no invertible entry; any nonzero zero-divisor here is a genuine
            # degeneracy of the product algebra and is refused
            if any(not mat[i][c].is_exact_zero() for i in range(r, nrows)):
                raise ZeroDivisionError("column pivot is a zero divisor")
            continue
        mat[r], mat[pr] = mat[pr], mat[r]
        inv = exact_inverse(mat[r][c])
        mat[r] = [inv * x for x in mat[r]]
        for i in range(nrows):
            if i != r and not mat[i][c].is_exact_zero():
                f = mat[i][c]
                mat[i] = [x - f * y for x, y in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return mat, pivots


def kernel_basis(rows: list[list[CycloPadic]], ctx: PrecisionContext):
    """Basis of the right kernel, deterministic (free columns in order)."""
    if not rows:
        return []
    ncols = len(rows[0])
    mat, pivots = rref(rows)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [ctx.zero()] * ncols
        v[fc] = ctx.one()
        for r, pc in enumerate(pivots):
            v[pc] = -mat[r][fc]
        basis.append(v)
    return basis


def solve(rows: list[list[CycloPadic]], rhs: list[CycloPadic], ctx: PrecisionContext):
    """One solution of A x = b, or None if inconsistent."""
    if not rows:
        return [] if not rhs else None
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    mat, pivots = rref(aug)
    ncols = len(rows[0])
    if ncols in pivots:
        return None
    x = [ctx.zero()] * ncols
    for r, pc in enumerate(pivots):
        x[pc] = mat[r][ncols]
    return x


def det(rows: list[list[CycloPadic]], ctx: PrecisionContext) -> CycloPadic:
    n = len(rows)
    if n == 0:
        return ctx.one()
    mat = [list(r) for r in rows]
    acc = ctx.one()
    for c in range(n):
        pr = None
        for i in range(c, n):
            if is_invertible(mat[i][c]):
                pr = i
                break
        if pr is None:
            if all(mat[i][c].is_exact_zero() for i in range(c, n)):
                return ctx.zero()
            return _cofactor_det(mat, ctx)  # zero-divisor pivot: exact fallback
        if pr != c:
            mat[c], mat[pr] = mat[pr], mat[c]
            acc = -acc
        piv = mat[c][c]
        acc = acc * piv
        inv = exact_inverse(piv)
        for i in range(c + 1, n):
            if not mat[i][c].is_exact_zero():
                f = mat[i][c] * inv
                mat[i] = [x - f * y for x, y in zip(mat[i], mat[c])]
    return acc


def _cofactor_det(mat, ctx) -> CycloPadic:
    n = len(mat)
    if n == 1:
        return mat[0][0]
    acc = ctx.zero()
    sign = 1
    for j in range(n):
        if not mat[0][j].is_exact_zero():
            minor = [[mat[i][k] for k in range(n) if k != j] for i in range(1, n)]
            term = mat[0][j] * _cofactor_det(minor, ctx)
            acc = acc + term if sign > 0 else acc - term
        sign = -sign
    return acc


def mat_inverse(rows: list[list[CycloPadic]], ctx: PrecisionContext):
    n = len(rows)
    aug = [list(r) + list(e) for r, e in zip(rows, identity_matrix(ctx, n))]
    mat, pivots = rref(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("matrix not invertible")
    return [row[n:] for row in mat[:n]]


def column_space_basis(rows: list[list[CycloPadic]], ctx: PrecisionContext):
    """Deterministic basis (original columns at the RREF pivot positions)."""
    if not rows:
        return []
    _, pivots = rref(rows)
    return [[rows[i][c] for i in range(len(rows))] for c in pivots]
