"""Smith normal form over Z with transform matrices, and integer linear solving."""

from __future__ import annotations


def smith_normal_form(a: list[list[int]]):
    """Return (d, left, right) with left * a * right = d in Smith normal form."""
    m = len(a)
    n = len(a[0]) if m else 0
    d = [row[:] for row in a]
    left = [[int(i == j) for j in range(m)] for i in range(m)]
    right = [[int(i == j) for j in range(n)] for i in range(n)]

    def row_op(i, j, q):  # row_i -= q * row_j
        d[i] = [x - q * y for x, y in zip(d[i], d[j])]
        left[i] = [x - q * y for x, y in zip(left[i], left[j])]

    def col_op(i, j, q):  # col_i -= q * col_j
        for r in range(m):
            d[r][i] -= q * d[r][j]
        for r in range(n):
            right[r][i] -= q * right[r][j]

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        left[i], left[j] = left[j], left[i]

    def swap_cols(i, j):
        for r in range(m):
            d[r][i], d[r][j] = d[r][j], d[r][i]
        for r in range(n):
            right[r][i], right[r][j] = right[r][j], right[r][i]

    s = 0
    while s < min(m, n):
        # find the nonzero entry of least absolute value in the trailing block
        piv = None
        best = None
        for i in range(s, m):
            for j in range(s, n):
                if d[i][j] != 0 and (best is None or abs(d[i][j]) < best):
                    best = abs(d[i][j])
                    piv = (i, j)
        if piv is None:
            break
        swap_rows(s, piv[0])
        swap_cols(s, piv[1])
        if d[s][s] < 0:
            d[s] = [-x for x in d[s]]
            left[s] = [-x for x in left[s]]
        dirty = False
        for i in range(s + 1, m):
            if d[i][s] % d[s][s] != 0:
                row_op(i, s, d[i][s] // d[s][s])
                dirty = True
            elif d[i][s] != 0:
                row_op(i, s, d[i][s] // d[s][s])
        for j in range(s + 1, n):
            if d[s][j] % d[s][s] != 0:
                col_op(j, s, d[s][j] // d[s][s])
                dirty = True
            elif d[s][j] != 0:
                col_op(j, s, d[s][j] // d[s][s])
        if dirty or any(d[i][s] for i in range(s + 1, m)) or any(d[s][j] for j in range(s + 1, n)):
            continue
        # divisibility condition for the trailing block
        offender = None
        for i in range(s + 1, m):
            for j in range(s + 1, n):
                if d[i][j] % d[s][s] != 0:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            row_op(s, offender, -1)  # add offending row, then restart the step
            continue
        s += 1
    return d, left, right


def elementary_divisors(a: list[list[int]]) -> list[int]:
    d, _, _ = smith_normal_form(a)
    return [d[i][i] for i in range(min(len(d), len(d[0]) if d else 0))]


def solve_integer(a: list[list[int]], b: list[int]) -> list[int] | None:
    """One integer solution of a x = b, or None."""
    m = len(a)
    n = len(a[0]) if m else 0
    d, left, right = smith_normal_form(a)
    c = [sum(left[i][k] * b[k] for k in range(m)) for i in range(m)]
    y = [0] * n
    r = min(m, n)
    for i in range(r):
        di = d[i][i]
        if di == 0:
            if c[i] != 0:
                return None
        else:
            if c[i] % di != 0:
                return None
            y[i] = c[i] // di
    for i in range(r, m):
        if c[i] != 0:
            return None
    return [sum(right[i][k] * y[k] for k in range(n)) for i in range(n)]


def kernel_lattice(a: list[list[int]]) -> list[list[int]]:
    """Basis of the integer kernel of a."""
    m = len(a)
    n = len(a[0]) if m else 0
    d, _, right = smith_normal_form(a)
    r = min(m, n)
    out = []
    for j in range(n):
        if j >= r or d[j][j] == 0:
            out.append([right[i][j] for i in range(n)])
    return out
