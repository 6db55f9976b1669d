"""Exact Gaussian elimination over any integer-encoded field context.

Matrices are lists of rows of canonical field integers.  Nothing here ever
touches floating point.
"""

from __future__ import annotations

from .exceptions import SingularSystemError


def rref(F, rows, ncols=None):
    """Reduced row-echelon form. Returns (R, pivot_columns); input is not modified."""
    R = [list(r) for r in rows]
    if not R:
        return R, []
    ncols = len(R[0]) if ncols is None else ncols
    pivots = []
    pr = 0
    nrows = len(R)
    for col in range(ncols):
        if pr == nrows:
            break
        piv = next((i for i in range(pr, nrows) if R[i][col]), None)
        if piv is None:
            continue
        R[pr], R[piv] = R[piv], R[pr]
        row = R[pr]
        inv = F.inv(row[col])
        if inv != 1:
            row = R[pr] = [F.mul(inv, x) for x in row]
        for i in range(nrows):
            if i != pr:
                c = R[i][col]
                if c:
                    Ri = R[i]
                    for j in range(col, len(row)):
                        if row[j]:
                            Ri[j] = F.sub(Ri[j], F.mul(c, row[j]))
        pivots.append(col)
        pr += 1
    return R, pivots


def rank(F, rows) -> int:
    """Rank via forward elimination only."""
    R = [list(r) for r in rows if any(r)]
    if not R:
        return 0
    ncols = len(R[0])
    nrows = len(R)
    rk = 0
    sub, mul, inv = F.sub, F.mul, F.inv
    for col in range(ncols):
        piv = None
        for i in range(rk, nrows):
            if R[i][col]:
                piv = i
                break
        if piv is None:
            continue
        R[rk], R[piv] = R[piv], R[rk]
        prow = R[rk]
        pinv = inv(prow[col])
        for i in range(rk + 1, nrows):
            Ri = R[i]
            c = Ri[col]
            if c:
                f = mul(c, pinv)
                for j in range(col + 1, ncols):
                    if prow[j]:
                        Ri[j] = sub(Ri[j], mul(f, prow[j]))
                Ri[col] = 0
        rk += 1
        if rk == nrows:
            break
    return rk


def det(F, M) -> int:
    n = len(M)
    A = [list(r) for r in M]
    if any(len(r) != n for r in A):
        raise ValueError("determinant of a non-square matrix")
    result = 1
    for col in range(n):
        piv = next((i for i in range(col, n) if A[i][col]), None)
        if piv is None:
            return 0
        if piv != col:
            A[col], A[piv] = A[piv], A[col]
            result = F.neg(result)
        prow = A[col]
        result = F.mul(result, prow[col])
        pinv = F.inv(prow[col])
        for i in range(col + 1, n):
            c = A[i][col]
            if c:
                f = F.mul(c, pinv)
                Ai = A[i]
                for j in range(col + 1, n):
                    if prow[j]:
                        Ai[j] = F.sub(Ai[j], F.mul(f, prow[j]))
    return result


def is_invertible(F, M) -> bool:
    return len(M) == len(M[0]) and rank(F, M) == len(M)


def matmul(F, A, B):
    inner = len(B)
    cols = len(B[0]) if B else 0
    out = []
    for row in A:
        acc = [0] * cols
        for k in range(inner):
            a = row[k]
            if a:
                Bk = B[k]
                for j in range(cols):
                    if Bk[j]:
                        acc[j] = F.add(acc[j], F.mul(a, Bk[j]))
        out.append(acc)
    return out


def matvec(F, A, v):
    out = []
    for row in A:
        acc = 0
        for a, x in zip(row, v):
            if a and x:
                acc = F.add(acc, F.mul(a, x))
        out.append(acc)
    return out


def inverse(F, M):
    n = len(M)
    aug = [list(r) + [1 if i == j else 0 for j in range(n)] for i, r in enumerate(M)]
    R, piv = rref(F, aug, ncols=n)
    if piv != list(range(n)):
        raise SingularSystemError("matrix is singular")
    return [r[n:] for r in R]


def solve(F, A, b):
    """Unique x with A x = b for a full-column-rank (possibly tall) A."""
    ncols = len(A[0])
    aug = [list(r) + [bi] for r, bi in zip(A, b)]
    R, piv = rref(F, aug, ncols=ncols + 1)
    if ncols in piv:
        raise SingularSystemError("inconsistent linear system")
    if len(piv) < ncols:
        raise SingularSystemError("linear system has no unique solution")
    return [R[i][ncols] for i in range(ncols)]


def nullspace(F, rows, ncols):
    """Basis of {x : rows * x = 0}, one vector per free column (identity on free columns)."""
    if not rows:
        return [[1 if i == j else 0 for i in range(ncols)] for j in range(ncols)]
    R, piv = rref(F, rows, ncols=ncols)
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for i, pc in enumerate(piv):
            v[pc] = F.neg(R[i][f])
        basis.append(v)
    return basis


def transpose(M):
    return [list(c) for c in zip(*M)]


def columns(M, idx):
    return [[row[j] for j in idx] for row in M]
