"""Exact linear algebra over the integers and rationals.

Everything here works on plain lists of Python ints / Fractions; no
floating point is used anywhere in the package.
"""

from __future__ import annotations

from fractions import Fraction


def mat_mul(A, B):
    n, k, m = len(A), len(B), len(B[0])
    assert len(A[0]) == k
    return [[sum(A[i][l] * B[l][j] for l in range(k)) for j in range(m)] for i in range(n)]


def mat_vec(A, v):
    return [sum(A[i][j] * v[j] for j in range(len(v))) for i in range(len(A))]


def mat_transpose(A):
    return [list(col) for col in zip(*A)]


def identity(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_neg(A):
    return [[-x for x in row] for row in A]


def mat_sub(A, B):
    return [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_eq(A, B):
    return all(list(ra) == list(rb) for ra, rb in zip(A, B))


def mat_inverse(A):
    """Exact inverse of a square integer/rational matrix (Fraction entries)."""
    n = len(A)
    M = [[Fraction(A[i][j]) for j in range(n)] + [Fraction(int(i == j)) for j in range(n)]
         for i in range(n)]
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col] != 0), None)
        if piv is None:
            raise ZeroDivisionError("matrix is singular")
        M[col], M[piv] = M[piv], M[col]
        inv = 1 / M[col][col]
        M[col] = [x * inv for x in M[col]]
        for r in range(n):
            if r != col and M[r][col] != 0:
                f = M[r][col]
                M[r] = [x - f * y for x, y in zip(M[r], M[col])]
    return [row[n:] for row in M]


def det(A):
    """Exact determinant by fraction-free (Bareiss) elimination."""
    n = len(A)
    M = [[int(x) for x in row] for row in A]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            piv = next((r for r in range(k + 1, n) if M[r][k] != 0), None)
            if piv is None:
                return 0
            M[k], M[piv] = M[piv], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
            M[i][k] = 0
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def rank(A):
    """Exact rank of a matrix with int or Fraction entries."""
    if not A or not A[0]:
        return 0
    M = [[Fraction(x) for x in row] for row in A]
    nrows, ncols = len(M), len(M[0])
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, nrows) if M[i][col] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = 1 / M[r][col]
        M[r] = [x * inv for x in M[r]]
        for i in range(nrows):
            if i != r and M[i][col] != 0:
                f = M[i][col]
                M[i] = [x - f * y for x, y in zip(M[i], M[r])]
        r += 1
        if r == nrows:
            break
    return r


def nullspace(A):
    """Basis of the right kernel of A (Fraction column vectors)."""
    if not A:
        return []
    nrows, ncols = len(A), len(A[0])
    M = [[Fraction(x) for x in row] for row in A]
    pivots = []
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, nrows) if M[i][col] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = 1 / M[r][col]
        M[r] = [x * inv for x in M[r]]
        for i in range(nrows):
            if i != r and M[i][col] != 0:
                f = M[i][col]
                M[i] = [x - f * y for x, y in zip(M[i], M[r])]
        pivots.append(col)
        r += 1
        if r == nrows:
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for row_idx, pc in enumerate(pivots):
            v[pc] = -M[row_idx][fc]
        basis.append(v)
    return basis


def integer_kernel(A):
    """Basis of {x in Z^n : A x = 0} via unimodular column operations.

    The result spans the full integer kernel, which is automatically a
    saturated sublattice of Z^n.
    """
    nrows = len(A)
    ncols = len(A[0]) if A else 0
    M = [[int(A[i][j]) for j in range(ncols)] for i in range(nrows)]
    # V tracks the column operations: kernel columns of M correspond to
    # columns of V.
    V = identity(ncols)

    def col_swap(j, k):
        for i in range(nrows):
            M[i][j], M[i][k] = M[i][k], M[i][j]
        for i in range(ncols):
            V[i][j], V[i][k] = V[i][k], V[i][j]

    def col_addmul(j, k, q):
        # column j += q * column k
        for i in range(nrows):
            M[i][j] += q * M[i][k]
        for i in range(ncols):
            V[i][j] += q * V[i][k]

    row = 0
    col = 0
    while row < nrows and col < ncols:
        # gcd-reduce columns col..ncols-1 against row `row`
        while True:
            nz = [j for j in range(col, ncols) if M[row][j] != 0]
            if not nz:
                break
            jmin = min(nz, key=lambda j: abs(M[row][j]))
            col_swap(col, jmin)
            done = True
            for j in range(col + 1, ncols):
                if M[row][j] != 0:
                    q = M[row][j] // M[row][col]
                    col_addmul(j, col, -q)
                    if M[row][j] != 0:
                        done = False
            if done:
                break
        if M[row][col] != 0:
            col += 1
        row += 1
    return [[V[i][j] for i in range(ncols)] for j in range(col, ncols)]


def smith_diagonal(A):
    """Diagonal of the Smith normal form of an integer matrix."""
    from sympy import Matrix
    from sympy.matrices.normalforms import smith_normal_form

    if not A or not A[0]:
        return []
    S = smith_normal_form(Matrix(A))
    return [int(S[i, i]) for i in range(min(S.rows, S.cols))]
