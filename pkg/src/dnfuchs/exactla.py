"""Small dense linear algebra over exact scalars (Fraction / GaussRat)."""
from __future__ import annotations

from fractions import Fraction

from .errors import SingularSolve


def _frac(x):
    return Fraction(x) if isinstance(x, int) else x


def solve(A, b):
    """Solve ``A x = b`` by Gaussian elimination; ``b`` a vector or list of columns."""
    n = len(A)
    vector = not isinstance(b[0], (list, tuple))
    rhs = [[bi] for bi in b] if vector else [list(r) for r in b]
    M = [[_frac(x) for x in A[i]] + [_frac(x) for x in rhs[i]] for i in range(n)]
    width = len(M[0])
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col] != 0), None)
        if piv is None:
            raise SingularSolve(f"matrix is singular (column {col})")
        M[col], M[piv] = M[piv], M[col]
        inv = 1 / M[col][col]
        row = [x * inv for x in M[col]]
        M[col] = row
        for r in range(n):
            if r != col and M[r][col] != 0:
                f = M[r][col]
                M[r] = [x - f * y for x, y in zip(M[r], row)]
    sol = [M[i][n:width] for i in range(n)]
    return [s[0] for s in sol] if vector else sol


def inverse(A):
    n = len(A)
    eye = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    return solve(A, eye)


def det(A):
    n = len(A)
    M = [[_frac(x) for x in row] for row in A]
    out = Fraction(1)
    for col in range(n):
        piv = next((r for r in range(col, n) if M[r][col] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != col:
            M[col], M[piv] = M[piv], M[col]
            out = -out
        out = out * M[col][col]
        inv = 1 / M[col][col]
        for r in range(col + 1, n):
            if M[r][col] != 0:
                f = M[r][col] * inv
                M[r] = [x - f * y for x, y in zip(M[r], M[col])]
    return out


def matmul(A, B):
    return [
        [sum((A[i][k] * B[k][j] for k in range(len(B))), Fraction(0)) for j in range(len(B[0]))]
        for i in range(len(A))
    ]
