"""Right determinants of square matrices over the Weyl algebra.

Three routes are provided and must agree on almost triangular input:
the forward principal-minor recursion, the reverse recursion, and the full
signed permutation sum (factorial cost; kept as an independent oracle).
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations

from .errors import MalformedMatrix, SizeExceeded
from .weyl import ONE, WeylElement, adjoint

__all__ = [
    "OperatorMatrix",
    "AlmostTriangularMatrix",
    "right_principal_minors",
    "reverse_minors",
    "detright_forward",
    "detright_reverse",
    "detright_permutation",
    "tau",
    "sign_conjugate",
    "entrywise_adjoint",
    "PERMUTATION_SIZE_LIMIT",
]

PERMUTATION_SIZE_LIMIT = 7

_MINUS_ONE = WeylElement.scalar(-1)


@dataclass(frozen=True)
class OperatorMatrix:
    """Square matrix of Weyl elements, indices 0..n."""

    entries: tuple

    def __post_init__(self):
        rows = tuple(tuple(WeylElement.coerce(x) for x in row) for row in self.entries)
        if not rows or any(len(r) != len(rows) for r in rows):
            raise MalformedMatrix("operator matrix must be square and nonempty")
        object.__setattr__(self, "entries", rows)

    @property
    def size(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij) -> WeylElement:
        i, j = ij
        return self.entries[i][j]

    def map(self, fn) -> "OperatorMatrix":
        return type(self)(tuple(tuple(fn(x) for x in row) for row in self.entries))


class AlmostTriangularMatrix(OperatorMatrix):
    """Zero below the subdiagonal, ``-1`` on it."""

    def __post_init__(self):
        super().__post_init__()
        m = self.size
        for i in range(m):
            for j in range(m):
                if i > j + 1 and self.entries[i][j]:
                    raise MalformedMatrix(f"entry ({i},{j}) below the subdiagonal is nonzero")
                if i == j + 1 and self.entries[i][j] != _MINUS_ONE:
                    raise MalformedMatrix(f"subdiagonal entry ({i},{j}) is not -1")


def right_principal_minors(M: OperatorMatrix) -> list:
    """``P_0 = 1``, ``P_{j+1} = sum_{i<=j} M[i,j] P_i``; returns P_0..P_{n+1}."""
    P = [ONE]
    for j in range(M.size):
        acc = WeylElement()
        for i in range(j + 1):
            if M[i, j]:
                acc = acc + M[i, j] * P[i]
        P.append(acc)
    return P


def reverse_minors(M: OperatorMatrix) -> list:
    """``Q_0 = 1``, ``Q_{j+1} = sum_{i<=j} Q_i M[n-j, n-i]``."""
    n = M.size - 1
    Q = [ONE]
    for j in range(n + 1):
        acc = WeylElement()
        for i in range(j + 1):
            m = M[n - j, n - i]
            if m:
                acc = acc + Q[i] * m
        Q.append(acc)
    return Q


def detright_forward(M: OperatorMatrix) -> WeylElement:
    return right_principal_minors(M)[-1]


def detright_reverse(M: OperatorMatrix) -> WeylElement:
    return reverse_minors(M)[-1]


def _perm_sign(perm) -> int:
    sign = 1
    seen = [False] * len(perm)
    for start in range(len(perm)):
        if seen[start]:
            continue
        length = 0
        k = start
        while not seen[k]:
            seen[k] = True
            k = perm[k]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def detright_permutation(M: OperatorMatrix, max_size: int = PERMUTATION_SIZE_LIMIT) -> WeylElement:
    """``sum_sigma sign(sigma) M[s(n),n] ... M[s(0),0]`` (column n leftmost)."""
    m = M.size
    if m > max_size:
        raise SizeExceeded(f"size {m} exceeds permutation oracle bound {max_size}")
    total = WeylElement()
    for perm in permutations(range(m)):
        factors = [M[perm[col], col] for col in range(m - 1, -1, -1)]
        if any(not f for f in factors):
            continue
        prod = factors[0]
        for f in factors[1:]:
            prod = prod * f
        total = total + prod if _perm_sign(perm) > 0 else total - prod
    return total


def tau(M: OperatorMatrix) -> OperatorMatrix:
    """Anti-diagonal transpose: entry (i, j) becomes M[n-j, n-i]."""
    n = M.size - 1
    return type(M)(tuple(tuple(M[n - j, n - i] for j in range(n + 1)) for i in range(n + 1)))


def sign_conjugate(M: OperatorMatrix) -> OperatorMatrix:
    """Entry (i, j) multiplied by ``(-1)^(j-i+1)``."""
    m = M.size
    return type(M)(
        tuple(
            tuple(M[i, j] if (j - i + 1) % 2 == 0 else -M[i, j] for j in range(m))
            for i in range(m)
        )
    )


def entrywise_adjoint(M: OperatorMatrix) -> OperatorMatrix:
    return M.map(adjoint)
