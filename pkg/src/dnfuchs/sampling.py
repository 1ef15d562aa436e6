"""Seeded random generators for DN matrices, Weyl elements and almost
triangular operator matrices, used by the property suites and the CLI."""
from __future__ import annotations

from fractions import Fraction

import numpy as np

from .detright import AlmostTriangularMatrix
from .dn import DNMatrix
from .errors import DNError
from .spectral import eigendecompose
from .weyl import WeylElement

__all__ = [
    "random_fraction",
    "random_dn_matrix",
    "random_symmetric_dn",
    "random_weyl",
    "random_almost_triangular",
    "relative_gap",
    "random_separated_symmetric_dn",
    "DEFAULT_MIN_REL_GAP",
]

DEFAULT_MIN_REL_GAP = 0.25


def random_fraction(rng: np.random.Generator, num: int = 5, den: int = 3) -> Fraction:
    return Fraction(int(rng.integers(-num, num + 1)), int(rng.integers(1, den + 1)))


def random_dn_matrix(n: int, rng: np.random.Generator, num: int = 5, den: int = 3) -> DNMatrix:
    entries = {(i, j): random_fraction(rng, num, den) for i in range(n + 1) for j in range(i, n + 1)}
    return DNMatrix(n, entries)


def random_symmetric_dn(n: int, rng: np.random.Generator, num: int = 5, den: int = 3) -> DNMatrix:
    """Exact random matrix with ``a_ij = a_{n-j, n-i}``."""
    entries = {}
    for i in range(n + 1):
        for j in range(i, n + 1):
            mirror = (n - j, n - i)
            entries[(i, j)] = entries[mirror] if mirror in entries else random_fraction(rng, num, den)
    return DNMatrix(n, entries, symmetric=True)


def relative_gap(A: DNMatrix) -> float:
    """``min |l_i - l_j| / max(1, max |l|)``; 0 for a repeated eigenvalue."""
    try:
        lam = eigendecompose(A).lambdas
    except DNError:
        return 0.0
    if len(lam) < 2:
        return float("inf")
    d = np.abs(lam[:, None] - lam[None, :])
    np.fill_diagonal(d, np.inf)
    return float(d.min() / max(1.0, np.abs(lam).max()))


def random_separated_symmetric_dn(n: int, rng: np.random.Generator, min_rel_gap: float = DEFAULT_MIN_REL_GAP,
                                  num: int = 5, den: int = 3, max_tries: int = 10_000) -> DNMatrix:
    """Random symmetric matrix whose eigenvalues are pairwise separated by at
    least ``min_rel_gap`` relative to the spectral radius (rejection sampling).

    Nearly coincident eigenvalues make the monodromy matrices ill-conditioned
    in any basis attached to a base point, so numerical checks that multiply
    several of them need this separation."""
    for _ in range(max_tries):
        A = random_symmetric_dn(n, rng, num, den)
        if relative_gap(A) >= min_rel_gap:
            return A
    raise RuntimeError(f"no sample with relative gap >= {min_rel_gap} after {max_tries} tries")


def random_weyl(rng: np.random.Generator, max_degree: int = 2, num: int = 3, density: float = 0.5) -> WeylElement:
    """Random element with Y- and X-degrees at most ``max_degree``."""
    terms = {}
    for a in range(max_degree + 1):
        for b in range(max_degree + 1):
            if rng.random() < density:
                c = int(rng.integers(-num, num + 1))
                if c:
                    terms[(a, b)] = c
    return WeylElement(terms)


def random_almost_triangular(size: int, rng: np.random.Generator, max_degree: int = 2) -> AlmostTriangularMatrix:
    rows = []
    for i in range(size):
        row = []
        for j in range(size):
            if i == j + 1:
                row.append(WeylElement.scalar(-1))
            elif i > j + 1:
                row.append(WeylElement())
            else:
                row.append(random_weyl(rng, max_degree))
        rows.append(row)
    return AlmostTriangularMatrix(tuple(tuple(r) for r in rows))
