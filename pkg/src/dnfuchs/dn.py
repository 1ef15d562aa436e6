"""DN operators: construction from a matrix, reconstruction, symmetry,
the two normal forms, residues and the Fuchs regularity test."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import exactla
from .detright import AlmostTriangularMatrix, detright_forward
from .errors import (
    InexactInput,
    MalformedMatrix,
    MalformedOperator,
    ParseError,
    RepeatedSingularity,
)
from .poly import Poly, stirling1
from .rational import GaussRat, exact, is_exact, parse_scalar, scalar_to_json
from .roots import aberth
from .weyl import (
    THETA,
    CanonicalDN,
    WeylElement,
    X,
    Y,
    adjoint,
    d_coefficients,
    from_canonical,
    right_divide_by_X,
    theta_poly,
    to_canonical,
)

__all__ = [
    "DNMatrix",
    "RationalFunction",
    "ResidueReport",
    "FuchsReport",
    "operator_matrix",
    "build_L_infinity",
    "build_L_zero",
    "L_zero_from_definition",
    "expansion_coefficients",
    "g_to_x",
    "check_symmetry",
    "check_adjoint",
    "check_adjoint_zero",
    "K_matrix",
    "reconstruct",
    "to_DN0",
    "from_DN0",
    "residues",
    "fuchs_test",
    "irregular_example",
]


@dataclass(frozen=True, eq=False)
class DNMatrix:
    """``(n+1) x (n+1)`` matrix with ones on the subdiagonal and zeros below.

    Only the upper triangle ``(i, j), i <= j`` is stored. Entries are either
    exact (int / Fraction / GaussRat) or numeric (float / complex).
    """

    n: int
    entries: dict = field(default_factory=dict)
    symmetric: bool | None = None

    def __post_init__(self):
        if self.n < 0:
            raise MalformedMatrix("n must be nonnegative")
        full = {}
        for (i, j), v in dict(self.entries).items():
            if not (0 <= i <= j <= self.n):
                raise MalformedMatrix(f"entry ({i},{j}) outside the upper triangle of size {self.n + 1}")
            full[(i, j)] = v
        for i in range(self.n + 1):
            for j in range(i, self.n + 1):
                full.setdefault((i, j), 0)
        object.__setattr__(self, "entries", full)
        if self.symmetric and not self.is_symmetric():
            raise MalformedMatrix("matrix flagged symmetric but a_ij != a_{n-j,n-i}")

    def __getitem__(self, ij):
        i, j = ij
        if i == j + 1:
            return 1
        if i > j + 1:
            return 0
        return self.entries[(i, j)]

    def __eq__(self, other):
        if not isinstance(other, DNMatrix):
            return NotImplemented
        return self.n == other.n and all(
            self.entries[k] == other.entries[k] for k in self.entries
        )

    @property
    def size(self) -> int:
        return self.n + 1

    @property
    def exact(self) -> bool:
        return all(is_exact(v) for v in self.entries.values())

    def exactify(self) -> "DNMatrix":
        return DNMatrix(self.n, {k: exact(v) for k, v in self.entries.items()})

    def rows(self) -> list:
        return [[self[i, j] for j in range(self.n + 1)] for i in range(self.n + 1)]

    def to_numpy(self) -> np.ndarray:
        return np.array([[complex(x) for x in row] for row in self.rows()], dtype=complex)

    def tau(self) -> "DNMatrix":
        n = self.n
        return DNMatrix(n, {(i, j): self.entries[(n - j, n - i)] for (i, j) in self.entries})

    def is_symmetric(self) -> bool:
        n = self.n
        return all(v == self.entries[(n - j, n - i)] for (i, j), v in self.entries.items())

    def with_entry(self, i: int, j: int, value) -> "DNMatrix":
        e = dict(self.entries)
        e[(i, j)] = value
        return DNMatrix(self.n, e)

    @classmethod
    def from_rows(cls, rows) -> "DNMatrix":
        n = len(rows) - 1
        entries = {}
        for i, row in enumerate(rows):
            if len(row) != n + 1:
                raise MalformedMatrix("matrix must be square")
            for j, v in enumerate(row):
                if i == j + 1 and v != 1:
                    raise MalformedMatrix(f"subdiagonal entry ({i},{j}) must be 1")
                if i > j + 1 and v != 0:
                    raise MalformedMatrix(f"entry ({i},{j}) below the subdiagonal must be 0")
                if i <= j:
                    entries[(i, j)] = v
        return cls(n, entries)

    def to_json(self) -> dict:
        out = {}
        for (i, j) in sorted(self.entries):
            out[f"{i},{j}"] = _scalar_json(self.entries[(i, j)])
        return {"n": self.n, "entries": out}

    @classmethod
    def from_json(cls, obj) -> "DNMatrix":
        try:
            n = int(obj["n"])
            entries = {}
            for key, val in obj.get("entries", {}).items():
                i, j = (int(s) for s in key.split(","))
                entries[(i, j)] = _scalar_parse(val)
        except (KeyError, TypeError, ValueError, AttributeError) as exc:
            raise ParseError(f"invalid DN matrix JSON: {exc}") from exc
        return cls(n, entries, symmetric=obj.get("symmetric"))


def _scalar_json(v):
    if isinstance(v, GaussRat):
        re_s, im_s = scalar_to_json(v)
        return {"re": re_s, "im": im_s}
    if is_exact(v):
        return str(Fraction(v))
    v = complex(v)
    if v.imag == 0:
        return v.real
    return {"re": v.real, "im": v.imag}


def _scalar_parse(val):
    if isinstance(val, bool):
        raise ValueError("boolean is not a matrix entry")
    if isinstance(val, str):
        return parse_scalar(val)
    if isinstance(val, int):
        return val
    if isinstance(val, float):
        return val
    if isinstance(val, dict):
        re_v, im_v = val.get("re", 0), val.get("im", 0)
        if isinstance(re_v, str) or isinstance(im_v, str):
            return GaussRat.make(Fraction(str(re_v)), Fraction(str(im_v)))
        return complex(re_v, im_v)
    raise ValueError(f"unsupported entry {val!r}")


# ---------------------------------------------------------------- construction


def _require_exact(A: DNMatrix):
    if not A.exact:
        raise InexactInput("exact coefficients required; call DNMatrix.exactify() first")


def operator_matrix(A: DNMatrix, diagonal: WeylElement = THETA) -> AlmostTriangularMatrix:
    """``diagonal * I - A~`` with ``A~[i,j] = a_ij X^(j-i+1)`` and ``A~[j+1,j] = 1``."""
    n = A.n
    rows = []
    for i in range(n + 1):
        row = []
        for j in range(n + 1):
            if i == j + 1:
                row.append(WeylElement.scalar(-1))
            elif i > j + 1:
                row.append(WeylElement())
            else:
                e = WeylElement.monomial(0, j - i + 1, -A.entries[(i, j)])
                row.append(diagonal + e if i == j else e)
        rows.append(row)
    return AlmostTriangularMatrix(tuple(tuple(r) for r in rows))


def irregular_example(lam) -> DNMatrix:
    """Symmetric 3x3 matrix whose operator ``t^3 D^2 + 3 t^2 D + t - lam``
    is irregular at 0 for ``lam != 0``."""
    lam = exact(lam) if is_exact(lam) else lam
    h = Fraction(3, 2)
    return DNMatrix(2, {
        (0, 0): lam, (0, 1): -h * lam ** 2, (0, 2): -lam ** 3,
        (1, 1): -2 * lam, (1, 2): -h * lam ** 2, (2, 2): lam,
    })


def build_L_infinity(A: DNMatrix) -> WeylElement:
    """``det_right(t D - A~) D^-1`` in the t-chart (Y = t, X = D)."""
    _require_exact(A)
    return right_divide_by_X(detright_forward(operator_matrix(A)))


def expansion_coefficients(A: DNMatrix) -> dict:
    """Coefficients ``x[p][k]`` of ``det_right(u u* - A~)``.

    The expansion reads ``(uu*)^(n+1) + sum_{p,k} x[p][k] u^p (uu*)^k``; it
    is computed in the abstract realization ``u = X``, ``u* = Y``, where
    ``u^p (uu*)^k = (theta + 1 + p)^k X^p``.
    """
    _require_exact(A)
    n = A.n
    det = detright_forward(operator_matrix(A, diagonal=X * Y))
    slices = det.grade_slices()
    lead = slices.pop(0, WeylElement())
    if lead != (X * Y) ** (n + 1):
        raise MalformedOperator("leading part of the expansion is not (uu*)^(n+1)")
    out = {}
    for p in range(1, n + 2):
        part = slices.pop(p, WeylElement())
        f = [0] * (part.y_degree() + 1)
        for (a, _), c in part.terms.items():
            f[a] = c
        h = Poly.from_falling(f).compose_affine(1, -(p + 1))
        if h.degree > n - p + 1:
            raise MalformedOperator(f"x^({p}) has too many coefficients")
        out[p] = [h.coefficient(k) for k in range(n - p + 2)]
    if any(s for s in slices.values()):
        raise MalformedOperator("expansion has parts outside grades 0..n+1")
    return out


def g_to_x(gp: Poly, n: int, p: int) -> list:
    """Sign dictionary ``x_k = (-1)^(n+k+p-1) [theta^k] g_p``; self-inverse.

    Applied to the ``g_p`` of ``A`` it yields ``expansion_coefficients(A.tau())``."""
    return [
        gp.coefficient(k) if (n + k + p - 1) % 2 == 0 else -gp.coefficient(k)
        for k in range(n - p + 2)
    ]


def check_symmetry(c: CanonicalDN) -> bool:
    """``g_p(x) == (-1)^(n-p+1) g_p(-x-p)`` for every p (either chart)."""
    n = c.n
    for p, gp in enumerate(c.g, start=1):
        mirrored = gp.compose_affine(-1, -p)
        if (n - p + 1) % 2:
            mirrored = -mirrored
        if mirrored != gp:
            return False
    return True


def check_adjoint(L: WeylElement, n: int) -> bool:
    """``L^v == (-1)^n L``."""
    return adjoint(L) == (L if n % 2 == 0 else -L)


def check_adjoint_zero(L0: WeylElement, n: int) -> bool:
    """``L0^v == (-1)^n w^-1 L0 w`` for the w-chart anti-involution
    (``w -> w``, ``d/dw -> -d/dw``), tested as ``w L0^v == (-1)^n L0 w``."""
    rhs = L0 * Y
    return Y * adjoint(L0) == (rhs if n % 2 == 0 else -rhs)


def K_matrix(n: int, p: int) -> list:
    """Linear part of ``x^(p)`` in the p-th antidiagonal ``a_{i,p+i-1}``.

    Column i holds the coefficients of ``-(z - p)^(n+1-p-i) z^i`` in powers of
    ``z = uu*``.
    """
    if not 1 <= p <= n + 1:
        raise ValueError(f"p must be in 1..{n + 1}")
    m = n + 2 - p
    K = [[Fraction(0)] * m for _ in range(m)]
    for i in range(m):
        col = -(Poly((-p, 1)) ** (n + 1 - p - i)) * (Poly.x() ** i)
        for k in range(m):
            K[k][i] = Fraction(col.coefficient(k))
    return K


def reconstruct(c: CanonicalDN) -> DNMatrix:
    """Recover the matrix whose operator has canonical form ``c``.

    Antidiagonals are solved in order of degree p = 1..n+1: the contribution
    of already-known lower antidiagonals is obtained by building the operator
    of the partial matrix, and the remainder is linear in the p-th
    antidiagonal with coefficient matrix ``K_matrix(n, p)``.

    The sign dictionary ``g_to_x`` turns the coefficients of ``A`` into the
    expansion coefficients of ``A^tau``, so solution entry ``i`` belongs to
    ``a_(i, p+i-1)`` of ``A^tau``, i.e. to ``a_(n-p-i+1, n-i)`` of ``A``.
    """
    if c.chart == "w":
        c = from_DN0(c)
    for gp in c.g:
        if not all(is_exact(x) for x in gp.coeffs):
            raise InexactInput("reconstruction needs exact coefficients")
    n = c.n
    known: dict = {}
    for p in range(1, n + 2):
        partial = DNMatrix(n, known)
        cp = to_canonical(build_L_infinity(partial), n)
        target = g_to_x(c.g[p - 1], n, p)
        current = g_to_x(cp.g[p - 1], n, p)
        rhs = [x - y for x, y in zip(target, current)]
        diag = exactla.solve(K_matrix(n, p), rhs)
        for i, v in enumerate(diag):
            known[(n - p - i + 1, n - i)] = v
    A = DNMatrix(n, known)
    if build_L_infinity(A) != from_canonical(c):
        raise RuntimeError("reconstruction failed to reproduce the operator")
    return A


def _dual(c: CanonicalDN, chart: str) -> CanonicalDN:
    n = c.n
    out = []
    for p, gp in enumerate(c.g, start=1):
        q = gp.compose_affine(-1, -p)
        out.append(-q if (n - p + 1) % 2 else q)
    return CanonicalDN(n, tuple(out), chart)


def to_DN0(c: CanonicalDN) -> CanonicalDN:
    """``G_p(x) = (-1)^(n-p+1) g_p(-x-p)``: coefficients of the w-chart form."""
    if c.chart != "t":
        raise ValueError("to_DN0 expects t-chart coefficients")
    return _dual(c, "w")


def from_DN0(c: CanonicalDN) -> CanonicalDN:
    if c.chart != "w":
        raise ValueError("from_DN0 expects w-chart coefficients")
    return _dual(c, "t")


def build_L_zero(A: DNMatrix) -> WeylElement:
    """The w-chart operator ``L_{A,0}`` (Y = w, X = d/dw)."""
    c = to_canonical(build_L_infinity(A), A.n)
    return from_canonical(to_DN0(c))


def L_zero_from_definition(c: CanonicalDN) -> WeylElement:
    """``theta^n + sum_p (-1)^n g_p(-theta) (-w^2 D)^(p-1) w`` by direct multiplication."""
    n = c.n
    sign = -1 if n % 2 else 1
    out = THETA ** n
    step = -(Y * Y * X)
    for p, gp in enumerate(c.g, start=1):
        term = theta_poly(gp.compose_affine(-1, 0)) * (step ** (p - 1)) * Y
        out = out + term.scale(sign)
    return out


# ---------------------------------------------------------------- residues


@dataclass(frozen=True)
class RationalFunction:
    """``num / den`` with the common factor removed and ``den`` monic."""

    num: Poly
    den: Poly

    def __post_init__(self):
        if self.den.is_zero():
            raise ZeroDivisionError("zero denominator")
        g = self.num.gcd(self.den) if not self.num.is_zero() else self.den.monic()
        num, den = self.num // g, self.den // g
        inv = _div(1, den.lc)
        object.__setattr__(self, "num", num * inv)
        object.__setattr__(self, "den", den * inv)

    def __call__(self, t):
        return _div(self.num(t), self.den(t))

    def residue_at_simple_pole(self, r):
        return _div(self.num(r), self.den.derivative()(r))

    def infinity_residue(self):
        """``res_inf f dt = -[1/t] (Laurent expansion at infinity)``."""
        _, rem = self.num.divmod(self.den)
        if rem.degree == self.den.degree - 1 and not rem.is_zero():
            return -_div(rem.lc, self.den.lc)
        return Fraction(0)


@dataclass
class ResidueReport:
    finite_points: list
    infinity_residue: object
    infinity_residue_laurent: object
    derivative_identity: bool
    exact_points: list

    def to_json(self) -> dict:
        return {
            "finite": [
                {"point": _num_json(pt), "residue": _value_json(res), "exact": ex}
                for (pt, res), ex in zip(self.finite_points, self.exact_points)
            ],
            "infinity": _value_json(self.infinity_residue),
            "infinity_laurent": _value_json(self.infinity_residue_laurent),
            "derivative_identity": self.derivative_identity,
        }


def _div(a, b):
    if isinstance(a, int) and not isinstance(a, bool):
        a = Fraction(a)
    return a / b


def _num_json(z):
    if is_exact(z):
        return _scalar_json(z)
    z = complex(z)
    return [z.real, z.imag]


def _value_json(v):
    return _num_json(v)


def _exact_root(P: Poly, r: complex, max_den: int = 10**6):
    re_q = Fraction(r.real).limit_denominator(max_den)
    im_q = Fraction(r.imag).limit_denominator(max_den)
    cand = GaussRat.make(re_q, im_q)
    if P(cand) == 0:
        return cand
    return None


def _numeric_poly(P: Poly):
    return Poly(complex(c) for c in P.coeffs)


def residues(L: WeylElement, n: int) -> ResidueReport:
    """Residues of ``c_{n-1}/c_n dt`` at the roots of ``c_n`` and at infinity."""
    cs = d_coefficients(L)
    if len(cs) != n + 1:
        raise MalformedOperator(f"operator has order {len(cs) - 1}, expected {n}")
    cn = cs[n]
    cn1 = cs[n - 1] if n >= 1 else Poly()
    dcn = cn.derivative()
    if cn.degree > 0 and cn.gcd(dcn).degree > 0:
        raise RepeatedSingularity("leading coefficient has a repeated root")
    finite, flags = [], []
    if cn.degree > 0:
        num_cn1, num_dcn = _numeric_poly(cn1), _numeric_poly(dcn)
        for r in aberth(cn.coeffs):
            rx = _exact_root(cn, r)
            if rx is not None:
                finite.append((rx, _div(cn1(rx), dcn(rx))))
                flags.append(True)
            else:
                finite.append((complex(r), complex(num_cn1(r)) / complex(num_dcn(r))))
                flags.append(False)
    finite_sorted = sorted(zip(finite, flags), key=lambda it: (complex(it[0][0]).real, complex(it[0][0]).imag))
    finite = [f for f, _ in finite_sorted]
    flags = [e for _, e in finite_sorted]
    if all(flags):
        inf_res = -sum((res for _, res in finite), Fraction(0))
    else:
        inf_res = -sum(complex(res) for _, res in finite)
    laurent = RationalFunction(cn1, cn).infinity_residue() if not cn.is_zero() else Fraction(0)
    identity = cn1 == dcn * Fraction(n, 2)
    return ResidueReport(finite, inf_res, laurent, identity, flags)


# ---------------------------------------------------------------- Fuchs criterion


@dataclass
class FuchsReport:
    points: list  # (point, exact?, classification)
    infinity: str

    @property
    def regular(self) -> bool:
        return self.infinity == "regular" and all(c == "regular" for _, _, c in self.points)

    def classification_at(self, z, tol: float = 1e-9) -> str:
        for pt, _, cls in self.points:
            if abs(complex(pt) - complex(z)) <= tol:
                return cls
        raise KeyError(f"{z} is not a singular point")

    def to_json(self) -> dict:
        return {
            "points": [{"point": _num_json(p), "exact": e, "classification": c} for p, e, c in self.points],
            "infinity": self.infinity,
        }


def _root_orders(P: Poly, s: Poly, roots, exact_roots) -> list:
    """Order of vanishing of ``P`` at each root of the squarefree ``s``."""
    if P.is_zero():
        return [None] * len(roots)
    orders = [0] * len(roots)
    prev = Poly((1,))
    j = 1
    while True:
        gj = P.gcd(s ** j)
        q = gj // prev
        if q.degree <= 0:
            break
        q_num = _numeric_poly(q)
        qroots = aberth(q_num.coeffs) if q.degree > 0 else []
        for idx, (r, rx) in enumerate(zip(roots, exact_roots)):
            if rx is not None:
                hit = q(rx) == 0
            else:
                hit = _matches(r, qroots, roots)
            if hit:
                orders[idx] += 1
        prev = gj
        j += 1
    return orders


def _matches(r, candidates, all_roots) -> bool:
    others = [abs(r - o) for o in all_roots if o is not r and abs(r - o) > 0]
    sep = min(others) if others else 1.0
    return any(abs(r - c) < 0.5 * sep for c in candidates)


def fuchs_test(L: WeylElement, n: int) -> FuchsReport:
    """Pole-order test ``ord_p(c_k / c_n) >= -(n - k)`` at every singularity."""
    cs = d_coefficients(L)
    if len(cs) != n + 1:
        raise MalformedOperator(f"operator has order {len(cs) - 1}, expected {n}")
    cn = cs[n]
    points = []
    if cn.degree > 0:
        s = cn // cn.gcd(cn.derivative())
        roots = list(aberth(s.coeffs)) if s.degree > 0 else []
        exact_roots = [_exact_root(s, r) for r in roots]
        ord_n = _root_orders(cn, s, roots, exact_roots)
        ords = [_root_orders(cs[k], s, roots, exact_roots) for k in range(n)]
        for idx, r in enumerate(roots):
            ok = True
            for k in range(n):
                ok_k = ords[k][idx]
                if ok_k is None:
                    continue
                if ord_n[idx] - ok_k > n - k:
                    ok = False
                    break
            pt = exact_roots[idx] if exact_roots[idx] is not None else complex(r)
            points.append((pt, exact_roots[idx] is not None, "regular" if ok else "irregular"))
        points.sort(key=lambda it: (complex(it[0]).real, complex(it[0]).imag))
    return FuchsReport(points, _infinity_class(cs, n))


def _infinity_class(cs: list, n: int) -> str:
    # t = 1/w: c_k(t) D^k = c_k(t) t^-k (theta_t)_k and theta_t = -theta_w, so
    # L = sum_j beta_j(w) theta_w^j with beta_j Laurent polynomials in w.
    beta = [dict() for _ in range(n + 1)]
    for k, ck in enumerate(cs):
        for j in range(k + 1):
            s = stirling1(k, j)
            if s == 0:
                continue
            sign = -1 if j % 2 else 1
            for a, coef in enumerate(ck.coeffs):
                if coef == 0:
                    continue
                e = k - a
                beta[j][e] = beta[j].get(e, 0) + sign * s * coef
    def valuation(d):
        ks = [e for e, v in d.items() if v != 0]
        return min(ks) if ks else None
    vn = valuation(beta[n])
    if vn is None:
        raise MalformedOperator("vanishing leading coefficient")
    for j in range(n):
        vj = valuation(beta[j])
        if vj is not None and vj < vn:
            return "irregular"
    return "regular"
