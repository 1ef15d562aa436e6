"""Exact arithmetic in the Weyl algebra ``Q(i)<Y, X> / (XY - YX - 1)``.

Elements are stored in normal order, every ``Y`` to the left of every ``X``.
Realizations used throughout the package:

* t-chart:  ``Y = t``, ``X = d/dt``, so ``theta = YX = t d/dt``;
* w-chart:  ``Y = w``, ``X = d/dw``;
* abstract: ``u = X``, ``u* = Y`` (then ``u u* - u* u = 1``).

The canonical DN shapes handled by :func:`to_canonical` are

* chart ``"t"``: ``theta^n t + sum_p g_p(theta) d^(p-1)``,  deg g_p <= n-p+1;
* chart ``"w"``: ``theta^n + sum_p w^p G_p(theta) prod_{l<p} (theta+l)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import comb

from .errors import DegreeOverflow, MalformedOperator, NotDivisible
from .poly import Poly, stirling2
from .rational import GaussRat, scalar_from_json, scalar_to_json

__all__ = [
    "WeylElement",
    "ThetaPolynomial",
    "CanonicalDN",
    "ONE",
    "X",
    "Y",
    "THETA",
    "theta_poly",
    "adjoint",
    "right_divide_by_X",
    "to_canonical",
    "from_canonical",
    "apply_to_power",
    "d_coefficients",
    "infer_order",
]

ThetaPolynomial = Poly


@lru_cache(maxsize=None)
def _reorder(b: int, c: int, k: int) -> int:
    # X^b Y^c = sum_k C(b,k) c!/(c-k)! Y^(c-k) X^(b-k)
    return comb(b, k) * comb(c, k) * _fact(k)


@lru_cache(maxsize=None)
def _fact(k: int) -> int:
    out = 1
    for i in range(2, k + 1):
        out *= i
    return out


class WeylElement:
    """Normal-ordered element ``sum c[a,b] Y^a X^b``.

    Instances are treated as immutable; ``terms`` maps ``(a, b)`` to a
    nonzero coefficient.
    """

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        if terms is None:
            self.terms = {}
        else:
            self.terms = {k: v for k, v in dict(terms).items() if v != 0}

    @classmethod
    def scalar(cls, c) -> "WeylElement":
        return cls({(0, 0): c})

    @classmethod
    def monomial(cls, a: int, b: int, c=1) -> "WeylElement":
        return cls({(a, b): c})

    @staticmethod
    def coerce(x) -> "WeylElement":
        if isinstance(x, WeylElement):
            return x
        return WeylElement.scalar(x)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, WeylElement):
            try:
                other = WeylElement.scalar(other)
            except Exception:
                return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        other = WeylElement.coerce(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return WeylElement(out)

    __radd__ = __add__

    def __neg__(self):
        return WeylElement({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-WeylElement.coerce(other))

    def __rsub__(self, other):
        return WeylElement.coerce(other) - self

    def scale(self, c) -> "WeylElement":
        return WeylElement({k: c * v for k, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, WeylElement):
            return self.scale(other)
        out: dict = {}
        get = out.get
        for (a, b), c1 in self.terms.items():
            for (c, d), c2 in other.terms.items():
                c12 = c1 * c2
                if b == 0 or c == 0:
                    key = (a + c, b + d)
                    out[key] = get(key, 0) + c12
                    continue
                for k in range(min(b, c) + 1):
                    key = (a + c - k, b + d - k)
                    out[key] = get(key, 0) + c12 * _reorder(b, c, k)
        return WeylElement(out)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k: int):
        out = ONE
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def grade_slices(self) -> dict:
        """Split by grade ``x_exponent - y_exponent``."""
        out: dict = {}
        for (a, b), c in self.terms.items():
            out.setdefault(b - a, {})[(a, b)] = c
        return {g: WeylElement(t) for g, t in out.items()}

    def x_degree(self) -> int:
        return max((b for _, b in self.terms), default=-1)

    def y_degree(self) -> int:
        return max((a for a, _ in self.terms), default=-1)

    def map_coefficients(self, fn) -> "WeylElement":
        return WeylElement({k: fn(v) for k, v in self.terms.items()})

    def format(self, y: str = "t", x: str = "D") -> str:
        if not self.terms:
            return "0"
        parts = []
        for (a, b) in sorted(self.terms, key=lambda k: (-(k[0] + k[1]), -k[1], -k[0])):
            c = self.terms[(a, b)]
            mono = []
            if a:
                mono.append(y if a == 1 else f"{y}^{a}")
            if b:
                mono.append(x if b == 1 else f"{x}^{b}")
            cs = str(c)
            if isinstance(c, GaussRat):
                cs = f"({cs})"
            if not mono:
                parts.append(cs)
            elif c == 1:
                parts.append("*".join(mono))
            elif c == -1:
                parts.append("-" + "*".join(mono))
            else:
                parts.append(cs + "*" + "*".join(mono))
        return " + ".join(parts).replace("+ -", "- ")

    def __repr__(self):
        return f"WeylElement({self.format('Y', 'X')})"

    def __str__(self):
        return self.format()

    def to_json(self) -> dict:
        terms = []
        for (a, b) in sorted(self.terms):
            re_s, im_s = scalar_to_json(self.terms[(a, b)])
            terms.append({"y": a, "x": b, "re": re_s, "im": im_s})
        return {"terms": terms}

    @classmethod
    def from_json(cls, obj) -> "WeylElement":
        terms: dict = {}
        for t in obj["terms"]:
            key = (int(t["y"]), int(t["x"]))
            terms[key] = terms.get(key, 0) + scalar_from_json(t.get("re", "0"), t.get("im", "0"))
        return cls(terms)


ONE = WeylElement.scalar(1)
Y = WeylElement.monomial(1, 0)
X = WeylElement.monomial(0, 1)
THETA = WeylElement.monomial(1, 1)


def theta_poly(p: Poly) -> WeylElement:
    """The element ``p(theta)`` written via falling factorials ``Y^a X^a``."""
    return WeylElement({(a, a): c for a, c in enumerate(p.to_falling())})


def adjoint(L: WeylElement) -> WeylElement:
    """Formal adjoint: the anti-involution with ``Y -> Y`` and ``X -> -X``.

    ``(Y^a X^b)`` maps to ``(-1)^b X^b Y^a``, re-normal-ordered.
    """
    out: dict = {}
    for (a, b), c in L.terms.items():
        s = -c if b % 2 else c
        for k in range(min(a, b) + 1):
            key = (a - k, b - k)
            out[key] = out.get(key, 0) + s * _reorder(b, a, k)
    return WeylElement(out)


def right_divide_by_X(L: WeylElement) -> WeylElement:
    """Return the unique ``Q`` with ``Q * X == L``."""
    out = {}
    for (a, b), c in L.terms.items():
        if b == 0:
            raise NotDivisible(f"monomial Y^{a} has no X factor")
        out[(a, b - 1)] = c
    return WeylElement(out)


@dataclass(frozen=True)
class CanonicalDN:
    """Coefficient family of a canonical DN operator.

    ``g[p-1]`` holds ``g_p`` (chart ``"t"``) or ``G_p`` (chart ``"w"``) as a
    polynomial in theta, for ``p = 1..n+1``.
    """

    n: int
    g: tuple
    chart: str = "t"

    def __post_init__(self):
        g = tuple(p if isinstance(p, Poly) else Poly(p) for p in self.g)
        if len(g) != self.n + 1:
            raise MalformedOperator(f"expected {self.n + 1} coefficient polynomials, got {len(g)}")
        if self.chart not in ("t", "w"):
            raise ValueError(f"unknown chart {self.chart!r}")
        for p, gp in enumerate(g, start=1):
            if gp.degree > self.n - p + 1:
                raise DegreeOverflow(
                    f"g_{p} has degree {gp.degree} > {self.n - p + 1}"
                )
        object.__setattr__(self, "g", g)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "chart": self.chart,
            "g": [[list(scalar_to_json(c)) for c in gp.coeffs] for gp in self.g],
        }

    @classmethod
    def from_json(cls, obj) -> "CanonicalDN":
        g = [Poly(scalar_from_json(*c) for c in gp) for gp in obj["g"]]
        return cls(int(obj["n"]), tuple(g), obj.get("chart", "t"))


def _leading_t(n: int) -> WeylElement:
    # theta^n * Y = Y (theta+1)^n
    lead = Poly((1, 1)) ** n
    return WeylElement({(a + 1, a): c for a, c in enumerate(lead.to_falling())})


def _theta_power(n: int) -> WeylElement:
    return WeylElement({(a, a): stirling2(n, a) for a in range(n + 1)})


def _rising(p: int) -> Poly:
    out = Poly((1,))
    for l in range(1, p):
        out = out * Poly((l, 1))
    return out


def to_canonical(L: WeylElement, n: int, chart: str = "t") -> CanonicalDN:
    """Extract the canonical coefficient polynomials of a DN-shaped operator."""
    slices = L.grade_slices()
    if chart == "t":
        if slices.pop(-1, WeylElement()) != _leading_t(n):
            raise MalformedOperator("grade -1 part is not theta^n * t")
        g = [Poly()] * (n + 1)
        for grade, part in slices.items():
            if not 0 <= grade <= n:
                raise MalformedOperator(f"unexpected grade {grade}")
            f = [0] * (part.y_degree() + 1)
            for (a, _), c in part.terms.items():
                f[a] = c
            g[grade] = Poly.from_falling(f)
        for p, gp in enumerate(g, start=1):
            if gp.degree > n - p + 1:
                raise DegreeOverflow(f"g_{p} has degree {gp.degree} > {n - p + 1}")
        return CanonicalDN(n, tuple(g), "t")
    if chart == "w":
        if slices.pop(0, WeylElement()) != _theta_power(n):
            raise MalformedOperator("grade 0 part is not theta^n")
        G = [Poly()] * (n + 1)
        for grade, part in slices.items():
            p = -grade
            if not 1 <= p <= n + 1:
                raise MalformedOperator(f"unexpected grade {grade}")
            f = [0] * (part.x_degree() + 1)
            for (_, b), c in part.terms.items():
                f[b] = c
            q, r = Poly.from_falling(f).divmod(_rising(p))
            if not r.is_zero():
                raise MalformedOperator(f"w^{p} part is not divisible by the rising product")
            if q.degree > n - p + 1:
                raise DegreeOverflow(f"G_{p} has degree {q.degree} > {n - p + 1}")
            G[p - 1] = q
        return CanonicalDN(n, tuple(G), "w")
    raise ValueError(f"unknown chart {chart!r}")


def from_canonical(c: CanonicalDN) -> WeylElement:
    """Assemble the operator from its canonical coefficients."""
    n = c.n
    if c.chart == "t":
        terms = dict(_leading_t(n).terms)
        for p, gp in enumerate(c.g, start=1):
            for a, coef in enumerate(gp.to_falling()):
                key = (a, a + p - 1)
                terms[key] = terms.get(key, 0) + coef
        return WeylElement(terms)
    terms = dict(_theta_power(n).terms)
    for p, Gp in enumerate(c.g, start=1):
        for a, coef in enumerate((Gp * _rising(p)).to_falling()):
            key = (a + p, a)
            terms[key] = terms.get(key, 0) + coef
    return WeylElement(terms)


def infer_order(L: WeylElement, chart: str = "t") -> int:
    """Guess n from the leading block (``Y^(n+1) X^n`` or ``Y^n X^n``)."""
    if chart == "t":
        part = L.grade_slices().get(-1)
        if part is None:
            raise MalformedOperator("no grade -1 part; not a DN operator in the t-chart")
        return part.y_degree() - 1
    part = L.grade_slices().get(0)
    if part is None:
        raise MalformedOperator("no grade 0 part; not a DN operator in the w-chart")
    return part.x_degree()


def apply_to_power(L: WeylElement, m) -> dict:
    """Apply ``L`` (Y = multiplication by z, X = d/dz) to ``z^m``.

    ``m`` may be any exact rational; returns ``{exponent: coefficient}``.
    """
    out: dict = {}
    for (a, b), c in L.terms.items():
        f = 1
        for i in range(b):
            f *= m - i
        if f == 0:
            continue
        e = m - b + a
        out[e] = out.get(e, 0) + c * f
    return {e: v for e, v in out.items() if v != 0}


def d_coefficients(L: WeylElement) -> list:
    """Write ``L = sum_k c_k(t) X^k`` and return ``[c_0, ..., c_order]`` as Polys."""
    order = L.x_degree()
    rows = [dict() for _ in range(order + 1)]
    for (a, b), c in L.terms.items():
        rows[b][a] = c
    out = []
    for row in rows:
        deg = max(row, default=-1)
        out.append(Poly(row.get(i, 0) for i in range(deg + 1)))
    return out

