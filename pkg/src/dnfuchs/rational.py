"""Exact Gaussian-rational scalars.

Coefficients in the algebraic layer are plain ``int``/``Fraction`` values when
real and :class:`GaussRat` when they carry an imaginary part. Every
arithmetic result is normalized back to a real ``Fraction`` as soon as the
imaginary part vanishes, so real computations never pay for the complex path.
"""
from __future__ import annotations

from fractions import Fraction
from numbers import Rational

__all__ = [
    "GaussRat",
    "is_exact",
    "exact",
    "parse_scalar",
    "format_fraction",
    "scalar_to_json",
    "scalar_from_json",
]


class GaussRat:
    """A number ``re + im*i`` with rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @staticmethod
    def make(re, im):
        """Build a scalar, collapsing to a real Fraction when ``im == 0``."""
        im = Fraction(im)
        if im == 0:
            return Fraction(re)
        return GaussRat(re, im)

    @staticmethod
    def _parts(x):
        if isinstance(x, GaussRat):
            return x.re, x.im
        if isinstance(x, (int, Fraction)):
            return Fraction(x), Fraction(0)
        return None

    def __add__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        return GaussRat.make(self.re + p[0], self.im + p[1])

    __radd__ = __add__

    def __sub__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        return GaussRat.make(self.re - p[0], self.im - p[1])

    def __rsub__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        return GaussRat.make(p[0] - self.re, p[1] - self.im)

    def __mul__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        a, b = self.re, self.im
        c, d = p
        return GaussRat.make(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        c, d = p
        den = c * c + d * d
        if den == 0:
            raise ZeroDivisionError("GaussRat division by zero")
        a, b = self.re, self.im
        return GaussRat.make((a * c + b * d) / den, (b * c - a * d) / den)

    def __rtruediv__(self, other):
        p = self._parts(other)
        if p is None:
            return NotImplemented
        return GaussRat(*p) / self

    def __neg__(self):
        return GaussRat(-self.re, -self.im)

    def __pos__(self):
        return self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return 1 / (self ** -k)
        out = Fraction(1)
        base = self
        while k:
            if k & 1:
                out = base * out
            base = base * base
            k >>= 1
        return out

    def conjugate(self):
        return GaussRat.make(self.re, -self.im)

    def __eq__(self, other):
        p = self._parts(other)
        if p is None:
            if isinstance(other, complex):
                return complex(self) == other
            return NotImplemented
        return self.re == p[0] and self.im == p[1]

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        return f"GaussRat({self.re!s}, {self.im!s})"

    def __str__(self):
        if self.re == 0:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"{self.re}{sign}{abs(self.im)}i"


def is_exact(x) -> bool:
    return isinstance(x, (int, Rational, GaussRat)) and not isinstance(x, bool)


def exact(x):
    """Convert ``x`` to an exact scalar.

    Floats are converted to the dyadic rational they actually store, so the
    conversion never rounds.
    """
    if isinstance(x, GaussRat):
        return GaussRat.make(x.re, x.im)
    if isinstance(x, (int, Fraction)):
        return x
    if isinstance(x, float):
        return Fraction(x)
    if isinstance(x, complex):
        return GaussRat.make(Fraction(x.real), Fraction(x.imag))
    if hasattr(x, "real") and hasattr(x, "imag"):
        # numpy scalars
        return exact(complex(x)) if x.imag else Fraction(float(x.real))
    raise TypeError(f"cannot convert {x!r} to an exact scalar")


def parse_scalar(s: str):
    """Parse ``"p/q"``, ``"a+bi"``, ``"3/4i"`` or ``"-i"`` into an exact scalar."""
    s = s.replace(" ", "")
    if not s.endswith("i"):
        return Fraction(s)
    body = s[:-1]
    cut = max(body.rfind("+"), body.rfind("-"))
    if cut > 0:
        re_txt, im_txt = body[:cut], body[cut:]
    else:
        re_txt, im_txt = "0", body
    if im_txt in ("", "+"):
        im_txt = "1"
    elif im_txt == "-":
        im_txt = "-1"
    return GaussRat.make(Fraction(re_txt), Fraction(im_txt))


def format_fraction(q) -> str:
    return str(Fraction(q))


def scalar_to_json(c) -> tuple[str, str]:
    """Return ``(re, im)`` as fraction strings."""
    if isinstance(c, GaussRat):
        return format_fraction(c.re), format_fraction(c.im)
    return format_fraction(c), "0"


def scalar_from_json(re_s, im_s="0"):
    return GaussRat.make(Fraction(str(re_s)), Fraction(str(im_s)))
