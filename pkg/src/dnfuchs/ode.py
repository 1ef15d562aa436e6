"""Path pieces and the adaptive integrator front end.

The compiled kernel is used when it imports; setting the environment variable
``DNFUCHS_PURE_PYTHON=1`` forces the numpy fallback.
"""
from __future__ import annotations

import math
import os
from dataclasses import dataclass

import numpy as np

from . import _ode_py
from .errors import StepUnderflow, NearSingularity

BACKEND = "python"
_kernel = _ode_py.integrate_pieces
if os.environ.get("DNFUCHS_PURE_PYTHON") != "1":
    try:
        from ._odekernel import integrate_pieces as _compiled
    except ImportError:  # extension not built
        _compiled = None
    if _compiled is not None:
        _kernel = _compiled
        BACKEND = "cython"

DEFAULT_ODE_TOL = 1e-12

__all__ = [
    "BACKEND",
    "Segment",
    "Arc",
    "Path",
    "IntegrationResult",
    "integrate",
    "kernel",
    "DEFAULT_ODE_TOL",
]


def kernel(backend: str | None = None):
    """The raw integrator for ``backend`` in {"cython", "python"} (default: active)."""
    if backend is None:
        return _kernel
    if backend == "python":
        return _ode_py.integrate_pieces
    if backend == "cython":
        from ._odekernel import integrate_pieces

        return integrate_pieces
    raise ValueError(f"unknown backend {backend!r}")


@dataclass(frozen=True)
class Segment:
    start: complex
    end: complex

    def point(self, s: float) -> complex:
        return self.start + s * (self.end - self.start)

    def reversed(self) -> "Segment":
        return Segment(self.end, self.start)

    def row(self):
        return (0.0, self.start.real, self.start.imag, self.end.real, self.end.imag, 0.0)

    def distance_to(self, z: complex) -> float:
        d = self.end - self.start
        if d == 0:
            return abs(z - self.start)
        s = ((z - self.start) * d.conjugate()).real / abs(d) ** 2
        return abs(z - self.point(min(1.0, max(0.0, s))))

    def to_json(self):
        return {"kind": "segment", "start": [self.start.real, self.start.imag], "end": [self.end.real, self.end.imag]}


@dataclass(frozen=True)
class Arc:
    """``center + radius * exp(i theta)`` for theta from ``theta0`` to ``theta1``."""

    center: complex
    radius: float
    theta0: float
    theta1: float

    def point(self, s: float) -> complex:
        return self.center + self.radius * complex(math.cos(self.theta0 + s * (self.theta1 - self.theta0)),
                                                   math.sin(self.theta0 + s * (self.theta1 - self.theta0)))

    @property
    def start(self) -> complex:
        return self.point(0.0)

    @property
    def end(self) -> complex:
        return self.point(1.0)

    def reversed(self) -> "Arc":
        return Arc(self.center, self.radius, self.theta1, self.theta0)

    def row(self):
        return (1.0, self.center.real, self.center.imag, self.radius, self.theta0, self.theta1)

    def distance_to(self, z: complex) -> float:
        # full-turn arcs only are used by the loop planner; treat as the circle
        if abs(self.theta1 - self.theta0) >= 2 * math.pi - 1e-12:
            return abs(abs(z - self.center) - self.radius)
        grid = np.linspace(0.0, 1.0, 721)
        return float(min(abs(z - self.point(s)) for s in grid))

    def to_json(self):
        return {
            "kind": "arc",
            "center": [self.center.real, self.center.imag],
            "radius": self.radius,
            "theta0": self.theta0,
            "theta1": self.theta1,
        }


@dataclass(frozen=True)
class Path:
    pieces: tuple

    def __post_init__(self):
        object.__setattr__(self, "pieces", tuple(self.pieces))
        for a, b in zip(self.pieces, self.pieces[1:]):
            if abs(a.end - b.start) > 1e-12 * max(1.0, abs(a.end)):
                raise ValueError("path pieces are not contiguous")

    @property
    def start(self) -> complex:
        return self.pieces[0].start

    @property
    def end(self) -> complex:
        return self.pieces[-1].end

    def reversed(self) -> "Path":
        return Path(tuple(p.reversed() for p in reversed(self.pieces)))

    def __add__(self, other: "Path") -> "Path":
        return Path(self.pieces + other.pieces)

    def distance_to(self, z: complex) -> float:
        return min(p.distance_to(z) for p in self.pieces)

    def rows(self) -> np.ndarray:
        return np.array([p.row() for p in self.pieces], dtype=float)

    def to_json(self):
        return [p.to_json() for p in self.pieces]


@dataclass
class IntegrationResult:
    Phi: np.ndarray
    accepted: int
    rejected: int
    error_estimate: float | None = None


def integrate(path: Path, Phi0, tol: float = DEFAULT_ODE_TOL, *, A=None, residues=None, poles=None,
              richardson: bool = False, backend: str | None = None) -> IntegrationResult:
    """Integrate either the resolvent system (``A`` given) or a Fuchsian system
    ``sum R_k / (t - p_k)`` (``residues`` and ``poles`` given) along ``path``."""
    run = kernel(backend)
    Phi0 = np.asarray(Phi0, dtype=complex)
    m = Phi0.shape[0]
    if A is not None:
        mode = 0
        A_arr = np.asarray(A, dtype=complex)
        R_arr = np.zeros((0, m, m), dtype=complex)
        p_arr = np.zeros(0, dtype=complex)
    else:
        mode = 1
        A_arr = np.zeros((m, m), dtype=complex)
        R_arr = np.asarray(residues, dtype=complex)
        p_arr = np.asarray(poles, dtype=complex)
    rows = path.rows()

    def once(tl):
        Y, acc, rej, status = run(mode, A_arr, R_arr, p_arr, rows, Phi0, tl)
        if status == 1:
            raise StepUnderflow("step size collapsed; the path passes too close to a singularity")
        if status == 2:
            raise StepUnderflow("step budget exhausted")
        if status == 3:
            raise NearSingularity("path hits a singular point")
        return Y, acc, rej

    Y, acc, rej = once(tol)
    est = None
    if richardson:
        Y2, acc2, rej2 = once(tol / 2)
        est = float(np.max(np.abs(Y2 - Y)))
        Y, acc, rej = Y2, acc + acc2, rej + rej2
    return IntegrationResult(Y, acc, rej, est)
