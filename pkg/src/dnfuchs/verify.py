"""Seeded property suites behind ``dnfuchs verify``.

Every suite draws its samples from one ``numpy.random.Generator`` seeded from
the run seed and the suite name, so a summary is reproducible and suites are
independent of each other. A *fixture* is an extra matrix fed to the
symmetry-theorem checks as if it were symmetric; a corrupted one must make
exactly those checks fail.
"""
from __future__ import annotations

import zlib
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .detright import detright_forward, detright_permutation, detright_reverse
from .dn import (
    DNMatrix,
    build_L_infinity,
    build_L_zero,
    check_adjoint,
    check_adjoint_zero,
    check_symmetry,
    L_zero_from_definition,
    reconstruct,
    residues,
)
from .errors import DNError
from .monodromy import expected_brackets, hypergeom_form_check, hypergeometric_monodromy, monodromy_report, rrv_check, brackets
from .sampling import random_almost_triangular, random_dn_matrix, random_symmetric_dn, random_weyl
from .spectral import analyze_spectrum, infinity_exponents, residue_structure_errors
from .weyl import X, Y, adjoint, from_canonical, to_canonical

__all__ = ["CheckResult", "VerifySummary", "SUITES", "run_verification", "corrupted_symmetry_fixture"]

DEFAULT_SIZES = (1, 2, 3)


@dataclass
class CheckResult:
    suite: str
    name: str
    cases: int = 0
    failures: int = 0
    detail: str = ""

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def record(self, ok: bool, note: str = "") -> None:
        self.cases += 1
        if not ok:
            self.failures += 1
            if note and not self.detail:
                self.detail = note

    def to_json(self) -> dict:
        return {"suite": self.suite, "check": self.name, "passed": self.passed,
                "cases": self.cases, "failures": self.failures, "detail": self.detail}


@dataclass
class VerifySummary:
    seed: int
    sizes: tuple
    results: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def failed(self) -> list:
        return [f"{r.suite}.{r.name}" for r in self.results if not r.passed]

    def to_json(self) -> dict:
        return {"seed": self.seed, "sizes": list(self.sizes), "passed": self.passed,
                "checks": [r.to_json() for r in self.results]}


def corrupted_symmetry_fixture(n: int = 2) -> DNMatrix:
    """A symmetric matrix with one off-mirror entry changed."""
    base = random_symmetric_dn(n, np.random.default_rng(0))
    i, j = 0, n - 1 if n >= 1 else 0
    return base.with_entry(i, j, base[i, j] + 1)


def _rng(seed: int, suite: str) -> np.random.Generator:
    return np.random.default_rng([seed, zlib.crc32(suite.encode())])


def _checks(suite: str, *names: str) -> dict:
    return {name: CheckResult(suite, name) for name in names}


# ---------------------------------------------------------------- suites


def suite_weyl(seed: int, sizes, samples: int = 30, fixtures=()) -> list:
    rng = _rng(seed, "weyl")
    c = _checks("weyl", "commutator", "associativity", "adjoint_antiinvolution")
    c["commutator"].record(X * Y - Y * X == 1)
    for _ in range(samples):
        a, b, d = (random_weyl(rng) for _ in range(3))
        c["associativity"].record((a * b) * d == a * (b * d))
        c["adjoint_antiinvolution"].record(adjoint(a * b) == adjoint(b) * adjoint(a) and adjoint(adjoint(a)) == a)
    return list(c.values())


def suite_detright(seed: int, sizes, samples: int = 20, fixtures=()) -> list:
    rng = _rng(seed, "detright")
    c = _checks("detright", "forward_equals_reverse", "forward_equals_permutation")
    for _ in range(samples):
        M = random_almost_triangular(int(rng.integers(2, 6)), rng)
        f = detright_forward(M)
        c["forward_equals_reverse"].record(f == detright_reverse(M))
        c["forward_equals_permutation"].record(f == detright_permutation(M))
    return list(c.values())


def suite_dn(seed: int, sizes, samples: int = 5, fixtures=()) -> list:
    rng = _rng(seed, "dn")
    c = _checks("dn", "reconstruction_roundtrip", "canonical_roundtrip", "w_chart_definition", "residues")
    for n in sizes:
        for _ in range(samples):
            A = random_dn_matrix(n, rng)
            L = build_L_infinity(A)
            cf = to_canonical(L, n)
            c["canonical_roundtrip"].record(from_canonical(cf) == L)
            c["reconstruction_roundtrip"].record(reconstruct(cf) == A, f"n={n}")
            c["w_chart_definition"].record(build_L_zero(A) == L_zero_from_definition(cf), f"n={n}")
            if n >= 1:
                S = random_symmetric_dn(n, rng)
                try:
                    rep = residues(build_L_infinity(S), n)
                except DNError:
                    continue
                ok = all(abs(complex(r) - n / 2) <= 1e-9 for _, r in rep.finite_points)
                ok = ok and abs(complex(rep.infinity_residue) + n * (n + 1) / 2) <= 1e-9
                c["residues"].record(ok, f"n={n}")
    return list(c.values())


def suite_symmetry(seed: int, sizes, samples: int = 5, fixtures=()) -> list:
    """The symmetry theorem: for a matrix with ``A = A^tau`` the canonical
    coefficients are symmetric and the operator is (anti-)self-adjoint, in
    both charts; breaking one entry breaks both."""
    rng = _rng(seed, "symmetry")
    c = _checks("symmetry", "symmetric_implies_coefficient_symmetry", "symmetric_implies_adjointness",
                "symmetric_implies_w_chart_adjointness", "perturbation_breaks_both")
    claimed = []
    for n in sizes:
        claimed += [random_symmetric_dn(n, rng) for _ in range(samples)]
    claimed += list(fixtures)
    for A in claimed:
        n = A.n
        L = build_L_infinity(A)
        c["symmetric_implies_coefficient_symmetry"].record(check_symmetry(to_canonical(L, n)), f"n={n}")
        c["symmetric_implies_adjointness"].record(check_adjoint(L, n), f"n={n}")
        c["symmetric_implies_w_chart_adjointness"].record(check_adjoint_zero(build_L_zero(A), n), f"n={n}")
    for n in sizes:
        if n < 1:
            continue
        for _ in range(samples):
            A = random_symmetric_dn(n, rng)
            keys = [k for k in A.entries if k != (A.n - k[1], A.n - k[0])]
            i, j = keys[int(rng.integers(len(keys)))]
            B = A.with_entry(i, j, A[i, j] + Fraction(int(rng.integers(1, 4))))
            L = build_L_infinity(B)
            c["perturbation_breaks_both"].record(not check_symmetry(to_canonical(L, n)) and not check_adjoint(L, n))
    return list(c.values())


def suite_spectral(seed: int, sizes, samples: int = 5, fixtures=(), tol: float = 1e-9) -> list:
    rng = _rng(seed, "spectral")
    c = _checks("spectral", "residue_structure", "partial_fractions", "infinity_nilpotency")
    for n in sizes:
        for _ in range(samples):
            A = random_symmetric_dn(n, rng)
            try:
                spec = analyze_spectrum(A)
            except DNError:
                continue
            err = residue_structure_errors(spec)
            c["residue_structure"].record(max(err.values()) <= tol, f"n={n}: {err}")
            t = complex(*rng.normal(size=2)) * 3
            if np.min(np.abs(spec.lambdas - t)) > 0.1:
                lhs = spec.T @ np.linalg.inv(spec.A - t * np.eye(n + 1))
                rhs = sum(S / (t - l) for S, l in zip(spec.S, spec.lambdas))
                c["partial_fractions"].record(np.max(np.abs(lhs - rhs)) <= tol * max(1.0, np.max(np.abs(lhs))))
            cert = infinity_exponents(A)
            c["infinity_nilpotency"].record(cert.maximal and cert.index == n + 1, f"n={n}")
    return list(c.values())


def suite_monodromy(seed: int, sizes, samples: int = 2, fixtures=(), tol: float = 1e-6) -> list:
    rng = _rng(seed, "monodromy")
    c = _checks("monodromy", "product_relation", "finite_eigenvalues", "infinity_unipotent",
                "reduced_spectra", "polarization_parity")
    for n in sizes:
        if not 1 <= n <= 4:
            continue
        done = 0
        while done < samples:
            A = random_symmetric_dn(n, rng)
            try:
                rep = monodromy_report(A, cross_check=False)
            except DNError:
                continue
            done += 1
            k = rep.checks
            c["product_relation"].record(k["product_residual"] <= tol, f"n={n}")
            c["finite_eigenvalues"].record(k["finite_eigenvalue_error"] <= tol, f"n={n}")
            c["infinity_unipotent"].record(k["infinity_unipotency_residual"] <= tol
                                           and k["infinity_jordan_ranks"] == list(range(n, -1, -1)), f"n={n}")
            c["reduced_spectra"].record(k["reduced_finite_eigenvalue_error"] <= tol
                                        and k["reduced_finite_eigenspace_dim_of_1"] == [n - 1] * (n + 1)
                                        and k["reduced_infinity_jordan_ranks"] == list(range(n - 1, -1, -1)), f"n={n}")
            pol = rep.polarization
            want = "skew" if n % 2 == 0 else "symmetric"
            c["polarization_parity"].record(pol.dimension == 1 and pol.symmetry == want
                                            and pol.residual <= tol, f"n={n}: {pol.dimension} {pol.symmetry}")
    return list(c.values())


def suite_hypergeometric(seed: int, sizes, samples: int = 0, fixtures=(), tol: float = 1e-8) -> list:
    c = _checks("hypergeometric", "dn00_form", "rrv_identity", "bracket_magnitudes")
    for n in sizes:
        if n < 2:
            continue
        c["dn00_form"].record(all(hypergeom_form_check(n).values()), f"n={n}")
        h = hypergeometric_monodromy(n)
        if h.v is None:
            c["rrv_identity"].record(False, f"n={n}: no polarization")
            continue
        ok, res = rrv_check(h.U, h.S, h.v, h.form, n + 2, tol)
        c["rrv_identity"].record(ok, f"n={n}: residual {res:.2e}")
        br = brackets(h.U, h.v, h.form.G, n)[1:]
        want = np.abs(expected_brackets(n))
        c["bracket_magnitudes"].record(float(np.max(np.abs(np.abs(br) - want))) <= 1e-6, f"n={n}")
    return list(c.values())


SUITES = {
    "weyl": suite_weyl,
    "detright": suite_detright,
    "dn": suite_dn,
    "symmetry": suite_symmetry,
    "spectral": suite_spectral,
    "monodromy": suite_monodromy,
    "hypergeometric": suite_hypergeometric,
}


def run_verification(seed: int = 0, sizes=DEFAULT_SIZES, suites=None, fixtures=()) -> VerifySummary:
    """Run the named suites (all by default) and collect their checks."""
    sizes = tuple(int(n) for n in sizes)
    summary = VerifySummary(seed, sizes)
    for name in suites or SUITES:
        summary.results += SUITES[name](seed, sizes, fixtures=fixtures)
    return summary
