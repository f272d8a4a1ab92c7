"""Asymptotic tridiagonal model of the scaled ladder compressions.

Along the aligned ladder k, k+g, k+2g, ... of a balanced four-term symbol,
k^3 times the compression matrix converges entrywise to the tridiagonal
Toeplitz matrix with

    a   = |alpha|^2 n^2 + |beta|^2 m^2 - |gamma|^2 p^2 - |delta|^2 q^2
    rho = conj(alpha) beta m n - conj(gamma) delta p q

on the diagonal and superdiagonal.  The spectrum of the infinite matrix is
the interval [a - 2|rho|, a + 2|rho|], and the N x N sections have the
classical eigenvalues a + 2|rho| cos(j pi / (N+1)).

|rho| is irrational in general, so interval endpoints are kept symbolically
as rational + coeff * sqrt(radicand); the sign test a >= 2|rho| is decided
exactly on squares and never through floats.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .arith import ExactComplex
from .commutator import quadratic_form_matrix
from .errors import PreconditionError
from .symbols import FourTermSymbol, validate_balanced


@dataclass(frozen=True)
class TridiagonalModel:
    """The pair (a, rho); a is exactly rational, rho complex rational."""

    a: Fraction
    rho: ExactComplex

    @property
    def abs_rho_sq(self) -> Fraction:
        return self.rho.abs_sq()

    def abs_rho_float(self) -> float:
        return math.sqrt(float(self.abs_rho_sq))

    def dominates(self) -> bool:
        """Exact test of a >= 2|rho| (positivity of the infinite matrix)."""
        if self.a < 0:
            return False
        return self.a * self.a >= 4 * self.abs_rho_sq


def limit_a(s: FourTermSymbol) -> Fraction:
    """Limit of k^3 times the ladder diagonal entry (balance not needed)."""
    return (
        s.alpha.abs_sq() * s.n * s.n
        + s.beta.abs_sq() * s.m * s.m
        - s.gamma.abs_sq() * s.p * s.p
        - s.delta.abs_sq() * s.q * s.q
    )


def limit_rho(s: FourTermSymbol) -> ExactComplex:
    """Limit of k^3 times the ladder superdiagonal entry; needs balance."""
    validate_balanced(s)
    return s.alpha.conjugate() * s.beta * (s.m * s.n) - s.gamma.conjugate() * s.delta * (s.p * s.q)


def model_from_symbol(s: FourTermSymbol) -> TridiagonalModel:
    return TridiagonalModel(a=limit_a(s), rho=limit_rho(s))


def _rational_sqrt(value: Fraction) -> Fraction | None:
    """Exact square root of a nonnegative rational, or None if irrational."""
    if value < 0:
        raise PreconditionError("radicand must be nonnegative")
    num, den = value.numerator, value.denominator
    rn, rd = math.isqrt(num), math.isqrt(den)
    if rn * rn == num and rd * rd == den:
        return Fraction(rn, rd)
    return None


@dataclass(frozen=True)
class RadicalValue:
    """rational + coeff * sqrt(radicand) with radicand >= 0 rational."""

    rational: Fraction
    coeff: Fraction
    radicand: Fraction

    def exact(self) -> Fraction | None:
        """The exact rational value when the radicand is a perfect square."""
        root = _rational_sqrt(self.radicand)
        if root is None:
            return None
        return self.rational + self.coeff * root

    def to_float(self) -> float:
        return float(self.rational) + float(self.coeff) * math.sqrt(float(self.radicand))

    def to_json(self) -> dict:
        from .arith import format_rational

        exact = self.exact()
        payload = {
            "rational": format_rational(self.rational),
            "coeff": format_rational(self.coeff),
            "radicand": format_rational(self.radicand),
            "float": self.to_float(),
        }
        if exact is not None:
            payload["exact"] = format_rational(exact)
        return payload


@dataclass(frozen=True)
class SpectrumInterval:
    lower: RadicalValue
    upper: RadicalValue


def spectrum_interval(t: TridiagonalModel) -> SpectrumInterval:
    """[a - 2|rho|, a + 2|rho|], endpoints symbolic."""
    radicand = t.abs_rho_sq
    return SpectrumInterval(
        lower=RadicalValue(t.a, Fraction(-2), radicand),
        upper=RadicalValue(t.a, Fraction(2), radicand),
    )


def finite_section_eigenvalues(t: TridiagonalModel, N: int) -> list:
    """Eigenvalues a + 2|rho| cos(j pi/(N+1)), j = 1..N, sorted ascending."""
    if N < 1:
        raise PreconditionError("N must be positive")
    a = float(t.a)
    r = t.abs_rho_float()
    return [a + 2.0 * r * math.cos(j * math.pi / (N + 1)) for j in range(N, 0, -1)]


def finite_section_min_eig(t: TridiagonalModel, N: int) -> float:
    """Smallest eigenvalue a - 2|rho| cos(pi/(N+1)) of the N x N section."""
    if N < 1:
        raise PreconditionError("N must be positive")
    return float(t.a) - 2.0 * t.abs_rho_float() * math.cos(math.pi / (N + 1))


def find_negative_section(t: TridiagonalModel, hard_cap: int = 10_000_000) -> int | None:
    """Smallest practical N with a negative section eigenvalue.

    Returns None when a >= 2|rho| exactly (all sections are then positive
    semidefinite in the limit, so no finite section dips below zero).  When
    a < 2|rho|, the eigenvalue formula gives N <= ceil(pi/arccos(a/(2|rho|)))
    and the float guard only ever bumps N past rounding noise.
    """
    if t.dominates():
        return None
    if t.a < 0:
        return 1
    ratio = float(t.a) / (2.0 * t.abs_rho_float())
    ratio = min(max(ratio, -1.0), 1.0)
    N = max(1, math.ceil(math.pi / math.acos(ratio)))
    while finite_section_min_eig(t, N) >= 0:
        N += 1
        if N > hard_cap:
            raise PreconditionError("no negative section found below hard cap")
    return N


@dataclass(frozen=True)
class ConvergenceRow:
    """One k of the table: exact scaled entries and float deviations."""

    k: int
    scaled_a00: ExactComplex
    scaled_a10: ExactComplex
    scaled_a01: ExactComplex
    scaled_a11: ExactComplex
    scaled_a20: ExactComplex
    scaled_a02: ExactComplex
    dev_a00: float
    dev_a10: float
    dev_a11: float
    dev_a20: float
    dev_a02: float


@dataclass(frozen=True)
class ConvergenceReport:
    a: Fraction
    rho: ExactComplex
    rows: tuple


def _abs_float(x: ExactComplex) -> float:
    return math.sqrt(float(x.abs_sq()))


def convergence_report(s: FourTermSymbol, k_list: Sequence[int]) -> ConvergenceReport:
    """Exact k^3-scaled ladder entries plus deviations from the limits."""
    a = limit_a(s)
    rho = limit_rho(s)
    a_c = ExactComplex(a)
    rows = []
    for k in k_list:
        qf = quadratic_form_matrix(s, k).scaled(Fraction(k**3))
        rows.append(
            ConvergenceRow(
                k=k,
                scaled_a00=qf.a00,
                scaled_a10=qf.a10,
                scaled_a01=qf.a01,
                scaled_a11=qf.a11,
                scaled_a20=qf.a20,
                scaled_a02=qf.a02,
                dev_a00=_abs_float(qf.a00 - a_c),
                dev_a10=_abs_float(qf.a10 - rho),
                # a11 sits on the superdiagonal like a10, so it converges to
                # rho itself (not its conjugate)
                dev_a11=_abs_float(qf.a11 - rho),
                dev_a20=_abs_float(qf.a20 - a_c),
                dev_a02=_abs_float(qf.a02 - a_c),
            )
        )
    return ConvergenceReport(a=a, rho=rho, rows=tuple(rows))
