"""Verdict-producing tests: the main inequality, its specific case, the
sharper-than-previous comparison, the revealing one-parameter family, the
normality classifier, and the Hardy-space contrast checks.

Every inequality is decided by comparing squared magnitudes over the
rationals, so no square root ever enters a decision path; the floating
``margin`` fields are rendering only.  The package never declares a Bergman
symbol hyponormal: positive outcomes are "passes up to degree N" or, in the
one-parameter family and the Hardy equal-modulus case, genuine iff results.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .arith import ExactComplex, ExactComplexLike, ZERO, as_exact_complex
from .asymptotics import limit_a, limit_rho
from .errors import InputFormatError, PreconditionError, ShapeMismatchError, UnsupportedCaseError
from .symbols import FourTermSymbol, to_harmonic, validate_balanced

# Default search depth when hunting for a compression refutation of a symbol
# that violates the main inequality.  Covers all acceptance-family violations
# with margin >= 1e-3; incomplete as margins shrink to 0.
DEFAULT_SCAN_CAP = 400


@dataclass(frozen=True)
class InequalityReport:
    """lhs >= sqrt(rhs_squared), decided exactly on squares."""

    lhs: Fraction
    rhs_squared: Fraction
    holds: bool
    margin: float
    rule: str

    @property
    def explanation(self) -> str:
        status = "holds" if self.holds else "fails"
        return f"{self.rule}: lhs={self.lhs}, rhs^2={self.rhs_squared}; comparison {status} over Q"


def _squared_comparison(lhs: Fraction, rhs_squared: Fraction, rule: str) -> InequalityReport:
    holds = lhs >= 0 and lhs * lhs >= rhs_squared
    margin = float(lhs) - math.sqrt(float(rhs_squared))
    return InequalityReport(lhs=lhs, rhs_squared=rhs_squared, holds=holds, margin=margin, rule=rule)


def main_inequality(s: FourTermSymbol) -> InequalityReport:
    """Necessary condition for hyponormality of a balanced four-term symbol:

        |alpha|^2 n^2 + |beta|^2 m^2 - |gamma|^2 p^2 - |delta|^2 q^2
            >= 2 |conj(alpha) beta m n - conj(gamma) delta p q|.

    A violation certifies that T_phi is not hyponormal.
    """
    validate_balanced(s)
    lhs = limit_a(s)
    rhs_squared = 4 * limit_rho(s).abs_sq()
    return _squared_comparison(lhs, rhs_squared, "asymptotic tridiagonal positivity bound")


def _require_specific_shape(s: FourTermSymbol) -> None:
    if s.p != s.m or s.q != s.n:
        raise ShapeMismatchError(f"requires p = m and q = n, got p={s.p}, m={s.m}, q={s.q}, n={s.n}")


def specific_case_inequality(s: FourTermSymbol) -> InequalityReport:
    """The p = m, q = n reduction:
    n^2(|alpha|^2 - |delta|^2) + m^2(|beta|^2 - |gamma|^2) >= 2mn|conj(alpha)beta - conj(gamma)delta|.

    Algebraically identical to :func:`main_inequality` on this shape.
    """
    _require_specific_shape(s)
    lhs = s.n * s.n * (s.alpha.abs_sq() - s.delta.abs_sq()) + s.m * s.m * (s.beta.abs_sq() - s.gamma.abs_sq())
    cross = s.alpha.conjugate() * s.beta - s.gamma.conjugate() * s.delta
    rhs_squared = 4 * s.m * s.m * s.n * s.n * cross.abs_sq()
    return _squared_comparison(lhs, rhs_squared, "matched-exponent reduction of the positivity bound")


@dataclass(frozen=True)
class LuShiComparison:
    """Factor-2 bound versus the earlier factor-1 bound on the same data."""

    paper_bound: InequalityReport
    lu_shi_bound: InequalityReport
    strictly_sharper: bool

    @property
    def explanation(self) -> str:
        if self.strictly_sharper:
            return (
                "the factor-2 bound refutes hyponormality where the factor-1 bound is silent "
                f"(lhs={self.paper_bound.lhs})"
            )
        return "both bounds agree on this symbol"


def lu_shi_comparison(s: FourTermSymbol) -> LuShiComparison:
    """Evaluate the factor-2 inequality next to the factor-1 predecessor.

    strictly_sharper marks inputs where the older bound passes but the
    factor-2 bound fails, i.e. non-hyponormality the older bound misses.
    """
    _require_specific_shape(s)
    sharp = specific_case_inequality(s)
    lu_shi = _squared_comparison(sharp.lhs, sharp.rhs_squared / 4, "factor-1 predecessor bound")
    return LuShiComparison(
        paper_bound=sharp,
        lu_shi_bound=lu_shi,
        strictly_sharper=lu_shi.holds and not sharp.holds,
    )


@dataclass(frozen=True)
class ThresholdReport:
    """Per-degree conditions |alpha|^2 >= bound(k) for the family
    conj(z)^2 + alpha z, plus their supremum."""

    bounds: tuple
    supremum: Fraction
    threshold_modulus: Fraction

    @property
    def explanation(self) -> str:
        return (
            "diagonal self-commutator entries give |alpha|^2 >= bound(k) for every k; "
            f"the supremum {self.supremum} makes |alpha| >= {self.threshold_modulus} an iff"
        )


def threshold_bound_at(k: int) -> Fraction:
    """Exact per-degree bound on |alpha|^2 for conj(z)^2 + alpha z."""
    if k < 0:
        raise PreconditionError("k must be nonnegative")
    if k == 0:
        return Fraction(2, 3)
    if k == 1:
        return Fraction(3)
    return 4 * Fraction(k + 2, k + 3)


def revealing_threshold(q_exp: int = 2, max_k: int = 10) -> ThresholdReport:
    """The one-parameter family conj(z)^q_exp + alpha z; only q_exp = 2 has
    the worked threshold (|alpha| >= 2 iff hyponormal)."""
    if q_exp != 2:
        raise UnsupportedCaseError("only the co-analytic exponent 2 family is supported")
    if max_k < 0:
        raise PreconditionError("max_k must be nonnegative")
    bounds = tuple((k, threshold_bound_at(k)) for k in range(max_k + 1))
    return ThresholdReport(bounds=bounds, supremum=Fraction(4), threshold_modulus=Fraction(2))


class NormalForm(str, enum.Enum):
    TYPE_I = "TYPE_I"
    TYPE_II = "TYPE_II"
    TYPE_III = "TYPE_III"


@dataclass(frozen=True)
class NormalityVerdict:
    """normal iff phi + lam * conj(phi) vanishes coefficient-wise for a
    unimodular lam; the matching exponent coincidence names the type."""

    normal: bool
    form: NormalForm | None = None
    lam: ExactComplex | None = None

    @property
    def explanation(self) -> str:
        if self.normal:
            return f"phi + lambda*conj(phi) = 0 with lambda = {self.lam} ({self.form.value})"
        return "no unimodular lambda cancels phi against conj(phi)"


def classify_normal(s: FourTermSymbol) -> NormalityVerdict:
    """Decide normality of T_phi for a balanced four-term symbol.

    Normal symbols come in exactly three shapes, distinguished by which
    exponent coincidence carries the cancellation: n = p (single top pair),
    m = p (full pair, n = q forced by balance), or m = q (single bottom
    pair).  lambda is solved from the first nonzero coefficient ratio in
    descending degree and then verified globally; coefficients at degree 0
    are exempt from the cancellation (adding a constant never changes
    normality).  Constant-valued symbols are rejected: the three-type
    classification presumes a nonconstant symbol.
    """
    if s.all_zero():
        raise PreconditionError("all-zero symbol rejected")
    validate_balanced(s)
    h = to_harmonic(s)
    degrees = sorted({d for d in h.analytic if d >= 1} | set(h.coanalytic), reverse=True)
    if not degrees:
        raise UnsupportedCaseError("constant-valued symbol: the type classification does not apply")

    pairs = [(h.analytic.get(d, ZERO), h.coanalytic.get(d, ZERO)) for d in degrees]
    lam = None
    for f, c in pairs:
        if not f.is_zero() or not c.is_zero():
            if f.is_zero() or c.is_zero():
                return NormalityVerdict(normal=False)
            lam = -f / c.conjugate()
            break
    if lam is None or lam.abs_sq() != 1:
        return NormalityVerdict(normal=False)
    for f, c in pairs:
        if not (f + lam * c.conjugate()).is_zero():
            return NormalityVerdict(normal=False)

    if s.n == s.p:
        form = NormalForm.TYPE_I
    elif s.m == s.p:
        form = NormalForm.TYPE_II
    elif s.m == s.q:
        form = NormalForm.TYPE_III
    else:
        raise AssertionError("verified cancellation without a matching exponent coincidence")
    return NormalityVerdict(normal=True, form=form, lam=lam)


class HardyStatus(str, enum.Enum):
    HYPONORMAL = "HYPONORMAL"
    NOT_HYPONORMAL = "NOT_HYPONORMAL"
    NOT_APPLICABLE = "NOT_APPLICABLE"


class HardyTrigSymbol:
    """Finite Laurent symbol sum a_d z^d on the circle, nonzero coeffs only.

    m and N record the extremal degrees: m is the co-analytic depth (0 when
    no negative coefficient exists) and N the top analytic degree (clamped to
    0 for purely co-analytic symbols, where a_N is then 0).
    """

    def __init__(self, coeffs: Mapping[int, ExactComplexLike]):
        cleaned = {}
        for deg, coeff in coeffs.items():
            value = as_exact_complex(coeff)
            if not value.is_zero():
                cleaned[int(deg)] = value
        if not cleaned:
            raise InputFormatError("symbol has no nonzero coefficients")
        self.coeffs = cleaned
        negatives = [d for d in cleaned if d < 0]
        self.m = -min(negatives) if negatives else 0
        self.N = max(max(cleaned), 0)

    def coeff(self, deg: int) -> ExactComplex:
        return self.coeffs.get(deg, ZERO)

    @property
    def is_analytic(self) -> bool:
        return self.m == 0

    def to_json(self) -> dict:
        return {"coeffs": {str(d): self.coeffs[d].to_json() for d in sorted(self.coeffs)}}


@dataclass(frozen=True)
class HardyNecessaryReport:
    fails: bool
    m: int
    N: int
    reason: str

    @property
    def explanation(self) -> str:
        return self.reason


def hardy_necessary(h: HardyTrigSymbol) -> HardyNecessaryReport:
    """Degree/modulus necessary condition on the Hardy space.

    fails = certified not hyponormal (m > N, or |a_{-m}| > |a_N|); a pass is
    inconclusive except for analytic symbols, which are always hyponormal.
    """
    if h.is_analytic:
        return HardyNecessaryReport(False, h.m, h.N, "analytic symbol: hyponormal outright")
    if h.m > h.N:
        return HardyNecessaryReport(
            True, h.m, h.N, f"degree test fails: m={h.m} exceeds N={h.N}"
        )
    if h.coeff(-h.m).abs_sq() > h.coeff(h.N).abs_sq():
        return HardyNecessaryReport(
            True, h.m, h.N, f"modulus test fails: |a_-{h.m}| exceeds |a_{h.N}|"
        )
    return HardyNecessaryReport(False, h.m, h.N, "degree and modulus tests pass (inconclusive)")


@dataclass(frozen=True)
class HardyEqualModulusReport:
    status: HardyStatus
    normal: bool
    m: int
    N: int

    @property
    def explanation(self) -> str:
        if self.status is HardyStatus.NOT_APPLICABLE:
            return "requires m <= N and |a_-m| = |a_N| != 0"
        if self.status is HardyStatus.HYPONORMAL:
            tail = "; normal since m = N" if self.normal else ""
            return "coefficient vector equation holds: hyponormal" + tail
        return "coefficient vector equation fails: not hyponormal"


def hardy_equal_modulus(h: HardyTrigSymbol) -> HardyEqualModulusReport:
    """Equal-modulus iff test: with m <= N and |a_{-m}| = |a_N| != 0,
    hyponormality is equivalent to conj(a_N) a_{-i} = a_{-m} conj(a_{N-m+i})
    for i = 1..m, and normality to that plus m = N."""
    a_top = h.coeff(h.N)
    a_bottom = h.coeff(-h.m)
    applicable = h.m <= h.N and not a_top.is_zero() and a_bottom.abs_sq() == a_top.abs_sq()
    if not applicable:
        return HardyEqualModulusReport(HardyStatus.NOT_APPLICABLE, False, h.m, h.N)
    holds = all(
        a_top.conjugate() * h.coeff(-i) == a_bottom * h.coeff(h.N - h.m + i).conjugate()
        for i in range(1, h.m + 1)
    )
    if not holds:
        return HardyEqualModulusReport(HardyStatus.NOT_HYPONORMAL, False, h.m, h.N)
    return HardyEqualModulusReport(HardyStatus.HYPONORMAL, h.m == h.N, h.m, h.N)
