"""Exact matrix elements of the self-commutator C = T*_phi T_phi - T_phi T*_phi.

Everything here reduces to two facts: a Toeplitz operator with harmonic
polynomial symbol sends a monomial to a finite monomial sum (analytic terms
shift degrees up, co-analytic terms project down), and distinct monomials
are orthogonal.  Matrix elements are therefore computed as

    <C z^s, z^t> = <T_phi z^s, T_phi z^t> - <T_conj(phi) z^s, T_conj(phi) z^t>,

with no operator truncation anywhere, so compressions built from these
elements are genuine compressions of the infinite operator.

Sign convention for the mixed commutator [T_conj(z)^a, T_z^b] (adjoint-symbol
factor first): its quadratic form on h is <z^b h, z^a h> - <P(conj(z)^a h),
P(conj(z)^b h)>, which for a = b coincides with the self-commutator of the
symbol z^a.  The closed form below uses this orientation; the test suite
pins it against the expansion oracle.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Sequence, Union

from .arith import ExactComplex, HermitianExactMatrix, PsdVerdict, ZERO, as_exact_complex, psd_exact
from .bergman import project
from .errors import PreconditionError
from .symbols import FourTermSymbol, HarmonicPolySymbol, validate_balanced

Poly = Dict[int, ExactComplex]


def _apply_toeplitz(sym: HarmonicPolySymbol, poly: Poly) -> Poly:
    """T_phi applied to a finite analytic polynomial, as a coefficient map."""
    out: Poly = {}

    def add(deg: int, coeff: ExactComplex) -> None:
        acc = out.get(deg, ZERO) + coeff
        if acc.is_zero():
            out.pop(deg, None)
        else:
            out[deg] = acc

    for deg, coeff in poly.items():
        for d, f in sym.analytic.items():
            add(deg + d, f * coeff)
        for e, c in sym.coanalytic.items():
            term = project(e, deg)
            if not term.is_zero():
                add(term.degree, c * coeff * term.coeff)
    return out


def _inner(x: Poly, y: Poly) -> ExactComplex:
    """Bergman inner product <x, y> of finite analytic polynomials."""
    total = ZERO
    for deg, xc in x.items():
        yc = y.get(deg)
        if yc is not None:
            total = total + xc * yc.conjugate() * ExactComplex(Fraction(1, deg + 1))
    return total


def commutator_element(sym: HarmonicPolySymbol, src: int, dst: int) -> ExactComplex:
    """<C z^src, z^dst> computed exactly through projections."""
    if src < 0 or dst < 0:
        raise PreconditionError("monomial degrees must be nonnegative")
    conj_sym = sym.conjugate()
    tx = _apply_toeplitz(sym, {src: ExactComplex(Fraction(1))})
    ty = _apply_toeplitz(sym, {dst: ExactComplex(Fraction(1))})
    cx = _apply_toeplitz(conj_sym, {src: ExactComplex(Fraction(1))})
    cy = _apply_toeplitz(conj_sym, {dst: ExactComplex(Fraction(1))})
    return _inner(tx, ty) - _inner(cx, cy)


def commutator_binomial_closed_form(
    a: int, b: int, k: int, l: int, c: Union[ExactComplex, Fraction, int, str]
) -> ExactComplex:
    """Closed form of <[T_conj(z)^a, T_z^b](z^k + c z^l), z^k + c z^l>.

    Valid for k, l >= max(a, b) with k != l and real rational c:

        a^2 [1/((k+1)^2 (k+1+a)) + c^2/((l+1)^2 (l+1+a))] delta(a, b)
        + a c (k-l+a) / ((a+k+1)(k+1)(l+1)) delta(a+k, b+l)
        + a c (l-k+a) / ((a+l+1)(k+1)(l+1)) delta(a+l, b+k)
    """
    if min(a, b, k, l) < 0:
        raise PreconditionError("all exponents must be nonnegative")
    if k == l:
        raise PreconditionError("requires k != l")
    if min(k, l) < max(a, b):
        raise PreconditionError("requires k, l >= max(a, b)")
    cval = as_exact_complex(c).real_part()

    total = Fraction(0)
    if a == b:
        total += a * a * (
            Fraction(1, (k + 1) ** 2 * (k + 1 + a)) + cval * cval * Fraction(1, (l + 1) ** 2 * (l + 1 + a))
        )
    if a + k == b + l:
        total += a * cval * Fraction(k - l + a, (a + k + 1) * (k + 1) * (l + 1))
    if a + l == b + k:
        total += a * cval * Fraction(l - k + a, (a + l + 1) * (k + 1) * (l + 1))
    return ExactComplex(total)


@dataclass(frozen=True)
class QuadraticFormMatrix3:
    """The 3x3 matrix of <C f, f> for f = z^k + c z^l + d z^r along the ladder
    l = n+k-m, r = l+q-p of a balanced four-term symbol.

    a01 is identically zero for every admissible k; the embedding into a
    Hermitian matrix is [[a00, a10, a01], [a10*, a20, a11], [a01*, a11*, a02]].
    """

    a00: ExactComplex
    a10: ExactComplex
    a01: ExactComplex
    a11: ExactComplex
    a20: ExactComplex
    a02: ExactComplex
    k: int
    l: int
    r: int

    def to_hermitian(self) -> HermitianExactMatrix:
        return HermitianExactMatrix(
            [
                [self.a00, self.a10, self.a01],
                [self.a10.conjugate(), self.a20, self.a11],
                [self.a01.conjugate(), self.a11.conjugate(), self.a02],
            ]
        )

    def scaled(self, factor: Fraction) -> "QuadraticFormMatrix3":
        f = ExactComplex(factor)
        return QuadraticFormMatrix3(
            a00=self.a00 * f,
            a10=self.a10 * f,
            a01=self.a01 * f,
            a11=self.a11 * f,
            a20=self.a20 * f,
            a02=self.a02 * f,
            k=self.k,
            l=self.l,
            r=self.r,
        )


def _diagonal_entry(s: FourTermSymbol, j: int) -> ExactComplex:
    # <C z^j, z^j> for j >= max(n, q): each symbol term contributes
    # +/- |coeff|^2 e^2 / ((j+1)^2 (j+e+1)).
    acc = Fraction(0)
    for coeff, e, sign in (
        (s.alpha, s.n, 1),
        (s.beta, s.m, 1),
        (s.gamma, s.p, -1),
        (s.delta, s.q, -1),
    ):
        acc += sign * coeff.abs_sq() * Fraction(e * e, j + e + 1)
    return ExactComplex(acc * Fraction(1, (j + 1) ** 2))


def _cross_entry(s: FourTermSymbol, j: int, jn: int) -> ExactComplex:
    # <C z^jn, z^j> one ladder step apart (jn = j + g); both Kronecker deltas
    # are 1 under balance.
    analytic = s.alpha.conjugate() * s.beta * ExactComplex(
        Fraction(1, jn + s.m + 1) - Fraction(j - s.m + 1, (j + 1) * (jn + 1))
    )
    coanalytic = s.gamma.conjugate() * s.delta * ExactComplex(
        Fraction(1, jn + s.p + 1) - Fraction(j - s.p + 1, (j + 1) * (jn + 1))
    )
    return analytic - coanalytic


def min_ladder_degree(s: FourTermSymbol) -> int:
    """Smallest k for which the closed-form ladder entries are valid.

    All projections must land in the v >= u branch, which requires
    k >= max(n, q) (k >= q alone is not enough when n > q).
    """
    return max(s.n, s.q)


def quadratic_form_matrix(s: FourTermSymbol, k: int) -> QuadraticFormMatrix3:
    """Closed-form ladder matrix for a balanced symbol at base degree k."""
    g = validate_balanced(s)
    kmin = min_ladder_degree(s)
    if k < kmin:
        raise PreconditionError(f"k must be >= max(n, q) = {kmin}, got {k}")
    l = k + g
    r = l + g
    return QuadraticFormMatrix3(
        a00=_diagonal_entry(s, k),
        a10=_cross_entry(s, k, l),
        a01=ZERO,
        a11=_cross_entry(s, l, r),
        a20=_diagonal_entry(s, l),
        a02=_diagonal_entry(s, r),
        k=k,
        l=l,
        r=r,
    )


def compression_matrix(sym: HarmonicPolySymbol, degrees: Sequence[int]) -> HermitianExactMatrix:
    """Compression of C to span{z^d : d in degrees}; entry (i, j) is
    <C z^degrees[j], z^degrees[i]>.

    Every entry is computed independently and the Hermitian constructor
    revalidates conjugate symmetry, so the symmetry of the underlying math is
    checked on every call.
    """
    degs = list(degrees)
    if not degs:
        raise PreconditionError("degrees must be nonempty")
    if any(d < 0 for d in degs) or any(b <= a for a, b in zip(degs, degs[1:])):
        raise PreconditionError("degrees must be strictly increasing and nonnegative")
    conj_sym = sym.conjugate()
    one = ExactComplex(Fraction(1))
    applied = [_apply_toeplitz(sym, {d: one}) for d in degs]
    applied_conj = [_apply_toeplitz(conj_sym, {d: one}) for d in degs]
    entries = [
        [_inner(applied[j], applied[i]) - _inner(applied_conj[j], applied_conj[i]) for j in range(len(degs))]
        for i in range(len(degs))
    ]
    return HermitianExactMatrix(entries)


@dataclass(frozen=True)
class ScanRefutation:
    """Exact certificate that T_phi is not hyponormal: a vector supported on
    the listed monomial degrees with a negative self-commutator form value."""

    degrees: tuple
    vector: tuple
    value: ExactComplex


@dataclass(frozen=True)
class ScanOutcome:
    """REFUTED carries a replayable witness; PASSES_UP_TO is inconclusive."""

    refuted: bool
    max_degree: int
    refutation: ScanRefutation | None = None

    @property
    def verdict(self) -> str:
        return "REFUTED" if self.refuted else "PASSES_UP_TO"


def hypo_scan(sym: HarmonicPolySymbol, max_degree: int) -> ScanOutcome:
    """Test the compression on degrees {0, ..., max_degree} for positivity.

    A NOT_PSD certificate refutes hyponormality outright (compressions of a
    positive operator are positive); a PSD outcome only means no obstruction
    below the cutoff.
    """
    if max_degree < 0:
        raise PreconditionError("max_degree must be nonnegative")
    degrees = tuple(range(max_degree + 1))
    certificate = psd_exact(compression_matrix(sym, degrees))
    if certificate.verdict is PsdVerdict.PSD:
        return ScanOutcome(refuted=False, max_degree=max_degree)
    return ScanOutcome(
        refuted=True,
        max_degree=max_degree,
        refutation=ScanRefutation(
            degrees=degrees,
            vector=certificate.witness,
            value=certificate.witness_value,
        ),
    )
