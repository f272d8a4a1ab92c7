"""Exact complex-rational scalars and exact Hermitian positivity certificates.

Every matrix entry in this package is a complex number whose real and
imaginary parts are arbitrary-precision rationals (``fractions.Fraction``),
so equality, signs and quadratic forms are decided exactly.  Positive
semidefiniteness is certified by an LDL* factorization with symmetric
pivoting; a failed test always returns a witness vector whose quadratic form
can be replayed bit-for-bit.

Entry growth in the LDL* sweep is accepted: Schur-complement entries are
ratios of minors, so for an n x n matrix with b-bit entries the numerators
and denominators stay within O(n*(b + log n)) bits, which arbitrary-precision
rationals absorb without any overflow policy.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence, Union

import numpy as np

from .errors import EigenSolverError, InputFormatError, NonHermitianError, PreconditionError

RationalLike = Union[int, Fraction, str]


def parse_rational(value: RationalLike) -> Fraction:
    """Parse "p/q" or "p" (or an int/Fraction) into a Fraction in lowest terms."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise InputFormatError(f"not a rational: {value!r}") from exc
    raise InputFormatError(f"not a rational: {value!r}")


def format_rational(value: Fraction) -> str:
    """Render a Fraction as "p/q" (q > 1) or "p"."""
    return str(value)


@dataclass(frozen=True)
class ExactComplex:
    """Complex scalar with exact rational real and imaginary parts.

    Immutable and hashable; arithmetic keeps both parts in lowest terms
    because ``Fraction`` normalizes after every operation.
    """

    re: Fraction = Fraction(0)
    im: Fraction = Fraction(0)

    def __post_init__(self) -> None:
        object.__setattr__(self, "re", parse_rational(self.re))
        object.__setattr__(self, "im", parse_rational(self.im))

    # -- algebra -------------------------------------------------------

    def __add__(self, other: "ExactComplexLike") -> "ExactComplex":
        o = as_exact_complex(other)
        return ExactComplex(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other: "ExactComplexLike") -> "ExactComplex":
        o = as_exact_complex(other)
        return ExactComplex(self.re - o.re, self.im - o.im)

    def __rsub__(self, other: "ExactComplexLike") -> "ExactComplex":
        return as_exact_complex(other) - self

    def __mul__(self, other: "ExactComplexLike") -> "ExactComplex":
        o = as_exact_complex(other)
        return ExactComplex(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other: "ExactComplexLike") -> "ExactComplex":
        o = as_exact_complex(other)
        d = o.abs_sq()
        if d == 0:
            raise ZeroDivisionError("division by exact zero")
        return ExactComplex((self.re * o.re + self.im * o.im) / d, (self.im * o.re - self.re * o.im) / d)

    def __neg__(self) -> "ExactComplex":
        return ExactComplex(-self.re, -self.im)

    def conjugate(self) -> "ExactComplex":
        return ExactComplex(self.re, -self.im)

    def abs_sq(self) -> Fraction:
        """|x|^2, always a nonnegative rational."""
        return self.re * self.re + self.im * self.im

    # -- predicates ----------------------------------------------------

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def is_real(self) -> bool:
        return self.im == 0

    def real_part(self) -> Fraction:
        """The rational value of a provably real scalar."""
        if self.im != 0:
            raise PreconditionError(f"scalar is not real: {self}")
        return self.re

    # -- conversion ----------------------------------------------------

    def to_complex(self) -> complex:
        return complex(float(self.re), float(self.im))

    def to_json(self) -> dict:
        return {"re": format_rational(self.re), "im": format_rational(self.im)}

    @classmethod
    def from_json(cls, data: object) -> "ExactComplex":
        return as_exact_complex(data)

    def __str__(self) -> str:
        if self.im == 0:
            return format_rational(self.re)
        if self.re == 0:
            return f"{format_rational(self.im)}i"
        sign = "+" if self.im > 0 else "-"
        return f"{format_rational(self.re)}{sign}{format_rational(abs(self.im))}i"


ZERO = ExactComplex()
ONE = ExactComplex(Fraction(1))
I_UNIT = ExactComplex(Fraction(0), Fraction(1))

ExactComplexLike = Union[ExactComplex, Fraction, int, str, Mapping, Sequence]


def as_exact_complex(value: ExactComplexLike) -> ExactComplex:
    """Coerce ints, Fractions, "p/q" strings, {"re","im"} maps, or (re, im) pairs."""
    if isinstance(value, ExactComplex):
        return value
    if isinstance(value, (int, Fraction)):
        return ExactComplex(Fraction(value))
    if isinstance(value, str):
        return parse_complex(value)
    if isinstance(value, Mapping):
        return ExactComplex(parse_rational(value.get("re", 0)), parse_rational(value.get("im", 0)))
    if isinstance(value, Sequence) and len(value) == 2:
        return ExactComplex(parse_rational(value[0]), parse_rational(value[1]))
    raise InputFormatError(f"not a complex rational: {value!r}")


def parse_complex(text: str) -> ExactComplex:
    """Parse literals like "3/4", "-2i", "1+2i", "1/2-3/4i" (also "j" suffix)."""
    s = text.strip().replace("j", "i")
    if not s:
        raise InputFormatError("empty complex literal")
    if not s.endswith("i"):
        return ExactComplex(parse_rational(s))
    body = s[:-1]
    # split off a trailing +/- term, which is the imaginary coefficient
    for pos in range(len(body) - 1, 0, -1):
        if body[pos] in "+-" and body[pos - 1] not in "+-/":
            re_part, im_part = body[:pos], body[pos:]
            break
    else:
        re_part, im_part = "", body
    if im_part in ("", "+"):
        im_part = "1"
    elif im_part == "-":
        im_part = "-1"
    re = parse_rational(re_part) if re_part else Fraction(0)
    return ExactComplex(re, parse_rational(im_part))


class PsdVerdict(str, enum.Enum):
    PSD = "PSD"
    NOT_PSD = "NOT_PSD"


class HermitianExactMatrix:
    """Square conjugate-symmetric matrix of :class:`ExactComplex` entries.

    The constructor enforces ``entries[j][i] == conj(entries[i][j])`` and a
    real diagonal; instances are immutable afterwards.
    """

    def __init__(self, entries: Sequence[Sequence[ExactComplexLike]]):
        rows = [tuple(as_exact_complex(x) for x in row) for row in entries]
        n = len(rows)
        if n == 0:
            raise NonHermitianError("matrix must have positive dimension")
        for row in rows:
            if len(row) != n:
                raise NonHermitianError("matrix must be square")
        for i in range(n):
            if rows[i][i].im != 0:
                raise NonHermitianError(f"diagonal entry ({i},{i}) is not real")
            for j in range(i + 1, n):
                if rows[j][i] != rows[i][j].conjugate():
                    raise NonHermitianError(f"entries ({i},{j}) and ({j},{i}) are not conjugate")
        self._rows = tuple(rows)
        self._dim = n

    @property
    def dim(self) -> int:
        return self._dim

    def entry(self, i: int, j: int) -> ExactComplex:
        return self._rows[i][j]

    def __getitem__(self, key: tuple) -> ExactComplex:
        i, j = key
        return self._rows[i][j]

    def rows(self) -> tuple:
        return self._rows

    def __eq__(self, other: object) -> bool:
        return isinstance(other, HermitianExactMatrix) and self._rows == other._rows

    def __hash__(self) -> int:
        return hash(self._rows)

    def quadratic_form(self, vector: Sequence[ExactComplexLike]) -> ExactComplex:
        """Exact v* M v; real for Hermitian M by construction."""
        v = [as_exact_complex(x) for x in vector]
        if len(v) != self._dim:
            raise PreconditionError("vector length does not match matrix dimension")
        total = ZERO
        for i, vi in enumerate(v):
            if vi.is_zero():
                continue
            acc = ZERO
            for j, vj in enumerate(v):
                if vj.is_zero():
                    continue
                acc = acc + self._rows[i][j] * vj
            total = total + vi.conjugate() * acc
        return total

    def scale_congruence(self, diag: Sequence[RationalLike]) -> "HermitianExactMatrix":
        """Return D M D for a positive rational diagonal D."""
        d = [parse_rational(x) for x in diag]
        if len(d) != self._dim or any(x <= 0 for x in d):
            raise PreconditionError("diagonal must be positive and match the dimension")
        return HermitianExactMatrix(
            [[self._rows[i][j] * (d[i] * d[j]) for j in range(self._dim)] for i in range(self._dim)]
        )

    def to_complex_array(self) -> np.ndarray:
        return np.array([[x.to_complex() for x in row] for row in self._rows], dtype=np.complex128)

    def to_json(self) -> dict:
        return {"dim": self._dim, "entries": [[x.to_json() for x in row] for row in self._rows]}

    @classmethod
    def from_json(cls, data: Mapping) -> "HermitianExactMatrix":
        return cls(data["entries"])


@dataclass(frozen=True)
class LdlFactorization:
    """Pivoted LDL* data: M = sum_s diag[s] * w_s w_s*.

    ``pivots`` lists pivot indices in elimination order; ``columns[s]`` maps a
    row index still active after step s to its unit-lower multiplier, and the
    implicit w_s has a 1 at ``pivots[s]``.  Indices never eliminated (trailing
    all-zero block) do not appear.
    """

    pivots: tuple
    diag: tuple
    columns: tuple

    def reconstruct(self, dim: int) -> HermitianExactMatrix:
        """Rebuild the factored matrix; exact, used to audit certificates."""
        acc = [[ZERO for _ in range(dim)] for _ in range(dim)]
        for s, piv in enumerate(self.pivots):
            w = {piv: ONE}
            w.update(dict(self.columns[s]))
            d = self.diag[s]
            for i, wi in w.items():
                for j, wj in w.items():
                    acc[i][j] = acc[i][j] + wi * wj.conjugate() * d
        return HermitianExactMatrix(acc)


@dataclass(frozen=True)
class PsdCertificate:
    """Outcome of :func:`psd_exact`.

    PSD verdicts carry the LDL* factorization; NOT_PSD verdicts carry a
    witness vector v and the exactly evaluated value v* M v < 0.
    """

    verdict: PsdVerdict
    witness: tuple | None = None
    witness_value: ExactComplex | None = None
    ldl: LdlFactorization | None = None

    @property
    def is_psd(self) -> bool:
        return self.verdict is PsdVerdict.PSD


def _backsubstitute(support: dict, pivots: list, columns: list, dim: int) -> tuple:
    # Solve L* v = y for the sparse y in `support`: walking pivots in reverse
    # elimination order, each pivot coordinate is determined by later ones.
    v = dict(support)
    for s in range(len(pivots) - 1, -1, -1):
        acc = ZERO
        for row, mult in columns[s].items():
            val = v.get(row)
            if val is not None:
                acc = acc + mult.conjugate() * val
        if not acc.is_zero():
            v[pivots[s]] = -acc
    return tuple(v.get(i, ZERO) for i in range(dim))


def psd_exact(m: HermitianExactMatrix) -> PsdCertificate:
    """Decide M >= 0 exactly by LDL* with symmetric pivoting.

    Pivot selection is the first strictly positive diagonal entry in index
    order, so certificates are deterministic.  The sweep fails (NOT_PSD) when
    a Schur-complement diagonal entry goes negative, or when every remaining
    diagonal entry is zero while some off-diagonal entry is not; in both
    cases the failing direction is pushed back through the accumulated L
    factor to produce an exact witness for the original matrix.
    """
    n = m.dim
    a = [list(row) for row in m.rows()]
    active = list(range(n))
    pivots: list = []
    diag: list = []
    columns: list = []

    def fail(support: dict) -> PsdCertificate:
        witness = _backsubstitute(support, pivots, columns, n)
        value = m.quadratic_form(witness)
        if value.im != 0 or value.re >= 0:
            raise AssertionError("internal error: witness does not certify NOT_PSD")
        return PsdCertificate(PsdVerdict.NOT_PSD, witness=witness, witness_value=value)

    while active:
        negative = next((i for i in active if a[i][i].re < 0), None)
        if negative is not None:
            return fail({negative: ONE})
        pivot = next((i for i in active if a[i][i].re > 0), None)
        if pivot is None:
            # all remaining diagonal entries are exactly zero
            bad = next(
                ((i, j) for i in active for j in active if i < j and not a[i][j].is_zero()),
                None,
            )
            if bad is None:
                break
            i, j = bad
            c = a[i][j]
            # [[0, c], [conj(c), 0]] on (i, j): value at (c, -1) is -2|c|^2
            return fail({i: c, j: -ONE})
        d = a[pivot][pivot].re
        active.remove(pivot)
        nonzero = [r for r in active if not a[r][pivot].is_zero()]
        col = {r: a[r][pivot] / ExactComplex(d) for r in nonzero}
        for r in nonzero:
            for c in nonzero:
                a[r][c] = a[r][c] - a[r][pivot] * a[c][pivot].conjugate() / ExactComplex(d)
        pivots.append(pivot)
        diag.append(d)
        columns.append(col)

    ldl = LdlFactorization(tuple(pivots), tuple(diag), tuple(tuple(c.items()) for c in columns))
    return PsdCertificate(PsdVerdict.PSD, ldl=ldl)


@dataclass(frozen=True)
class FloatPsdReport:
    """Floating-point advisory verdict; :func:`psd_exact` is authoritative."""

    verdict: PsdVerdict
    min_eigenvalue: float
    tol: float


def psd_float(m: HermitianExactMatrix, tol: float = 0.0) -> FloatPsdReport:
    """Smallest eigenvalue of the float image of M; PSD iff lambda_min >= -tol."""
    if tol < 0:
        raise PreconditionError("tol must be nonnegative")
    try:
        eigenvalues = np.linalg.eigvalsh(m.to_complex_array())
    except np.linalg.LinAlgError as exc:
        raise EigenSolverError(f"eigenvalue iteration failed: {exc}") from exc
    lam = float(eigenvalues[0])
    verdict = PsdVerdict.PSD if lam >= -tol else PsdVerdict.NOT_PSD
    return FloatPsdReport(verdict=verdict, min_eigenvalue=lam, tol=tol)
