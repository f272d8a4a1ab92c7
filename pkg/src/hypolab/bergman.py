"""Closed-form Bergman-space kernels on the unit disk.

Area measure is normalized so that ||1|| = 1, giving ||z^j||^2 = 1/(j+1).
The two workhorses are the projection of a mixed monomial onto the analytic
part and the inner product of two such projections; both are exact
rationals.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .arith import ExactComplex, ZERO
from .errors import PreconditionError


@dataclass(frozen=True)
class MonomialTerm:
    """A single term coeff * z^degree; coeff 0 encodes the zero function."""

    coeff: ExactComplex
    degree: int

    def is_zero(self) -> bool:
        return self.coeff.is_zero()


def _check_nonneg(**kwargs: int) -> None:
    for name, value in kwargs.items():
        if value < 0:
            raise PreconditionError(f"{name} must be nonnegative, got {value}")


def monomial_norm_sq(j: int) -> Fraction:
    """||z^j||^2 = 1/(j+1) under normalized area measure."""
    _check_nonneg(j=j)
    return Fraction(1, j + 1)


def project(u: int, v: int) -> MonomialTerm:
    """Projection of conj(z)^u * z^v onto the analytic part.

    Returns 0 when v < u and ((v-u+1)/(v+1)) * z^(v-u) otherwise.
    """
    _check_nonneg(u=u, v=v)
    if v < u:
        return MonomialTerm(ZERO, 0)
    return MonomialTerm(ExactComplex(Fraction(v - u + 1, v + 1)), v - u)


def inner_product_projections(u: int, v: int, w: int, t: int) -> ExactComplex:
    """<P(conj(z)^u z^v), P(conj(z)^w z^t)> for v >= u and t >= w.

    Equals (t-w+1)/((v+1)(t+1)) when u+t = v+w and 0 otherwise.  Arguments
    outside the v >= u, t >= w regime are rejected; route those through
    :func:`project` (where the projection is 0) instead.
    """
    _check_nonneg(u=u, v=v, w=w, t=t)
    if v < u or t < w:
        raise PreconditionError("requires v >= u and t >= w")
    if u + t != v + w:
        return ZERO
    return ExactComplex(Fraction(t - w + 1, (v + 1) * (t + 1)))
