"""Symbol models: general harmonic polynomials and the four-term family.

A harmonic polynomial symbol is f + conj(g) with f, g analytic polynomials;
we store the analytic coefficients (of z^d) and the co-analytic coefficients
(of conj(z)^d, d >= 1) separately, dropping exact zeros.  Constants always
live in the analytic part.

The four-term family alpha*z^n + beta*z^m + gamma*conj(z)^p + delta*conj(z)^q
(m < n, p < q) is the canonical input for the asymptotic machinery, which
additionally needs the balance condition n - m = q - p.
"""

from __future__ import annotations

from dataclasses import dataclass
from types import MappingProxyType
from typing import Mapping

from .arith import ExactComplex, ExactComplexLike, as_exact_complex
from .errors import InputFormatError, UnbalancedSymbolError


def _clean_coeffs(data: Mapping[int, ExactComplexLike], min_degree: int, kind: str) -> Mapping[int, ExactComplex]:
    out = {}
    for deg, coeff in data.items():
        deg = int(deg)
        value = as_exact_complex(coeff)
        if value.is_zero():
            continue
        if deg < min_degree:
            raise InputFormatError(f"{kind} degree {deg} out of range (min {min_degree})")
        out[deg] = value
    return MappingProxyType(out)


@dataclass(frozen=True)
class HarmonicPolySymbol:
    """f + conj(g) with finite coefficient maps; zero coefficients absent."""

    analytic: Mapping[int, ExactComplex]
    coanalytic: Mapping[int, ExactComplex]

    def __post_init__(self) -> None:
        object.__setattr__(self, "analytic", _clean_coeffs(self.analytic, 0, "analytic"))
        object.__setattr__(self, "coanalytic", _clean_coeffs(self.coanalytic, 1, "coanalytic"))

    def conjugate(self) -> "HarmonicPolySymbol":
        """The symbol conj(phi); analytic and co-analytic parts swap."""
        analytic = {d: c.conjugate() for d, c in self.coanalytic.items()}
        coanalytic = {d: c.conjugate() for d, c in self.analytic.items() if d >= 1}
        constant = self.analytic.get(0)
        if constant is not None:
            analytic[0] = analytic.get(0, ExactComplex()) + constant.conjugate()
        return HarmonicPolySymbol(analytic, coanalytic)

    def is_zero(self) -> bool:
        return not self.analytic and not self.coanalytic

    def is_constant(self) -> bool:
        return not self.coanalytic and all(d == 0 for d in self.analytic)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, HarmonicPolySymbol):
            return NotImplemented
        return dict(self.analytic) == dict(other.analytic) and dict(self.coanalytic) == dict(other.coanalytic)

    def __hash__(self) -> int:
        return hash((frozenset(self.analytic.items()), frozenset(self.coanalytic.items())))

    def to_json(self) -> dict:
        def dump(part: Mapping[int, ExactComplex]) -> list:
            return [dict(deg=d, **part[d].to_json()) for d in sorted(part)]

        return {"analytic": dump(self.analytic), "coanalytic": dump(self.coanalytic)}

    @classmethod
    def from_json(cls, data: Mapping) -> "HarmonicPolySymbol":
        def load(items: object) -> dict:
            out: dict = {}
            for item in items:  # type: ignore[union-attr]
                deg = int(item["deg"])
                out[deg] = out.get(deg, ExactComplex()) + as_exact_complex(
                    {"re": item.get("re", 0), "im": item.get("im", 0)}
                )
            return out

        return cls(load(data.get("analytic", [])), load(data.get("coanalytic", [])))


@dataclass(frozen=True)
class FourTermSymbol:
    """alpha*z^n + beta*z^m + gamma*conj(z)^p + delta*conj(z)^q, m < n, p < q."""

    alpha: ExactComplex
    n: int
    beta: ExactComplex
    m: int
    gamma: ExactComplex
    p: int
    delta: ExactComplex
    q: int

    def __post_init__(self) -> None:
        for name in ("alpha", "beta", "gamma", "delta"):
            object.__setattr__(self, name, as_exact_complex(getattr(self, name)))
        if min(self.n, self.m, self.p, self.q) < 0:
            raise InputFormatError("exponents must be nonnegative")
        if not self.m < self.n:
            raise InputFormatError(f"requires m < n, got m={self.m}, n={self.n}")
        if not self.p < self.q:
            raise InputFormatError(f"requires p < q, got p={self.p}, q={self.q}")

    @property
    def is_balanced(self) -> bool:
        return self.n - self.m == self.q - self.p

    def all_zero(self) -> bool:
        return all(c.is_zero() for c in (self.alpha, self.beta, self.gamma, self.delta))

    def to_json(self) -> dict:
        return {
            "alpha": self.alpha.to_json(),
            "n": self.n,
            "beta": self.beta.to_json(),
            "m": self.m,
            "gamma": self.gamma.to_json(),
            "p": self.p,
            "delta": self.delta.to_json(),
            "q": self.q,
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "FourTermSymbol":
        return cls(
            alpha=as_exact_complex(data.get("alpha", 0)),
            n=int(data["n"]),
            beta=as_exact_complex(data.get("beta", 0)),
            m=int(data["m"]),
            gamma=as_exact_complex(data.get("gamma", 0)),
            p=int(data["p"]),
            delta=as_exact_complex(data.get("delta", 0)),
            q=int(data["q"]),
        )


def to_harmonic(s: FourTermSymbol) -> HarmonicPolySymbol:
    """Expand a four-term symbol into coefficient maps, dropping zeros.

    A co-analytic exponent 0 contributes a constant, which is stored on the
    analytic side (conj(z)^0 = z^0).
    """
    analytic: dict = {}
    coanalytic: dict = {}

    def add(target: dict, deg: int, coeff: ExactComplex) -> None:
        if not coeff.is_zero():
            target[deg] = target.get(deg, ExactComplex()) + coeff

    add(analytic, s.n, s.alpha)
    add(analytic, s.m, s.beta)
    for deg, coeff in ((s.p, s.gamma), (s.q, s.delta)):
        if deg == 0:
            add(analytic, 0, coeff)
        else:
            add(coanalytic, deg, coeff)
    return HarmonicPolySymbol(analytic, coanalytic)


def validate_balanced(s: FourTermSymbol) -> int:
    """Return g = n - m when n - m = q - p; reject unbalanced symbols."""
    if not s.is_balanced:
        raise UnbalancedSymbolError(
            f"symbol is unbalanced: n-m={s.n - s.m} but q-p={s.q - s.p}"
        )
    return s.n - s.m
