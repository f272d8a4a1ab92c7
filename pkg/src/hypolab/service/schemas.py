"""Pydantic request/response models for the verdict service.

Rationals travel as strings ("p/q" in lowest terms or "p"); complex values
as {"re": str, "im": str}.  Coefficient fields also accept bare literals
like "3/4" or "1+2i" for convenience.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, List, Optional, Union

from pydantic import BaseModel, Field, field_validator

from ..arith import ExactComplex, as_exact_complex, format_rational
from ..criteria import HardyTrigSymbol
from ..symbols import FourTermSymbol, HarmonicPolySymbol, to_harmonic

SCHEMA_VERSION = "1"


class ComplexValue(BaseModel):
    re: str = "0"
    im: str = "0"

    @field_validator("re", "im")
    @classmethod
    def _rational(cls, v: str) -> str:
        Fraction(v)  # raises ValueError on malformed input
        return v

    def to_exact(self) -> ExactComplex:
        return ExactComplex(Fraction(self.re), Fraction(self.im))

    @classmethod
    def from_exact(cls, value: ExactComplex) -> "ComplexValue":
        return cls(re=format_rational(value.re), im=format_rational(value.im))


CoefficientIn = Union[ComplexValue, str, int]


def coefficient_to_exact(value: CoefficientIn) -> ExactComplex:
    if isinstance(value, ComplexValue):
        return value.to_exact()
    return as_exact_complex(value)


class FourTermSymbolIn(BaseModel):
    alpha: CoefficientIn = "0"
    n: int = Field(ge=0)
    beta: CoefficientIn = "0"
    m: int = Field(ge=0)
    gamma: CoefficientIn = "0"
    p: int = Field(ge=0)
    delta: CoefficientIn = "0"
    q: int = Field(ge=0)

    def to_domain(self) -> FourTermSymbol:
        return FourTermSymbol(
            alpha=coefficient_to_exact(self.alpha),
            n=self.n,
            beta=coefficient_to_exact(self.beta),
            m=self.m,
            gamma=coefficient_to_exact(self.gamma),
            p=self.p,
            delta=coefficient_to_exact(self.delta),
            q=self.q,
        )


class HarmonicTermIn(BaseModel):
    deg: int = Field(ge=0)
    re: str = "0"
    im: str = "0"


class HarmonicSymbolIn(BaseModel):
    analytic: List[HarmonicTermIn]
    coanalytic: List[HarmonicTermIn]

    def to_domain(self) -> HarmonicPolySymbol:
        def load(items: List[HarmonicTermIn]) -> dict:
            out: dict = {}
            for item in items:
                out[item.deg] = out.get(item.deg, ExactComplex()) + as_exact_complex(
                    {"re": item.re, "im": item.im}
                )
            return out

        return HarmonicPolySymbol(load(self.analytic), load(self.coanalytic))


SymbolIn = Union[FourTermSymbolIn, HarmonicSymbolIn]


def symbol_to_harmonic(symbol: SymbolIn) -> HarmonicPolySymbol:
    if isinstance(symbol, FourTermSymbolIn):
        return to_harmonic(symbol.to_domain())
    return symbol.to_domain()


class HardySymbolIn(BaseModel):
    coeffs: Dict[int, CoefficientIn]

    def to_domain(self) -> HardyTrigSymbol:
        return HardyTrigSymbol({d: coefficient_to_exact(c) for d, c in self.coeffs.items()})


# -- requests ------------------------------------------------------------


class ProjectRequest(BaseModel):
    u: int = Field(ge=0)
    v: int = Field(ge=0)


class InnerRequest(BaseModel):
    u: int = Field(ge=0)
    v: int = Field(ge=0)
    w: int = Field(ge=0)
    t: int = Field(ge=0)


class ElementRequest(BaseModel):
    symbol: SymbolIn
    src: int = Field(ge=0)
    dst: int = Field(ge=0)


class ClosedFormRequest(BaseModel):
    a: int = Field(ge=0)
    b: int = Field(ge=0)
    k: int = Field(ge=0)
    l: int = Field(ge=0)
    c: CoefficientIn = "0"


class QFormRequest(BaseModel):
    symbol: FourTermSymbolIn
    k: int = Field(ge=0)


class CompressRequest(BaseModel):
    symbol: SymbolIn
    degrees: List[int]


class ScanRequest(BaseModel):
    symbol: SymbolIn
    max_degree: int = Field(ge=0, le=2000)


class SymbolOnlyRequest(BaseModel):
    symbol: FourTermSymbolIn


class ModelOverride(BaseModel):
    a: str
    rho: CoefficientIn

    @field_validator("a")
    @classmethod
    def _rational(cls, v: str) -> str:
        Fraction(v)
        return v


class SpectrumRequest(BaseModel):
    symbol: Optional[FourTermSymbolIn] = None
    model: Optional[ModelOverride] = None


class SectionsRequest(BaseModel):
    symbol: Optional[FourTermSymbolIn] = None
    model: Optional[ModelOverride] = None
    n: int = Field(ge=1, le=100_000)


class ConvergeRequest(BaseModel):
    symbol: FourTermSymbolIn
    k_list: List[int]


class ThresholdRequest(BaseModel):
    q_exp: int = 2
    max_k: int = Field(default=10, ge=0, le=10_000)


class HardyRequest(BaseModel):
    symbol: HardySymbolIn


class SweepVary(BaseModel):
    slot: str = Field(pattern="^(alpha|beta|gamma|delta)$")
    values: List[CoefficientIn]


class SweepRequest(BaseModel):
    base: FourTermSymbolIn
    vary: List[SweepVary]


# -- responses -----------------------------------------------------------


class MonomialTermOut(BaseModel):
    coeff: str
    degree: int


class ProjectResponse(BaseModel):
    result: Union[MonomialTermOut, str]


class ScalarResponse(BaseModel):
    result: ComplexValue


class QFormResponse(BaseModel):
    k: int
    l: int
    r: int
    a00: ComplexValue
    a10: ComplexValue
    a01: ComplexValue
    a11: ComplexValue
    a20: ComplexValue
    a02: ComplexValue


class MatrixResponse(BaseModel):
    dim: int
    entries: List[List[ComplexValue]]


class WitnessOut(BaseModel):
    degrees: List[int]
    vector: List[ComplexValue]
    value: ComplexValue


class ScanResponse(BaseModel):
    verdict: str
    max_degree: int
    witness: Optional[WitnessOut] = None
    explanation: str


class LimitsResponse(BaseModel):
    a: str
    rho: ComplexValue


class RadicalOut(BaseModel):
    rational: str
    coeff: str
    radicand: str
    float_value: float = Field(alias="float")
    exact: Optional[str] = None

    model_config = {"populate_by_name": True}


class SpectrumResponse(BaseModel):
    a: str
    abs_rho_squared: str
    abs_rho: str
    interval: List[str]
    lower: RadicalOut
    upper: RadicalOut


class SectionsResponse(BaseModel):
    n: int
    min_eigenvalue: float
    eigenvalues: List[float]


class ConvergenceRowOut(BaseModel):
    k: int
    a00: ComplexValue
    a10: ComplexValue
    a01: ComplexValue
    a11: ComplexValue
    a20: ComplexValue
    a02: ComplexValue
    dev_a00: float
    dev_a10: float
    dev_a11: float
    dev_a20: float
    dev_a02: float


class ConvergenceResponse(BaseModel):
    a: str
    rho: ComplexValue
    rows: List[ConvergenceRowOut]


class InequalityResponse(BaseModel):
    lhs: str
    rhs_squared: str
    holds: bool
    margin: float
    explanation: str


class LuShiResponse(BaseModel):
    paper_bound: InequalityResponse
    lu_shi_bound: InequalityResponse
    strictly_sharper: bool
    explanation: str


class ThresholdBoundOut(BaseModel):
    k: int
    bound: str


class ThresholdResponse(BaseModel):
    bounds: List[ThresholdBoundOut]
    supremum: str
    threshold_modulus: str
    explanation: str


class NormalityResponse(BaseModel):
    normal: bool
    type: Optional[str] = None
    lam: Optional[ComplexValue] = Field(default=None, alias="lambda")
    explanation: str

    model_config = {"populate_by_name": True}


class HardyNecessaryOut(BaseModel):
    fails: bool
    m: int
    N: int
    explanation: str


class HardyEqualModulusOut(BaseModel):
    status: str
    normal: bool
    m: int
    N: int
    explanation: str


class HardyResponse(BaseModel):
    necessary: HardyNecessaryOut
    equal_modulus: HardyEqualModulusOut


class SweepRowOut(BaseModel):
    index: int
    coefficients: Dict[str, ComplexValue]
    lhs: str
    rhs_squared: str
    holds: bool


class SweepResponse(BaseModel):
    rows: List[SweepRowOut]
    violations: int


class ErrorResponse(BaseModel):
    error: str
    detail: str
