"""hypolab: exact certification of hyponormality and normality for Toeplitz
operators with harmonic polynomial symbols on the Bergman space."""

from .arith import (
    ExactComplex,
    FloatPsdReport,
    HermitianExactMatrix,
    LdlFactorization,
    PsdCertificate,
    PsdVerdict,
    as_exact_complex,
    format_rational,
    parse_complex,
    parse_rational,
    psd_exact,
    psd_float,
)
from .asymptotics import (
    ConvergenceReport,
    RadicalValue,
    SpectrumInterval,
    TridiagonalModel,
    convergence_report,
    find_negative_section,
    finite_section_eigenvalues,
    finite_section_min_eig,
    limit_a,
    limit_rho,
    model_from_symbol,
    spectrum_interval,
)
from .bergman import MonomialTerm, inner_product_projections, monomial_norm_sq, project
from .commutator import (
    QuadraticFormMatrix3,
    ScanOutcome,
    ScanRefutation,
    commutator_binomial_closed_form,
    commutator_element,
    compression_matrix,
    hypo_scan,
    min_ladder_degree,
    quadratic_form_matrix,
)
from .criteria import (
    DEFAULT_SCAN_CAP,
    HardyEqualModulusReport,
    HardyNecessaryReport,
    HardyStatus,
    HardyTrigSymbol,
    InequalityReport,
    LuShiComparison,
    NormalForm,
    NormalityVerdict,
    ThresholdReport,
    classify_normal,
    hardy_equal_modulus,
    hardy_necessary,
    lu_shi_comparison,
    main_inequality,
    revealing_threshold,
    specific_case_inequality,
    threshold_bound_at,
)
from .errors import (
    EigenSolverError,
    HypolabError,
    InputFormatError,
    NonHermitianError,
    PreconditionError,
    ShapeMismatchError,
    UnbalancedSymbolError,
    UnsupportedCaseError,
)
from .symbols import FourTermSymbol, HarmonicPolySymbol, to_harmonic, validate_balanced

__version__ = "0.1.0"
