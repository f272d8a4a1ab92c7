import math
from fractions import Fraction

import numpy as np
import pytest

from hypolab.arith import ExactComplex
from hypolab.asymptotics import (
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
from hypolab.errors import PreconditionError, UnbalancedSymbolError
from hypolab.symbols import FourTermSymbol

from conftest import rand_balanced_symbol

FAMILY = FourTermSymbol(alpha=2, n=2, beta=1, m=1, gamma=1, p=1, delta=1, q=2)


def dense_section_eigenvalues(model: TridiagonalModel, N: int) -> np.ndarray:
    a = float(model.a)
    rho = model.rho.to_complex()
    matrix = np.zeros((N, N), dtype=np.complex128)
    for i in range(N):
        matrix[i, i] = a
        if i + 1 < N:
            matrix[i, i + 1] = rho
            matrix[i + 1, i] = np.conj(rho)
    return np.linalg.eigvalsh(matrix)


def test_limit_a_examples():
    assert limit_a(FAMILY) == Fraction(12)
    boundary = FourTermSymbol(alpha=0, n=2, beta=2, m=1, gamma=0, p=1, delta=1, q=2)
    assert limit_a(boundary) == 0
    zero = FourTermSymbol(alpha=0, n=2, beta=0, m=1, gamma=0, p=1, delta=0, q=2)
    assert limit_a(zero) == 0


def test_limit_a_does_not_need_balance():
    s = FourTermSymbol(alpha=1, n=3, beta=1, m=1, gamma=1, p=1, delta=1, q=2)
    assert limit_a(s) == 9 + 1 - 1 - 4


def test_limit_rho_examples():
    assert limit_rho(FAMILY) == ExactComplex(2)
    boundary = FourTermSymbol(alpha=0, n=2, beta=2, m=1, gamma=0, p=1, delta=1, q=2)
    assert limit_rho(boundary).is_zero()
    conj_check = FourTermSymbol(alpha=ExactComplex(0, 1), n=2, beta=1, m=1, gamma=0, p=1, delta=0, q=2)
    assert limit_rho(conj_check) == ExactComplex(0, -2)


def test_limit_rho_requires_balance():
    s = FourTermSymbol(alpha=1, n=3, beta=1, m=1, gamma=1, p=1, delta=1, q=2)
    with pytest.raises(UnbalancedSymbolError):
        limit_rho(s)


def test_limits_match_scaled_entries_numerically():
    # k^3 A_00 -> a and k^3 A_10 -> rho along the family, checked at large k
    s = FAMILY
    report = convergence_report(s, [10**6])
    row = report.rows[0]
    assert abs(float(row.scaled_a00.re) - 12.0) < 1e-4 * 12.0
    assert abs(float(row.scaled_a10.re) - 2.0) < 1e-4 * 2.0


def test_spectrum_interval_examples():
    interval = spectrum_interval(TridiagonalModel(a=Fraction(2), rho=ExactComplex(1)))
    assert interval.lower.exact() == 0 and interval.upper.exact() == 4

    interval = spectrum_interval(TridiagonalModel(a=Fraction(0), rho=ExactComplex(0)))
    assert interval.lower.exact() == 0 and interval.upper.exact() == 0

    interval = spectrum_interval(model_from_symbol(FAMILY))
    assert interval.lower.exact() == 8 and interval.upper.exact() == 16


def test_spectrum_interval_symbolic_endpoint():
    interval = spectrum_interval(TridiagonalModel(a=Fraction(1), rho=ExactComplex(1, 1)))
    assert interval.lower.exact() is None  # 1 - 2*sqrt(2)
    assert interval.lower.to_float() == pytest.approx(1 - 2 * math.sqrt(2))


def test_sections_match_dense_solver():
    model = TridiagonalModel(a=Fraction(2), rho=ExactComplex(1))
    for N in range(1, 51):
        ours = finite_section_eigenvalues(model, N)
        dense = dense_section_eigenvalues(model, N)
        assert max(abs(x - y) for x, y in zip(ours, dense)) < 1e-10
        assert finite_section_min_eig(model, N) == pytest.approx(dense[0], abs=1e-10)


def test_sections_complex_rho_match_dense_solver():
    model = TridiagonalModel(a=Fraction(1, 3), rho=ExactComplex(Fraction(1, 2), Fraction(-2, 3)))
    for N in (1, 2, 5, 17, 40):
        dense = dense_section_eigenvalues(model, N)
        ours = finite_section_eigenvalues(model, N)
        assert max(abs(x - y) for x, y in zip(ours, dense)) < 1e-10


def test_section_diagonal_case():
    model = TridiagonalModel(a=Fraction(7, 2), rho=ExactComplex(0))
    for N in (1, 3, 10):
        assert finite_section_min_eig(model, N) == pytest.approx(3.5)


def test_section_minima_decrease_to_left_endpoint():
    model = TridiagonalModel(a=Fraction(2), rho=ExactComplex(1))
    values = [finite_section_min_eig(model, N) for N in (2, 10, 100, 1000, 2000)]
    assert all(x > y for x, y in zip(values, values[1:]))
    assert values[-1] == pytest.approx(0.0, abs=1e-5)


def test_left_endpoint_by_richardson_extrapolation(rng):
    # min over N of the section minima is the left endpoint; kill the
    # 1/(N+1)^2 term with two sections
    for _ in range(10):
        model = TridiagonalModel(
            a=Fraction(rng.randint(-5, 10), rng.randint(1, 3)),
            rho=ExactComplex(rng.randint(-3, 3), rng.randint(-3, 3)),
        )
        e1, n1 = finite_section_min_eig(model, 1000), 1000
        e2, n2 = finite_section_min_eig(model, 2000), 2000
        w1, w2 = (n1 + 1) ** 2, (n2 + 1) ** 2
        extrapolated = (e2 * w2 - e1 * w1) / (w2 - w1)
        assert abs(extrapolated - spectrum_interval(model).lower.to_float()) < 1e-6


def test_bridge_finds_negative_section(rng):
    found_any = False
    for _ in range(50):
        model = TridiagonalModel(
            a=Fraction(rng.randint(-4, 8), rng.randint(1, 3)),
            rho=ExactComplex(Fraction(rng.randint(-4, 4), rng.randint(1, 2)), Fraction(rng.randint(-4, 4), 2)),
        )
        N = find_negative_section(model)
        if model.dominates():
            assert N is None
            continue
        found_any = True
        assert finite_section_min_eig(model, N) < 0
        if model.a >= 0 and model.abs_rho_sq > 0:
            bound = math.ceil(math.pi / math.acos(float(model.a) / (2 * model.abs_rho_float())))
            assert N <= bound + 1  # +1 absorbs float rounding in the guard
    assert found_any


def test_bridge_negative_diagonal_is_immediate():
    assert find_negative_section(TridiagonalModel(a=Fraction(-1), rho=ExactComplex(5))) == 1


def test_convergence_report_rate(rng):
    # deviations decay like 1/k: doubling k beats a 0.6 factor
    for _ in range(8):
        s = rand_balanced_symbol(rng, max_exp=4)
        report = convergence_report(s, [50, 100, 200])
        for low, high in ((0, 1), (1, 2)):
            for field in ("dev_a00", "dev_a10", "dev_a11", "dev_a20", "dev_a02"):
                d_low = getattr(report.rows[low], field)
                d_high = getattr(report.rows[high], field)
                if d_low > 1e-15:
                    assert d_high <= 0.6 * d_low


def test_convergence_fitted_constant(rng):
    # a single constant fitted at k=100 (with slack for the increasing
    # k*dev(k) trend) covers k in {200, 400, 800}
    for _ in range(6):
        s = rand_balanced_symbol(rng, max_exp=4)
        base = convergence_report(s, [100]).rows[0]
        rest = convergence_report(s, [200, 400, 800]).rows
        for field in ("dev_a00", "dev_a10", "dev_a11", "dev_a20", "dev_a02"):
            constant = 1.5 * 100 * getattr(base, field)
            for row in rest:
                assert row.k * getattr(row, field) <= constant + 1e-12


def test_convergence_a01_exactly_zero():
    report = convergence_report(FAMILY, [4, 10, 100])
    for row in report.rows:
        assert row.scaled_a01.is_zero()


def test_convergence_zero_symbol():
    zero = FourTermSymbol(alpha=0, n=2, beta=0, m=1, gamma=0, p=1, delta=0, q=2)
    report = convergence_report(zero, [5, 50])
    for row in report.rows:
        for field in ("scaled_a00", "scaled_a10", "scaled_a01", "scaled_a11", "scaled_a20", "scaled_a02"):
            assert getattr(row, field).is_zero()
        assert row.dev_a00 == 0.0


def test_convergence_rejects_small_k():
    with pytest.raises(PreconditionError):
        convergence_report(FAMILY, [1])


def test_section_guards():
    model = TridiagonalModel(a=Fraction(1), rho=ExactComplex(1))
    with pytest.raises(PreconditionError):
        finite_section_min_eig(model, 0)
    with pytest.raises(PreconditionError):
        finite_section_eigenvalues(model, 0)
