"""FastAPI service exposing every operation as a JSON endpoint.

All computation is exact and stateless, so the service is a thin dispatch
layer over the core package; the CLI is a client of these endpoints.
Domain errors surface as HTTP 400 with the module-level error code.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from itertools import product

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import __version__
from ..arith import ExactComplex, format_rational
from ..asymptotics import (
    TridiagonalModel,
    convergence_report,
    finite_section_eigenvalues,
    limit_a,
    limit_rho,
    model_from_symbol,
    spectrum_interval,
)
from ..bergman import inner_product_projections, project
from ..commutator import (
    commutator_binomial_closed_form,
    commutator_element,
    compression_matrix,
    hypo_scan,
    quadratic_form_matrix,
)
from ..criteria import (
    classify_normal,
    hardy_equal_modulus,
    hardy_necessary,
    lu_shi_comparison,
    main_inequality,
    revealing_threshold,
    specific_case_inequality,
)
from ..errors import HypolabError
from . import schemas as sc

THREADS_ENV = "HYPOLAB_THREADS"


def _worker_count() -> int:
    raw = os.environ.get(THREADS_ENV, "")
    try:
        return max(1, int(raw))
    except ValueError:
        return min(8, os.cpu_count() or 1)


def _inequality_out(report) -> sc.InequalityResponse:
    return sc.InequalityResponse(
        lhs=format_rational(report.lhs),
        rhs_squared=format_rational(report.rhs_squared),
        holds=report.holds,
        margin=report.margin,
        explanation=report.explanation,
    )


def _radical_out(value) -> sc.RadicalOut:
    return sc.RadicalOut(**value.to_json())


def _interval_strings(interval) -> list:
    out = []
    for endpoint in (interval.lower, interval.upper):
        exact = endpoint.exact()
        out.append(format_rational(exact) if exact is not None else repr(endpoint.to_float()))
    return out


def _resolve_model(symbol, model) -> TridiagonalModel:
    if (symbol is None) == (model is None):
        raise HypolabError("provide exactly one of symbol or model")
    if symbol is not None:
        return model_from_symbol(symbol.to_domain())
    return TridiagonalModel(a=Fraction(model.a), rho=sc.coefficient_to_exact(model.rho))


def create_app() -> FastAPI:
    app = FastAPI(
        title="hypolab",
        version=__version__,
        description="Exact verdicts on hyponormality and normality of Bergman-space Toeplitz operators",
    )

    @app.exception_handler(HypolabError)
    async def domain_error(_: Request, exc: HypolabError) -> JSONResponse:
        return JSONResponse(status_code=400, content={"error": exc.code, "detail": str(exc)})

    @app.get("/health")
    def health() -> dict:
        return {"status": "ok", "version": __version__}

    @app.post("/project", response_model=sc.ProjectResponse)
    def project_endpoint(req: sc.ProjectRequest) -> sc.ProjectResponse:
        term = project(req.u, req.v)
        if term.is_zero():
            return sc.ProjectResponse(result="0")
        return sc.ProjectResponse(
            result=sc.MonomialTermOut(coeff=format_rational(term.coeff.real_part()), degree=term.degree)
        )

    @app.post("/inner", response_model=sc.ScalarResponse)
    def inner_endpoint(req: sc.InnerRequest) -> sc.ScalarResponse:
        value = inner_product_projections(req.u, req.v, req.w, req.t)
        return sc.ScalarResponse(result=sc.ComplexValue.from_exact(value))

    @app.post("/commutator-element", response_model=sc.ScalarResponse)
    def element_endpoint(req: sc.ElementRequest) -> sc.ScalarResponse:
        value = commutator_element(sc.symbol_to_harmonic(req.symbol), req.src, req.dst)
        return sc.ScalarResponse(result=sc.ComplexValue.from_exact(value))

    @app.post("/closed-form", response_model=sc.ScalarResponse)
    def closed_form_endpoint(req: sc.ClosedFormRequest) -> sc.ScalarResponse:
        value = commutator_binomial_closed_form(req.a, req.b, req.k, req.l, sc.coefficient_to_exact(req.c))
        return sc.ScalarResponse(result=sc.ComplexValue.from_exact(value))

    @app.post("/qform", response_model=sc.QFormResponse)
    def qform_endpoint(req: sc.QFormRequest) -> sc.QFormResponse:
        qf = quadratic_form_matrix(req.symbol.to_domain(), req.k)
        cv = sc.ComplexValue.from_exact
        return sc.QFormResponse(
            k=qf.k, l=qf.l, r=qf.r,
            a00=cv(qf.a00), a10=cv(qf.a10), a01=cv(qf.a01),
            a11=cv(qf.a11), a20=cv(qf.a20), a02=cv(qf.a02),
        )

    @app.post("/compress", response_model=sc.MatrixResponse)
    def compress_endpoint(req: sc.CompressRequest) -> sc.MatrixResponse:
        matrix = compression_matrix(sc.symbol_to_harmonic(req.symbol), req.degrees)
        return sc.MatrixResponse(
            dim=matrix.dim,
            entries=[[sc.ComplexValue.from_exact(x) for x in row] for row in matrix.rows()],
        )

    @app.post("/scan", response_model=sc.ScanResponse)
    def scan_endpoint(req: sc.ScanRequest) -> sc.ScanResponse:
        outcome = hypo_scan(sc.symbol_to_harmonic(req.symbol), req.max_degree)
        witness = None
        if outcome.refuted:
            ref = outcome.refutation
            witness = sc.WitnessOut(
                degrees=list(ref.degrees),
                vector=[sc.ComplexValue.from_exact(x) for x in ref.vector],
                value=sc.ComplexValue.from_exact(ref.value),
            )
            explanation = (
                "compression on degrees 0..%d is not positive semidefinite: "
                "the witness vector has exact form value %s < 0, so T_phi is not hyponormal"
                % (outcome.max_degree, ref.value)
            )
        else:
            explanation = (
                "compression on degrees 0..%d is positive semidefinite; inconclusive beyond this cutoff"
                % outcome.max_degree
            )
        return sc.ScanResponse(
            verdict=outcome.verdict, max_degree=outcome.max_degree, witness=witness, explanation=explanation
        )

    @app.post("/limits", response_model=sc.LimitsResponse)
    def limits_endpoint(req: sc.SymbolOnlyRequest) -> sc.LimitsResponse:
        s = req.symbol.to_domain()
        return sc.LimitsResponse(
            a=format_rational(limit_a(s)),
            rho=sc.ComplexValue.from_exact(limit_rho(s)),
        )

    @app.post("/spectrum", response_model=sc.SpectrumResponse)
    def spectrum_endpoint(req: sc.SpectrumRequest) -> sc.SpectrumResponse:
        model = _resolve_model(req.symbol, req.model)
        interval = spectrum_interval(model)
        abs_sq = model.abs_rho_sq
        from ..asymptotics import _rational_sqrt

        root = _rational_sqrt(abs_sq)
        abs_rho = format_rational(root) if root is not None else repr(model.abs_rho_float())
        return sc.SpectrumResponse(
            a=format_rational(model.a),
            abs_rho_squared=format_rational(abs_sq),
            abs_rho=abs_rho,
            interval=_interval_strings(interval),
            lower=_radical_out(interval.lower),
            upper=_radical_out(interval.upper),
        )

    @app.post("/sections", response_model=sc.SectionsResponse)
    def sections_endpoint(req: sc.SectionsRequest) -> sc.SectionsResponse:
        model = _resolve_model(req.symbol, req.model)
        eigenvalues = finite_section_eigenvalues(model, req.n)
        return sc.SectionsResponse(n=req.n, min_eigenvalue=eigenvalues[0], eigenvalues=eigenvalues)

    @app.post("/converge", response_model=sc.ConvergenceResponse)
    def converge_endpoint(req: sc.ConvergeRequest) -> sc.ConvergenceResponse:
        report = convergence_report(req.symbol.to_domain(), req.k_list)
        cv = sc.ComplexValue.from_exact
        rows = [
            sc.ConvergenceRowOut(
                k=row.k,
                a00=cv(row.scaled_a00), a10=cv(row.scaled_a10), a01=cv(row.scaled_a01),
                a11=cv(row.scaled_a11), a20=cv(row.scaled_a20), a02=cv(row.scaled_a02),
                dev_a00=row.dev_a00, dev_a10=row.dev_a10, dev_a11=row.dev_a11,
                dev_a20=row.dev_a20, dev_a02=row.dev_a02,
            )
            for row in report.rows
        ]
        return sc.ConvergenceResponse(a=format_rational(report.a), rho=cv(report.rho), rows=rows)

    @app.post("/check-main", response_model=sc.InequalityResponse)
    def check_main_endpoint(req: sc.SymbolOnlyRequest) -> sc.InequalityResponse:
        return _inequality_out(main_inequality(req.symbol.to_domain()))

    @app.post("/check-specific", response_model=sc.InequalityResponse)
    def check_specific_endpoint(req: sc.SymbolOnlyRequest) -> sc.InequalityResponse:
        return _inequality_out(specific_case_inequality(req.symbol.to_domain()))

    @app.post("/compare-lushi", response_model=sc.LuShiResponse)
    def compare_lushi_endpoint(req: sc.SymbolOnlyRequest) -> sc.LuShiResponse:
        comparison = lu_shi_comparison(req.symbol.to_domain())
        return sc.LuShiResponse(
            paper_bound=_inequality_out(comparison.paper_bound),
            lu_shi_bound=_inequality_out(comparison.lu_shi_bound),
            strictly_sharper=comparison.strictly_sharper,
            explanation=comparison.explanation,
        )

    @app.post("/threshold-example", response_model=sc.ThresholdResponse)
    def threshold_endpoint(req: sc.ThresholdRequest) -> sc.ThresholdResponse:
        report = revealing_threshold(q_exp=req.q_exp, max_k=req.max_k)
        return sc.ThresholdResponse(
            bounds=[sc.ThresholdBoundOut(k=k, bound=format_rational(b)) for k, b in report.bounds],
            supremum=format_rational(report.supremum),
            threshold_modulus=format_rational(report.threshold_modulus),
            explanation=report.explanation,
        )

    @app.post("/classify-normal", response_model=sc.NormalityResponse)
    def classify_endpoint(req: sc.SymbolOnlyRequest) -> sc.NormalityResponse:
        verdict = classify_normal(req.symbol.to_domain())
        return sc.NormalityResponse(
            normal=verdict.normal,
            type=verdict.form.value if verdict.form else None,
            **{"lambda": sc.ComplexValue.from_exact(verdict.lam) if verdict.lam else None},
            explanation=verdict.explanation,
        )

    @app.post("/hardy-check", response_model=sc.HardyResponse)
    def hardy_endpoint(req: sc.HardyRequest) -> sc.HardyResponse:
        symbol = req.symbol.to_domain()
        necessary = hardy_necessary(symbol)
        equal = hardy_equal_modulus(symbol)
        return sc.HardyResponse(
            necessary=sc.HardyNecessaryOut(
                fails=necessary.fails, m=necessary.m, N=necessary.N, explanation=necessary.explanation
            ),
            equal_modulus=sc.HardyEqualModulusOut(
                status=equal.status.value, normal=equal.normal, m=equal.m, N=equal.N,
                explanation=equal.explanation,
            ),
        )

    @app.post("/sweep", response_model=sc.SweepResponse)
    def sweep_endpoint(req: sc.SweepRequest) -> sc.SweepResponse:
        base = req.base.to_domain()
        slots = [v.slot for v in req.vary]
        grids = [[sc.coefficient_to_exact(x) for x in v.values] for v in req.vary]
        if not grids:
            points = [()]
        else:
            points = list(product(*grids))

        def evaluate(item):
            index, values = item
            replacements = dict(zip(slots, values))
            symbol = type(base)(
                alpha=replacements.get("alpha", base.alpha),
                n=base.n,
                beta=replacements.get("beta", base.beta),
                m=base.m,
                gamma=replacements.get("gamma", base.gamma),
                p=base.p,
                delta=replacements.get("delta", base.delta),
                q=base.q,
            )
            report = main_inequality(symbol)
            coeffs = {
                "alpha": symbol.alpha, "beta": symbol.beta,
                "gamma": symbol.gamma, "delta": symbol.delta,
            }
            return sc.SweepRowOut(
                index=index,
                coefficients={k: sc.ComplexValue.from_exact(v) for k, v in coeffs.items()},
                lhs=format_rational(report.lhs),
                rhs_squared=format_rational(report.rhs_squared),
                holds=report.holds,
            )

        with ThreadPoolExecutor(max_workers=_worker_count()) as pool:
            rows = list(pool.map(evaluate, enumerate(points)))
        rows.sort(key=lambda row: row.index)
        return sc.SweepResponse(rows=rows, violations=sum(1 for row in rows if not row.holds))

    return app


app = create_app()
