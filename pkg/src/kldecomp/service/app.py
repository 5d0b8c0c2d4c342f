"""The FastAPI app wrapping the table engine.

The app owns a `TableStore` (and with it the cache directory); clients
only ever exchange JSON.  Argument problems surface as 400 with a
``{"code": "bad-argument", ...}`` detail, a broken cache file as 500
with ``{"code": "cache-corrupt", "path": ...}``, and internal invariant
violations as 500 with ``{"code": "consistency-failure", ...}``, which
is what the CLI maps onto its exit codes.
"""

from __future__ import annotations

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .. import __version__
from ..bench import run_bench
from ..coxeter import resolve_policy
from ..errors import CacheCorruptError, CartanError, ConsistencyError, WordError, WordTooLongError
from ..hecke import HeckeAlgebra, render_combination
from ..laurent import auto_q_display
from ..tables import TableStore
from ..verify import expand_check_names, run_checks
from .schemas import (
    BasisRequest,
    BasisResponse,
    BasisTerm,
    BenchRequest,
    BenchResponse,
    BenchRow,
    CheckOutcome,
    HealthResponse,
    TableRequest,
    TableResponse,
    VerifyRequest,
    VerifyResponse,
)


def create_app(cache_dir=None) -> FastAPI:
    app = FastAPI(title="kldecomp", version=__version__)
    store = TableStore(cache_dir)
    app.state.store = store

    @app.exception_handler(CartanError)
    @app.exception_handler(WordTooLongError)
    def _bad_argument(request: Request, exc: Exception):
        return JSONResponse(
            status_code=400,
            content={"detail": {"code": "bad-argument", "message": str(exc)}},
        )

    @app.exception_handler(WordError)
    def _bad_word(request: Request, exc: WordError):
        detail = {"code": "bad-argument", "message": str(exc)}
        if exc.position is not None:
            detail["position"] = exc.position
        return JSONResponse(status_code=400, content={"detail": detail})

    @app.exception_handler(CacheCorruptError)
    def _cache_corrupt(request: Request, exc: CacheCorruptError):
        return JSONResponse(
            status_code=500,
            content={"detail": {"code": "cache-corrupt", "message": str(exc),
                                "path": str(exc.path)}},
        )

    @app.exception_handler(ConsistencyError)
    def _inconsistent(request: Request, exc: ConsistencyError):
        return JSONResponse(
            status_code=500,
            content={"detail": {"code": "consistency-failure", "message": str(exc)}},
        )

    @app.get("/health", response_model=HealthResponse)
    def health() -> HealthResponse:
        return HealthResponse(status="ok", version=__version__)

    @app.post("/table", response_model=TableResponse)
    def table(req: TableRequest) -> TableResponse:
        system = store.system(req.cartan)
        policy = resolve_policy(system, req.policy.name, req.policy.words)
        payload = store.payload(req.cartan, policy, kinds=req.kinds,
                                refresh=req.refresh, jobs=req.jobs)
        return TableResponse(**payload)

    @app.post("/verify", response_model=VerifyResponse)
    def verify(req: VerifyRequest) -> VerifyResponse:
        system = store.system(req.cartan)
        policy = resolve_policy(system, req.policy.name, req.policy.words)
        try:
            names = expand_check_names(req.checks)
        except ValueError as exc:
            raise CartanError(str(exc)) from exc
        results = run_checks(system, names, policy, jobs=req.jobs)
        outcomes = [CheckOutcome(name=r.name, passed=r.passed, detail=r.detail,
                                 counterexample=r.counterexample) for r in results]
        return VerifyResponse(cartan=system.cartan.name,
                              passed=all(r.passed for r in results),
                              checks=outcomes)

    @app.post("/basis", response_model=BasisResponse)
    def basis(req: BasisRequest) -> BasisResponse:
        system = store.system(req.cartan)
        policy = resolve_policy(system, req.policy.name, req.policy.words)
        element = system.require_reduced(tuple(req.element))
        tables = store.tables(req.cartan, policy)
        algebra = HeckeAlgebra(system)
        if req.basis == "B":
            h = algebra.deodhar_basis_element(element, tables.q)
        else:
            h = algebra.kl_basis_element(element, tables.p)
        if req.express_in == "T":
            terms = h.terms
            symbol = "T"
        else:
            terms = algebra.express_in_kl_basis(h, tables.p)
            symbol = "C"
        ordered = sorted(terms, key=lambda w: (-w.length, w.word))
        out_terms = []
        for w in ordered:
            var, shown = auto_q_display(terms[w])
            out_terms.append(BasisTerm(word=list(w.word), var=var, coeffs=shown.coeffs_json()))
        return BasisResponse(cartan=system.cartan.name,
                             rendered=render_combination(terms, symbol),
                             terms=out_terms)

    @app.post("/bench", response_model=BenchResponse)
    def bench(req: BenchRequest) -> BenchResponse:
        system = store.system(req.cartan)
        rows = run_bench(system, engines=tuple(req.engines), max_length=req.max_length)
        return BenchResponse(cartan=system.cartan.name,
                             rows=[BenchRow(**row) for row in rows])

    return app
