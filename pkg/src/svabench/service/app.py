"""FastAPI service wrapping the checking and evaluation core.

Domain outcomes (parse failures, verdicts) are data, returned with status
200; configuration problems (missing directories, bad requests) map to 400.
"""

from __future__ import annotations

from pathlib import Path

from fastapi import FastAPI, HTTPException

from .. import __version__
from ..bench.store import BenchmarkError, load_benchmark, select_ices
from ..bench.validate import validate
from ..checker.engine import check_batch
from ..checker.verdict import CheckConfig, classify
from ..evalrun import RunConfig, run_eval
from ..pipeline.client import GenParams
from ..pipeline.prompt import DEFAULT_TASK_DESCRIPTION, EmptyExampleSet, IceTuple, build_prompt
from ..reporting.emit import IoError, emit, read_records
from ..reporting.metrics import KeyMismatch, aggregate, compare
from ..rtl.elaborate import elaborate
from ..rtl.errors import RtlError
from ..rtl.parser import parse_design
from ..rtl.strip import strip_for_prompt
from ..sva.errors import SvaError
from ..sva.extract import extract_assertions
from ..sva.parser import parse_assertion
from ..sva.transform import desugar, render
from . import schemas as s


def _check_config(model: s.CheckConfigModel) -> CheckConfig:
    return CheckConfig(
        mode=model.mode,
        bit_budget=model.bit_budget,
        random_trials=model.random_trials,
        reachability_depth=model.reachability_depth,
        seed=model.seed,
    )


def _summary_models(summaries) -> list[s.SummaryModel]:
    return [
        s.SummaryModel(
            model=summary.model_id,
            k=summary.k,
            counts=summary.counts,
            fractions=summary.fractions,
            per_design=summary.per_design,
            no_output=summary.no_output,
            skipped=summary.skipped,
        )
        for summary in summaries
    ]


def create_app() -> FastAPI:
    app = FastAPI(
        title="svabench",
        version=__version__,
        description="Formal evaluation service for machine-generated assertions",
    )

    @app.get("/health", response_model=s.HealthResponse)
    def health() -> s.HealthResponse:
        return s.HealthResponse(status="ok", version=__version__)

    @app.post("/design/parse", response_model=s.ParseDesignResponse)
    def design_parse(request: s.DesignRequest) -> s.ParseDesignResponse:
        try:
            design = parse_design(request.source)
            ts = elaborate(design)
        except RtlError as exc:
            return s.ParseDesignResponse(
                ok=False, error=s.ErrorInfo(kind=type(exc).__name__, message=str(exc))
            )
        return s.ParseDesignResponse(
            ok=True,
            design=s.DesignSummary(
                name=design.name,
                inputs=design.input_names,
                outputs=design.output_names,
                registers=design.register_names,
                state_bits=ts.state_bits,
                input_bits=ts.input_bits,
                reset=ts.has_reset,
            ),
        )

    @app.post("/design/strip", response_model=s.StripResponse)
    def design_strip(request: s.DesignRequest) -> s.StripResponse:
        try:
            return s.StripResponse(text=strip_for_prompt(request.source))
        except RtlError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc

    @app.post("/assertion/parse", response_model=s.ParseAssertionResponse)
    def assertion_parse(request: s.AssertionRequest) -> s.ParseAssertionResponse:
        try:
            assertion = parse_assertion(request.text)
        except SvaError as exc:
            return s.ParseAssertionResponse(
                ok=False, error=s.ErrorInfo(kind=type(exc).__name__, message=str(exc))
            )
        normal = desugar(assertion)
        return s.ParseAssertionResponse(
            ok=True,
            canonical=render(assertion),
            normalized=render(normal),
            antecedent_delays=[t.delay for t in normal.antecedent],
            consequent_cycle=normal.consequent_cycle,
        )

    @app.post("/assertion/extract", response_model=s.ExtractResponse)
    def assertion_extract(request: s.ExtractRequest) -> s.ExtractResponse:
        return s.ExtractResponse(assertions=extract_assertions(request.text))

    @app.post("/check", response_model=s.CheckResponse)
    def check_endpoint(request: s.CheckRequest) -> s.CheckResponse:
        try:
            ts = elaborate(parse_design(request.design_source))
        except RtlError as exc:
            raise HTTPException(
                status_code=400,
                detail={"kind": type(exc).__name__, "message": str(exc)},
            ) from exc
        results = check_batch(ts, request.assertions, _check_config(request.config))
        models = []
        for text, verdict in results:
            trace = None
            if verdict.trace is not None:
                trace = [s.TraceCycleModel(**cycle) for cycle in verdict.trace.to_json_obj()]
            models.append(
                s.VerdictModel(
                    text=text,
                    kind=verdict.kind.value,
                    bucket=classify(verdict),
                    detail=verdict.detail,
                    trace=trace,
                )
            )
        return s.CheckResponse(results=models)

    @app.post("/benchmark/validate", response_model=s.ValidateResponse)
    def benchmark_validate(request: s.ValidateRequest) -> s.ValidateResponse:
        try:
            benchmark = load_benchmark(request.root)
        except BenchmarkError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc
        report = validate(benchmark, _check_config(request.config))
        return s.ValidateResponse(ok=report.ok, report=report.to_json_obj(), text=report.to_text())

    @app.post("/benchmark/ices", response_model=s.SelectIcesResponse)
    def benchmark_ices(request: s.SelectIcesRequest) -> s.SelectIcesResponse:
        try:
            benchmark = load_benchmark(request.root)
            ices = select_ices(benchmark, request.k, request.seed)
        except BenchmarkError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc
        return s.SelectIcesResponse(
            ices=[
                s.IceModel(name=i.name, design_text=i.design_text, assertions=i.assertions)
                for i in ices
            ]
        )

    @app.post("/prompt/build", response_model=s.PromptResponse)
    def prompt_build(request: s.PromptRequest) -> s.PromptResponse:
        ices = [
            IceTuple(name=i.name, design_text=i.design_text, assertions=i.assertions)
            for i in request.ices
        ]
        try:
            prompt = build_prompt(
                request.task_description or DEFAULT_TASK_DESCRIPTION,
                ices,
                request.test_design,
                allow_zero_shot=request.allow_zero_shot,
            )
        except EmptyExampleSet as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc
        return s.PromptResponse(prompt=prompt.render())

    @app.post("/eval", response_model=s.EvalResponse)
    def eval_endpoint(request: s.EvalRequest) -> s.EvalResponse:
        cfg = RunConfig(
            benchmark_root=Path(request.benchmark_root),
            models=[(m.model_id, m.endpoint) for m in request.models],
            shots=request.shots,
            output_dir=Path(request.output_dir),
            gen_params=GenParams(
                max_output_tokens=request.gen.max_output_tokens,
                temperature=request.gen.temperature,
                top_p=request.gen.top_p,
                random_seed=request.gen.random_seed,
            ),
            check_config=_check_config(request.check),
            parallelism=request.parallelism,
            task_description=request.task_description or DEFAULT_TASK_DESCRIPTION,
            ice_seed=request.ice_seed,
            resume=request.resume,
            mock=request.mock,
        )
        try:
            result = run_eval(cfg)
        except (BenchmarkError, IoError) as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc
        return s.EvalResponse(
            records_path=str(result.records_path),
            metric_paths=[str(p) for p in result.metric_paths],
            summaries=_summary_models(result.summaries),
            records_written=len(result.records),
            records_reused=result.reused,
        )

    @app.post("/report", response_model=s.ReportResponse)
    def report_endpoint(request: s.ReportRequest) -> s.ReportResponse:
        results_dir = Path(request.results_dir)
        records_path = results_dir / "records.jsonl"
        if not records_path.is_file():
            raise HTTPException(status_code=400, detail=f"no records.jsonl in {results_dir}")
        try:
            summaries = aggregate(read_records(records_path))
            metric_paths = emit(summaries, results_dir)
        except IoError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from exc
        deltas = None
        if request.compare_dir is not None:
            baseline_path = Path(request.compare_dir) / "records.jsonl"
            if not baseline_path.is_file():
                raise HTTPException(
                    status_code=400, detail=f"no records.jsonl in {request.compare_dir}"
                )
            baseline = aggregate(read_records(baseline_path))
            try:
                delta_report = compare(baseline, summaries)
            except KeyMismatch as exc:
                raise HTTPException(status_code=400, detail=str(exc)) from exc
            deltas = [
                s.DeltaModel(model=d.model_id, k=d.k, deltas_pct=d.deltas)
                for d in delta_report.entries
            ]
        return s.ReportResponse(
            summaries=_summary_models(summaries),
            metric_paths=[str(p) for p in metric_paths],
            deltas=deltas,
        )

    return app


app = create_app()
