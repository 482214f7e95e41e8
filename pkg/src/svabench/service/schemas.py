"""Pydantic request/response models for the HTTP service."""

from __future__ import annotations

from typing import Optional

from pydantic import BaseModel, Field


class HealthResponse(BaseModel):
    status: str
    version: str


class ErrorInfo(BaseModel):
    kind: str
    message: str


# -- designs -------------------------------------------------------------


class DesignRequest(BaseModel):
    source: str


class DesignSummary(BaseModel):
    name: str
    inputs: list[str]
    outputs: list[str]
    registers: list[str]
    state_bits: int
    input_bits: int
    reset: bool


class ParseDesignResponse(BaseModel):
    ok: bool
    design: Optional[DesignSummary] = None
    error: Optional[ErrorInfo] = None


class StripResponse(BaseModel):
    text: str


# -- assertions ----------------------------------------------------------


class AssertionRequest(BaseModel):
    text: str


class ParseAssertionResponse(BaseModel):
    ok: bool
    canonical: Optional[str] = None
    normalized: Optional[str] = None  # overlapped form with absolute delays
    antecedent_delays: Optional[list[int]] = None
    consequent_cycle: Optional[int] = None
    error: Optional[ErrorInfo] = None


class ExtractRequest(BaseModel):
    text: str


class ExtractResponse(BaseModel):
    assertions: list[str]


# -- checking --------------------------------------------------------------


class CheckConfigModel(BaseModel):
    mode: str = "exhaustive"
    bit_budget: int = 24
    random_trials: int = 100_000
    reachability_depth: int = 64
    seed: int = 0


class CheckRequest(BaseModel):
    design_source: str
    assertions: list[str]
    config: CheckConfigModel = Field(default_factory=CheckConfigModel)


class TraceCycleModel(BaseModel):
    cycle: int
    signals: dict[str, str]


class VerdictModel(BaseModel):
    text: str
    kind: str
    bucket: str
    detail: str
    trace: Optional[list[TraceCycleModel]] = None


class CheckResponse(BaseModel):
    results: list[VerdictModel]


# -- benchmark ---------------------------------------------------------------


class ValidateRequest(BaseModel):
    root: str
    config: CheckConfigModel = Field(default_factory=CheckConfigModel)


class ValidateResponse(BaseModel):
    ok: bool
    report: dict
    text: str


class IceModel(BaseModel):
    name: str
    design_text: str
    assertions: list[str]


class SelectIcesRequest(BaseModel):
    root: str
    k: int
    seed: int = 0


class SelectIcesResponse(BaseModel):
    ices: list[IceModel]


# -- prompting ----------------------------------------------------------------


class PromptRequest(BaseModel):
    task_description: Optional[str] = None
    ices: list[IceModel]
    test_design: str
    allow_zero_shot: bool = False


class PromptResponse(BaseModel):
    prompt: str


# -- evaluation ----------------------------------------------------------------


class ModelSpec(BaseModel):
    model_id: str
    endpoint: str = ""


class GenParamsModel(BaseModel):
    max_output_tokens: int = 1024
    temperature: float = 1.0
    top_p: float = 0.95
    random_seed: int = 50


class EvalRequest(BaseModel):
    benchmark_root: str
    models: list[ModelSpec]
    shots: list[int]
    output_dir: str
    mock: Optional[str] = None
    resume: bool = False
    parallelism: int = 1
    ice_seed: int = 0
    task_description: Optional[str] = None
    gen: GenParamsModel = Field(default_factory=GenParamsModel)
    check: CheckConfigModel = Field(default_factory=CheckConfigModel)


class SummaryModel(BaseModel):
    model: str
    k: int
    counts: dict[str, int]
    fractions: dict[str, float]
    per_design: dict[str, dict[str, int]]
    no_output: list[str]
    skipped: list[str]


class EvalResponse(BaseModel):
    records_path: str
    metric_paths: list[str]
    summaries: list[SummaryModel]
    records_written: int
    records_reused: int


# -- reporting -------------------------------------------------------------


class ReportRequest(BaseModel):
    results_dir: str
    compare_dir: Optional[str] = None


class DeltaModel(BaseModel):
    model: str
    k: int
    deltas_pct: dict[str, Optional[float]]


class ReportResponse(BaseModel):
    summaries: list[SummaryModel]
    metric_paths: list[str]
    deltas: Optional[list[DeltaModel]] = None
