"""k-shot prompting, completion clients, and the evaluation pipeline."""

from .client import (
    AuthError,
    CompletionRequest,
    CompletionResult,
    GenParams,
    HttpCompletionClient,
    MockCompletionClient,
    ModelRefusal,
    TransportError,
    make_client,
)
from .prompt import DEFAULT_TASK_DESCRIPTION, EmptyExampleSet, IceTuple, Prompt, build_prompt
from .run import AssertionOutcome, EvalRecord, correct_syntax, run_pipeline

__all__ = [
    "GenParams",
    "CompletionRequest",
    "CompletionResult",
    "TransportError",
    "AuthError",
    "ModelRefusal",
    "HttpCompletionClient",
    "MockCompletionClient",
    "make_client",
    "IceTuple",
    "Prompt",
    "EmptyExampleSet",
    "DEFAULT_TASK_DESCRIPTION",
    "build_prompt",
    "AssertionOutcome",
    "EvalRecord",
    "correct_syntax",
    "run_pipeline",
]
