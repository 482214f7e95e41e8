"""Chat-completion clients: HTTP endpoint and offline mock replay.

Request schema (POST to the configured endpoint)::

    {"model": "...", "messages": [{"role": "user", "content": "..."}],
     "max_tokens": 1024, "temperature": 1.0, "top_p": 0.95, "seed": 50}

Response schema::

    {"choices": [{"message": {"content": "..."}}], "usage": {...}}

Credentials come from ``SVABENCH_API_KEY`` and the default endpoint from
``SVABENCH_API_URL``. A ``mock://<directory>`` endpoint replays canned
responses for fully offline runs: generation requests read
``<design>.k<k>.txt`` and correction requests are answered from
``corrections.json`` (a list of ``{"match": substring, "reply": text}``
entries, ``"*"`` matching anything).
"""

from __future__ import annotations

import json
import os
import time
from dataclasses import dataclass, field
from pathlib import Path

import httpx


class TransportError(Exception):
    pass


class AuthError(TransportError):
    pass


class ModelRefusal(Exception):
    """The endpoint answered with an empty completion."""


@dataclass(frozen=True)
class GenParams:
    max_output_tokens: int = 1024
    temperature: float = 1.0
    top_p: float = 0.95
    random_seed: int = 50
    model_id: str = ""
    endpoint: str = ""


@dataclass(frozen=True)
class CompletionRequest:
    prompt: str
    params: GenParams
    purpose: str = "generate"  # 'generate' | 'correct'
    context: dict = field(default_factory=dict)


@dataclass(frozen=True)
class CompletionResult:
    text: str
    attempts: int = 1
    usage: dict | None = None


class HttpCompletionClient:
    """JSON-over-HTTP client with exponential backoff (3 attempts)."""

    def __init__(
        self,
        endpoint: str | None = None,
        api_key: str | None = None,
        max_attempts: int = 3,
        backoff_base: float = 0.5,
        sleep=time.sleep,
        transport: httpx.BaseTransport | None = None,
    ):
        self.endpoint = endpoint or os.environ.get("SVABENCH_API_URL", "")
        self.api_key = api_key if api_key is not None else os.environ.get("SVABENCH_API_KEY")
        self.max_attempts = max_attempts
        self.backoff_base = backoff_base
        self.sleep = sleep
        self._client = httpx.Client(transport=transport, timeout=60.0)

    def complete(self, request: CompletionRequest) -> CompletionResult:
        endpoint = request.params.endpoint or self.endpoint
        if not endpoint:
            raise TransportError("no endpoint configured (set SVABENCH_API_URL)")
        payload = {
            "model": request.params.model_id,
            "messages": [{"role": "user", "content": request.prompt}],
            "max_tokens": request.params.max_output_tokens,
            "temperature": request.params.temperature,
            "top_p": request.params.top_p,
            "seed": request.params.random_seed,
        }
        headers = {}
        if self.api_key:
            headers["Authorization"] = f"Bearer {self.api_key}"
        last_error: Exception | None = None
        for attempt in range(1, self.max_attempts + 1):
            try:
                response = self._client.post(endpoint, json=payload, headers=headers)
            except httpx.HTTPError as exc:
                last_error = exc
            else:
                if response.status_code in (401, 403):
                    raise AuthError(f"endpoint rejected credentials ({response.status_code})")
                if response.status_code == 429 or response.status_code >= 500:
                    last_error = TransportError(f"HTTP {response.status_code}")
                elif response.status_code != 200:
                    raise TransportError(f"HTTP {response.status_code}: {response.text[:200]}")
                else:
                    return self._parse(response, attempt)
            if attempt < self.max_attempts:
                self.sleep(self.backoff_base * (2 ** (attempt - 1)))
        raise TransportError(f"gave up after {self.max_attempts} attempts: {last_error}")

    def _parse(self, response: httpx.Response, attempts: int) -> CompletionResult:
        try:
            body = response.json()
            text = body["choices"][0]["message"]["content"]
        except (json.JSONDecodeError, KeyError, IndexError, TypeError) as exc:
            raise TransportError(f"malformed completion response: {exc}") from exc
        if not text:
            raise ModelRefusal("endpoint returned an empty completion")
        return CompletionResult(text=text, attempts=attempts, usage=body.get("usage"))


class MockCompletionClient:
    """Replays canned responses from a directory; fully offline."""

    def __init__(self, directory: str | Path):
        self.directory = Path(directory)
        if not self.directory.is_dir():
            raise TransportError(f"mock corpus directory not found: {self.directory}")
        corrections_path = self.directory / "corrections.json"
        self.corrections: list[dict] = []
        if corrections_path.is_file():
            self.corrections = json.loads(corrections_path.read_text(encoding="utf-8"))

    def complete(self, request: CompletionRequest) -> CompletionResult:
        if request.purpose == "correct":
            broken = request.context.get("assertion", "")
            for entry in self.corrections:
                pattern = entry.get("match", "*")
                if pattern == "*" or pattern in broken:
                    return CompletionResult(text=entry.get("reply", ""))
            return CompletionResult(text="")
        design = request.context.get("design", "")
        k = request.context.get("k", 0)
        path = self.directory / f"{design}.k{k}.txt"
        if not path.is_file():
            raise TransportError(f"no canned response for design '{design}' at k={k} ({path})")
        return CompletionResult(text=path.read_text(encoding="utf-8"))


def make_client(endpoint: str, **kwargs):
    """Client factory: ``mock://<dir>`` for replay, anything else is HTTP."""
    if endpoint.startswith("mock://"):
        return MockCompletionClient(endpoint[len("mock://") :])
    return HttpCompletionClient(endpoint=endpoint, **kwargs)
