"""Thin client used by the CLI to talk to the service.

By default the app is mounted in-process (no network, no server process),
which keeps offline runs reproducible; set ``SVABENCH_SERVICE_URL`` or pass
``--service-url`` to talk to a remote instance instead.
"""

from __future__ import annotations

import os
from typing import Any

import httpx


class ServiceError(Exception):
    """Non-2xx response from the service."""

    def __init__(self, status_code: int, detail: Any):
        self.status_code = status_code
        self.detail = detail
        super().__init__(f"HTTP {status_code}: {detail}")


class ServiceClient:
    def __init__(self, base_url: str | None = None):
        base_url = base_url or os.environ.get("SVABENCH_SERVICE_URL")
        if base_url:
            self._client = httpx.Client(base_url=base_url, timeout=None)
        else:
            import warnings

            with warnings.catch_warnings():
                warnings.simplefilter("ignore")
                from fastapi.testclient import TestClient

            from .app import app

            self._client = TestClient(app)

    def get(self, path: str) -> dict:
        return self._unwrap(self._client.get(path))

    def post(self, path: str, payload: dict) -> dict:
        return self._unwrap(self._client.post(path, json=payload))

    @staticmethod
    def _unwrap(response: httpx.Response) -> dict:
        if response.status_code >= 400:
            try:
                detail = response.json().get("detail", response.text)
            except ValueError:
                detail = response.text
            raise ServiceError(response.status_code, detail)
        return response.json()
