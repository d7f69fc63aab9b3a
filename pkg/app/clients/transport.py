"""Retrying JSON-over-HTTP POST shared by both model clients."""

import logging
import threading
import time

import requests
from pydantic import BaseModel, ValidationError

from app.exceptions import BackendResponseError, BackendUnreachableError, PayloadError
from app.models.generation import BackendEndpoint

logger = logging.getLogger(__name__)

INITIAL_BACKOFF = 0.25


def _is_retryable_status(status: int) -> bool:
    return status == 429 or status >= 500


class JsonTransport:
    """POSTs pydantic bodies to one endpoint and validates the reply.

    Connection failures, timeouts, HTTP 429 and 5xx are retried exactly
    ``endpoint.max_retries`` times with backoff 0.25 s, 0.5 s, 1 s, ...
    In-flight requests are capped at ``endpoint.concurrency``.
    """

    def __init__(self, endpoint: BackendEndpoint, session: requests.Session | None = None):
        self.endpoint = endpoint
        self._session = session or requests.Session()
        self._slots = threading.BoundedSemaphore(endpoint.concurrency)

    def _headers(self) -> dict[str, str]:
        headers = {"Content-Type": "application/json"}
        if self.endpoint.auth_token is not None:
            headers["Authorization"] = f"Bearer {self.endpoint.auth_token.get_secret_value()}"
        return headers

    def post(self, path: str, body: BaseModel, response_model: type[BaseModel]) -> BaseModel:
        url = self.endpoint.url(path)
        attempts = self.endpoint.max_retries + 1
        last_error = ""
        for attempt in range(attempts):
            try:
                with self._slots:
                    response = self._session.post(
                        url,
                        data=body.model_dump_json(),
                        headers=self._headers(),
                        timeout=self.endpoint.timeout,
                    )
            except (requests.ConnectionError, requests.Timeout) as exc:
                last_error = f"{type(exc).__name__}: {exc}"
            else:
                if response.ok:
                    return self._parse(url, response, response_model)
                message = _error_message(response)
                if not _is_retryable_status(response.status_code):
                    raise BackendResponseError(url, response.status_code, message)
                last_error = f"HTTP {response.status_code}: {message}"

            if attempt < attempts - 1:
                backoff = INITIAL_BACKOFF * (2**attempt)
                logger.warning(
                    "Request to %s failed (attempt %d/%d): %s. Retrying in %.2fs",
                    url, attempt + 1, attempts, last_error, backoff,
                )
                time.sleep(backoff)

        raise BackendUnreachableError(url, attempts, last_error)

    @staticmethod
    def _parse(url: str, response: requests.Response, response_model: type[BaseModel]) -> BaseModel:
        try:
            return response_model.model_validate_json(response.content)
        except ValidationError as exc:
            raise PayloadError(url, f"reply does not match {response_model.__name__}: {exc}") from exc


def _error_message(response: requests.Response) -> str:
    try:
        payload = response.json()
    except ValueError:
        return response.text[:200] or response.reason or ""
    if isinstance(payload, dict) and "error" in payload:
        return str(payload["error"])
    return response.text[:200]
