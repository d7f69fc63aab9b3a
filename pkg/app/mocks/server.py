"""Threaded HTTP server speaking the prompter and img2img wire contract."""

import hmac
import logging
import threading
from http import HTTPStatus
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer

from pydantic import BaseModel, ValidationError

from app.clients.wire import (
    HEALTH_PATH,
    IMG2IMG_PATH,
    PROMPTS_PATH,
    ErrorResponse,
    Img2ImgRequest,
    Img2ImgResponse,
    PromptRequest,
    PromptResponse,
    image_from_b64,
    image_to_b64,
)
from app.exceptions import ImageDecodeError
from app.mocks.synthetic import mock_generate, mock_prompts
from app.models.generation import GenerationParams
from app.models.mock import MockBehavior

logger = logging.getLogger(__name__)


class MockRequestHandler(BaseHTTPRequestHandler):
    server: "MockHTTPServer"
    protocol_version = "HTTP/1.1"

    def do_GET(self) -> None:
        if self.path == HEALTH_PATH:
            self._reply(HTTPStatus.OK, b'{"status":"ok"}')
        else:
            self._error(HTTPStatus.NOT_FOUND, f"no route for GET {self.path}")

    def do_POST(self) -> None:
        try:
            length = int(self.headers.get("Content-Length") or 0)
            if length < 0:
                raise ValueError(length)
        except ValueError:
            # Body boundary unknown; the connection cannot be reused.
            self.close_connection = True
            self._error(HTTPStatus.BAD_REQUEST, "invalid Content-Length header")
            return
        body = self.rfile.read(length)
        if self.path not in (PROMPTS_PATH, IMG2IMG_PATH):
            self._error(HTTPStatus.NOT_FOUND, f"no route for POST {self.path}")
            return
        if not self._authorized():
            self._error(HTTPStatus.UNAUTHORIZED, "missing or invalid bearer token")
            return
        try:
            if self.path == PROMPTS_PATH:
                response: BaseModel = self._prompts(PromptRequest.model_validate_json(body))
            else:
                response = self._img2img(Img2ImgRequest.model_validate_json(body))
        except ValidationError as exc:
            self._error(HTTPStatus.BAD_REQUEST, f"request does not match schema: {exc.error_count()} error(s)")
            return
        except (ValueError, ImageDecodeError) as exc:
            self._error(HTTPStatus.BAD_REQUEST, str(exc))
            return
        self._reply(HTTPStatus.OK, response.model_dump_json().encode("utf-8"))

    def _prompts(self, request: PromptRequest) -> PromptResponse:
        image = image_from_b64(request.image_png_b64)
        return PromptResponse(reply=mock_prompts(image, request.instruction, self.server.behavior))

    def _img2img(self, request: Img2ImgRequest) -> Img2ImgResponse:
        init = image_from_b64(request.init_png_b64)
        params = GenerationParams(
            strength=request.strength, steps=request.steps, guidance=request.guidance, seed=request.seed
        )
        out = mock_generate(init, request.prompt, request.negative_prompt, params, self.server.behavior)
        return Img2ImgResponse(image_png_b64=image_to_b64(out))

    def _authorized(self) -> bool:
        token = self.server.behavior.auth_token
        if token is None:
            return True
        supplied = self.headers.get("Authorization", "").encode("utf-8")
        return hmac.compare_digest(supplied, f"Bearer {token}".encode())

    def _error(self, status: HTTPStatus, message: str) -> None:
        self._reply(status, ErrorResponse(error=message).model_dump_json().encode("utf-8"))

    def _reply(self, status: HTTPStatus, payload: bytes) -> None:
        logger.info("%s %s %d %d", self.command, self.path, status, len(payload))
        self.send_response(status)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(payload)))
        self.end_headers()
        self.wfile.write(payload)

    def log_message(self, format: str, *args) -> None:
        # Requests are logged once in _reply.
        pass


class MockHTTPServer(ThreadingHTTPServer):
    daemon_threads = True

    def __init__(self, address: tuple[str, int], behavior: MockBehavior):
        self.behavior = behavior
        super().__init__(address, MockRequestHandler)


class MockServer:
    """Runs both mock services on one port in a background thread.

    Usable as a context manager; port 0 picks a free port.
    """

    def __init__(self, behavior: MockBehavior | None = None, host: str = "127.0.0.1", port: int = 0):
        self.behavior = behavior or MockBehavior()
        self._httpd = MockHTTPServer((host, port), self.behavior)
        self._thread: threading.Thread | None = None

    @property
    def port(self) -> int:
        return int(self._httpd.server_address[1])

    @property
    def url(self) -> str:
        host = self._httpd.server_address[0]
        return f"http://{host}:{self.port}"

    def start(self) -> "MockServer":
        self._thread = threading.Thread(target=self._httpd.serve_forever, name="mock-backend", daemon=True)
        self._thread.start()
        logger.info("Mock backends listening on %s", self.url)
        return self

    def serve_forever(self) -> None:
        logger.info("Mock backends listening on %s", self.url)
        try:
            self._httpd.serve_forever()
        finally:
            self._httpd.server_close()

    def stop(self) -> None:
        self._httpd.shutdown()
        self._httpd.server_close()
        if self._thread is not None:
            self._thread.join(timeout=5)

    def __enter__(self) -> "MockServer":
        return self.start()

    def __exit__(self, *exc_info) -> None:
        self.stop()


def start_mock_server(behavior: MockBehavior | None = None, host: str = "127.0.0.1", port: int = 0) -> MockServer:
    """Bind and start a MockServer. Raises OSError if the port is taken."""
    return MockServer(behavior, host, port).start()
