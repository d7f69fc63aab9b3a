"""Custom exceptions for promptloop."""


class PromptLoopError(Exception):
    """Base exception for promptloop errors."""


class ImageError(PromptLoopError):
    """Base exception for image decoding and shape problems."""


class ImageDecodeError(ImageError):
    """Raised when an image byte stream is malformed."""

    def __init__(self, offset: int, message: str, image_format: str = ""):
        self.offset = offset
        self.image_format = image_format
        prefix = f"{image_format.upper()} " if image_format else ""
        super().__init__(f"{prefix}decode error at byte offset {offset}: {message}")


class ShapeMismatchError(ImageError):
    """Raised when two images that must be aligned have different shapes."""

    def __init__(self, ref_shape: tuple[int, ...], cand_shape: tuple[int, ...], operation: str = ""):
        self.ref_shape = ref_shape
        self.cand_shape = cand_shape
        self.operation = operation
        where = f" in {operation}" if operation else ""
        super().__init__(
            f"Shape mismatch{where}: reference {_fmt_shape(ref_shape)} vs candidate {_fmt_shape(cand_shape)}"
        )


class ImageSizeError(ImageError):
    """Raised when an image is too small for a windowed computation."""

    def __init__(self, shape: tuple[int, ...], minimum: int, operation: str):
        self.shape = shape
        self.minimum = minimum
        self.operation = operation
        super().__init__(
            f"Image {_fmt_shape(shape)} too small for {operation}: "
            f"minimum dimension must be >= {minimum}"
        )


class MetricUndefinedError(PromptLoopError):
    """Raised when a metric has no defined value for the given inputs."""

    def __init__(self, metric: str, reason: str):
        self.metric = metric
        super().__init__(f"{metric} is undefined: {reason}")


class BackendError(PromptLoopError):
    """Base exception for model-service failures."""


class BackendUnreachableError(BackendError):
    """Raised when a backend cannot be reached after all retries."""

    def __init__(self, url: str, attempts: int, cause: str):
        self.url = url
        self.attempts = attempts
        super().__init__(f"Backend unreachable at {url} after {attempts} attempt(s): {cause}")


class BackendResponseError(BackendError):
    """Raised when a backend answers with a non-retryable error status."""

    def __init__(self, url: str, status: int, message: str):
        self.url = url
        self.status = status
        super().__init__(f"Backend at {url} returned HTTP {status}: {message}")


class PayloadError(BackendError):
    """Raised when a backend reply body cannot be decoded."""

    def __init__(self, url: str, message: str):
        self.url = url
        super().__init__(f"Invalid payload from {url}: {message}")


class PromptParseError(BackendError):
    """Raised when no positive prompt can be recovered from a model reply."""

    def __init__(self, raw_response: str, message: str):
        self.raw_response = raw_response
        super().__init__(f"Prompt parse error: {message}")


class ManifestError(PromptLoopError):
    """Raised when an ablation manifest is missing or invalid."""

    def __init__(self, path: str, message: str):
        self.path = path
        super().__init__(f"Manifest error in {path}: {message}")


class AblationRunError(PromptLoopError):
    """Raised when an ablation run produces no successful records."""

    def __init__(self, message: str, failures: list | None = None):
        self.failures = failures or []
        super().__init__(f"Ablation failed: {message}")


class ConfigError(PromptLoopError):
    """Raised when configuration cannot be loaded or merged."""

    def __init__(self, source: str, message: str):
        self.source = source
        super().__init__(f"Config error from {source}: {message}")


def _fmt_shape(shape: tuple[int, ...]) -> str:
    return "x".join(str(d) for d in shape)
