"""Provider client with a deterministic record/replay backend.

Every request is context-free: a follow-up resends the identical prompt text
with a bumped attempt ordinal and never attaches prior turns or prior code.
Refinement prompts (the explicit feedback path) append a templated summary of
earlier findings to the base prompt, again without any prior source.

Replay stores live on disk as a directory of JSON transcripts keyed by
SHA-256 over (provider_id, prompt text, attempt), so replay results are a
pure function of the request. The same directory can hold recorded runtime
measurements (see profiling) under ``measurements/``.
"""

from __future__ import annotations

import hashlib
import json
import re
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Mapping, Protocol

from .analysis import parse_module, SourceSyntaxError
from .corpus import PromptVariant


@dataclass(frozen=True)
class GenerationParams:
    temperature: float = 0.2
    max_tokens: int = 2048
    stop: tuple[str, ...] = ()


@dataclass(frozen=True)
class GenerationRequest:
    prompt_text: str
    provider_id: str
    params: GenerationParams = field(default_factory=GenerationParams)
    attempt: int = 1


@dataclass(frozen=True)
class GenerationResult:
    raw_text: str
    extracted_source: str
    provider_id: str
    attempt: int
    transcript_id: str
    latency_seconds: float | None = None
    token_counts: Mapping[str, int] | None = None


class GatewayError(Exception):
    pass


class TransportError(GatewayError):
    """Retryable: timeouts, connection resets, 5xx."""


class ProviderRefusal(GatewayError):
    """Non-retryable: the provider declined to answer."""


class ReplayMissError(GatewayError):
    """Fatal in replay mode: no transcript for this request."""


def transcript_key(provider_id: str, prompt_text: str, attempt: int) -> str:
    material = "\x00".join((provider_id, prompt_text, str(attempt)))
    return hashlib.sha256(material.encode("utf-8")).hexdigest()


# --- code extraction -------------------------------------------------------

_FENCE_RE = re.compile(
    r"```[ \t]*(?:python|py)?[ \t]*\r?\n(.*?)(?:\r?\n)?```",
    re.DOTALL | re.IGNORECASE,
)
_OPEN_FENCE_RE = re.compile(r"```[ \t]*(?:python|py)?[ \t]*\r?\n", re.IGNORECASE)

# a heuristic region must contain something statement-like, so stray prose
# words that happen to parse are not mistaken for code
_CODEISH_RE = re.compile(r"^\s*(def |class |import |from |@)|=|\(", re.MULTILINE)


def _parses(text: str) -> bool:
    try:
        parse_module(text)
    except SourceSyntaxError:
        return False
    return True


def _longest_parsed_region(raw_text: str) -> str:
    """Longest contiguous line region the analyzer's parser accepts.

    For each start line, the suffix is parsed; on failure the reported error
    line trims the tail and the shrunken window is retried. Deterministic and
    linear in practice because the error line only ever decreases.
    """
    lines = raw_text.splitlines()
    best = ""
    best_len = 0
    for start in range(len(lines)):
        end = len(lines)
        while end > start:
            candidate = "\n".join(lines[start:end])
            if not candidate.strip():
                break
            try:
                parse_module(candidate)
            except SourceSyntaxError as exc:
                cut = start + (exc.line or 1) - 1
                end = cut if cut < end else end - 1
                continue
            region_len = end - start
            if region_len > best_len and _CODEISH_RE.search(candidate):
                best, best_len = candidate, region_len
            break
    return best


def extract_source(raw_text: str) -> str:
    """First fenced code block, else longest parser-accepted region."""
    match = _FENCE_RE.search(raw_text)
    if match:
        return match.group(1)
    opener = _OPEN_FENCE_RE.search(raw_text)
    if opener:
        # unterminated fence: everything after it
        return raw_text[opener.end():].rstrip("\n")
    if _parses(raw_text) and _CODEISH_RE.search(raw_text):
        return raw_text
    return _longest_parsed_region(raw_text)


# --- providers -------------------------------------------------------------


class Provider(Protocol):
    provider_id: str

    def complete(self, request: GenerationRequest) -> tuple[str, float | None, Mapping | None]:
        """Return (raw_text, latency_seconds, token_counts)."""


@dataclass
class HttpProvider:
    """Plain JSON-over-HTTP completion client.

    POSTs {"model", "prompt", "temperature", "max_tokens", "stop"} and expects
    {"text": ...} back, optionally with {"usage": {...}}. The auth token is
    read from the environment variable named in the config, never stored.
    """

    provider_id: str
    endpoint: str
    model: str
    credential_env: str | None = None
    max_retries: int = 3
    backoff_seconds: float = 0.5
    timeout: float = 120.0
    _sleep: Callable[[float], None] = time.sleep
    _post: Callable | None = None  # test seam; defaults to requests.post

    def complete(self, request: GenerationRequest):
        import os

        import requests

        post = self._post or requests.post
        headers = {"content-type": "application/json"}
        if self.credential_env:
            token = os.environ.get(self.credential_env, "")
            if token:
                headers["authorization"] = f"Bearer {token}"
        payload = {
            "model": self.model,
            "prompt": request.prompt_text,
            "temperature": request.params.temperature,
            "max_tokens": request.params.max_tokens,
            "stop": list(request.params.stop),
        }
        last_error: Exception | None = None
        for retry in range(self.max_retries + 1):
            if retry:
                self._sleep(self.backoff_seconds * 2 ** (retry - 1))
            started = time.monotonic()
            try:
                response = post(self.endpoint, json=payload, headers=headers, timeout=self.timeout)
            except requests.RequestException as exc:
                last_error = exc
                continue
            latency = time.monotonic() - started
            if 200 <= response.status_code < 300:
                body = response.json()
                return body["text"], latency, body.get("usage")
            if 400 <= response.status_code < 500:
                raise ProviderRefusal(
                    f"{self.provider_id}: HTTP {response.status_code}: {response.text[:200]}"
                )
            last_error = TransportError(f"HTTP {response.status_code}")
        raise TransportError(
            f"{self.provider_id}: transport failed after {self.max_retries + 1} tries: {last_error}"
        )


@dataclass
class ReplayStore:
    """Read/write view over a replay directory."""

    root: Path

    def __post_init__(self):
        self.root = Path(self.root)

    def _transcript_path(self, key: str) -> Path:
        return self.root / "transcripts" / f"{key}.json"

    def lookup(self, provider_id: str, prompt_text: str, attempt: int) -> str:
        key = transcript_key(provider_id, prompt_text, attempt)
        path = self._transcript_path(key)
        if not path.is_file():
            raise ReplayMissError(
                f"no transcript for provider={provider_id} attempt={attempt} key={key[:12]}"
            )
        return json.loads(path.read_text())["raw_text"]

    def record(self, provider_id: str, prompt_text: str, attempt: int, raw_text: str) -> str:
        key = transcript_key(provider_id, prompt_text, attempt)
        path = self._transcript_path(key)
        path.parent.mkdir(parents=True, exist_ok=True)
        payload = {
            "provider_id": provider_id,
            "attempt": attempt,
            "prompt_sha256": hashlib.sha256(prompt_text.encode("utf-8")).hexdigest(),
            "raw_text": raw_text,
        }
        path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")
        return key

    # recorded runtime aggregates, content-addressed by what was measured
    def _measurement_path(self, key: str) -> Path:
        return self.root / "measurements" / f"{key}.json"

    @staticmethod
    def measurement_key(task_id: str, source_text: str) -> str:
        material = task_id + "\x00" + source_text
        return hashlib.sha256(material.encode("utf-8")).hexdigest()

    def lookup_measurement(self, task_id: str, source_text: str) -> dict | None:
        path = self._measurement_path(self.measurement_key(task_id, source_text))
        if not path.is_file():
            return None
        return json.loads(path.read_text())

    def record_measurement(self, task_id: str, source_text: str, payload: dict) -> str:
        key = self.measurement_key(task_id, source_text)
        path = self._measurement_path(key)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")
        return key


@dataclass
class ReplayProvider:
    provider_id: str
    store: ReplayStore

    def complete(self, request: GenerationRequest):
        raw = self.store.lookup(self.provider_id, request.prompt_text, request.attempt)
        return raw, None, None


@dataclass
class RecordingProvider:
    inner: Provider
    store: ReplayStore

    @property
    def provider_id(self) -> str:
        return self.inner.provider_id

    def complete(self, request: GenerationRequest):
        raw, latency, usage = self.inner.complete(request)
        self.store.record(self.provider_id, request.prompt_text, request.attempt, raw)
        return raw, latency, usage


class Gateway:
    """Facade resolving provider ids to backends."""

    def __init__(self, providers: Mapping[str, Provider]):
        self._providers = dict(providers)

    def generate(self, request: GenerationRequest) -> GenerationResult:
        provider = self._providers.get(request.provider_id)
        if provider is None:
            raise GatewayError(f"unknown provider {request.provider_id!r}")
        raw, latency, usage = provider.complete(request)
        return GenerationResult(
            raw_text=raw,
            extracted_source=extract_source(raw),
            provider_id=request.provider_id,
            attempt=request.attempt,
            transcript_id=transcript_key(request.provider_id, request.prompt_text, request.attempt),
            latency_seconds=latency,
            token_counts=usage,
        )

    def follow_up(self, request: GenerationRequest, prior: GenerationResult) -> GenerationResult:
        """Resend the identical prompt, attempt ordinal bumped, no history."""
        next_request = GenerationRequest(
            prompt_text=request.prompt_text,
            provider_id=request.provider_id,
            params=request.params,
            attempt=prior.attempt + 1,
        )
        return self.generate(next_request)


# --- refinement template ---------------------------------------------------

CATEGORY_ORDER = ("convention", "refactor", "warning", "error")


def render_findings_summary(
    categories: Mapping[str, int], metrics: Mapping[str, float]
) -> str:
    """Deterministic findings sentence; empty inputs render empty."""
    parts = []
    for category in CATEGORY_ORDER:
        count = categories.get(category, 0)
        if count:
            noun = "finding" if count == 1 else "findings"
            parts.append(f"{count} {category} {noun}")
    for name in sorted(set(categories) - set(CATEGORY_ORDER)):
        count = categories[name]
        if count:
            noun = "finding" if count == 1 else "findings"
            parts.append(f"{count} {name} {noun}")
    lines = []
    if parts:
        lines.append("Static analysis of an earlier attempt reported " + ", ".join(parts) + ".")
    metric_bits = [f"{name}={metrics[name]:g}" for name in sorted(metrics)]
    if metric_bits:
        lines.append("Measured values: " + "; ".join(metric_bits) + ".")
    if lines:
        lines.append(
            "Improve on these results. Respond with a complete, self-contained solution."
        )
    return "\n".join(lines)


def build_refinement_prompt(
    base: PromptVariant,
    categories: Mapping[str, int],
    metrics: Mapping[str, float] | None = None,
    provider_id: str = "",
    params: GenerationParams | None = None,
) -> GenerationRequest:
    """Base prompt plus templated findings summary; never prior code."""
    summary = render_findings_summary(categories, metrics or {})
    text = base.text if not summary else base.text.rstrip("\n") + "\n\n" + summary + "\n"
    return GenerationRequest(
        prompt_text=text,
        provider_id=provider_id,
        params=params or GenerationParams(),
        attempt=1,
    )
