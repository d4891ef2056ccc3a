"""Judge transport: HTTP chat-completions client and deterministic mocks.

The HTTP judge speaks the chat-completions wire format: POST
``{base_url}/chat/completions`` with a single user message, read
``choices[0].message.content`` back.  Transient failures (connection
errors, 5xx, 429) are retried with exponential backoff up to max_retries;
anything else fails immediately.

Mocks make every pipeline runnable offline: ``echo_fixture`` replays
recorded replies keyed by the sha256 of the prompt, ``rubric_hash`` maps
the prompt hash onto the 0.0..1.0 score grid.
"""

from __future__ import annotations

import hashlib
import json
import os
import threading
import time
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Protocol

import requests

from .replies import (
    EventExtraction,
    PairScore,
    ReplyFormatError,
    find_json_object,
    parse_event_extraction,
    parse_pair_score,
    parse_scalar_score,
)

ENV_BASE_URL = "JUDGE_BASE_URL"
ENV_API_KEY = "JUDGE_API_KEY"

_RETRYABLE_STATUS = frozenset({429}) | frozenset(range(500, 600))


class JudgeError(Exception):
    """Base class for judge failures."""


class JudgeTransportError(JudgeError):
    """The judge could not be reached or returned an unusable transport reply."""


class JudgeFormatError(JudgeError):
    """The judge answered, but not in the expected format (after a re-ask)."""


class FixtureMissError(JudgeError):
    """The fixture mock has no recorded reply for this prompt."""


class Judge(Protocol):
    def complete(self, prompt: str) -> str: ...


@dataclass(frozen=True)
class JudgeEndpoint:
    base_url: str
    model_name: str = "judge"
    auth_token: str | None = None
    timeout_s: float = 60.0
    max_retries: int = 3
    temperature: float = 0.0
    max_inflight: int = 8

    def __post_init__(self) -> None:
        if not self.base_url:
            raise ValueError("base_url must be non-empty")
        if not self.model_name:
            raise ValueError("model_name must be non-empty")
        if not self.timeout_s > 0:
            raise ValueError("timeout_s must be positive")
        if self.max_retries < 0:
            raise ValueError("max_retries must be >= 0")
        if not 0.0 <= self.temperature <= 2.0:
            raise ValueError("temperature must be in [0, 2]")
        if self.max_inflight < 1:
            raise ValueError("max_inflight must be >= 1")


def endpoint_from_env(**overrides) -> JudgeEndpoint:
    """Endpoint whose base URL and bearer token come from the environment."""
    base_url = overrides.pop("base_url", None) or os.environ.get(ENV_BASE_URL)
    if not base_url:
        raise ValueError(f"no judge base URL: set {ENV_BASE_URL} or pass base_url")
    token = overrides.pop("auth_token", None) or os.environ.get(ENV_API_KEY)
    return JudgeEndpoint(base_url=base_url, auth_token=token, **overrides)


def prompt_hash(prompt: str) -> str:
    return hashlib.sha256(prompt.encode("utf-8")).hexdigest()


class HttpJudge:
    """Chat-completions client with bounded concurrency and backoff retries."""

    def __init__(
        self,
        endpoint: JudgeEndpoint,
        session: requests.Session | None = None,
        sleep: Callable[[float], None] = time.sleep,
        backoff_base_s: float = 0.5,
    ) -> None:
        self.endpoint = endpoint
        self._session = session or requests.Session()
        self._sleep = sleep
        self._backoff_base_s = backoff_base_s
        self._gate = threading.BoundedSemaphore(endpoint.max_inflight)
        self._lock = threading.Lock()
        self.calls = 0  # completed transport attempts, for observability

    @property
    def format_reasks(self) -> int:
        # a malformed reply is worth one re-ask, but only if retries exist at all
        return 1 if self.endpoint.max_retries > 0 else 0

    def complete(self, prompt: str) -> str:
        url = self.endpoint.base_url.rstrip("/") + "/chat/completions"
        payload = {
            "model": self.endpoint.model_name,
            "temperature": self.endpoint.temperature,
            "messages": [{"role": "user", "content": prompt}],
        }
        headers = {"Content-Type": "application/json"}
        if self.endpoint.auth_token:
            headers["Authorization"] = f"Bearer {self.endpoint.auth_token}"

        attempts = self.endpoint.max_retries + 1
        last_error = "unknown"
        for attempt in range(attempts):
            with self._lock:
                self.calls += 1
            try:
                with self._gate:
                    response = self._session.post(
                        url, json=payload, headers=headers, timeout=self.endpoint.timeout_s
                    )
            except requests.RequestException as exc:
                last_error = f"transport error: {exc}"
                if attempt + 1 < attempts:
                    self._sleep(self._backoff_base_s * (2 ** attempt))
                continue
            if response.status_code in _RETRYABLE_STATUS:
                last_error = f"status {response.status_code}"
                if attempt + 1 < attempts:
                    self._sleep(self._backoff_base_s * (2 ** attempt))
                continue
            if response.status_code != 200:
                raise JudgeTransportError(
                    f"judge returned status {response.status_code}: {response.text[:200]}"
                )
            try:
                data = response.json()
            except ValueError:
                raise JudgeTransportError("non-JSON transport reply") from None
            try:
                content = data["choices"][0]["message"]["content"]
            except (KeyError, IndexError, TypeError):
                raise JudgeTransportError("transport reply missing choices[0].message.content") from None
            if not isinstance(content, str) or not content.strip():
                raise JudgeTransportError("empty judge reply")
            return content
        raise JudgeTransportError(f"retries exhausted after {attempts} attempts ({last_error})")


MOCK_POLICIES = ("echo_fixture", "rubric_hash")


class MockJudge:
    """Deterministic offline judge.

    echo_fixture replays fixtures[sha256(prompt)] and fails loudly on a
    miss; rubric_hash derives a stable 0.0..1.0 score from the prompt hash
    (salted with the seed).  Thread-safe call counting supports tests that
    assert how many judge calls a pipeline made.
    """

    def __init__(
        self,
        policy: str = "rubric_hash",
        fixtures: dict[str, str] | None = None,
        seed: int = 0,
    ) -> None:
        if policy not in MOCK_POLICIES:
            raise ValueError(f"unknown mock policy {policy!r}")
        if policy == "echo_fixture" and fixtures is None:
            raise ValueError("echo_fixture policy requires fixtures")
        self.policy = policy
        self.fixtures = fixtures or {}
        self.seed = seed
        self.format_reasks = 1
        self._lock = threading.Lock()
        self.calls = 0

    def complete(self, prompt: str) -> str:
        with self._lock:
            self.calls += 1
        if self.policy == "echo_fixture":
            key = prompt_hash(prompt)
            if key not in self.fixtures:
                raise FixtureMissError(f"no fixture for prompt hash {key}")
            return self.fixtures[key]
        digest = hashlib.sha256(f"{self.seed}:{prompt}".encode("utf-8")).hexdigest()
        value = (int(digest, 16) % 11) / 10.0
        return f"{value:.1f}"


def mock_judge(
    seed: int = 0,
    policy: str = "rubric_hash",
    fixtures: dict[str, str] | str | Path | None = None,
) -> MockJudge:
    if isinstance(fixtures, (str, Path)):
        fixtures = load_fixtures(fixtures)
    return MockJudge(policy=policy, fixtures=fixtures, seed=seed)


def load_fixtures(path: str | Path) -> dict[str, str]:
    """Fixture file: JSON object mapping sha256(prompt) -> reply text."""
    with Path(path).open("r", encoding="utf-8") as fh:
        data = json.load(fh)
    if not isinstance(data, dict) or not all(
        isinstance(k, str) and isinstance(v, str) for k, v in data.items()
    ):
        raise ValueError("fixtures must be a JSON object of string -> string")
    return data


def call_judge(judge: Judge | JudgeEndpoint, prompt: str, decode: str = "text") -> str:
    """Single judge completion; accepts a Judge or a bare endpoint config."""
    if decode != "text":
        raise ValueError(f"unsupported decode mode {decode!r}")
    if isinstance(judge, JudgeEndpoint):
        judge = HttpJudge(judge)
    return judge.complete(prompt)


def _ask(judge: Judge, prompt: str, parse: Callable[[str], object]):
    """Parse a reply, re-asking once on a malformed one when allowed."""
    reasks = getattr(judge, "format_reasks", 1)
    reply = judge.complete(prompt)
    try:
        return parse(reply)
    except ReplyFormatError as first:
        if reasks < 1:
            raise JudgeFormatError(str(first)) from first
        reply = judge.complete(prompt)
        try:
            return parse(reply)
        except ReplyFormatError as second:
            raise JudgeFormatError(f"malformed after re-ask: {second}") from second


def ask_scalar(judge: Judge, prompt: str, snap: bool = False) -> float:
    result = _ask(judge, prompt, lambda reply: parse_scalar_score(reply, snap=snap))
    return result.value


def ask_pair(judge: Judge, prompt: str) -> PairScore:
    return _ask(judge, prompt, parse_pair_score)


def ask_extraction(judge: Judge, prompt: str) -> EventExtraction:
    return _ask(judge, prompt, parse_event_extraction)


def ask_json(judge: Judge, prompt: str) -> dict:
    return _ask(judge, prompt, find_json_object)
