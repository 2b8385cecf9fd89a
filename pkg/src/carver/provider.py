"""Prompt construction, completion providers, and response parsing.

Three provider implementations share one interface: live (OpenAI-compatible
chat-completions over HTTP), replay (deterministic fixtures keyed by request
digest), and recording (live + fixture capture). The request digest covers the
chat messages, model name, and temperature only; endpoint and credentials
never influence it, so fixtures recorded against one endpoint replay against
any other.

Replay fixture format, one JSON file per digest:
    {"digest": ..., "prompt_text": ..., "completions": ["...", ...]}
"""

from __future__ import annotations

import concurrent.futures
import hashlib
import json
import os
import re
import threading
from dataclasses import dataclass, field
from pathlib import Path

from .candidates import Provenance, Suggestion
from .errors import MethodTooLargeError, MissingFixtureError, ProviderUnreachableError
from .source_model import MethodModel, SourceUnit

DEFAULT_SYSTEM_PREAMBLE = """\
You are an assistant that suggests extract-method refactorings for Java.
Given a method with absolute line numbers, propose contiguous fragments worth
extracting into a new method, each with a descriptive camelCase name.
"""

OUTPUT_CONTRACT = """\
Answer with a JSON array only. Each element must be an object with exactly
these keys: "function_name" (string), "line_start" (integer), "line_end"
(integer). Line numbers are the absolute numbers shown in the input and both
bounds are inclusive. Do not add prose.
"""

FEW_SHOT_EXAMPLES: tuple[tuple[str, str], ...] = (
    (
        """\
12 |     void resize(int width, int height) {
13 |         int area = width * height;
14 |         if (area > limit) {
15 |             log("too big");
16 |             reject(width, height);
17 |             return;
18 |         }
19 |         this.width = width;
20 |         this.height = height;
21 |     }""",
        '[{"function_name": "rejectOversize", "line_start": 14, "line_end": 18}]',
    ),
)


@dataclass(frozen=True)
class PromptSpec:
    system_preamble: str
    few_shot_examples: tuple[tuple[str, str], ...]
    target: str
    output_contract: str

    def messages(self) -> list[dict[str, str]]:
        msgs = [{"role": "system", "content": self.system_preamble + "\n" + self.output_contract}]
        for host_text, answer in self.few_shot_examples:
            msgs.append({"role": "user", "content": host_text})
            msgs.append({"role": "assistant", "content": answer})
        msgs.append({"role": "user", "content": self.target})
        return msgs


@dataclass(frozen=True)
class ProviderConfig:
    endpoint: str = "https://api.openai.com/v1/chat/completions"
    model_name: str = "gpt-3.5-turbo"
    temperature: float = 1.0
    iterations: int = 5
    max_parallel: int = 5
    timeout: float = 30.0
    api_key_env: str = "CARVER_API_KEY"
    prompt_budget_chars: int = 24000

    def __post_init__(self) -> None:
        if not 1 <= self.iterations <= 20:
            raise ValueError("iterations must be in [1, 20]")
        if self.max_parallel < 1:
            raise ValueError("max_parallel must be >= 1")
        if self.temperature < 0:
            raise ValueError("temperature must be >= 0")


@dataclass
class CompletionRecord:
    request_digest: str
    iteration: int
    raw_text: str
    parsed: list[Suggestion] = field(default_factory=list)
    diagnostics: list[str] = field(default_factory=list)
    error: str | None = None


def build_prompt(model: MethodModel, config: ProviderConfig, system_preamble: str | None = None) -> PromptSpec:
    """Few-shot prompt whose target block numbers lines with the unit's own
    absolute numbers, so returned ranges need no offsetting."""
    unit = model.unit
    width = len(str(model.close_line))
    lines = []
    for ln in range(model.decl_line, model.close_line + 1):
        lines.append(f"{ln:>{width}} | {unit.line_text(ln)}")
    target = "\n".join(lines)
    spec = PromptSpec(
        system_preamble=system_preamble if system_preamble is not None else DEFAULT_SYSTEM_PREAMBLE,
        few_shot_examples=FEW_SHOT_EXAMPLES,
        target=target,
        output_contract=OUTPUT_CONTRACT,
    )
    size = sum(len(m["content"]) for m in spec.messages())
    if size > config.prompt_budget_chars:
        raise MethodTooLargeError(
            f"prompt needs {size} characters, budget is {config.prompt_budget_chars}; refusing to truncate"
        )
    return spec


def request_digest(messages: list[dict[str, str]], config: ProviderConfig) -> str:
    payload = {"messages": messages, "model": config.model_name, "temperature": config.temperature}
    blob = json.dumps(payload, sort_keys=True, separators=(",", ":")).encode("utf-8")
    return hashlib.sha256(blob).hexdigest()


class Provider:
    """Interface: complete() returns one completion's text for an iteration."""

    provider_id = "base"

    def complete(self, messages: list[dict[str, str]], config: ProviderConfig, iteration: int) -> str:
        raise NotImplementedError


class LiveProvider(Provider):
    """OpenAI-compatible chat-completions client. Safe for concurrent calls."""

    provider_id = "live"

    def complete(self, messages: list[dict[str, str]], config: ProviderConfig, iteration: int) -> str:
        import requests

        api_key = os.environ.get(config.api_key_env, "")
        headers = {"Content-Type": "application/json"}
        if api_key:
            headers["Authorization"] = f"Bearer {api_key}"
        resp = requests.post(
            config.endpoint,
            headers=headers,
            json={"model": config.model_name, "messages": messages, "temperature": config.temperature},
            timeout=config.timeout,
        )
        resp.raise_for_status()
        body = resp.json()
        return body["choices"][0]["message"]["content"]


class ReplayProvider(Provider):
    """Deterministic provider reading recorded completions. Safe-concurrent.

    Iteration i returns completions[i % len(completions)], so a fixture with
    at least one completion serves any iteration count.
    """

    provider_id = "replay"

    def __init__(self, fixture_dir: str | Path) -> None:
        self.fixture_dir = Path(fixture_dir)
        self._cache: dict[str, list[str]] = {}
        self._lock = threading.Lock()

    def _load(self, digest: str) -> list[str]:
        with self._lock:
            if digest in self._cache:
                return self._cache[digest]
        path = self.fixture_dir / f"{digest}.json"
        if not path.is_file():
            raise MissingFixtureError(digest, str(self.fixture_dir))
        data = json.loads(path.read_text(encoding="utf-8"))
        completions = data.get("completions", [])
        if not completions:
            raise MissingFixtureError(digest, str(self.fixture_dir))
        with self._lock:
            self._cache[digest] = completions
        return completions

    def complete(self, messages: list[dict[str, str]], config: ProviderConfig, iteration: int) -> str:
        completions = self._load(request_digest(messages, config))
        return completions[iteration % len(completions)]


class RecordingProvider(Provider):
    """Wraps a live provider and writes replay fixtures as it goes."""

    provider_id = "record"

    def __init__(self, inner: Provider, fixture_dir: str | Path) -> None:
        self.inner = inner
        self.fixture_dir = Path(fixture_dir)
        self._lock = threading.Lock()

    def complete(self, messages: list[dict[str, str]], config: ProviderConfig, iteration: int) -> str:
        text = self.inner.complete(messages, config, iteration)
        digest = request_digest(messages, config)
        path = self.fixture_dir / f"{digest}.json"
        with self._lock:
            if path.is_file():
                data = json.loads(path.read_text(encoding="utf-8"))
            else:
                prompt_text = "\n\n".join(f"[{m['role']}]\n{m['content']}" for m in messages)
                data = {"digest": digest, "prompt_text": prompt_text, "completions": []}
            data["completions"].append(text)
            self.fixture_dir.mkdir(parents=True, exist_ok=True)
            path.write_text(json.dumps(data, indent=2), encoding="utf-8")
        return text


def sample(provider: Provider, prompt: PromptSpec, config: ProviderConfig) -> list[CompletionRecord]:
    """Issue `iterations` requests, at most max_parallel in flight. Every
    iteration yields a record; failures carry the error text instead of being
    dropped. Raises ProviderUnreachable only when all of them fail."""
    messages = prompt.messages()
    digest = request_digest(messages, config)
    records: list[CompletionRecord] = [
        CompletionRecord(request_digest=digest, iteration=i, raw_text="") for i in range(config.iterations)
    ]

    def run(i: int) -> None:
        try:
            records[i].raw_text = provider.complete(messages, config, i)
        except Exception as exc:  # noqa: BLE001 - failure is data here
            records[i].error = f"{type(exc).__name__}: {exc}"

    with concurrent.futures.ThreadPoolExecutor(max_workers=min(config.max_parallel, config.iterations)) as pool:
        futures = [pool.submit(run, i) for i in range(config.iterations)]
        for f in futures:
            f.result()

    if all(r.error is not None for r in records):
        first = records[0].error
        raise ProviderUnreachableError(f"all {config.iterations} completion requests failed; first error: {first}")
    return records


# ---------------------------------------------------------------------------
# completion parsing

_FENCE_RE = re.compile(r"```[a-zA-Z0-9_-]*\n?|```")


def parse_completion(raw_text: str, unit: SourceUnit, iteration: int = 0, provider_id: str = "") -> tuple[list[Suggestion], list[str]]:
    """Extract raw Suggestions from arbitrary completion text. Total: garbage
    yields diagnostics, never exceptions. The first syntactically valid JSON
    array in the text wins; malformed elements become diagnostics; inverted
    ranges are preserved for the validator to reject."""
    diagnostics: list[str] = []
    text = _FENCE_RE.sub("", raw_text or "")
    decoder = json.JSONDecoder()
    arr = None
    pos = 0
    while True:
        start = text.find("[", pos)
        if start < 0:
            break
        try:
            candidate, _ = decoder.raw_decode(text, start)
        except ValueError:
            pos = start + 1
            continue
        if isinstance(candidate, list):
            arr = candidate
            break
        pos = start + 1
    if arr is None:
        diagnostics.append("no JSON array found in completion")
        return [], diagnostics

    suggestions: list[Suggestion] = []
    for idx, el in enumerate(arr):
        if not isinstance(el, dict):
            diagnostics.append(f"element {idx}: not an object")
            continue
        name = el.get("function_name")
        start_v = el.get("line_start")
        end_v = el.get("line_end")
        if not isinstance(name, str):
            diagnostics.append(f"element {idx}: function_name missing or not a string")
            continue
        if isinstance(start_v, bool) or isinstance(end_v, bool) or not isinstance(start_v, int) or not isinstance(end_v, int):
            diagnostics.append(f"element {idx}: line_start/line_end missing or not integers")
            continue
        suggestions.append(
            Suggestion(
                proposed_name=name,
                raw_range=(start_v, end_v),
                provenance=Provenance(iteration=iteration, index=idx, provider_id=provider_id),
            )
        )
    return suggestions, diagnostics
