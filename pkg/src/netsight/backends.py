"""Chat backends behind a single query() front door with a write-once
disk cache.

The cache key is a digest of (image content hash, prompt, model name,
temperature); one JSON file per key holds one reply slot per attempt
index, so repeated sampling of an identical request is replayable while
a literally identical call stays a pure cache hit.
"""

from __future__ import annotations

import base64
import hashlib
import json
import os
import time
from dataclasses import dataclass, field

import requests

from .render import ImageArtifact

API_KEY_ENV = "MLLM_API_KEY"


class BackendError(RuntimeError):
    """Base for selector backend failures."""


class AuthError(BackendError):
    pass


class RateLimitError(BackendError):
    pass


class MalformedReplyError(BackendError):
    pass


@dataclass(frozen=True)
class SelectorRequest:
    image: ImageArtifact | None
    prompt: str
    model_name: str
    temperature: float
    request_id: str = field(init=False)

    def __post_init__(self):
        h = hashlib.sha256()
        h.update((self.image.content_hash if self.image else "no-image").encode())
        h.update(b"\x00")
        h.update(self.prompt.encode("utf-8"))
        h.update(b"\x00")
        h.update(self.model_name.encode("utf-8"))
        h.update(b"\x00")
        h.update(f"{self.temperature:.6f}".encode())
        object.__setattr__(self, "request_id", h.hexdigest())


@dataclass(frozen=True)
class SelectorResponse:
    raw_text: str
    parsed: list[int] | None
    backend: str
    cached: bool
    latency_ms: int


class ReplyCache:
    """One file per request_id; slots are write-once per attempt index."""

    def __init__(self, cache_dir):
        self.cache_dir = cache_dir
        os.makedirs(cache_dir, exist_ok=True)

    def _path(self, request_id: str) -> str:
        return os.path.join(self.cache_dir, f"{request_id}.json")

    def get(self, request_id: str, attempt: int) -> dict | None:
        try:
            with open(self._path(request_id), "r", encoding="utf-8") as f:
                entry = json.load(f)
        except FileNotFoundError:
            return None
        return entry.get("replies", {}).get(str(attempt))

    def put(self, request_id: str, attempt: int, meta: dict, reply: dict) -> None:
        path = self._path(request_id)
        try:
            with open(path, "r", encoding="utf-8") as f:
                entry = json.load(f)
        except FileNotFoundError:
            entry = {"request": meta, "replies": {}}
        entry["replies"].setdefault(str(attempt), reply)
        tmp = f"{path}.tmp.{os.getpid()}"
        with open(tmp, "w", encoding="utf-8") as f:
            json.dump(entry, f, indent=1, sort_keys=True)
        os.replace(tmp, path)


class ScriptedBackend:
    """Replays canned replies in queue order; the offline double for the
    remote model. Accepts a list of strings or a JSON fixture file
    holding one."""

    name = "scripted"

    def __init__(self, replies):
        if isinstance(replies, (str, os.PathLike)):
            with open(replies, "r", encoding="utf-8") as f:
                replies = json.load(f)
        if not isinstance(replies, list) or not all(isinstance(r, str) for r in replies):
            raise ValueError("scripted replies must be a list of strings")
        self._queue = list(replies)

    def complete(self, req: SelectorRequest) -> str:
        if not self._queue:
            raise BackendError("scripted backend ran out of queued replies")
        return self._queue.pop(0)


class MllmBackend:
    """OpenAI-style chat/completions client with the PNG attached as a
    base64 image part. Retries transient failures with exponential
    backoff; auth failures raise immediately and are never cached."""

    name = "mllm"

    def __init__(self, endpoint: str, api_key: str | None = None, *,
                 max_retries: int = 4, backoff_s: float = 1.0, timeout_s: float = 120.0,
                 session=None):
        self.endpoint = endpoint.rstrip("/")
        key = api_key if api_key is not None else os.environ.get(API_KEY_ENV)
        if not key:
            raise AuthError(f"no API credential: set {API_KEY_ENV} or pass api_key")
        self.api_key = key
        self.max_retries = max_retries
        self.backoff_s = backoff_s
        self.timeout_s = timeout_s
        self.session = session or requests.Session()

    def _payload(self, req: SelectorRequest) -> dict:
        content: list[dict] = [{"type": "text", "text": req.prompt}]
        if req.image is not None:
            if req.image.png is None:
                raise ValueError("request image has no PNG bytes; rasterize first")
            b64 = base64.b64encode(req.image.png).decode("ascii")
            content.append({
                "type": "image_url",
                "image_url": {"url": f"data:image/png;base64,{b64}"},
            })
        return {
            "model": req.model_name,
            "temperature": req.temperature,
            "messages": [{"role": "user", "content": content}],
        }

    def complete(self, req: SelectorRequest) -> str:
        url = f"{self.endpoint}/chat/completions"
        headers = {"Authorization": f"Bearer {self.api_key}"}
        delay = self.backoff_s
        last: Exception | None = None
        for _ in range(self.max_retries + 1):
            try:
                resp = self.session.post(url, json=self._payload(req),
                                         headers=headers, timeout=self.timeout_s)
            except requests.RequestException as exc:
                last = BackendError(f"transport failure: {exc}")
                time.sleep(delay)
                delay *= 2
                continue
            if resp.status_code in (401, 403):
                raise AuthError(f"authentication rejected (HTTP {resp.status_code})")
            if resp.status_code == 429 or resp.status_code >= 500:
                last = RateLimitError(f"HTTP {resp.status_code}: {resp.text[:200]}")
                time.sleep(delay)
                delay *= 2
                continue
            if resp.status_code != 200:
                raise BackendError(f"HTTP {resp.status_code}: {resp.text[:200]}")
            try:
                return resp.json()["choices"][0]["message"]["content"]
            except (ValueError, KeyError, IndexError, TypeError) as exc:
                raise MalformedReplyError(f"unexpected API reply shape: {exc}") from exc
        raise last if last else BackendError("retries exhausted")


def query(backend, req: SelectorRequest, cache: ReplyCache | None = None,
          attempt: int = 0, parser=None) -> SelectorResponse:
    """Resolve a request through the cache, then the backend.

    The reply for (request_id, attempt) is persisted before returning, so
    any rerun replays it without touching the network.
    """
    if cache is not None:
        hit = cache.get(req.request_id, attempt)
        if hit is not None:
            raw = hit["raw_text"]
            return SelectorResponse(raw, _try_parse(parser, raw), backend.name,
                                    True, int(hit.get("latency_ms", 0)))
    start = time.monotonic()
    raw = backend.complete(req)
    latency = int((time.monotonic() - start) * 1000)
    if cache is not None:
        meta = {"prompt": req.prompt, "model_name": req.model_name,
                "temperature": req.temperature,
                "image_hash": req.image.content_hash if req.image else None}
        cache.put(req.request_id, attempt, meta, {"raw_text": raw, "latency_ms": latency})
    return SelectorResponse(raw, _try_parse(parser, raw), backend.name, False, latency)


def _try_parse(parser, raw: str):
    if parser is None:
        return None
    try:
        return parser(raw)
    except ValueError:
        return None
