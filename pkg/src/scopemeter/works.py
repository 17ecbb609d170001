"""Fetching an author's works from an OpenAlex-style HTTP API.

The listing endpoint is paged with an opaque cursor::

    GET {base_url}/works?filter=author.id:{id}&per-page=200&cursor=*[&mailto=...]
    -> {"results": [...], "meta": {"next_cursor": "..."}}

Paging stops when the cursor is missing or a page comes back empty. Every
response body is cached on disk under ``sha256(url)``; fresh entries are
served without touching the network.
"""

from __future__ import annotations

import hashlib
import json
import logging
import os
import random
import socket
import tempfile
import time
import urllib.error
import urllib.parse
import urllib.request
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable

from .errors import (
    CacheIOError,
    DecodeError,
    FetchTimeout,
    HttpError,
    NetworkError,
    RateLimitExhausted,
    ValidationError,
)
from .model import ISSN_RE, PaperRecord, validate_record

log = logging.getLogger(__name__)

DEFAULT_BASE_URL = "https://api.openalex.org"
CONTACT_ENV = "SCOPEMETER_CONTACT"
PAGE_SIZE = 200
MAX_ATTEMPTS = 5


@dataclass(frozen=True)
class FetchConfig:
    author_id: str
    cache_dir: Path
    base_url: str = DEFAULT_BASE_URL
    polite_contact: str | None = None
    cache_ttl: float = 86400
    max_rps: float = 5.0
    timeout: float = 30.0
    page_size: int = PAGE_SIZE

    def __post_init__(self):
        if not self.author_id.strip():
            raise ValueError("author_id is empty")
        if not self.max_rps > 0:
            raise ValueError(f"max_rps must be > 0, got {self.max_rps}")
        if self.cache_ttl < 0:
            raise ValueError(f"cache_ttl must be >= 0, got {self.cache_ttl}")
        if not self.timeout > 0:
            raise ValueError(f"timeout must be > 0, got {self.timeout}")
        if not 1 <= self.page_size <= PAGE_SIZE:
            raise ValueError(f"page_size must be in [1, {PAGE_SIZE}]")
        object.__setattr__(self, "cache_dir", Path(self.cache_dir))


# --------------------------------------------------------------------------
# disk cache

class ResponseCache:
    """One ``<sha256(url)>.json`` body plus a ``.meta`` sidecar per request URL."""

    def __init__(self, cache_dir: str | Path, ttl: float):
        self.cache_dir = Path(cache_dir)
        self.ttl = ttl

    @staticmethod
    def key(url: str) -> str:
        return hashlib.sha256(url.encode("utf-8")).hexdigest()

    def paths(self, url: str) -> tuple[Path, Path]:
        stem = self.cache_dir / self.key(url)
        return stem.with_suffix(".json"), stem.with_suffix(".meta")

    def get(self, url: str, now: float | None = None) -> bytes | None:
        body_path, meta_path = self.paths(url)
        try:
            meta = json.loads(meta_path.read_text("utf-8"))
            fetched_at = float(meta["fetched_at"])
            if (time.time() if now is None else now) - fetched_at > self.ttl:
                return None
            return body_path.read_bytes()
        except (OSError, ValueError, KeyError, TypeError):
            return None

    def put(self, url: str, body: bytes) -> None:
        body_path, meta_path = self.paths(url)
        meta = json.dumps({"url": url, "fetched_at": time.time()}).encode("utf-8")
        try:
            self.cache_dir.mkdir(parents=True, exist_ok=True)
            # body first: a reader that finds the new meta also finds the new body
            _atomic_write(body_path, body)
            _atomic_write(meta_path, meta)
        except OSError as exc:
            raise CacheIOError(self.cache_dir, str(exc)) from exc


def _atomic_write(path: Path, data: bytes) -> None:
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def clear_cache(cache_dir: str | Path, older_than: float = 0) -> int:
    """Delete cache entries older than ``older_than`` seconds; return how many.

    An entry is a ``.json``/``.meta`` pair. Age comes from the sidecar's
    fetch timestamp, or the file mtime when the sidecar is unreadable.
    """
    cache_dir = Path(cache_dir)
    if not cache_dir.is_dir():
        raise CacheIOError(cache_dir, "not a directory")
    now = time.time()
    removed = 0
    try:
        stems = sorted({p.with_suffix("") for p in cache_dir.iterdir() if p.suffix in (".json", ".meta")})
        for stem in stems:
            body, meta = stem.with_suffix(".json"), stem.with_suffix(".meta")
            try:
                fetched_at = float(json.loads(meta.read_text("utf-8"))["fetched_at"])
            except (OSError, ValueError, KeyError, TypeError):
                existing = [p for p in (body, meta) if p.exists()]
                fetched_at = min(p.stat().st_mtime for p in existing) if existing else now
            if older_than <= 0 or now - fetched_at > older_than:
                for p in (body, meta):
                    p.unlink(missing_ok=True)
                removed += 1
    except OSError as exc:
        raise CacheIOError(cache_dir, str(exc)) from exc
    return removed


# --------------------------------------------------------------------------
# pacing and retries

class RateLimiter:
    """Spaces calls at least ``1 / max_rps`` seconds apart."""

    def __init__(self, max_rps: float, clock: Callable[[], float] = time.monotonic,
                 sleep: Callable[[float], None] = time.sleep):
        self.interval = 1.0 / max_rps
        self.clock = clock
        self.sleep = sleep
        self._last: float | None = None

    def wait(self) -> None:
        if self._last is not None:
            delay = self._last + self.interval - self.clock()
            if delay > 0:
                self.sleep(delay)
        self._last = self.clock()


def backoff_delay(attempt: int, base: float = 1.0, factor: float = 2.0,
                  rng: random.Random | None = None) -> float:
    """Full-jitter exponential backoff: uniform in [0, base * factor**attempt]."""
    rng = rng or random
    return rng.uniform(0, base * factor ** attempt)


def _retryable(status: int) -> bool:
    return status == 429 or 500 <= status < 600


# --------------------------------------------------------------------------
# provider translation

def _strip_doi(doi: str | None) -> str | None:
    if not doi:
        return None
    doi = doi.strip()
    for prefix in ("https://doi.org/", "http://doi.org/", "https://dx.doi.org/", "doi:"):
        if doi.lower().startswith(prefix):
            return doi[len(prefix):]
    return doi


def _venue(work: dict[str, Any]) -> tuple[str | None, str | None]:
    """(venue name, ISSN) from the host-venue block, or the primary location source."""
    host = work.get("host_venue") or {}
    name, issn = host.get("display_name"), host.get("issn_l")
    if not (name or issn):
        source = (work.get("primary_location") or {}).get("source") or {}
        name, issn = source.get("display_name"), source.get("issn_l")
        if not issn and source.get("issn"):
            issn = source["issn"][0]
    if issn and not ISSN_RE.match(str(issn).strip().upper()):
        issn = None
    return name, issn


def work_to_record(work: dict[str, Any], author_id: str) -> PaperRecord | str:
    """Translate one provider work into a record, or return the reason it was skipped."""
    name, issn = _venue(work)
    if not (name or issn):
        return f"no venue for work {work.get('id', '?')}"
    raw = {
        "author_id": author_id,
        "title": work.get("display_name") or work.get("title") or "",
        "journal_name": name or "",
        "issn": issn,
        "year": work.get("publication_year"),
        "citations": work.get("cited_by_count"),
        "doi": _strip_doi(work.get("doi")),
    }
    try:
        return validate_record(raw)
    except ValidationError as exc:
        return f"invalid work {work.get('id', '?')}: {exc}"


# --------------------------------------------------------------------------
# client

@dataclass
class FetchResult:
    records: list[PaperRecord]
    skipped: list[str] = field(default_factory=list)
    network_requests: int = 0
    cache_hits: int = 0

    def summary(self) -> str:
        return f"fetched={len(self.records)} skipped={len(self.skipped)}"


class WorksClient:
    """Sequential, rate-limited, cached fetch session for one provider."""

    def __init__(self, config: FetchConfig, *, backoff_base: float = 1.0,
                 sleep: Callable[[float], None] = time.sleep, rng: random.Random | None = None):
        self.config = config
        self.cache = ResponseCache(config.cache_dir, config.cache_ttl)
        self.limiter = RateLimiter(config.max_rps, sleep=sleep)
        self.backoff_base = backoff_base
        self.sleep = sleep
        self.rng = rng or random.Random()
        self.network_requests = 0
        self.cache_hits = 0

    def page_url(self, cursor: str) -> str:
        cfg = self.config
        params = {
            "filter": f"author.id:{cfg.author_id}",
            "per-page": str(cfg.page_size),
            "cursor": cursor,
        }
        if cfg.polite_contact:
            params["mailto"] = cfg.polite_contact
        return f"{cfg.base_url.rstrip('/')}/works?{urllib.parse.urlencode(params)}"

    def _request(self, url: str) -> bytes:
        req = urllib.request.Request(url, headers={"Accept": "application/json",
                                                   "User-Agent": "scopemeter"})
        for attempt in range(MAX_ATTEMPTS):
            self.limiter.wait()
            self.network_requests += 1
            try:
                with urllib.request.urlopen(req, timeout=self.config.timeout) as resp:
                    return resp.read()
            except urllib.error.HTTPError as exc:
                if not _retryable(exc.code):
                    raise HttpError(exc.code, url) from None
                log.info("HTTP %s for %s (attempt %d)", exc.code, url, attempt + 1)
            except (socket.timeout, TimeoutError):
                raise FetchTimeout(url) from None
            except urllib.error.URLError as exc:
                if isinstance(exc.reason, (socket.timeout, TimeoutError)):
                    raise FetchTimeout(url) from None
                raise NetworkError(url, exc.reason) from None
            if attempt + 1 < MAX_ATTEMPTS:
                self.sleep(backoff_delay(attempt, self.backoff_base, rng=self.rng))
        raise RateLimitExhausted(url, MAX_ATTEMPTS)

    def get_json(self, url: str) -> dict[str, Any]:
        body = self.cache.get(url)
        if body is not None:
            self.cache_hits += 1
        else:
            body = self._request(url)
            self._decode(url, body)  # never cache a body we cannot read
            self.cache.put(url, body)
        return self._decode(url, body)

    @staticmethod
    def _decode(url: str, body: bytes) -> dict[str, Any]:
        try:
            payload = json.loads(body)
        except ValueError as exc:
            raise DecodeError(url, exc) from None
        if not isinstance(payload, dict) or not isinstance(payload.get("results"), list):
            raise DecodeError(url, "no results array")
        return payload

    def pages(self):
        cursor = "*"
        while cursor:
            payload = self.get_json(self.page_url(cursor))
            results = payload["results"]
            if not results:
                return
            yield results
            cursor = (payload.get("meta") or {}).get("next_cursor") or payload.get("next_cursor")

    def fetch(self) -> FetchResult:
        records, skipped = [], []
        for page in self.pages():
            for work in page:
                out = work_to_record(work, self.config.author_id) if isinstance(work, dict) else "not an object"
                if isinstance(out, str):
                    log.warning("skipping: %s", out)
                    skipped.append(out)
                else:
                    records.append(out)
        return FetchResult(records, skipped, self.network_requests, self.cache_hits)


def fetch_author_works(config: FetchConfig, **client_options) -> FetchResult:
    """Page through every work of ``config.author_id`` and translate it to records."""
    return WorksClient(config, **client_options).fetch()


def contact_from_env(explicit: str | None = None) -> str | None:
    return explicit or os.environ.get(CONTACT_ENV) or None
