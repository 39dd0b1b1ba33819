"""Page acquisition and parsing.

Two page sources expose the same `fetch(url) -> RawPage` surface: a live
HTTP fetcher (politeness delay per host, bounded redirects and body size)
and a fixture fetcher backed by a JSON graph manifest, which makes crawls
reproducible and testable offline. Parsing turns raw HTML into terms and
canonical out-links; anchor text counts both as the link's own metadata and
as visible body text.
"""

from __future__ import annotations

import json
import threading
import time
from dataclasses import dataclass, field
from html import escape
from html.parser import HTMLParser
from pathlib import Path
from typing import Iterable
from urllib.parse import urljoin, urlsplit, urlunsplit

import requests

from .errors import (
    FetchFailure,
    HttpError,
    ManifestInvalid,
    NonHtmlContent,
    ParseFailure,
    Timeout,
    TooManyRedirects,
)
from .textproc import term_frequencies, text_to_terms

REDIRECT_LIMIT = 5
MAX_BODY_BYTES = 2 * 1024 * 1024
DEFAULT_USER_AGENT = "focrawl/0.1 (+https://example.invalid/focrawl)"


@dataclass(frozen=True)
class RawPage:
    """A fetched resource before parsing."""

    url: str
    content_type: str
    body: bytes
    fetched_at: float = 0.0
    truncated: bool = False


@dataclass(frozen=True)
class PageDocument:
    """A parsed page: terms by location plus canonical, deduplicated links."""

    url: str
    title_terms: tuple[str, ...]
    body_terms: tuple[str, ...]
    links: tuple[tuple[str, tuple[str, ...]], ...]
    term_counts: dict[str, int]

    @property
    def link_urls(self) -> list[str]:
        return [url for url, _ in self.links]


def canonicalize(base: str, href: str) -> str | None:
    """Resolve and normalize a link target; None means rejected.

    Lowercases scheme and host, strips fragments and default ports, keeps
    query strings, and turns an absent path into "/". Non-http(s) schemes
    and unparseable hrefs are rejected rather than raised.
    """
    if href is None:
        return None
    try:
        joined = urljoin(base, href.strip())
        parts = urlsplit(joined)
        scheme = parts.scheme.lower()
        if scheme not in ("http", "https"):
            return None
        host = parts.hostname
        if not host:
            return None
        port = parts.port
    except ValueError:
        return None
    netloc = host
    if port is not None and port != {"http": 80, "https": 443}[scheme]:
        netloc = f"{host}:{port}"
    path = parts.path or "/"
    return urlunsplit((scheme, netloc, path, parts.query, ""))


class _PageExtractor(HTMLParser):
    """Collects title text, visible body text, and anchors with their text."""

    _SKIP_TAGS = ("script", "style")

    def __init__(self) -> None:
        super().__init__(convert_charrefs=True)
        self.title_parts: list[str] = []
        self.body_parts: list[str] = []
        self.raw_links: list[tuple[str, str]] = []
        self._in_title = False
        self._skip_depth = 0
        self._open_anchors: list[tuple[str | None, list[str]]] = []

    def handle_starttag(self, tag, attrs):
        if tag in self._SKIP_TAGS:
            self._skip_depth += 1
        elif tag == "title":
            self._in_title = True
        elif tag == "a":
            self._open_anchors.append((dict(attrs).get("href"), []))

    def handle_endtag(self, tag):
        if tag in self._SKIP_TAGS:
            self._skip_depth = max(0, self._skip_depth - 1)
        elif tag == "title":
            self._in_title = False
        elif tag == "a" and self._open_anchors:
            self._emit_anchor()

    def handle_data(self, data):
        if self._skip_depth:
            return
        if self._in_title:
            self.title_parts.append(data)
            return
        self.body_parts.append(data)
        for _, collector in self._open_anchors:
            collector.append(data)

    def _emit_anchor(self) -> None:
        href, collected = self._open_anchors.pop()
        if href:
            self.raw_links.append((href, " ".join(collected)))

    def finish(self) -> None:
        self.close()
        while self._open_anchors:
            self._emit_anchor()


def parse_page(raw: RawPage, stoplist: frozenset[str]) -> PageDocument:
    """Parse HTML into a PageDocument; lenient except for catastrophic input."""
    text = raw.body.decode("utf-8", errors="replace")
    extractor = _PageExtractor()
    try:
        extractor.feed(text)
        extractor.finish()
    except Exception as exc:
        raise ParseFailure(f"cannot parse {raw.url}: {exc}") from exc

    title_terms = tuple(text_to_terms(" ".join(extractor.title_parts), stoplist))
    body_terms = tuple(text_to_terms(" ".join(extractor.body_parts), stoplist))

    links: list[tuple[str, tuple[str, ...]]] = []
    seen: set[str] = set()
    for href, anchor_text in extractor.raw_links:
        url = canonicalize(raw.url, href)
        if url is None or url == raw.url or url in seen:
            continue
        seen.add(url)
        links.append((url, tuple(text_to_terms(anchor_text, stoplist))))

    return PageDocument(
        url=raw.url,
        title_terms=title_terms,
        body_terms=body_terms,
        links=tuple(links),
        term_counts=term_frequencies(list(title_terms) + list(body_terms)),
    )


def html_to_text(html: str) -> str:
    """Visible text of an HTML document (title plus body), for corpus files."""
    extractor = _PageExtractor()
    try:
        extractor.feed(html)
        extractor.finish()
    except Exception as exc:
        raise ParseFailure(f"cannot parse HTML: {exc}") from exc
    return " ".join(extractor.title_parts + extractor.body_parts)


class FixtureFetcher:
    """Pure-lookup page source over a validated graph manifest."""

    def __init__(self, pages: dict[str, dict], seeds: list[str]):
        self._pages = pages
        self.seeds = seeds

    def urls(self) -> list[str]:
        return list(self._pages)

    def label(self, url: str) -> str | None:
        entry = self._pages.get(url)
        return entry.get("label") if entry else None

    def fetch(self, url: str) -> RawPage:
        current = url
        hops = 0
        while True:
            entry = self._pages.get(current)
            if entry is None:
                raise HttpError(404, current)
            target = entry.get("redirect")
            if target is None:
                break
            hops += 1
            if hops > REDIRECT_LIMIT:
                raise TooManyRedirects(f"more than {REDIRECT_LIMIT} redirects from {url}")
            current = target
        body = _render_fixture_html(entry).encode("utf-8")
        return RawPage(url=current, content_type="text/html", body=body)


def _render_fixture_html(entry: dict) -> str:
    parts = [
        "<html><head><title>%s</title></head><body>" % escape(entry.get("title", "")),
        "<p>%s</p>" % escape(entry.get("body", "")),
    ]
    for link in entry.get("links", []):
        parts.append(
            '<a href="%s">%s</a>'
            % (escape(link["href"], quote=True), escape(link["anchor"]))
        )
    parts.append("</body></html>")
    return "\n".join(parts)


def load_fixture(path: str | Path) -> FixtureFetcher:
    """Load and validate a graph.json manifest (or a directory holding one)."""
    path = Path(path)
    if path.is_dir():
        path = path / "graph.json"
    try:
        with open(path, encoding="utf-8") as fh:
            manifest = json.load(fh)
    except FileNotFoundError as exc:
        raise ManifestInvalid(f"manifest not found: {path}") from exc
    except json.JSONDecodeError as exc:
        raise ManifestInvalid(f"{path}: invalid JSON at line {exc.lineno}: {exc.msg}") from exc
    return fixture_from_manifest(manifest)


def fixture_from_manifest(manifest: dict) -> FixtureFetcher:
    if not isinstance(manifest, dict) or not isinstance(manifest.get("pages"), list):
        raise ManifestInvalid('manifest must be an object with a "pages" array')
    pages: dict[str, dict] = {}
    for i, entry in enumerate(manifest["pages"]):
        where = f"pages[{i}]"
        if not isinstance(entry, dict) or not isinstance(entry.get("url"), str):
            raise ManifestInvalid(f'{where}: each page needs a string "url"')
        url = canonicalize(entry["url"], "")
        if url is None:
            raise ManifestInvalid(f"{where}: url {entry['url']!r} is not a valid http(s) URL")
        if url in pages:
            raise ManifestInvalid(f"{where}: duplicate url {url}")
        page: dict = {}
        if "redirect" in entry:
            target = canonicalize(url, entry["redirect"])
            if target is None:
                raise ManifestInvalid(f"{where}: invalid redirect target {entry['redirect']!r}")
            page["redirect"] = target
        else:
            for key in ("title", "body"):
                value = entry.get(key, "")
                if not isinstance(value, str):
                    raise ManifestInvalid(f'{where}: "{key}" must be a string')
                page[key] = value
            links = entry.get("links", [])
            if not isinstance(links, list):
                raise ManifestInvalid(f'{where}: "links" must be an array')
            for j, link in enumerate(links):
                if (
                    not isinstance(link, dict)
                    or not isinstance(link.get("href"), str)
                    or not isinstance(link.get("anchor", ""), str)
                ):
                    raise ManifestInvalid(
                        f'{where}.links[{j}]: needs string "href" and "anchor"'
                    )
            page["links"] = [
                {"href": l["href"], "anchor": l.get("anchor", "")} for l in links
            ]
        if "label" in entry:
            if not isinstance(entry["label"], str):
                raise ManifestInvalid(f'{where}: "label" must be a string')
            page["label"] = entry["label"]
        pages[url] = page
    seeds = []
    for i, seed in enumerate(manifest.get("seeds", [])):
        url = canonicalize(seed, "") if isinstance(seed, str) else None
        if url is None:
            raise ManifestInvalid(f"seeds[{i}]: invalid URL {seed!r}")
        seeds.append(url)
    return FixtureFetcher(pages, seeds)


class LiveFetcher:
    """HTTP page source with per-host politeness and bounded responses."""

    def __init__(
        self,
        user_agent: str = DEFAULT_USER_AGENT,
        timeout: float = 10.0,
        politeness_delay: float = 0.5,
        max_body_bytes: int = MAX_BODY_BYTES,
        session: requests.Session | None = None,
        clock=time.monotonic,
        sleep=time.sleep,
    ):
        self._headers = {"User-Agent": user_agent}
        self._timeout = timeout
        self._delay = politeness_delay
        self._max_body = max_body_bytes
        if session is None:
            session = requests.Session()
        session.max_redirects = REDIRECT_LIMIT
        self._session = session
        self._clock = clock
        self._sleep = sleep
        self._lock = threading.Lock()
        self._next_slot: dict[str, float] = {}

    def _wait_for_host(self, host: str) -> None:
        # per-host serialization: reserve the next allowed slot under the lock
        with self._lock:
            now = self._clock()
            start = max(now, self._next_slot.get(host, now))
            self._next_slot[host] = start + self._delay
        if start > now:
            self._sleep(start - now)

    def fetch(self, url: str) -> RawPage:
        host = urlsplit(url).netloc
        self._wait_for_host(host)
        try:
            resp = self._session.get(
                url, headers=self._headers, timeout=self._timeout,
                allow_redirects=True, stream=True,
            )
        except requests.Timeout as exc:
            raise Timeout(f"timeout fetching {url}") from exc
        except requests.TooManyRedirects as exc:
            raise TooManyRedirects(f"more than {REDIRECT_LIMIT} redirects from {url}") from exc
        except requests.RequestException as exc:
            raise FetchFailure(f"fetch failed for {url}: {exc}") from exc
        with resp:
            if resp.status_code >= 400:
                raise HttpError(resp.status_code, url)
            content_type = resp.headers.get("Content-Type", "text/html")
            media_type = content_type.split(";")[0].strip().lower()
            if media_type and "html" not in media_type:
                raise NonHtmlContent(media_type, url)
            body, truncated = self._read_limited(resp)
        final_url = canonicalize(resp.url, "") or url
        return RawPage(
            url=final_url,
            content_type=media_type,
            body=body,
            fetched_at=time.time(),
            truncated=truncated,
        )

    def _read_limited(self, resp) -> tuple[bytes, bool]:
        chunks: list[bytes] = []
        size = 0
        for chunk in resp.iter_content(chunk_size=65536):
            chunks.append(chunk)
            size += len(chunk)
            if size > self._max_body:
                break
        body = b"".join(chunks)
        if len(body) > self._max_body:
            return body[: self._max_body], True
        return body, False
