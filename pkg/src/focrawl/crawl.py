"""Crawl engines: the focused best-first crawler with tunneling, and BFS.

The focused engine keeps two score-ordered queues. The frontier holds links
extracted from relevant pages; the irrelevant table holds links that are so
far reachable only through irrelevant pages, each carrying a tunnel level.
After an irrelevant frontier page, the engine drains the irrelevant table:
the highest-scored entry is fetched if its level is within max_level; a
relevant find is stored and (below max_level) contributes its own links one
level deeper, while an irrelevant find demotes its same-level, lower-scored
siblings instead of wasting fetches on them.

A URL discovered by both a relevant and an irrelevant page lives in the
frontier only; parent lists merge. All tie-breaking is total (score desc,
insertion order, URL) so runs are byte-reproducible.
"""

from __future__ import annotations

import csv
import heapq
import io
import json
from collections import deque
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable, Iterable, Sequence

from .errors import FetchFailure, NoSeedPages, NoSeeds, ParseFailure, SeedsUnreachable
from .scoring import LinkCandidate, link_score, positional_weights, relevance, url_tokens
from .textproc import default_stopwords
from .topic import EXPANSION_THRESHOLD, WeightTable, expand_table
from .webio import PageDocument, canonicalize, parse_page

# max_level value that disables the irrelevant table entirely
TUNNEL_DISABLED = -1

LIMIT_FLOOR = 0.3
LIMIT_CEIL = 0.5


@dataclass
class CrawlConfig:
    seeds: list[str]
    max_pages: int = 1000
    max_level: int = 2
    table_capacity: int = 50
    relevancy_limit: float | str = "auto"
    expansion_threshold: float = EXPANSION_THRESHOLD
    politeness_delay: float = 0.5
    mode: str = "focused"
    count_failures: bool = False
    tunnel_relevant_links_to_frontier: bool = False


@dataclass(frozen=True)
class CrawlRecord:
    """One fetch: ordinal, URL, its relevance, and how it was reached."""

    seq: int
    url: str
    relevance: float
    relevant: bool
    via_tunnel: bool = False
    level_at_fetch: int = 0


@dataclass(frozen=True)
class StoredPage:
    url: str
    relevance: float
    term_counts: dict[str, int]
    outlinks: frozenset[str]


class RelevantPageDB:
    """Pages that passed the relevancy limit, with an inverted link index."""

    def __init__(self) -> None:
        self._pages: dict[str, StoredPage] = {}
        self._inlinks: dict[str, int] = {}

    def __len__(self) -> int:
        return len(self._pages)

    def __contains__(self, url: str) -> bool:
        return url in self._pages

    def urls(self) -> list[str]:
        return list(self._pages)

    def get(self, url: str) -> StoredPage | None:
        return self._pages.get(url)

    def pages(self) -> Iterable[StoredPage]:
        return self._pages.values()

    def inlink_count(self, url: str) -> int:
        """Number of stored pages whose out-link set contains url."""
        return self._inlinks.get(url, 0)

    def add(self, url: str, rel: float, term_counts: dict[str, int],
            outlinks: set[str]) -> None:
        if url in self._pages:
            return
        self._pages[url] = StoredPage(url, rel, dict(term_counts), frozenset(outlinks))
        for target in outlinks:
            self._inlinks[target] = self._inlinks.get(target, 0) + 1


class ScoredQueue:
    """Max-score candidate queue with URL lookup and lazy heap invalidation.

    Pop order is score descending, then first-insertion order, then URL, so
    the crawl is deterministic even under score ties.
    """

    def __init__(self) -> None:
        self._heap: list[tuple[float, int, str]] = []
        self._items: dict[str, LinkCandidate] = {}
        self._key: dict[str, tuple[float, int, str]] = {}
        self._seq_of: dict[str, int] = {}
        self._next_seq = 0

    def __len__(self) -> int:
        return len(self._items)

    def __contains__(self, url: str) -> bool:
        return url in self._items

    def get(self, url: str) -> LinkCandidate | None:
        return self._items.get(url)

    def candidates(self) -> Iterable[LinkCandidate]:
        return self._items.values()

    def add(self, cand: LinkCandidate, score: float) -> None:
        """Insert, or rescore if the URL is already queued."""
        url = cand.url
        if url in self._items:
            seq = self._seq_of[url]
        else:
            seq = self._next_seq
            self._next_seq += 1
            self._seq_of[url] = seq
            self._items[url] = cand
        cand.score = score
        key = (-score, seq, url)
        self._key[url] = key
        heapq.heappush(self._heap, key)

    def pop(self) -> LinkCandidate | None:
        while self._heap:
            key = heapq.heappop(self._heap)
            url = key[2]
            if self._key.get(url) == key:
                del self._key[url]
                del self._seq_of[url]
                return self._items.pop(url)
        return None

    def remove(self, url: str) -> LinkCandidate:
        del self._key[url]
        del self._seq_of[url]
        return self._items.pop(url)

    def snapshot(self) -> list[tuple[str, float, int]]:
        """(url, score, level) rows in pop order; for inspection and tests."""
        rows = sorted(self._key.values())
        return [(url, self._items[url].score, self._items[url].level) for _, _, url in rows]


class IrrelevantTable(ScoredQueue):
    """Score-ordered tunnel queue; entries carry a tunnel level counter."""


def demote_siblings(table: IrrelevantTable, umax: LinkCandidate) -> None:
    """Push same-level entries scored at or below a failed fetch one level deeper.

    Mutates levels in place; scores (and therefore table order) are unchanged.
    """
    for cand in table.candidates():
        if cand.score <= umax.score and cand.level == umax.level:
            cand.level += 1


def resolve_relevancy_limit(seed_pages: Sequence[PageDocument], table: WeightTable) -> float:
    """Half the mean seed-page relevance, clamped into [0.3, 0.5]."""
    if not seed_pages:
        raise NoSeedPages("no seed pages fetched")
    rels = [relevance(table, positional_weights(p.title_terms, p.body_terms))
            for p in seed_pages]
    half_mean = sum(rels) / len(rels) / 2.0
    return min(LIMIT_CEIL, max(LIMIT_FLOOR, half_mean))


@dataclass
class CrawlResult:
    records: list[CrawlRecord]
    db: RelevantPageDB
    relevancy_limit: float
    table: WeightTable
    failures: list[tuple[str, str]] = field(default_factory=list)


class _EngineBase:
    """Seed handling, fetch/parse/record plumbing shared by both engines."""

    def __init__(self, config: CrawlConfig, fetcher, table: WeightTable,
                 stoplist: frozenset[str] | None = None):
        if not config.seeds:
            raise NoSeeds("config.seeds is empty")
        self.config = config
        self.fetcher = fetcher
        self.table = table
        self.stoplist = stoplist if stoplist is not None else default_stopwords()
        self.db = RelevantPageDB()
        self.records: list[CrawlRecord] = []
        self.failures: list[tuple[str, str]] = []
        self.fetched: set[str] = set()
        self.limit: float | None = None

    # -- bookkeeping -------------------------------------------------------

    def _budget_left(self) -> bool:
        return len(self.records) < self.config.max_pages

    def _record(self, url: str, rel: float, via_tunnel: bool, level: int) -> None:
        self.records.append(CrawlRecord(
            seq=len(self.records) + 1,
            url=url,
            relevance=rel,
            relevant=rel >= self.limit,
            via_tunnel=via_tunnel,
            level_at_fetch=level,
        ))

    def _record_failure(self, url: str, exc: Exception, via_tunnel: bool, level: int) -> None:
        self.failures.append((url, str(exc)))
        if self.config.count_failures:
            self.records.append(CrawlRecord(
                seq=len(self.records) + 1,
                url=url,
                relevance=0.0,
                relevant=False,
                via_tunnel=via_tunnel,
                level_at_fetch=level,
            ))

    def _fetch_parse(self, url: str, via_tunnel: bool, level: int):
        """Fetch and parse one URL; returns (doc, relevance) or None.

        Failures are recorded and skipped. A redirect landing on an
        already-fetched page is silently dropped (content dedup).
        """
        self.fetched.add(url)
        try:
            raw = self.fetcher.fetch(url)
        except FetchFailure as exc:
            self._record_failure(url, exc, via_tunnel, level)
            return None
        if raw.url != url:
            if raw.url in self.fetched:
                return None
            self.fetched.add(raw.url)
        try:
            doc = parse_page(raw, self.stoplist)
        except ParseFailure as exc:
            self._record_failure(url, exc, via_tunnel, level)
            return None
        rel = relevance(self.table, positional_weights(doc.title_terms, doc.body_terms))
        return doc, rel

    def _store_relevant(self, doc: PageDocument, rel: float) -> None:
        outlinks = set(doc.link_urls)
        self.db.add(doc.url, rel, doc.term_counts, outlinks)
        for target in outlinks:
            self._on_new_relevant_inlink(target)

    def _on_new_relevant_inlink(self, url: str) -> None:
        """Hook: a DB page now links to url; live candidates must rescore."""

    # -- seed phase --------------------------------------------------------

    def _crawl_seeds(self) -> None:
        """Fetch seeds in order, resolve the relevancy limit, then replay.

        Records must carry relevant flags, and the limit is derived from the
        seed pages themselves, so seeds are fetched as a batch first. Their
        links always enter the queue regardless of the seed's own relevance:
        an off-topic seed must not stall the crawl.
        """
        outcomes: list[tuple[str, PageDocument | None, Exception | None]] = []
        used = 0
        for seed in self.config.seeds:
            if used >= self.config.max_pages:
                break
            url = canonicalize(seed, "")
            if url is None:
                self.failures.append((seed, "invalid seed URL"))
                continue
            if url in self.fetched:
                continue
            self.fetched.add(url)
            try:
                raw = self.fetcher.fetch(url)
                if raw.url != url:
                    if raw.url in self.fetched:
                        continue
                    self.fetched.add(raw.url)
                    url = raw.url
                doc = parse_page(raw, self.stoplist)
            except (FetchFailure, ParseFailure) as exc:
                outcomes.append((url, None, exc))
                if self.config.count_failures:
                    used += 1
                continue
            outcomes.append((url, doc, None))
            used += 1

        docs = [doc for _, doc, _ in outcomes if doc is not None]
        if not docs:
            raise SeedsUnreachable("no seed page could be fetched and parsed")

        if self.config.relevancy_limit == "auto":
            self.limit = resolve_relevancy_limit(docs, self.table)
        else:
            self.limit = float(self.config.relevancy_limit)

        for url, doc, exc in outcomes:
            if doc is None:
                self._record_failure(url, exc, via_tunnel=False, level=0)
                continue
            rel = relevance(self.table, positional_weights(doc.title_terms, doc.body_terms))
            self._record(doc.url, rel, via_tunnel=False, level=0)
            self._after_seed_page(doc, rel)

    def _after_seed_page(self, doc: PageDocument, rel: float) -> None:
        raise NotImplementedError

    def _result(self) -> CrawlResult:
        return CrawlResult(
            records=self.records,
            db=self.db,
            relevancy_limit=self.limit,
            table=self.table,
            failures=self.failures,
        )


class FocusedCrawler(_EngineBase):
    """Best-first topical crawler with bounded tunneling (see module docs).

    link_scorer can be injected for tests that need fixed link scores; the
    default applies the composite link score against the current table.
    """

    def __init__(self, config: CrawlConfig, fetcher, table: WeightTable,
                 stoplist: frozenset[str] | None = None,
                 link_scorer: Callable[[LinkCandidate], float] | None = None):
        super().__init__(config, fetcher, table, stoplist)
        self.frontier = ScoredQueue()
        self.tunnel = IrrelevantTable()
        self._scorer = link_scorer or (lambda cand: link_score(cand, self.table))

    # -- candidate management ----------------------------------------------

    def _on_new_relevant_inlink(self, url: str) -> None:
        cand = self.frontier.get(url)
        if cand is not None:
            cand.relevant_inlinks += 1
            self.frontier.add(cand, self._scorer(cand))
            return
        cand = self.tunnel.get(url)
        if cand is not None:
            cand.relevant_inlinks += 1
            self.tunnel.add(cand, self._scorer(cand))

    def _add_link(self, url: str, anchor_terms: tuple[str, ...], parent_url: str,
                  parent_rel: float, to_tunnel: bool, level: int) -> None:
        if url in self.fetched:
            return
        cand = self.frontier.get(url)
        if cand is not None:
            # frontier wins over the tunnel; just merge the new parent
            cand.parents[parent_url] = parent_rel
            self.frontier.add(cand, self._scorer(cand))
            return
        cand = self.tunnel.get(url)
        if cand is not None:
            cand.parents[parent_url] = parent_rel
            if to_tunnel:
                self.tunnel.add(cand, self._scorer(cand))
            else:
                # a relevant page found it: promote out of the tunnel
                self.tunnel.remove(url)
                cand.level = level
                self.frontier.add(cand, self._scorer(cand))
            return
        cand = LinkCandidate(
            url=url,
            anchor_terms=anchor_terms,
            url_terms=tuple(url_tokens(url, self.stoplist)),
            relevant_inlinks=self.db.inlink_count(url),
            parents={parent_url: parent_rel},
            level=level,
        )
        queue = self.tunnel if to_tunnel else self.frontier
        queue.add(cand, self._scorer(cand))

    def _enqueue_frontier_links(self, doc: PageDocument, rel: float, level: int = 0) -> None:
        for url, anchor_terms in doc.links:
            self._add_link(url, anchor_terms, doc.url, rel, to_tunnel=False, level=level)

    def handle_irrelevant(self, doc: PageDocument, rel: float, base_level: int = 0) -> None:
        """Insert an irrelevant page's out-links into the irrelevant table.

        base_level is 0 for pages reached from the frontier; pages that
        carried a tunnel level pass it through.
        """
        if self.config.max_level == TUNNEL_DISABLED:
            return
        for url, anchor_terms in doc.links:
            self._add_link(url, anchor_terms, doc.url, rel, to_tunnel=True, level=base_level)

    # -- crawl steps ---------------------------------------------------------

    def _after_seed_page(self, doc: PageDocument, rel: float) -> None:
        self.table = expand_table(self.table, doc.term_counts, rel,
                                  self.config.expansion_threshold)
        if rel >= self.limit:
            self._store_relevant(doc, rel)
        self._enqueue_frontier_links(doc, rel)

    def process_frontier_once(self) -> bool:
        """Pop and process one frontier URL; False when the frontier is empty."""
        cand = self.frontier.pop()
        if cand is None:
            return False
        res = self._fetch_parse(cand.url, via_tunnel=False, level=cand.level)
        if res is None:
            return True
        doc, rel = res
        self._record(doc.url, rel, via_tunnel=False, level=cand.level)
        self.table = expand_table(self.table, doc.term_counts, rel,
                                  self.config.expansion_threshold)
        if rel >= self.limit:
            self._store_relevant(doc, rel)
            self._enqueue_frontier_links(doc, rel)
        else:
            self.handle_irrelevant(doc, rel, base_level=cand.level)
        return True

    def tunnel_step(self) -> bool:
        """Process the highest-scored irrelevant-table entry.

        Expired entries (level beyond max_level) are discarded without a
        fetch. Returns True only when a page was actually downloaded.
        """
        cand = self.tunnel.pop()
        if cand is None:
            return False
        if cand.level > self.config.max_level:
            return False
        res = self._fetch_parse(cand.url, via_tunnel=True, level=cand.level)
        if res is None:
            return False
        doc, rel = res
        self._record(doc.url, rel, via_tunnel=True, level=cand.level)
        self.table = expand_table(self.table, doc.term_counts, rel,
                                  self.config.expansion_threshold)
        if rel >= self.limit:
            self._store_relevant(doc, rel)
            if cand.level < self.config.max_level:
                to_tunnel = not self.config.tunnel_relevant_links_to_frontier
                for url, anchor_terms in doc.links:
                    self._add_link(url, anchor_terms, doc.url, rel,
                                   to_tunnel=to_tunnel, level=cand.level + 1)
        else:
            demote_siblings(self.tunnel, cand)
        return True

    def drain_tunnel(self) -> None:
        """Work the irrelevant table until it is empty or the budget runs out."""
        while len(self.tunnel) and self._budget_left():
            self.tunnel_step()

    def run(self) -> CrawlResult:
        self._crawl_seeds()
        while self._budget_left():
            if len(self.tunnel):
                self.drain_tunnel()
                continue
            if not self.process_frontier_once():
                break
        return self._result()


class BfsCrawler(_EngineBase):
    """FIFO baseline: no scoring, no tunneling, but the same records and DB."""

    def __init__(self, config: CrawlConfig, fetcher, table: WeightTable,
                 stoplist: frozenset[str] | None = None):
        super().__init__(config, fetcher, table, stoplist)
        self.queue: deque[str] = deque()
        self.seen: set[str] = set()

    def _enqueue_links(self, doc: PageDocument) -> None:
        for url, _ in doc.links:
            if url not in self.seen and url not in self.fetched:
                self.seen.add(url)
                self.queue.append(url)

    def _after_seed_page(self, doc: PageDocument, rel: float) -> None:
        if rel >= self.limit:
            self._store_relevant(doc, rel)
        self._enqueue_links(doc)

    def run(self) -> CrawlResult:
        self._crawl_seeds()
        while self.queue and self._budget_left():
            url = self.queue.popleft()
            if url in self.fetched:
                continue
            res = self._fetch_parse(url, via_tunnel=False, level=0)
            if res is None:
                continue
            doc, rel = res
            self._record(doc.url, rel, via_tunnel=False, level=0)
            if rel >= self.limit:
                self._store_relevant(doc, rel)
            self._enqueue_links(doc)
        return self._result()


def run_focused(config: CrawlConfig, fetcher, table: WeightTable,
                stoplist: frozenset[str] | None = None,
                link_scorer: Callable[[LinkCandidate], float] | None = None) -> CrawlResult:
    return FocusedCrawler(config, fetcher, table, stoplist, link_scorer).run()


def run_bfs(config: CrawlConfig, fetcher, table: WeightTable,
            stoplist: frozenset[str] | None = None) -> CrawlResult:
    return BfsCrawler(config, fetcher, table, stoplist).run()


# -- persistence -------------------------------------------------------------

CSV_HEADER = ["seq", "url", "relevance", "relevant", "via_tunnel", "level"]


def records_to_csv(records: Sequence[CrawlRecord]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for r in records:
        writer.writerow([
            r.seq,
            r.url,
            f"{r.relevance:.6f}",
            "true" if r.relevant else "false",
            "true" if r.via_tunnel else "false",
            r.level_at_fetch,
        ])
    return buf.getvalue()


def write_records_csv(records: Sequence[CrawlRecord], path: str | Path) -> None:
    Path(path).write_text(records_to_csv(records), encoding="utf-8")


def db_to_jsonl(db: RelevantPageDB) -> str:
    lines = []
    for page in db.pages():
        lines.append(json.dumps({
            "url": page.url,
            "relevance": page.relevance,
            "terms": dict(sorted(page.term_counts.items())),
            "outlinks": sorted(page.outlinks),
        }, sort_keys=True))
    return "\n".join(lines) + ("\n" if lines else "")


def write_db_jsonl(db: RelevantPageDB, path: str | Path) -> None:
    Path(path).write_text(db_to_jsonl(db), encoding="utf-8")
