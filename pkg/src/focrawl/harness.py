"""Evaluation harness: precision curves, synthetic webs, and comparison runs.

The synthetic generator stands in for the live web: a topical cluster, a
larger off-topic cluster, portal-style entry pages used as seeds, and
off-topic tunnel chains hiding small topical sub-clusters behind them.
Everything is a pure function of the parameters, so graphs, crawls and
reports are byte-reproducible. Reports carry both the crawler's own
precision (its relevance judgments) and label-based precision against the
generator's ground truth.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field, fields, replace
from pathlib import Path
from typing import Sequence

from .crawl import (
    CrawlConfig,
    CrawlRecord,
    CrawlResult,
    records_to_csv,
    resolve_relevancy_limit,
    run_bfs,
    run_focused,
    write_db_jsonl,
)
from .errors import EmptyRun, NoSeeds, ParamInvalid
from .scoring import positional_weights, relevance
from .textproc import default_stopwords, text_to_terms
from .topic import WeightTable, build_weight_table, corpus_stats, ensure_topic_terms
from .webio import FixtureFetcher, parse_page


# -- precision ---------------------------------------------------------------

@dataclass(frozen=True)
class PrecisionPoint:
    pages_downloaded: int
    relevant_pages: int
    precision: float


@dataclass(frozen=True)
class PrecisionCurve:
    points: tuple[PrecisionPoint, ...]

    @property
    def final(self) -> float:
        return self.points[-1].precision

    def mean_precision(self, start: int, stop: int) -> float:
        """Mean of the curve values over points[start:stop]."""
        window = self.points[start:stop]
        return sum(p.precision for p in window) / len(window)


def precision_curve(records: Sequence[CrawlRecord]) -> PrecisionCurve:
    """Running relevant_pages / pages_downloaded after every fetch."""
    if not records:
        raise EmptyRun("no crawl records")
    points = []
    relevant = 0
    for i, record in enumerate(records, start=1):
        if record.relevant:
            relevant += 1
        points.append(PrecisionPoint(i, relevant, relevant / i))
    return PrecisionCurve(tuple(points))


def curve_to_csv(curve: PrecisionCurve) -> str:
    lines = ["pages_downloaded,relevant_pages,precision"]
    for p in curve.points:
        lines.append(f"{p.pages_downloaded},{p.relevant_pages},{p.precision:.6f}")
    return "\n".join(lines) + "\n"


def label_precision(records: Sequence[CrawlRecord], fetcher: FixtureFetcher) -> float:
    """Fraction of fetched pages the generator labeled relevant."""
    if not records:
        raise EmptyRun("no crawl records")
    hits = sum(1 for r in records if fetcher.label(r.url) == "relevant")
    return hits / len(records)


# -- synthetic web generation -------------------------------------------------

DEFAULT_TOPIC_VOCABULARY = (
    "business", "management", "solution", "corporation", "customer",
    "commerce", "dividend", "market", "strategy", "trade", "retail",
    "supplier", "invoice", "revenue", "merchant", "payment", "logistics",
    "procurement", "broker", "startup", "investor", "profit", "brand",
    "vendor", "negotiation", "contract", "shareholder", "audit",
    "budget", "marketing", "sales", "export", "import", "ledger",
    "banking", "accounting",
)

DEFAULT_BACKGROUND_VOCABULARY = (
    "garden", "recipe", "weather", "holiday", "painting", "guitar",
    "football", "mountain", "fishing", "poetry", "camping", "puzzle",
    "wildlife", "cooking", "museum", "travel", "photography", "cinema",
    "astronomy", "knitting", "sailing", "chess", "dancing", "history",
    "novel", "orchestra", "pottery", "cycling", "aquarium", "birdwatch",
    "telescope", "volcano", "glacier", "butterfly", "origami", "calligraphy",
    "marathon", "skiing", "surfing", "theatre", "sculpture", "festival",
    "lantern", "meadow", "orchard", "rainfall", "sunset", "canyon",
)

_HOST = "http://www.web.com"


@dataclass(frozen=True)
class SynthGraphParams:
    """Knobs for the synthetic web; generation is a pure function of these."""

    topic_cluster_size: int = 400
    offtopic_cluster_size: int = 600
    tunnel_depth: int = 2
    cross_links_per_page: int = 2
    intra_links_per_page: int = 4
    topic_vocabulary: tuple[str, ...] = DEFAULT_TOPIC_VOCABULARY
    background_vocabulary: tuple[str, ...] = DEFAULT_BACKGROUND_VOCABULARY
    rng_seed: int = 0
    seed_count: int = 10
    entry_topic_links: int = 2
    entry_offtopic_links: int = 8
    tunnel_count: int = 3
    hidden_cluster_size: int = 8

    def validate(self) -> None:
        positive = ("topic_cluster_size", "offtopic_cluster_size", "seed_count",
                    "hidden_cluster_size")
        non_negative = ("tunnel_depth", "cross_links_per_page", "intra_links_per_page",
                        "entry_topic_links", "entry_offtopic_links", "tunnel_count")
        for name in positive:
            if not isinstance(getattr(self, name), int) or getattr(self, name) < 1:
                raise ParamInvalid(f"{name} must be a positive integer")
        for name in non_negative:
            if not isinstance(getattr(self, name), int) or getattr(self, name) < 0:
                raise ParamInvalid(f"{name} must be a non-negative integer")
        if not isinstance(self.rng_seed, int):
            raise ParamInvalid("rng_seed must be an integer")
        for name in ("topic_vocabulary", "background_vocabulary"):
            vocab = getattr(self, name)
            if not vocab or not all(isinstance(w, str) and w for w in vocab):
                raise ParamInvalid(f"{name} must be a non-empty list of words")


def params_from_dict(data: dict) -> SynthGraphParams:
    """Build params from a JSON mapping; unknown keys are rejected."""
    if not isinstance(data, dict):
        raise ParamInvalid("params must be a JSON object")
    known = {f.name for f in fields(SynthGraphParams)}
    unknown = set(data) - known
    if unknown:
        raise ParamInvalid(f"unknown parameter(s): {', '.join(sorted(unknown))}")
    kwargs = dict(data)
    for key in ("topic_vocabulary", "background_vocabulary"):
        if key in kwargs:
            if not isinstance(kwargs[key], (list, tuple)):
                raise ParamInvalid(f"{key} must be a list of words")
            kwargs[key] = tuple(kwargs[key])
    params = SynthGraphParams(**kwargs)
    params.validate()
    return params


def _zipf_weights(n: int) -> list[float]:
    return [1.0 / (i + 1) for i in range(n)]


class _WordSampler:
    def __init__(self, rng: random.Random, vocab: Sequence[str]):
        self._rng = rng
        self._vocab = list(vocab)
        self._weights = _zipf_weights(len(vocab))

    def words(self, n: int) -> list[str]:
        return self._rng.choices(self._vocab, weights=self._weights, k=n)

    def phrase(self, low: int, high: int) -> str:
        return " ".join(self.words(self._rng.randint(low, high)))


def generate_graph(params: SynthGraphParams) -> dict:
    """Emit a fixture manifest (pages plus designated seeds) for the params."""
    params.validate()
    rng = random.Random(params.rng_seed)
    topic = _WordSampler(rng, params.topic_vocabulary)
    background = _WordSampler(rng, params.background_vocabulary)

    entry_urls = [f"{_HOST}/portal/e{i}" for i in range(params.seed_count)]
    topic_urls = []
    for i in range(params.topic_cluster_size):
        w1, w2 = topic.words(2)
        topic_urls.append(f"{_HOST}/{w1}-{w2}/p{i}")
    offtopic_urls = []
    for i in range(params.offtopic_cluster_size):
        w1, w2 = background.words(2)
        offtopic_urls.append(f"{_HOST}/{w1}-{w2}/q{i}")

    def topic_body() -> str:
        n = rng.randint(50, 70)
        mixed = topic.words(n - n // 8) + background.words(n // 8)
        rng.shuffle(mixed)
        return " ".join(mixed)

    def background_body() -> str:
        return " ".join(background.words(rng.randint(50, 70)))

    def sample_targets(urls: list[str], k: int, avoid: str | None = None) -> list[str]:
        pool = [u for u in urls if u != avoid]
        if not pool or k <= 0:
            return []
        return rng.sample(pool, min(k, len(pool)))

    pages: list[dict] = []

    # portal-style entry pages: thin topical presence, generic anchor text
    for i, url in enumerate(entry_urls):
        body = " ".join(background.words(44) + topic.words(4))
        targets = sample_targets(topic_urls, params.entry_topic_links)
        targets += sample_targets(offtopic_urls, params.entry_offtopic_links)
        rng.shuffle(targets)
        links = [{"href": t, "anchor": background.phrase(1, 2)} for t in targets]
        pages.append({
            "url": url,
            "title": background.phrase(1, 2),
            "body": body,
            "links": links,
            "label": "irrelevant",
        })

    # topical cluster: descriptive anchors inside, generic anchors outward
    topic_links: list[list[dict]] = []
    for i, url in enumerate(topic_urls):
        links = [
            {"href": t, "anchor": topic.phrase(1, 3)}
            for t in sample_targets(topic_urls, params.intra_links_per_page, avoid=url)
        ]
        links += [
            {"href": t, "anchor": background.phrase(1, 2)}
            for t in sample_targets(offtopic_urls, params.cross_links_per_page)
        ]
        rng.shuffle(links)
        topic_links.append(links)

    # off-topic cluster
    offtopic_pages: list[dict] = []
    for i, url in enumerate(offtopic_urls):
        links = [
            {"href": t, "anchor": background.phrase(1, 2)}
            for t in sample_targets(offtopic_urls, params.intra_links_per_page, avoid=url)
        ]
        offtopic_pages.append({
            "url": url,
            "title": background.phrase(1, 2),
            "body": background_body(),
            "links": links,
            "label": "irrelevant",
        })

    # tunnel chains: off-topic hops gating hidden topical sub-clusters
    chain_pages: list[dict] = []
    hidden_pages: list[dict] = []
    for c in range(params.tunnel_count):
        hidden_urls = []
        for j in range(params.hidden_cluster_size):
            w1, w2 = topic.words(2)
            hidden_urls.append(f"{_HOST}/{w1}-{w2}/h{c}x{j}")
        chain_urls = [f"{_HOST}/{background.words(1)[0]}/c{c}x{d}"
                      for d in range(params.tunnel_depth)]
        # wire the chain entry (or the hidden cluster itself at depth 0)
        # into a random topical page
        first_hop = chain_urls[0] if chain_urls else hidden_urls[0]
        host_page = rng.randrange(params.topic_cluster_size)
        topic_links[host_page].append(
            {"href": first_hop, "anchor": background.phrase(1, 2)}
        )
        for d, url in enumerate(chain_urls):
            nxt = chain_urls[d + 1] if d + 1 < len(chain_urls) else None
            links = [{"href": nxt, "anchor": background.phrase(1, 2)}] if nxt else [
                {"href": h, "anchor": topic.phrase(1, 2)}
                for h in hidden_urls[: min(3, len(hidden_urls))]
            ]
            chain_pages.append({
                "url": url,
                "title": background.phrase(1, 2),
                "body": background_body(),
                "links": links,
                "label": "irrelevant",
            })
        for j, url in enumerate(hidden_urls):
            links = [
                {"href": t, "anchor": topic.phrase(1, 3)}
                for t in sample_targets(hidden_urls, params.intra_links_per_page, avoid=url)
            ]
            hidden_pages.append({
                "url": url,
                "title": topic.phrase(2, 4),
                "body": topic_body(),
                "links": links,
                "label": "relevant",
            })

    for i, url in enumerate(topic_urls):
        pages.append({
            "url": url,
            "title": topic.phrase(2, 4),
            "body": topic_body(),
            "links": topic_links[i],
            "label": "relevant",
        })
    pages.extend(offtopic_pages)
    pages.extend(chain_pages)
    pages.extend(hidden_pages)

    return {"seeds": entry_urls, "pages": pages}


def generate_topic_corpus(params: SynthGraphParams, doc_count: int = 12) -> list[str]:
    """Deterministic seed-corpus documents drawn from the topic vocabulary."""
    if doc_count < 1:
        raise ParamInvalid("doc_count must be positive")
    rng = random.Random(params.rng_seed * 2654435761 + 97)
    topic = _WordSampler(rng, params.topic_vocabulary)
    background = _WordSampler(rng, params.background_vocabulary)
    docs = []
    for _ in range(doc_count):
        n = rng.randint(90, 140)
        words = topic.words(n) + background.words(n // 10)
        rng.shuffle(words)
        docs.append(" ".join(words))
    return docs


def write_graph(manifest: dict, path: str | Path) -> None:
    Path(path).write_text(
        json.dumps(manifest, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )


# -- comparison runs -----------------------------------------------------------

@dataclass
class ComparisonReport:
    topic: str
    focused: CrawlResult
    bfs: CrawlResult
    focused_curve: PrecisionCurve
    bfs_curve: PrecisionCurve
    focused_label_precision: float
    bfs_label_precision: float
    config_echo: dict

    @property
    def focused_precision(self) -> float:
        return self.focused_curve.final

    @property
    def bfs_precision(self) -> float:
        return self.bfs_curve.final

    def summary_row(self) -> str:
        return ",".join([
            self.topic,
            f"{self.focused_precision:.6f}",
            f"{self.bfs_precision:.6f}",
            f"{self.focused_label_precision:.6f}",
            f"{self.bfs_label_precision:.6f}",
        ])


SUMMARY_HEADER = "topic,focused_precision,bfs_precision,focused_label_precision,bfs_label_precision"


def build_table_from_texts(topic_texts: Sequence[str], topic_name: str | None,
                           capacity: int, stoplist: frozenset[str]) -> WeightTable:
    docs = [text_to_terms(text, stoplist) for text in topic_texts]
    table = build_weight_table(corpus_stats(docs), capacity)
    if topic_name:
        table = ensure_topic_terms(table, text_to_terms(topic_name, stoplist))
    return table


def run_comparison(fetcher: FixtureFetcher, topic_texts: Sequence[str],
                   topic_name: str = "topic", *,
                   seeds: Sequence[str] | None = None,
                   max_pages: int = 1000,
                   max_level: int = 2,
                   table_capacity: int = 50,
                   relevancy_limit: float | str = "auto",
                   count_failures: bool = False,
                   stoplist: frozenset[str] | None = None) -> ComparisonReport:
    """Run focused and BFS under identical conditions and collect both curves.

    The weight table and the relevancy limit are resolved once, up front, so
    both engines see exactly the same configuration (the echo in the report
    records it).
    """
    if stoplist is None:
        stoplist = default_stopwords()
    table = build_table_from_texts(topic_texts, topic_name, table_capacity, stoplist)

    seed_list = list(seeds) if seeds else list(fetcher.seeds)
    if not seed_list:
        raise NoSeeds("no seeds given and the graph manifest designates none")

    if relevancy_limit == "auto":
        seed_docs = []
        for url in seed_list:
            try:
                seed_docs.append(parse_page(fetcher.fetch(url), stoplist))
            except Exception:
                continue
        limit = resolve_relevancy_limit(seed_docs, table)
    else:
        limit = float(relevancy_limit)

    base = CrawlConfig(
        seeds=seed_list,
        max_pages=max_pages,
        max_level=max_level,
        table_capacity=table_capacity,
        relevancy_limit=limit,
        count_failures=count_failures,
    )
    focused = run_focused(replace(base, mode="focused"), fetcher, table, stoplist)
    bfs = run_bfs(replace(base, mode="bfs"), fetcher, table, stoplist)

    echo = {
        "topic": topic_name,
        "seeds": seed_list,
        "max_pages": max_pages,
        "max_level": max_level,
        "table_capacity": table_capacity,
        "relevancy_limit": limit,
        "expansion_threshold": base.expansion_threshold,
        "table_entries": dict(sorted(table.entries.items())),
        "engines": ["focused", "bfs"],
    }
    return ComparisonReport(
        topic=topic_name,
        focused=focused,
        bfs=bfs,
        focused_curve=precision_curve(focused.records),
        bfs_curve=precision_curve(bfs.records),
        focused_label_precision=label_precision(focused.records, fetcher),
        bfs_label_precision=label_precision(bfs.records, fetcher),
        config_echo=echo,
    )


def write_report(report: ComparisonReport, outdir: str | Path) -> None:
    """Write run CSVs, curves, relevant-page DBs, summary, and config echo."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    (outdir / "focused_run.csv").write_text(records_to_csv(report.focused.records), "utf-8")
    (outdir / "bfs_run.csv").write_text(records_to_csv(report.bfs.records), "utf-8")
    (outdir / "focused_curve.csv").write_text(curve_to_csv(report.focused_curve), "utf-8")
    (outdir / "bfs_curve.csv").write_text(curve_to_csv(report.bfs_curve), "utf-8")
    write_db_jsonl(report.focused.db, outdir / "focused_db.jsonl")
    write_db_jsonl(report.bfs.db, outdir / "bfs_db.jsonl")
    (outdir / "summary.csv").write_text(
        SUMMARY_HEADER + "\n" + report.summary_row() + "\n", "utf-8"
    )
    (outdir / "run_config.json").write_text(
        json.dumps(report.config_echo, indent=2, sort_keys=True) + "\n", "utf-8"
    )
