"""Topic definition: the keyword weight table.

Raw term weights over the seed corpus are tf * df; the table keeps the
top-capacity terms and normalizes every weight by the maximum, so the
strongest keyword always sits at exactly 1.0. During a crawl the table can
grow: a page scoring at or above the expansion threshold donates its single
most frequent term, weighted by that page's relevance score.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from .errors import EmptyCorpus
from .textproc import term_frequencies

# pages at or above this relevance donate their top keyword to the table
EXPANSION_THRESHOLD = 0.9


@dataclass(frozen=True)
class CorpusStats:
    """Summed term frequency, document frequency, and document count."""

    tf_total: dict[str, int]
    df: dict[str, int]
    doc_count: int


@dataclass(frozen=True)
class WeightTable:
    """Normalized topic keywords; weights in (0, 1] with max exactly 1.0."""

    entries: dict[str, float]
    capacity: int = 50

    def __contains__(self, term: str) -> bool:
        return term in self.entries

    def __len__(self) -> int:
        return len(self.entries)

    def get(self, term: str, default: float = 0.0) -> float:
        return self.entries.get(term, default)


def corpus_stats(documents: Sequence[Sequence[str]]) -> CorpusStats:
    """Aggregate tf and df over pipeline-processed documents."""
    if not documents:
        raise EmptyCorpus("no documents in topic corpus")
    tf_total: dict[str, int] = {}
    df: dict[str, int] = {}
    for doc in documents:
        counts = term_frequencies(doc)
        for term, count in counts.items():
            tf_total[term] = tf_total.get(term, 0) + count
            df[term] = df.get(term, 0) + 1
    return CorpusStats(tf_total=tf_total, df=df, doc_count=len(documents))


def build_weight_table(stats: CorpusStats, capacity: int = 50) -> WeightTable:
    """Keep the capacity highest tf*df terms, normalized by the max weight.

    Ties break lexicographically so construction is deterministic.
    """
    if not stats.tf_total:
        raise EmptyCorpus("topic corpus has no terms")
    if capacity < 1:
        raise ValueError("capacity must be >= 1")
    raw = {term: stats.tf_total[term] * stats.df[term] for term in stats.tf_total}
    ranked = sorted(raw.items(), key=lambda kv: (-kv[1], kv[0]))[:capacity]
    w_max = ranked[0][1]
    entries = {term: weight / w_max for term, weight in ranked}
    return WeightTable(entries=entries, capacity=capacity)


def expand_table(table: WeightTable, page_terms: Mapping[str, int],
                 page_relevance: float) -> WeightTable:
    """Insert the page's most frequent term when the page is highly relevant.

    Below the threshold, or when the term is already present, the table is
    returned unchanged; existing weights are never overwritten.
    """
    if page_relevance < EXPANSION_THRESHOLD or not page_terms:
        return table
    top_term = min(page_terms, key=lambda t: (-page_terms[t], t))
    if top_term in table.entries:
        return table
    entries = dict(table.entries)
    entries[top_term] = page_relevance
    return WeightTable(entries=entries, capacity=table.capacity)


def ensure_topic_terms(table: WeightTable, topic_terms: Iterable[str]) -> WeightTable:
    """Force the topic's own terms into the table at weight 1.0.

    The table defines the crawl target, so a corpus that fails to surface the
    topic name must not produce a table blind to it. Inserting at 1.0 and
    re-truncating keeps the entry count within capacity.
    """
    entries = dict(table.entries)
    missing = [t for t in topic_terms if t not in entries]
    if not missing:
        return table
    for term in missing:
        entries[term] = 1.0
    ranked = sorted(entries.items(), key=lambda kv: (-kv[1], kv[0]))[: table.capacity]
    return WeightTable(entries=dict(ranked), capacity=table.capacity)


def save_table(table: WeightTable, path: str | Path) -> None:
    """Write term<TAB>weight lines, 6 decimals, descending weight then term."""
    rows = sorted(table.entries.items(), key=lambda kv: (-kv[1], kv[0]))
    with open(path, "w", encoding="utf-8") as fh:
        for term, weight in rows:
            fh.write(f"{term}\t{weight:.6f}\n")


def load_table(path: str | Path) -> WeightTable:
    entries: dict[str, float] = {}
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.rstrip("\n")
            if not line:
                continue
            term, weight = line.split("\t")
            entries[term] = float(weight)
    return WeightTable(entries=entries, capacity=max(len(entries), 1))
