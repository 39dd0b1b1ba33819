"""Relevance and link-priority scoring.

Page relevance is the cosine similarity between the topic weight table and
the page's positional term weights, where a title occurrence counts double a
body occurrence. An unvisited link's priority is the plain sum of four
parts: URL-token relevance, anchor-text relevance, the number of relevant
crawled pages linking to it, and the sum of its parents' relevance scores.
The sum is deliberately left unnormalized; the frontier only consumes the
ordering.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .errors import EmptyTable
from .textproc import MIN_TOKEN_LEN, remove_stopwords, stem, tokenize
from .topic import WeightTable

TITLE_FACTOR = 2
BODY_FACTOR = 1

# scheme and boilerplate tokens stripped from URLs before scoring
_URL_NOISE = frozenset({"http", "https", "www", "com", "org", "net", "html", "htm", "php"})


def positional_weights(title_terms: Sequence[str], body_terms: Sequence[str]) -> dict[str, float]:
    """Per-term page weight: 2 per title occurrence plus 1 per body occurrence."""
    weights: dict[str, float] = {}
    for term in title_terms:
        weights[term] = weights.get(term, 0.0) + TITLE_FACTOR
    for term in body_terms:
        weights[term] = weights.get(term, 0.0) + BODY_FACTOR
    return weights


def relevance(table: WeightTable, page_weights: Mapping[str, float]) -> float:
    """Cosine similarity between the weight table and the page, in [0, 1].

    The page norm runs over all page terms, not just the ones shared with
    the table. Pages with no terms (or no overlap) score 0.
    """
    if not table.entries:
        raise EmptyTable("weight table has no entries")
    if not page_weights:
        return 0.0
    dot = 0.0
    for term, w_kt in table.entries.items():
        w_kp = page_weights.get(term)
        if w_kp is not None:
            dot += w_kt * w_kp
    if dot == 0.0:
        return 0.0
    table_norm = sum(w * w for w in table.entries.values())
    page_norm = sum(w * w for w in page_weights.values())
    value = dot / math.sqrt(table_norm * page_norm)
    return min(max(value, 0.0), 1.0)


def text_score(table: WeightTable, terms: Sequence[str]) -> float:
    """Relevance of a bare term sequence, treating every term as body text."""
    if not terms:
        return 0.0
    return relevance(table, positional_weights([], terms))


@dataclass
class LinkCandidate:
    """An unvisited URL with everything its priority depends on.

    parents maps parent URL to that parent's relevance, so a page linking to
    the same target several times still contributes once. The crawl engine
    is the single writer of the mutable fields.
    """

    url: str
    anchor_terms: tuple[str, ...] = ()
    url_terms: tuple[str, ...] = ()
    relevant_inlinks: int = 0
    parents: dict[str, float] = field(default_factory=dict)
    level: int = 0
    score: float = 0.0

    @property
    def parent_relevances(self) -> list[float]:
        return list(self.parents.values())


def link_score(candidate: LinkCandidate, table: WeightTable) -> float:
    """URL score + anchor score + relevant in-link count + parent relevance sum."""
    return (
        text_score(table, candidate.url_terms)
        + text_score(table, candidate.anchor_terms)
        + candidate.relevant_inlinks
        + sum(candidate.parents.values())
    )


def url_tokens(url: str, stoplist: frozenset[str]) -> list[str]:
    """Terms mined from a URL: path/host words minus scheme and suffix noise.

    Splitting on every non-alphabetic character covers the usual URL
    separators (/ . - _ ? = & : and digits) while keeping tokens valid terms.
    """
    tokens = [t for t in tokenize(url) if t not in _URL_NOISE]
    tokens = remove_stopwords(tokens, stoplist)
    return [stem(t) for t in tokens if len(t) >= MIN_TOKEN_LEN]
