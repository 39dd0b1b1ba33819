"""Deterministic text pipeline: tokenize, drop stopwords, Porter-stem, count.

Every other module feeds text through this one, so the rules are pinned:
tokens are maximal ASCII alphabetic runs (digits, punctuation and non-ASCII
letters all act as separators), stopwords are removed before stemming, and
single-letter tokens are discarded as noise.
"""

from __future__ import annotations

import re
from collections import Counter
from importlib import resources
from pathlib import Path
from typing import Iterable, Sequence

from .porter import stem

__all__ = [
    "tokenize",
    "remove_stopwords",
    "stem",
    "term_frequencies",
    "text_to_terms",
    "load_stopwords",
    "default_stopwords",
]

_WORD_RE = re.compile(r"[A-Za-z]+")

# tokens shorter than this are dropped after stopword removal
MIN_TOKEN_LEN = 2


def tokenize(text: str) -> list[str]:
    """Split text into lowercase alphabetic tokens, order preserved."""
    return [m.group().lower() for m in _WORD_RE.finditer(text)]


def remove_stopwords(tokens: Iterable[str], stoplist: frozenset[str]) -> list[str]:
    return [t for t in tokens if t not in stoplist]


def term_frequencies(terms: Sequence[str]) -> dict[str, int]:
    """Occurrence count per term; absent terms are not stored."""
    return dict(Counter(terms))


def text_to_terms(text: str, stoplist: frozenset[str]) -> list[str]:
    """Full pipeline: tokenize, drop stopwords and single letters, stem."""
    tokens = remove_stopwords(tokenize(text), stoplist)
    return [stem(t) for t in tokens if len(t) >= MIN_TOKEN_LEN]


def _parse_stopword_lines(lines: Iterable[str]) -> frozenset[str]:
    words = set()
    for line in lines:
        word = line.strip()
        if not word or word.startswith("#"):
            continue
        words.add(word.lower())
    return frozenset(words)


def load_stopwords(path: str | Path) -> frozenset[str]:
    """Load a stopword file: UTF-8, one word per line, '#' comments allowed."""
    with open(path, encoding="utf-8") as fh:
        return _parse_stopword_lines(fh)


_DEFAULT_STOPWORDS: frozenset[str] | None = None


def default_stopwords() -> frozenset[str]:
    """The packaged English stopword list (cached after first load)."""
    global _DEFAULT_STOPWORDS
    if _DEFAULT_STOPWORDS is None:
        text = resources.files("focrawl.data").joinpath("stopwords.txt").read_text("utf-8")
        _DEFAULT_STOPWORDS = _parse_stopword_lines(text.splitlines())
    return _DEFAULT_STOPWORDS
