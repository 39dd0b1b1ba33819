"""focrawl: a topic-focused web crawler with tunneling and a BFS baseline."""

from .crawl import (
    CrawlConfig,
    CrawlRecord,
    CrawlResult,
    FocusedCrawler,
    BfsCrawler,
    IrrelevantTable,
    RelevantPageDB,
    ScoredQueue,
    demote_siblings,
    resolve_relevancy_limit,
    run_bfs,
    run_focused,
)
from .harness import (
    ComparisonReport,
    PrecisionCurve,
    SynthGraphParams,
    generate_graph,
    generate_topic_corpus,
    label_precision,
    precision_curve,
    run_comparison,
)
from .scoring import LinkCandidate, link_score, positional_weights, relevance, text_score, url_tokens
from .textproc import default_stopwords, load_stopwords, stem, term_frequencies, text_to_terms, tokenize
from .topic import CorpusStats, WeightTable, build_weight_table, corpus_stats, expand_table
from .webio import FixtureFetcher, LiveFetcher, PageDocument, RawPage, canonicalize, load_fixture, parse_page

__version__ = "0.1.0"
