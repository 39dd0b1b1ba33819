"""Command-line interface.

Subcommands: build-table, crawl, gen-graph, compare. Exit codes: 0 on
success, 2 on configuration errors (bad arguments, files, manifests or
params), 3 on run failures.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .crawl import CrawlConfig, run_bfs, run_focused, write_db_jsonl, write_records_csv
from .errors import CrawlerError, EmptyCorpus, ManifestInvalid, NoSeeds, ParamInvalid
from .harness import (
    SUMMARY_HEADER,
    SynthGraphParams,
    build_table_from_texts,
    generate_graph,
    params_from_dict,
    precision_curve,
    run_comparison,
    write_graph,
    write_report,
)
from .textproc import default_stopwords, load_stopwords
from .topic import load_table, save_table
from .webio import LiveFetcher, html_to_text, load_fixture

CONFIG_EXIT = 2
RUN_EXIT = 3

_CONFIG_ERRORS = (ParamInvalid, ManifestInvalid, EmptyCorpus, NoSeeds,
                  FileNotFoundError, NotADirectoryError, ValueError)


def load_topic_texts(path: Path) -> list[str]:
    """Read a topic corpus directory: .txt/.md raw, .html/.htm stripped to text."""
    if not path.is_dir():
        raise NotADirectoryError(f"topic dir not found: {path}")
    texts = []
    for file in sorted(path.iterdir()):
        if file.suffix.lower() in (".txt", ".md", ".text"):
            texts.append(file.read_text(encoding="utf-8", errors="replace"))
        elif file.suffix.lower() in (".html", ".htm"):
            texts.append(html_to_text(file.read_text(encoding="utf-8", errors="replace")))
    if not texts:
        raise EmptyCorpus(f"no corpus files (*.txt, *.md, *.html) in {path}")
    return texts


def _stoplist(args) -> frozenset[str]:
    if getattr(args, "stopwords", None):
        return load_stopwords(args.stopwords)
    return default_stopwords()


def _read_seeds(path: Path) -> list[str]:
    seeds = []
    for line in path.read_text(encoding="utf-8").splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            seeds.append(line)
    return seeds


def _relevancy_limit(value: str) -> float | str:
    if value == "auto":
        return value
    limit = float(value)
    if not 0.0 <= limit <= 1.0:
        raise argparse.ArgumentTypeError("relevancy limit must be in [0, 1] or 'auto'")
    return limit


def cmd_build_table(args) -> int:
    stoplist = _stoplist(args)
    texts = load_topic_texts(Path(args.topic_dir))
    topic = args.topic if args.topic is not None else Path(args.topic_dir).name
    table = build_table_from_texts(texts, topic, args.capacity, stoplist)
    save_table(table, args.out)
    print(f"wrote {len(table)} keywords to {args.out} (topic: {topic})")
    return 0


def cmd_crawl(args) -> int:
    stoplist = _stoplist(args)
    if args.graph:
        fetcher = load_fixture(args.graph)
    else:
        fetcher = LiveFetcher(timeout=args.timeout, politeness_delay=args.politeness_delay)
    seeds = _read_seeds(Path(args.seeds))
    table = load_table(args.table)
    config = CrawlConfig(
        seeds=seeds,
        max_pages=args.max_pages,
        max_level=args.max_level,
        relevancy_limit=args.relevancy_limit,
        politeness_delay=args.politeness_delay,
        mode=args.mode,
        count_failures=args.count_failures,
    )
    run = run_focused if args.mode == "focused" else run_bfs
    result = run(config, fetcher, table, stoplist)
    write_records_csv(result.records, args.out)
    if args.db:
        write_db_jsonl(result.db, args.db)
    if result.records:
        final = precision_curve(result.records).final
        print(f"{args.mode}: {len(result.records)} pages, {len(result.db)} relevant, "
              f"precision {final:.4f}, relevancy limit {result.relevancy_limit:.4f}")
    else:
        print(f"{args.mode}: no pages fetched")
    return 0


def cmd_gen_graph(args) -> int:
    if args.params:
        with open(args.params, encoding="utf-8") as fh:
            try:
                data = json.load(fh)
            except json.JSONDecodeError as exc:
                raise ParamInvalid(f"{args.params}: invalid JSON: {exc.msg}") from exc
        params = params_from_dict(data)
    else:
        params = SynthGraphParams()
    if args.seed is not None:
        params = params_from_dict({**params.__dict__, "rng_seed": args.seed})
    manifest = generate_graph(params)
    write_graph(manifest, args.out)
    print(f"wrote {len(manifest['pages'])} pages ({len(manifest['seeds'])} seeds) to {args.out}")
    return 0


def cmd_compare(args) -> int:
    stoplist = _stoplist(args)
    fetcher = load_fixture(args.graph)
    texts = load_topic_texts(Path(args.topic_dir))
    topic = args.topic if args.topic is not None else Path(args.topic_dir).name
    seeds = _read_seeds(Path(args.seeds)) if args.seeds else None
    report = run_comparison(
        fetcher,
        texts,
        topic,
        seeds=seeds,
        max_pages=args.max_pages,
        max_level=args.max_level,
        table_capacity=args.capacity,
        relevancy_limit=args.relevancy_limit,
        stoplist=stoplist,
    )
    write_report(report, args.out)
    print(SUMMARY_HEADER)
    print(report.summary_row())
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="focrawl", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("build-table", help="build a topic weight table from a corpus directory")
    p.add_argument("topic_dir")
    p.add_argument("--capacity", type=int, default=50)
    p.add_argument("--topic", default=None, help="topic name (default: directory name)")
    p.add_argument("--stopwords", default=None)
    p.add_argument("--out", default="table.tsv")
    p.set_defaults(func=cmd_build_table)

    p = sub.add_parser("crawl", help="run one crawl (focused or bfs)")
    p.add_argument("--mode", choices=("focused", "bfs"), default="focused")
    source = p.add_mutually_exclusive_group(required=True)
    source.add_argument("--graph", default=None, help="fixture graph.json to crawl")
    source.add_argument("--live", action="store_true", help="crawl the live web")
    p.add_argument("--seeds", required=True, help="seed URL file, one per line")
    p.add_argument("--table", required=True, help="weight table TSV")
    p.add_argument("--max-pages", type=int, required=True)
    p.add_argument("--max-level", type=int, default=2)
    p.add_argument("--relevancy-limit", type=_relevancy_limit, default="auto")
    p.add_argument("--out", default="run.csv")
    p.add_argument("--db", default=None, help="also write the relevant-page DB (JSONL)")
    p.add_argument("--count-failures", action="store_true")
    p.add_argument("--stopwords", default=None)
    p.add_argument("--politeness-delay", type=float, default=0.5)
    p.add_argument("--timeout", type=float, default=10.0)
    p.set_defaults(func=cmd_crawl)

    p = sub.add_parser("gen-graph", help="generate a synthetic web graph")
    p.add_argument("--params", default=None, help="params JSON file (defaults used if omitted)")
    p.add_argument("--seed", type=int, default=None, help="override rng_seed")
    p.add_argument("--out", default="graph.json")
    p.set_defaults(func=cmd_gen_graph)

    p = sub.add_parser("compare", help="run focused vs bfs on a graph and write a report")
    p.add_argument("--graph", required=True)
    p.add_argument("--topic-dir", required=True)
    p.add_argument("--out", required=True, help="report output directory")
    p.add_argument("--topic", default=None)
    p.add_argument("--capacity", type=int, default=50)
    p.add_argument("--max-pages", type=int, default=1000)
    p.add_argument("--max-level", type=int, default=2)
    p.add_argument("--relevancy-limit", type=_relevancy_limit, default="auto")
    p.add_argument("--seeds", default=None, help="override the manifest's seed list")
    p.add_argument("--stopwords", default=None)
    p.set_defaults(func=cmd_compare)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _CONFIG_ERRORS as exc:
        print(f"focrawl: {exc}", file=sys.stderr)
        return CONFIG_EXIT
    except CrawlerError as exc:
        print(f"focrawl: {exc}", file=sys.stderr)
        return RUN_EXIT


if __name__ == "__main__":
    sys.exit(main())
