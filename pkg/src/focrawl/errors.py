"""Exception types shared across the crawler modules."""


class CrawlerError(Exception):
    """Base class for all focrawl errors."""


class EmptyCorpus(CrawlerError):
    """Weight-table construction was given no documents (or no terms)."""


class EmptyTable(CrawlerError):
    """A relevance computation was attempted against an empty weight table."""


class EmptyRun(CrawlerError):
    """A precision curve was requested for a run with no crawl records."""


class NoSeeds(CrawlerError):
    """A crawl was started with an empty seed list."""


class NoSeedPages(CrawlerError):
    """Relevancy-limit resolution was attempted with no fetched seed pages."""


class SeedsUnreachable(CrawlerError):
    """Every seed URL failed to fetch; the crawl cannot start."""


class FetchFailure(CrawlerError):
    """Base class for per-URL fetch problems; the crawl records and skips these."""


class Timeout(FetchFailure):
    pass


class TooManyRedirects(FetchFailure):
    pass


class HttpError(FetchFailure):
    def __init__(self, status: int, url: str = ""):
        super().__init__(f"HTTP {status} for {url}" if url else f"HTTP {status}")
        self.status = status
        self.url = url


class NonHtmlContent(FetchFailure):
    """The response was fetched but is not HTML; recorded, never parsed."""

    def __init__(self, content_type: str, url: str = ""):
        super().__init__(f"non-HTML content type {content_type!r} for {url}")
        self.content_type = content_type
        self.url = url


class ParseFailure(CrawlerError):
    """HTML parsing failed catastrophically (the parser is otherwise lenient)."""


class ManifestInvalid(CrawlerError):
    """A fixture graph manifest failed validation."""


class ParamInvalid(CrawlerError):
    """Synthetic graph parameters are out of range or malformed."""
