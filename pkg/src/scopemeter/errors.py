"""Exception hierarchy.

Every error raised on purpose by the package derives from :class:`ScopeMeterError`,
so callers (and the CLI) can separate data problems from programming errors.
"""


class ScopeMeterError(Exception):
    pass


# -- record validation ------------------------------------------------------

class ValidationError(ScopeMeterError, ValueError):
    pass


class EmptyAuthorId(ValidationError):
    def __init__(self):
        super().__init__("author_id is empty")


class MalformedIssn(ValidationError):
    def __init__(self, issn):
        self.issn = issn
        super().__init__(f"malformed ISSN {issn!r} (expected NNNN-NNNC)")


class NegativeCitations(ValidationError):
    def __init__(self, value):
        self.value = value
        super().__init__(f"negative citation count {value}")


class YearOutOfRange(ValidationError):
    def __init__(self, year):
        self.year = year
        super().__init__(f"year {year} outside [1500, 2100]")


class InvalidField(ValidationError):
    def __init__(self, field, value):
        self.field = field
        self.value = value
        super().__init__(f"invalid value for {field}: {value!r}")


class EmptyProfile(ValidationError):
    def __init__(self, author_id=""):
        self.author_id = author_id
        super().__init__(f"no records for author {author_id!r}")


class MixedAuthorIds(ValidationError):
    def __init__(self, expected, found):
        self.expected = expected
        self.found = found
        super().__init__(f"record for {found!r} in profile of {expected!r}")


# -- parsing ----------------------------------------------------------------

class ParseError(ScopeMeterError):
    pass


class MissingHeader(ParseError):
    def __init__(self, missing=()):
        self.missing = tuple(missing)
        detail = f": missing {', '.join(self.missing)}" if self.missing else ""
        super().__init__(f"line 1: missing or incomplete header{detail}")


class UnknownColumn(ParseError):
    def __init__(self, column):
        self.column = column
        super().__init__(f"line 1: unknown column {column!r}")


class RecordError(ParseError):
    """A single entry/row failed validation. ``where`` locates it in the source."""

    def __init__(self, where, cause):
        self.where = where
        self.cause = cause
        super().__init__(f"{where}: {cause}")


class RowError(RecordError):
    def __init__(self, line, cause):
        self.line = line
        super().__init__(f"line {line}", cause)


class InputSyntaxError(ParseError):
    """Malformed input. ``position`` is a character offset (BibTeX) or a line (RIS)."""

    def __init__(self, position, message, unit="offset"):
        self.position = position
        self.unit = unit
        super().__init__(f"{unit} {position}: {message}")


class MissingAuthorId(ParseError):
    def __init__(self, entry):
        self.entry = entry
        super().__init__(f"entry {entry!r} has no author id")


class MalformedRow(ParseError):
    def __init__(self, line, detail=""):
        self.line = line
        super().__init__(f"line {line}: malformed row" + (f" ({detail})" if detail else ""))


# -- journal identity -------------------------------------------------------

class EmptyAfterNormalization(ScopeMeterError, ValueError):
    def __init__(self, raw):
        self.raw = raw
        super().__init__(f"journal name {raw!r} has no letters or digits")


class NoJournalIdentity(ScopeMeterError):
    def __init__(self, index=None):
        self.index = index
        where = f"record {index}" if index is not None else "record"
        super().__init__(f"{where} has neither an ISSN nor a usable journal name")


class ConflictingAlias(ScopeMeterError):
    def __init__(self, alias, detail=""):
        self.alias = alias
        super().__init__(f"conflicting alias {alias!r}" + (f": {detail}" if detail else ""))


# -- indices ----------------------------------------------------------------

class IndexComputationError(ScopeMeterError, ValueError):
    pass


class EmptyList(IndexComputationError):
    def __init__(self):
        super().__init__("citation list is empty")


class UnknownCitations(IndexComputationError):
    def __init__(self, count):
        self.count = count
        super().__init__(f"{count} record(s) lack a citation count")


class InvalidNj(IndexComputationError):
    def __init__(self, n_j):
        self.n_j = n_j
        super().__init__(f"n_j must be >= 1, got {n_j}")


class OutOfRange(IndexComputationError):
    def __init__(self, big_h, big_m):
        super().__init__(f"(H={big_h}, M={big_m}) outside H > 0, 0 < M <= 1")


# -- panel statistics -------------------------------------------------------

class StatsError(ScopeMeterError, ValueError):
    pass


class LengthMismatch(StatsError):
    def __init__(self, n, m):
        super().__init__(f"length mismatch: {n} vs {m}")


class TooFewPoints(StatsError):
    def __init__(self, n):
        super().__init__(f"need at least 2 points, got {n}")


class ZeroVariance(StatsError):
    def __init__(self):
        super().__init__("undefined (zero variance)")


class EmptyPanel(StatsError):
    def __init__(self):
        super().__init__("panel is empty")


class TooFewAuthors(StatsError):
    def __init__(self, n):
        super().__init__(f"a panel needs at least 2 authors, got {n}")


class DuplicateAuthor(StatsError):
    def __init__(self, author_id):
        self.author_id = author_id
        super().__init__(f"author {author_id!r} appears in more than one profile")


class AuthorError(ScopeMeterError):
    """Wraps an index failure with the author it belongs to."""

    def __init__(self, author_id, cause):
        self.author_id = author_id
        self.cause = cause
        super().__init__(f"author {author_id}: {cause}")


# -- fetching ---------------------------------------------------------------

class FetchError(ScopeMeterError):
    pass


class HttpError(FetchError):
    def __init__(self, status, url):
        self.status = status
        self.url = url
        super().__init__(f"HTTP {status} for {url}")


class DecodeError(FetchError):
    def __init__(self, url, detail):
        self.url = url
        super().__init__(f"cannot decode response from {url}: {detail}")


class RateLimitExhausted(FetchError):
    def __init__(self, url, attempts):
        self.url = url
        self.attempts = attempts
        super().__init__(f"gave up on {url} after {attempts} attempts")


class FetchTimeout(FetchError):
    def __init__(self, url):
        self.url = url
        super().__init__(f"timed out fetching {url}")


class NetworkError(FetchError):
    def __init__(self, url, detail):
        self.url = url
        super().__init__(f"cannot reach {url}: {detail}")


class CacheIOError(ScopeMeterError, OSError):
    def __init__(self, path, detail=""):
        self.path = path
        super().__init__(f"cache I/O failure at {path}" + (f": {detail}" if detail else ""))
