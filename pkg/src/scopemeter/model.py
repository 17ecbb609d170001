"""Validated domain types shared across the package."""

from __future__ import annotations

import re
from dataclasses import dataclass, fields
from enum import Enum
from typing import Any, Iterable, Mapping

from .errors import (
    EmptyAuthorId,
    EmptyProfile,
    InvalidField,
    MalformedIssn,
    MixedAuthorIds,
    NegativeCitations,
    YearOutOfRange,
)

ISSN_RE = re.compile(r"^\d{4}-\d{3}[\dX]$")
YEAR_MIN, YEAR_MAX = 1500, 2100


@dataclass(frozen=True)
class PaperRecord:
    """One publication attributed to one author."""

    author_id: str
    title: str = ""
    journal_name: str = ""
    issn: str | None = None
    year: int | None = None
    citations: int | None = None  # None = unknown, not zero
    doi: str | None = None


class KeyKind(str, Enum):
    BY_ISSN = "issn"
    BY_TITLE = "title"


@dataclass(frozen=True)
class JournalKey:
    kind: KeyKind
    key: str

    @classmethod
    def issn(cls, issn: str) -> JournalKey:
        return cls(KeyKind.BY_ISSN, issn)

    @classmethod
    def title(cls, normalized: str) -> JournalKey:
        return cls(KeyKind.BY_TITLE, normalized)

    def __str__(self):
        return f"{self.kind.value}:{self.key}"


@dataclass(frozen=True)
class AuthorProfile:
    """An author's deduplicated publication list. Build with :func:`build_profile`."""

    author_id: str
    records: tuple[PaperRecord, ...]

    def __post_init__(self):
        if not self.records:
            raise EmptyProfile(self.author_id)
        seen = set()
        for rec in self.records:
            if rec.author_id != self.author_id:
                raise MixedAuthorIds(self.author_id, rec.author_id)
            if rec.doi is not None:
                if rec.doi.lower() in seen:
                    raise ValueError(f"duplicate DOI {rec.doi} in profile {self.author_id}")
                seen.add(rec.doi.lower())

    @property
    def n_papers(self) -> int:
        return len(self.records)


@dataclass(frozen=True)
class IndexTuple:
    """The four scores of one author: h, N_j and their polar form (H, M)."""

    h: int
    n_j: int
    big_h: float
    big_m: float


def _clean_str(value: Any) -> str:
    if value is None:
        return ""
    return str(value).strip()


def _optional_int(name: str, value: Any) -> int | None:
    if value is None:
        return None
    if isinstance(value, bool):
        raise InvalidField(name, value)
    if isinstance(value, int):
        return value
    if isinstance(value, float):
        if not value.is_integer():
            raise InvalidField(name, value)
        return int(value)
    text = str(value).strip()
    if not text:
        return None
    try:
        return int(text)
    except ValueError:
        raise InvalidField(name, value) from None


def validate_record(raw: PaperRecord | Mapping[str, Any]) -> PaperRecord:
    """Canonicalize a record-shaped input or raise a :class:`ValidationError`.

    Accepts a :class:`PaperRecord` or a mapping using its field names. Strings
    are trimmed, the DOI lowercased, the ISSN uppercased; empty optional
    fields become ``None``. Numeric fields may be given as digit strings.
    """
    if isinstance(raw, PaperRecord):
        raw = {f.name: getattr(raw, f.name) for f in fields(PaperRecord)}
    known = {f.name for f in fields(PaperRecord)}
    extra = set(raw) - known
    if extra:
        raise InvalidField(sorted(extra)[0], raw[sorted(extra)[0]])

    author_id = _clean_str(raw.get("author_id"))
    if not author_id:
        raise EmptyAuthorId()

    issn = _clean_str(raw.get("issn")).upper() or None
    if issn is not None and not ISSN_RE.match(issn):
        raise MalformedIssn(issn)

    year = _optional_int("year", raw.get("year"))
    if year is not None and not YEAR_MIN <= year <= YEAR_MAX:
        raise YearOutOfRange(year)

    citations = _optional_int("citations", raw.get("citations"))
    if citations is not None and citations < 0:
        raise NegativeCitations(citations)

    doi = _clean_str(raw.get("doi")).lower() or None

    return PaperRecord(
        author_id=author_id,
        title=_clean_str(raw.get("title")),
        journal_name=_clean_str(raw.get("journal_name")),
        issn=issn,
        year=year,
        citations=citations,
        doi=doi,
    )


def build_profile(records: Iterable[PaperRecord], author_id: str) -> AuthorProfile:
    """Collect one author's records, dropping later duplicates of a DOI.

    Records without a DOI are always kept: there is no fuzzy matching.
    """
    author_id = author_id.strip()
    kept = []
    seen_doi = set()
    for rec in records:
        if rec.author_id != author_id:
            raise MixedAuthorIds(author_id, rec.author_id)
        if rec.doi is not None:
            if rec.doi.lower() in seen_doi:
                continue
            seen_doi.add(rec.doi.lower())
        kept.append(rec)
    return AuthorProfile(author_id, tuple(kept))


def group_by_author(records: Iterable[PaperRecord]) -> dict[str, list[PaperRecord]]:
    """Split a mixed record list by author, preserving first-seen order."""
    out: dict[str, list[PaperRecord]] = {}
    for rec in records:
        out.setdefault(rec.author_id, []).append(rec)
    return out
