"""Reading bibliographic files and deciding what counts as "the same journal".

Three input formats are understood: a flat CSV schema, a small BibTeX subset
and a small RIS subset. None of them carries a stable author identifier, so
each format has a dedicated field for one (``author_id`` column, ``authorid``
BibTeX field, ``C1`` RIS tag). Citation counts are optional everywhere.
"""

from __future__ import annotations

import csv
import io
import re
import unicodedata
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Iterable, Mapping

from .errors import (
    ConflictingAlias,
    EmptyAfterNormalization,
    InputSyntaxError,
    MalformedRow,
    MissingAuthorId,
    MissingHeader,
    NoJournalIdentity,
    RecordError,
    RowError,
    UnknownColumn,
    ValidationError,
)
from .model import ISSN_RE, JournalKey, KeyKind, PaperRecord, validate_record

CSV_COLUMNS = ("author_id", "title", "journal", "issn", "year", "citations", "doi")
ALIAS_COLUMNS = ("alias", "canonical_kind", "canonical_key")

# CSV column -> PaperRecord field
_CSV_FIELD = {c: c for c in CSV_COLUMNS}
_CSV_FIELD["journal"] = "journal_name"


def _decode(data: bytes | str) -> str:
    if isinstance(data, (bytes, bytearray)):
        try:
            return bytes(data).decode("utf-8-sig")
        except UnicodeDecodeError as exc:
            raise InputSyntaxError(exc.start, "invalid UTF-8", unit="byte") from None
    return data.removeprefix("﻿")


# --------------------------------------------------------------------------
# journal identity

def normalize_journal(raw: str) -> str:
    """Fold a journal title to a comparison key.

    Lowercases, turns every character that is not a letter or digit into a
    space and collapses whitespace. Diacritics are kept: "Zürich" and
    "Zurich" stay different journals.

    >>> normalize_journal("Phys. Rev. Lett.")
    'phys rev lett'
    """
    text = unicodedata.normalize("NFC", raw).lower()
    text = unicodedata.normalize("NFC", text)
    kept = "".join(ch if unicodedata.category(ch)[0] in "LN" else " " for ch in text)
    out = " ".join(kept.split())
    if not out:
        raise EmptyAfterNormalization(raw)
    return out


@dataclass(frozen=True)
class AliasMap:
    """Normalized journal title -> canonical journal key, resolved in one hop."""

    entries: Mapping[str, JournalKey] = field(default_factory=dict)

    def __post_init__(self):
        entries = dict(self.entries)
        for alias, target in entries.items():
            if normalize_journal(alias) != alias:
                raise ValueError(f"alias {alias!r} is not normalized")
            if target.kind is KeyKind.BY_TITLE and target.key in entries and target.key != alias:
                raise ConflictingAlias(alias, f"target {target.key!r} is itself an alias")
        object.__setattr__(self, "entries", MappingProxyType(entries))

    def resolve(self, normalized: str) -> JournalKey | None:
        return self.entries.get(normalized)

    def __len__(self):
        return len(self.entries)


EMPTY_ALIASES = AliasMap()


def load_alias_map(data: bytes | str) -> AliasMap:
    """Read an ``alias,canonical_kind,canonical_key`` CSV into an :class:`AliasMap`."""
    reader = csv.reader(io.StringIO(_decode(data), newline=""))
    try:
        header = next(reader, None)
        rows = list(reader)
    except csv.Error as exc:
        raise MalformedRow(reader.line_num + 1, str(exc)) from None
    if header is None or tuple(h.strip() for h in header) != ALIAS_COLUMNS:
        raise MissingHeader(ALIAS_COLUMNS)

    entries: dict[str, JournalKey] = {}
    for line, row in enumerate(rows, 2):
        if not any(cell.strip() for cell in row):
            continue
        if len(row) != 3:
            raise MalformedRow(line, f"expected 3 cells, got {len(row)}")
        alias_raw, kind, key = (cell.strip() for cell in row)
        try:
            alias = normalize_journal(alias_raw)
        except EmptyAfterNormalization:
            raise MalformedRow(line, "alias has no letters or digits") from None
        kind = kind.lower()
        if kind == "issn":
            key = key.upper()
            if not ISSN_RE.match(key):
                raise MalformedRow(line, f"bad ISSN {key!r}")
            target = JournalKey.issn(key)
        elif kind == "title":
            try:
                target = JournalKey.title(normalize_journal(key))
            except EmptyAfterNormalization:
                raise MalformedRow(line, "empty canonical title") from None
        else:
            raise MalformedRow(line, f"canonical_kind must be issn or title, got {kind!r}")
        previous = entries.get(alias)
        if previous is not None and previous != target:
            raise ConflictingAlias(alias, f"{previous} vs {target} (line {line})")
        entries[alias] = target
    return AliasMap(entries)


def journal_key(record: PaperRecord, aliases: AliasMap = EMPTY_ALIASES) -> JournalKey:
    """ISSN when present, otherwise the normalized title (through the alias map)."""
    if record.issn:
        return JournalKey.issn(record.issn)
    try:
        title = normalize_journal(record.journal_name)
    except EmptyAfterNormalization:
        raise NoJournalIdentity() from None
    return aliases.resolve(title) or JournalKey.title(title)


# --------------------------------------------------------------------------
# CSV

def parse_csv(data: bytes | str) -> list[PaperRecord]:
    reader = csv.reader(io.StringIO(_decode(data), newline=""))
    try:
        header = next(reader, None)
    except csv.Error as exc:
        raise RowError(1, exc) from None
    if header is None or not any(h.strip() for h in header):
        raise MissingHeader(CSV_COLUMNS)
    header = [h.strip() for h in header]
    for name in header:
        if name not in _CSV_FIELD:
            raise UnknownColumn(name)
    missing = [c for c in CSV_COLUMNS if c not in header]
    if missing:
        raise MissingHeader(missing)

    records = []
    rows = iter(reader)
    while True:
        try:
            row = next(rows)
        except StopIteration:
            break
        except csv.Error as exc:
            raise RowError(reader.line_num + 1, exc) from None
        line = reader.line_num
        if not row or (len(row) == 1 and not row[0].strip()):
            continue
        if len(row) != len(header):
            raise RowError(line, f"expected {len(header)} cells, got {len(row)}")
        raw = {_CSV_FIELD[name]: (cell if cell.strip() else None) for name, cell in zip(header, row)}
        try:
            records.append(validate_record(raw))
        except ValidationError as exc:
            raise RowError(line, exc) from exc
    return records


def write_csv(records: Iterable[PaperRecord]) -> str:
    """Serialize records to the CSV schema read by :func:`parse_csv` (LF line ends)."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for rec in records:
        writer.writerow([
            rec.author_id,
            rec.title,
            rec.journal_name,
            rec.issn or "",
            "" if rec.year is None else rec.year,
            "" if rec.citations is None else rec.citations,
            rec.doi or "",
        ])
    return buf.getvalue()


# --------------------------------------------------------------------------
# BibTeX

BIBTEX_TYPES = {"article", "inproceedings", "misc"}
_IDENT = re.compile(r"[A-Za-z][A-Za-z0-9_\-]*")
_KEY = re.compile(r"[^\s,{}()=\"#%]+")
_BARE = re.compile(r"[A-Za-z0-9_.:/+\-]+")


class _BibReader:
    """Hand-rolled scanner for the BibTeX subset; positions are character offsets."""

    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, message, pos=None):
        return InputSyntaxError(self.pos if pos is None else pos, message)

    def skip_ws(self):
        text, n = self.text, len(self.text)
        while self.pos < n:
            ch = text[self.pos]
            if ch.isspace():
                self.pos += 1
            elif ch == "%":
                end = text.find("\n", self.pos)
                self.pos = n if end < 0 else end + 1
            else:
                break

    def peek(self):
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, chars):
        self.skip_ws()
        ch = self.peek()
        if not ch or ch not in chars:
            found = repr(ch) if ch else "end of input"
            raise self.error(f"expected one of {chars!r}, found {found}")
        self.pos += 1
        return ch

    def match(self, pattern, what):
        self.skip_ws()
        m = pattern.match(self.text, self.pos)
        if not m:
            raise self.error(f"expected {what}")
        self.pos = m.end()
        return m.group(0)

    def braced(self):
        # self.pos is just past the opening brace
        start, depth = self.pos, 1
        text = self.text
        while self.pos < len(text):
            ch = text[self.pos]
            if ch == "\\":
                self.pos += 2
                continue
            if ch == "{":
                depth += 1
            elif ch == "}":
                depth -= 1
                if depth == 0:
                    self.pos += 1
                    return text[start:self.pos - 1]
            self.pos += 1
        raise self.error("unterminated braced value", start - 1)

    def quoted(self):
        start, depth = self.pos, 0
        text = self.text
        while self.pos < len(text):
            ch = text[self.pos]
            if ch == "\\":
                self.pos += 2
                continue
            if ch == "{":
                depth += 1
            elif ch == "}":
                depth -= 1
                if depth < 0:
                    raise self.error("unbalanced brace in quoted value")
            elif ch == '"' and depth == 0:
                self.pos += 1
                return text[start:self.pos - 1]
            self.pos += 1
        raise self.error("unterminated quoted value", start - 1)

    def value(self):
        self.skip_ws()
        ch = self.peek()
        if ch == "{":
            self.pos += 1
            return self.braced()
        if ch == '"':
            self.pos += 1
            return self.quoted()
        return self.match(_BARE, "field value")

    def skip_entry_body(self, close):
        # used for @comment/@preamble/@string and unsupported entry types
        depth = 1
        opener = "{" if close == "}" else "("
        while self.pos < len(self.text):
            ch = self.text[self.pos]
            self.pos += 1
            if ch == opener:
                depth += 1
            elif ch == close:
                depth -= 1
                if depth == 0:
                    return
        raise self.error("unterminated entry")

    def entries(self):
        text = self.text
        while True:
            at = text.find("@", self.pos)
            if at < 0:
                return
            self.pos = at + 1
            entry_type = self.match(_IDENT, "entry type").lower()
            opener = self.expect("{(")
            close = "}" if opener == "{" else ")"
            if entry_type not in BIBTEX_TYPES:
                self.skip_entry_body(close)
                continue
            start = at
            key = self.match(_KEY, "citation key")
            fields = {}
            while True:
                sep = self.expect("," + close)
                if sep == close:
                    break
                self.skip_ws()
                if self.peek() == close:
                    self.pos += 1
                    break
                name = self.match(_IDENT, "field name").lower()
                self.expect("=")
                val = self.value()
                self.skip_ws()
                if self.peek() == "#":
                    raise self.error("string concatenation is not supported")
                fields.setdefault(name, val)
            yield start, key, fields


def _tex_clean(value: str) -> str:
    value = re.sub(r"\\([&%$#_{}])", r"\1", value)
    value = value.replace("{", "").replace("}", "")
    return " ".join(value.split())


def parse_bibtex(data: bytes | str) -> list[PaperRecord]:
    reader = _BibReader(_decode(data))
    records = []
    for offset, key, fields in reader.entries():
        fields = {name: _tex_clean(v) for name, v in fields.items()}
        if not fields.get("authorid"):
            raise MissingAuthorId(key)
        raw = {
            "author_id": fields["authorid"],
            "title": fields.get("title"),
            "journal_name": fields.get("journal") or fields.get("booktitle"),
            "issn": fields.get("issn"),
            "year": fields.get("year"),
            "citations": fields.get("citations"),
            "doi": fields.get("doi"),
        }
        try:
            records.append(validate_record(raw))
        except ValidationError as exc:
            raise RecordError(f"entry {key!r} (offset {offset})", exc) from exc
    return records


# --------------------------------------------------------------------------
# RIS

_RIS_LINE = re.compile(r"^([A-Z][A-Z0-9])  -(?: (.*))?$")
_YEAR_PREFIX = re.compile(r"^\s*(\d{4})")
_ISSN_ANY = re.compile(r"\b(\d{4}-\d{3}[\dXx])\b")


def _ris_records(text: str):
    current = None
    start = last_tag = None
    lines = text.splitlines()
    for lineno, line in enumerate(lines, 1):
        line = line.rstrip()
        m = _RIS_LINE.match(line)
        if m is None:
            if not line.strip():
                continue
            if current is not None and last_tag is not None:
                # continuation of a wrapped value
                current[last_tag][-1] = f"{current[last_tag][-1]} {line.strip()}"
                continue
            raise InputSyntaxError(lineno, f"not an RIS tag line: {line[:40]!r}", unit="line")
        tag, value = m.group(1), (m.group(2) or "").strip()
        if tag == "TY":
            if current is not None:
                raise InputSyntaxError(lineno, "TY before ER of the previous record", unit="line")
            current, start, last_tag = {"TY": [value]}, lineno, "TY"
            continue
        if current is None:
            raise InputSyntaxError(lineno, f"tag {tag} outside a record", unit="line")
        if tag == "ER":
            yield start, current
            current = last_tag = None
            continue
        current.setdefault(tag, []).append(value)
        last_tag = tag
    if current is not None:
        raise InputSyntaxError(max(len(lines), 1), "record not terminated by ER", unit="line")


def _ris_issn(value):
    # SN also carries ISBNs and annotations like "0031-9007 (Print)"
    if value is None:
        return None
    m = _ISSN_ANY.search(value)
    return m.group(1) if m else None


def parse_ris(data: bytes | str) -> list[PaperRecord]:
    records = []
    for index, (line, tags) in enumerate(_ris_records(_decode(data))):
        def first(*names):
            for name in names:
                for v in tags.get(name, ()):
                    if v:
                        return v
            return None

        author = first("C1")
        if not author:
            raise MissingAuthorId(index)
        year = first("PY", "Y1")
        if year is not None:
            m = _YEAR_PREFIX.match(year)
            year = m.group(1) if m else year
        raw = {
            "author_id": author,
            "title": first("T1", "TI"),
            "journal_name": first("JO", "JF", "T2"),
            "issn": _ris_issn(first("SN")),
            "year": year,
            "citations": first("C8"),
            "doi": first("DO"),
        }
        try:
            records.append(validate_record(raw))
        except ValidationError as exc:
            raise RecordError(f"record {index} (line {line})", exc) from exc
    return records


PARSERS = {"csv": parse_csv, "bibtex": parse_bibtex, "ris": parse_ris}


def parse(data: bytes | str, fmt: str = "csv") -> list[PaperRecord]:
    try:
        parser = PARSERS[fmt]
    except KeyError:
        raise ValueError(f"unknown format {fmt!r}; expected one of {sorted(PARSERS)}") from None
    return parser(data)
