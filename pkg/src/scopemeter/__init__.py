"""Two-dimensional research indices: impact H and scope M from (h, N_j)."""

__version__ = "0.1.0"

from .errors import ScopeMeterError
from .indices import compute_h, compute_nj, compute_profile_indices, from_polar, to_polar
from .ingest import (
    AliasMap,
    journal_key,
    load_alias_map,
    normalize_journal,
    parse_bibtex,
    parse_csv,
    parse_ris,
    write_csv,
)
from .model import (
    AuthorProfile,
    IndexTuple,
    JournalKey,
    KeyKind,
    PaperRecord,
    build_profile,
    validate_record,
)
from .panel import PanelReport, RankKey, build_panel_report, group_summary, pearson, rank_authors

__all__ = [
    "AliasMap", "AuthorProfile", "IndexTuple", "JournalKey", "KeyKind", "PaperRecord",
    "PanelReport", "RankKey", "ScopeMeterError",
    "build_panel_report", "build_profile", "compute_h", "compute_nj", "compute_profile_indices",
    "from_polar", "group_summary", "journal_key", "load_alias_map", "normalize_journal",
    "parse_bibtex", "parse_csv", "parse_ris", "pearson", "rank_authors", "to_polar",
    "validate_record", "write_csv",
]
