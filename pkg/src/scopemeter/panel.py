"""Panel-level analysis: correlations, per-group summaries and rankings."""

from __future__ import annotations

import math
import statistics
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Mapping, Sequence

from . import __version__
from .errors import (
    AuthorError,
    DuplicateAuthor,
    EmptyPanel,
    LengthMismatch,
    ScopeMeterError,
    TooFewAuthors,
    TooFewPoints,
    ZeroVariance,
)
from .indices import compute_profile_indices
from .ingest import EMPTY_ALIASES, AliasMap
from .model import AuthorProfile, IndexTuple

UNGROUPED = "ungrouped"
STDDEV_CONVENTION = "sample (n-1); 0 for singleton groups"
ZERO_VARIANCE_REASON = "undefined (zero variance)"


def pearson(xs: Sequence[float], ys: Sequence[float]) -> float:
    """Sample Pearson correlation coefficient of two equally long sequences."""
    n = len(xs)
    if n != len(ys):
        raise LengthMismatch(n, len(ys))
    if n < 2:
        raise TooFewPoints(n)
    # exact constancy test; a centred sum could be off by rounding
    if len(set(xs)) == 1 or len(set(ys)) == 1:
        raise ZeroVariance()
    mx = math.fsum(xs) / n
    my = math.fsum(ys) / n
    dx = [x - mx for x in xs]
    dy = [y - my for y in ys]
    sxy = math.fsum(a * b for a, b in zip(dx, dy))
    sxx = math.fsum(a * a for a in dx)
    syy = math.fsum(b * b for b in dy)
    denom = math.sqrt(sxx * syy)
    if denom == 0 or math.isinf(denom):
        # product under/overflowed; the split form is one rounding step worse
        denom = math.sqrt(sxx) * math.sqrt(syy)
        if denom == 0:
            raise ZeroVariance()
    r = sxy / denom
    return max(-1.0, min(1.0, r))


@dataclass(frozen=True)
class GroupStats:
    count: int
    mean_m: float
    std_m: float
    mean_h: float
    std_h: float


def _std(values: list[float]) -> float:
    return statistics.stdev(values) if len(values) > 1 else 0.0


def group_summary(tuples: Iterable[tuple[IndexTuple, str]]) -> dict[str, GroupStats]:
    """Mean and sample standard deviation of M and H for every group label.

    Groups come back sorted by label.
    """
    by_group: dict[str, list[IndexTuple]] = {}
    for idx, label in tuples:
        by_group.setdefault(label, []).append(idx)
    if not by_group:
        raise EmptyPanel()
    out = {}
    for label in sorted(by_group):
        ms = [t.big_m for t in by_group[label]]
        hs = [t.big_h for t in by_group[label]]
        out[label] = GroupStats(
            count=len(ms),
            mean_m=statistics.fmean(ms),
            std_m=_std(ms),
            mean_h=statistics.fmean(hs),
            std_h=_std(hs),
        )
    return out


@dataclass(frozen=True)
class PanelRow:
    author_id: str
    group: str
    n_papers: int
    index: IndexTuple

    @property
    def h(self):
        return self.index.h

    @property
    def n_j(self):
        return self.index.n_j

    @property
    def big_h(self):
        return self.index.big_h

    @property
    def big_m(self):
        return self.index.big_m


@dataclass(frozen=True)
class PanelReport:
    """Everything behind the two panel scatter plots.

    A correlation is ``None`` when it is undefined; the matching entry in
    ``reasons`` says why.
    """

    rows: tuple[PanelRow, ...]
    pearson_h_nj: float | None
    pearson_H_M: float | None
    groups: Mapping[str, GroupStats]
    reasons: Mapping[str, str]
    source: str = ""

    def row(self, author_id: str) -> PanelRow:
        for r in self.rows:
            if r.author_id == author_id:
                return r
        raise KeyError(author_id)


def _safe_pearson(xs, ys):
    try:
        return pearson(xs, ys), None
    except ZeroVariance:
        return None, ZERO_VARIANCE_REASON


def build_panel_report(
    profiles: Sequence[AuthorProfile],
    groups: Mapping[str, str],
    aliases: AliasMap = EMPTY_ALIASES,
    source: str = "",
) -> PanelReport:
    """Score every author and summarize the panel.

    Authors missing from ``groups`` are labelled ``"ungrouped"``. Rows are
    ordered by descending H, then descending h, then author id.
    """
    if len(profiles) < 2:
        raise TooFewAuthors(len(profiles))
    rows = []
    seen = set()
    for profile in profiles:
        if profile.author_id in seen:
            raise DuplicateAuthor(profile.author_id)
        seen.add(profile.author_id)
        try:
            idx = compute_profile_indices(profile, aliases)
        except ScopeMeterError as exc:
            raise AuthorError(profile.author_id, exc) from exc
        label = groups.get(profile.author_id, UNGROUPED)
        rows.append(PanelRow(profile.author_id, label, profile.n_papers, idx))
    rows.sort(key=lambda r: (-r.big_h, -r.h, r.author_id))

    r_h_nj, why_h_nj = _safe_pearson([r.h for r in rows], [r.n_j for r in rows])
    r_hm, why_hm = _safe_pearson([r.big_h for r in rows], [r.big_m for r in rows])
    reasons = {}
    if why_h_nj:
        reasons["h_nj"] = why_h_nj
    if why_hm:
        reasons["H_M"] = why_hm
    return PanelReport(
        rows=tuple(rows),
        pearson_h_nj=r_h_nj,
        pearson_H_M=r_hm,
        groups=group_summary((r.index, r.group) for r in rows),
        reasons=reasons,
        source=source,
    )


class RankKey(str, Enum):
    BY_BIG_H = "H"
    BY_H = "h"
    BY_M_DISTANCE_HALF = "M-half"


def rank_authors(report: PanelReport, key: RankKey | str = RankKey.BY_BIG_H) -> list[str]:
    """Order author ids by the chosen key; every key ends in an author-id tie-break.

    ``BY_M_DISTANCE_HALF`` puts authors whose output is balanced between
    citations and journal spread (M near 1/2) first.
    """
    key = RankKey(key)
    if key is RankKey.BY_BIG_H:
        sort_key = lambda r: (-r.big_h, -r.h, r.author_id)  # noqa: E731
    elif key is RankKey.BY_H:
        sort_key = lambda r: (-r.h, -r.big_h, r.author_id)  # noqa: E731
    else:
        sort_key = lambda r: (abs(r.big_m - 0.5), -r.big_h, r.author_id)  # noqa: E731
    return [r.author_id for r in sorted(report.rows, key=sort_key)]


def _r6(x):
    return None if x is None else round(x, 6)


def report_to_dict(report: PanelReport) -> dict:
    """JSON-ready form of a report. Floats are rounded to 6 decimals."""
    pearson_block = {"h_nj": _r6(report.pearson_h_nj), "H_M": _r6(report.pearson_H_M)}
    for name, why in report.reasons.items():
        pearson_block[f"{name}_reason"] = why
    return {
        "meta": {
            "version": __version__,
            "stddev_convention": STDDEV_CONVENTION,
            "source": report.source,
        },
        "rows": [
            {
                "author_id": r.author_id,
                "group": r.group,
                "n_papers": r.n_papers,
                "h": r.h,
                "n_j": r.n_j,
                "H": _r6(r.big_h),
                "M": _r6(r.big_m),
            }
            for r in report.rows
        ],
        "pearson": pearson_block,
        "groups": {
            label: {
                "count": g.count,
                "mean_M": _r6(g.mean_m),
                "std_M": _r6(g.std_m),
                "mean_H": _r6(g.mean_h),
                "std_H": _r6(g.std_h),
            }
            for label, g in report.groups.items()
        },
    }


REPORT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "type": "object",
    "required": ["meta", "rows", "pearson", "groups"],
    "additionalProperties": False,
    "properties": {
        "meta": {
            "type": "object",
            "required": ["version", "stddev_convention", "source"],
            "properties": {
                "version": {"type": "string"},
                "stddev_convention": {"type": "string"},
                "source": {"type": "string"},
            },
        },
        "rows": {
            "type": "array",
            "minItems": 2,
            "items": {
                "type": "object",
                "required": ["author_id", "group", "n_papers", "h", "n_j", "H", "M"],
                "additionalProperties": False,
                "properties": {
                    "author_id": {"type": "string", "minLength": 1},
                    "group": {"type": "string"},
                    "n_papers": {"type": "integer", "minimum": 1},
                    "h": {"type": "integer", "minimum": 0},
                    "n_j": {"type": "integer", "minimum": 1},
                    "H": {"type": "number", "exclusiveMinimum": 0},
                    "M": {"type": "number", "exclusiveMinimum": 0, "maximum": 1},
                },
            },
        },
        "pearson": {
            "type": "object",
            "required": ["h_nj", "H_M"],
            "properties": {
                "h_nj": {"type": ["number", "null"], "minimum": -1, "maximum": 1},
                "H_M": {"type": ["number", "null"], "minimum": -1, "maximum": 1},
                "h_nj_reason": {"type": "string"},
                "H_M_reason": {"type": "string"},
            },
        },
        "groups": {
            "type": "object",
            "additionalProperties": {
                "type": "object",
                "required": ["count", "mean_M", "std_M", "mean_H", "std_H"],
                "properties": {
                    "count": {"type": "integer", "minimum": 1},
                    "mean_M": {"type": "number"},
                    "std_M": {"type": "number", "minimum": 0},
                    "mean_H": {"type": "number"},
                    "std_H": {"type": "number", "minimum": 0},
                },
            },
        },
    },
}
