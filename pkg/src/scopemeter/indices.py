"""Per-author scores: the h-index, the distinct-journal count N_j, and the
polar pair (H, M) built from them.

(h, N_j) is read as a point in the plane and rewritten in polar form::

    H = sqrt((h**2 + N_j**2) / 2)           radius, "how much"
    M = (2 / pi) * arctan(N_j / h)          angle scaled to (0, 1], "how spread"

H carries the extensive part (it grows with output), M the intensive part
(it is unchanged when h and N_j are scaled together). M = 1/2 when h == N_j.
"""

from __future__ import annotations

import math
from typing import Sequence

from .errors import (
    EmptyList,
    InvalidNj,
    NoJournalIdentity,
    OutOfRange,
    UnknownCitations,
)
from .ingest import EMPTY_ALIASES, AliasMap, journal_key
from .model import AuthorProfile, IndexTuple

_HALF_PI = math.pi / 2
_SQRT2 = math.sqrt(2.0)


def compute_h(citations: Sequence[int | None]) -> int:
    """Largest h such that at least h papers have h or more citations."""
    if len(citations) == 0:
        raise EmptyList()
    unknown = sum(1 for c in citations if c is None)
    if unknown:
        raise UnknownCitations(unknown)
    if min(citations) < 0:
        raise ValueError(f"negative citation count {min(citations)}")
    h = 0
    for rank, c in enumerate(sorted(citations, reverse=True), 1):
        if c < rank:
            break
        h = rank
    return h


def journal_keys(profile: AuthorProfile, aliases: AliasMap = EMPTY_ALIASES):
    """One :class:`JournalKey` per record, in record order."""
    keys = []
    for i, rec in enumerate(profile.records):
        try:
            keys.append(journal_key(rec, aliases))
        except NoJournalIdentity:
            raise NoJournalIdentity(i) from None
    return keys


def compute_nj(profile: AuthorProfile, aliases: AliasMap = EMPTY_ALIASES) -> int:
    """Number of distinct journals among the profile's papers."""
    return len(set(journal_keys(profile, aliases)))


def polar_components(x: float, y: float) -> tuple[float, float]:
    """Real-valued polar form of (x, y) for x >= 0, y > 0.

    No integer or ``y >= 1`` requirement, unlike :func:`to_polar`; this is
    the relaxed form used for scaling arguments.
    """
    if not (x >= 0 and y > 0) or not (math.isfinite(x) and math.isfinite(y)):
        raise ValueError(f"need finite x >= 0 and y > 0, got ({x}, {y})")
    radius = math.sqrt((x * x + y * y) / 2)
    # atan2 keeps M exact at the symmetric point and gives M = 1 at x = 0
    angle = math.atan2(y, x) / _HALF_PI
    return radius, angle


def to_polar(h: int, n_j: int) -> tuple[float, float]:
    """(h, N_j) -> (H, M). h = 0 maps to M = 1, the arctan limit."""
    if n_j < 1:
        raise InvalidNj(n_j)
    if h < 0:
        raise ValueError(f"h must be >= 0, got {h}")
    return polar_components(h, n_j)


def from_polar(big_h: float, big_m: float) -> tuple[float, float]:
    """Inverse of :func:`to_polar`; returns real (h, N_j) without rounding."""
    if not (big_h > 0 and 0 < big_m <= 1) or not math.isfinite(big_h):
        raise OutOfRange(big_h, big_m)
    angle = big_m * _HALF_PI
    r = _SQRT2 * big_h
    return r * math.cos(angle), r * math.sin(angle)


def compute_profile_indices(profile: AuthorProfile, aliases: AliasMap = EMPTY_ALIASES) -> IndexTuple:
    h = compute_h([rec.citations for rec in profile.records])
    n_j = compute_nj(profile, aliases)
    big_h, big_m = to_polar(h, n_j)
    return IndexTuple(h=h, n_j=n_j, big_h=big_h, big_m=big_m)
