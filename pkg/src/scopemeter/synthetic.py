"""Seeded synthetic panels with known (h, N_j) per author.

Each synthetic author gets a target h and N_j and a publication list built
to hit both exactly: the top h papers have more than h citations, the rest
at most h; the first N_j papers open one journal each and later papers
reuse them. h targets follow a Pareto law censored to [h_min, h_max] for every
group, so scale varies much more than the group-dependent journal ratio.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .model import AuthorProfile, PaperRecord, build_profile

DEFAULT_SEED = 2016


@dataclass(frozen=True)
class GroupSpec:
    label: str
    slope: float  # N_j is drawn around slope * h
    slope_jitter: float = 0.0  # per-author uniform spread added to the slope


DEFAULT_GROUPS = (
    GroupSpec("specialist", 0.2),
    GroupSpec("generalist", 1.5),
    GroupSpec("mixed", 0.7, 0.3),
)


@dataclass(frozen=True)
class SyntheticPanel:
    profiles: tuple[AuthorProfile, ...]
    groups: dict[str, str]
    targets: dict[str, tuple[int, int]]  # author_id -> (h, n_j)

    @property
    def records(self) -> list[PaperRecord]:
        return [rec for p in self.profiles for rec in p.records]


def draw_h(rng: np.random.Generator, h_min: int = 5, h_max: int = 50) -> int:
    """Pareto draw (density proportional to 1/x**2 above h_min), censored at h_max.

    About h_min / h_max of the authors land exactly on the cap.
    """
    u = rng.random()
    return int(min(h_max, round(h_min / (1.0 - u))))


def author_records(
    author_id: str,
    h: int,
    n_j: int,
    rng: np.random.Generator,
    extra_papers: int = 0,
    issn_prefix: int | None = None,
) -> list[PaperRecord]:
    """Publication list whose h-index is ``h`` and distinct-journal count is ``n_j``.

    Journals are identified by title unless ``issn_prefix`` is given, in which
    case each journal also gets an ISSN-shaped code.
    """
    if n_j < 1 or h < 0:
        raise ValueError(f"need h >= 0 and n_j >= 1, got ({h}, {n_j})")
    n = max(h, n_j, 1) + extra_papers
    cites = [int(h + 1 + rng.integers(0, 3 * h + 5)) for _ in range(h)]
    cites += [int(rng.integers(0, h + 1)) for _ in range(n - h)]
    rng.shuffle(cites)
    journals = list(range(n_j)) + [int(rng.integers(0, n_j)) for _ in range(n - n_j)]
    rng.shuffle(journals)
    records = []
    for i, (c, j) in enumerate(zip(cites, journals)):
        issn = None
        if issn_prefix is not None:
            issn = f"{issn_prefix:04d}-{j:03d}X"
        records.append(PaperRecord(
            author_id=author_id,
            title=f"Paper {i + 1} by {author_id}",
            journal_name=f"Journal of Topic {j:03d}",
            issn=issn,
            year=int(1990 + rng.integers(0, 30)),
            citations=c,
            doi=f"10.5555/{author_id.lower()}.{i + 1}",
        ))
    return records


def synthetic_panel(
    n_authors: int = 90,
    seed: int = DEFAULT_SEED,
    groups: tuple[GroupSpec, ...] = DEFAULT_GROUPS,
    h_min: int = 5,
    h_max: int = 50,
    noise: float = 0.1,
) -> SyntheticPanel:
    """Authors split evenly (round-robin) across ``groups``.

    For each author: h from :func:`draw_h`, then
    ``N_j = round(slope * h + normal(0, noise * h))`` clipped to at least 1.
    """
    rng = np.random.default_rng(seed)
    profiles, labels, targets = [], {}, {}
    for k in range(n_authors):
        spec = groups[k % len(groups)]
        author_id = f"{spec.label[:3].upper()}{k:03d}"
        h = draw_h(rng, h_min, h_max)
        slope = spec.slope + (rng.uniform(-spec.slope_jitter, spec.slope_jitter) if spec.slope_jitter else 0.0)
        n_j = max(1, int(round(slope * h + rng.normal(0.0, noise * h))))
        extra = int(rng.integers(0, h // 2 + 1))
        records = author_records(author_id, h, n_j, rng, extra_papers=extra)
        profiles.append(build_profile(records, author_id))
        labels[author_id] = spec.label
        targets[author_id] = (h, n_j)
    return SyntheticPanel(tuple(profiles), labels, targets)
