"""
Scoring an author straight from OpenAlex
========================================

Needs network access. Pass an OpenAlex author id on the command line; responses are cached under ~/.cache/scopemeter for a day.
Set SCOPEMETER_CONTACT to your e-mail to join the polite pool.
"""

import sys
from pathlib import Path

from scopemeter import build_profile, compute_profile_indices
from scopemeter.works import FetchConfig, contact_from_env, fetch_author_works

if len(sys.argv) != 2:
    sys.exit(f"usage: {sys.argv[0]} OPENALEX_AUTHOR_ID")
author = sys.argv[1]
config = FetchConfig(
    author_id=author,
    cache_dir=Path.home() / ".cache" / "scopemeter",
    polite_contact=contact_from_env(),
)
result = fetch_author_works(config)
print(result.summary())
if not result.records:
    sys.exit("no works found")

profile = build_profile(result.records, author)
idx = compute_profile_indices(profile)
print(f"N={profile.n_papers} h={idx.h} N_j={idx.n_j} H={idx.big_h:.3f} M={idx.big_m:.3f}")
