"""
Reading records and counting journals
=====================================

N_j needs a notion of "same journal". Records with an ISSN are keyed by it;
the rest by a normalized title, optionally redirected through an alias map.
"""

from scopemeter import (
    build_profile,
    compute_nj,
    compute_profile_indices,
    load_alias_map,
    normalize_journal,
    parse_bibtex,
    parse_ris,
)

bib = """
@article{k1, authorid={me}, journal={Phys. Rev. Lett.}, citations={12}}
@article{k2, authorid={me}, journal={Physical Review Letters}, issn={0031-9007}, citations={9}}
@article{k3, authorid={me}, journal={J. Fluid Mech.}, citations={4}}
@article{k4, authorid={me}, journal={Soft Matter}, citations={2}}
"""
records = parse_bibtex(bib)
profile = build_profile(records, "me")

print(normalize_journal("Phys. Rev. Lett."))
print("N_j without aliases:", compute_nj(profile))  # PRL counted twice

aliases = load_alias_map("alias,canonical_kind,canonical_key\nPhys. Rev. Lett.,issn,0031-9007\n")
print("N_j with aliases:   ", compute_nj(profile, aliases))
print(compute_profile_indices(profile, aliases))

# RIS works the same way; the author id travels in C1, citations in C8
ris = """TY  - JOUR
C1  - me
JF  - Nature
SN  - 0028-0836
C8  - 30
ER  - 
"""
print(parse_ris(ris))
