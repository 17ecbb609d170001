"""
From (h, N_j) to (H, M)
=======================

Two researchers with the same impact radius H can sit at very different
angles M. This script walks through the transform on a few hand-made cases.
"""

from scopemeter import compute_h, from_polar, to_polar

# h-index from raw citation counts
citations = [10, 8, 5, 4, 3]
print("h of", citations, "=", compute_h(citations))

# Balanced output: as many distinct journals as the h-index gives M = 1/2
print("(h=5, N_j=5) ->", to_polar(5, 5))

# Same radius, opposite angles: a specialist and a generalist
for h, n_j in [(12, 2), (2, 12), (7, 7)]:
    big_h, big_m = to_polar(h, n_j)
    print(f"h={h:2d} N_j={n_j:2d}  H={big_h:6.3f}  M={big_m:.3f}")

# Nobody cited yet: M sits at its upper limit
print("(h=0, N_j=2) ->", to_polar(0, 2))

# The transform is invertible
print("back from to_polar(3, 4):", from_polar(*to_polar(3, 4)))

# M only sees the ratio N_j / h; H scales with output
for k in (1, 2, 4):
    print(f"scale x{k}:", to_polar(3 * k, 4 * k))
