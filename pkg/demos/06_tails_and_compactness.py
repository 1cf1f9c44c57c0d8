"""How fast the commutator with q dies off, and what E(L) - E(L + q) looks like.

The tail norms ||[q, iA](1 - Lambda_n)|| are compared with the Schur row and
column sum bound.  The singular values of E(L) - E(L + q) show why a fixed
threshold rank is a poor finite-depth stand-in for compactness: many small
but non-negligible values accumulate near the leaves.
"""
import numpy as np

from mourre_tree import SpectralWindow, TreeGeometry, build_iA_algebraic, build_L
from mourre_tree.mourre import projection_difference, schur_tail_bound, tail_norm_profile
from mourre_tree.potentials import power_radial

g = TreeGeometry(8)
q = power_radial(g, 1, 1)
iA = build_iA_algebraic(g)
print("tail norms :", np.round(tail_norm_profile(g, q, iA), 4))
print("Schur bound:", np.round(schur_tail_bound(g, q), 4))

win = SpectralWindow(-1.5, 1.5, 0.25)
for depth in (5, 6, 7, 8):
    g = TreeGeometry(depth)
    sv = projection_difference(g, build_L(g), power_radial(g, 1, 2), win)
    print(f"D={depth}: top singular values {np.round(sv[:4], 3)}, count above 1e-3: {np.sum(sv > 1e-3)}")
