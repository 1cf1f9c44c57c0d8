"""Build the conjugate operator iA two ways and check the commutator identity.

iA = (R - N + 1/2) Pi - Pi* (R - N + 1/2) is real and antisymmetric.  Its
commutator with L equals 8 - L**2 on the part of the tree that does not see
the truncation; near the leaves the finite tree leaves a large remainder.
"""
import numpy as np

from mourre_tree import (
    TreeGeometry, build_iA_algebraic, build_iA_entrywise, build_L, commutator_identity_residual,
    row_sum_bound, row_sums,
)

g = TreeGeometry(6)
L = build_L(g)
a = build_iA_algebraic(g)
b = build_iA_entrywise(g)
print("two constructions differ by", np.abs(a.interior_block() - b.interior_block()).max())
print("antisymmetric:", np.array_equal(a.matrix, -a.matrix.T))

sums = row_sums(a)
for r in range(g.depth):
    sl = g.sphere_slice(r)
    print(f"  level {r}: max row sum {sums[sl].max():7.3f}   bound 9r+4 = {row_sum_bound(r)}")

res = commutator_identity_residual(g, L, a)
print("\nmax |[L, iA] - (8 - L^2)| by level:")
for r in range(g.depth + 1):
    print(f"  level {r}: {np.abs(res[g.sphere_slice(r)]).max():.2e}")
