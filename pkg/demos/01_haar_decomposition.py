"""Split each sphere of the tree into Haar blocks and build the level operator.

Every sphere S_r carries 2**r vertices.  The Haar vectors sort them by the
radius n at which a sign pattern first appears; weighting each block by n
gives the level operator N, whose entries only depend on the depth of the
deepest common ancestor.
"""
import numpy as np

from mourre_tree import SubspaceDecomposition, TreeGeometry, build_N, dim_Q

g = TreeGeometry(4)
dec = SubspaceDecomposition(g)

print("block dimensions per sphere (n = 0..r):")
for r in range(g.depth + 1):
    dims = [dec.q_basis(n, r).shape[1] for n in range(r + 1)]
    print(f"  r={r}: {dims}  total {sum(dims)}  expected {[dim_Q(n) for n in range(r + 1)]}")

sl = g.sphere_slice(3)
print("\nHaar vectors on S_3 (rows), labelled (n, k):")
for label, vec in zip(dec.bases[3].labels, dec.bases[3].vectors):
    print(f"  {label}: {np.array2string(vec, precision=3, suppress_small=True)}")

N = build_N(g)
print("\nN restricted to S_3; diagonal r - 1 + 2**-r, off-diagonal by common ancestor:")
print(np.array2string(N[sl, sl], precision=4, suppress_small=True))
print("max |N - sum_n n P_n| =", np.abs(N - dec.N).max())
