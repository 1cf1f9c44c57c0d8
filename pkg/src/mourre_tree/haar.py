"""Haar bases on spheres, the invariant subspaces ``Q(n, r)``, ``M_n`` and
the level operator ``N``.

On sphere ``r`` the Haar vector with labels ``(n, k)`` is

* ``n = 0``: the constant ``2**(-r/2)``;
* ``n >= 1``: anchored at the ``k``-th vertex of level ``n - 1`` (heap
  order), equal to ``+2**(-(r-n+1)/2)`` on the level-``r`` descendants of
  its left child and ``-2**(-(r-n+1)/2)`` on those of its right child.

``Q(n, r)`` is spanned by the vectors with first label ``n``; ``M_n`` is
the direct sum of ``Q(n, r)`` over ``r = n .. D``.
"""
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import ContractError
from .operators import build_pi


def dim_Q(n):
    """Dimension of every ``Q(n, r)``: 1 for n in {0, 1}, else ``2**(n-1)``."""
    return 2 ** max(n - 1, 0)


@dataclass(frozen=True)
class HaarBasis:
    """Orthonormal Haar basis of sphere ``radius``.

    ``vectors[i]`` is the basis vector labelled ``labels[i] = (n, k)``,
    written in canonical sphere order (increasing vertex index).
    """
    radius: int
    vectors: np.ndarray
    labels: tuple

    def select(self, n):
        """Rows spanning ``Q(n, radius)``."""
        rows = [i for i, (m, _) in enumerate(self.labels) if m == n]
        return self.vectors[rows]

    def levels(self):
        return np.array([n for n, _ in self.labels])


def _haar_vector(r, n, k):
    size = 2 ** r
    if n == 0:
        return np.full(size, 2.0 ** (-r / 2))
    span = 2 ** (r - n + 1)
    start = k * span
    vec = np.zeros(size)
    amp = 2.0 ** (-(r - n + 1) / 2)
    vec[start:start + span // 2] = amp
    vec[start + span // 2:start + span] = -amp
    return vec


def build_haar(g, r):
    """Haar basis of ``l2(S_r)``, ordered by ``(n, k)``."""
    g._check_radius(r)
    labels = [(n, k) for n in range(r + 1) for k in range(dim_Q(n))]
    vectors = np.array([_haar_vector(r, n, k) for n, k in labels])
    return HaarBasis(r, vectors, tuple(labels))


def pushforward_haar(g, r):
    """Build the sphere-``r`` basis recursively from the root.

    Every sphere-``(r-1)`` vector is pushed forward by ``Pi / sqrt 2``
    and the ``2**(r-1)`` new generators of ``Q(r, r)`` are the
    normalised sign patterns on sibling pairs.  This is an independent
    construction used to check :func:`build_haar`.
    """
    g._check_radius(r)
    vectors = [np.array([1.0])]
    labels = [(0, 0)]
    for s in range(1, r + 1):
        # Pi on sphere coordinates: every child copies its parent's value
        pushed = [np.repeat(v, 2) / np.sqrt(2.0) for v in vectors]
        new = []
        for k in range(dim_Q(s)):
            vec = np.zeros(2 ** s)
            vec[2 * k] = 2 ** -0.5
            vec[2 * k + 1] = -(2 ** -0.5)
            new.append(vec)
        vectors = pushed + new
        labels = labels + [(s, k) for k in range(dim_Q(s))]
    return HaarBasis(r, np.array(vectors), tuple(labels))


def _bit_lengths(size):
    return np.array([int(x).bit_length() for x in range(size)])


def n_block(r):
    """Closed-form sphere-``r`` block of ``N``.

    Diagonal ``r - 1 + 2**-r``; off-diagonal ``-2**(N(z,w) - r) + 2**-r``
    where ``N(z,w) = 1 + level of the deepest common ancestor``.
    """
    size = 2 ** r
    pos = np.arange(size)
    xor_len = _bit_lengths(size)[pos[:, None] ^ pos[None, :]]
    # N(z, w) - r = 1 - bitlength(i ^ j)
    block = -np.exp2(1.0 - xor_len) + 2.0 ** -r
    np.fill_diagonal(block, r - 1 + 2.0 ** -r)
    return block


def n_matrix_element(g, z, w):
    """``<delta_z, N delta_w>`` for vertices on a common sphere."""
    r = g.level(z)
    if g.level(w) != r:
        raise ContractError(f"vertices {z} and {w} lie on different spheres")
    if z == w:
        return r - 1 + 2.0 ** -r
    big_n = g.lca_level(z, w) + 1
    return -(2.0 ** (big_n - r)) + 2.0 ** -r


def build_N(g):
    """Level operator ``N`` from the closed-form sphere blocks."""
    N = np.zeros((g.n_vertices, g.n_vertices))
    for r in range(g.depth + 1):
        sl = g.sphere_slice(r)
        N[sl, sl] = n_block(r)
    return N


class SubspaceDecomposition:
    """Haar bases of every sphere and the derived subspaces of ``l2(V)``.

    Projectors are materialised on demand.
    """

    def __init__(self, g, bases=None):
        self.geometry = g
        if bases is None:
            bases = [build_haar(g, r) for r in range(g.depth + 1)]
        self.bases = list(bases)

    def q_basis(self, n, r):
        """Orthonormal columns spanning ``Q(n, r)`` embedded in ``l2(V)``."""
        g = self.geometry
        if not 0 <= n <= r <= g.depth:
            raise ContractError(f"Q({n}, {r}) needs 0 <= n <= r <= {g.depth}")
        rows = self.bases[r].select(n)
        out = np.zeros((g.n_vertices, rows.shape[0]))
        out[g.sphere_slice(r)] = rows.T
        return out

    def m_basis(self, n):
        """Orthonormal columns spanning the truncated ``M_n``."""
        return np.hstack([self.q_basis(n, r) for r in range(n, self.geometry.depth + 1)])

    def projector(self, n):
        B = self.m_basis(n)
        return B @ B.T

    def projectors(self):
        return [self.projector(n) for n in range(self.geometry.depth + 1)]

    @cached_property
    def N(self):
        """``sum_n n P_n`` assembled sphere by sphere from the bases."""
        g = self.geometry
        N = np.zeros((g.n_vertices, g.n_vertices))
        for r, basis in enumerate(self.bases):
            sl = g.sphere_slice(r)
            V = basis.vectors
            N[sl, sl] = (V.T * basis.levels()) @ V
        return N
