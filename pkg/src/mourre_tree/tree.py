"""Depth-truncated rooted binary tree with heap (level-order) indexing.

Vertex ``k`` (1-based) has parent ``k // 2`` and children ``2k``, ``2k + 1``;
its distance from the root is ``floor(log2 k)``.  Array positions used by
every operator in the package are ``k - 1``, so sphere ``r`` occupies the
contiguous slice ``[2**r - 1, 2**(r+1) - 1)``.
"""
import numpy as np

from .errors import ContractError


def level(k):
    """Distance from the root of heap vertex ``k``."""
    if k < 1:
        raise ValueError(f"vertex index must be positive, got {k}")
    return int(k).bit_length() - 1


def parent(k):
    if k <= 1:
        raise ValueError("the root has no parent")
    return k // 2


def children(k):
    return 2 * k, 2 * k + 1


class TreeGeometry:
    """Rooted binary tree truncated at depth ``D``.

    Immutable after construction.  Vertices are the integers
    ``1 .. 2**(D+1) - 1``.
    """

    def __init__(self, depth):
        depth = int(depth)
        if depth < 0:
            raise ValueError(f"depth must be nonnegative, got {depth}")
        self._depth = depth
        self._levels = np.repeat(np.arange(depth + 1), 2 ** np.arange(depth + 1))
        self._levels.setflags(write=False)

    @property
    def depth(self):
        return self._depth

    @property
    def n_vertices(self):
        return 2 ** (self._depth + 1) - 1

    @property
    def levels(self):
        """Level of every vertex, indexed by array position ``k - 1``."""
        return self._levels

    def __repr__(self):
        return f"TreeGeometry(depth={self._depth})"

    def __eq__(self, other):
        return isinstance(other, TreeGeometry) and other.depth == self.depth

    def __hash__(self):
        return hash(("TreeGeometry", self._depth))

    def _check_vertex(self, k):
        if not 1 <= k <= self.n_vertices:
            raise IndexError(f"vertex {k} outside [1, {self.n_vertices}]")

    def _check_radius(self, r):
        if not 0 <= r <= self._depth:
            raise IndexError(f"radius {r} outside [0, {self._depth}]")

    def level(self, k):
        self._check_vertex(k)
        return level(k)

    def parent(self, k):
        self._check_vertex(k)
        return parent(k)

    def children(self, k):
        self._check_vertex(k)
        if level(k) >= self._depth:
            return ()
        return children(k)

    def sphere(self, r):
        """Vertices at distance ``r`` in increasing index order."""
        self._check_radius(r)
        return np.arange(2 ** r, 2 ** (r + 1))

    def sphere_slice(self, r):
        """Array-position slice of sphere ``r``."""
        self._check_radius(r)
        return slice(2 ** r - 1, 2 ** (r + 1) - 1)

    def ball_mask(self, max_level):
        """Boolean mask of positions with level <= ``max_level``."""
        return self._levels <= max_level

    def lca_level(self, z, w):
        """Level of the deepest common ancestor of two distinct same-level vertices."""
        self._check_vertex(z)
        self._check_vertex(w)
        if level(z) != level(w):
            raise ContractError(f"vertices {z} and {w} lie on different spheres")
        if z == w:
            raise ContractError("lca_level needs distinct vertices")
        return level(z) - (z ^ w).bit_length()

    def bfs_order(self):
        """Vertices in breadth-first order from the root, built by traversal."""
        order, frontier = [], [1]
        while frontier:
            order.extend(frontier)
            frontier = [c for v in frontier for c in self.children(v)]
        return order
