"""The conjugate operator, represented by the real antisymmetric matrix of ``iA``.

Two independent builds are provided: the operator product
``(R - N + 1/2) Pi - Pi* (R - N + 1/2)`` and an entry-by-entry formula
driven by the closed-form matrix elements of ``N``.  Their agreement on
the interior block checks both the entry formula and the closed form of N.
"""
from dataclasses import dataclass

import numpy as np

from .errors import ContractError, TruncationDomainError
from .haar import build_N, n_block
from .operators import build_pi, build_R


@dataclass(frozen=True)
class ConjugateOperator:
    matrix: np.ndarray
    depth: int
    provenance: str

    @property
    def interior_mask(self):
        """Positions with level <= D - 1; entries touching sphere D are boundary."""
        levels = np.repeat(np.arange(self.depth + 1), 2 ** np.arange(self.depth + 1))
        return levels <= self.depth - 1

    def interior_block(self):
        m = self.interior_mask
        return self.matrix[np.ix_(m, m)]


def build_iA_algebraic(g, N=None, Pi=None):
    if N is None:
        N = build_N(g)
    if Pi is None:
        Pi = build_pi(g)
    if N.shape != Pi.shape or N.shape[0] != g.n_vertices:
        raise ContractError("N and Pi must be built on the given geometry")
    X = build_R(g) - N + 0.5 * np.eye(g.n_vertices)
    iA = X @ Pi - Pi.T @ X
    if not np.array_equal(iA.T, -iA):
        raise ContractError("algebraic iA is not exactly antisymmetric")
    return ConjugateOperator(iA, g.depth, "algebraic")


def build_iA_entrywise(g):
    """Entry formula for ``<delta_v, iA delta_w>``.

    For ``|w| = |v| - 1``: ``(|v| + 1/2) [w -> v] - sum_{z: w -> z} <delta_v, N delta_z>``;
    for ``|w| = |v| + 1``: the mirrored expression; zero otherwise.
    """
    iA = np.zeros((g.n_vertices, g.n_vertices))
    for r in range(1, g.depth + 1):
        rows = g.sphere_slice(r)
        cols = g.sphere_slice(r - 1)
        Nr = n_block(r)
        # children of the j-th vertex of S_{r-1} are entries 2j, 2j+1 of S_r
        child_sum = Nr[:, 0::2] + Nr[:, 1::2]
        is_parent = np.zeros((2 ** r, 2 ** (r - 1)))
        is_parent[np.arange(2 ** r), np.arange(2 ** r) // 2] = 1.0
        down = (r + 0.5) * is_parent - child_sum
        iA[rows, cols] = down
        # |w| = |v| + 1 with v in S_{r-1}, w in S_r
        up = -(r + 0.5) * is_parent.T + (Nr[0::2, :] + Nr[1::2, :])
        iA[cols, rows] = up
    return ConjugateOperator(iA, g.depth, "entrywise")


def row_sum_check(g, iA, v):
    """``sum_w |<delta_v, iA delta_w>|`` for an interior vertex ``v``."""
    if g.level(v) > g.depth - 1:
        raise TruncationDomainError(f"vertex {v} lies on the truncation sphere")
    M = iA.matrix if isinstance(iA, ConjugateOperator) else np.asarray(iA)
    return float(np.sum(np.abs(M[v - 1])))


def row_sums(iA):
    M = iA.matrix if isinstance(iA, ConjugateOperator) else np.asarray(iA)
    return np.sum(np.abs(M), axis=1)


def row_sum_bound(level):
    """Explicit linear bound ``9|v| + 4`` on the absolute row sums of iA."""
    return 9 * np.asarray(level) + 4


def n_row_sums(g, N=None):
    """``sum_{z in S_|v|} |<delta_v, N delta_z>|`` for every vertex."""
    if N is None:
        return np.concatenate([np.sum(np.abs(n_block(r)), axis=1) for r in range(g.depth + 1)])
    return np.sum(np.abs(N), axis=1)
