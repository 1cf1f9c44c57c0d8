"""Explicit matrices for the basic operators on a truncated binary tree.

All operators are dense ``float64`` arrays indexed by array position
(vertex ``k`` sits at position ``k - 1``).  Entries are written
symmetrically at construction time, so symmetric operators are exactly
symmetric and ``build_pi_star(g)`` is exactly ``build_pi(g).T``.
"""
import numpy as np

from .errors import ContractError, TruncationDomainError


def _edges(g):
    # (parent position, child position) for every edge
    child = np.arange(2, g.n_vertices + 1)
    return child // 2 - 1, child - 1


def build_pi(g):
    """Outward shift: ``(Pi phi)(v) = phi(parent(v))``.

    Maps sphere ``r`` coordinates into sphere ``r + 1`` coordinates.
    """
    P = np.zeros((g.n_vertices, g.n_vertices))
    par, ch = _edges(g)
    P[ch, par] = 1.0
    return P


def build_pi_star(g):
    """Inward shift: ``(Pi* phi)(v) = sum of phi over the children of v``."""
    P = np.zeros((g.n_vertices, g.n_vertices))
    par, ch = _edges(g)
    P[par, ch] = 1.0
    return P


def build_L(g):
    """Off-diagonal Laplacian (adjacency matrix) of the truncated tree."""
    L = np.zeros((g.n_vertices, g.n_vertices))
    par, ch = _edges(g)
    L[ch, par] = 1.0
    L[par, ch] = 1.0
    return L


def degree(g):
    """Vertex degrees on the truncated tree: 2 at the root, 3 inside, 1 at leaves."""
    deg = np.zeros(g.n_vertices)
    par, ch = _edges(g)
    np.add.at(deg, par, 1.0)
    np.add.at(deg, ch, 1.0)
    return deg


def build_Delta_d(g):
    """Graph Laplacian ``Delta = L - d`` and the degree operator ``d``."""
    d = np.diag(degree(g))
    return build_L(g) - d, d


def root_indicator(g):
    """The vector that is 1 at the root and 0 elsewhere."""
    x = np.zeros(g.n_vertices)
    x[0] = 1.0
    return x


def build_R(g):
    """Multiplication by the distance from the root."""
    return np.diag(g.levels.astype(float))


def build_Lambda(g, n):
    """Orthogonal projection onto the spheres of radius ``<= n``."""
    return np.diag(g.ball_mask(n).astype(float))


def apply_pi_star_pi(g, phi):
    """``Pi* Pi phi``, which equals ``2 phi`` for phi supported off the leaves.

    Raises :class:`TruncationDomainError` if ``phi`` has weight on sphere D,
    where the truncation removes the children the identity needs.
    """
    phi = np.asarray(phi, dtype=float)
    if phi.shape != (g.n_vertices,):
        raise ContractError(f"expected a vector of length {g.n_vertices}")
    if np.any(phi[g.sphere_slice(g.depth)] != 0.0):
        raise TruncationDomainError("phi touches the leaf sphere, outside the domain of Pi* Pi = 2I")
    out = np.zeros_like(phi)
    par, ch = _edges(g)
    # Pi phi lives on children; Pi* sums it back onto parents
    np.add.at(out, par, phi[par])
    return out


def commutator(A, B):
    """``A B - B A``."""
    A = np.asarray(A)
    B = np.asarray(B)
    if A.shape != B.shape or A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ContractError(f"commutator needs equal square shapes, got {A.shape} and {B.shape}")
    return A @ B - B @ A


def to_triplets(M, tol=0.0):
    """Nonzero entries as 1-based ``(i, j, value)`` arrays."""
    M = np.asarray(M)
    i, j = np.nonzero(np.abs(M) > tol)
    return i + 1, j + 1, M[i, j]


def triplet_matvec(triplets, x):
    """Sparse product from a triplet view; returns ``M @ x``."""
    i, j, val = triplets
    out = np.zeros(len(x))
    np.add.at(out, i - 1, val * np.asarray(x)[j - 1])
    return out


def write_triplets(path, M):
    """Write ``M`` as whitespace-separated ``i j value`` lines, 1-based."""
    i, j, val = to_triplets(M)
    with open(path, "w") as fh:
        fh.write(f"# {M.shape[0]} {M.shape[1]} {len(val)}\n")
        for a, b, v in zip(i, j, val):
            fh.write(f"{a} {b} {float(v):.17g}\n")


def read_triplets(path):
    """Inverse of :func:`write_triplets`."""
    with open(path) as fh:
        header = fh.readline().split()
        rows, cols = int(header[1]), int(header[2])
        M = np.zeros((rows, cols))
        for line in fh:
            a, b, v = line.split()
            M[int(a) - 1, int(b) - 1] = float(v)
    return M


def write_dense_csv(path, M):
    np.savetxt(path, np.asarray(M), delimiter=",", fmt="%.17g")
