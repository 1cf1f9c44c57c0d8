"""Reduction of L to its invariant chains and the closed-form spectrum.

A unit generator ``chi`` in ``Q(n, n)`` spawns the orthonormal chain
``e_j = (Pi / sqrt 2)**j chi``, ``j = 0 .. D - n``.  L compresses to the
tridiagonal matrix with zero diagonal and ``sqrt 2`` off the diagonal,
whose eigenvalues are ``2 sqrt 2 cos(k pi / (m + 1))``.
"""
from dataclasses import dataclass

import numpy as np

from .errors import ContractError
from .haar import SubspaceDecomposition, dim_Q
from .linalg import eigvalsh
from .operators import build_pi

SQRT2 = np.sqrt(2.0)


def chain_eigenvalues(m):
    """Closed-form spectrum of the ``m x m`` chain, ascending."""
    k = np.arange(m, 0, -1)
    return 2 * SQRT2 * np.cos(k * np.pi / (m + 1))


def chain_matrix(m):
    """``m x m`` tridiagonal matrix with zero diagonal and sqrt 2 off it."""
    T = np.zeros((m, m))
    i = np.arange(m - 1)
    T[i, i + 1] = SQRT2
    T[i + 1, i] = SQRT2
    return T


@dataclass(frozen=True)
class ModeChain:
    mode: int
    length: int
    reduced: np.ndarray
    basis: np.ndarray
    multiplicity: int

    def closed_form_eigenvalues(self):
        return chain_eigenvalues(self.length)


def reduce_mode(g, L, decomposition, n, generator, tol=1e-10):
    """Compress L onto the chain grown from ``generator`` in ``Q(n, n)``.

    ``generator`` may be given on the full vertex set or on sphere ``n``.
    """
    if not 0 <= n <= g.depth:
        raise ContractError(f"mode index {n} outside [0, {g.depth}]")
    chi = np.asarray(generator, dtype=float)
    if chi.shape == (2 ** n,):
        full = np.zeros(g.n_vertices)
        full[g.sphere_slice(n)] = chi
        chi = full
    if chi.shape != (g.n_vertices,):
        raise ContractError("generator has the wrong length")
    if abs(np.linalg.norm(chi) - 1.0) > tol:
        raise ContractError("generator must be a unit vector")
    Q = decomposition.q_basis(n, n)
    if np.linalg.norm(chi - Q @ (Q.T @ chi)) > tol:
        raise ContractError(f"generator does not lie in Q({n},{n})")
    Pi = build_pi(g)
    m = g.depth - n + 1
    W = np.empty((g.n_vertices, m))
    W[:, 0] = chi
    for j in range(1, m):
        W[:, j] = Pi @ W[:, j - 1] / SQRT2
    return ModeChain(n, m, W.T @ L @ W, W, dim_Q(n))


def all_chains(g, L, decomposition=None):
    """One chain per Haar generator of every ``Q(n, n)``."""
    if decomposition is None:
        decomposition = SubspaceDecomposition(g)
    chains = []
    for n in range(g.depth + 1):
        Q = decomposition.q_basis(n, n)
        for c in range(Q.shape[1]):
            chains.append(reduce_mode(g, L, decomposition, n, Q[:, c]))
    return chains


def chain_basis(chains):
    """Orthonormal basis of l2(V) grouping all chains, column-blocked by chain."""
    return np.hstack([c.basis for c in chains])


def closed_form_spectrum(depth):
    """Closed-form multiset for the depth-D tree as ``(value, n, k)`` rows, sorted."""
    rows = []
    for n in range(depth + 1):
        m = depth - n + 1
        for k in range(1, m + 1):
            val = 2 * SQRT2 * np.cos(k * np.pi / (m + 1))
            rows.extend([(val, n, k)] * dim_Q(n))
    rows.sort(key=lambda t: (t[0], t[1], t[2]))
    return rows


@dataclass(frozen=True)
class SpectrumCensus:
    depth: int
    modes: np.ndarray
    ks: np.ndarray
    closed_form: np.ndarray
    computed: np.ndarray

    @property
    def gaps(self):
        return np.abs(self.closed_form - self.computed)

    @property
    def max_gap(self):
        return float(self.gaps.max()) if self.gaps.size else 0.0

    def rows(self):
        return list(zip(self.modes.tolist(), self.ks.tolist(), self.closed_form.tolist(),
                        self.computed.tolist(), self.gaps.tolist()))


def full_spectrum_census(g, L):
    """Match the eigenvalues of truncated L against the chain spectra.

    Both multisets are sorted and paired in order.
    """
    computed = eigvalsh(L)
    rows = closed_form_spectrum(g.depth)
    if len(rows) != computed.size:
        raise ContractError("multiplicity ledger does not add up to the vertex count")
    vals, ns, ks = (np.array(c) for c in zip(*rows))
    return SpectrumCensus(g.depth, ns.astype(int), ks.astype(int), vals, computed)
