"""Dense symmetric eigensolver.

Householder reduction to tridiagonal form followed by the implicit QL
iteration with Wilkinson-type shifts.  Kernels are compiled with numba;
the driver functions only validate input and assemble the result.
"""
from dataclasses import dataclass

import numba
import numpy as np

from .errors import ContractError, ConvergenceError

MAX_QL_ITERATIONS = 64
SYMMETRY_RTOL = 1e-12


@dataclass(frozen=True)
class EigenDecomposition:
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    residual: float
    orthogonality: float

    def reconstruct(self):
        V = self.eigenvectors
        return (V * self.eigenvalues) @ V.T


@numba.njit(cache=True, fastmath=True)
def _tridiagonalize(a, refl):
    # In-place Householder reduction of the full symmetric ``a``.
    # Row k of ``refl`` receives the unit reflector for step k (zero if skipped).
    n = a.shape[0]
    d = np.empty(n)
    e = np.zeros(n)
    p = np.empty(n)
    w = np.empty(n)
    for k in range(n - 2):
        v = refl[k]
        s = 0.0
        for i in range(k + 1, n):
            v[i] = a[i, k]
            s += v[i] * v[i]
        x0 = v[k + 1]
        tail = s - x0 * x0
        if tail == 0.0:
            e[k] = x0
            for i in range(k + 1, n):
                v[i] = 0.0
            continue
        norm_x = np.sqrt(s)
        alpha = -norm_x if x0 >= 0.0 else norm_x
        v0 = x0 - alpha
        inv = 1.0 / np.sqrt(tail + v0 * v0)
        v[k + 1] = v0 * inv
        for i in range(k + 2, n):
            v[i] *= inv
        e[k] = alpha
        vp = 0.0
        for i in range(k + 1, n):
            acc = 0.0
            row = a[i]
            for j in range(k + 1, n):
                acc += row[j] * v[j]
            p[i] = acc
            vp += v[i] * acc
        for i in range(k + 1, n):
            w[i] = 2.0 * (p[i] - vp * v[i])
        # A22 <- A22 - v w^T - w v^T
        for i in range(k + 1, n):
            vi = v[i]
            wi = w[i]
            row = a[i]
            for j in range(k + 1, n):
                row[j] -= vi * w[j] + wi * v[j]
    for k in range(n):
        d[k] = a[k, k]
    return d, e


@numba.njit(cache=True, fastmath=True)
def _apply_reflectors(refl, z):
    # z <- H_0 H_1 ... H_{n-3} z, with H_k = I - 2 v_k v_k^T.
    n = z.shape[0]
    m = z.shape[1]
    s = np.empty(m)
    for k in range(n - 3, -1, -1):
        v = refl[k]
        if v[k + 1] == 0.0:
            continue
        for c in range(m):
            s[c] = 0.0
        for i in range(k + 1, n):
            vi = v[i]
            row = z[i]
            for c in range(m):
                s[c] += vi * row[c]
        for i in range(k + 1, n):
            vi2 = 2.0 * v[i]
            row = z[i]
            for c in range(m):
                row[c] -= vi2 * s[c]


@numba.njit(cache=True)
def _tql(d, e, zt, want_vectors, max_iter):
    # Implicit QL on the tridiagonal (d, e); e[i] couples i and i+1.
    # Deflation uses a running norm estimate, as in EISPACK tql2.
    # Rows of zt accumulate the eigenvectors.  Returns -1 on success,
    # otherwise the index that failed to converge.
    n = d.shape[0]
    eps = np.finfo(np.float64).eps
    scale = 0.0
    for l in range(n):
        it = 0
        scale = max(scale, abs(d[l]) + abs(e[l]))
        while True:
            m = l
            while m < n - 1:
                dd = abs(d[m]) + abs(d[m + 1])
                if abs(e[m]) <= eps * max(dd, scale):
                    break
                m += 1
            if m == l:
                break
            it += 1
            if it > max_iter:
                return l
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = np.hypot(g, 1.0)
            g = d[m] - d[l] + e[l] / (g + (r if g >= 0.0 else -r))
            s = 1.0
            c = 1.0
            p = 0.0
            i = m - 1
            deflated = False
            while i >= l:
                f = s * e[i]
                b = c * e[i]
                r = np.hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    d[i + 1] -= p
                    e[m] = 0.0
                    deflated = True
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * b
                p = s * r
                d[i + 1] = g + p
                g = c * r - b
                if want_vectors:
                    for k in range(zt.shape[1]):
                        f2 = zt[i + 1, k]
                        zt[i + 1, k] = s * zt[i, k] + c * f2
                        zt[i, k] = c * zt[i, k] - s * f2
                i -= 1
            if deflated:
                continue
            d[l] -= p
            e[l] = g
            e[m] = 0.0
    return -1


def _check_symmetric(M):
    M = np.asarray(M, dtype=float)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ContractError(f"expected a square matrix, got shape {M.shape}")
    if M.size:
        scale = 1.0 + np.max(np.abs(M))
        asym = np.max(np.abs(M - M.T))
        if asym > SYMMETRY_RTOL * scale:
            raise ContractError(f"matrix is not symmetric (max |M - M^T| = {asym:.3e})")
    return M


def _tridiagonal_form(M):
    a = np.array(M, dtype=float, order="C", copy=True)
    n = a.shape[0]
    refl = np.zeros((max(n - 2, 1), n))
    if n == 1:
        return refl, np.array([a[0, 0]]), np.zeros(1)
    d, e = _tridiagonalize(a, refl)
    # the last subdiagonal entry is never touched by a reflector
    e[n - 2] = a[n - 1, n - 2]
    e[n - 1] = 0.0
    return refl, d, e


def eigvalsh(M):
    """Eigenvalues of a symmetric matrix, ascending."""
    M = _check_symmetric(M)
    if M.shape[0] == 0:
        return np.zeros(0)
    _, d, e = _tridiagonal_form(M)
    dummy = np.zeros((1, 1))
    failed = _tql(d, e, dummy, False, MAX_QL_ITERATIONS)
    if failed >= 0:
        raise ConvergenceError(f"QL iteration did not converge at index {failed}")
    return np.sort(d)


def eigh(M):
    """Full eigendecomposition of a symmetric matrix.

    Returns an :class:`EigenDecomposition` with ascending eigenvalues,
    orthonormal eigenvector columns, and the measured reconstruction and
    orthogonality residuals (max-norm).
    """
    M = _check_symmetric(M)
    n = M.shape[0]
    if n == 0:
        return EigenDecomposition(np.zeros(0), np.zeros((0, 0)), 0.0, 0.0)
    refl, d, e = _tridiagonal_form(M)
    zt = np.eye(n)
    failed = _tql(d, e, zt, True, MAX_QL_ITERATIONS)
    if failed >= 0:
        raise ConvergenceError(f"QL iteration did not converge at index {failed}")
    z = np.ascontiguousarray(zt.T)
    if n > 2:
        _apply_reflectors(refl, z)
    order = np.argsort(d, kind="stable")
    w = d[order]
    V = z[:, order]
    residual = float(np.max(np.abs(M - (V * w) @ V.T)))
    orthogonality = float(np.max(np.abs(V.T @ V - np.eye(n))))
    return EigenDecomposition(w, V, residual, orthogonality)


def operator_norm(M):
    """Spectral norm.  Symmetric input uses its eigenvalues directly,
    anything else the square root of the top eigenvalue of M^T M."""
    M = np.asarray(M, dtype=float)
    if M.size == 0:
        return 0.0
    if M.shape[0] == M.shape[1] and np.array_equal(M, M.T):
        return float(np.max(np.abs(eigvalsh(M))))
    G = M.T @ M
    G = 0.5 * (G + G.T)
    return float(np.sqrt(max(eigvalsh(G)[-1], 0.0)))


def apply_function(dec, f):
    """f(M) for the matrix behind ``dec``."""
    V = dec.eigenvectors
    return (V * f(dec.eigenvalues)) @ V.T
