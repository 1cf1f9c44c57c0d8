"""Commutator identities, smoothed spectral projections and the Mourre
positivity experiment for ``H = L + q``.

Conventions
-----------
``iA`` is the real antisymmetric matrix from :mod:`mourre_tree.conjugate`.
The commutator identity ``[L, iA] = 8 - L**2`` only holds on the truncated
tree for rows and columns with level <= D - 2; near the leaves the
directly computed commutator picks up a boundary term of order ``-4 D``
(the truncated chains end abruptly).  ``mourre_experiment`` therefore
splices the free commutator: direct values on the interior block, the
closed form ``8 - L**2`` everywhere else.  ``commutator_policy="raw"``
keeps the direct matrix and exposes the boundary artefact.
"""
from dataclasses import dataclass, field

import numpy as np

from .conjugate import ConjugateOperator, row_sum_bound
from .errors import ContractError
from .linalg import apply_function, eigh, eigvalsh, operator_norm
from .operators import build_L, commutator
from .potentials import Potential, local_first_difference

BULK_EDGE = 2 * np.sqrt(2.0)
NEGATIVE_EPS = (1e-2, 1e-3, 1e-4)


def smoothstep(x):
    """Quintic smoothstep: C2, 0 for x <= 0 and 1 for x >= 1."""
    x = np.clip(x, 0.0, 1.0)
    return x * x * x * (x * (6.0 * x - 15.0) + 10.0)


@dataclass(frozen=True)
class SpectralWindow:
    """Smoothed indicator of ``[a, b]``, equal to 1 on ``[a + delta, b - delta]``."""
    a: float
    b: float
    delta: float = None

    def __post_init__(self):
        if self.delta is None:
            object.__setattr__(self, "delta", 0.1 * (self.b - self.a))
        if not self.delta > 0:
            raise ContractError(f"smoothing width must be positive, got {self.delta}")
        if not self.b - self.a > 2 * self.delta:
            raise ContractError(f"window [{self.a}, {self.b}] too narrow for smoothing {self.delta}")

    @property
    def plateau(self):
        return self.a + self.delta, self.b - self.delta

    def inside_bulk(self):
        return -BULK_EDGE < self.a and self.b < BULK_EDGE

    def __call__(self, lam):
        lam = np.asarray(lam, dtype=float)
        up = smoothstep((lam - self.a) / self.delta)
        down = smoothstep((self.b - lam) / self.delta)
        return np.minimum(up, down)

    def to_dict(self):
        return {"a": float(self.a), "b": float(self.b), "delta": float(self.delta)}


def sharp_alpha(win):
    """``inf of 8 - lambda**2`` over the window support."""
    return 8.0 - max(win.a ** 2, win.b ** 2)


def resolve_alpha(win, policy):
    """``"sharp"`` or ``"margin:theta"`` (theta in (0, 1))."""
    if policy == "sharp":
        return sharp_alpha(win)
    name, _, arg = str(policy).partition(":")
    if name == "margin":
        theta = float(arg) if arg else 0.5
        if not 0 < theta < 1:
            raise ContractError(f"margin factor must lie in (0, 1), got {theta}")
        return theta * sharp_alpha(win)
    raise ContractError(f"unknown alpha policy {policy!r}")


def _iA_matrix(iA):
    return iA.matrix if isinstance(iA, ConjugateOperator) else np.asarray(iA)


def _q_values(q):
    return q.values if isinstance(q, Potential) else np.asarray(q, dtype=float)


def commutator_identity_residual(g, L, iA):
    """Entrywise ``[L, iA] - (8 - L**2)`` on the full matrix."""
    A = _iA_matrix(iA)
    return commutator(L, A) - (8.0 * np.eye(g.n_vertices) - L @ L)


def commutator_identity_check(g, L, iA):
    """Max interior-block entry of ``[L, iA] - (8 - L**2)`` (levels <= D - 2)."""
    if g.depth < 3:
        raise ContractError("the commutator identity check needs depth >= 3")
    C = commutator_identity_residual(g, L, iA)
    m = g.ball_mask(g.depth - 2)
    return float(np.max(np.abs(C[np.ix_(m, m)])))


def q_commutator(q, iA):
    """``[q, iA]``, entries ``(q(v) - q(w)) <delta_v, iA delta_w>``."""
    qv = _q_values(q)
    A = _iA_matrix(iA)
    return (qv[:, None] - qv[None, :]) * A


def smoothed_projection(H, win, require_bulk=False, decomposition=None):
    """``g(H)`` for the window profile ``g``."""
    if require_bulk and not win.inside_bulk():
        raise ContractError(f"window [{win.a}, {win.b}] is not inside (-2 sqrt 2, 2 sqrt 2)")
    dec = decomposition if decomposition is not None else eigh(H)
    E = apply_function(dec, win)
    return 0.5 * (E + E.T)


def tail_norm_profile(g, q, iA):
    """``n -> ||[q, iA](1 - Lambda_n)||`` for n = 0..D.

    Each value is the square root of the top eigenvalue of the compressed
    Gram matrix, so the sequence is monotone up to rounding.
    """
    C = q_commutator(q, iA)
    G = C.T @ C
    G = 0.5 * (G + G.T)
    out = np.zeros(g.depth + 1)
    for n in range(g.depth + 1):
        keep = g.levels > n
        if not keep.any():
            continue
        sub = G[np.ix_(keep, keep)]
        if not sub.any():
            continue
        out[n] = np.sqrt(max(eigvalsh(sub)[-1], 0.0))
    return out


def schur_tail_bound(g, q):
    """``n -> sup_{|u| >= n} sup_{|w| = |u| +- 1} |q(u) - q(w)| (9|u| + 4)``."""
    local = local_first_difference(g, q)
    radii = np.arange(g.depth + 1)
    weighted = local * row_sum_bound(radii)
    # suffix maximum over radii >= n
    return np.maximum.accumulate(weighted[::-1])[::-1]


def measured_schur_tail(g, q, iA):
    """Schur test ``max(row sum, column sum)`` of the actual tail matrices."""
    C = np.abs(q_commutator(q, iA))
    out = np.zeros(g.depth + 1)
    for n in range(g.depth + 1):
        keep = g.levels > n
        if not keep.any():
            continue
        T = C[:, keep]
        out[n] = max(T.sum(axis=1).max(), T.sum(axis=0).max())
    return out


def double_commutator(q, iA):
    Cq = q_commutator(q, iA)
    A = _iA_matrix(iA)
    M = Cq @ A - A @ Cq
    return 0.5 * (M + M.T)


def double_commutator_norm(g, q, iA):
    """``||[[q, iA], iA]||``; the matrix is symmetric."""
    return float(np.max(np.abs(eigvalsh(double_commutator(q, iA)))))


def double_commutator_schur_bound(g, q, iA):
    """``sup_v sum_{w,z} |q(v) + q(z) - 2 q(w)| |iA(v,w)| |iA(w,z)|``."""
    qv = _q_values(q)
    absA = np.abs(_iA_matrix(iA))
    D = g.depth
    sl = [g.sphere_slice(r) for r in range(D + 1)]
    row = np.zeros(g.n_vertices)
    radial = all(np.ptp(qv[s]) == 0.0 for s in sl)
    for rv in range(D + 1):
        for rw in (rv - 1, rv + 1):
            if not 0 <= rw <= D:
                continue
            Avw = absA[sl[rv], sl[rw]]
            for rz in (rw - 1, rw + 1):
                if not 0 <= rz <= D:
                    continue
                Awz = absA[sl[rw], sl[rz]]
                if radial:
                    c = abs(qv[sl[rv]][0] + qv[sl[rz]][0] - 2 * qv[sl[rw]][0])
                    row[sl[rv]] += c * (Avw @ Awz.sum(axis=1))
                    continue
                qw, qz = qv[sl[rw]], qv[sl[rz]]
                for i, x in enumerate(qv[sl[rv]]):
                    coef = np.abs(x + qz[None, :] - 2 * qw[:, None])
                    row[sl[rv].start + i] += Avw[i] @ (coef * Awz).sum(axis=1)
    return float(row.max())


def projection_difference(g, L, q, win):
    """Singular values of ``E(L) - E(L + q)``, descending."""
    H = L + np.diag(_q_values(q))
    Dm = smoothed_projection(L, win) - smoothed_projection(H, win)
    Dm = 0.5 * (Dm + Dm.T)
    return np.sort(np.abs(eigvalsh(Dm)))[::-1]


def eps_rank(values, eps):
    return int(np.sum(np.asarray(values) > eps))


def projection_difference_check(g, L, q, win, eps=1e-3):
    """``(eps-rank, singular values)`` of ``E(L) - E(L + q)``."""
    sv = projection_difference(g, L, q, win)
    return eps_rank(sv, eps), sv


def free_commutator(g, L, iA, policy="splice"):
    """Matrix used for ``[L, iA]`` in the Mourre experiment.

    ``"splice"``: direct commutator on levels <= D - 2, ``8 - L**2``
    elsewhere.  ``"raw"``: the direct commutator of the truncated matrices.
    """
    C = commutator(L, _iA_matrix(iA))
    if policy == "raw":
        return C
    if policy != "splice":
        raise ContractError(f"unknown commutator policy {policy!r}")
    out = 8.0 * np.eye(g.n_vertices) - L @ L
    m = g.ball_mask(g.depth - 2)
    out[np.ix_(m, m)] = C[np.ix_(m, m)]
    return out


@dataclass
class MourreReport:
    depth: int
    potential: dict
    window: dict
    alpha: float
    alpha_policy: str
    eigenvalues_B: np.ndarray
    negative_counts: dict
    identity_residual: float
    boundary_policy: dict
    projection_commutator_residual: float
    tail_norms: np.ndarray = None
    double_comm_norm: float = None
    extra: dict = field(default_factory=dict)

    @property
    def min_eigenvalue(self):
        return float(self.eigenvalues_B[0]) if self.eigenvalues_B.size else 0.0

    def to_dict(self):
        return {
            "depth": int(self.depth),
            "potential": self.potential,
            "window": self.window,
            "alpha": float(self.alpha),
            "alpha_policy": self.alpha_policy,
            "eigenvalues_B": [float(x) for x in self.eigenvalues_B],
            "min_eigenvalue_B": self.min_eigenvalue,
            "negative_counts": {f"{eps:g}": int(c) for eps, c in self.negative_counts.items()},
            "tail_norms": None if self.tail_norms is None else [float(x) for x in self.tail_norms],
            "double_comm_norm": None if self.double_comm_norm is None else float(self.double_comm_norm),
            "identity_residual": float(self.identity_residual),
            "projection_commutator_residual": float(self.projection_commutator_residual),
            "boundary_policy": self.boundary_policy,
            **self.extra,
        }


def mourre_experiment(g, q, win, alpha_policy="sharp", iA=None, L=None,
                      commutator_policy="splice", diagnostics=True):
    """Localised commutator positivity for ``H = L + q``.

    Builds ``E = g(H)`` and ``B = E [H, iA] E - alpha E**2`` and records the
    spectrum of B restricted to vertices of level <= D - 2.
    """
    if not win.inside_bulk():
        raise ContractError(f"window [{win.a}, {win.b}] is not inside (-2 sqrt 2, 2 sqrt 2)")
    if g.depth < 3:
        raise ContractError("the Mourre experiment needs depth >= 3")
    if L is None:
        L = build_L(g)
    if iA is None:
        from .conjugate import build_iA_algebraic
        iA = build_iA_algebraic(g)
    if q is None:
        from .potentials import zero
        q = zero(g)
    alpha = resolve_alpha(win, alpha_policy)
    H = L + np.diag(q.values)
    dec = eigh(H)
    E = smoothed_projection(H, win, require_bulk=True, decomposition=dec)
    C = free_commutator(g, L, iA, commutator_policy) + q_commutator(q, iA)
    B = E @ C @ E - alpha * (E @ E)
    B = 0.5 * (B + B.T)
    keep = g.ball_mask(g.depth - 2)
    eigs = eigvalsh(B[np.ix_(keep, keep)])
    counts = {eps: int(np.sum(eigs < -eps)) for eps in NEGATIVE_EPS}
    boundary = {
        "commutator": commutator_policy,
        "kept_max_level": g.depth - 2,
        "kept_dimension": int(keep.sum()),
        "excluded_dimension": int((~keep).sum()),
    }
    report = MourreReport(
        depth=g.depth,
        potential=q.descriptor(),
        window=win.to_dict(),
        alpha=alpha,
        alpha_policy=str(alpha_policy),
        eigenvalues_B=eigs,
        negative_counts=counts,
        identity_residual=commutator_identity_check(g, L, iA),
        boundary_policy=boundary,
        projection_commutator_residual=float(np.linalg.norm(E @ H - H @ E)),
    )
    if diagnostics:
        report.tail_norms = tail_norm_profile(g, q, iA)
        report.double_comm_norm = double_commutator_norm(g, q, iA)
    return report
