"""Potential families on the tree and finite-scale decay diagnostics.

The decay verdicts here are heuristics: asymptotic o(.) and O(.) claims
cannot be certified at finite depth, so the profiles themselves are the
quantities to rely on.
"""
from dataclasses import dataclass, field

import numpy as np

from .errors import ContractError

FIRST_DIFF = "first_diff_little_o"
SECOND_DIFF = "second_diff_big_O"
DECAYING = "decaying_only"


@dataclass(frozen=True)
class Potential:
    """A real function on the vertices of one truncated tree."""
    values: np.ndarray
    family: str = "custom"
    params: dict = field(default_factory=dict)
    decay_class: frozenset = frozenset()

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=float)
        if not np.all(np.isfinite(vals)):
            raise ContractError("potential values must be finite")
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    def descriptor(self):
        return {"family": self.family, "params": dict(self.params)}

    def __neg__(self):
        return Potential(-self.values, "custom", {"of": self.descriptor(), "op": "neg"},
                         self.decay_class)

    def __add__(self, other):
        if isinstance(other, Potential):
            return Potential(self.values + other.values, "custom",
                             {"of": [self.descriptor(), other.descriptor()], "op": "add"},
                             self.decay_class & other.decay_class)
        return NotImplemented

    def __mul__(self, c):
        return Potential(float(c) * self.values, "custom",
                         {"of": self.descriptor(), "op": "scale", "factor": float(c)},
                         self.decay_class)

    __rmul__ = __mul__

    def is_radial(self, g):
        return all(np.ptp(self.values[g.sphere_slice(r)]) == 0.0 for r in range(g.depth + 1))


def _radial(g, f):
    return f(g.levels.astype(float))


def zero(g):
    return Potential(np.zeros(g.n_vertices), "none", {}, frozenset({FIRST_DIFF, SECOND_DIFF, DECAYING}))


def power_radial(g, c, beta):
    """``c (1 + r)**(-beta)``; beta = 0 gives the constant potential."""
    claims = {SECOND_DIFF} if beta >= 0 else set()
    if beta > 0:
        claims |= {FIRST_DIFF, DECAYING}
    if beta == 0:
        claims |= {FIRST_DIFF}
    return Potential(_radial(g, lambda r: c * (1.0 + r) ** (-beta)), "power_radial",
                     {"c": c, "beta": beta}, frozenset(claims))


def log_radial(g, c):
    """``c / log(2 + r)``."""
    return Potential(_radial(g, lambda r: c / np.log(2.0 + r)), "log_radial", {"c": c},
                     frozenset({FIRST_DIFF, SECOND_DIFF, DECAYING}))


def alternating(g, c, beta):
    """``c (-1)**r (1 + r)**(-beta)``."""
    claims = set()
    if beta > 0:
        claims.add(DECAYING)
    if beta > 1:
        claims.add(FIRST_DIFF)
    if beta >= 2:
        claims.add(SECOND_DIFF)
    return Potential(_radial(g, lambda r: c * (-1.0) ** r * (1.0 + r) ** (-beta)),
                     "alternating", {"c": c, "beta": beta}, frozenset(claims))


def root_defect(g):
    """1 at the root and 0 elsewhere."""
    vals = np.zeros(g.n_vertices)
    vals[0] = 1.0
    return Potential(vals, "root_defect", {}, frozenset({FIRST_DIFF, SECOND_DIFF, DECAYING}))


def custom(g, values):
    values = np.asarray(values, dtype=float)
    if values.shape != (g.n_vertices,):
        raise ContractError(f"expected {g.n_vertices} values")
    return Potential(values, "custom", {})


def parse_potential(g, spec):
    """Parse ``none | power:c,beta | log:c | alternating:c,beta | rootdefect``."""
    name, _, args = spec.partition(":")
    try:
        nums = [float(x) for x in args.split(",")] if args else []
    except ValueError:
        raise ContractError(f"bad potential parameters in {spec!r}") from None
    table = {
        "none": (zero, 0),
        "power": (power_radial, 2),
        "log": (log_radial, 1),
        "alternating": (alternating, 2),
        "rootdefect": (root_defect, 0),
    }
    if name not in table:
        raise ContractError(f"unknown potential family {name!r}")
    fn, arity = table[name]
    if len(nums) != arity:
        raise ContractError(f"potential {name!r} takes {arity} parameters, got {len(nums)}")
    return fn(g, *nums)


def first_difference_profile(g, q):
    """``s(r) = sup |q(v) - q(w)|`` over ``v in S_r``, ``w in S_{r+1}``, r = 0..D-1.

    The sup runs over all pairs of the two spheres, not only edges.  The
    per-vertex quantity ``sup_{|w| = |v| +- 1} |q(v) - q(w)|`` is
    ``max(s(|v| - 1), s(|v|))``; see :func:`local_first_difference`.
    """
    vals = q.values if isinstance(q, Potential) else np.asarray(q)
    s = np.zeros(g.depth)
    for r in range(g.depth):
        a = vals[g.sphere_slice(r)]
        b = vals[g.sphere_slice(r + 1)]
        s[r] = max(a.max() - b.min(), b.max() - a.min())
    return s


def local_first_difference(g, q):
    """Per-radius ``sup_{v in S_r, |w| = r +- 1} |q(v) - q(w)|`` for r = 0..D."""
    s = first_difference_profile(g, q)
    out = np.zeros(g.depth + 1)
    out[:-1] = s
    out[1:] = np.maximum(out[1:], s)
    return out


def second_difference_profile(g, q):
    """``t(r) = max |q(v) + q(z) - 2 q(w)|`` over monotone paths v - w - z.

    ``v in S_r``, ``w`` a neighbour of ``v`` with ``|w| = r +- 1`` and ``z``
    a neighbour of ``w`` with ``|z| = r +- 2``.  Radii without any such
    path (only possible when D < 2) get NaN.
    """
    vals = q.values if isinstance(q, Potential) else np.asarray(q)
    t = np.full(g.depth + 1, np.nan)
    for r in range(g.depth + 1):
        best = []
        v = g.sphere(r)
        if r + 2 <= g.depth:
            z = 4 * v[:, None] + np.arange(4)[None, :]
            w = z // 2
            best.append(np.abs(vals[v - 1][:, None] + vals[z - 1] - 2 * vals[w - 1]).max())
        if r >= 2:
            w = v // 2
            z = v // 4
            best.append(np.abs(vals[v - 1] + vals[z - 1] - 2 * vals[w - 1]).max())
        if best:
            t[r] = max(best)
    return t


def first_difference_verdict(s):
    """Heuristic: r s(r) nonincreasing over the top half of available radii."""
    r = np.arange(len(s))
    lo = max(1, len(s) // 2)
    scaled = r[lo:] * s[lo:]
    if scaled.size < 2:
        return "inconclusive"
    ok = np.all(np.diff(scaled) <= 1e-15 * (1 + np.abs(scaled[:-1])))
    return "consistent" if ok else "fails"


def second_difference_verdict(t):
    """Heuristic: r**2 t(r) over the top half of radii stays below twice its median.

    The median runs over all available radii r >= 1.  Only the top half is
    tested against it: a few paths through the root make the first radii
    large for perfectly smooth potentials.
    """
    r = np.arange(len(t))
    scaled = r ** 2 * t
    ok = np.isfinite(scaled) & (r >= 1)
    if ok.sum() < 2:
        return "inconclusive"
    med = np.median(scaled[ok])
    top = scaled[ok & (r >= max(1, len(t) // 2))]
    return "consistent" if np.all(top <= 2 * med + 1e-15) else "fails"
