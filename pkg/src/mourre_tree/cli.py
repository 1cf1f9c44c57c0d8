"""Command-line front end.

    mourre-tree spectrum --depth 2 --out out/
    mourre-tree mourre --depth 6 --potential none --window -1.5 1.5 --alpha sharp
    mourre-tree all --config sweep.cfg

Every command writes its artifacts into ``--out`` and exits with status 0
only if all of its checks pass; failed checks are listed on stderr.
"""
import argparse
import os
import sys
from dataclasses import dataclass

import numpy as np

from . import conjugate, haar, modes, mourre, operators, potentials
from .errors import ContractError
from .serialize import write_csv, write_json
from .tree import TreeGeometry

COMMANDS = ("decompose", "spectrum", "commutator", "decay", "mourre", "all")
MAX_DEPTH = 12

DEFAULTS = {
    "depth": 6,
    "potential": "none",
    "window": (-1.5, 1.5),
    "smoothing": None,
    "alpha": "sharp",
    "out": "out",
    "seed": 0,
    "force": False,
    "dump_operators": False,
    "dump_format": "triplet",
}


@dataclass
class ExperimentConfig:
    command: str
    depth: int
    potential: str
    window: tuple
    smoothing: float
    alpha: str
    out: str
    seed: int
    force: bool
    dump_operators: bool
    dump_format: str

    def validate(self):
        if self.command not in COMMANDS:
            raise ContractError(f"unknown command {self.command!r}")
        if self.depth < 0:
            raise ContractError("depth must be nonnegative")
        if self.depth > MAX_DEPTH and not self.force:
            raise ContractError(f"depth {self.depth} exceeds {MAX_DEPTH}; pass --force to run anyway")
        if self.command in ("mourre", "commutator", "all") and self.depth < 3:
            raise ContractError(f"command {self.command!r} needs depth >= 3")
        a, b = self.window
        if not a < b:
            raise ContractError(f"window needs a < b, got [{a}, {b}]")
        self.make_window()
        if self.command in ("mourre", "all") and not self.make_window().inside_bulk():
            raise ContractError(f"window [{a}, {b}] must lie inside (-2 sqrt 2, 2 sqrt 2)")
        mourre.resolve_alpha(self.make_window(), self.alpha)
        potentials.parse_potential(TreeGeometry(0), self.potential)
        if self.dump_format not in ("triplet", "csv", "both"):
            raise ContractError(f"unknown dump format {self.dump_format!r}")
        return self

    def make_window(self):
        return mourre.SpectralWindow(self.window[0], self.window[1], self.smoothing)


def read_config_file(path):
    """Flat ``key = value`` file; keys mirror the long flags."""
    out = {}
    with open(path) as fh:
        for raw in fh:
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            key, sep, value = line.partition("=")
            if not sep:
                raise ContractError(f"config line without '=': {raw.rstrip()}")
            key = key.strip().replace("-", "_")
            value = value.strip()
            if key not in DEFAULTS:
                raise ContractError(f"unknown config key {key!r}")
            if key == "window":
                out[key] = tuple(float(x) for x in value.replace(",", " ").split())
            elif key in ("depth", "seed"):
                out[key] = int(value)
            elif key == "smoothing":
                out[key] = float(value)
            elif key in ("force", "dump_operators"):
                out[key] = value.lower() in ("1", "true", "yes", "on")
            else:
                out[key] = value
    return out


def build_parser():
    p = argparse.ArgumentParser(prog="mourre-tree", description=__doc__.split("\n")[0])
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--config", help="flat key=value file mirroring the flags")
    p.add_argument("--depth", type=int)
    p.add_argument("--potential", help="none | power:c,beta | log:c | alternating:c,beta | rootdefect")
    p.add_argument("--window", type=float, nargs=2, metavar=("A", "B"))
    p.add_argument("--smoothing", type=float, help="transition width delta (default 0.1 (b - a))")
    p.add_argument("--alpha", help="sharp | margin:theta")
    p.add_argument("--out")
    p.add_argument("--seed", type=int)
    p.add_argument("--force", action="store_true", default=None)
    p.add_argument("--dump-operators", action="store_true", default=None)
    p.add_argument("--dump-format", choices=("triplet", "csv", "both"))
    return p


def make_config(argv):
    args = build_parser().parse_args(argv)
    values = dict(DEFAULTS)
    if args.config:
        values.update(read_config_file(args.config))
    for key in DEFAULTS:
        v = getattr(args, key)
        if v is not None:
            values[key] = tuple(v) if key == "window" else v
    return ExperimentConfig(command=args.command, **values).validate()


class Checks:
    """Collects named pass/fail results for one command."""

    def __init__(self):
        self.results = {}

    def add(self, name, value, ok):
        self.results[name] = {"value": value, "ok": bool(ok)}

    @property
    def failures(self):
        return [k for k, v in self.results.items() if not v["ok"]]


def _dump(cfg, name, M):
    if not cfg.dump_operators:
        return
    if cfg.dump_format in ("triplet", "both"):
        operators.write_triplets(os.path.join(cfg.out, f"{name}.txt"), M)
    if cfg.dump_format in ("csv", "both"):
        operators.write_dense_csv(os.path.join(cfg.out, f"{name}.csv"), M)


def run_decompose(cfg, g, checks):
    dec = haar.SubspaceDecomposition(g)
    N = haar.build_N(g)
    L = operators.build_L(g)
    Pi = operators.build_pi(g)
    rng = np.random.default_rng(cfg.seed)
    worst_n = worst_id = 0.0
    dims_ok = True
    for r, basis in enumerate(dec.bases):
        V = basis.vectors
        sl = g.sphere_slice(r)
        worst_id = max(worst_id, np.max(np.abs(V.T @ V - np.eye(2 ** r))))
        worst_n = max(worst_n, np.max(np.abs(dec.N[sl, sl] - N[sl, sl])))
        dims = [basis.select(n).shape[0] for n in range(r + 1)]
        dims_ok &= dims == [haar.dim_Q(n) for n in range(r + 1)] and sum(dims) == 2 ** r
        rows = [(n, k, *vec) for (n, k), vec in zip(basis.labels, V)]
        write_csv(os.path.join(cfg.out, f"haar_sphere{r}.csv"),
                  ["n", "k"] + [f"v{j}" for j in g.sphere(r)], rows)
        write_csv(os.path.join(cfg.out, f"N_sphere{r}.csv"), [f"v{j}" for j in g.sphere(r)],
                  [tuple(row) for row in N[sl, sl]])
    checks.add("N_closed_form_vs_projector_sum", worst_n, worst_n <= 1e-12)
    checks.add("projectors_resolve_identity", worst_id, worst_id <= 1e-12)
    checks.add("subspace_dimensions", dims_ok, dims_ok)
    interior = g.levels <= g.depth - 1
    inv = 0.0
    for n in range(g.depth):
        B = dec.m_basis(n)
        B = B[:, interior[np.argmax(np.abs(B), axis=0)]]
        LB = L @ B
        Bn = dec.m_basis(n)
        inv = max(inv, np.max(np.abs(LB - Bn @ (Bn.T @ LB))) if B.size else 0.0)
    checks.add("M_n_invariance", inv, inv <= 1e-10)
    phi, psi = rng.standard_normal((2, g.n_vertices))
    adj = abs(psi @ (Pi @ phi) - (Pi.T @ psi) @ phi)
    checks.add("pi_adjoint", adj, adj <= 1e-12 * (1 + np.linalg.norm(phi) * np.linalg.norm(psi)))
    if g.depth >= 1:
        phi[g.sphere_slice(g.depth)] = 0.0
        res = np.max(np.abs(operators.apply_pi_star_pi(g, phi) - 2 * phi))
        checks.add("pi_star_pi_is_2", res, res <= 1e-12)
    R = operators.build_R(g)
    cols = g.levels <= g.depth - 1
    res = np.max(np.abs((operators.commutator(R, Pi) - Pi)[:, cols])) if cols.any() else 0.0
    checks.add("R_Pi_commutator", res, res == 0.0)
    _dump(cfg, "L", L)
    _dump(cfg, "Pi", Pi)
    _dump(cfg, "N", N)
    return {"seed": cfg.seed}


def run_spectrum(cfg, g, checks):
    L = operators.build_L(g)
    census = modes.full_spectrum_census(g, L)
    write_csv(os.path.join(cfg.out, "spectrum.csv"),
              ["mode", "k", "closed_form", "matched", "gap"], census.rows())
    checks.add("spectrum_max_gap", census.max_gap, census.max_gap <= 1e-9)
    edge = 2 * np.sqrt(2) * np.cos(np.pi / (g.depth + 2))
    ext = max(abs(census.computed[-1] - edge), abs(census.computed[0] + edge))
    checks.add("extreme_eigenvalues", ext, ext <= 1e-9)
    return {"max_gap": census.max_gap, "extreme": [float(census.computed[0]), float(census.computed[-1])]}


def run_commutator(cfg, g, checks):
    L = operators.build_L(g)
    iA = conjugate.build_iA_algebraic(g)
    iA2 = conjugate.build_iA_entrywise(g)
    res = mourre.commutator_identity_check(g, L, iA)
    checks.add("identity_interior_residual", res, res <= 1e-10)
    m = iA.interior_mask
    agree = float(np.max(np.abs(iA.interior_block() - iA2.interior_block())))
    checks.add("iA_two_route_agreement", agree, agree <= 1e-12)
    sums = conjugate.row_sums(iA)[m]
    excess = float(np.max(sums - conjugate.row_sum_bound(g.levels[m])))
    checks.add("iA_row_sum_bound", excess, excess <= 0.0)
    _dump(cfg, "iA", iA.matrix)
    C = mourre.commutator_identity_residual(g, L, iA)
    per_level = [float(np.max(np.abs(C[g.sphere_slice(r)]))) for r in range(g.depth + 1)]
    write_csv(os.path.join(cfg.out, "commutator_residual_by_level.csv"), ["level", "max_abs_residual"],
              list(enumerate(per_level)))
    return {"identity_residual": res, "row_sum_excess": excess}


def run_decay(cfg, g, checks):
    q = potentials.parse_potential(g, cfg.potential)
    s = potentials.first_difference_profile(g, q)
    t = potentials.second_difference_profile(g, q)
    r1 = np.arange(len(s))
    r2 = np.arange(len(t))
    write_csv(os.path.join(cfg.out, "decay_first.csv"), ["r", "s", "r_times_s"],
              [(int(r), float(a), float(r * a)) for r, a in zip(r1, s)])
    write_csv(os.path.join(cfg.out, "decay_second.csv"), ["r", "t", "r2_times_t"],
              [(int(r), float(a), float(r * r * a)) for r, a in zip(r2, t)])
    return {
        "potential": q.descriptor(),
        "heuristic_verdicts": {
            "first_difference": potentials.first_difference_verdict(s),
            "second_difference": potentials.second_difference_verdict(t),
        },
    }


def run_mourre(cfg, g, checks):
    q = potentials.parse_potential(g, cfg.potential)
    win = cfg.make_window()
    L = operators.build_L(g)
    iA = conjugate.build_iA_algebraic(g)
    rep = mourre.mourre_experiment(g, q, win, cfg.alpha, iA=iA, L=L)
    bound = mourre.schur_tail_bound(g, q)
    dc_bound = mourre.double_commutator_schur_bound(g, q, iA)
    rep.extra.update({
        "seed": cfg.seed,
        "schur_tail_bound": [float(x) for x in bound],
        "double_comm_schur_bound": dc_bound,
    })
    checks.add("identity_residual", rep.identity_residual, rep.identity_residual <= 1e-10)
    checks.add("E_commutes_with_H", rep.projection_commutator_residual,
               rep.projection_commutator_residual <= 1e-10)
    if q.family == "none" and cfg.alpha == "sharp":
        checks.add("free_positivity", rep.min_eigenvalue, rep.min_eigenvalue >= -1e-10)
    tails = rep.tail_norms
    checks.add("tail_norms_nonincreasing", float(np.max(np.diff(tails), initial=0.0)),
               np.all(np.diff(tails) <= 1e-12))
    checks.add("tail_norms_schur_dominated", float(np.max(tails - bound)), np.all(tails <= bound))
    checks.add("double_comm_schur_dominated", rep.double_comm_norm, rep.double_comm_norm <= dc_bound)
    write_json(os.path.join(cfg.out, "report.json"), rep.to_dict())
    write_csv(os.path.join(cfg.out, "eigenvalues_B.csv"), ["index", "eigenvalue"],
              [(i, float(x)) for i, x in enumerate(rep.eigenvalues_B)])
    return {"min_eigenvalue_B": rep.min_eigenvalue, "negative_counts": rep.to_dict()["negative_counts"]}


RUNNERS = {
    "decompose": run_decompose,
    "spectrum": run_spectrum,
    "commutator": run_commutator,
    "decay": run_decay,
    "mourre": run_mourre,
}


def run(cfg):
    """Execute one configured command; returns ``(status, checks)``."""
    os.makedirs(cfg.out, exist_ok=True)
    g = TreeGeometry(cfg.depth)
    names = [c for c in COMMANDS if c != "all"] if cfg.command == "all" else [cfg.command]
    checks = Checks()
    summary = {}
    for name in names:
        summary[name] = RUNNERS[name](cfg, g, checks)
    summary["checks"] = checks.results
    write_json(os.path.join(cfg.out, f"checks_{cfg.command}.json"), summary)
    return (1 if checks.failures else 0), checks


def main(argv=None):
    try:
        cfg = make_config(argv)
    except (ContractError, ValueError, OSError) as exc:
        print(f"mourre-tree: invalid configuration: {exc}", file=sys.stderr)
        return 2
    status, checks = run(cfg)
    for name in checks.failures:
        print(f"FAILED {name}: {checks.results[name]['value']}", file=sys.stderr)
    return status


if __name__ == "__main__":
    sys.exit(main())
