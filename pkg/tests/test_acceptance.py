"""One test per acceptance criterion, each printing a pass/fail line in the summary."""
import numpy as np
import pytest

from mourre_tree import cli
from mourre_tree.conjugate import build_iA_algebraic, build_iA_entrywise, row_sum_bound, row_sums
from mourre_tree.haar import SubspaceDecomposition, build_N, dim_Q, pushforward_haar
from mourre_tree.modes import full_spectrum_census
from mourre_tree.mourre import (
    SpectralWindow, commutator_identity_check, double_commutator_norm,
    double_commutator_schur_bound, mourre_experiment, schur_tail_bound, tail_norm_profile,
)
from mourre_tree.operators import build_L
from mourre_tree.potentials import log_radial, power_radial, root_defect, zero
from mourre_tree.tree import TreeGeometry

WINDOW = dict(a=-1.5, b=1.5, delta=0.25)


def test_criterion_01_level_operator(acceptance_line):
    g = TreeGeometry(8)
    N = build_N(g)
    oracle = SubspaceDecomposition(g, [pushforward_haar(g, r) for r in range(g.depth + 1)])
    projector_sum = sum(n * P for n, P in enumerate(oracle.projectors()))
    worst = float(np.abs(N - projector_sum).max())
    ok = worst <= 1e-12
    acceptance_line(1, ok, f"closed-form N vs sum n P_n, spheres r <= 8: max err {worst:.2e} (tol 1e-12)")
    assert ok


def test_criterion_02_decomposition(acceptance_line):
    worst_id = worst_inv = 0.0
    dims_ok = True
    for depth in range(0, 9):
        g = TreeGeometry(depth)
        L = build_L(g)
        dec = SubspaceDecomposition(g)
        for r in range(depth + 1):
            dims = [dec.q_basis(n, r).shape[1] for n in range(r + 1)]
            dims_ok &= dims == [dim_Q(n) for n in range(r + 1)] and sum(dims) == 2 ** r
        Ps = dec.projectors()
        worst_id = max(worst_id, np.abs(sum(Ps) - np.eye(g.n_vertices)).max())
        interior = g.levels <= depth - 1
        for P in Ps:
            leak = (L @ P - P @ L @ P)[:, interior]
            worst_inv = max(worst_inv, np.abs(leak).max(initial=0.0))
    ok = dims_ok and worst_id <= 1e-12 and worst_inv <= 1e-10
    acceptance_line(2, ok, f"dims {'ok' if dims_ok else 'WRONG'}, sum P_n = I err {worst_id:.2e}, "
                           f"M_n invariance err {worst_inv:.2e}, D <= 8")
    assert ok


def test_criterion_03_spectrum_census(acceptance_line):
    worst_gap = worst_edge = 0.0
    for depth in range(2, 11):
        g = TreeGeometry(depth)
        census = full_spectrum_census(g, build_L(g))
        edge = 2 * np.sqrt(2) * np.cos(np.pi / (depth + 2))
        worst_gap = max(worst_gap, census.max_gap)
        worst_edge = max(worst_edge, abs(census.computed[-1] - edge), abs(census.computed[0] + edge))
    ok = worst_gap <= 1e-9 and worst_edge <= 1e-9
    acceptance_line(3, ok, f"L spectrum vs chain closed form, D 2..10: max gap {worst_gap:.2e}, "
                           f"extremes err {worst_edge:.2e} (tol 1e-9); top at D=10 {census.computed[-1]:.6f}")
    assert ok


def test_criterion_04_conjugate_operator(acceptance_line):
    worst_agree = 0.0
    antisym = True
    rows_ok = True
    for depth in range(0, 11):
        g = TreeGeometry(depth)
        a = build_iA_algebraic(g)
        b = build_iA_entrywise(g)
        worst_agree = max(worst_agree, np.abs(a.interior_block() - b.interior_block()).max(initial=0.0))
        antisym &= bool(np.array_equal(a.matrix, -a.matrix.T))
        m = a.interior_mask
        rows_ok &= bool(np.all(row_sums(a)[m] <= row_sum_bound(g.levels[m])))
    ok = worst_agree <= 1e-12 and antisym and rows_ok
    acceptance_line(4, ok, f"iA two routes agree to {worst_agree:.2e}, antisymmetry exact {antisym}, "
                           f"row sums <= 9|v|+4 {rows_ok}, D <= 10")
    assert ok


def test_criterion_05_commutator_identity(acceptance_line):
    worst = 0.0
    for depth in range(3, 11):
        g = TreeGeometry(depth)
        worst = max(worst, commutator_identity_check(g, build_L(g), build_iA_algebraic(g)))
    ok = worst <= 1e-10
    acceptance_line(5, ok, f"[L,iA] - (8 - L^2) on interior block, D 3..10: max {worst:.2e} (tol 1e-10)")
    assert ok


def test_criterion_06_free_mourre(acceptance_line):
    win = SpectralWindow(**WINDOW)
    mins = {}
    for depth in (6, 8):
        g = TreeGeometry(depth)
        rep = mourre_experiment(g, zero(g), win, "sharp", diagnostics=False)
        assert rep.alpha == 5.75
        mins[depth] = rep.min_eigenvalue
    ok = all(v >= -1e-10 for v in mins.values())
    acceptance_line(6, ok, "free B min eigenvalue, alpha 5.75: "
                    + ", ".join(f"D={d}: {v:.2e}" for d, v in mins.items()) + " (tol -1e-10)")
    assert ok


@pytest.mark.slow
def test_criterion_07_perturbed_mourre(acceptance_line):
    win = SpectralWindow(**WINDOW)
    counts = {}
    for depth in range(6, 10):
        g = TreeGeometry(depth)
        rep = mourre_experiment(g, power_radial(g, 1, 1), win, "margin:0.5", diagnostics=False)
        counts[depth] = rep.negative_counts[1e-2]
    ok = len(set(counts.values())) == 1
    acceptance_line(7, ok, f"power(1,1) margin:0.5 counts below -1e-2 by depth {counts}")
    assert ok


def test_criterion_08_tails(acceptance_line):
    g = TreeGeometry(8)
    iA = build_iA_algebraic(g)
    details = []
    ok = True
    for q in (power_radial(g, 1, 1), log_radial(g, 1)):
        tail = tail_norm_profile(g, q, iA)
        bound = schur_tail_bound(g, q)
        mono = bool(np.all(np.diff(tail) <= 1e-12))
        dom = bool(np.all(tail <= bound))
        ok &= mono and dom
        details.append(f"{q.family} monotone {mono} dominated {dom}")
    rd = tail_norm_profile(g, root_defect(g), iA)
    zero_tail = bool(np.all(rd[2:] == 0.0))
    ok &= zero_tail
    acceptance_line(8, ok, "; ".join(details) + f"; root_defect zero for n >= 2 {zero_tail} (D=8)")
    assert ok


@pytest.mark.slow
def test_criterion_09_double_commutator(acceptance_line):
    norms = {}
    dominated = True
    for depth in range(4, 11):
        g = TreeGeometry(depth)
        iA = build_iA_algebraic(g)
        q = power_radial(g, 1, 1)
        norms[depth] = double_commutator_norm(g, q, iA)
        dominated &= norms[depth] <= double_commutator_schur_bound(g, q, iA)
    spread = max(norms.values()) / min(norms.values())
    ok = spread <= 2 and dominated
    acceptance_line(9, ok, f"double commutator power(1,1), D 4..10: spread {spread:.4f}x (<= 2), "
                           f"Schur dominated {dominated}")
    assert ok


def test_criterion_10_determinism(acceptance_line, tmp_path):
    blobs = []
    for run in ("first", "second"):
        out = tmp_path / run
        argv = ["mourre", "--depth", "6", "--potential", "power:1,1", "--window", "-1.5", "1.5",
                "--smoothing", "0.25", "--alpha", "margin:0.5", "--out", str(out)]
        assert cli.main(argv) == 0
        blobs.append((out / "report.json").read_bytes())
    ok = blobs[0] == blobs[1]
    acceptance_line(10, ok, f"two mourre runs give byte-identical report.json ({len(blobs[0])} bytes)")
    assert ok
