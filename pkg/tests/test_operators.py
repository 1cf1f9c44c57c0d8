import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mourre_tree.errors import ContractError, TruncationDomainError
from mourre_tree.operators import (
    apply_pi_star_pi, build_Delta_d, build_L, build_Lambda, build_pi, build_pi_star, build_R,
    commutator, degree, read_triplets, root_indicator, to_triplets, triplet_matvec, write_triplets,
)
from mourre_tree.tree import TreeGeometry


def test_L_depth_one():
    L = build_L(TreeGeometry(1))
    assert np.array_equal(L, [[0, 1, 1], [1, 0, 0], [1, 0, 0]])


@pytest.mark.parametrize("depth", range(0, 9))
def test_L_is_pi_plus_adjoint(depth):
    g = TreeGeometry(depth)
    Pi = build_pi(g)
    L = build_L(g)
    assert np.array_equal(L, Pi + Pi.T)
    assert np.array_equal(L, L.T)
    assert np.array_equal(build_pi_star(g), Pi.T)
    assert np.all(np.diag(L) == 0)


def test_pi_moves_one_sphere_out():
    g = TreeGeometry(5)
    Pi = build_pi(g)
    rows, cols = np.nonzero(Pi)
    assert np.all(g.levels[rows] == g.levels[cols] + 1)


def test_row_sums_of_L():
    g = TreeGeometry(4)
    sums = build_L(g).sum(axis=1)
    assert sums[0] == 2
    assert np.all(sums[(g.levels > 0) & (g.levels < 4)] == 3)
    assert np.all(sums[g.levels == 4] == 1)


@pytest.mark.parametrize("depth", range(0, 9))
def test_delta_and_degree(depth):
    g = TreeGeometry(depth)
    Delta, d = build_Delta_d(g)
    L = build_L(g)
    assert np.array_equal(Delta + d - L, np.zeros_like(L))
    inner = g.levels < depth
    d0 = root_indicator(g)
    assert np.array_equal(np.diag(d)[inner], (3 - d0)[inner])
    if depth == 0:
        assert np.array_equal(Delta, [[0.0]]) and np.array_equal(d, [[0.0]])
    else:
        assert np.all(np.diag(d)[g.levels == depth] == 1)


def test_pi_star_pi_examples():
    g = TreeGeometry(3)
    root = root_indicator(g)
    assert np.array_equal(apply_pi_star_pi(g, root), 2 * root)
    rng = np.random.default_rng(7)
    phi = rng.standard_normal(g.n_vertices)
    phi[g.sphere_slice(3)] = 0
    np.testing.assert_allclose(apply_pi_star_pi(g, phi), 2 * phi, atol=1e-15)
    Pi = build_pi(g)
    np.testing.assert_allclose(Pi.T @ Pi @ phi, 2 * phi, atol=1e-15)
    leaf = np.zeros(g.n_vertices)
    leaf[-1] = 1
    with pytest.raises(TruncationDomainError):
        apply_pi_star_pi(g, leaf)


@pytest.mark.parametrize("depth", range(1, 9))
def test_adjoint_randomized(depth):
    g = TreeGeometry(depth)
    Pi = build_pi(g)
    rng = np.random.default_rng(depth)
    for _ in range(100):
        phi, psi = rng.standard_normal((2, g.n_vertices))
        assert abs(psi @ (Pi @ phi) - (Pi.T @ psi) @ phi) <= 1e-12 * (1 + np.abs(phi).sum() * np.abs(psi).max())


@pytest.mark.parametrize("depth", range(1, 9))
def test_R_Pi_commutator(depth):
    g = TreeGeometry(depth)
    Pi = build_pi(g)
    C = commutator(build_R(g), Pi) - Pi
    assert np.all(C[:, g.levels <= depth - 1] == 0)


def test_commutator_trivial_cases():
    M = np.arange(16.0).reshape(4, 4)
    assert not commutator(M, M).any()
    assert not commutator(M, np.eye(4)).any()
    with pytest.raises(ContractError):
        commutator(M, np.eye(3))


def test_lambda_projection():
    g = TreeGeometry(4)
    Lam = build_Lambda(g, 2)
    assert np.array_equal(Lam @ Lam, Lam)
    assert Lam.trace() == 7


def test_degree_matches_adjacency_count():
    g = TreeGeometry(6)
    assert np.array_equal(degree(g), build_L(g).sum(axis=1))


def test_triplet_roundtrip(tmp_path):
    g = TreeGeometry(3)
    L = build_L(g)
    path = tmp_path / "L.txt"
    write_triplets(path, L)
    first = path.read_text().splitlines()[1].split()
    assert first == ["1", "2", "1"]
    assert np.array_equal(read_triplets(path), L)
    x = np.arange(g.n_vertices, dtype=float)
    np.testing.assert_array_equal(triplet_matvec(to_triplets(L), x), L @ x)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 7), st.integers(0, 2 ** 31 - 1))
def test_adjoint_property(depth, seed):
    g = TreeGeometry(depth)
    Pi = build_pi(g)
    rng = np.random.default_rng(seed)
    phi, psi = rng.standard_normal((2, g.n_vertices))
    assert psi @ (Pi @ phi) == pytest.approx((Pi.T @ psi) @ phi, abs=1e-11)
