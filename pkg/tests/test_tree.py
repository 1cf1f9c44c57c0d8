import pytest

from mourre_tree.errors import ContractError
from mourre_tree.tree import TreeGeometry, level


def test_sphere_examples():
    g = TreeGeometry(4)
    assert list(g.sphere(0)) == [1]
    assert list(g.sphere(1)) == [2, 3]
    assert list(g.sphere(3)) == list(range(8, 16))


@pytest.mark.parametrize("depth", range(0, 8))
def test_spheres_match_breadth_first_traversal(depth):
    g = TreeGeometry(depth)
    order = g.bfs_order()
    start = 0
    for r in range(depth + 1):
        assert list(g.sphere(r)) == order[start:start + 2 ** r]
        start += 2 ** r
    assert start == g.n_vertices == len(order)


def test_sphere_out_of_range():
    g = TreeGeometry(3)
    with pytest.raises(IndexError):
        g.sphere(4)
    with pytest.raises(IndexError):
        g.sphere(-1)


def test_levels_and_structure(small_tree):
    g = small_tree
    for k in range(1, g.n_vertices + 1):
        assert g.levels[k - 1] == level(k) == g.level(k)
        if g.level(k) < g.depth:
            left, right = g.children(k)
            assert g.parent(left) == g.parent(right) == k
        else:
            assert g.children(k) == ()
        if k > 1:
            assert g.level(g.parent(k)) == g.level(k) - 1


def test_lca_examples():
    g = TreeGeometry(3)
    assert g.lca_level(4, 5) == 1
    assert g.lca_level(4, 6) == 0
    assert g.lca_level(8, 9) == 2
    with pytest.raises(ContractError):
        g.lca_level(4, 2)
    with pytest.raises(ContractError):
        g.lca_level(4, 4)


def test_lca_by_walking_up():
    g = TreeGeometry(5)
    for r in range(1, 6):
        for z in g.sphere(r):
            for w in g.sphere(r):
                if z == w:
                    continue
                a, b = int(z), int(w)
                while a != b:
                    a, b = a // 2, b // 2
                assert g.lca_level(int(z), int(w)) == level(a)
