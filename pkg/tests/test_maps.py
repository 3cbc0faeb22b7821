import pytest

from gemkit.maps import Map, UnionFind, circuit_rank, connected_maps, count_cycles, map_code, permutation_cycles


def test_cycles_of_identity():
    assert count_cycles([0, 1, 2]) == 3
    assert permutation_cycles([1, 2, 0]) == [[0, 1, 2]]


def test_union_find_components():
    uf = UnionFind(5)
    uf.union(0, 1)
    uf.union(3, 4)
    assert uf.components == 3
    assert not uf.union(1, 0)


def test_circuit_rank_theta():
    assert circuit_rank(2, [(0, 1)] * 3) == 2


class TestMap:
    def test_plane_loop(self):
        m = Map([1, 0], [1, 0])
        assert (m.n_vertices(), m.n_edges(), m.n_faces()) == (1, 1, 2)
        assert m.genus() == 0

    def test_torus_bouquet(self):
        # two interleaved loops on one vertex: 1 face, genus 1
        m = Map([1, 2, 3, 0], [2, 3, 0, 1])
        assert m.n_faces() == 1
        assert m.genus() == 1
        assert m.circuit_rank() == 2

    def test_twisted_loop_is_projective(self):
        m = Map([1, 0], [1, 0], twisted=frozenset({0, 1}))
        assert not m.is_orientable()
        assert m.euler_characteristic() == 1
        with pytest.raises(ValueError):
            m.genus()

    def test_code_invariant_under_relabeling(self):
        sigma, alpha = [1, 2, 3, 0], [2, 3, 0, 1]
        relabel = [2, 0, 3, 1]
        inv = [relabel.index(k) for k in range(4)]
        s2 = [relabel[sigma[inv[k]]] for k in range(4)]
        a2 = [relabel[alpha[inv[k]]] for k in range(4)]
        assert map_code(sigma, alpha) == map_code(s2, a2)


@pytest.mark.parametrize("E,total,planar", [(1, 2, 2), (2, 5, 4), (3, 20, 14), (4, 107, 57), (5, 870, 312)])
def test_connected_map_census(E, total, planar):
    maps = connected_maps(E)
    assert len(maps) == total
    assert sum(1 for m in maps if m.genus() == 0) == planar
    assert all(m.components() == 1 for m in maps)


def test_connected_maps_rejects_zero():
    with pytest.raises(ValueError):
        connected_maps(0)
