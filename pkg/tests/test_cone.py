import random
from fractions import Fraction

import pytest

from metricpoly.cone import (
    UnboundedRayError, adjacent_to_some_cut, cut_neighbors, neighbors, ray_shoot, tangent_cone,
)
from metricpoly.dd import double_description
from metricpoly.exact import dot
from metricpoly.polytope import (
    CutSet, MetricVector, NotAVertexError, all_cuts, are_adjacent, cut_vector, facets,
    incidence, is_integral, is_vertex, normal_matrix,
)
from metricpoly.symmetry import random_element


class TestCounterexample:
    def test_cone_has_37_rays(self, fixture_vertex):
        cone = tangent_cone(fixture_vertex.vertex)
        assert cone.is_quasi_simple
        assert len(cone.tight) == 37
        assert len(cone) == 37

    def test_neighbours_match_reference(self, fixture_vertex):
        nb = neighbors(fixture_vertex.vertex)
        assert len(nb) == 37
        assert set(nb) == set(fixture_vertex.expected_neighbors)
        assert not any(is_integral(w) for w in nb)

    def test_neighbours_are_adjacent_vertices(self, fixture_vertex):
        v = fixture_vertex.vertex
        for w in neighbors(v):
            assert is_vertex(w)
            assert are_adjacent(v, w)

    def test_no_cut_neighbour(self, fixture_vertex):
        assert not adjacent_to_some_cut(fixture_vertex.vertex)
        assert cut_neighbors(fixture_vertex.vertex) == []

    def test_neighbour_relation_is_symmetric(self, fixture_vertex):
        v = fixture_vertex.vertex
        for w in neighbors(v):
            if len(incidence(w)) == 37:
                assert v in neighbors(w)
            else:
                assert are_adjacent(w, v)

    def test_equivariance(self, fixture_vertex):
        rng = random.Random(1)
        v = fixture_vertex.vertex
        base = neighbors(v)
        for _ in range(2):
            g = random_element(9, rng)
            assert set(neighbors(g(v))) == {g(w) for w in base}


class TestSmallCases:
    def test_simple_cone_m3(self):
        zero = MetricVector.zero(3)
        cone = tangent_cone(zero)
        assert len(cone.tight) == 3 and len(cone) == 3
        others = {cut_vector(s) for s in all_cuts(3)} - {zero}
        assert set(neighbors(zero)) == others

    def test_ray_shoot_m3(self):
        zero = MetricVector.zero(3)
        target = cut_vector(CutSet.of(3, [2]))
        hit = ray_shoot(zero, target.coords)
        assert hit.coords == (1, 0, 1)
        # a shorter direction vector reaches the same point
        assert ray_shoot(zero, [Fraction(1, 5), 0, Fraction(1, 5)]) == hit

    def test_rays_are_feasible_directions(self, vertex_sets):
        normals = normal_matrix(5)
        for v in list(vertex_sets(5))[::3]:
            cone = tangent_cone(v)
            for r in cone.rays:
                assert all(dot(normals[f], r) <= 0 for f in cone.tight)
                # extreme: tight on a rank dim-1 subset of the cone rows
                assert sum(dot(normals[f], r) == 0 for f in cone.tight) >= v.dimension - 1

    @pytest.mark.parametrize("n", [4, 5])
    def test_cut_neighbours_are_all_cuts(self, n):
        cuts = {cut_vector(s) for s in all_cuts(n)}
        for c in cuts:
            nb = neighbors(c)
            assert {w for w in nb if is_integral(w)} == cuts - {c}
            if n == 4:
                assert set(nb) == cuts - {c}

    def test_m6_cut_has_fractional_neighbours(self, vertex_sets):
        zero = MetricVector.zero(6)
        nb = neighbors(zero)
        cuts = {cut_vector(s) for s in all_cuts(6)}
        assert cuts - {zero} <= set(nb)
        assert set(nb) <= set(vertex_sets(6))
        assert all(are_adjacent(zero, w) for w in nb)

    def test_m5_neighbours_symmetric_and_vertices(self, vertex_sets, graphs):
        vs = vertex_sets(5)
        g = graphs(5)
        for k, v in enumerate(vs):
            nb = neighbors(v)
            assert nb == [vs[j] for j in g.edges[k]]
            for w in nb:
                assert v in neighbors(w)

    def test_quasi_simple_ray_count(self, vertex_sets):
        for v in vertex_sets(6):
            if len(incidence(v)) == v.dimension + 1:
                assert len(tangent_cone(v)) == v.dimension + 1


class TestDomination:
    @pytest.mark.parametrize("n", [5, 6])
    def test_agrees_with_neighbour_lists(self, n, vertex_sets):
        sample = list(vertex_sets(n))[::max(1, len(vertex_sets(n)) // 60)]
        for v in sample:
            expected = any(is_integral(w) for w in neighbors(v))
            assert adjacent_to_some_cut(v) == expected

    def test_true_on_cuts(self):
        for s in all_cuts(5):
            assert adjacent_to_some_cut(cut_vector(s))

    def test_true_on_m5_fractional(self, vertex_sets):
        for k in vertex_sets(5).fractional:
            assert adjacent_to_some_cut(vertex_sets(5)[k])


class TestModes:
    @pytest.mark.parametrize("mode", ["rank", "combinatorial"])
    def test_adjacency_modes_agree(self, mode, fixture_vertex, vertex_sets):
        points = [fixture_vertex.vertex] + list(vertex_sets(6))[::50]
        for v in points:
            assert tangent_cone(v, adjacency=mode).rays == tangent_cone(v).rays

    def test_orthant(self):
        rows = [[-1, 0, 0], [0, -1, 0], [0, 0, -1]]
        assert double_description(rows) == [(0, 0, 1), (0, 1, 0), (1, 0, 0)]

    def test_unknown_mode(self):
        with pytest.raises(ValueError):
            double_description([[-1, 0], [0, -1]], adjacency="bogus")


class TestErrors:
    def test_not_a_vertex(self):
        with pytest.raises(NotAVertexError):
            tangent_cone(MetricVector.constant(4, Fraction(1, 2)))
        with pytest.raises(NotAVertexError):
            adjacent_to_some_cut(MetricVector.constant(4, Fraction(1, 3)))

    def test_zero_direction_is_unbounded(self):
        with pytest.raises(UnboundedRayError):
            ray_shoot(MetricVector.zero(4), [0] * 6)

    def test_wrong_length(self):
        with pytest.raises(ValueError):
            ray_shoot(MetricVector.zero(4), [1, 0])

    def test_ray_shoot_stays_feasible(self, vertex_sets):
        rng = random.Random(4)
        vs = list(vertex_sets(5))
        for _ in range(50):
            v = rng.choice(vs)
            r = [rng.randint(-3, 3) for _ in range(10)]
            if not any(r):
                continue
            x = ray_shoot(v, r)
            slacks = [f.rhs - dot(f.normal_row(), x.coords) for f in facets(5)]
            assert min(slacks) == 0 and all(s >= 0 for s in slacks)
