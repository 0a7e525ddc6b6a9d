"""Tests for the ridge graph, its complement, Triangles, and the quotient."""

import itertools

import networkx as nx
import pytest

from conesym.core import (
    Permutation,
    TriangleFacet,
    enumerate_triangle_facets,
    permute_facet,
)
from conesym.ridge import (
    Graph,
    StructureError,
    bfs_distances,
    build_complement,
    build_ridge_graph,
    build_triangle_graph,
    conflicting,
    edge_list_lines,
    find_triangles,
    group_facets_by_support,
    intersection_array,
    label_lines,
    to_graph6,
    verify_distance2_property,
    verify_hexagon_neighborhood,
    verify_johnson_isomorphism,
    verify_line_graph_k34,
    verify_rook_neighborhood,
)


class TestConflicting:
    def test_opposite_sign_at_shared_apex(self):
        f = TriangleFacet(1, 2, 3, 5)
        g = TriangleFacet(1, 3, 2, 5)
        assert conflicting(f, g) is True  # position (1,2): +1 vs -1

    def test_facet_never_conflicts_with_itself(self):
        for f in enumerate_triangle_facets(5)[:6]:
            assert conflicting(f, f) is False

    def test_same_apex_different_third(self):
        f = TriangleFacet(1, 2, 3, 4)
        g = TriangleFacet(1, 2, 4, 4)
        assert conflicting(f, g) is False  # +1/+1 at (1,2), rest disjoint

    def test_conflicting_pairs_share_one_or_three_support_coordinates(self):
        # Exhaustive dichotomy check up to n=8.
        for n in range(4, 9):
            facets = enumerate_triangle_facets(n)
            supports = [{idx for idx, _ in f.entries()} for f in facets]
            for a in range(len(facets)):
                for b in range(a + 1, len(facets)):
                    if conflicting(facets[a], facets[b]):
                        assert len(supports[a] & supports[b]) in (1, 3)


class TestRidgeGraphs:
    def test_vertex_counts(self):
        for n in range(4, 8):
            expected = len(enumerate_triangle_facets(n))
            assert build_ridge_graph(n).n == expected
            assert build_complement(n).n == expected

    def test_complement_relation(self):
        g = build_ridge_graph(5)
        gbar = build_complement(5)
        for a in range(g.n):
            for b in range(a + 1, g.n):
                assert g.has_edge(a, b) != gbar.has_edge(a, b)

    def test_complement_degree_formula(self):
        # Conflicting partners: 2 same-support + 4 per outside point.
        for n in (5, 6, 7):
            gbar = build_complement(n)
            assert all(gbar.degree(v) == 4 * n - 10 for v in range(gbar.n))

    def test_n4_is_line_graph_of_k34(self):
        g4 = build_ridge_graph(4)
        assert g4.n == 12
        assert all(g4.degree(v) == 5 for v in range(12))
        assert g4.edge_count() == 30
        assert verify_line_graph_k34(g4) is True

    def test_n4_two_edge_families(self):
        # 18 edges share the apex matching class, 12 share the third point.
        g4 = build_ridge_graph(4)
        same_class = same_third = 0
        classes = {
            frozenset({1, 2}): 0, frozenset({3, 4}): 0,
            frozenset({1, 3}): 1, frozenset({2, 4}): 1,
            frozenset({1, 4}): 2, frozenset({2, 3}): 2,
        }
        for a, b in g4.edges():
            fa, fb = g4.labels[a], g4.labels[b]
            if classes[frozenset(fa.apex)] == classes[frozenset(fb.apex)]:
                same_class += 1
            if fa.k == fb.k:
                same_third += 1
        assert (same_class, same_third) == (18, 12)


class TestHexagons:
    @pytest.mark.parametrize("n,size", [(4, 6), (5, 10), (6, 14)])
    def test_neighborhood_decomposition_all_vertices(self, n, size):
        gbar = build_complement(n)
        for u in range(gbar.n):
            rep = verify_hexagon_neighborhood(gbar, u)
            assert len(rep.hexagons) == n - 3
            assert gbar.degree(u) == size
            u1, u2 = rep.distinguished_edge
            assert (
                gbar.labels[u].support
                == gbar.labels[u1].support
                == gbar.labels[u2].support
            )

    def test_hexagons_are_six_cycles(self):
        gbar = build_complement(5)
        rep = verify_hexagon_neighborhood(gbar, 0)
        for hexagon in rep.hexagons:
            ring = list(hexagon)
            for i, v in enumerate(ring):
                assert gbar.has_edge(v, ring[(i + 1) % 6])

    def test_structure_error_on_wrong_graph(self):
        # A labeled 6-cycle is nothing like a complement ridge graph.
        facets = enumerate_triangle_facets(5)[:6]
        ring = Graph(6, [(i, (i + 1) % 6) for i in range(6)], facets)
        with pytest.raises(StructureError):
            verify_hexagon_neighborhood(ring, 0)


class TestTriangles:
    @pytest.mark.parametrize("n,count", [(5, 10), (6, 20), (7, 35)])
    def test_counts(self, n, count):
        gbar = build_complement(n)
        assert len(find_triangles(gbar)) == count

    def test_graph_detection_matches_support_grouping(self):
        for n in range(5, 9):
            gbar = build_complement(n)
            assert find_triangles(gbar) == group_facets_by_support(gbar)

    def test_common_neighbor_census_n6(self):
        # Triangle edges have n-2 = 4 common neighbors, all others exactly 2.
        gbar = build_complement(6)
        triangle_edges = set()
        for t in find_triangles(gbar):
            a, b, c = t.vertices
            triangle_edges |= {(a, b), (a, c), (b, c)}
        for e in gbar.edges():
            expected = 4 if e in triangle_edges else 2
            assert gbar.common_neighbor_count(*e) == expected

    def test_triangles_partition_vertices(self):
        gbar = build_complement(6)
        seen = [v for t in find_triangles(gbar) for v in t.vertices]
        assert sorted(seen) == list(range(gbar.n))

    def test_n4_falls_back_to_support_grouping(self):
        gbar = build_complement(4)
        triangles = find_triangles(gbar)
        assert len(triangles) == 4
        assert triangles == group_facets_by_support(gbar)


class TestTriangleGraph:
    def test_gamma5_is_petersen_complement(self):
        gamma = build_triangle_graph(build_complement(5))
        assert gamma.n == 10
        assert all(gamma.degree(v) == 6 for v in range(10))
        # Independent construction: complements of the 3-set labels are
        # 2-subsets; adjacency must match 'share exactly one point', which is
        # the complement of the Petersen graph's disjointness rule.
        points = set(range(1, 6))
        duals = [frozenset(points - s) for s in gamma.labels]
        for a in range(10):
            for b in range(a + 1, 10):
                assert gamma.has_edge(a, b) == (len(duals[a] & duals[b]) == 1)

    def test_adjacency_follows_support_overlap(self):
        gamma = build_triangle_graph(build_complement(6))
        for a in range(gamma.n):
            for b in range(a + 1, gamma.n):
                overlap = len(gamma.labels[a] & gamma.labels[b])
                assert gamma.has_edge(a, b) == (overlap == 2)

    def test_cross_edge_counts_in_0_4_up_to_n8(self):
        # build_triangle_graph raises StructureError on any other count.
        for n in range(5, 9):
            build_triangle_graph(build_complement(n))

    def test_johnson_isomorphism(self):
        for n in range(5, 9):
            gamma = build_triangle_graph(build_complement(n))
            assert verify_johnson_isomorphism(gamma, n) is True

    def test_rook_neighborhoods(self):
        for n in (5, 6, 7):
            gamma = build_triangle_graph(build_complement(n))
            assert all(verify_rook_neighborhood(gamma, v) for v in range(gamma.n))

    def test_distance2_property(self):
        for n in (7, 8):
            gamma = build_triangle_graph(build_complement(n))
            assert all(verify_distance2_property(gamma, v) for v in range(gamma.n))

    def test_gamma6_antipodal_pairing(self):
        gamma = build_triangle_graph(build_complement(6))
        for v in range(gamma.n):
            dist = bfs_distances(gamma, v)
            far = [w for w in range(gamma.n) if dist[w] == 3]
            assert len(far) == 1
            assert gamma.labels[far[0]] == frozenset(range(1, 7)) - gamma.labels[v]

    def test_vertex_transitive_under_point_permutations(self):
        for n in (5, 6, 7):
            gamma = build_triangle_graph(build_complement(n))
            index = {s: i for i, s in enumerate(gamma.labels)}
            for sigma in (
                Permutation.from_cycles(n, [(1, 2)]),
                Permutation.from_cycles(n, [tuple(range(1, n + 1))]),
            ):
                perm = [index[frozenset(sigma(p) for p in s)] for s in gamma.labels]
                for a, b in gamma.edges():
                    assert gamma.has_edge(perm[a], perm[b])


class TestIntersectionArray:
    def test_gamma5_diameter_2(self):
        gamma = build_triangle_graph(build_complement(5))
        arr = intersection_array(gamma)
        assert len(arr.bs) == 2 and len(arr.cs) == 2

    def test_gamma6_distance_regular_diameter_3(self):
        gamma = build_triangle_graph(build_complement(6))
        arr = intersection_array(gamma)
        # Derived by hand from the 2-intersection adjacency on 3-subsets:
        # b = (3(n-3), 2(n-4), n-5), c = (1, 4, 9).
        assert arr.bs == (9, 4, 1)
        assert arr.cs == (1, 4, 9)

    def test_gamma7_intersection_array(self):
        gamma = build_triangle_graph(build_complement(7))
        arr = intersection_array(gamma)
        assert arr.bs == (12, 6, 2)
        assert arr.cs == (1, 4, 9)

    def test_non_distance_regular_graph_rejected(self):
        path = Graph(4, [(0, 1), (1, 2), (2, 3)])
        with pytest.raises(StructureError):
            intersection_array(path)


class TestExport:
    def test_graph6_against_networkx(self):
        for builder, n in [(build_ridge_graph, 4), (build_complement, 5)]:
            g = builder(n)
            encoded = to_graph6(g)
            back = nx.from_graph6_bytes(encoded.encode())
            assert set(back.edges()) == set(g.edges())

    def test_graph6_large_vertex_header(self):
        g = Graph(70, [(0, 69)])
        back = nx.from_graph6_bytes(to_graph6(g).encode())
        assert back.number_of_nodes() == 70
        assert set(back.edges()) == {(0, 69)}

    def test_edge_list_lines(self):
        g = Graph(3, [(0, 1), (1, 2)])
        assert edge_list_lines(g) == ["0 1", "1 2"]

    def test_label_lines_for_facets_and_supports(self):
        gbar = build_complement(4)
        lines = label_lines(gbar)
        assert lines[0].split() == ["0", "1", "2", "3", "1", "2"]
        gamma = build_triangle_graph(build_complement(5))
        assert label_lines(gamma)[0].split() == ["0", "1", "2", "3"]
