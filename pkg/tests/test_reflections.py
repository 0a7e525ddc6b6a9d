"""Tests for the exact reflection-group reconstruction on the 7 rays."""

from fractions import Fraction

import pytest

from conesym.cones import cut_rank
from conesym.core import enumerate_cuts
from conesym.reflections import (
    GENERATOR_PAIRS,
    DegenerateRaysError,
    RayActionError,
    attempt_ray_swap,
    build_reflection_group,
    kernel_vector,
    mat_mul,
    mat_vec,
    ray_table,
    reflection,
    symn_orbits,
)

RAYS = ray_table()


class TestRayTable:
    def test_fixed_rows(self):
        assert RAYS[0] == (0, 0, 1, 0, 1, 1)  # r1
        assert RAYS[3] == (1, 0, 1, 1, 0, 1)  # r4

    def test_equals_cut_enumeration_as_set(self):
        assert {c.bits for c in enumerate_cuts(4)} == set(RAYS)

    def test_rays_span_the_space(self):
        assert cut_rank(enumerate_cuts(4)) == 6


class TestOrbits:
    def test_partition(self):
        four, three = symn_orbits()
        assert four == (1, 3, 6, 7)
        assert three == (2, 4, 5)

    def test_orbit_membership(self):
        four, three = symn_orbits()
        assert 7 in four and 2 in three

    def test_orbit_sizes_match_support_weight(self):
        four, three = symn_orbits()
        assert all(sum(RAYS[i - 1]) == 3 for i in four)
        assert all(sum(RAYS[i - 1]) == 4 for i in three)


class TestKernelVector:
    def test_reference_kernel(self):
        others = [RAYS[k] for k in (0, 1, 2, 5, 6)]  # all but r4, r5
        vec = kernel_vector(others)
        assert vec in ((0, -1, 1, 1, -1, 0), (0, 1, -1, -1, 1, 0))

    def test_kernel_is_orthogonal_to_inputs(self):
        others = [RAYS[k] for k in (1, 3, 4, 5, 6)]  # omit r1, r3
        vec = kernel_vector(others)
        assert any(vec)
        for r in others:
            assert sum(a * b for a, b in zip(vec, r)) == 0

    def test_dependent_rays_rejected(self):
        rows = [RAYS[0], RAYS[1], RAYS[2], RAYS[3]]
        doubled_first = tuple(2 * v for v in RAYS[0])
        with pytest.raises(DegenerateRaysError):
            kernel_vector(rows + [doubled_first])

    def test_normalization(self):
        others = [RAYS[k] for k in (0, 1, 2, 5, 6)]
        vec = kernel_vector(others)
        lead = next(v for v in vec if v)
        assert lead > 0
        assert all(isinstance(v, int) for v in vec)


class TestReflection:
    def test_negates_alpha(self):
        alpha = (0, -1, 1, 1, -1, 0)
        m = reflection(alpha)
        assert mat_vec(m, alpha) == tuple(Fraction(-a) for a in alpha)

    def test_fixes_orthogonal_vectors(self):
        alpha = (0, -1, 1, 1, -1, 0)
        m = reflection(alpha)
        v = (1, 1, 1, 1, 1, 1)  # orthogonal: entries of alpha sum to 0
        assert mat_vec(m, v) == tuple(map(Fraction, v))

    def test_zero_alpha_rejected(self):
        with pytest.raises(ValueError):
            reflection((0, 0, 0, 0, 0, 0))

    def test_reference_swap_of_r4_r5(self):
        alpha, m, perm = attempt_ray_swap(4, 5)
        assert mat_vec(m, RAYS[3]) == tuple(map(Fraction, RAYS[4]))
        assert mat_vec(m, RAYS[4]) == tuple(map(Fraction, RAYS[3]))
        for k in (0, 1, 2, 5, 6):
            assert mat_vec(m, RAYS[k]) == tuple(map(Fraction, RAYS[k]))
        assert perm == (0, 1, 2, 4, 3, 5, 6)

    def test_all_generator_pairs_swap(self):
        for i, j in GENERATOR_PAIRS:
            _, _, perm = attempt_ray_swap(i, j)
            expected = list(range(7))
            expected[i - 1], expected[j - 1] = j - 1, i - 1
            assert perm == tuple(expected)

    def test_cross_orbit_pair_rejected(self):
        _, _, perm = attempt_ray_swap(1, 2)
        assert perm is None


class TestReflectionGroup:
    def test_certificate(self):
        rep = build_reflection_group()
        assert rep.passed
        assert rep.matrix_order == 144
        assert rep.perm_order == 144
        assert rep.faithful
        assert (rep.orbit4_order, rep.orbit3_order) == (24, 6)

    def test_generators_are_involutions(self):
        rep = build_reflection_group()
        for alpha in rep.alphas:
            m = reflection(alpha)
            prod = mat_mul(m, m)
            for r in range(6):
                for c in range(6):
                    assert prod[r][c] == (1 if r == c else 0)

    def test_matches_graph_automorphism_count(self):
        from conesym.autgrp import automorphism_group
        from conesym.ridge import build_ridge_graph

        assert automorphism_group(build_ridge_graph(4)).order == build_reflection_group().matrix_order

    def test_tiny_cap_detected(self):
        with pytest.raises(RayActionError):
            build_reflection_group(closure_cap=10)
