from __future__ import annotations

import random
from fractions import Fraction

import pytest

from conequant import (
    DataCloud,
    DimensionNot2,
    Halfspace,
    Polyhedron,
    QuantileLevel,
    critical_directions,
    membership_sample,
    oracle_region_2d,
    poly_equal,
    quantile_direct,
    quantile_region,
    ScalarSample,
    tukey_region,
    validate_cone,
)
from conftest import random_cloud, random_cone, random_valid_level

F = Fraction

SQUARE = DataCloud.from_rows([[0, 0], [1, 0], [0, 1], [1, 1]])
TRIANGLE = DataCloud.from_rows([[0, 0], [1, 0], [0, 1]])


def orthant2():
    return validate_cone([[1, 0], [0, 1]])


class TestOracleFixtures:
    def test_square_tukey_is_center(self):
        reg = oracle_region_2d(SQUARE, QuantileLevel(F(3, 10), 4), None)
        assert reg.region.vertices == ((F(1, 2), F(1, 2)),)
        # exhaustive membership over a rational grid confirms the point
        level = QuantileLevel(F(3, 10), 4)
        for i in range(0, 9):
            for j in range(0, 9):
                z = (F(i, 8), F(j, 8))
                expected = z == (F(1, 2), F(1, 2))
                assert reg.region.contains(z) == expected

    def test_triangle_tukey_empty(self):
        reg = oracle_region_2d(TRIANGLE, QuantileLevel(F(2, 5), 3), None)
        assert reg.region.is_empty
        level = QuantileLevel(F(2, 5), 3)
        for i in range(0, 7):
            for j in range(0, 7):
                assert not reg.region.contains((F(i, 6), F(j, 6)))

    def test_two_point_cone(self):
        cloud = DataCloud.from_rows([[0, 0], [1, 1]])
        reg = oracle_region_2d(cloud, QuantileLevel(F(3, 4), 2), orthant2())
        expected = Polyhedron.from_vrep([(1, 1)], rays=[(1, 0), (0, 1)], dim=2)
        assert poly_equal(reg.region, expected)

    def test_dimension_guard(self):
        cloud = DataCloud.from_rows([[1, 2, 3]])
        with pytest.raises(DimensionNot2):
            oracle_region_2d(cloud, QuantileLevel(F(1, 3), 1), None)


class TestCriticalDirections:
    def test_pair_normals_present(self):
        dirs = critical_directions(DataCloud.from_rows([[0, 0], [1, 0]]), None).directions
        assert (0, 1) in dirs and (0, -1) in dirs  # normals of the difference
        assert (1, 0) in dirs and (-1, 0) in dirs  # axes always included

    def test_cone_case_stays_in_dual(self):
        cone = orthant2()
        dirs = critical_directions(SQUARE, cone).directions
        for w in dirs:
            assert w[0] >= 0 and w[1] >= 0
        assert (1, 0) in dirs and (0, 1) in dirs  # extreme rays of the dual

    def test_extra_directions_never_shrink(self):
        # completeness: any further direction's halfspace already contains
        # the oracle region
        rng = random.Random(71)
        for _ in range(10):
            cloud = random_cloud(rng, rng.randint(1, 9), 2, span=9)
            level = random_valid_level(rng, cloud.n, max_den=25)
            reg = oracle_region_2d(cloud, level, None)
            for _ in range(50):
                w = (rng.randint(-9, 9), rng.randint(-9, 9))
                if w == (0, 0):
                    continue
                sample = ScalarSample(
                    tuple(w[0] * p[0] + w[1] * p[1] for p in cloud.points)
                )
                q = quantile_direct(sample, level)
                cut = Polyhedron.from_hrep(
                    list(reg.region.halfspaces) + [Halfspace((F(w[0]), F(w[1])), q)],
                    dim=2,
                )
                assert poly_equal(cut, reg.region)


class TestOracleAgainstSolver:
    def test_random_tukey_equivalence(self):
        rng = random.Random(72)
        for _ in range(15):
            cloud = random_cloud(rng, rng.randint(1, 12), 2, span=12)
            level = random_valid_level(rng, cloud.n, max_den=40)
            solved = tukey_region(cloud, level)
            reference = oracle_region_2d(cloud, level, None)
            assert poly_equal(solved.region, reference.region)

    def test_random_cone_equivalence(self):
        rng = random.Random(73)
        for _ in range(15):
            cloud = random_cloud(rng, rng.randint(1, 12), 2, span=12)
            level = random_valid_level(rng, cloud.n, max_den=40)
            cone = random_cone(rng, 2)
            solved = quantile_region(cloud, level, cone)
            reference = oracle_region_2d(cloud, level, cone)
            assert poly_equal(solved.region, reference.region)


class TestMembershipSample:
    def test_fixture_votes(self):
        level = QuantileLevel(F(3, 10), 4)
        assert membership_sample(SQUARE, level, None, (F(1, 2), F(1, 2)), 1000, 7)
        assert not membership_sample(SQUARE, level, None, (0, 0), 1000, 7)

    def test_own_data_point_with_threshold_one(self):
        rng = random.Random(74)
        cloud = random_cloud(rng, 6, 3, span=9)
        level = QuantileLevel(F(1, 12), 6)
        assert level.ceil_np == 1
        assert membership_sample(cloud, level, None, cloud.points[0], 500, 3)

    def test_never_refutes_true_members(self):
        rng = random.Random(75)
        for _ in range(8):
            cloud = random_cloud(rng, rng.randint(1, 9), 2, span=9)
            level = random_valid_level(rng, cloud.n, max_den=25)
            reg = tukey_region(cloud, level)
            for v in reg.region.vertices:
                assert membership_sample(cloud, level, None, v, 400, seed=11)

    def test_deterministic_given_seed(self):
        level = QuantileLevel(F(3, 10), 4)
        a = membership_sample(SQUARE, level, None, (F(1, 4), F(1, 4)), 200, 5)
        b = membership_sample(SQUARE, level, None, (F(1, 4), F(1, 4)), 200, 5)
        assert a == b
