from __future__ import annotations

import random
from fractions import Fraction

import pytest

from conequant import (
    DimensionMismatch,
    Halfspace,
    Polyhedron,
    hrep_to_vrep,
    poly_contains,
    poly_equal,
    remove_redundant,
    vrep_to_hrep,
)
from conequant.lp import INFEASIBLE, LinearProgram, simplex_solve

F = Fraction


def unit_square():
    return Polyhedron.from_hrep(
        [
            Halfspace((1, 0), 0),
            Halfspace((-1, 0), -1),
            Halfspace((0, 1), 0),
            Halfspace((0, -1), -1),
        ],
        dim=2,
    )


class TestHalfspace:
    def test_canonical_scaling(self):
        h = Halfspace((F(-2), F(4)), F(6)).canonical()
        assert h.normal == (F(-1), F(2))
        assert h.offset == F(3)

    def test_zero_normal_rejected(self):
        with pytest.raises(ValueError):
            Halfspace((0, 0), 1)

    def test_membership(self):
        h = Halfspace((1, 1), 2)
        assert h.holds((1, 1))
        assert not h.holds((0, 0))


class TestHrepToVrep:
    def test_square(self):
        p = hrep_to_vrep(unit_square())
        assert p.vertices == ((F(0), F(0)), (F(0), F(1)), (F(1), F(0)), (F(1), F(1)))
        assert p.rays == ()
        assert p.is_bounded

    def test_orthant(self):
        p = hrep_to_vrep(
            Polyhedron.from_hrep([Halfspace((1, 0), 0), Halfspace((0, 1), 0)], dim=2)
        )
        assert p.vertices == ((F(0), F(0)),)
        assert p.rays == ((F(0), F(1)), (F(1), F(0)))

    def test_empty(self):
        p = hrep_to_vrep(
            Polyhedron.from_hrep([Halfspace((1,), 1), Halfspace((-1,), 0)], dim=1)
        )
        assert p.is_empty
        assert p.vertices == () and p.rays == ()

    def test_whole_space(self):
        p = hrep_to_vrep(Polyhedron.from_hrep([], dim=2))
        assert len(p.vertices) == 1
        rays = set(p.rays)
        assert all(tuple(-c for c in r) in rays for r in rays)  # line pairs

    def test_halfplane_has_line(self):
        p = hrep_to_vrep(Polyhedron.from_hrep([Halfspace((1, 0), 0)], dim=2))
        assert (F(0), F(1)) in p.rays and (F(0), F(-1)) in p.rays
        assert (F(1), F(0)) in p.rays


class TestVrepToHrep:
    def test_triangle(self):
        p = vrep_to_hrep(Polyhedron.from_vrep([(0, 0), (1, 0), (0, 1)], dim=2))
        assert len(p.halfspaces) == 3
        assert p.equations == ()

    def test_single_point_becomes_equations(self):
        p = vrep_to_hrep(Polyhedron.from_vrep([(1, 1)], dim=2))
        assert p.halfspaces == ()
        assert len(p.equations) == 2
        assert all(e.holds((1, 1)) for e in p.equations)
        assert not all(e.holds((1, 2)) for e in p.equations)

    def test_ray_in_one_dimension(self):
        p = vrep_to_hrep(Polyhedron.from_vrep([(0,)], rays=[(1,)], dim=1))
        assert [(h.normal, h.offset) for h in p.halfspaces] == [((F(1),), F(0))]

    def test_rays_without_vertex_rejected(self):
        with pytest.raises(ValueError):
            Polyhedron.from_vrep([], rays=[(1, 0)], dim=2)


class TestRemoveRedundant:
    def test_drops_implied(self):
        p = Polyhedron.from_hrep(
            [Halfspace((1, 0), 0), Halfspace((1, 0), -1), Halfspace((0, 1), 0)], dim=2
        )
        out = remove_redundant(p)
        assert [(h.normal, h.offset) for h in out.halfspaces] == [
            ((F(0), F(1)), F(0)),
            ((F(1), F(0)), F(0)),
        ]

    def test_irredundant_unchanged(self):
        out = remove_redundant(unit_square())
        assert len(out.halfspaces) == 4
        assert poly_equal(out, unit_square())

    def test_opposite_pair_preserved(self):
        p = Polyhedron.from_hrep(
            [Halfspace((1, 0), 0), Halfspace((-1, 0), 0), Halfspace((0, 1), 0)], dim=2
        )
        out = remove_redundant(p)
        keys = {h.key() for h in out.halfspaces}
        assert Halfspace((1, 0), 0).key() in keys
        assert Halfspace((-1, 0), 0).key() in keys
        assert poly_equal(out, p)

    def test_idempotent(self):
        rng = random.Random(41)
        for _ in range(25):
            p = _random_hrep(rng, dim=rng.randint(1, 3))
            once = remove_redundant(p)
            twice = remove_redundant(once)
            assert [h.key() for h in twice.halfspaces] == [
                h.key() for h in once.halfspaces
            ]
            assert poly_equal(once, p) or (once.is_empty and p.is_empty)

    def test_duplicates_collapse(self):
        p = Polyhedron.from_hrep(
            [Halfspace((2, 0), 0), Halfspace((1, 0), 0), Halfspace((0, 1), 0)], dim=2
        )
        out = remove_redundant(p)
        assert len(out.halfspaces) == 2


class TestPolyEqual:
    def test_redundant_extra_halfspace(self):
        extra = Polyhedron.from_hrep(
            list(unit_square().halfspaces) + [Halfspace((1, 1), -3)], dim=2
        )
        assert poly_equal(unit_square(), extra)

    def test_different_sets(self):
        tri = Polyhedron.from_vrep([(0, 0), (1, 0), (0, 1)], dim=2)
        assert not poly_equal(unit_square(), tri)

    def test_empty_matches_empty(self):
        a = Polyhedron.from_hrep([Halfspace((1, 0), 2), Halfspace((-1, 0), 0)], dim=2)
        b = Polyhedron.empty(2)
        assert poly_equal(a, b)

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            poly_equal(unit_square(), Polyhedron.empty(3))

    def test_containment(self):
        tri = Polyhedron.from_vrep([(0, 0), (1, 0), (0, 1)], dim=2)
        assert poly_contains(unit_square(), tri)
        assert not poly_contains(tri, unit_square())


from conftest import random_hrep_polyhedron as _random_hrep
from conftest import random_vrep_polyhedron as _random_vrep


class TestRoundTrips:
    def test_hrep_vrep_round_trip(self):
        rng = random.Random(42)
        for _ in range(60):
            p = _random_hrep(rng, dim=rng.randint(1, 4))
            p = hrep_to_vrep(p)
            if p.is_empty:
                assert poly_equal(p, Polyhedron.empty(p.dim))
                continue
            back = Polyhedron.from_vrep(p.vertices, p.rays, dim=p.dim)
            back = vrep_to_hrep(back)
            assert poly_equal(p, back)

    def test_vrep_hrep_round_trip(self):
        rng = random.Random(43)
        for _ in range(60):
            p = _random_vrep(rng, dim=rng.randint(1, 4))
            p = vrep_to_hrep(p)
            back = Polyhedron.from_hrep(p.halfspaces, p.equations, dim=p.dim)
            back = hrep_to_vrep(back)
            assert poly_equal(p, back)

    def test_vertices_satisfy_constraints_tightly(self):
        from conequant._linalg import rank

        rng = random.Random(44)
        for _ in range(40):
            p = hrep_to_vrep(_random_hrep(rng, dim=rng.randint(2, 4)))
            if p.is_empty:
                continue
            lines = {tuple(-c for c in r) for r in p.rays} & set(p.rays)
            for v in p.vertices:
                assert all(h.holds(v) for h in p.halfspaces)
                # a minimal face representative is pinned by its tight rows:
                # together with the lineality directions they span the space
                tight = [
                    h.normal
                    for h in p.halfspaces
                    if sum(a * b for a, b in zip(h.normal, v)) == h.offset
                ]
                expected_rank = p.dim - len(lines) // 2
                assert rank(tight) >= expected_rank
            for r in p.rays:
                assert all(h.holds_ray(r) for h in p.halfspaces)

    def test_remove_redundant_order_independent(self):
        rng = random.Random(46)
        for _ in range(15):
            p = _random_hrep(rng, dim=rng.randint(1, 3))
            base = remove_redundant(p)
            shuffled = list(p.halfspaces)
            rng.shuffle(shuffled)
            again = remove_redundant(
                Polyhedron.from_hrep(shuffled, p.equations, dim=p.dim)
            )
            assert [h.key() for h in again.halfspaces] == [
                h.key() for h in base.halfspaces
            ]

    def test_empty_flag_backed_by_infeasibility_certificate(self):
        rng = random.Random(45)
        empties = 0
        for _ in range(120):
            p = hrep_to_vrep(_random_hrep(rng, dim=rng.randint(1, 3)))
            if not p.is_empty:
                continue
            empties += 1
            lp = LinearProgram(
                "min",
                tuple(F(0) for _ in range(p.dim)),
                tuple(h.normal for h in p.halfspaces),
                (">=",) * len(p.halfspaces),
                tuple(h.offset for h in p.halfspaces),
                tuple((None, None) for _ in range(p.dim)),
            )
            out = simplex_solve(lp)
            assert out.status == INFEASIBLE
            # verify the Farkas certificate explicitly
            y = out.y
            assert all(yi >= 0 for yi in y)
            for j in range(p.dim):
                assert sum(y[i] * h.normal[j] for i, h in enumerate(p.halfspaces)) == 0
            assert sum(y[i] * h.offset for i, h in enumerate(p.halfspaces)) > 0
        assert empties >= 5
