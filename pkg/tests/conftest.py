"""Shared generators for the randomized suites.

All randomness is seeded `random.Random` instances owned by each test; these
helpers only derive values from the generator they are handed, so every test
stays reproducible in isolation.
"""

from __future__ import annotations

import random
from fractions import Fraction

from conequant import (
    Cone,
    ConequantError,
    DataCloud,
    QuantileLevel,
    validate_cone,
)


def random_cloud(rng: random.Random, n: int, dim: int, span: int = 50) -> DataCloud:
    return DataCloud.from_rows(
        [[rng.randint(-span, span) for _ in range(dim)] for _ in range(n)]
    )


def random_valid_level(rng: random.Random, n: int, max_den: int = 1000) -> QuantileLevel:
    while True:
        den = rng.randint(2, max_den)
        num = rng.randint(1, den - 1)
        level = QuantileLevel(Fraction(num, den), n)
        if level.is_valid:
            return level


def random_cone(rng: random.Random, dim: int, span: int = 4) -> Cone:
    """Rejection-sample a validated (full-dimensional, line-free) cone."""
    while True:
        r = rng.randint(dim, dim + 2)
        rows = [[rng.randint(-span, span) for _ in range(dim)] for _ in range(r)]
        try:
            return validate_cone(rows)
        except ConequantError:
            continue


def random_direction(rng: random.Random, dim: int, span: int = 9):
    while True:
        w = tuple(Fraction(rng.randint(-span, span)) for _ in range(dim))
        if any(w):
            return w


def random_hrep_polyhedron(rng: random.Random, dim: int):
    """Random H-rep: half polytopes around the origin, half arbitrary
    (possibly empty, unbounded, or with lineality)."""
    from conequant import Halfspace, Polyhedron

    halfspaces = []
    if rng.random() < 0.5:
        for _ in range(rng.randint(dim + 1, 2 * dim + 4)):
            n = [rng.randint(-4, 4) for _ in range(dim)]
            if not any(n):
                continue
            halfspaces.append(
                Halfspace(tuple(-v for v in n), Fraction(-rng.randint(1, 6)))
            )
    else:
        for _ in range(rng.randint(1, dim + 3)):
            n = [rng.randint(-3, 3) for _ in range(dim)]
            if not any(n):
                continue
            halfspaces.append(Halfspace(tuple(n), Fraction(rng.randint(-5, 5))))
    if not halfspaces:
        halfspaces.append(Halfspace((1,) + (0,) * (dim - 1), 0))
    return Polyhedron.from_hrep(halfspaces, dim=dim)


def random_vrep_polyhedron(rng: random.Random, dim: int):
    from conequant import Polyhedron

    nv = rng.randint(1, dim + 3)
    verts = [
        tuple(Fraction(rng.randint(-6, 6), rng.randint(1, 3)) for _ in range(dim))
        for _ in range(nv)
    ]
    rays = []
    for _ in range(rng.randint(0, dim)):
        r = tuple(rng.randint(-3, 3) for _ in range(dim))
        if any(r):
            rays.append(r)
    return Polyhedron.from_vrep(verts, rays, dim=dim)
