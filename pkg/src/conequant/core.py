"""Domain types: data clouds, quantile levels, cones and dual-cone bases.

All scalars are exact rationals (``fractions.Fraction``).  The only text
forms accepted are "a/b", an integer "a", or a decimal "a.bc"; decimals are
converted exactly.  Every type here is an immutable value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from . import _linalg
from .errors import (
    ContainsLine,
    DegenerateBasis,
    DimensionMismatch,
    NotFullDimensional,
    NotInterior,
)

Rational = Fraction
Vector = tuple[Fraction, ...]


def parse_rational(text: str) -> Fraction:
    """Parse "a/b", "a" or "a.bc" into an exact rational."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"cannot parse rational from {text!r}") from exc


def format_rational(q: Fraction) -> str:
    """Render a rational as "a" or "a/b" (lowest terms, positive denominator)."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def as_vector(values) -> Vector:
    return tuple(Fraction(v) for v in values)


@dataclass(frozen=True)
class DataCloud:
    """A finite collection of N points in d dimensions, duplicates allowed."""

    points: tuple[Vector, ...]

    def __post_init__(self) -> None:
        if not self.points:
            raise DimensionMismatch("a data cloud needs at least one point")
        d = len(self.points[0])
        if d < 1:
            raise DimensionMismatch("points must have at least one coordinate")
        if any(len(p) != d for p in self.points):
            raise DimensionMismatch("all points must share the same dimension")

    @classmethod
    def from_rows(cls, rows) -> "DataCloud":
        return cls(tuple(as_vector(row) for row in rows))

    @property
    def n(self) -> int:
        return len(self.points)

    @property
    def dim(self) -> int:
        return len(self.points[0])

    @cached_property
    def int_form(self) -> tuple[list[tuple[int, ...]], list[int]]:
        """Points as integer rows over per-point positive denominators."""
        nums: list[tuple[int, ...]] = []
        dens: list[int] = []
        for p in self.points:
            den = 1
            for c in p:
                den = den * c.denominator // math.gcd(den, c.denominator)
            nums.append(tuple(int(c * den) for c in p))
            dens.append(den)
        return nums, dens


@dataclass(frozen=True)
class QuantileLevel:
    """A level p in (0,1) tied to the sample size it will be used with."""

    p: Fraction
    n: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "p", Fraction(self.p))
        if not 0 < self.p < 1:
            raise ValueError(f"p must lie strictly between 0 and 1, got {self.p}")
        if self.n < 1:
            raise ValueError("sample count must be at least 1")

    @property
    def ceil_np(self) -> int:
        # standard ceiling: min{z in Z : z >= N p}
        return math.ceil(self.n * self.p)

    @property
    def is_valid(self) -> bool:
        """True when N*p is not an integer (unique-minimizer hypothesis)."""
        return (self.n * self.p).denominator != 1

    def require_valid(self) -> None:
        if not self.is_valid:
            from .errors import IntegralNp

            raise IntegralNp(
                f"N*p = {format_rational(self.n * self.p)} is an integer; "
                "the unique-minimizer hypothesis needs N*p to be non-integral"
            )


@dataclass(frozen=True)
class Cone:
    """Polyhedral convex cone generated by the rows of a matrix.

    Construct through :func:`validate_cone`, which certifies full
    dimensionality and freeness of lines.
    """

    generators: tuple[Vector, ...]

    @property
    def r(self) -> int:
        return len(self.generators)

    @property
    def dim(self) -> int:
        return len(self.generators[0])

    def dual_contains(self, w: Vector) -> bool:
        """Whether w is in the dual cone, i.e. g.w >= 0 for every generator."""
        return all(_linalg.dot(g, w) >= 0 for g in self.generators)


def validate_cone(generators) -> Cone:
    """Check that the generator rows span the space and allow no line.

    Raises NotFullDimensional when rank < d and ContainsLine when some nonzero
    generator's negation is itself a nonnegative combination of the rows
    (which is equivalent to the cone containing a line).
    """
    rows = tuple(as_vector(g) for g in generators)
    if not rows:
        raise DimensionMismatch("a cone needs at least one generator row")
    d = len(rows[0])
    if d < 1 or any(len(g) != d for g in rows):
        raise DimensionMismatch("generator rows must share one dimension >= 1")
    if _linalg.rank(rows) < d:
        raise NotFullDimensional(
            f"generators span a {_linalg.rank(rows)}-dimensional subspace of "
            f"R^{d}; the cone has empty interior"
        )
    from .lp import LinearProgram, OPTIMAL, simplex_solve

    for g in rows:
        if all(x == 0 for x in g):
            continue
        # feasibility of { y >= 0 : sum_i y_i * row_i = -g }
        lp = LinearProgram(
            sense="min",
            objective=tuple(Fraction(0) for _ in rows),
            rows=tuple(tuple(row[j] for row in rows) for j in range(d)),
            relations=("=",) * d,
            rhs=tuple(-x for x in g),
            bounds=tuple((Fraction(0), None) for _ in rows),
        )
        if simplex_solve(lp).status == OPTIMAL:
            raise ContainsLine(
                f"the cone is not free of lines: -({', '.join(map(format_rational, g))}) "
                "is also in the cone"
            )
    return Cone(rows)


@dataclass(frozen=True)
class DualConeBasis:
    """A bounded slice {w : Yw >= 0, c.w = 1} of the dual cone.

    ``perm`` maps solver coordinates to the user's: solver coordinate i is
    user coordinate perm[i].  It is the identity unless the interior point had
    a zero last component, in which case one transposition makes the solver
    frame's last c-component nonzero.
    """

    cone: Cone
    c: Vector
    perm: tuple[int, ...]

    @property
    def dim(self) -> int:
        return self.cone.dim

    @property
    def is_permuted(self) -> bool:
        return self.perm != tuple(range(self.dim))

    def permute(self, v: Vector) -> Vector:
        """User frame -> solver frame."""
        return tuple(v[i] for i in self.perm)

    def unpermute(self, v: Vector) -> Vector:
        """Solver frame -> user frame."""
        out = [Fraction(0)] * self.dim
        for k, i in enumerate(self.perm):
            out[i] = v[k]
        return tuple(out)

    @cached_property
    def solver_c(self) -> Vector:
        return self.permute(self.c)

    @cached_property
    def solver_generators(self) -> tuple[Vector, ...]:
        return tuple(self.permute(g) for g in self.cone.generators)

    @property
    def sigma(self) -> int:
        """Sign of the solver frame's last c-component."""
        return 1 if self.solver_c[-1] > 0 else -1


def make_dual_basis(cone: Cone, c=None) -> DualConeBasis:
    """Build the dual-cone basis for a validated cone.

    When no interior point is supplied the sum of the generator rows is used;
    it is interior for every full-dimensional cone.  A supplied point is
    certified interior by minimizing c.w over a compact base of the dual cone
    and insisting on a strictly positive optimum.
    """
    d = cone.dim
    if c is None:
        c_vec = tuple(sum((g[j] for g in cone.generators), Fraction(0)) for j in range(d))
    else:
        c_vec = as_vector(c)
        if len(c_vec) != d:
            raise DimensionMismatch(f"interior point has dimension {len(c_vec)}, cone has {d}")
    _certify_interior(cone, c_vec)
    last_nonzero = max((j for j in range(d) if c_vec[j] != 0), default=None)
    if last_nonzero is None:
        raise DegenerateBasis("interior point is the zero vector")
    perm = list(range(d))
    if last_nonzero != d - 1:
        perm[last_nonzero], perm[d - 1] = perm[d - 1], perm[last_nonzero]
    return DualConeBasis(cone=cone, c=c_vec, perm=tuple(perm))


def _certify_interior(cone: Cone, c: Vector) -> None:
    from .lp import LinearProgram, OPTIMAL, simplex_solve

    d = cone.dim
    # base of the dual cone: Yw >= 0 with sum of Yw equal to 1 (compact since
    # the cone is full-dimensional, so Yw = 0 forces w = 0)
    col_sums = tuple(sum((g[j] for g in cone.generators), Fraction(0)) for j in range(d))
    lp = LinearProgram(
        sense="min",
        objective=c,
        rows=tuple(cone.generators) + (col_sums,),
        relations=(">=",) * cone.r + ("=",),
        rhs=tuple(Fraction(0) for _ in range(cone.r)) + (Fraction(1),),
        bounds=tuple((None, None) for _ in range(d)),
    )
    outcome = simplex_solve(lp)
    if outcome.status != OPTIMAL or outcome.value <= 0:
        raise NotInterior(
            f"({', '.join(map(format_rational, c))}) is not an interior point of the cone"
        )


def project_data(cloud: DataCloud, w) -> tuple[Fraction, ...]:
    """The scalar data set of inner products w.x for every point x."""
    w_vec = as_vector(w)
    if len(w_vec) != cloud.dim:
        raise DimensionMismatch(
            f"direction has dimension {len(w_vec)}, data has {cloud.dim}"
        )
    return tuple(_linalg.dot(w_vec, p) for p in cloud.points)
