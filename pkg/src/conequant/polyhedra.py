"""Exact polyhedral calculus: H- and V-representations, double description,
redundancy removal and set equality.

Conversions run the double description method on the homogenization of the
polyhedron: lineality is split off first by exact nullspace computation, a
pointed cone engine (integer arithmetic, primitive ray vectors, adjacency by
combinatorial prefilter plus the algebraic rank test) enumerates extreme
rays, and generators with positive homogenizing coordinate become vertices.
A lineality direction appears in the V-representation as a pair of opposite
rays; the "vertices" of a non-pointed polyhedron are canonical
representatives of its minimal faces.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import _linalg
from .core import Vector, as_vector
from .errors import DimensionMismatch

IntVec = tuple[int, ...]


@dataclass(frozen=True)
class Halfspace:
    """The set {z : normal.z >= offset}; the normal must be nonzero."""

    normal: Vector
    offset: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "normal", as_vector(self.normal))
        object.__setattr__(self, "offset", Fraction(self.offset))
        if all(c == 0 for c in self.normal):
            raise ValueError("halfspace normal must be nonzero")

    def canonical(self) -> "Halfspace":
        """Rescale so the first nonzero normal coordinate has absolute value 1."""
        scale = abs(next(c for c in self.normal if c != 0))
        if scale == 1:
            return self
        return Halfspace(tuple(c / scale for c in self.normal), self.offset / scale)

    def key(self) -> tuple:
        h = self.canonical()
        return (*h.normal, h.offset)

    def holds(self, z: Vector) -> bool:
        return _linalg.dot(self.normal, z) >= self.offset

    def holds_ray(self, r: Vector) -> bool:
        return _linalg.dot(self.normal, r) >= 0


@dataclass(frozen=True)
class Equation:
    """The hyperplane {z : normal.z = offset}."""

    normal: Vector
    offset: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "normal", as_vector(self.normal))
        object.__setattr__(self, "offset", Fraction(self.offset))
        if all(c == 0 for c in self.normal):
            raise ValueError("equation normal must be nonzero")

    def canonical(self) -> "Equation":
        scale = next(c for c in self.normal if c != 0)
        if scale == 1:
            return self
        return Equation(tuple(c / scale for c in self.normal), self.offset / scale)

    def key(self) -> tuple:
        e = self.canonical()
        return (*e.normal, e.offset)

    def holds(self, z: Vector) -> bool:
        return _linalg.dot(self.normal, z) == self.offset

    def holds_ray(self, r: Vector) -> bool:
        return _linalg.dot(self.normal, r) == 0


class _RankTracker:
    """Incremental row-independence test via a running elimination basis."""

    def __init__(self, width: int) -> None:
        self.width = width
        self.rows: list[list[Fraction]] = []
        self.pivots: list[int] = []

    def try_add(self, row) -> bool:
        vec = [Fraction(x) for x in row]
        for r, p in zip(self.rows, self.pivots):
            if vec[p] != 0:
                f = vec[p]
                vec = [a - f * b for a, b in zip(vec, r)]
        pivot = next((j for j in range(self.width) if vec[j] != 0), None)
        if pivot is None:
            return False
        pv = vec[pivot]
        vec = [a / pv for a in vec]
        self.rows.append(vec)
        self.pivots.append(pivot)
        return True


class _PointedCone:
    """Double description for a pointed cone {x : row.x >= 0} under
    incremental row insertion.  Rows and rays are primitive integer vectors.
    """

    def __init__(self, dim: int) -> None:
        self.dim = dim
        self.processed: list[IntVec] = []
        self.rays: list[IntVec] = []
        self.zerosets: list[int] = []
        self._pending: list[IntVec] = []
        self._tracker = _RankTracker(dim)
        self._initialized = False

    def add_rows(self, rows) -> None:
        for row in rows:
            self.add_row(tuple(row))

    def add_row(self, row: IntVec) -> None:
        if len(row) != self.dim:
            raise DimensionMismatch("constraint row has the wrong width")
        if all(v == 0 for v in row):
            return
        if not self._initialized:
            self._pending.append(row)
            if self._tracker.try_add(row):
                if len(self._tracker.pivots) == self.dim:
                    self._bootstrap()
            return
        self._insert(row)

    def _bootstrap(self) -> None:
        # the independent rows collected so far define a simplicial cone whose
        # extreme rays are the columns of the inverse matrix
        chosen: list[IntVec] = []
        tracker = _RankTracker(self.dim)
        rest: list[IntVec] = []
        for row in self._pending:
            if len(chosen) < self.dim and tracker.try_add(row):
                chosen.append(row)
            else:
                rest.append(row)
        inv = _linalg.invert([list(map(Fraction, r)) for r in chosen])
        cols = [
            tuple(inv[i][k] for i in range(self.dim)) for k in range(self.dim)
        ]
        self.processed = list(chosen)
        self.rays = [_linalg.primitive(c) for c in cols]
        full = (1 << self.dim) - 1
        self.zerosets = [full & ~(1 << i) for i in range(self.dim)]
        self._initialized = True
        self._pending = []
        for row in rest:
            self._insert(row)

    def finish(self) -> None:
        if not self._initialized:
            raise ValueError("cone is not pointed: constraint rows are rank deficient")

    @property
    def ready(self) -> bool:
        return self._initialized

    def _insert(self, row: IntVec) -> None:
        vals = [sum(a * b for a, b in zip(row, ray)) for ray in self.rays]
        neg = [i for i, v in enumerate(vals) if v < 0]
        bit = 1 << len(self.processed)
        self.processed.append(row)
        if not neg:
            for i, v in enumerate(vals):
                if v == 0:
                    self.zerosets[i] |= bit
            return
        pos = [i for i, v in enumerate(vals) if v > 0]
        zero = [i for i, v in enumerate(vals) if v == 0]
        newborn: list[IntVec] = []
        for ip in pos:
            for im in neg:
                if not self._adjacent(ip, im):
                    continue
                tp, tm = vals[ip], vals[im]
                combo = tuple(
                    tp * b - tm * a for a, b in zip(self.rays[ip], self.rays[im])
                )
                newborn.append(_linalg.primitive(combo))
        keep_rays = [self.rays[i] for i in pos + zero]
        keep_zs = [
            self.zerosets[i] | (bit if i in zero else 0) for i in pos + zero
        ]
        for ray in newborn:
            keep_rays.append(ray)
            zs = 0
            for k, prow in enumerate(self.processed):
                if sum(a * b for a, b in zip(prow, ray)) == 0:
                    zs |= 1 << k
            keep_zs.append(zs)
        self.rays = keep_rays
        self.zerosets = keep_zs

    def _adjacent(self, i: int, j: int) -> bool:
        mask = self.zerosets[i] & self.zerosets[j]
        for k, zs in enumerate(self.zerosets):
            if k != i and k != j and zs & mask == mask:
                return False
        tight = [
            self.processed[k]
            for k in range(len(self.processed))
            if mask >> k & 1
        ]
        return _linalg.int_rank(tight) == self.dim - 2


def _dd_cone(rows: list[IntVec], dim: int) -> tuple[list[IntVec], list[IntVec]]:
    """Lines and extreme rays of the general cone {x : row.x >= 0}."""
    live = [r for r in rows if any(r)]
    lines = [_linalg.primitive(v) for v in _linalg.nullspace(live, dim)]
    if not live:
        return lines, []
    red, _ = _linalg.rref([list(map(Fraction, r)) for r in live])
    basis = [tuple(r) for r in red]
    s = len(basis)
    reduced_rows = [
        _linalg.primitive(tuple(_linalg.dot(r, b) for b in basis)) for r in live
    ]
    engine = _PointedCone(s)
    engine.add_rows(reduced_rows)
    engine.finish()
    rays = []
    for z in engine.rays:
        vec = tuple(
            sum((Fraction(zk) * b[j] for zk, b in zip(z, basis)), Fraction(0))
            for j in range(dim)
        )
        rays.append(_linalg.primitive(vec))
    return lines, rays


class Polyhedron:
    """A convex polyhedron with lazily paired exact representations.

    The set value is immutable; representation conversions are cached on the
    instance.  Halfspaces are kept exactly as supplied (callers rely on the
    echo); canonical forms are used for comparisons and ordering only.
    """

    __slots__ = ("_dim", "_halfspaces", "_equations", "_vertices", "_rays", "_empty")

    def __init__(self, dim, halfspaces, equations, vertices, rays, empty) -> None:
        self._dim = dim
        self._halfspaces = halfspaces
        self._equations = equations
        self._vertices = vertices
        self._rays = rays
        self._empty = empty

    @classmethod
    def from_hrep(cls, halfspaces, equations=(), *, dim: int) -> "Polyhedron":
        hs = tuple(halfspaces)
        eqs = tuple(equations)
        for h in hs:
            if len(h.normal) != dim:
                raise DimensionMismatch("halfspace dimension mismatch")
        for e in eqs:
            if len(e.normal) != dim:
                raise DimensionMismatch("equation dimension mismatch")
        return cls(dim, hs, eqs, None, None, None)

    @classmethod
    def from_vrep(cls, vertices, rays=(), *, dim: int) -> "Polyhedron":
        vs = tuple(as_vector(v) for v in vertices)
        rs = tuple(as_vector(r) for r in rays)
        for v in vs:
            if len(v) != dim:
                raise DimensionMismatch("vertex dimension mismatch")
        for r in rs:
            if len(r) != dim:
                raise DimensionMismatch("ray dimension mismatch")
            if all(c == 0 for c in r):
                raise ValueError("rays must be nonzero")
        if not vs and rs:
            raise ValueError("a V-representation needs at least one vertex")
        return cls(dim, None, None, vs, rs, not vs)

    @classmethod
    def empty(cls, dim: int) -> "Polyhedron":
        """The canonical empty polyhedron: x_1 >= 1 together with x_1 <= 0."""
        e1 = tuple(Fraction(int(j == 0)) for j in range(dim))
        hs = (
            Halfspace(e1, Fraction(1)),
            Halfspace(tuple(-c for c in e1), Fraction(0)),
        )
        return cls(dim, hs, (), (), (), True)

    @property
    def dim(self) -> int:
        return self._dim

    @property
    def halfspaces(self) -> tuple[Halfspace, ...]:
        self._ensure_hrep()
        return self._halfspaces

    @property
    def equations(self) -> tuple[Equation, ...]:
        self._ensure_hrep()
        return self._equations

    @property
    def vertices(self) -> tuple[Vector, ...]:
        self._ensure_vrep()
        return self._vertices

    @property
    def rays(self) -> tuple[Vector, ...]:
        self._ensure_vrep()
        return self._rays

    @property
    def is_empty(self) -> bool:
        if self._empty is None:
            self._ensure_vrep()
        return self._empty

    @property
    def is_bounded(self) -> bool:
        """Vacuously true for the empty set."""
        return self.is_empty or not self.rays

    def has_hrep(self) -> bool:
        return self._halfspaces is not None

    def has_vrep(self) -> bool:
        return self._vertices is not None

    def contains(self, point) -> bool:
        z = as_vector(point)
        if len(z) != self._dim:
            raise DimensionMismatch("point dimension mismatch")
        self._ensure_hrep()
        if self._empty:
            return False
        return all(h.holds(z) for h in self._halfspaces) and all(
            e.holds(z) for e in self._equations
        )

    # -- conversions -------------------------------------------------------

    def _ensure_vrep(self) -> None:
        if self._vertices is not None:
            return
        d = self._dim
        rows: list[IntVec] = []
        for h in self._halfspaces:
            rows.append(_linalg.primitive((*h.normal, -h.offset)))
        for e in self._equations:
            row = _linalg.primitive((*e.normal, -e.offset))
            rows.append(row)
            rows.append(tuple(-v for v in row))
        rows.append(tuple([0] * d + [1]))
        lines, raw = _dd_cone(rows, d + 1)
        verts: list[Vector] = []
        rays: list[Vector] = []
        for g in raw:
            z0 = g[-1]
            assert z0 >= 0, "homogenizing coordinate escaped its halfspace"
            if z0 > 0:
                verts.append(tuple(Fraction(v, z0) for v in g[:-1]))
            else:
                rays.append(tuple(Fraction(v) for v in g[:-1]))
        for ln in lines:
            assert ln[-1] == 0
            vec = tuple(Fraction(v) for v in ln[:-1])
            rays.append(vec)
            rays.append(tuple(-v for v in vec))
        if not verts:
            self._vertices = ()
            self._rays = ()
            self._empty = True
        else:
            self._vertices = tuple(sorted(verts))
            self._rays = tuple(sorted(rays))
            self._empty = False

    def _ensure_hrep(self) -> None:
        if self._halfspaces is not None:
            return
        d = self._dim
        if not self._vertices:
            canon = Polyhedron.empty(d)
            self._halfspaces = canon._halfspaces
            self._equations = canon._equations
            return
        gens: list[IntVec] = []
        for v in self._vertices:
            gens.append(_linalg.primitive((*v, Fraction(1))))
        for r in self._rays:
            gens.append(_linalg.primitive((*r, Fraction(0))))
        lines, raw = _dd_cone(gens, d + 1)
        equations: list[Equation] = []
        for ln in lines:
            n, off = ln[:-1], ln[-1]
            if all(v == 0 for v in n):
                assert off == 0
                continue
            equations.append(Equation(tuple(map(Fraction, n)), Fraction(-off)).canonical())
        # directions of the affine hull, for filtering constraints that are
        # constant on it (they are not facets)
        hull_dirs = _linalg.nullspace([e.normal for e in equations], d)
        halfspaces: list[Halfspace] = []
        for g in raw:
            n, off = g[:-1], g[-1]
            if all(v == 0 for v in n):
                continue
            varies = any(
                sum(a * b for a, b in zip(n, hd)) != 0 for hd in hull_dirs
            )
            if not varies:
                continue  # constant on the affine hull, not a facet
            halfspaces.append(
                Halfspace(tuple(map(Fraction, n)), Fraction(-off)).canonical()
            )
        self._halfspaces = tuple(sorted(halfspaces, key=Halfspace.key))
        self._equations = tuple(sorted(equations, key=Equation.key))


def hrep_to_vrep(p: Polyhedron) -> Polyhedron:
    """Attach the V-representation (exact double description)."""
    p._ensure_vrep()
    return p


def vrep_to_hrep(p: Polyhedron) -> Polyhedron:
    """Attach the H-representation (double description on the polar side)."""
    p._ensure_hrep()
    return p


def remove_redundant(p: Polyhedron) -> Polyhedron:
    """Drop every halfspace implied by the others, certified by one LP each.

    A constraint is kept iff minimizing its left-hand side over the others
    can fall strictly below its offset (or is unbounded below).  A pair of
    opposite halfspaces encodes an implicit equation; both sides survive the
    test, so such pairs are preserved.  Output order is lexicographic by
    canonical normal; exact duplicates are merged first.  The empty
    polyhedron maps to its canonical two-constraint form.
    """
    from .lp import INFEASIBLE, LinearProgram, OPTIMAL, simplex_solve

    p._ensure_hrep()
    if p.is_empty:
        return Polyhedron.empty(p.dim)
    seen = set()
    ordered: list[Halfspace] = []
    for h in sorted((h.canonical() for h in p.halfspaces), key=Halfspace.key):
        if h.key() in seen:
            continue
        seen.add(h.key())
        ordered.append(h)
    eq_rows = [e.normal for e in p.equations]
    eq_rhs = [e.offset for e in p.equations]
    kept: list[Halfspace] = []
    for i, h in enumerate(ordered):
        others = kept + ordered[i + 1 :]
        rows = [o.normal for o in others] + eq_rows
        rhs = [o.offset for o in others] + eq_rhs
        rels = [">="] * len(others) + ["="] * len(eq_rows)
        lp = LinearProgram(
            sense="min",
            objective=h.normal,
            rows=tuple(rows),
            relations=tuple(rels),
            rhs=tuple(rhs),
            bounds=tuple((None, None) for _ in range(p.dim)),
        )
        outcome = simplex_solve(lp)
        assert outcome.status != INFEASIBLE, "nonempty polyhedron lost feasibility"
        if outcome.status != OPTIMAL or outcome.value < h.offset:
            kept.append(h)
    return Polyhedron.from_hrep(kept, p.equations, dim=p.dim)


def poly_equal(p: Polyhedron, q: Polyhedron) -> bool:
    """Set equality by mutual containment of generators in constraints."""
    if p.dim != q.dim:
        raise DimensionMismatch("polyhedra live in different dimensions")
    if p.is_empty or q.is_empty:
        return p.is_empty and q.is_empty
    return poly_contains(p, q) and poly_contains(q, p)


def poly_contains(outer: Polyhedron, inner: Polyhedron) -> bool:
    """Whether every point of ``inner`` satisfies ``outer``'s constraints."""
    if outer.dim != inner.dim:
        raise DimensionMismatch("polyhedra live in different dimensions")
    if inner.is_empty:
        return True
    if outer.is_empty:
        return False
    outer._ensure_hrep()
    inner._ensure_vrep()
    for v in inner.vertices:
        if not outer.contains(v):
            return False
    for r in inner.rays:
        if not all(h.holds_ray(r) for h in outer.halfspaces):
            return False
        if not all(e.holds_ray(r) for e in outer.equations):
            return False
    return True
