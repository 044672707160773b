"""Scalar machinery: empirical lower quantiles, the pinball loss, and the
greedy exact solver for the direction-scalarized transport program.

The greedy solver is the scalarization oracle of the Benson loop; its value
always equals the pinball-loss minimum (strong duality, asserted exactly in
the test suite against the simplex).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from . import kernels
from .core import DataCloud, QuantileLevel, Vector, as_vector
from .errors import DimensionMismatch


@dataclass(frozen=True)
class ScalarSample:
    """A finite multiset of rationals, e.g. a projected data cloud."""

    values: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if not self.values:
            raise DimensionMismatch("a scalar sample needs at least one value")

    @classmethod
    def from_values(cls, values) -> "ScalarSample":
        return cls(tuple(Fraction(v) for v in values))

    @property
    def n(self) -> int:
        return len(self.values)

    @cached_property
    def pairs(self) -> tuple[list[int], list[int]]:
        nums = [v.numerator for v in self.values]
        dens = [v.denominator for v in self.values]
        return nums, dens


def _check_count(sample: ScalarSample, level: QuantileLevel) -> None:
    if level.n != sample.n:
        raise DimensionMismatch(
            f"level is for N={level.n} but the sample has {sample.n} values"
        )


def quantile_direct(sample: ScalarSample, level: QuantileLevel) -> Fraction:
    """Smallest sample value whose at-or-below count reaches ceil(N p).

    Defined for every p in (0,1); multiset counting, so duplicates matter.
    The result is always a member of the sample.
    """
    _check_count(sample, level)
    nums, dens = sample.pairs
    num, den = kernels.kth_value(nums, dens, level.ceil_np)
    return Fraction(num, den)


def pinball_loss(sample: ScalarSample, level: QuantileLevel, t) -> Fraction:
    """sum_i p*(x_i - t)^+ + (1-p)*(x_i - t)^-  (always >= 0)."""
    _check_count(sample, level)
    t = Fraction(t)
    nums, dens = sample.pairs
    num, den = kernels.pinball_at(
        nums, dens, level.p.numerator, level.p.denominator, t.numerator, t.denominator
    )
    return Fraction(num, den)


def pinball_right_derivative(sample: ScalarSample, level: QuantileLevel, t) -> Fraction:
    """One-sided derivative of the pinball loss at t in direction +1.

    Equals #{x <= t} - N*p; strictly negative left of the minimizer and
    nonnegative from the minimizer on.
    """
    _check_count(sample, level)
    t = Fraction(t)
    nums, dens = sample.pairs
    count = kernels.count_le(nums, dens, t.numerator, t.denominator)
    return count - level.n * level.p


def minimize_pinball_loss(
    sample: ScalarSample, level: QuantileLevel
) -> tuple[Fraction, Fraction]:
    """The unique pinball-loss minimizer and its value, by sorting.

    Requires N*p to be non-integral: that is what makes the minimizer unique
    and equal to the direct quantile.  Raises IntegralNp otherwise.
    """
    _check_count(sample, level)
    level.require_valid()
    nums, dens = sample.pairs
    tn, td, gn, gd = kernels.scalar_summary(
        nums, dens, level.p.numerator, level.p.denominator, level.ceil_np
    )
    return Fraction(tn, td), Fraction(gn, gd)


@dataclass(frozen=True)
class ScalarizedSolution:
    """An optimal (u, v) of the scalarized transport program.

    Feasibility: 0 <= u <= p, 0 <= v <= 1-p componentwise and the total
    masses agree.  ``support_point`` is sum_i x_i (u_i - v_i), the image
    point that furnishes valid cuts for the dual Benson iteration.
    """

    u: tuple[Fraction, ...]
    v: tuple[Fraction, ...]
    value: Fraction
    support_point: Vector


def solve_scalarized_lp(
    cloud: DataCloud, level: QuantileLevel, w
) -> ScalarizedSolution:
    """Maximize sum_i (w.x_i)(u_i - v_i) by a greedy pairing rule.

    Sort the projections; feed u-mass (capacity p per point) to the largest
    values and v-mass (capacity 1-p per point) to the smallest, growing the
    common budget while the marginal gain is positive and splitting
    fractionally at the stop.  Among equal projections the lower data index
    is served first, which makes the solution reproducible.
    """
    w_vec = as_vector(w)
    if len(w_vec) != cloud.dim:
        raise DimensionMismatch(
            f"direction has dimension {len(w_vec)}, data has {cloud.dim}"
        )
    if level.n != cloud.n:
        raise DimensionMismatch(f"level is for N={level.n} but the cloud has {cloud.n}")
    xnums, xdens = cloud.int_form
    wden = 1
    for c in w_vec:
        wden = wden * c.denominator // _gcd(wden, c.denominator)
    wnums = [int(c * wden) for c in w_vec]
    pnums, pdens = kernels.proj_pairs(xnums, xdens, wnums, wden)
    asc = kernels.sort_perm(pnums, pdens)
    desc = kernels.sort_perm([-a for a in pnums], pdens)
    z = [Fraction(pnums[i], pdens[i]) for i in range(cloud.n)]

    n = cloud.n
    p = level.p
    u = [Fraction(0)] * n
    v = [Fraction(0)] * n
    hi = 0  # next u receiver, walking the descending order
    lo = 0  # next v receiver, walking the ascending order
    room_u = p
    room_v = 1 - p
    while hi < n and lo < n:
        iu = desc[hi]
        iv = asc[lo]
        if z[iu] <= z[iv]:
            break
        step = min(room_u, room_v)
        u[iu] += step
        v[iv] += step
        room_u -= step
        room_v -= step
        if room_u == 0:
            hi += 1
            room_u = p
        if room_v == 0:
            lo += 1
            room_v = 1 - p

    active = [(i, u[i] - v[i]) for i in range(n) if u[i] != v[i]]
    value = sum((z[i] * diff for i, diff in active), Fraction(0))
    support = tuple(
        sum((cloud.points[i][j] * diff for i, diff in active), Fraction(0))
        for j in range(cloud.dim)
    )
    return ScalarizedSolution(u=tuple(u), v=tuple(v), value=value, support_point=support)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a
