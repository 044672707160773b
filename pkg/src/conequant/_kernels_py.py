"""Pure-Python scalar kernels.

These are the hot inner loops of the whole solver: projecting a point cloud
onto a direction, ranking the projections, evaluating the pinball (check)
loss, and counting values below a threshold.  Everything works on plain
integer pairs (numerator, denominator with denominator > 0) so the compiled
twin in ``_kernels.pyx`` can mirror the semantics bit for bit.  Results are
always normalized pairs: gcd-reduced with positive denominator.
"""

from __future__ import annotations

from functools import cmp_to_key
from math import gcd

BACKEND = "python"


def norm_pair(num: int, den: int) -> tuple[int, int]:
    """Reduce num/den to lowest terms with a positive denominator."""
    if den == 0:
        raise ZeroDivisionError("zero denominator")
    if den < 0:
        num, den = -num, -den
    g = gcd(num, den)
    if g > 1:
        num //= g
        den //= g
    return num, den


def proj_pairs(
    xnums: list[tuple[int, ...]],
    xdens: list[int],
    wnums: list[int],
    wden: int,
) -> tuple[list[int], list[int]]:
    """Inner products of every cloud point with the direction (wnums/wden).

    Point i is xnums[i]/xdens[i]; the result pair i is unreduced
    (sum_j wnums[j]*xnums[i][j], wden*xdens[i]).
    """
    nums = []
    dens = []
    for row, xd in zip(xnums, xdens):
        s = 0
        for a, b in zip(wnums, row):
            s += a * b
        nums.append(s)
        dens.append(wden * xd)
    return nums, dens


def sort_perm(nums: list[int], dens: list[int]) -> list[int]:
    """Indices of the values in ascending order, ties by original index."""

    def cmp(i: int, j: int) -> int:
        lhs = nums[i] * dens[j]
        rhs = nums[j] * dens[i]
        if lhs < rhs:
            return -1
        if lhs > rhs:
            return 1
        return 0

    return sorted(range(len(nums)), key=cmp_to_key(cmp))


def kth_value(nums: list[int], dens: list[int], k: int) -> tuple[int, int]:
    """Value of the k-th smallest element (1-based), as a normalized pair."""
    if not 1 <= k <= len(nums):
        raise ValueError(f"k={k} out of range 1..{len(nums)}")
    i = sort_perm(nums, dens)[k - 1]
    return norm_pair(nums[i], dens[i])


def count_le(nums: list[int], dens: list[int], tnum: int, tden: int) -> int:
    """How many values are <= tnum/tden.  Denominators must be positive."""
    c = 0
    for n, d in zip(nums, dens):
        if n * tden <= tnum * d:
            c += 1
    return c


def _add_pair(an: int, ad: int, bn: int, bd: int) -> tuple[int, int]:
    return norm_pair(an * bd + bn * ad, ad * bd)


def pinball_at(
    nums: list[int],
    dens: list[int],
    pnum: int,
    pden: int,
    tnum: int,
    tden: int,
) -> tuple[int, int]:
    """Pinball loss sum_i p*(x_i - t)^+ + (1-p)*(x_i - t)^- as a pair.

    The positive part is weighted p = pnum/pden, the negative part 1-p.
    """
    above_n, above_d = 0, 1  # sum of (x - t) over x > t
    below_n, below_d = 0, 1  # sum of (t - x) over x < t
    for n, d in zip(nums, dens):
        diff = n * tden - tnum * d
        if diff > 0:
            above_n, above_d = _add_pair(above_n, above_d, diff, d * tden)
        elif diff < 0:
            below_n, below_d = _add_pair(below_n, below_d, -diff, d * tden)
    num = pnum * above_n * below_d + (pden - pnum) * below_n * above_d
    den = pden * above_d * below_d
    return norm_pair(num, den)


def scalar_summary(
    nums: list[int],
    dens: list[int],
    pnum: int,
    pden: int,
    k: int,
) -> tuple[int, int, int, int]:
    """Quantile and loss in one pass: (t_num, t_den, loss_num, loss_den).

    t is the k-th smallest value; the loss is the pinball loss at t.
    """
    tn, td = kth_value(nums, dens, k)
    gn, gd = pinball_at(nums, dens, pnum, pden, tn, td)
    return tn, td, gn, gd
