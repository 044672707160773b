# cython: language_level=3
# cython: boundscheck=False
# cython: wraparound=False
"""Compiled twin of ``_kernels_py``.

Same functions, same exact-arithmetic semantics.  Inputs whose numerators and
denominators fit in 31 bits run on an int64 fast path (all intermediate
products then fit in 63 bits); anything larger is delegated to the arbitrary
precision implementation so results are always exact.
"""

from libc.stdlib cimport free, malloc

from . import _kernels_py

BACKEND = "cython"

DEF BIT_LIMIT = 2147483648  # 2**31

norm_pair = _kernels_py.norm_pair


cdef bint _fits31(list vals):
    cdef Py_ssize_t i, n = len(vals)
    cdef object bound = BIT_LIMIT
    cdef object neg = -BIT_LIMIT
    for i in range(n):
        v = vals[i]
        if v >= bound or v <= neg:
            return False
    return True


cdef long long _gcd_ll(long long a, long long b):
    if a < 0:
        a = -a
    if b < 0:
        b = -b
    while b:
        a, b = b, a % b
    return a


def proj_pairs(list xnums, list xdens, list wnums, object wden):
    """Inner products of cloud points with a direction; see the pure twin."""
    cdef Py_ssize_t n = len(xnums)
    cdef Py_ssize_t d = len(wnums)
    cdef Py_ssize_t i, j
    cdef list out_n = [0] * n
    cdef list out_d = [0] * n
    cdef long long acc, wd
    cdef long long *cw
    cdef object row, s, maxw, maxx, v

    maxw = 0
    for j in range(d):
        v = wnums[j]
        if v < 0:
            v = -v
        if v > maxw:
            maxw = v
    maxx = 0
    for i in range(n):
        row = xnums[i]
        for j in range(d):
            v = row[j]
            if v < 0:
                v = -v
            if v > maxx:
                maxx = v
    fast = (d > 0 and maxw * maxx * d < 4611686018427387904  # 2**62
            and _fits31(xdens) and 0 < wden < BIT_LIMIT)
    if fast:
        for i in range(n):
            v = xdens[i]
            if wden * v >= 4611686018427387904:
                fast = False
                break
    if fast:
        cw = <long long *> malloc(d * sizeof(long long))
        if cw == NULL:
            fast = False
        else:
            try:
                for j in range(d):
                    cw[j] = wnums[j]
                wd = wden
                for i in range(n):
                    row = xnums[i]
                    acc = 0
                    for j in range(d):
                        acc += cw[j] * <long long> row[j]
                    out_n[i] = acc
                    out_d[i] = wd * <long long> xdens[i]
                return out_n, out_d
            finally:
                free(cw)
    for i in range(n):
        row = xnums[i]
        s = 0
        for j in range(d):
            s = s + wnums[j] * row[j]
        out_n[i] = s
        out_d[i] = wden * xdens[i]
    return out_n, out_d


def sort_perm(list nums, list dens):
    """Ascending argsort by nums[i]/dens[i], ties by index."""
    cdef Py_ssize_t n = len(nums)
    cdef Py_ssize_t i, j
    cdef long long *cn
    cdef long long *cd
    cdef long long kn, kd
    cdef Py_ssize_t ki
    cdef list out
    if n <= 1:
        return list(range(n))
    if _fits31(nums) and _fits31(dens):
        cn = <long long *> malloc(n * sizeof(long long))
        cd = <long long *> malloc(n * sizeof(long long))
        idx = <Py_ssize_t *> malloc(n * sizeof(Py_ssize_t))
        if cn == NULL or cd == NULL or idx == NULL:
            if cn != NULL:
                free(cn)
            if cd != NULL:
                free(cd)
            if idx != NULL:
                free(idx)
            return _kernels_py.sort_perm(nums, dens)
        try:
            for i in range(n):
                cn[i] = nums[i]
                cd[i] = dens[i]
                idx[i] = i
            # insertion sort: n is small in every caller
            for i in range(1, n):
                ki = idx[i]
                kn = cn[ki]
                kd = cd[ki]
                j = i
                while j > 0 and (cn[idx[j - 1]] * kd > kn * cd[idx[j - 1]]
                                 or (cn[idx[j - 1]] * kd == kn * cd[idx[j - 1]]
                                     and idx[j - 1] > ki)):
                    idx[j] = idx[j - 1]
                    j -= 1
                idx[j] = ki
            out = [0] * n
            for i in range(n):
                out[i] = idx[i]
            return out
        finally:
            free(cn)
            free(cd)
            free(idx)
    return _kernels_py.sort_perm(nums, dens)


def kth_value(list nums, list dens, Py_ssize_t k):
    """Value of the k-th smallest element (1-based), normalized."""
    cdef Py_ssize_t n = len(nums)
    if not 1 <= k <= n:
        raise ValueError(f"k={k} out of range 1..{n}")
    cdef list perm = sort_perm(nums, dens)
    cdef Py_ssize_t i = perm[k - 1]
    return _norm(nums[i], dens[i])


cdef tuple _norm(object num, object den):
    cdef long long a, b, g
    if -BIT_LIMIT < num < BIT_LIMIT and 0 < den < BIT_LIMIT:
        a = num
        b = den
        g = _gcd_ll(a, b)
        if g > 1:
            a //= g
            b //= g
        return (a, b)
    return _kernels_py.norm_pair(num, den)


def count_le(list nums, list dens, object tnum, object tden):
    """How many values are <= tnum/tden."""
    cdef Py_ssize_t i, n = len(nums)
    cdef long long tn, td, c = 0
    if (_fits31(nums) and _fits31(dens)
            and -BIT_LIMIT < tnum < BIT_LIMIT and 0 < tden < BIT_LIMIT):
        tn = tnum
        td = tden
        for i in range(n):
            if <long long> nums[i] * td <= tn * <long long> dens[i]:
                c += 1
        return c
    cdef object cnt = 0
    for i in range(n):
        if nums[i] * tden <= tnum * dens[i]:
            cnt += 1
    return cnt


def pinball_at(list nums, list dens, object pnum, object pden,
               object tnum, object tden):
    """Pinball loss at t as a normalized pair; see the pure twin."""
    cdef Py_ssize_t i, n = len(nums)
    cdef object above_n = 0, above_d = 1, below_n = 0, below_d = 1
    cdef object diff, d, num, den
    for i in range(n):
        d = dens[i]
        diff = nums[i] * tden - tnum * d
        if diff > 0:
            above_n, above_d = _add_pair(above_n, above_d, diff, d * tden)
        elif diff < 0:
            below_n, below_d = _add_pair(below_n, below_d, -diff, d * tden)
    num = pnum * above_n * below_d + (pden - pnum) * below_n * above_d
    den = pden * above_d * below_d
    return _norm(num, den)


cdef tuple _add_pair(object an, object ad, object bn, object bd):
    return _kernels_py.norm_pair(an * bd + bn * ad, ad * bd)


def scalar_summary(list nums, list dens, object pnum, object pden,
                   Py_ssize_t k):
    """(t_num, t_den, loss_num, loss_den): k-th value and pinball loss there."""
    tn, td = kth_value(nums, dens, k)
    gn, gd = pinball_at(nums, dens, pnum, pden, tn, td)
    return tn, td, gn, gd
