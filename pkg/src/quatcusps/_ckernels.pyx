# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled enumeration kernels.  Same contracts as :mod:`quatcusps._pykernels`."""

from libc.stdlib cimport calloc, free


cdef bint _conic_search(long long am, long long bm, long long p, long long m,
                        char *is_sq, char *is_unit, long long *sq, long long *bt) noexcept nogil:
    cdef long long x, k, ns = 0, w, a_s
    cdef bint s_unit
    for x in range(m):
        is_unit[x] = (x % p) != 0
        w = (x * x) % m
        if not is_sq[w]:
            is_sq[w] = 1
            sq[ns] = w
            ns += 1
    for k in range(ns):
        bt[k] = (bm * sq[k]) % m
    # x^2 mod m decides whether p | x, so distinct squares cover every (x, y);
    # z is a unit exactly when w = z^2 is
    for x in range(ns):
        a_s = (am * sq[x]) % m
        s_unit = is_unit[sq[x]]
        for k in range(ns):
            w = a_s + bt[k]
            if w >= m:
                w -= m
            if is_sq[w] and (s_unit or is_unit[sq[k]] or is_unit[w]):
                return True
    return False


def primitive_conic_solvable(long long a, long long b, long long p, int depth):
    """True iff a x^2 + b y^2 = z^2 has a solution mod p**depth with p not dividing all of x, y, z."""
    cdef long long m = 1
    cdef int i
    for i in range(depth):
        m *= p
    cdef long long am = ((a % m) + m) % m
    cdef long long bm = ((b % m) + m) % m
    cdef char *is_sq = <char *> calloc(m, 1)
    cdef char *is_unit = <char *> calloc(m, 1)
    cdef long long *sq = <long long *> calloc(m, sizeof(long long))
    cdef long long *bt = <long long *> calloc(m, sizeof(long long))
    cdef bint found = False
    try:
        if is_sq == NULL or is_unit == NULL or sq == NULL or bt == NULL:
            raise MemoryError()
        with nogil:
            found = _conic_search(am, bm, p, m, is_sq, is_unit, sq, bt)
    finally:
        free(is_sq)
        free(is_unit)
        free(sq)
        free(bt)
    return found


cdef inline long long _det3(long long a0, long long a1, long long a2,
                            long long b0, long long b1, long long b2,
                            long long c0, long long c1, long long c2) noexcept nogil:
    return a0 * (b1 * c2 - b2 * c1) - a1 * (b0 * c2 - b2 * c0) + a2 * (b0 * c1 - b1 * c0)


cdef inline long long _mod(long long x, long long q) noexcept nogil:
    x = x % q
    return x + q if x < 0 else x


cdef long long _sl4_count(long long q, long long start, long long stop,
                          long long *rows, char *is_one) noexcept nogil:
    cdef long long nrow = q * q * q * q
    cdef long long nblock = nrow * nrow * nrow
    cdef long long blk, t, r, count = 0
    cdef long long m[12]
    cdef long long c0, c1, c2, c3
    cdef long long *row
    cdef int k
    for blk in range(nblock):
        t = blk
        for k in range(12):
            m[k] = t % q
            t //= q
        # rows 1..3 are m[0:4], m[4:8], m[8:12]; Laplace along row 0
        c0 = _mod(_det3(m[1], m[2], m[3], m[5], m[6], m[7], m[9], m[10], m[11]), q)
        c1 = _mod(-_det3(m[0], m[2], m[3], m[4], m[6], m[7], m[8], m[10], m[11]), q)
        c2 = _mod(_det3(m[0], m[1], m[3], m[4], m[5], m[7], m[8], m[9], m[11]), q)
        c3 = _mod(-_det3(m[0], m[1], m[2], m[4], m[5], m[6], m[8], m[9], m[10]), q)
        for r in range(start, stop):
            row = rows + 4 * r
            count += is_one[row[0] * c0 + row[1] * c1 + row[2] * c2 + row[3] * c3]
    return count


def sl4_det_one_count(long long q, long long start=0, long long stop=-1):
    """Count 4x4 matrices over Z/q with determinant 1.

    Only matrices whose first row has base-q index in [start, stop) are
    visited, so disjoint chunks sum to the full count.  Each determinant is
    evaluated by Laplace expansion along the first row.
    """
    cdef long long nrow = q * q * q * q
    if stop < 0 or stop > nrow:
        stop = nrow
    if start < 0:
        start = 0
    if start >= stop:
        return 0
    cdef long long top = 4 * (q - 1) * (q - 1) + 1
    cdef long long *rows = <long long *> calloc(4 * nrow, sizeof(long long))
    cdef char *is_one = <char *> calloc(top, 1)
    cdef long long r, t, d, count = 0
    cdef int k
    try:
        if rows == NULL or is_one == NULL:
            raise MemoryError()
        for r in range(nrow):
            t = r
            for k in range(4):
                rows[4 * r + k] = t % q
                t //= q
        for d in range(top):
            is_one[d] = (d % q) == 1
        with nogil:
            count = _sl4_count(q, start, stop, rows, is_one)
    finally:
        free(rows)
        free(is_one)
    return count
