# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: exact 2x2 products over Z[w, 1/sqrt2] and the table-driven
normal-form fold. Mirrors ``_fallback.py`` result for result.

Ring arithmetic runs on int64 with overflow checks; on overflow an
``OverflowError`` is raised and the caller retries with Python integers.
"""

from cpython.mem cimport PyMem_Free, PyMem_Malloc
from libc.stdint cimport int64_t

cdef extern from *:
    """
    static inline int zx_mul(long long a, long long b, long long *r) { return __builtin_mul_overflow(a, b, r); }
    static inline int zx_add(long long a, long long b, long long *r) { return __builtin_add_overflow(a, b, r); }
    """
    int zx_mul(long long a, long long b, long long *r) nogil
    int zx_add(long long a, long long b, long long *r) nogil


cdef enum:
    MUL = 0
    RW = 576
    CTW = 579
    CTC = 603
    CVW = 627
    CVV = 675
    CVP = 723
    PVV = 771
    PVP = 779
    TV = 787
    TWV = 789
    TWC = 792
    PCLS = 795
    RCLS = 799
    SCLS = 800
    ICLS = 801

# element layout: a, b, c, d, k
cdef int64_t NODE[17][20]
cdef bint _ready = False


cdef inline void _reduce(int64_t* x) nogil:
    cdef int64_t a = x[0], b = x[1], c = x[2], d = x[3], k = x[4]
    if a == 0 and b == 0 and c == 0 and d == 0:
        x[4] = 0
        return
    while k > 0 and ((a - c) & 1) == 0 and ((b - d) & 1) == 0:
        a, b, c, d = (b - d) >> 1, (a + c) >> 1, (b + d) >> 1, (c - a) >> 1
        k -= 1
    x[0] = a; x[1] = b; x[2] = c; x[3] = d; x[4] = k


cdef inline int _dot4(int64_t p0, int64_t q0, int64_t p1, int64_t q1,
                      int64_t p2, int64_t q2, int64_t p3, int64_t q3,
                      int64_t* out) nogil:
    # out = p0*q0 + p1*q1 + p2*q2 + p3*q3, 1 on overflow
    cdef long long t, s = 0
    if zx_mul(p0, q0, &t) or zx_add(s, t, &s): return 1
    if zx_mul(p1, q1, &t) or zx_add(s, t, &s): return 1
    if zx_mul(p2, q2, &t) or zx_add(s, t, &s): return 1
    if zx_mul(p3, q3, &t) or zx_add(s, t, &s): return 1
    out[0] = s
    return 0


cdef inline int _rmul(const int64_t* x, const int64_t* y, int64_t* out) nogil:
    if _dot4(x[0], y[0], -x[1], y[3], -x[2], y[2], -x[3], y[1], &out[0]): return 1
    if _dot4(x[0], y[1], x[1], y[0], -x[2], y[3], -x[3], y[2], &out[1]): return 1
    if _dot4(x[0], y[2], x[1], y[1], x[2], y[0], -x[3], y[3], &out[2]): return 1
    if _dot4(x[0], y[3], x[1], y[2], x[2], y[1], x[3], y[0], &out[3]): return 1
    out[4] = x[4] + y[4]
    _reduce(out)
    return 0


cdef inline int _lift(int64_t* x, int64_t k) nogil:
    cdef int64_t diff = k - x[4]
    cdef long long a = x[0], b = x[1], c = x[2], d = x[3], s, t0, t1, t2, t3
    while diff >= 2:
        if zx_add(a, a, &a) or zx_add(b, b, &b) or zx_add(c, c, &c) or zx_add(d, d, &d):
            return 1
        diff -= 2
    if diff == 1:
        if zx_add(b, -d, &t0) or zx_add(a, c, &t1) or zx_add(b, d, &t2) or zx_add(c, -a, &t3):
            return 1
        a, b, c, d = t0, t1, t2, t3
    x[0] = a; x[1] = b; x[2] = c; x[3] = d; x[4] = k
    return 0


cdef inline int _radd(int64_t* x, int64_t* y, int64_t* out) nogil:
    cdef int64_t k = x[4] if x[4] > y[4] else y[4]
    cdef int i
    cdef long long s
    if _lift(x, k) or _lift(y, k): return 1
    for i in range(4):
        if zx_add(x[i], y[i], &s): return 1
        out[i] = s
    out[4] = k
    _reduce(out)
    return 0


cdef int _matmul(const int64_t* A, const int64_t* B, int64_t* C) nogil:
    # C = A @ B, each matrix is 4 elements of 5 ints, row-major
    cdef int64_t p[5]
    cdef int64_t q[5]
    cdef int i, j
    for i in range(2):
        for j in range(2):
            if _rmul(&A[(2 * i) * 5], &B[j * 5], p): return 1
            if _rmul(&A[(2 * i + 1) * 5], &B[(2 + j) * 5], q): return 1
            if _radd(p, q, &C[(2 * i + j) * 5]): return 1
    return 0


def init_nodes(list node_keys):
    """Load the 17 node matrices (20-int keys) computed by the Python ring."""
    global _ready
    cdef int i, j
    for i in range(17):
        for j in range(20):
            NODE[i][j] = node_keys[i][j]
    _ready = True


def product_key(codes, start=None):
    if not _ready:
        raise RuntimeError("init_nodes() has not been called")
    cdef int64_t M[20]
    cdef int64_t N[20]
    cdef int i, c
    cdef long long v
    if start is None:
        for i in range(20):
            M[i] = 0
        M[0] = 1
        M[15] = 1
    else:
        for i in range(20):
            v = start[i]
            M[i] = v
    for c in codes:
        if c < 0 or c > 16:
            raise ValueError(f"bad node code {c}")
        if _matmul(NODE[c], M, N):
            raise OverflowError("int64 overflow in exact product")
        for i in range(20):
            M[i] = N[i]
    return tuple([M[i] for i in range(20)])


cdef inline int _clifford_times(const int[:] tab, int c, int* syl, int n, int u, int* w_out) nogil:
    cdef int e, p, i, pc
    if n == 0:
        w_out[0] = tab[CTW + c]
        return tab[MUL + tab[CTC + c] * 24 + u]
    e = c * 2 + syl[n - 1]
    w_out[0] = tab[CVW + e]
    syl[n - 1] = tab[CVV + e]
    p = tab[CVP + e]
    for i in range(n - 2, -1, -1):
        e = p * 2 + syl[i]
        syl[i] = tab[PVV + e]
        p = tab[PVP + e]
    pc = tab[PCLS + p]
    return tab[MUL + tab[CTC + pc] * 24 + u]


def fold(const unsigned char[:] word, const int[:] tab):
    cdef int L = word.shape[0]
    cdef int ma = 0, w = 0, n = 0, u = tab[ICLS], i, top, v, dummy
    cdef int* syl
    syl = <int*> PyMem_Malloc((L + 1) * sizeof(int))
    if syl == NULL:
        raise MemoryError()
    try:
        with nogil:
            for i in range(L):
                if word[i] == 82:
                    if not ma:
                        u = tab[MUL + tab[RCLS] * 24 + u]
                    else:
                        u = _clifford_times(tab, tab[RW + w], syl, n, u, &w)
                else:
                    if not ma:
                        ma = 1
                        w = 0
                    elif w != 0:
                        v = tab[TWV + w]
                        u = _clifford_times(tab, tab[TWC + w], syl, n, u, &dummy)
                        syl[n] = v
                        n += 1
                        w = 0
                    elif n == 0:
                        ma = 0
                        u = tab[MUL + tab[SCLS] * 24 + u]
                    else:
                        n -= 1
                        top = syl[n]
                        u = _clifford_times(tab, tab[TV + top], syl, n, u, &w)
        return bool(ma), w, [syl[i] for i in range(n)], u
    finally:
        PyMem_Free(syl)
