# cython: language_level=3
"""Compiled hot kernels: GF(2) elimination and the projector sweep.

Mirror of ``stabinv._fallback``. Results agree exactly; the only difference
is the random stream used when ``b0_mode == 1``.
"""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport uint64_t, int64_t, int8_t
from libc.stdlib cimport malloc, free

cnp.import_array()

NAME = "compiled"

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil
    int __builtin_ctzll(unsigned long long) nogil


def row_indices(row):
    """Indices of set bits in a packed row, ascending."""
    bits = np.unpackbits(np.ascontiguousarray(row).view(np.uint8), bitorder="little")
    return np.flatnonzero(bits)


def rref(uint64_t[:, ::1] words, Py_ssize_t ncols):
    """Reduce ``words`` in place to reduced row echelon form; return pivots."""
    cdef Py_ssize_t nrows = words.shape[0]
    cdef Py_ssize_t nw = words.shape[1]
    cdef Py_ssize_t r = 0, c, i, p, w
    cdef uint64_t tmp, bit
    pivots = []
    for c in range(ncols):
        if r == nrows:
            break
        bit = (<uint64_t>1) << (c & 63)
        p = -1
        for i in range(r, nrows):
            if words[i, c >> 6] & bit:
                p = i
                break
        if p < 0:
            continue
        if p != r:
            for w in range(nw):
                tmp = words[r, w]
                words[r, w] = words[p, w]
                words[p, w] = tmp
        for i in range(nrows):
            if i != r and (words[i, c >> 6] & bit):
                for w in range(c >> 6, nw):
                    words[i, w] ^= words[r, w]
        pivots.append(c)
        r += 1
    return pivots


cdef Py_ssize_t _neighbours(uint64_t[:, ::1] adj, Py_ssize_t a, int64_t* out) noexcept nogil:
    cdef Py_ssize_t nw = adj.shape[1], w, k = 0
    cdef uint64_t x
    for w in range(nw):
        x = adj[a, w]
        while x:
            out[k] = (w << 6) + __builtin_ctzll(x)
            k += 1
            x &= x - 1
    return k


cdef void _lc(uint64_t[:, ::1] adj, Py_ssize_t a, int64_t* buf) noexcept nogil:
    cdef Py_ssize_t nw = adj.shape[1], k, i, w, b
    k = _neighbours(adj, a, buf)
    if k < 2:
        return
    for i in range(k):
        b = buf[i]
        for w in range(nw):
            adj[b, w] ^= adj[a, w]
        adj[b, b >> 6] ^= (<uint64_t>1) << (b & 63)


cdef void _delete(uint64_t[:, ::1] adj, Py_ssize_t a) noexcept nogil:
    cdef Py_ssize_t n = adj.shape[0], nw = adj.shape[1], i
    cdef uint64_t mask = ~((<uint64_t>1) << (a & 63))
    for i in range(nw):
        adj[a, i] = 0
    for i in range(n):
        adj[i, a >> 6] &= mask


def local_complement(uint64_t[:, ::1] adj, Py_ssize_t a):
    """Toggle every edge among the neighbours of ``a`` (in place)."""
    cdef int64_t* buf = <int64_t*>malloc(adj.shape[0] * sizeof(int64_t))
    try:
        _lc(adj, a, buf)
    finally:
        free(buf)


def delete_vertex(uint64_t[:, ::1] adj, Py_ssize_t a):
    _delete(adj, a)


cdef inline uint64_t _xorshift(uint64_t* s) noexcept nogil:
    cdef uint64_t x = s[0]
    x ^= x << 13
    x ^= x >> 7
    x ^= x << 17
    s[0] = x
    return x


cdef inline int _fold(int64_t* frame, int64_t v, int tag,
                      const int8_t[:, ::1] next_state,
                      const int8_t[:, ::1] next_phase) noexcept nogil:
    cdef int64_t old = frame[v]
    frame[v] = next_state[old, tag]
    return next_phase[old, tag]


def projector_sweep(uint64_t[:, ::1] adj, alive_in, order_in, int b0_mode, seed,
                    const int8_t[:, ::1] next_state, const int8_t[:, ::1] next_phase,
                    const int8_t[::1] iso_zero, const int8_t[::1] iso_phase,
                    const int8_t[::1] iso_half):
    """Contract every vertex with <+|; see ``_fallback.projector_sweep``."""
    cdef Py_ssize_t n = adj.shape[0], nw = adj.shape[1]
    cdef cnp.ndarray[cnp.uint8_t, ndim=1] alive_arr = np.ascontiguousarray(alive_in, dtype=np.uint8).copy()
    cdef cnp.ndarray[cnp.int64_t, ndim=1] order_arr = np.ascontiguousarray(order_in, dtype=np.int64)
    cdef unsigned char[::1] alive = alive_arr
    cdef int64_t[::1] order = order_arr
    cdef Py_ssize_t norder = order.shape[0]
    cdef int64_t* frame = <int64_t*>malloc((n + 1) * sizeof(int64_t))
    cdef int64_t* nb = <int64_t*>malloc((n + 1) * sizeof(int64_t))
    cdef int64_t* nb0 = <int64_t*>malloc((n + 1) * sizeof(int64_t))
    cdef int64_t* buf = <int64_t*>malloc((n + 1) * sizeof(int64_t))
    cdef unsigned char* mark = <unsigned char*>malloc(n + 1)
    cdef long omega = 0, half = 0
    cdef Py_ssize_t remaining = 0, step = 0, a = 0, i, k, k0, w, b0, best, deg
    cdef int f, basis, sign, zero = 0, bad = 0
    cdef uint64_t rs = <uint64_t>(seed if seed else 88172645463325252)
    if frame == NULL or nb == NULL or nb0 == NULL or buf == NULL or mark == NULL:
        free(frame); free(nb); free(nb0); free(buf); free(mark)
        raise MemoryError()
    try:
        with nogil:
            for i in range(n):
                frame[i] = 0
                mark[i] = 0
                if alive[i]:
                    remaining += 1
            while remaining:
                if norder:
                    a = order[step]
                    if a < 0 or a >= n or not alive[a]:
                        bad = 1
                        break
                else:
                    best = -1
                    a = -1
                    for i in range(n):
                        if not alive[i]:
                            continue
                        deg = 0
                        for w in range(nw):
                            deg += __builtin_popcountll(adj[i, w])
                        if best < 0 or deg < best:
                            best = deg
                            a = i
                step += 1
                f = <int>frame[a]
                k = _neighbours(adj, a, nb)
                if k == 0:
                    if iso_zero[f]:
                        zero = 1
                        break
                    omega += iso_phase[f]
                    half += iso_half[f]
                else:
                    half += 1
                    basis = f // 2
                    sign = f % 2
                    if basis == 2:
                        _delete(adj, a)
                        if sign:
                            for i in range(k):
                                omega += _fold(frame, nb[i], 0, next_state, next_phase)
                    elif basis == 1:
                        omega += (-1 if sign else 1) * (k - 1)
                        _lc(adj, a, buf)
                        _delete(adj, a)
                        for i in range(k):
                            omega += _fold(frame, nb[i], 2 if sign else 1, next_state, next_phase)
                    else:
                        if b0_mode == 1:
                            b0 = nb[_xorshift(&rs) % <uint64_t>k]
                        else:
                            b0 = nb[0]
                        k0 = _neighbours(adj, b0, nb0)
                        # mark: 1 = in N(a), 2 = in N(b0)
                        for i in range(k):
                            mark[nb[i]] |= 1
                        for i in range(k0):
                            mark[nb0[i]] |= 2
                        _lc(adj, b0, buf)
                        _lc(adj, a, buf)
                        _lc(adj, b0, buf)
                        _delete(adj, a)
                        omega += _fold(frame, b0, 3 if sign else 4, next_state, next_phase)
                        if sign:
                            for i in range(k0):
                                if mark[nb0[i]] == 2 and nb0[i] != a:
                                    omega += _fold(frame, nb0[i], 0, next_state, next_phase)
                        else:
                            for i in range(k):
                                if mark[nb[i]] == 1 and nb[i] != b0:
                                    omega += _fold(frame, nb[i], 0, next_state, next_phase)
                        for i in range(k):
                            mark[nb[i]] = 0
                        for i in range(k0):
                            mark[nb0[i]] = 0
                alive[a] = 0
                remaining -= 1
    finally:
        free(frame); free(nb); free(nb0); free(buf); free(mark)
    if bad:
        raise ValueError(f"vertex {a} repeated or absent in order")
    if zero:
        return True, 0, 0
    return False, int(((omega % 8) + 8) % 8), int(half)
